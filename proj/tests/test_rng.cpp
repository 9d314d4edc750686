#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <cstdint>
#include <vector>

#include "fdrbench/rng.hpp"

using fdrbench::Rng;

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

template <typename Draw>
Moments sample_moments(int n, Draw draw) {
  std::vector<double> xs(n);
  double sum = 0.0;
  for (auto& x : xs) {
    x = draw();
    sum += x;
  }
  Moments m;
  m.mean = sum / n;
  for (const double x : xs) m.variance += (x - m.mean) * (x - m.mean);
  m.variance /= n - 1;
  return m;
}

}  // namespace

TEST_CASE("uniform draws stay in [0,1) and differ") {
  Rng rng(42);
  const double a = rng.next_uniform();
  const double b = rng.next_uniform();
  CHECK(a >= 0.0);
  CHECK(a < 1.0);
  CHECK(b >= 0.0);
  CHECK(b < 1.0);
  CHECK(a != b);
}

TEST_CASE("identical seeds reproduce identical sequences") {
  Rng a(987654321);
  Rng b(987654321);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("state round-trip resumes the exact stream") {
  Rng rng(7);
  for (int i = 0; i < 17; ++i) rng.next_uniform();
  const auto saved = rng.state();
  std::vector<double> expected(32);
  for (auto& x : expected) x = rng.next_uniform();

  Rng restored(0);
  restored.set_state(saved);
  for (const double x : expected) CHECK(restored.next_uniform() == x);
}

TEST_CASE("uniform sample mean approaches 1/2") {
  Rng rng(1);
  const auto m = sample_moments(100000, [&] { return rng.next_uniform(); });
  CHECK(std::abs(m.mean - 0.5) <= 0.01);
}

TEST_CASE("normal sampler") {
  SUBCASE("sd 0 is the point mass at mean") {
    Rng rng(3);
    CHECK(rng.sample_normal(2.5, 0.0) == 2.5);
  }
  SUBCASE("negative sd is rejected") {
    Rng rng(3);
    CHECK_THROWS_AS(rng.sample_normal(0.0, -1.0), std::invalid_argument);
  }
  SUBCASE("moments at mean 2 sd 0.5") {
    Rng rng(11);
    const auto m = sample_moments(100000, [&] { return rng.sample_normal(2.0, 0.5); });
    CHECK(std::abs(m.mean - 2.0) <= 0.01);
    CHECK(std::abs(std::sqrt(m.variance) - 0.5) <= 0.01);
  }
  SUBCASE("same seed gives the same draw") {
    Rng a(5), b(5);
    CHECK(a.sample_normal(0.0, 1.0) == b.sample_normal(0.0, 1.0));
  }
}

TEST_CASE("gamma sampler") {
  SUBCASE("parameter validation") {
    Rng rng(3);
    CHECK_THROWS_AS(rng.sample_gamma(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(rng.sample_gamma(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rng.sample_gamma(-2.0, 1.0), std::invalid_argument);
  }
  SUBCASE("moments at shape 2 scale 0.5") {
    Rng rng(17);
    const auto m = sample_moments(100000, [&] { return rng.sample_gamma(2.0, 0.5); });
    CHECK(std::abs(m.mean - 1.0) <= 0.02);
    CHECK(std::abs(m.variance - 0.5) <= 0.05);
  }
  SUBCASE("support is nonnegative, including shape < 1") {
    Rng rng(19);
    for (int i = 0; i < 20000; ++i) {
      CHECK(rng.sample_gamma(0.4, 2.0) >= 0.0);
    }
  }
}

TEST_CASE("poisson sampler") {
  SUBCASE("mean 0 is the point mass at 0") {
    Rng rng(3);
    CHECK(rng.sample_poisson(0.0) == 0);
  }
  SUBCASE("negative mean is rejected") {
    Rng rng(3);
    CHECK_THROWS_AS(rng.sample_poisson(-1.0), std::invalid_argument);
  }
  SUBCASE("large-mean moments (PTRS regime)") {
    Rng rng(23);
    const auto m = sample_moments(10000, [&] {
      return static_cast<double>(rng.sample_poisson(80000.0));
    });
    CHECK(std::abs(m.mean - 80000.0) <= 0.01 * 80000.0);
    CHECK(std::abs(m.variance - 80000.0) <= 0.05 * 80000.0);
  }
  SUBCASE("small-mean pmf at zero (inversion regime)") {
    Rng rng(29);
    int zeros = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      if (rng.sample_poisson(3.0) == 0) ++zeros;
    }
    CHECK(std::abs(static_cast<double>(zeros) / n - std::exp(-3.0)) <= 0.005);
  }
}

TEST_CASE("negative binomial sampler") {
  SUBCASE("mu 0 is the point mass at 0") {
    Rng rng(3);
    CHECK(rng.sample_nb(0.0, 0.05) == 0);
  }
  SUBCASE("negative parameters are rejected") {
    Rng rng(3);
    CHECK_THROWS_AS(rng.sample_nb(-1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(rng.sample_nb(1.0, -0.1), std::invalid_argument);
  }
  SUBCASE("dispersion 0 behaves as Poisson") {
    Rng rng(31);
    const auto m = sample_moments(100000, [&] {
      return static_cast<double>(rng.sample_nb(12.0, 0.0));
    });
    CHECK(std::abs(m.mean - 12.0) <= 0.02 * 12.0);
    CHECK(std::abs(m.variance - 12.0) <= 0.05 * 12.0);
  }
  SUBCASE("mean/variance law at mu 100, dispersion 0.05") {
    Rng rng(37);
    const auto m = sample_moments(100000, [&] {
      return static_cast<double>(rng.sample_nb(100.0, 0.05));
    });
    CHECK(std::abs(m.mean - 100.0) <= 0.01 * 100.0);
    CHECK(std::abs(m.variance - 600.0) <= 0.05 * 600.0);
  }
  SUBCASE("dispersion -> 0 converges to the Poisson limit") {
    // 1e6 draws put the two-sample variance-difference se near 0.2%, so the
    // 1% band is a 5-sigma bound.
    Rng a(41), b(41);
    const auto exact = sample_moments(1000000, [&] {
      return static_cast<double>(a.sample_nb(50.0, 0.0));
    });
    const auto limit = sample_moments(1000000, [&] {
      return static_cast<double>(b.sample_nb(50.0, 1e-9));
    });
    CHECK(std::abs(limit.mean - exact.mean) <= 0.01 * exact.mean);
    CHECK(std::abs(limit.variance - exact.variance) <= 0.01 * exact.variance);
    CHECK(std::abs(exact.variance - 50.0) <= 0.05 * 50.0);
  }
  SUBCASE("support is nonnegative") {
    Rng rng(43);
    for (int i = 0; i < 20000; ++i) {
      CHECK(rng.sample_nb(0.7, 2.0) >= 0);
    }
  }
}
