#pragma once

#include <array>
#include <cstdint>

namespace fdrbench {

// Seeded 64-bit generator (xoshiro256++) plus the distribution samplers the
// simulator needs. An instance is a single stream: not shareable across
// threads, cheap to copy, and copies advance independently. Identical seeds
// reproduce identical draw sequences.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53-bit resolution.
  double next_uniform();

  // N(mean, sd^2) by Marsaglia's polar method; sd == 0 returns mean exactly.
  double sample_normal(double mean, double sd);

  // Gamma(shape, scale) via the Marsaglia-Tsang squeeze, with the
  // u^(1/shape) boost for shape < 1.
  double sample_gamma(double shape, double scale);

  // Poisson(mean): sequential-search inversion below the cutoff, Hormann's
  // PTRS transformed rejection above it (exact for the large library-size
  // means this feeds on).
  std::int64_t sample_poisson(double mean);

  // Negative binomial with E[X] = mu, Var[X] = mu + dispersion * mu^2,
  // drawn as a gamma-Poisson mixture with size = 1/dispersion.
  // dispersion == 0 falls through to Poisson(mu).
  std::int64_t sample_nb(double mu, double dispersion);

  // Raw generator state, for serialization and exact resume.
  std::array<std::uint64_t, 4> state() const noexcept { return state_; }
  void set_state(const std::array<std::uint64_t, 4>& s) noexcept { state_ = s; }

  static constexpr double kPoissonInversionCutoff = 30.0;

 private:
  std::int64_t poisson_inversion(double mean);
  std::int64_t poisson_ptrs(double mean);

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_ = 0;
};

}  // namespace fdrbench
