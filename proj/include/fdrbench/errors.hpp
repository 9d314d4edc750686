#pragma once

#include <stdexcept>
#include <string>

namespace fdrbench {

// Invalid user-supplied configuration (bad key, bad value, malformed file).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure, annotated with the offending path.
class io_error : public std::runtime_error {
 public:
  io_error(const std::string& what, const std::string& path)
      : std::runtime_error(what + ": " + path), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace fdrbench
