#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latdesign {

// Raised when an exact oracle (enumeration, exhaustive search) would exceed
// its feasibility guard.
class OracleInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the explicit-construction scan when the candidate limit is hit.
class LimitReached : public std::runtime_error {
 public:
  LimitReached(const std::string& what, std::int64_t last_scanned)
      : std::runtime_error(what), last_scanned_(last_scanned) {}

  std::int64_t last_scanned() const { return last_scanned_; }

 private:
  std::int64_t last_scanned_;
};

// Raised when a kernel matrix stays indefinite after the full jitter ladder.
class IllConditioned : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace latdesign
