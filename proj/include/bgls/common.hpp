#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace bgls {

/// Points in R^d for d <= 3; unused trailing coordinates are zero.
inline constexpr int kMaxDimension = 3;
using Point = std::array<double, kMaxDimension>;

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

inline void require_dimension(int d) {
  require(d >= 1 && d <= kMaxDimension,
          "dimension must be in [1, " + std::to_string(kMaxDimension) + "], got " + std::to_string(d));
}

}  // namespace bgls
