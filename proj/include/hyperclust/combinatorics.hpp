#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace hyperclust {

/// Value used for the logarithm of a count that is exactly zero.
inline constexpr double kLnZero = -std::numeric_limits<double>::infinity();

inline bool is_ln_zero(double x) { return x == kLnZero; }

/// Cache of ln(k!) for k < capacity(). Built once and immutable afterwards,
/// so concurrent readers need no synchronization.
class LogFactorialTable {
 public:
  explicit LogFactorialTable(std::size_t capacity = std::size_t{1} << 16);

  std::size_t capacity() const { return table_.size(); }

  double operator()(std::uint64_t k) const;

  /// Process-wide table shared by every objective.
  static const LogFactorialTable& shared();

 private:
  std::vector<double> table_;
};

double ln_factorial(std::uint64_t k);

/// ln(n! / (n-k)!) for k <= n.
double ln_falling_factorial(std::uint64_t n, std::uint64_t k);

/// ln C(n, k); kLnZero when k > n.
double ln_binomial(std::uint64_t n, std::uint64_t k);

/// ln C(N, k) where ln_n = ln N and N is a nonnegative integer that may be far
/// beyond any fixed-width type. Counts up to 2^53 go through the exact integer
/// path.
double ln_binomial_real(double ln_n, std::uint64_t k);

/// ln(total! / prod(part!)). Throws std::invalid_argument unless the parts sum
/// to total.
double ln_multinomial(std::uint64_t total, std::span<const std::uint64_t> parts);

/// Exact C(n, k) into `out` (0 when k > n). Returns false if the value does
/// not fit in 64 bits.
bool exact_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t& out);

}  // namespace hyperclust
