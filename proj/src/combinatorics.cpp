#include "hyperclust/combinatorics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hyperclust {

namespace {

// Largest integer count representable exactly in a double.
constexpr double kExactLimit = 9007199254740992.0;  // 2^53
const double kLnExactLimit = std::log(kExactLimit);

// Below this k the falling factorial is summed term by term.
constexpr std::uint64_t kDirectSumLimit = 16;

// Tail of the Stirling series for ln Gamma(x + 1); accurate to far below one
// ulp once x exceeds the table capacity.
double stirling_tail(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

}  // namespace

LogFactorialTable::LogFactorialTable(std::size_t capacity) : table_(std::max<std::size_t>(capacity, 2)) {
  table_[0] = 0.0;
  table_[1] = 0.0;
  for (std::size_t k = 2; k < table_.size(); ++k) {
    table_[k] = std::lgamma(static_cast<double>(k) + 1.0);
  }
}

double LogFactorialTable::operator()(std::uint64_t k) const {
  if (k < table_.size()) return table_[k];
  return std::lgamma(static_cast<double>(k) + 1.0);
}

const LogFactorialTable& LogFactorialTable::shared() {
  static const LogFactorialTable table;
  return table;
}

double ln_factorial(std::uint64_t k) { return LogFactorialTable::shared()(k); }

double ln_falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return kLnZero;
  if (k == 0) return 0.0;
  if (k <= kDirectSumLimit) {
    double sum = 0.0;
    for (std::uint64_t j = 0; j < k; ++j) sum += std::log(static_cast<double>(n - j));
    return sum;
  }
  const auto& table = LogFactorialTable::shared();
  const std::uint64_t rest = n - k;
  if (n < table.capacity() || rest < table.capacity()) {
    // No catastrophic cancellation: either both values are small or the
    // result is dominated by ln n!.
    return table(n) - table(rest);
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double rr = static_cast<double>(rest);
  return kk * std::log(nn) - (rr + 0.5) * std::log1p(-kk / nn) - kk + stirling_tail(nn) -
         stirling_tail(rr);
}

double ln_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return kLnZero;
  k = std::min(k, n - k);
  if (k == 0) return 0.0;
  return ln_falling_factorial(n, k) - ln_factorial(k);
}

double ln_binomial_real(double ln_n, std::uint64_t k) {
  if (k == 0) return 0.0;
  if (is_ln_zero(ln_n)) return kLnZero;
  if (ln_n <= kLnExactLimit) {
    const auto n = static_cast<std::uint64_t>(std::llround(std::exp(ln_n)));
    return ln_binomial(n, k);
  }
  // N >= 2^53 > k. ln(N!/(N-k)!) = k ln N + sum_j ln(1 - j/N).
  const double kk = static_cast<double>(k);
  if (ln_n > 700.0) {
    // j/N underflows against 1 for every representable k.
    return kk * ln_n - ln_factorial(k);
  }
  const double nn = std::exp(ln_n);
  const double correction = -(nn - kk + 0.5) * std::log1p(-kk / nn) - kk;
  return kk * ln_n + correction - ln_factorial(k);
}

double ln_multinomial(std::uint64_t total, std::span<const std::uint64_t> parts) {
  std::uint64_t sum = 0;
  double result = ln_factorial(total);
  for (std::uint64_t part : parts) {
    sum += part;
    result -= ln_factorial(part);
  }
  if (sum != total) throw std::invalid_argument("multinomial parts do not sum to total");
  return result;
}

bool exact_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t& out) {
  if (k > n) {
    out = 0;
    return true;
  }
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    // acc * (n - k + j) / j stays integral at every step.
    acc = acc * (n - k + j) / j;
    if (acc > UINT64_MAX) return false;
  }
  out = static_cast<std::uint64_t>(acc);
  return true;
}

}  // namespace hyperclust
