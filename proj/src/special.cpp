#include "divsum/special.hpp"

#include <algorithm>
#include <cmath>

#include "divsum/error.hpp"

namespace divsum {

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::invalid_input, "log_gamma needs x > 0");
  return std::lgamma(x);
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) throw Error(ErrorCode::invalid_input, "binomial needs k <= n");
  const std::size_t kk = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= kk; ++i) r = r * static_cast<double>(n - kk + i) / static_cast<double>(i);
  return r;
}

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) throw Error(ErrorCode::invalid_input, "log_binomial needs k <= n");
  if (k == 0 || k == n) return 0.0;
  // exact for small arguments
  if (n <= 60) return std::log(binomial(n, k));
  return log_gamma(static_cast<double>(n) + 1.0) - log_gamma(static_cast<double>(k) + 1.0) -
         log_gamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace divsum
