#pragma once

#include <cstddef>

namespace divsum {

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// binom(n, k) by the multiplicative formula; exact while it fits in 53 bits.
double binomial(std::size_t n, std::size_t k);

// ln binom(n, k) for 0 <= k <= n.
double log_binomial(std::size_t n, std::size_t k);

}  // namespace divsum
