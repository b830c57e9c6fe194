#pragma once

namespace lvbec {

/// w(x) = exp(x²)·erfc(x), the scaled complementary error function,
/// for x ≥ 0. Never forms exp(x²) and erfc(x) separately where either
/// would overflow or underflow; finite and accurate through x = 1e6 and
/// beyond. Throws DomainError for negative or non-finite x.
double w_scaled(double x);

}  // namespace lvbec
