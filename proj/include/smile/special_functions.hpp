#pragma once

// Log-gamma and digamma for positive real arguments, accurate to about 1e-15
// relative (including near the zeros of ln Gamma at 1 and 2 and the positive
// root of digamma). Arguments <= 0 or NaN raise DomainError.

namespace smile::special {

double log_gamma(double x);
double digamma(double x);

}  // namespace smile::special
