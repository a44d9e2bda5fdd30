#pragma once

// Internal special-function helpers shared by diagnostics and stats.

namespace periodiag::detail {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
/// a > 0, x >= 0. Series expansion for x < a + 1, Lentz continued
/// fraction otherwise; absolute error well below 1e-12.
double regularized_gamma_q(double a, double x);

/// Upper-tail chi-squared quantile: the x with Q_{df}(x) = alpha,
/// solved by bisection on regularized_gamma_q.
double chi2_quantile_upper(double alpha, int df);

/// Two-sided normal critical value z with P(|Z| > z) = alpha,
/// via the chi-squared(1) identity z = sqrt(chi2_quantile_upper(alpha, 1)).
double normal_two_sided_critical(double alpha);

}  // namespace periodiag::detail
