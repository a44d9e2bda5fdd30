#include "special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace periodiag::detail {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// P(a, x) by the power series, valid and fast for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz continued fraction, for x >= a + 1.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEpsilon) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a) || !std::isfinite(x)) {
        throw std::invalid_argument("regularized_gamma_q: need a > 0 and finite x >= 0");
    }
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_quantile_upper(double alpha, int df) {
    if (!(alpha > 0.0) || !(alpha < 1.0) || df < 1) {
        throw std::invalid_argument("chi2_quantile_upper: need 0 < alpha < 1, df >= 1");
    }
    const double a = 0.5 * df;
    double lo = 0.0;
    double hi = 1.0;
    while (regularized_gamma_q(a, 0.5 * hi) > alpha) {
        hi *= 2.0;
        if (hi > 1e8) break;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (regularized_gamma_q(a, 0.5 * mid) > alpha) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-12 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double normal_two_sided_critical(double alpha) {
    return std::sqrt(chi2_quantile_upper(alpha, 1));
}

}  // namespace periodiag::detail
