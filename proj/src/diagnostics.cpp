#include "periodiag/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "periodiag/errors.hpp"
#include "special.hpp"

namespace periodiag {

namespace {

struct PeriodicResidualAcf {
    std::vector<double> r;
    std::vector<int> n_pairs;
};

// Shared worker: period labels are anchored so the last residual falls in
// period s; the first year may be ragged.
PeriodicResidualAcf residual_acf_with_counts(const std::vector<double>& residuals, int s,
                                             int k) {
    const int len = static_cast<int>(residuals.size());
    if (s < 1) {
        throw std::invalid_argument("residual_periodic_acf: s must be >= 1");
    }
    if (k < 1) {
        throw std::invalid_argument("residual_periodic_acf: k must be >= 1");
    }
    if (len < 2 * s) {
        throw TooShortError("residual_periodic_acf: need at least 2*s residuals");
    }

    // Index j (0-based) has period ((j + pad) mod s) + 1 with the front
    // padded to a whole year.
    const int pad = (s - len % s) % s;

    PeriodicResidualAcf out;
    out.r.assign(s, 0.0);
    out.n_pairs.assign(s, 0);
    for (int m = 1; m <= s; ++m) {
        double sum_xy = 0.0, sum_xx = 0.0, sum_yy = 0.0;
        int count = 0;
        for (int j = (m - 1 - pad + s) % s; j < len; j += s) {
            const int j_lag = j - k;
            if (j_lag < 0) continue;
            sum_xy += residuals[j] * residuals[j_lag];
            sum_xx += residuals[j] * residuals[j];
            sum_yy += residuals[j_lag] * residuals[j_lag];
            ++count;
        }
        out.n_pairs[m - 1] = count;
        if (count == 0 || sum_xx == 0.0 || sum_yy == 0.0) {
            throw DegenerateVarianceError(m);
        }
        out.r[m - 1] = sum_xy / std::sqrt(sum_xx * sum_yy);
    }
    return out;
}

}  // namespace

std::vector<double> residual_periodic_acf(const std::vector<double>& residuals, int s, int k) {
    return residual_acf_with_counts(residuals, s, k).r;
}

DiagnosticReport s_statistic(const std::vector<double>& residuals, int s) {
    const PeriodicResidualAcf acf = residual_acf_with_counts(residuals, s, 1);
    DiagnosticReport report;
    report.s = s;
    report.r1 = acf.r;
    report.n_years_eff = acf.n_pairs;
    report.df = s;
    double stat = 0.0;
    for (int m = 0; m < s; ++m) {
        stat += acf.n_pairs[m] * acf.r[m] * acf.r[m];
    }
    report.S = stat;
    report.p_value = chi2_upper_tail(stat, s);
    return report;
}

double chi2_upper_tail(double x, int df) {
    if (df < 1) {
        throw std::invalid_argument("chi2_upper_tail: df must be >= 1");
    }
    if (!std::isfinite(x) || x < 0.0) {
        throw std::invalid_argument("chi2_upper_tail: x must be finite and >= 0");
    }
    return detail::regularized_gamma_q(0.5 * df, 0.5 * x);
}

LjungBoxResult ljung_box(const std::vector<double>& residuals, int max_lag,
                         int fitted_params) {
    const int n = static_cast<int>(residuals.size());
    if (max_lag < 1 || fitted_params < 0) {
        throw std::invalid_argument("ljung_box: need max_lag >= 1 and fitted_params >= 0");
    }
    if (max_lag <= fitted_params) {
        throw InsufficientLagsError("ljung_box: max_lag must exceed the fitted parameter count");
    }
    if (n <= max_lag + 1) {
        throw InsufficientLagsError("ljung_box: residual sequence shorter than max_lag");
    }

    double mean = 0.0;
    for (double v : residuals) mean += v;
    mean /= n;

    double c0 = 0.0;
    for (double v : residuals) c0 += (v - mean) * (v - mean);
    if (c0 == 0.0) {
        throw DegenerateVarianceError(1);
    }

    double stat = 0.0;
    for (int k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (int t = k; t < n; ++t) {
            ck += (residuals[t] - mean) * (residuals[t - k] - mean);
        }
        const double rk = ck / c0;
        stat += rk * rk / (n - k);
    }
    stat *= static_cast<double>(n) * (n + 2);

    LjungBoxResult result;
    result.statistic = stat;
    result.df = max_lag - fitted_params;
    result.p_value = chi2_upper_tail(stat, result.df);
    return result;
}

}  // namespace periodiag
