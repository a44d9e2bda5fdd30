#pragma once

#include <optional>
#include <vector>

namespace periodiag {

/// Modified portmanteau statistic with its degrees of freedom and p-value.
struct LjungBoxResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
};

/// Result of the periodic-correlation diagnostic on a residual sequence:
/// per-period lag-1 residual correlations r1, their effective year counts,
/// the pooled statistic S = sum_m n_m * r1_m^2, and its chi-squared(s)
/// upper-tail probability.
struct DiagnosticReport {
    int s = 0;
    std::vector<double> r1;        // r_m(1), m = 1..s
    std::vector<int> n_years_eff;  // pair count per period
    double S = 0.0;
    int df = 0;
    double p_value = 1.0;
    std::optional<LjungBoxResult> ljung_box;
};

/// Residual periodic autocorrelations at lag k >= 1.
///
/// Residuals are given in linear-time order; a short ragged first year (from
/// differencing) is permitted and period labels are anchored at the sequence
/// end. For each period m, numerator and denominator sums run over exactly
/// the years where both paired residuals exist, guaranteeing |r| <= 1.
/// Residuals are not re-centered.
std::vector<double> residual_periodic_acf(const std::vector<double>& residuals, int s, int k);

/// The periodic-correlation check: computes r_m(1) for every period,
/// S = sum_m n_m * r_m(1)^2 on s degrees of freedom, and its p-value.
DiagnosticReport s_statistic(const std::vector<double>& residuals, int s);

/// Upper-tail chi-squared probability P(chi2_df > x), absolute error < 1e-10.
double chi2_upper_tail(double x, int df);

/// Ljung-Box portmanteau test on max_lag residual autocorrelations with
/// df = max_lag - fitted_params. Throws InsufficientLagsError when
/// max_lag <= fitted_params or the sequence is too short.
LjungBoxResult ljung_box(const std::vector<double>& residuals, int max_lag, int fitted_params);

}  // namespace periodiag
