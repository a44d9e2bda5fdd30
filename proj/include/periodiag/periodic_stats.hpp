#pragma once

#include <vector>

#include "periodiag/series.hpp"

namespace periodiag {

/// Sample periodic autocovariances and autocorrelations.
///
/// gamma[m-1][l] estimates Cov(z_{r,m}, z_{r,m-l}) with the lagged index
/// resolved through linear time t = s*(r-1) + m, summing over the years for
/// which the lagged observation exists and dividing by that pair count
/// (recorded in n_pairs). rho[m-1][l] is the corresponding correlation with
/// numerator and denominator sums taken over the same year range, which
/// keeps |rho| <= 1 by Cauchy-Schwarz; it coincides with
/// gamma_m(l)/sqrt(gamma_m(0)*gamma_{m-l}(0)) whenever no years are lost
/// to the lag window.
struct PeriodicAcf {
    int s = 0;
    int max_lag = 0;
    std::vector<std::vector<double>> gamma;  // [m-1][lag], lag = 0..max_lag
    std::vector<std::vector<double>> rho;    // same shape, rho[m-1][0] = 1
    std::vector<double> mu;                  // periodic means, [m-1]
    std::vector<std::vector<int>> n_pairs;   // pair counts per (m, lag)
};

/// Sample periodic partial autocorrelations, the identification tool for
/// per-period AR orders. pacf[m-1][k-1] is the standardized partial
/// correlation between z_{r,m} and its k-th linear-time predecessor given
/// the intervening k-1 observations, computed from the sample periodic
/// autocovariances; values are on correlation scale so the white-noise
/// band +-1.96/sqrt(N) applies uniformly across periods.
struct PeriodicPacf {
    int s = 0;
    int max_order = 0;
    std::vector<std::vector<double>> pacf;  // [m-1][k-1], k = 1..max_order
    double band = 0.0;                      // 1.96/sqrt(N)
};

/// Per-period sample means mu_m = (1/N) sum_r z_{r,m}, 1-based period order.
std::vector<double> periodic_mean(const SeasonalSeries& series);

/// Sample periodic autocovariance/autocorrelation tables up to max_lag.
/// Throws DegenerateVarianceError if some period has zero sample variance,
/// TooShortError if max_lag >= N*s.
PeriodicAcf periodic_autocovariance(const SeasonalSeries& series, int max_lag);

/// Periodic PACF for orders 1..max_order.
/// Throws SingularFitError on singular prediction equations.
PeriodicPacf periodic_pacf(const SeasonalSeries& series, int max_order);

}  // namespace periodiag
