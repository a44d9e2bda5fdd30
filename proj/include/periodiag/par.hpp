#pragma once

#include <cstdint>
#include <vector>

#include "periodiag/series.hpp"

namespace periodiag {

/// Periodic autoregression: per-period AR orders, coefficients, means and
/// innovation variances. `mask`, when non-empty, marks which lags are free
/// in a subset model (false entries are constrained to zero and phi holds
/// exact zeros there).
struct ParModel {
    int s = 0;
    std::vector<int> orders;                // p_m per period
    std::vector<std::vector<double>> phi;   // [m-1][j-1], j = 1..p_m
    std::vector<double> mu;                 // per-period means
    std::vector<double> sigma2;             // innovation variances
    std::vector<std::vector<char>> mask;    // empty = all lags free

    bool lag_included(int period, int lag) const {
        if (mask.empty()) return true;
        return mask[period - 1][lag - 1] != 0;
    }

    /// Number of free AR coefficients, the parsimony measure.
    int parameter_count() const;
};

enum class InformationCriterion { aic, bic };

/// Fits a PAR model by per-period conditional least squares: for each
/// period, OLS of the mean-corrected observation on its p_m mean-corrected
/// linear-time predecessors, using the years where the full lag window
/// exists. sigma2_m is the residual sum of squares divided by the number of
/// usable years. A non-empty mask restricts the regressors to the marked
/// lags (the window is still determined by p_m).
ParModel fit_par(const SeasonalSeries& series, const std::vector<int>& orders,
                 const std::vector<std::vector<char>>& mask = {});

/// Model residuals in linear-time order, starting at the first year where
/// every period has its full lag window (so the sequence is contiguous and
/// anchored at the series end).
std::vector<double> residuals_par(const ParModel& model, const SeasonalSeries& series);

/// Per-period orders from the periodic PACF cut-off rule: p_m is the
/// largest k <= p_max whose |pacf_m(k)| exceeds the two-sided alpha-level
/// white-noise band, or 0 if none does.
std::vector<int> select_orders_minimal(const SeasonalSeries& series, int p_max, double alpha);

/// Exhaustive subset search: per period, fits every lag-subset of
/// {1..p_max} over the fixed p_max-lag window and keeps the subset with the
/// best AIC or BIC; ties go to fewer parameters, then the lexicographically
/// smaller mask. Returns the assembled fitted model.
ParModel select_orders_subset(const SeasonalSeries& series, int p_max,
                              InformationCriterion criterion);

/// Simulates the model with Gaussian innovations, discarding burn_in years.
/// Deterministic for a fixed seed. Throws UnstableError if |z| exceeds 1e12.
SeasonalSeries simulate_par(const ParModel& model, int n_years, std::uint64_t seed,
                            int burn_in = 50);

/// Minimum-MSE forecasts for the next `horizon` observations following the
/// given history (values in linear-time order, ending at a year boundary or
/// not); unknown intermediate values are replaced by their forecasts.
std::vector<double> forecast_par_history(const ParModel& model,
                                         const std::vector<double>& history,
                                         int horizon = 1);

/// Forecasts continuing past the end of a complete-years series.
std::vector<double> forecast_par(const ParModel& model, const SeasonalSeries& series,
                                 int horizon = 1);

}  // namespace periodiag
