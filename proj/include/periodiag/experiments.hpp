#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "periodiag/par.hpp"
#include "periodiag/sarima.hpp"
#include "periodiag/series.hpp"

namespace periodiag {

/// Aligned one-step forecasts and actuals with their error summaries.
struct ForecastEval {
    std::string label;
    std::vector<double> forecasts;
    std::vector<double> actuals;
    double rmse = 0.0;
    double mae = 0.0;
    int n = 0;

    double mse() const { return rmse * rmse; }

    static ForecastEval from_pairs(std::string label, std::vector<double> forecasts,
                                   std::vector<double> actuals);
};

/// Summary of one Monte Carlo cell of the diagnostic-size study.
struct MonteCarloSummary {
    double phi1 = 0.0;
    int n_reps = 0;
    double mean_S = 0.0;
    double var_S = 0.0;
    double empirical_level = 0.0;  // fraction of replicates with S > critical
    double critical = 21.0261;     // chi-squared(12) 5% point
    std::uint64_t seed = 0;
    int redraws = 0;  // non-converged replicates replaced with fresh draws
};

/// Size study for the periodic-correlation statistic: simulates an AR(1)
/// panel of n_years complete years, fits a (1,0,0)(0,0,0)_s model with a
/// mean by conditional least squares, computes S on the residuals, and
/// tallies mean, variance and the empirical level of the nominal 5% test.
/// Deterministic given the seed; non-converged replicates are re-drawn with
/// counter-derived seeds and counted in `redraws`.
MonteCarloSummary table1_experiment(double phi1, int n_years = 17, int s = 12,
                                    int n_reps = 1000, std::uint64_t seed = 20230101);

/// Which model family a backtest should fit.
struct ModelKind {
    enum class Family { par_minimal, par_subset, sarima };

    Family family = Family::par_minimal;
    int p_max = 5;          // PAR order search bound
    double alpha = 0.05;    // PACF cut-off level (par_minimal)
    InformationCriterion criterion = InformationCriterion::bic;  // par_subset
    SarimaSpec spec;        // sarima

    static ModelKind par_minimal(int p_max = 5, double alpha = 0.05);
    static ModelKind par_subset(int p_max = 5,
                                InformationCriterion criterion = InformationCriterion::bic);
    static ModelKind sarima(const SarimaSpec& spec);

    std::string label() const;
};

/// Fits on the first N - holdout_years years, then scores frozen-parameter
/// one-step forecasts rolled through the holdout, each conditioning on all
/// actuals before the forecast origin.
ForecastEval backtest(const SeasonalSeries& series, const ModelKind& kind,
                      int holdout_years = 3);

enum class CombineMethod { simple_average, inverse_mse };

/// Pools forecasts point by point: equal weights, or weights proportional
/// to 1/MSE over the trailing `window` one-step errors (equal weights until
/// `window` errors have accrued). All evaluations must share one actuals
/// vector.
ForecastEval combine_forecasts(const std::vector<ForecastEval>& evals, CombineMethod method,
                               int window = 12);

/// Number of datasets where a's MSE is strictly smaller than b's.
int compare_pairwise(const std::vector<ForecastEval>& evals_a,
                     const std::vector<ForecastEval>& evals_b);

}  // namespace periodiag
