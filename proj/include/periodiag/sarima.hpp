#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "periodiag/series.hpp"

namespace periodiag {

/// Multiplicative seasonal ARMA order (p,d,q)(P,D,Q)_s. Coefficient signs
/// follow the convention phi(B) = 1 - phi_1 B - ... and
/// theta(B) = 1 - theta_1 B - ... for both regular and seasonal polynomials.
struct SarimaSpec {
    int p = 0, d = 0, q = 0;
    int ps = 0, ds = 0, qs = 0;
    int s = 12;
    /// Mean inclusion; when unset, defaults to true iff no differencing.
    std::optional<bool> include_mean;

    bool with_mean() const { return include_mean.value_or(d + ds == 0); }
    int n_coef() const { return p + q + ps + qs; }
    int n_params() const { return n_coef() + (with_mean() ? 1 : 0); }

    void validate() const;
};

/// Model coefficients for simulation and forecasting.
struct SarimaParams {
    std::vector<double> ar;   // phi_1..phi_p
    std::vector<double> ma;   // theta_1..theta_q
    std::vector<double> sar;  // seasonal AR
    std::vector<double> sma;  // seasonal MA
    double mean = 0.0;
    double sigma2 = 1.0;
};

/// A fitted seasonal ARMA model: estimated coefficients, the residual
/// sequence aligned to the differenced series (length N*s - d - s*ds), the
/// achieved conditional sum of squares and optimizer bookkeeping.
struct SarimaFit {
    SarimaSpec spec;
    SarimaParams params;
    std::vector<double> residuals;
    double css = 0.0;     // sum of squared innovations over the full-window range
    double sigma2 = 0.0;  // css / residuals.size()
    bool converged = false;
    int iterations = 0;
};

/// Applies (1-B)^d (1-B^s)^ds to the t-ordered sequence.
std::vector<double> difference(const std::vector<double>& values, int d, int ds, int s);
std::vector<double> difference(const SeasonalSeries& series, int d, int ds);

/// Conditional sum of squares for a packed parameter vector
/// [ar..., ma..., sar..., sma..., mean?] on an already-differenced sequence.
/// Innovations are run with zero pre-sample values; the sum covers the
/// positions where the full AR window exists. Non-finite intermediates
/// yield +infinity.
double css(const std::vector<double>& params, const std::vector<double>& diffed,
           const SarimaSpec& spec);

/// Fits by minimizing the conditional sum of squares with a restarted
/// simplex search; stationarity and invertibility are enforced by an
/// infinite-css penalty on coefficient vectors whose AR or MA polynomials
/// have roots inside the unit circle. Throws NoConvergenceError if no
/// restart converges, TooShortError on insufficient data.
SarimaFit fit_sarima(const SeasonalSeries& series, const SarimaSpec& spec);

/// One-step-ahead (and chained multi-step) minimum-MSE forecasts on the
/// undifferenced scale, conditioning on the full history.
std::vector<double> forecast_sarima_history(const SarimaSpec& spec, const SarimaParams& params,
                                            const std::vector<double>& history,
                                            int horizon = 1);
std::vector<double> forecast_sarima(const SarimaFit& fit, const SeasonalSeries& series,
                                    int horizon = 1);

/// Simulates the model with Gaussian innovations (differenced specs are
/// generated on the differenced scale and integrated). Deterministic given
/// the seed; throws UnstableError on divergence.
SeasonalSeries simulate_sarima(const SarimaSpec& spec, const SarimaParams& params,
                               int n_years, std::uint64_t seed, int burn_in = 50);

namespace detail {

/// Expanded coefficients of (1 - sum a_i B^i)(1 - sum b_j B^{js}); entry 0 is 1.
std::vector<double> expand_product(const std::vector<double>& regular,
                                   const std::vector<double>& seasonal, int s);

/// Expanded coefficients of (1-B)^d (1-B^s)^ds; entry 0 is 1.
std::vector<double> differencing_poly(int d, int ds, int s);

/// True if 1 - sum c_i z^i has all roots outside the unit circle with the
/// given margin (checked via companion-matrix eigenvalue moduli).
bool roots_outside_unit_circle(const std::vector<double>& coef, double margin = 1e-6);

/// Innovation recursion on a differenced, mean-corrected sequence.
struct Innovations {
    std::vector<double> residuals;
    double css = 0.0;  // over t >= n_cond
    int n_cond = 0;
    bool finite = true;
};
Innovations run_innovations(const std::vector<double>& diffed, const SarimaSpec& spec,
                            const SarimaParams& params);

}  // namespace detail

}  // namespace periodiag
