#include "periodiag/sarima.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "periodiag/errors.hpp"
#include "periodiag/nelder_mead.hpp"

namespace periodiag {

namespace detail {

std::vector<double> expand_product(const std::vector<double>& regular,
                                   const std::vector<double>& seasonal, int s) {
    // Polynomials are stored as full coefficient vectors with entry 0 = 1 and
    // entry i = -coef_i, so the product is a plain convolution.
    std::vector<double> a(regular.size() + 1, 0.0);
    a[0] = 1.0;
    for (std::size_t i = 0; i < regular.size(); ++i) a[i + 1] = -regular[i];

    std::vector<double> b(seasonal.size() * s + 1, 0.0);
    b[0] = 1.0;
    for (std::size_t j = 0; j < seasonal.size(); ++j) b[(j + 1) * s] = -seasonal[j];

    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

std::vector<double> differencing_poly(int d, int ds, int s) {
    std::vector<double> out{1.0};
    auto times = [&out](const std::vector<double>& factor) {
        std::vector<double> next(out.size() + factor.size() - 1, 0.0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (std::size_t j = 0; j < factor.size(); ++j) {
                next[i + j] += out[i] * factor[j];
            }
        }
        out = std::move(next);
    };
    for (int i = 0; i < d; ++i) times({1.0, -1.0});
    std::vector<double> seasonal(s + 1, 0.0);
    seasonal[0] = 1.0;
    seasonal[s] = -1.0;
    for (int i = 0; i < ds; ++i) times(seasonal);
    return out;
}

bool roots_outside_unit_circle(const std::vector<double>& coef, double margin) {
    const int k = static_cast<int>(coef.size());
    if (k == 0) return true;
    for (double c : coef) {
        if (!std::isfinite(c)) return false;
    }
    // Companion matrix of the recursion x_t = sum c_i x_{t-i}; all roots of
    // 1 - sum c_i z^i lie outside the unit circle iff its spectral radius < 1.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) companion(0, i) = coef[i];
    for (int i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
    const Eigen::VectorXcd eig = companion.eigenvalues();
    double radius = 0.0;
    for (int i = 0; i < k; ++i) radius = std::max(radius, std::abs(eig(i)));
    return radius < 1.0 - margin;
}

Innovations run_innovations(const std::vector<double>& diffed, const SarimaSpec& spec,
                            const SarimaParams& params) {
    const std::vector<double> ar_full = expand_product(params.ar, params.sar, spec.s);
    const std::vector<double> ma_full = expand_product(params.ma, params.sma, spec.s);
    const int deg_ar = static_cast<int>(ar_full.size()) - 1;
    const int deg_ma = static_cast<int>(ma_full.size()) - 1;
    const int n = static_cast<int>(diffed.size());

    Innovations out;
    out.n_cond = std::min(deg_ar, n);
    out.residuals.assign(n, 0.0);
    for (int t = 0; t < n; ++t) {
        double a = 0.0;
        for (int i = 0; i <= std::min(deg_ar, t); ++i) {
            a += ar_full[i] * (diffed[t - i] - params.mean);
        }
        for (int j = 1; j <= std::min(deg_ma, t); ++j) {
            a -= ma_full[j] * out.residuals[t - j];
        }
        if (!std::isfinite(a)) {
            out.finite = false;
            out.css = std::numeric_limits<double>::infinity();
            return out;
        }
        out.residuals[t] = a;
        if (t >= out.n_cond) out.css += a * a;
    }
    if (!std::isfinite(out.css)) {
        out.finite = false;
        out.css = std::numeric_limits<double>::infinity();
    }
    return out;
}

}  // namespace detail

namespace {

SarimaParams unpack_params(const std::vector<double>& v, const SarimaSpec& spec) {
    if (static_cast<int>(v.size()) != spec.n_params()) {
        throw std::invalid_argument("sarima: parameter vector has wrong dimension");
    }
    SarimaParams params;
    auto it = v.begin();
    params.ar.assign(it, it + spec.p);
    it += spec.p;
    params.ma.assign(it, it + spec.q);
    it += spec.q;
    params.sar.assign(it, it + spec.ps);
    it += spec.ps;
    params.sma.assign(it, it + spec.qs);
    it += spec.qs;
    params.mean = spec.with_mean() ? *it : 0.0;
    return params;
}

bool admissible(const SarimaParams& params) {
    return detail::roots_outside_unit_circle(params.ar) &&
           detail::roots_outside_unit_circle(params.ma) &&
           detail::roots_outside_unit_circle(params.sar) &&
           detail::roots_outside_unit_circle(params.sma);
}

}  // namespace

void SarimaSpec::validate() const {
    if (p < 0 || d < 0 || q < 0 || ps < 0 || ds < 0 || qs < 0) {
        throw std::invalid_argument("SarimaSpec: orders must be non-negative");
    }
    if (p > 5 || q > 5 || ps > 5 || qs > 5 || d > 5 || ds > 5) {
        throw std::invalid_argument("SarimaSpec: orders above 5 are not supported");
    }
    if (s < 1) {
        throw std::invalid_argument("SarimaSpec: s must be >= 1");
    }
}

std::vector<double> difference(const std::vector<double>& values, int d, int ds, int s) {
    if (d < 0 || ds < 0 || s < 1) {
        throw std::invalid_argument("difference: bad orders");
    }
    if (static_cast<int>(values.size()) <= d + s * ds) {
        throw TooShortError("difference: series shorter than the differencing window");
    }
    std::vector<double> w = values;
    for (int i = 0; i < d; ++i) {
        for (std::size_t t = w.size() - 1; t >= 1; --t) w[t] -= w[t - 1];
        w.erase(w.begin());
    }
    for (int i = 0; i < ds; ++i) {
        for (std::size_t t = w.size() - 1; t >= static_cast<std::size_t>(s); --t) {
            w[t] -= w[t - s];
        }
        w.erase(w.begin(), w.begin() + s);
    }
    return w;
}

std::vector<double> difference(const SeasonalSeries& series, int d, int ds) {
    return difference(series.values(), d, ds, series.s());
}

double css(const std::vector<double>& params, const std::vector<double>& diffed,
           const SarimaSpec& spec) {
    const SarimaParams unpacked = unpack_params(params, spec);
    return detail::run_innovations(diffed, spec, unpacked).css;
}

SarimaFit fit_sarima(const SeasonalSeries& series, const SarimaSpec& spec) {
    spec.validate();
    const std::vector<double> diffed = difference(series, spec.d, spec.ds);
    const int n = static_cast<int>(diffed.size());
    const int n_params = spec.n_params();
    if (n < 10 * (n_params + 1)) {
        throw TooShortError("fit_sarima: need at least 10*(#params + 1) observations "
                            "after differencing");
    }

    double diffed_mean = 0.0;
    for (double v : diffed) diffed_mean += v;
    diffed_mean /= n;
    double diffed_sd = 0.0;
    for (double v : diffed) diffed_sd += (v - diffed_mean) * (v - diffed_mean);
    diffed_sd = std::sqrt(diffed_sd / n);

    auto objective = [&](const std::vector<double>& v) {
        const SarimaParams p = unpack_params(v, spec);
        if (!admissible(p)) {
            return std::numeric_limits<double>::infinity();
        }
        return detail::run_innovations(diffed, spec, p).css;
    };

    // Origin start (coefficients at zero, mean at the sample mean) plus
    // jittered restarts; the best converged vertex wins.
    constexpr int kRestarts = 5;
    constexpr int kMaxIter = 2000;
    std::mt19937_64 rng(0x9dc5u);
    std::uniform_real_distribution<double> jitter(-0.1, 0.1);

    NelderMeadResult best;
    best.fx = std::numeric_limits<double>::infinity();
    bool have_best = false;
    bool best_converged = false;
    int total_iterations = 0;

    for (int restart = 0; restart < kRestarts; ++restart) {
        std::vector<double> x0(n_params, 0.0);
        std::vector<double> step(n_params, 0.1);
        if (spec.with_mean()) {
            x0[n_params - 1] = diffed_mean;
            step[n_params - 1] = 0.1 * std::max(1.0, diffed_sd);
        }
        if (restart > 0) {
            for (int i = 0; i < spec.n_coef(); ++i) x0[i] += jitter(rng);
            if (spec.with_mean()) {
                x0[n_params - 1] += jitter(rng) * std::max(1.0, diffed_sd);
            }
        }
        NelderMeadResult run = nelder_mead(objective, x0, step, 1e-8, kMaxIter);
        total_iterations += run.iterations;
        // converged runs always outrank non-converged ones
        const bool better = !have_best || (run.converged && !best_converged) ||
                            (run.converged == best_converged && run.fx < best.fx);
        if (better) {
            have_best = true;
            best_converged = run.converged;
            best = std::move(run);
        }
    }

    if (!best_converged || !std::isfinite(best.fx)) {
        throw NoConvergenceError("fit_sarima: simplex search did not converge");
    }

    SarimaFit fit;
    fit.spec = spec;
    fit.params = unpack_params(best.x, spec);
    const detail::Innovations innov = detail::run_innovations(diffed, spec, fit.params);
    fit.residuals = innov.residuals;
    fit.css = innov.css;
    fit.sigma2 = innov.css / static_cast<double>(innov.residuals.size());
    fit.params.sigma2 = fit.sigma2;
    fit.converged = true;
    fit.iterations = total_iterations;
    return fit;
}

std::vector<double> forecast_sarima_history(const SarimaSpec& spec, const SarimaParams& params,
                                            const std::vector<double>& history, int horizon) {
    spec.validate();
    if (horizon < 1) {
        throw std::invalid_argument("forecast_sarima: horizon must be >= 1");
    }
    const std::vector<double> diffed = difference(history, spec.d, spec.ds, spec.s);
    const detail::Innovations innov = detail::run_innovations(diffed, spec, params);

    const std::vector<double> ar_full = detail::expand_product(params.ar, params.sar, spec.s);
    const std::vector<double> ma_full = detail::expand_product(params.ma, params.sma, spec.s);
    const std::vector<double> integ = detail::differencing_poly(spec.d, spec.ds, spec.s);
    const int deg_ar = static_cast<int>(ar_full.size()) - 1;
    const int deg_ma = static_cast<int>(ma_full.size()) - 1;
    const int deg_integ = static_cast<int>(integ.size()) - 1;

    // Mean-corrected differenced history, extended with forecasts; future
    // innovations are zero.
    std::vector<double> w(diffed.size());
    for (std::size_t t = 0; t < diffed.size(); ++t) w[t] = diffed[t] - params.mean;
    std::vector<double> a = innov.residuals;
    std::vector<double> z = history;

    std::vector<double> forecasts;
    forecasts.reserve(horizon);
    for (int h = 0; h < horizon; ++h) {
        const int t = static_cast<int>(w.size());
        double w_next = 0.0;
        for (int i = 1; i <= deg_ar; ++i) {
            if (t - i < 0) break;
            w_next -= ar_full[i] * w[t - i];
        }
        for (int j = 1; j <= deg_ma; ++j) {
            if (t - j < 0) break;
            w_next += ma_full[j] * a[t - j];
        }
        w.push_back(w_next);
        a.push_back(0.0);

        // Undo differencing: z_t = (w_t + mean) - sum_k integ_k z_{t-k}.
        const int tz = static_cast<int>(z.size());
        double z_next = w_next + params.mean;
        for (int k2 = 1; k2 <= deg_integ; ++k2) {
            if (tz - k2 < 0) {
                throw TooShortError("forecast_sarima: history too short to undifference");
            }
            z_next -= integ[k2] * z[tz - k2];
        }
        z.push_back(z_next);
        forecasts.push_back(z_next);
    }
    return forecasts;
}

std::vector<double> forecast_sarima(const SarimaFit& fit, const SeasonalSeries& series,
                                    int horizon) {
    return forecast_sarima_history(fit.spec, fit.params, series.values(), horizon);
}

SeasonalSeries simulate_sarima(const SarimaSpec& spec, const SarimaParams& params,
                               int n_years, std::uint64_t seed, int burn_in) {
    spec.validate();
    if (n_years < 1 || burn_in < 0) {
        throw std::invalid_argument("simulate_sarima: bad dimensions");
    }
    const int s = spec.s;
    const int total = (n_years + burn_in) * s;

    const std::vector<double> ar_full = detail::expand_product(params.ar, params.sar, s);
    const std::vector<double> ma_full = detail::expand_product(params.ma, params.sma, s);
    const int deg_ar = static_cast<int>(ar_full.size()) - 1;
    const int deg_ma = static_cast<int>(ma_full.size()) - 1;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sd = std::sqrt(params.sigma2);

    // Stationary-scale recursion with zero pre-sample values.
    std::vector<double> innovations(total);
    for (int t = 0; t < total; ++t) innovations[t] = sd * gauss(rng);

    std::vector<double> w(total);
    for (int t = 0; t < total; ++t) {
        double value = innovations[t];
        for (int j = 1; j <= std::min(deg_ma, t); ++j) {
            value += ma_full[j] * innovations[t - j];
        }
        for (int i = 1; i <= std::min(deg_ar, t); ++i) {
            value -= ar_full[i] * w[t - i];
        }
        if (std::fabs(value) > 1e12) {
            throw UnstableError("simulate_sarima: series diverged");
        }
        w[t] = value;
    }
    for (int t = 0; t < total; ++t) w[t] += params.mean;

    // Integrate differenced specs back to the observation scale.
    if (spec.d > 0 || spec.ds > 0) {
        const std::vector<double> integ = detail::differencing_poly(spec.d, spec.ds, s);
        const int deg = static_cast<int>(integ.size()) - 1;
        std::vector<double> z(total);
        for (int t = 0; t < total; ++t) {
            double value = w[t];
            for (int k = 1; k <= std::min(deg, t); ++k) {
                value -= integ[k] * z[t - k];
            }
            if (std::fabs(value) > 1e12) {
                throw UnstableError("simulate_sarima: integrated series diverged");
            }
            z[t] = value;
        }
        w = std::move(z);
    }

    std::vector<double> kept(w.end() - static_cast<std::ptrdiff_t>(n_years) * s, w.end());
    return SeasonalSeries::from_flat(std::move(kept), s, "simulated-sarima");
}

}  // namespace periodiag
