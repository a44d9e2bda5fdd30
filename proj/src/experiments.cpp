#include "periodiag/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "periodiag/diagnostics.hpp"
#include "periodiag/errors.hpp"
#include "parallel.hpp"

namespace periodiag {

ForecastEval ForecastEval::from_pairs(std::string label, std::vector<double> forecasts,
                                      std::vector<double> actuals) {
    if (forecasts.size() != actuals.size() || forecasts.empty()) {
        throw MisalignedEvalsError("ForecastEval: forecasts and actuals must align");
    }
    ForecastEval eval;
    eval.label = std::move(label);
    eval.n = static_cast<int>(forecasts.size());
    double sq = 0.0, abs = 0.0;
    for (int i = 0; i < eval.n; ++i) {
        const double e = forecasts[i] - actuals[i];
        sq += e * e;
        abs += std::fabs(e);
    }
    eval.rmse = std::sqrt(sq / eval.n);
    eval.mae = abs / eval.n;
    eval.forecasts = std::move(forecasts);
    eval.actuals = std::move(actuals);
    return eval;
}

MonteCarloSummary table1_experiment(double phi1, int n_years, int s, int n_reps,
                                    std::uint64_t seed) {
    if (!(std::fabs(phi1) < 1.0)) {
        throw std::invalid_argument("table1_experiment: need |phi1| < 1");
    }
    if (n_years < 2 || s < 2 || n_reps < 1) {
        throw std::invalid_argument("table1_experiment: bad dimensions");
    }

    SarimaSpec sim_spec;
    sim_spec.p = 1;
    sim_spec.s = s;
    SarimaParams sim_params;
    sim_params.ar = {phi1};
    sim_params.mean = 0.0;
    sim_params.sigma2 = 1.0;

    SarimaSpec fit_spec = sim_spec;
    fit_spec.include_mean = true;

    constexpr int kMaxAttempts = 50;
    std::vector<double> stats(n_reps, 0.0);
    std::vector<int> attempts(n_reps, 0);

    detail::parallel_for(n_reps, [&](int rep) {
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const std::uint64_t rep_seed = detail::derive_seed(seed, rep, attempt);
            const SeasonalSeries panel = simulate_sarima(sim_spec, sim_params, n_years, rep_seed);
            try {
                const SarimaFit fit = fit_sarima(panel, fit_spec);
                stats[rep] = s_statistic(fit.residuals, s).S;
                attempts[rep] = attempt;
                return;
            } catch (const NoConvergenceError&) {
                continue;
            }
        }
        throw NoConvergenceError("table1_experiment: replicate failed after " +
                                 std::to_string(kMaxAttempts) + " redraws");
    });

    MonteCarloSummary summary;
    summary.phi1 = phi1;
    summary.n_reps = n_reps;
    summary.seed = seed;
    double sum = 0.0;
    int exceed = 0;
    for (int rep = 0; rep < n_reps; ++rep) {
        sum += stats[rep];
        if (stats[rep] > summary.critical) ++exceed;
        summary.redraws += attempts[rep];
    }
    summary.mean_S = sum / n_reps;
    double ss = 0.0;
    for (double v : stats) ss += (v - summary.mean_S) * (v - summary.mean_S);
    summary.var_S = n_reps > 1 ? ss / (n_reps - 1) : 0.0;
    summary.empirical_level = static_cast<double>(exceed) / n_reps;
    return summary;
}

ModelKind ModelKind::par_minimal(int p_max, double alpha) {
    ModelKind kind;
    kind.family = Family::par_minimal;
    kind.p_max = p_max;
    kind.alpha = alpha;
    return kind;
}

ModelKind ModelKind::par_subset(int p_max, InformationCriterion criterion) {
    ModelKind kind;
    kind.family = Family::par_subset;
    kind.p_max = p_max;
    kind.criterion = criterion;
    return kind;
}

ModelKind ModelKind::sarima(const SarimaSpec& spec) {
    ModelKind kind;
    kind.family = Family::sarima;
    kind.spec = spec;
    return kind;
}

std::string ModelKind::label() const {
    switch (family) {
        case Family::par_minimal:
            return "par-minimal";
        case Family::par_subset:
            return "par-subset";
        case Family::sarima:
            return "sarima(" + std::to_string(spec.p) + "," + std::to_string(spec.d) + "," +
                   std::to_string(spec.q) + ")(" + std::to_string(spec.ps) + "," +
                   std::to_string(spec.ds) + "," + std::to_string(spec.qs) + ")_" +
                   std::to_string(spec.s);
    }
    return "unknown";
}

ForecastEval backtest(const SeasonalSeries& series, const ModelKind& kind, int holdout_years) {
    const int s = series.s();
    const int n = series.n_years();
    if (holdout_years < 1 || holdout_years >= n) {
        throw std::invalid_argument("backtest: holdout_years must be in [1, N)");
    }
    const SeasonalSeries train = series.head_years(n - holdout_years);

    // Fit once on the training span; forecasts condition on actuals only.
    ParModel par_model;
    SarimaFit sarima_fit;
    switch (kind.family) {
        case ModelKind::Family::par_minimal: {
            const std::vector<int> orders = select_orders_minimal(train, kind.p_max, kind.alpha);
            par_model = fit_par(train, orders);
            break;
        }
        case ModelKind::Family::par_subset:
            par_model = select_orders_subset(train, kind.p_max, kind.criterion);
            break;
        case ModelKind::Family::sarima:
            sarima_fit = fit_sarima(train, kind.spec);
            break;
    }

    const std::vector<double>& all = series.values();
    const int start = (n - holdout_years) * s;
    const int total = n * s;
    std::vector<double> forecasts, actuals;
    forecasts.reserve(total - start);
    actuals.reserve(total - start);
    for (int t0 = start; t0 < total; ++t0) {
        const std::vector<double> history(all.begin(), all.begin() + t0);
        double fc;
        if (kind.family == ModelKind::Family::sarima) {
            fc = forecast_sarima_history(sarima_fit.spec, sarima_fit.params, history, 1)[0];
        } else {
            fc = forecast_par_history(par_model, history, 1)[0];
        }
        forecasts.push_back(fc);
        actuals.push_back(all[t0]);
    }
    return ForecastEval::from_pairs(kind.label(), std::move(forecasts), std::move(actuals));
}

ForecastEval combine_forecasts(const std::vector<ForecastEval>& evals, CombineMethod method,
                               int window) {
    if (evals.size() < 2) {
        throw MisalignedEvalsError("combine_forecasts: need at least two evaluations");
    }
    const std::vector<double>& actuals = evals.front().actuals;
    for (const ForecastEval& e : evals) {
        if (e.actuals != actuals) {
            throw MisalignedEvalsError("combine_forecasts: actuals vectors differ");
        }
    }
    if (method == CombineMethod::inverse_mse && window < 1) {
        throw std::invalid_argument("combine_forecasts: window must be >= 1");
    }

    const int n = static_cast<int>(actuals.size());
    const int k = static_cast<int>(evals.size());
    std::vector<double> combined(n, 0.0);

    if (method == CombineMethod::simple_average) {
        for (int t = 0; t < n; ++t) {
            double sum = 0.0;
            for (const ForecastEval& e : evals) sum += e.forecasts[t];
            combined[t] = sum / k;
        }
        return ForecastEval::from_pairs("combined-average", std::move(combined), actuals);
    }

    // inverse_mse: weights from trailing one-step errors, renormalized each
    // step; until `window` errors exist, use equal weights.
    for (int t = 0; t < n; ++t) {
        std::vector<double> weights(k, 1.0 / k);
        if (t >= window) {
            std::vector<double> mse(k, 0.0);
            int zeros = 0;
            for (int i = 0; i < k; ++i) {
                for (int u = t - window; u < t; ++u) {
                    const double e = evals[i].forecasts[u] - actuals[u];
                    mse[i] += e * e;
                }
                mse[i] /= window;
                if (mse[i] == 0.0) ++zeros;
            }
            if (zeros > 0) {
                for (int i = 0; i < k; ++i) weights[i] = mse[i] == 0.0 ? 1.0 / zeros : 0.0;
            } else {
                double total = 0.0;
                for (int i = 0; i < k; ++i) {
                    weights[i] = 1.0 / mse[i];
                    total += weights[i];
                }
                for (double& w : weights) w /= total;
            }
        }
        double value = 0.0;
        for (int i = 0; i < k; ++i) value += weights[i] * evals[i].forecasts[t];
        combined[t] = value;
    }
    return ForecastEval::from_pairs("combined-inverse-mse", std::move(combined), actuals);
}

int compare_pairwise(const std::vector<ForecastEval>& evals_a,
                     const std::vector<ForecastEval>& evals_b) {
    if (evals_a.size() != evals_b.size()) {
        throw MisalignedEvalsError("compare_pairwise: dataset lists differ in length");
    }
    int count = 0;
    for (std::size_t i = 0; i < evals_a.size(); ++i) {
        if (evals_a[i].mse() < evals_b[i].mse()) ++count;
    }
    return count;
}

}  // namespace periodiag
