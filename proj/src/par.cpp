#include "periodiag/par.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "periodiag/errors.hpp"
#include "periodiag/periodic_stats.hpp"
#include "special.hpp"

namespace periodiag {

namespace {

int wrap_period(int s, int m) {
    int w = (m - 1) % s;
    if (w < 0) w += s;
    return w + 1;
}

void validate_orders(int s, const std::vector<int>& orders,
                     const std::vector<std::vector<char>>& mask) {
    if (static_cast<int>(orders.size()) != s) {
        throw std::invalid_argument("fit_par: orders must have one entry per period");
    }
    for (int p : orders) {
        if (p < 0) throw std::invalid_argument("fit_par: orders must be >= 0");
    }
    if (!mask.empty()) {
        if (static_cast<int>(mask.size()) != s) {
            throw std::invalid_argument("fit_par: mask must have one row per period");
        }
        for (int m = 1; m <= s; ++m) {
            if (static_cast<int>(mask[m - 1].size()) != orders[m - 1]) {
                throw std::invalid_argument("fit_par: mask row length must equal the order");
            }
        }
    }
}

// Usable years for period m with a p-lag window: those r with s(r-1)+m-p >= 1.
int first_usable_year(int s, int m, int p) {
    int r = 1;
    while (s * (r - 1) + m - p < 1) ++r;
    return r;
}

struct SubsetFit {
    std::vector<double> coef;  // one per included lag, in lag order
    double rss = 0.0;
};

}  // namespace

int ParModel::parameter_count() const {
    int count = 0;
    for (int m = 1; m <= s; ++m) {
        for (int j = 1; j <= orders[m - 1]; ++j) {
            if (lag_included(m, j)) ++count;
        }
    }
    return count;
}

ParModel fit_par(const SeasonalSeries& series, const std::vector<int>& orders,
                 const std::vector<std::vector<char>>& mask) {
    const int s = series.s();
    const int n = series.n_years();
    validate_orders(s, orders, mask);

    ParModel model;
    model.s = s;
    model.orders = orders;
    model.mask = mask;
    model.mu = periodic_mean(series);
    model.phi.assign(s, {});
    model.sigma2.assign(s, 0.0);

    std::vector<double> dev(series.values().size());
    for (int t = 1; t <= n * s; ++t) {
        dev[t - 1] = series.at_t(t) - model.mu[period_of_t(s, t) - 1];
    }

    for (int m = 1; m <= s; ++m) {
        const int p = orders[m - 1];
        model.phi[m - 1].assign(p, 0.0);

        std::vector<int> lags;
        for (int j = 1; j <= p; ++j) {
            if (model.lag_included(m, j)) lags.push_back(j);
        }
        const int k = static_cast<int>(lags.size());

        const int r0 = first_usable_year(s, m, p);
        const int n_m = n - r0 + 1;
        if (n_m < p + 2) {
            throw TooShortError("fit_par: period " + std::to_string(m) + " has only " +
                                std::to_string(n_m) + " usable years for order " +
                                std::to_string(p));
        }

        Eigen::VectorXd y(n_m);
        Eigen::MatrixXd X(n_m, k);
        for (int r = r0; r <= n; ++r) {
            const int t = s * (r - 1) + m;
            y(r - r0) = dev[t - 1];
            for (int c = 0; c < k; ++c) {
                X(r - r0, c) = dev[t - lags[c] - 1];
            }
        }

        Eigen::VectorXd resid = y;
        if (k > 0) {
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
            if (qr.rank() < k) {
                throw SingularFitError(m, p);
            }
            const Eigen::VectorXd beta = qr.solve(y);
            resid = y - X * beta;
            for (int c = 0; c < k; ++c) {
                model.phi[m - 1][lags[c] - 1] = beta(c);
            }
        }
        model.sigma2[m - 1] = resid.squaredNorm() / n_m;
    }
    return model;
}

std::vector<double> residuals_par(const ParModel& model, const SeasonalSeries& series) {
    const int s = series.s();
    const int n = series.n_years();
    if (model.s != s) {
        throw std::invalid_argument("residuals_par: model and series disagree on s");
    }

    int r0 = 1;
    for (int m = 1; m <= s; ++m) {
        r0 = std::max(r0, first_usable_year(s, m, model.orders[m - 1]));
    }
    if (r0 > n) {
        throw TooShortError("residuals_par: no complete year with full lag windows");
    }

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n - r0 + 1) * s);
    for (int t = s * (r0 - 1) + 1; t <= n * s; ++t) {
        const int m = period_of_t(s, t);
        double pred = 0.0;
        for (int j = 1; j <= model.orders[m - 1]; ++j) {
            const int mj = period_of_t(s, t - j);
            pred += model.phi[m - 1][j - 1] * (series.at_t(t - j) - model.mu[mj - 1]);
        }
        out.push_back(series.at_t(t) - model.mu[m - 1] - pred);
    }
    return out;
}

std::vector<int> select_orders_minimal(const SeasonalSeries& series, int p_max, double alpha) {
    if (p_max < 1) {
        throw std::invalid_argument("select_orders_minimal: p_max must be >= 1");
    }
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("select_orders_minimal: need 0 < alpha < 1");
    }
    const PeriodicPacf pacf = periodic_pacf(series, p_max);
    const double band =
        detail::normal_two_sided_critical(alpha) / std::sqrt(static_cast<double>(series.n_years()));

    std::vector<int> orders(series.s(), 0);
    for (int m = 1; m <= series.s(); ++m) {
        for (int k = p_max; k >= 1; --k) {
            if (std::fabs(pacf.pacf[m - 1][k - 1]) > band) {
                orders[m - 1] = k;
                break;
            }
        }
    }
    return orders;
}

ParModel select_orders_subset(const SeasonalSeries& series, int p_max,
                              InformationCriterion criterion) {
    const int s = series.s();
    const int n = series.n_years();
    if (p_max < 1 || p_max > 14) {
        throw std::invalid_argument("select_orders_subset: need 1 <= p_max <= 14");
    }

    const std::vector<double> mu = periodic_mean(series);
    std::vector<double> dev(series.values().size());
    for (int t = 1; t <= n * s; ++t) {
        dev[t - 1] = series.at_t(t) - mu[period_of_t(s, t) - 1];
    }

    std::vector<std::vector<char>> best_masks(s);
    const int n_masks = 1 << p_max;

    for (int m = 1; m <= s; ++m) {
        const int r0 = first_usable_year(s, m, p_max);
        const int n_m = n - r0 + 1;
        if (n_m < p_max + 2) {
            throw TooShortError("select_orders_subset: period " + std::to_string(m) +
                                " has too few usable years for p_max = " +
                                std::to_string(p_max));
        }

        // Gram matrix of the full design, so each subset is a cheap solve.
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(p_max, p_max);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(p_max);
        double yy = 0.0;
        for (int r = r0; r <= n; ++r) {
            const int t = s * (r - 1) + m;
            const double y = dev[t - 1];
            yy += y * y;
            for (int i = 1; i <= p_max; ++i) {
                g(i - 1) += y * dev[t - i - 1];
                for (int j = i; j <= p_max; ++j) {
                    G(i - 1, j - 1) += dev[t - i - 1] * dev[t - j - 1];
                }
            }
        }
        G = G.selfadjointView<Eigen::Upper>();

        double best_score = std::numeric_limits<double>::infinity();
        int best_k = -1;
        std::vector<char> best_mask;
        bool any_fit = false;

        std::vector<int> lags;
        for (int msk = 0; msk < n_masks; ++msk) {
            lags.clear();
            for (int j = 1; j <= p_max; ++j) {
                if (msk & (1 << (j - 1))) lags.push_back(j);
            }
            const int k = static_cast<int>(lags.size());

            double rss = yy;
            if (k > 0) {
                Eigen::MatrixXd Gs(k, k);
                Eigen::VectorXd gs(k);
                for (int a = 0; a < k; ++a) {
                    gs(a) = g(lags[a] - 1);
                    for (int b = 0; b < k; ++b) Gs(a, b) = G(lags[a] - 1, lags[b] - 1);
                }
                Eigen::LLT<Eigen::MatrixXd> llt(Gs);
                if (llt.info() != Eigen::Success) continue;  // rank-deficient subset
                const Eigen::VectorXd beta = llt.solve(gs);
                rss = yy - beta.dot(gs);
                if (!std::isfinite(rss)) continue;
                rss = std::max(rss, 0.0);
            }

            const double sigma2 = std::max(rss / n_m, 1e-300);
            const double penalty = criterion == InformationCriterion::aic
                                       ? 2.0 * k
                                       : k * std::log(static_cast<double>(n_m));
            const double score = n_m * std::log(sigma2) + penalty;

            std::vector<char> mask_vec(p_max, 0);
            for (int lag : lags) mask_vec[lag - 1] = 1;

            const bool better =
                !any_fit || score < best_score ||
                (score == best_score &&
                 (k < best_k || (k == best_k && mask_vec < best_mask)));
            if (better) {
                any_fit = true;
                best_score = score;
                best_k = k;
                best_mask = std::move(mask_vec);
            }
        }
        if (!any_fit) {
            throw SingularFitError(m, p_max);
        }
        best_masks[m - 1] = std::move(best_mask);
    }

    return fit_par(series, std::vector<int>(s, p_max), best_masks);
}

SeasonalSeries simulate_par(const ParModel& model, int n_years, std::uint64_t seed,
                            int burn_in) {
    const int s = model.s;
    if (s < 1 || n_years < 1 || burn_in < 0) {
        throw std::invalid_argument("simulate_par: bad dimensions");
    }
    const int total = (n_years + burn_in) * s;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> z(total);
    for (int t = 1; t <= total; ++t) {
        const int m = period_of_t(s, t);
        double value = model.mu[m - 1];
        for (int j = 1; j <= model.orders[m - 1]; ++j) {
            const int tj = t - j;
            const double prev_dev =
                tj >= 1 ? z[tj - 1] - model.mu[period_of_t(s, tj) - 1] : 0.0;
            value += model.phi[m - 1][j - 1] * prev_dev;
        }
        value += std::sqrt(model.sigma2[m - 1]) * gauss(rng);
        if (std::fabs(value) > 1e12) {
            throw UnstableError("simulate_par: series diverged at t = " + std::to_string(t));
        }
        z[t - 1] = value;
    }

    std::vector<double> kept(z.end() - static_cast<std::ptrdiff_t>(n_years) * s, z.end());
    return SeasonalSeries::from_flat(std::move(kept), s, "simulated-par");
}

std::vector<double> forecast_par_history(const ParModel& model,
                                         const std::vector<double>& history, int horizon) {
    const int s = model.s;
    if (horizon < 1) {
        throw std::invalid_argument("forecast_par_history: horizon must be >= 1");
    }
    const int len = static_cast<int>(history.size());

    std::vector<double> extended = history;
    std::vector<double> forecasts;
    forecasts.reserve(horizon);
    for (int h = 1; h <= horizon; ++h) {
        const int t = len + h;
        const int m = period_of_t(s, t);
        double value = model.mu[m - 1];
        for (int j = 1; j <= model.orders[m - 1]; ++j) {
            const int tj = t - j;
            if (tj < 1) {
                throw TooShortError("forecast_par: history shorter than the lag window");
            }
            const int mj = period_of_t(s, tj);
            value += model.phi[m - 1][j - 1] * (extended[tj - 1] - model.mu[mj - 1]);
        }
        extended.push_back(value);
        forecasts.push_back(value);
    }
    return forecasts;
}

std::vector<double> forecast_par(const ParModel& model, const SeasonalSeries& series,
                                 int horizon) {
    if (model.s != series.s()) {
        throw std::invalid_argument("forecast_par: model and series disagree on s");
    }
    return forecast_par_history(model, series.values(), horizon);
}

}  // namespace periodiag
