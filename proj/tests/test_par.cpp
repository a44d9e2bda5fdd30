#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "periodiag/errors.hpp"
#include "periodiag/par.hpp"
#include "periodiag/periodic_stats.hpp"
#include "periodiag/series.hpp"

using namespace periodiag;

namespace {

ParModel make_par1(const std::vector<double>& phi1, const std::vector<double>& mu,
                   const std::vector<double>& sigma2) {
    ParModel model;
    model.s = static_cast<int>(phi1.size());
    model.orders.assign(model.s, 1);
    model.mu = mu;
    model.sigma2 = sigma2;
    for (double p : phi1) model.phi.push_back({p});
    return model;
}

// Noiseless series whose per-period deviations follow dev_t = phi * dev_{t-1}
// within each year and whose periodic sample means are exactly the given
// level. Years alternate (1, -1, 2, -2, ...) so every per-period mean is 0.
SeasonalSeries exact_ar_series(int s, int n_years, double phi, double level) {
    std::vector<double> values(n_years * s);
    for (int r = 0; r < n_years; ++r) {
        const double x = (r % 2 == 0 ? 1.0 : -1.0) * (1.0 + r / 2);
        double dev = x;
        for (int m = 0; m < s; ++m) {
            values[r * s + m] = level + dev;
            dev *= phi;
        }
    }
    return SeasonalSeries::from_flat(values, s);
}

}  // namespace

TEST_CASE("order zero fit keeps means and per-period variances") {
    const SeasonalSeries series =
        SeasonalSeries::from_flat(oracles::normal_panel(40 * 6, 12, 2.0), 6);
    const ParModel model = fit_par(series, std::vector<int>(6, 0));
    const std::vector<double> mu = periodic_mean(series);
    for (int m = 1; m <= 6; ++m) {
        CHECK(model.mu[m - 1] == doctest::Approx(mu[m - 1]).epsilon(1e-14));
        double ss = 0.0;
        for (int r = 1; r <= 40; ++r) {
            const double d = series.at(r, m) - mu[m - 1];
            ss += d * d;
        }
        CHECK(model.sigma2[m - 1] == doctest::Approx(ss / 40).epsilon(1e-12));
        CHECK(model.orders[m - 1] == 0);
    }
    CHECK(model.parameter_count() == 0);
}

TEST_CASE("exact linear dependence is recovered to 1e-10") {
    const SeasonalSeries series = exact_ar_series(6, 12, 0.5, 3.0);
    std::vector<int> orders(6, 1);
    orders[0] = 0;  // period 1 starts each year's pattern fresh
    const ParModel model = fit_par(series, orders);
    for (int m = 2; m <= 6; ++m) {
        CHECK(model.phi[m - 1][0] == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(model.sigma2[m - 1] <= 1e-20);
    }
}

TEST_CASE("PAR(1) coefficients are recovered within OLS standard errors") {
    std::mt19937_64 seed_rng(2718);
    std::uniform_real_distribution<double> phi_draw(-0.8, 0.8);
    const int s = 6, n = 1000, reps = 50;
    int covered = 0, total = 0;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<double> phi1(s);
        for (double& p : phi1) p = phi_draw(seed_rng);
        const ParModel truth =
            make_par1(phi1, std::vector<double>(s, 0.0), std::vector<double>(s, 1.0));
        const SeasonalSeries series = simulate_par(truth, n, 31000 + rep);
        const ParModel fit = fit_par(series, std::vector<int>(s, 1));

        // OLS standard error recomputed directly from the design.
        const std::vector<double> mu = periodic_mean(series);
        for (int m = 1; m <= s; ++m) {
            double sxx = 0.0;
            const int r0 = (m == 1 ? 2 : 1);
            for (int r = r0; r <= n; ++r) {
                const int t = s * (r - 1) + m;
                const int mp = (t - 2) % s + 1;
                const double x = series.at_t(t - 1) - mu[mp - 1];
                sxx += x * x;
            }
            const double se = std::sqrt(fit.sigma2[m - 1] / sxx);
            ++total;
            if (std::fabs(fit.phi[m - 1][0] - phi1[m - 1]) < 3.0 * se) ++covered;
        }
    }
    CHECK(static_cast<double>(covered) / total >= 0.99);
}

TEST_CASE("residuals are orthogonal to the included regressors") {
    const SeasonalSeries series =
        SeasonalSeries::from_flat(oracles::normal_panel(80 * 4, 5, 1.5), 4);
    const std::vector<int> orders = {2, 1, 3, 2};
    const ParModel model = fit_par(series, orders);
    const std::vector<double> mu = model.mu;
    const int s = 4, n = 80;
    for (int m = 1; m <= s; ++m) {
        const int p = orders[m - 1];
        if (p == 0) continue;
        int r0 = 1;
        while (s * (r0 - 1) + m - p < 1) ++r0;
        for (int j = 1; j <= p; ++j) {
            double dot = 0.0, scale = 0.0;
            for (int r = r0; r <= n; ++r) {
                const int t = s * (r - 1) + m;
                double pred = 0.0;
                for (int jj = 1; jj <= p; ++jj) {
                    const int mp = (t - jj - 1) % s + 1;
                    pred += model.phi[m - 1][jj - 1] * (series.at_t(t - jj) - mu[mp - 1]);
                }
                const double resid = series.at_t(t) - mu[m - 1] - pred;
                const int mj = (t - j - 1) % s + 1;
                const double x = series.at_t(t - j) - mu[mj - 1];
                dot += resid * x;
                scale += std::fabs(resid * x);
            }
            CHECK(std::fabs(dot) <= 1e-8 * std::max(scale, 1.0));
        }
    }
}

TEST_CASE("residuals_par returns an end-anchored contiguous block") {
    const SeasonalSeries series =
        SeasonalSeries::from_flat(oracles::normal_panel(30 * 4, 8), 4);
    const ParModel model = fit_par(series, {2, 1, 0, 1});
    const std::vector<double> resid = residuals_par(model, series);
    // order 2 at period 1 needs the previous year, so the first year is dropped
    CHECK(resid.size() == 29u * 4u);
}

TEST_CASE("minimal order selection on white noise stays near zero") {
    const int s = 4, n = 200, p_max = 4, reps = 100;
    int nonzero = 0, total = 0;
    for (int rep = 0; rep < reps; ++rep) {
        const SeasonalSeries series =
            SeasonalSeries::from_flat(oracles::normal_panel(n * s, 40000 + rep), s);
        const std::vector<int> orders = select_orders_minimal(series, p_max, 0.05);
        for (int m = 0; m < s; ++m) {
            ++total;
            if (orders[m] != 0) ++nonzero;
        }
    }
    // false selection rate per period is at most alpha * p_max
    const double rate = static_cast<double>(nonzero) / total;
    CHECK(rate < 0.05 * p_max + 0.05);
}

TEST_CASE("minimal order selection recovers PAR(1)") {
    const int s = 12, n = 500, reps = 200;
    std::mt19937_64 seed_rng(1234);
    std::uniform_real_distribution<double> mag(0.3, 0.8);
    int exact = 0, total = 0;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<double> phi1(s);
        for (int m = 0; m < s; ++m) {
            phi1[m] = (seed_rng() % 2 == 0 ? 1.0 : -1.0) * mag(seed_rng);
        }
        const ParModel truth =
            make_par1(phi1, std::vector<double>(s, 0.0), std::vector<double>(s, 1.0));
        const SeasonalSeries series = simulate_par(truth, n, 52000 + rep);
        const std::vector<int> orders = select_orders_minimal(series, 3, 0.01);
        for (int m = 0; m < s; ++m) {
            ++total;
            if (orders[m] == 1) ++exact;
        }
    }
    CHECK(static_cast<double>(exact) / total >= 0.95);
}

TEST_CASE("minimal order selection finds a mixed-order model") {
    // Period 3 depends on lag 2 as well; all other periods are PAR(1).
    const int s = 6, n = 1000, reps = 40;
    ParModel truth;
    truth.s = s;
    truth.orders = {1, 1, 2, 1, 1, 1};
    truth.mu.assign(s, 0.0);
    truth.sigma2.assign(s, 1.0);
    truth.phi = {{0.6}, {-0.6}, {0.5, 0.4}, {0.6}, {-0.6}, {0.6}};

    int matches = 0, total = 0;
    for (int rep = 0; rep < reps; ++rep) {
        const SeasonalSeries series = simulate_par(truth, n, 61000 + rep);
        const std::vector<int> orders = select_orders_minimal(series, 4, 0.01);
        for (int m = 0; m < s; ++m) {
            ++total;
            if (orders[m] == truth.orders[m]) ++matches;
        }
    }
    CHECK(static_cast<double>(matches) / total >= 0.90);
}

TEST_CASE("subset search on white noise prefers the empty mask under BIC") {
    const int s = 4, n = 200, p_max = 3, reps = 40;
    int empty = 0, total = 0;
    for (int rep = 0; rep < reps; ++rep) {
        const SeasonalSeries series =
            SeasonalSeries::from_flat(oracles::normal_panel(n * s, 73000 + rep), s);
        const ParModel model = select_orders_subset(series, p_max, InformationCriterion::bic);
        for (int m = 0; m < s; ++m) {
            ++total;
            bool any = false;
            for (char included : model.mask[m]) any = any || included != 0;
            if (!any) ++empty;
        }
    }
    CHECK(static_cast<double>(empty) / total >= 0.90);
}

TEST_CASE("subset search isolates a pure lag-2 dependence") {
    // Period 1 depends only on lag 2; other periods are white noise.
    const int s = 4, n = 800;
    ParModel truth;
    truth.s = s;
    truth.orders = {2, 0, 0, 0};
    truth.mu.assign(s, 0.0);
    truth.sigma2.assign(s, 1.0);
    truth.phi = {{0.0, 0.6}, {}, {}, {}};

    int hits = 0;
    const int reps = 20;
    for (int rep = 0; rep < reps; ++rep) {
        const SeasonalSeries series = simulate_par(truth, n, 81000 + rep);
        const ParModel model = select_orders_subset(series, 2, InformationCriterion::bic);
        if (model.mask[0] == std::vector<char>{0, 1}) ++hits;
    }
    CHECK(hits >= 18);
}

TEST_CASE("subset model equals a masked refit") {
    const SeasonalSeries series =
        SeasonalSeries::from_flat(oracles::normal_panel(60 * 4, 91), 4);
    const int p_max = 3;
    const ParModel model = select_orders_subset(series, p_max, InformationCriterion::aic);
    const ParModel refit = fit_par(series, std::vector<int>(4, p_max), model.mask);
    for (int m = 0; m < 4; ++m) {
        CHECK(model.sigma2[m] == doctest::Approx(refit.sigma2[m]).epsilon(1e-12));
        for (int j = 0; j < p_max; ++j) {
            CHECK(model.phi[m][j] == doctest::Approx(refit.phi[m][j]).epsilon(1e-10));
        }
    }
    CHECK(model.parameter_count() == refit.parameter_count());
}

TEST_CASE("full-mask subset fit reproduces fit_par exactly") {
    const SeasonalSeries series =
        SeasonalSeries::from_flat(oracles::normal_panel(50 * 4, 17), 4);
    const int p_max = 2;
    const ParModel direct = fit_par(series, std::vector<int>(4, p_max),
                                    std::vector<std::vector<char>>(4, {1, 1}));
    const ParModel plain = fit_par(series, std::vector<int>(4, p_max));
    for (int m = 0; m < 4; ++m) {
        CHECK(direct.sigma2[m] == doctest::Approx(plain.sigma2[m]).epsilon(1e-14));
        for (int j = 0; j < p_max; ++j) {
            CHECK(direct.phi[m][j] == doctest::Approx(plain.phi[m][j]).epsilon(1e-14));
        }
    }
}

TEST_CASE("simulation is deterministic and degenerates cleanly") {
    const ParModel constant = make_par1({0.0, 0.0, 0.0}, {5.0, 5.0, 5.0}, {0.0, 0.0, 0.0});
    const SeasonalSeries fixed = simulate_par(constant, 4, 99);
    for (double v : fixed.values()) CHECK(v == 5.0);

    ParModel model = make_par1({0.5, -0.4, 0.6}, {1.0, 2.0, 3.0}, {1.0, 0.5, 2.0});
    const SeasonalSeries a = simulate_par(model, 20, 4242);
    const SeasonalSeries b = simulate_par(model, 20, 4242);
    CHECK(a.values() == b.values());
    const SeasonalSeries c = simulate_par(model, 20, 4243);
    CHECK(a.values() != c.values());
}

TEST_CASE("simulated lag-1 correlations match the generating model") {
    const int s = 12, n = 2000;
    const std::vector<double> phi1(s, 0.6);
    const ParModel model =
        make_par1(phi1, std::vector<double>(s, 0.0), std::vector<double>(s, 1.0));
    const SeasonalSeries series = simulate_par(model, n, 777);
    const PeriodicAcf acf = periodic_autocovariance(series, 1);
    // stationary variance is identical across periods, so rho_m(1) = 0.6
    for (int m = 0; m < s; ++m) {
        const double se = (1.0 - 0.36) / std::sqrt(static_cast<double>(n));
        CHECK(std::fabs(acf.rho[m][1] - 0.6) < 3.0 * se + 1e-3);
    }
}

TEST_CASE("explosive models are rejected") {
    const ParModel model = make_par1({1.5, 1.5, 1.5, 1.5}, {0, 0, 0, 0}, {1, 1, 1, 1});
    CHECK_THROWS_AS(simulate_par(model, 100, 3), UnstableError);
}

TEST_CASE("forecast reverts to the mean for order zero") {
    ParModel model;
    model.s = 3;
    model.orders = {0, 0, 0};
    model.mu = {1.0, 2.0, 3.0};
    model.sigma2 = {1.0, 1.0, 1.0};
    model.phi = {{}, {}, {}};
    const SeasonalSeries series = SeasonalSeries::from_flat({5, 5, 5, 5, 5, 5}, 3);
    const std::vector<double> fc = forecast_par(model, series, 4);
    CHECK(fc[0] == 1.0);
    CHECK(fc[1] == 2.0);
    CHECK(fc[2] == 3.0);
    CHECK(fc[3] == 1.0);
}

TEST_CASE("noiseless AR data forecasts its own next value") {
    const SeasonalSeries series = exact_ar_series(4, 10, 0.5, 2.0);
    std::vector<int> orders(4, 1);
    orders[0] = 0;
    const ParModel model = fit_par(series, orders);
    // forecast within a year: history ends just before period 2 of year 10
    const std::vector<double>& all = series.values();
    const std::vector<double> history(all.begin(), all.end() - 3);
    const std::vector<double> fc = forecast_par_history(model, history, 1);
    CHECK(fc[0] == doctest::Approx(all[all.size() - 3]).epsilon(1e-10));
}

TEST_CASE("one-step forecast MSE approaches the innovation variance") {
    const int s = 12, n_fit = 2000, holdout = 200;
    std::vector<double> phi1(s), sigma2(s);
    for (int m = 0; m < s; ++m) {
        phi1[m] = (m % 2 == 0 ? 0.55 : -0.45);
        sigma2[m] = 0.5 + 0.1 * m;
    }
    const ParModel truth = make_par1(phi1, std::vector<double>(s, 10.0), sigma2);
    const SeasonalSeries series = simulate_par(truth, n_fit + holdout, 135);
    const SeasonalSeries train = series.head_years(n_fit);
    const ParModel fit = fit_par(train, std::vector<int>(s, 1));

    std::vector<double> sq(s, 0.0);
    const std::vector<double>& all = series.values();
    for (int t0 = n_fit * s; t0 < (n_fit + holdout) * s; ++t0) {
        const std::vector<double> history(all.begin(), all.begin() + t0);
        const double fc = forecast_par_history(fit, history, 1)[0];
        const int m = t0 % s;  // 0-based period of the forecast target
        const double e = fc - all[t0];
        sq[m] += e * e;
    }
    for (int m = 0; m < s; ++m) {
        const double mse = sq[m] / holdout;
        CHECK(std::fabs(mse - sigma2[m]) < 0.15 * sigma2[m]);
    }
}

TEST_CASE("estimation error shrinks like one over root N") {
    const int s = 6, reps = 20;
    std::vector<double> phi1 = {0.6, -0.5, 0.4, 0.7, -0.3, 0.5};
    const ParModel truth =
        make_par1(phi1, std::vector<double>(s, 0.0), std::vector<double>(s, 1.0));

    auto rms_error = [&](int n, std::uint64_t seed_base) {
        double ss = 0.0;
        int count = 0;
        for (int rep = 0; rep < reps; ++rep) {
            const SeasonalSeries series = simulate_par(truth, n, seed_base + rep);
            const ParModel fit = fit_par(series, std::vector<int>(s, 1));
            for (int m = 0; m < s; ++m) {
                const double e = fit.phi[m][0] - phi1[m];
                ss += e * e;
                ++count;
            }
        }
        return std::sqrt(ss / count);
    };

    const double err_small = rms_error(200, 91000);
    const double err_large = rms_error(800, 92000);
    const double ratio = err_large / err_small;
    CHECK(ratio > 0.3);
    CHECK(ratio < 0.8);
}

TEST_CASE("error guards") {
    const SeasonalSeries tiny = SeasonalSeries::from_flat(oracles::normal_panel(4 * 3, 2), 3);
    CHECK_THROWS_AS(fit_par(tiny, {3, 3, 3}), TooShortError);
    CHECK_THROWS_AS(fit_par(tiny, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(select_orders_subset(tiny, 15, InformationCriterion::bic),
                    std::invalid_argument);

    ParModel model = make_par1({0.5, 0.5, 0.5}, {0, 0, 0}, {1, 1, 1});
    CHECK_THROWS_AS(forecast_par_history(model, {}, 1), TooShortError);
}
