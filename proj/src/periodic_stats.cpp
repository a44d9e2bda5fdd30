#include "periodiag/periodic_stats.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "periodiag/errors.hpp"

namespace periodiag {

namespace {

// Wraps a (possibly non-positive) period offset into 1..s.
int wrap_period(int s, int m) {
    int w = (m - 1) % s;
    if (w < 0) w += s;
    return w + 1;
}

}  // namespace

std::vector<double> periodic_mean(const SeasonalSeries& series) {
    const int s = series.s();
    const int n = series.n_years();
    std::vector<double> mu(s, 0.0);
    for (int m = 1; m <= s; ++m) {
        double sum = 0.0;
        for (int r = 1; r <= n; ++r) sum += series.at(r, m);
        mu[m - 1] = sum / n;
    }
    return mu;
}

PeriodicAcf periodic_autocovariance(const SeasonalSeries& series, int max_lag) {
    const int s = series.s();
    const int n = series.n_years();
    const int total = n * s;
    if (max_lag < 0 || max_lag >= total) {
        throw TooShortError("periodic_autocovariance: need 0 <= max_lag < N*s");
    }

    PeriodicAcf acf;
    acf.s = s;
    acf.max_lag = max_lag;
    acf.mu = periodic_mean(series);
    acf.gamma.assign(s, std::vector<double>(max_lag + 1, 0.0));
    acf.rho.assign(s, std::vector<double>(max_lag + 1, 0.0));
    acf.n_pairs.assign(s, std::vector<int>(max_lag + 1, 0));

    // Deviations in linear-time order.
    std::vector<double> dev(total);
    for (int t = 1; t <= total; ++t) {
        dev[t - 1] = series.at_t(t) - acf.mu[period_of_t(s, t) - 1];
    }

    // Variance screen: a constant period has no defined correlations.
    for (int m = 1; m <= s; ++m) {
        double ss = 0.0;
        for (int r = 1; r <= n; ++r) {
            const double d = dev[s * (r - 1) + m - 1];
            ss += d * d;
        }
        const double scale = 1.0 + std::fabs(acf.mu[m - 1]);
        if (ss <= n * 1e-28 * scale * scale) {
            throw DegenerateVarianceError(m);
        }
    }

    for (int m = 1; m <= s; ++m) {
        for (int lag = 0; lag <= max_lag; ++lag) {
            double sum_xy = 0.0, sum_xx = 0.0, sum_yy = 0.0;
            int count = 0;
            for (int r = 1; r <= n; ++r) {
                const int t = s * (r - 1) + m;
                const int t_lag = t - lag;
                if (t_lag < 1) continue;
                const double x = dev[t - 1];
                const double y = dev[t_lag - 1];
                sum_xy += x * y;
                sum_xx += x * x;
                sum_yy += y * y;
                ++count;
            }
            acf.n_pairs[m - 1][lag] = count;
            if (count == 0) continue;  // lag reaches before the sample for every year
            acf.gamma[m - 1][lag] = sum_xy / count;
            const double denom = std::sqrt(sum_xx * sum_yy);
            acf.rho[m - 1][lag] = denom > 0.0 ? sum_xy / denom : 0.0;
        }
    }
    return acf;
}

PeriodicPacf periodic_pacf(const SeasonalSeries& series, int max_order) {
    const int s = series.s();
    const int n = series.n_years();
    if (max_order < 1) {
        throw std::invalid_argument("periodic_pacf: max_order must be >= 1");
    }
    if (max_order * s >= n * s - 1) {
        throw TooShortError("periodic_pacf: max_order too large for series length");
    }

    const PeriodicAcf acf = periodic_autocovariance(series, max_order);

    PeriodicPacf out;
    out.s = s;
    out.max_order = max_order;
    out.band = 1.96 / std::sqrt(static_cast<double>(n));
    out.pacf.assign(s, std::vector<double>(max_order, 0.0));

    // Second moments looked up from the periodic autocovariance table:
    // cov(i, j) = Cov(z_{t-i}, z_{t-j}) for 0 <= i <= j, where t has period m.
    for (int m = 1; m <= s; ++m) {
        auto cov = [&](int i, int j) {
            if (i > j) std::swap(i, j);
            const int pm = wrap_period(s, m - i);
            return acf.gamma[pm - 1][j - i];
        };

        for (int k = 1; k <= max_order; ++k) {
            double var_f, var_b, cov_fb;
            if (k == 1) {
                var_f = cov(0, 0);
                var_b = cov(1, 1);
                cov_fb = cov(0, 1);
            } else {
                // Project z_t and z_{t-k} on the intervening z_{t-1..t-k+1},
                // then correlate the projection residuals.
                const int d = k - 1;
                Eigen::MatrixXd G(d, d);
                Eigen::VectorXd gy(d), gx(d);
                for (int i = 1; i <= d; ++i) {
                    for (int j = 1; j <= d; ++j) G(i - 1, j - 1) = cov(i, j);
                    gy(i - 1) = cov(0, i);
                    gx(i - 1) = cov(i, k);
                }
                Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(G);
                if (qr.rank() < d) {
                    throw SingularFitError(m, k);
                }
                const Eigen::VectorXd a = qr.solve(gy);
                const Eigen::VectorXd c = qr.solve(gx);
                var_f = cov(0, 0) - gy.dot(a);
                var_b = cov(k, k) - gx.dot(c);
                cov_fb = cov(0, k) - gx.dot(a);
            }
            if (!(var_f > 0.0) || !(var_b > 0.0)) {
                throw SingularFitError(m, k);
            }
            out.pacf[m - 1][k - 1] = cov_fb / std::sqrt(var_f * var_b);
        }
    }
    return out;
}

}  // namespace periodiag
