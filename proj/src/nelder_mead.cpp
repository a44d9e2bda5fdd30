#include "periodiag/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace periodiag {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

double simplex_diameter(const std::vector<std::vector<double>>& verts, int best) {
    double diam = 0.0;
    for (const auto& v : verts) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            diam = std::max(diam, std::fabs(v[i] - verts[best][i]));
        }
    }
    return diam;
}

double vertex_scale(const std::vector<double>& v) {
    double scale = 1.0;
    for (double x : v) scale = std::max(scale, std::fabs(x));
    return scale;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0,
                             const std::vector<double>& initial_step, double rel_tol,
                             int max_iter) {
    const int n = static_cast<int>(x0.size());
    if (n == 0) {
        return {x0, f(x0), true, 0};
    }
    if (initial_step.size() != x0.size()) {
        throw std::invalid_argument("nelder_mead: step size dimension mismatch");
    }

    std::vector<std::vector<double>> verts(n + 1, x0);
    for (int i = 0; i < n; ++i) {
        verts[i + 1][i] += initial_step[i] != 0.0 ? initial_step[i] : 1e-3;
    }
    std::vector<double> fv(n + 1);
    for (int i = 0; i <= n; ++i) fv[i] = f(verts[i]);

    NelderMeadResult result;
    int iter = 0;
    std::vector<int> order(n + 1);

    while (iter < max_iter) {
        ++iter;
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int best = order[0];
        const int worst = order[n];
        const int second_worst = order[n - 1];

        if (std::isfinite(fv[best]) &&
            simplex_diameter(verts, best) < rel_tol * vertex_scale(verts[best])) {
            result.converged = true;
            break;
        }

        // Centroid of all but the worst vertex.
        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (int j = 0; j < n; ++j) centroid[j] += verts[i][j];
        }
        for (int j = 0; j < n; ++j) centroid[j] /= n;

        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (int j = 0; j < n; ++j) {
                p[j] = centroid[j] + coef * (centroid[j] - verts[worst][j]);
            }
            return p;
        };

        std::vector<double> reflected = blend(kReflect);
        const double f_reflected = f(reflected);

        if (f_reflected < fv[best]) {
            std::vector<double> expanded = blend(kExpand);
            const double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                verts[worst] = std::move(expanded);
                fv[worst] = f_expanded;
            } else {
                verts[worst] = std::move(reflected);
                fv[worst] = f_reflected;
            }
        } else if (f_reflected < fv[second_worst]) {
            verts[worst] = std::move(reflected);
            fv[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < fv[worst];
            std::vector<double> contracted = blend(outside ? kContract : -kContract);
            const double f_contracted = f(contracted);
            if (f_contracted < std::min(f_reflected, fv[worst])) {
                verts[worst] = std::move(contracted);
                fv[worst] = f_contracted;
            } else {
                // Shrink toward the best vertex.
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (int j = 0; j < n; ++j) {
                        verts[i][j] = verts[best][j] + kShrink * (verts[i][j] - verts[best][j]);
                    }
                    fv[i] = f(verts[i]);
                }
            }
        }
    }

    const auto best_it = std::min_element(fv.begin(), fv.end());
    result.x = verts[static_cast<std::size_t>(best_it - fv.begin())];
    result.fx = *best_it;
    result.iterations = iter;
    return result;
}

}  // namespace periodiag
