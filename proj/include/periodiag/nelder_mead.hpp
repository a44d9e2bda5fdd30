#pragma once

#include <functional>
#include <vector>

namespace periodiag {

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Derivative-free simplex minimization. The objective may return +infinity
/// to mark infeasible points. Convergence is declared when the simplex
/// diameter shrinks below rel_tol relative to the best vertex.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0,
                             const std::vector<double>& initial_step, double rel_tol = 1e-8,
                             int max_iter = 2000);

}  // namespace periodiag
