#pragma once

#include <stdexcept>
#include <string>

namespace periodiag {

/// Base class for all library errors. `code()` is a stable machine-readable
/// tag; the CLI prints failures as "error: <code>: <message>".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Input length is not a whole number of years.
struct IncompleteYearError : Error {
    explicit IncompleteYearError(const std::string& message)
        : Error("incomplete_year", message) {}
};

/// Non-finite observation in the input.
struct BadValueError : Error {
    explicit BadValueError(const std::string& message) : Error("bad_value", message) {}
};

/// Log transform applied to a non-positive value; carries the offending cell.
struct NonPositiveError : Error {
    NonPositiveError(int year_, int period_)
        : Error("non_positive",
                "log transform requires positive values; found value <= 0 at year " +
                    std::to_string(year_) + ", period " + std::to_string(period_)),
          year(year_),
          period(period_) {}

    int year;
    int period;
};

/// Text that failed to parse as a number; carries the 1-based line number.
struct ParseError : Error {
    ParseError(long line_, const std::string& message)
        : Error("parse_error", "line " + std::to_string(line_) + ": " + message),
          line(line_) {}

    long line;
};

/// A period whose sample variance is zero, so correlations are undefined.
struct DegenerateVarianceError : Error {
    explicit DegenerateVarianceError(int period_)
        : Error("degenerate_variance",
                "zero variance in period " + std::to_string(period_)),
          period(period_) {}

    int period;
};

/// Singular normal equations in a per-period fit.
struct SingularFitError : Error {
    SingularFitError(int period_, int order_)
        : Error("singular_fit", "singular fit for period " + std::to_string(period_) +
                                    " at order " + std::to_string(order_)),
          period(period_),
          order(order_) {}

    int period;
    int order;
};

/// Not enough data for the requested operation.
struct TooShortError : Error {
    explicit TooShortError(const std::string& message) : Error("too_short", message) {}
};

/// Simulated recursion diverged.
struct UnstableError : Error {
    explicit UnstableError(const std::string& message) : Error("unstable", message) {}
};

/// Optimizer failed to converge within its iteration budget.
struct NoConvergenceError : Error {
    explicit NoConvergenceError(const std::string& message)
        : Error("no_convergence", message) {}
};

/// Forecast evaluations whose actuals do not line up.
struct MisalignedEvalsError : Error {
    explicit MisalignedEvalsError(const std::string& message)
        : Error("misaligned_evals", message) {}
};

/// Portmanteau test asked for fewer lags than fitted parameters.
struct InsufficientLagsError : Error {
    explicit InsufficientLagsError(const std::string& message)
        : Error("insufficient_lags", message) {}
};

}  // namespace periodiag
