#pragma once

#include <string>
#include <vector>

namespace periodiag {

/// Record of the value transform applied to a series.
struct Transform {
    enum class Kind { none, log, log_plus_c };

    Kind kind = Kind::none;
    double c = 0.0;  // shift used by log_plus_c

    bool operator==(const Transform&) const = default;
};

/// (t, year, period) triple under the linear-time convention t = s*(r-1) + m,
/// all indices 1-based.
struct LinearTime {
    int t;
    int year;
    int period;
};

LinearTime linear_time_from_t(int s, int t);
LinearTime linear_time_from_ym(int s, int year, int period);

/// Period (1..s) of linear-time index t.
inline int period_of_t(int s, int t) { return (t - 1) % s + 1; }

/// A panel of seasonal observations covering complete years only.
/// Values are stored in linear-time order and the object is immutable
/// after construction, so it is safe to share across threads.
class SeasonalSeries {
public:
    /// Builds a series from a t-ordered value sequence.
    /// Throws IncompleteYearError if the length is not a positive multiple of s,
    /// BadValueError on non-finite entries.
    static SeasonalSeries from_flat(std::vector<double> values, int s,
                                    std::string label = "",
                                    Transform transform = {});

    int s() const noexcept { return s_; }
    int n_years() const noexcept { return n_years_; }
    const std::string& label() const noexcept { return label_; }
    const Transform& transform() const noexcept { return transform_; }

    /// Observation at (year r, period m), both 1-based.
    double at(int year, int period) const;

    /// Observation at linear-time index t, 1-based.
    double at_t(int t) const;

    /// Full value sequence in linear-time order.
    const std::vector<double>& values() const noexcept { return values_; }

    /// First `years` complete years as a new series (same transform/label).
    SeasonalSeries head_years(int years) const;

private:
    SeasonalSeries(std::vector<double> values, int s, int n_years,
                   std::string label, Transform transform)
        : values_(std::move(values)),
          s_(s),
          n_years_(n_years),
          label_(std::move(label)),
          transform_(transform) {}

    std::vector<double> values_;
    int s_;
    int n_years_;
    std::string label_;
    Transform transform_;
};

/// Element-wise natural log. Throws NonPositiveError naming the first
/// offending (year, period) if any value is <= 0.
SeasonalSeries log_transform(const SeasonalSeries& series);

/// Natural log of (value + c), for series with zeros that need a shift
/// before logging. The shift c is caller-supplied.
SeasonalSeries log_plus_c_transform(const SeasonalSeries& series, double c);

}  // namespace periodiag
