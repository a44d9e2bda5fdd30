#include "periodiag/series.hpp"

#include <cmath>

#include "periodiag/errors.hpp"

namespace periodiag {

LinearTime linear_time_from_t(int s, int t) {
    if (s < 1 || t < 1) {
        throw std::invalid_argument("linear_time_from_t: s and t must be positive");
    }
    const int year = (t - 1) / s + 1;
    const int period = t - s * (year - 1);
    return {t, year, period};
}

LinearTime linear_time_from_ym(int s, int year, int period) {
    if (s < 1 || year < 1 || period < 1 || period > s) {
        throw std::invalid_argument("linear_time_from_ym: need year >= 1, 1 <= period <= s");
    }
    return {s * (year - 1) + period, year, period};
}

SeasonalSeries SeasonalSeries::from_flat(std::vector<double> values, int s,
                                         std::string label, Transform transform) {
    if (s < 1) {
        throw std::invalid_argument("from_flat: s must be >= 1");
    }
    if (values.empty() || values.size() % static_cast<std::size_t>(s) != 0) {
        throw IncompleteYearError("series length " + std::to_string(values.size()) +
                                  " is not a positive multiple of s = " + std::to_string(s));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw BadValueError("non-finite value at position " + std::to_string(i + 1));
        }
    }
    const int n_years = static_cast<int>(values.size()) / s;
    return SeasonalSeries(std::move(values), s, n_years, std::move(label), transform);
}

double SeasonalSeries::at(int year, int period) const {
    if (year < 1 || year > n_years_ || period < 1 || period > s_) {
        throw std::out_of_range("SeasonalSeries::at: (year, period) out of range");
    }
    return values_[static_cast<std::size_t>(s_) * (year - 1) + period - 1];
}

double SeasonalSeries::at_t(int t) const {
    if (t < 1 || t > static_cast<int>(values_.size())) {
        throw std::out_of_range("SeasonalSeries::at_t: t out of range");
    }
    return values_[t - 1];
}

SeasonalSeries SeasonalSeries::head_years(int years) const {
    if (years < 1 || years > n_years_) {
        throw std::out_of_range("SeasonalSeries::head_years: years out of range");
    }
    std::vector<double> head(values_.begin(),
                             values_.begin() + static_cast<std::size_t>(years) * s_);
    return SeasonalSeries(std::move(head), s_, years, label_, transform_);
}

SeasonalSeries log_transform(const SeasonalSeries& series) {
    std::vector<double> logged(series.values().size());
    for (std::size_t i = 0; i < logged.size(); ++i) {
        const double v = series.values()[i];
        if (v <= 0.0) {
            const LinearTime lt = linear_time_from_t(series.s(), static_cast<int>(i) + 1);
            throw NonPositiveError(lt.year, lt.period);
        }
        logged[i] = std::log(v);
    }
    return SeasonalSeries::from_flat(std::move(logged), series.s(), series.label(),
                                     Transform{Transform::Kind::log, 0.0});
}

SeasonalSeries log_plus_c_transform(const SeasonalSeries& series, double c) {
    std::vector<double> logged(series.values().size());
    for (std::size_t i = 0; i < logged.size(); ++i) {
        const double v = series.values()[i] + c;
        if (v <= 0.0) {
            const LinearTime lt = linear_time_from_t(series.s(), static_cast<int>(i) + 1);
            throw NonPositiveError(lt.year, lt.period);
        }
        logged[i] = std::log(v);
    }
    return SeasonalSeries::from_flat(std::move(logged), series.s(), series.label(),
                                     Transform{Transform::Kind::log_plus_c, c});
}

}  // namespace periodiag
