#include "tvpath/signal.hpp"

#include <algorithm>
#include <cmath>

namespace tvpath {

Signal::Signal(std::vector<double> lengths, std::vector<double> values, double x0)
    : x0_(x0) {
    if (lengths.empty() || values.empty())
        throw std::invalid_argument("Signal: empty input");
    if (lengths.size() != values.size())
        throw std::invalid_argument("Signal: lengths/values size mismatch");
    for (double L : lengths) {
        if (!(L > 0.0) || !std::isfinite(L))
            throw std::invalid_argument("Signal: nonpositive or non-finite length");
    }
    for (double f : values) {
        if (!std::isfinite(f))
            throw std::invalid_argument("Signal: non-finite value");
    }
    if (!std::isfinite(x0))
        throw std::invalid_argument("Signal: non-finite x0");

    lengths_.reserve(lengths.size());
    values_.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        // Exact equality on purpose: near-equal segments are legitimately distinct.
        if (!values_.empty() && values[i] == values_.back()) {
            lengths_.back() += lengths[i];
        } else {
            lengths_.push_back(lengths[i]);
            values_.push_back(values[i]);
        }
    }

    auto [mn, mx] = std::minmax_element(values_.begin(), values_.end());
    fmin_ = *mn;
    fmax_ = *mx;
    total_length_ = 0.0;
    for (double L : lengths_) total_length_ += L;
}

std::vector<double> Signal::breakpoints() const {
    std::vector<double> x(lengths_.size() + 1);
    x[0] = x0_;
    for (std::size_t i = 0; i < lengths_.size(); ++i) x[i + 1] = x[i] + lengths_[i];
    return x;
}

Signal make_signal(std::span<const double> lengths, std::span<const double> values,
                   double x0) {
    return Signal(std::vector<double>(lengths.begin(), lengths.end()),
                  std::vector<double>(values.begin(), values.end()), x0);
}

Signal signal_from_samples(std::span<const double> samples, double dx, double x0) {
    if (samples.empty())
        throw std::invalid_argument("signal_from_samples: empty samples");
    if (!(dx > 0.0) || !std::isfinite(dx))
        throw std::invalid_argument("signal_from_samples: nonpositive dx");

    std::vector<double> lengths;
    std::vector<double> values;
    for (double s : samples) {
        if (!values.empty() && s == values.back()) {
            lengths.back() += dx;
        } else {
            lengths.push_back(dx);
            values.push_back(s);
        }
    }
    return Signal(std::move(lengths), std::move(values), x0);
}

std::vector<std::pair<double, double>>
staircase_points(const Signal& signal, std::span<const double> u) {
    if (u.size() != signal.size())
        throw std::invalid_argument("staircase_points: misaligned solution vector");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(2 * signal.size());
    double x = signal.x0();
    for (std::size_t i = 0; i < signal.size(); ++i) {
        pts.emplace_back(x, u[i]);
        x += signal.length(i);
        pts.emplace_back(x, u[i]);
    }
    return pts;
}

}  // namespace tvpath
