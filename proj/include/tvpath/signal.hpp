#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tvpath {

// Piecewise constant datum on an interval: segment widths L_i and values f_i.
// Canonical form: adjacent segments always carry distinct values (equal
// neighbors are merged at construction, widths summed).
class Signal {
public:
    Signal(std::vector<double> lengths, std::vector<double> values, double x0 = 0.0);

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& lengths() const { return lengths_; }
    const std::vector<double>& values() const { return values_; }
    double length(std::size_t i) const { return lengths_[i]; }
    double value(std::size_t i) const { return values_[i]; }
    double x0() const { return x0_; }

    double min_value() const { return fmin_; }
    double max_value() const { return fmax_; }
    double total_length() const { return total_length_; }

    // x_0 < x_1 < ... < x_k
    std::vector<double> breakpoints() const;

private:
    std::vector<double> lengths_;
    std::vector<double> values_;
    double x0_;
    double fmin_;
    double fmax_;
    double total_length_;
};

Signal make_signal(std::span<const double> lengths, std::span<const double> values,
                   double x0 = 0.0);

// Run-length encode uniformly sampled staircase data into a canonical Signal.
Signal signal_from_samples(std::span<const double> samples, double dx, double x0 = 0.0);

struct SolutionVector {
    std::vector<double> values;
    double lambda = 0.0;
    double p = 2.0;
};

struct SolverParams {
    double p = 2.0;
    double tol_value = 1e-10;   // absolute tolerance on solution entries
    double tol_lambda = 1e-10;  // relative tolerance on event locations
    double lambda_min = 0.0;    // optional clamps for reporting ranges
    double lambda_max = 0.0;    // 0 = unset
};

// Ordered vertex list tracing u(x) = sum_i u_i chi_(x_{i-1}, x_i); 2k points.
std::vector<std::pair<double, double>>
staircase_points(const Signal& signal, std::span<const double> u);

}  // namespace tvpath
