#include "tvpath/energy.hpp"

#include <cmath>

namespace tvpath {

double pow_abs(double x, double p) {
    if (x == 0.0) return 0.0;
    return std::pow(std::abs(x), p);
}

double signed_pow(double x, double e) {
    if (x == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(x), e), x);
}

double total_variation(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("total_variation: empty vector");
    double tv = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) tv += std::abs(v[i] - v[i - 1]);
    return tv;
}

EnergyBreakdown energy_G(const Signal& signal, std::span<const double> v, double p,
                         double lambda) {
    if (v.size() != signal.size())
        throw std::invalid_argument("energy_G: misaligned solution vector");
    if (!(lambda > 0.0)) throw std::invalid_argument("energy_G: lambda must be positive");
    if (!(p >= 1.0)) throw std::invalid_argument("energy_G: p must be >= 1");

    EnergyBreakdown e;
    e.tv = total_variation(v);
    for (std::size_t i = 0; i < v.size(); ++i)
        e.fidelity += signal.length(i) * pow_abs(signal.value(i) - v[i], p);
    e.total = e.tv + lambda * e.fidelity;
    return e;
}

namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

OptimalityReport check_optimality(const Signal& signal, std::span<const double> v,
                                  double p, double lambda, double tol) {
    if (!(p > 1.0))
        throw std::invalid_argument("check_optimality: requires p > 1");
    if (v.size() != signal.size())
        throw std::invalid_argument("check_optimality: misaligned solution vector");
    if (!(tol > 0.0))
        throw std::invalid_argument("check_optimality: tol must be positive");

    const std::size_t k = v.size();
    OptimalityReport report;
    report.optimal = true;

    std::size_t lo = 0;
    while (lo < k) {
        std::size_t hi = lo;
        while (hi + 1 < k && std::abs(v[hi + 1] - v[hi]) <= tol) ++hi;

        const int s_left = (lo == 0) ? 0 : sign_of(v[lo] - v[lo - 1]);
        const int s_right = (hi == k - 1) ? 0 : sign_of(v[hi + 1] - v[hi]);

        // Zero in the subdifferential over the block requires the running
        // junction subgradients t_i = s_left + sum of member gradients up to i
        // to stay in [-1, 1] inside the block and to land on s_right at its
        // right edge.
        double t = s_left;
        double violation = 0.0;
        for (std::size_t i = lo; i <= hi; ++i) {
            t += p * lambda * signal.length(i) * signed_pow(v[i] - signal.value(i), p - 1.0);
            if (i < hi) violation = std::max(violation, std::abs(t) - 1.0);
        }
        violation = std::max(violation, std::abs(t - static_cast<double>(s_right)));
        if (violation > report.worst_violation) {
            report.worst_violation = violation;
            report.worst_lo = lo;
            report.worst_hi = hi;
        }
        if (violation > tol) report.optimal = false;

        lo = hi + 1;
    }
    return report;
}

}  // namespace tvpath
