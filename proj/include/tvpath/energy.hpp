#pragma once

#include <cstddef>
#include <span>

#include "tvpath/signal.hpp"

namespace tvpath {

// G(v) = sum_{i>=2} |v_i - v_{i-1}| + lambda * sum_i L_i |f_i - v_i|^p
struct EnergyBreakdown {
    double tv = 0.0;        // total-variation term
    double fidelity = 0.0;  // sum L_i |f_i - v_i|^p, before the lambda factor
    double total = 0.0;     // tv + lambda * fidelity
};

// |x|^p, well defined at x = 0 for any p >= 1.
double pow_abs(double x, double p);

// sign(x) |x|^e, the odd power map; strictly increasing for e > 0.
double signed_pow(double x, double e);

double total_variation(std::span<const double> v);

EnergyBreakdown energy_G(const Signal& signal, std::span<const double> v, double p,
                         double lambda);

struct OptimalityReport {
    bool optimal = false;
    double worst_violation = 0.0;
    // index range [lo, hi] of the equal-value block with the worst violation
    std::size_t worst_lo = 0;
    std::size_t worst_hi = 0;

    explicit operator bool() const { return optimal; }
};

// First-order certificate 0 in dG(v). Equal-value blocks (detected at tol) are
// tested via their junction subgradients: starting from the block's left TV
// sign, the running sum of member fidelity gradients must stay in [-1, 1] at
// every interior junction and land on the right TV sign within tol. Requires
// p > 1.
OptimalityReport check_optimality(const Signal& signal, std::span<const double> v,
                                  double p, double lambda, double tol);

}  // namespace tvpath
