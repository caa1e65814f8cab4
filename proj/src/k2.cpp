#include "tvpath/k2.hpp"

#include <cmath>
#include <stdexcept>

namespace tvpath {

namespace {

void require_k2_args(double p, double L1, double L2, double p_floor) {
    if (!(p >= p_floor)) throw std::invalid_argument("k2: invalid exponent p");
    if (!(L1 > 0.0) || !(L2 > 0.0))
        throw std::invalid_argument("k2: lengths must be positive");
}

// L1^q / (L1^q + L2^q) with q = 1/(p-1), computed through the length ratio so
// large q stays finite.
double merge_weight1(double p, double L1, double L2) {
    const double q = 1.0 / (p - 1.0);
    if (L1 >= L2) return 1.0 / (1.0 + std::pow(L2 / L1, q));
    const double w2 = 1.0 / (1.0 + std::pow(L1 / L2, q));
    return 1.0 - w2;
}

}  // namespace

double lambda_threshold(double p, double L1, double L2, double f1, double f2) {
    require_k2_args(p, L1, L2, 1.0);
    if (!(p > 1.0)) throw std::invalid_argument("lambda_threshold: requires p > 1");
    if (f1 == f2) throw std::invalid_argument("lambda_threshold: f1 == f2");

    const double q = 1.0 / (p - 1.0);
    const double lmax = std::max(L1, L2);
    const double lmin = std::min(L1, L2);
    // (L1^q + L2^q)^(1/q) = Lmax (1 + (Lmin/Lmax)^q)^(1/q)
    const double norm = lmax * std::pow(1.0 + std::pow(lmin / lmax, q), 1.0 / q);
    return norm / (p * L1 * L2 * std::pow(std::abs(f2 - f1), p - 1.0));
}

K2Solution solve_k2(double p, double lambda, double L1, double L2, double f1,
                    double f2) {
    require_k2_args(p, L1, L2, 1.0);
    if (!(p > 1.0)) throw std::invalid_argument("solve_k2: requires p > 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("solve_k2: lambda must be positive");

    K2Solution s;
    if (f1 == f2) {
        s.u1 = s.u2 = f1;
        s.merged = true;
        s.degenerate = true;
        return s;
    }
    if (f1 > f2) {
        // G is invariant under global negation of f and v.
        K2Solution r = solve_k2(p, lambda, L1, L2, -f1, -f2);
        r.u1 = -r.u1;
        r.u2 = -r.u2;
        return r;
    }

    s.lambda_threshold = lambda_threshold(p, L1, L2, f1, f2);
    if (lambda <= s.lambda_threshold) {
        const double w1 = merge_weight1(p, L1, L2);
        s.u1 = s.u2 = w1 * f1 + (1.0 - w1) * f2;
        s.merged = true;
    } else {
        const double e = 1.0 / (p - 1.0);
        s.u1 = f1 + std::pow(p * lambda * L1, -e);
        s.u2 = f2 - std::pow(p * lambda * L2, -e);
        s.merged = false;
    }
    return s;
}

K2Solution solve_k2_p1(double lambda, double L1, double L2, double f1, double f2) {
    require_k2_args(1.0, L1, L2, 1.0);
    if (!(lambda > 0.0))
        throw std::invalid_argument("solve_k2_p1: lambda must be positive");

    K2Solution s;
    if (f1 == f2) {
        s.u1 = s.u2 = f1;
        s.merged = true;
        s.degenerate = true;
        return s;
    }
    if (f1 > f2) {
        K2Solution r = solve_k2_p1(lambda, L1, L2, -f1, -f2);
        r.u1 = -r.u1;
        r.u2 = -r.u2;
        return r;
    }

    if (L1 > L2) {
        s.lambda_threshold = 1.0 / L2;
        if (lambda <= s.lambda_threshold) {
            s.u1 = s.u2 = f1;
            s.merged = true;
            s.unique = lambda < s.lambda_threshold;
        } else {
            s.u1 = f1;
            s.u2 = f2;
        }
    } else if (L1 < L2) {
        s.lambda_threshold = 1.0 / L1;
        if (lambda <= s.lambda_threshold) {
            s.u1 = s.u2 = f2;
            s.merged = true;
            s.unique = lambda < s.lambda_threshold;
        } else {
            s.u1 = f1;
            s.u2 = f2;
        }
    } else {
        s.lambda_threshold = 1.0 / L1;
        if (lambda <= s.lambda_threshold) {
            // Any common value in [f1, f2] minimizes; constant representative.
            s.u1 = s.u2 = f1;
            s.merged = true;
            s.unique = false;
        } else {
            s.u1 = f1;
            s.u2 = f2;
        }
    }
    return s;
}

}  // namespace tvpath
