#pragma once

#include <vector>

#include "tvpath/signal.hpp"

namespace tvpath {

struct OracleResult {
    std::vector<double> values;
    double energy = 0.0;
    int iterations = 0;  // 0 for the p=1 dynamic program
    bool converged = false;
};

// Exact p=1 solver. There is always a minimizer with every entry drawn from
// the value set {f_1, ..., f_k}; a chain dynamic program over that lattice
// finds it. Ties are broken toward the smallest value in ascending order, so
// the returned representative is deterministic.
OracleResult solve_oracle_p1(const Signal& signal, double lambda);

// Brute-force minimizer for p > 1: cyclic exact coordinate minimization, each
// 1-D slice solved by bisection on its subgradient over [min f, max f].
// Near-equal runs are additionally moved jointly (same bisection on the block
// subgradient, iterated to a fixpoint), and a run whose interior junction
// subgradients escape [-1, 1] is split at the escape with the implied jump
// sign; together these resolve the stalls and spurious merges the
// nonseparable TV term causes for pure coordinate descent. Converged means
// the sweep-to-sweep change dropped below tol and the first-order certificate
// holds at 10*tol.
OracleResult solve_oracle_pgt1(const Signal& signal, double p, double lambda,
                               double tol = 1e-10);

}  // namespace tvpath
