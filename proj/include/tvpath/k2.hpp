#pragma once

namespace tvpath {

// Exact two-segment solutions.
struct K2Solution {
    double u1 = 0.0;
    double u2 = 0.0;
    bool merged = false;      // u1 == u2
    bool unique = true;       // false only in p = 1 threshold cases
    bool degenerate = false;  // f1 == f2
    double lambda_threshold = 0.0;
};

// Threshold separating the merged regime from the split one for p > 1:
//   (1/p) (L1^{1/(p-1)} + L2^{1/(p-1)})^{p-1} / (L1 L2 |f2 - f1|^{p-1})
// Evaluated in ratio form so p close to 1 does not overflow.
double lambda_threshold(double p, double L1, double L2, double f1, double f2);

K2Solution solve_k2(double p, double lambda, double L1, double L2, double f1,
                    double f2);

// p = 1, all three L-cases. At the threshold the constant representative of
// the sub-threshold branch is returned with unique = false.
K2Solution solve_k2_p1(double lambda, double L1, double L2, double f1, double f2);

}  // namespace tvpath
