#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tvpath/signal.hpp"

namespace tvpath {

// Maximal run of segment indices sharing one solution value, together with
// the ordering signs toward its neighbors (0 at the domain boundary).
struct Group {
    std::size_t lo = 0;  // 0-based inclusive index range into the Signal
    std::size_t hi = 0;
    int s_left = 0;   // sign(value - left neighbor value)
    int s_right = 0;  // sign(right neighbor value - value)
    double weight = 0.0;  // sum of member lengths
    double mean = 0.0;    // length-weighted mean of member f values

    // Boundary TV coefficient in the group stationarity equation
    //   a + p lambda sum_j L_j sign(u - f_j) |u - f_j|^(p-1) = 0
    int a() const { return s_left - s_right; }
    // p = 2 descriptor: group value is mean + coef()/lambda.
    double coef() const { return static_cast<double>(s_right - s_left) / (2.0 * weight); }
};

struct EventRecord {
    double lambda = 0.0;
    // Pair g means groups (g, g+1) of the pre-event partition merge; 0-based.
    std::vector<std::size_t> merges;
};

// Half-open lambda interval (lambda_lo, lambda_hi]; lambda_hi is +infinity
// for the first segment.
struct PathSegment {
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    std::vector<Group> groups;
};

struct SolutionPath {
    double p = 2.0;
    std::vector<PathSegment> segments;  // ordered by decreasing lambda
    std::vector<EventRecord> events;
    double terminal_value = 0.0;
    double lambda_bar = 0.0;  // certified constant-solution bound
};

// Value of one group at the given lambda: closed form for p = 2, otherwise
// the unique root of the group stationarity equation by bisection.
double group_value(const Signal& signal, const Group& group, double p, double lambda,
                   double tol = 1e-13);

// Per-index solution values of a whole partition at the given lambda.
std::vector<double> evaluate_partition(const Signal& signal,
                                       const std::vector<Group>& groups, double p,
                                       double lambda, double tol = 1e-13);

// Minimizer c of sum_i L_i |c - f_i|^p and the lambda bound below which the
// solution is the constant c. For k = 1 the bound is +infinity.
std::pair<double, double> constant_solution(const Signal& signal, double p);

// Singleton partition with signs from f's adjacent ordering, and a lambda
// validated to reproduce that ordering (found by doubling).
std::pair<std::vector<Group>, double>
initial_partition_and_lambda(const Signal& signal, double p,
                             const SolverParams& params = {});

// True iff the partition's values at lambda keep the ordering its signs encode.
bool partition_ordering_valid(const Signal& signal, const std::vector<Group>& groups,
                              double p, double lambda);

// Largest lambda below lambda_start at which adjacent group values coincide.
// lambda_floor bounds the downward search (the event is known to lie above the
// constant-solution threshold). nullopt if no pair ever meets.
std::optional<EventRecord> next_event(const Signal& signal,
                                      const std::vector<Group>& groups,
                                      double lambda_start, double p,
                                      const SolverParams& params,
                                      double lambda_floor);

// Merge the listed adjacent pairs (chains collapse into one group). Outer
// signs of each merged block are inherited.
std::vector<Group> merge_groups(const Signal& signal, const std::vector<Group>& groups,
                                const std::vector<std::size_t>& pairs);

SolutionPath compute_path(const Signal& signal, double p,
                          const SolverParams& params = {});

// Evaluate a precomputed path at one lambda.
std::vector<double> evaluate_path(const SolutionPath& path, const Signal& signal,
                                  double lambda, double tol = 1e-13);

SolutionVector solve_at(const Signal& signal, double p, double lambda,
                        const SolverParams& params = {});

}  // namespace tvpath
