#include "tvpath/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tvpath/energy.hpp"

namespace tvpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBisectDepth = 200;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

double weighted_mean(const Signal& signal, std::size_t lo, std::size_t hi) {
    double w = 0.0, s = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        w += signal.length(i);
        s += signal.length(i) * signal.value(i);
    }
    return s / w;
}

Group make_group(const Signal& signal, std::size_t lo, std::size_t hi, int s_left,
                 int s_right) {
    Group g;
    g.lo = lo;
    g.hi = hi;
    g.s_left = s_left;
    g.s_right = s_right;
    g.weight = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) g.weight += signal.length(i);
    g.mean = weighted_mean(signal, lo, hi);
    return g;
}

}  // namespace

double group_value(const Signal& signal, const Group& group, double p, double lambda,
                   double tol) {
    if (p == 2.0) return group.mean + group.coef() / lambda;

    // Root of  a + p lambda sum_j L_j sign(u - f_j)|u - f_j|^(p-1) = 0,
    // a strictly increasing function of u.
    const double a = static_cast<double>(group.a());
    double gmin = signal.value(group.lo), gmax = gmin, lmin = signal.length(group.lo);
    for (std::size_t i = group.lo; i <= group.hi; ++i) {
        gmin = std::min(gmin, signal.value(i));
        gmax = std::max(gmax, signal.value(i));
        lmin = std::min(lmin, signal.length(i));
    }
    double delta = 0.0;
    if (a != 0.0)
        delta = std::pow(std::abs(a) / (p * lambda * lmin), 1.0 / (p - 1.0)) *
                (1.0 + 1e-12);

    auto stat = [&](double u) {
        double s = a;
        for (std::size_t i = group.lo; i <= group.hi; ++i)
            s += p * lambda * signal.length(i) * signed_pow(u - signal.value(i), p - 1.0);
        return s;
    };

    double lo = gmin - delta, hi = gmax + delta;
    for (int it = 0; it < kBisectDepth && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (stat(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }

    // Newton polish: for p < 2 the stationarity residual scales like
    // |u - f|^(p-2) near a data value, so the bisection tolerance alone can
    // leave a visible certificate defect at large lambda.
    double u = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        double dg = 0.0;
        for (std::size_t i = group.lo; i <= group.hi; ++i)
            dg += p * lambda * signal.length(i) * (p - 1.0) *
                  pow_abs(u - signal.value(i), p - 2.0);
        if (!(dg > 0.0) || !std::isfinite(dg)) break;
        const double step = stat(u) / dg;
        const double next = u - step;
        if (!std::isfinite(next) || next < lo || next > hi) break;
        u = next;
        if (std::abs(step) <= 1e-17 * (1.0 + std::abs(u))) break;
    }
    return u;
}

std::vector<double> evaluate_partition(const Signal& signal,
                                       const std::vector<Group>& groups, double p,
                                       double lambda, double tol) {
    std::vector<double> u(signal.size());
    for (const Group& g : groups) {
        const double v = group_value(signal, g, p, lambda, tol);
        for (std::size_t i = g.lo; i <= g.hi; ++i) u[i] = v;
    }
    return u;
}

std::pair<double, double> constant_solution(const Signal& signal, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("constant_solution: requires p >= 1");
    const std::size_t k = signal.size();
    const double maxL = *std::max_element(signal.lengths().begin(), signal.lengths().end());
    const double spread = signal.max_value() - signal.min_value();

    double c;
    if (p == 2.0) {
        c = weighted_mean(signal, 0, k - 1);
    } else if (p == 1.0) {
        // Weighted median, lowest-value tie-break.
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return signal.value(a) < signal.value(b);
        });
        const double half = 0.5 * signal.total_length();
        double cum = 0.0;
        c = signal.value(idx.back());
        for (std::size_t j : idx) {
            cum += signal.length(j);
            if (cum >= half) {
                c = signal.value(j);
                break;
            }
        }
    } else {
        Group all = make_group(signal, 0, k - 1, 0, 0);  // a = 0: weighted p-mean
        c = group_value(signal, all, p, 1.0, 1e-14 * std::max(1.0, spread));
    }

    double lambda_bar;
    if (k == 1) {
        lambda_bar = kInf;
    } else if (p > 1.0) {
        lambda_bar = 1.0 / (p * std::pow(spread, p - 1.0) * maxL);
    } else {
        double min_jump = kInf;
        for (std::size_t i = 1; i < k; ++i)
            min_jump = std::min(min_jump, std::abs(signal.value(i) - signal.value(i - 1)));
        lambda_bar = min_jump / (static_cast<double>(k) * maxL * spread);
    }
    return {c, lambda_bar};
}

bool partition_ordering_valid(const Signal& signal, const std::vector<Group>& groups,
                              double p, double lambda) {
    std::vector<double> v(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g)
        v[g] = group_value(signal, groups[g], p, lambda);
    for (std::size_t g = 0; g + 1 < groups.size(); ++g)
        if (sign_of(v[g + 1] - v[g]) != groups[g].s_right) return false;
    return true;
}

std::pair<std::vector<Group>, double>
initial_partition_and_lambda(const Signal& signal, double p,
                             const SolverParams& params) {
    (void)params;
    if (!(p > 1.0))
        throw std::invalid_argument("initial_partition_and_lambda: requires p > 1");
    const std::size_t k = signal.size();

    std::vector<Group> groups;
    groups.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const int sl = (i == 0) ? 0 : sign_of(signal.value(i) - signal.value(i - 1));
        const int sr = (i == k - 1) ? 0 : sign_of(signal.value(i + 1) - signal.value(i));
        groups.push_back(make_group(signal, i, i, sl, sr));
    }
    if (k == 1) return {groups, 1.0};

    const double lambda_bar = constant_solution(signal, p).second;
    double lambda0 = std::max(1.0, 1.0 / lambda_bar);
    for (int it = 0; it < 2000; ++it) {
        if (partition_ordering_valid(signal, groups, p, lambda0))
            return {groups, lambda0};
        lambda0 *= 2.0;
    }
    throw std::runtime_error("initial_partition_and_lambda: no valid lambda found");
}

namespace {

// Largest zero of one pair's signed value gap below lambda_start, or nullopt.
// The gap is positive throughout the segment's validity and vanishes at the
// pair's merge; a geometric downward scan brackets the first sign change and
// bisection refines it.
std::optional<double> pair_crossing(const Signal& signal, const Group& g1,
                                    const Group& g2, double lambda_start, double p,
                                    double rel_tol, double lambda_floor) {
    const double s = static_cast<double>(g1.s_right);
    auto gap = [&](double lambda) {
        return s * (group_value(signal, g2, p, lambda) -
                    group_value(signal, g1, p, lambda));
    };

    double hi = lambda_start;
    if (!(gap(hi) > 0.0)) return std::nullopt;  // already closed; defect upstream
    double lo = hi;
    bool bracketed = false;
    while (lo > 0.25 * lambda_floor) {
        lo *= 0.5;
        if (gap(lo) <= 0.0) {
            bracketed = true;
            break;
        }
        hi = lo;
    }
    if (!bracketed) return std::nullopt;

    for (int it = 0; it < kBisectDepth && hi - lo > rel_tol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::optional<EventRecord> next_event(const Signal& signal,
                                      const std::vector<Group>& groups,
                                      double lambda_start, double p,
                                      const SolverParams& params,
                                      double lambda_floor) {
    if (groups.size() < 2)
        throw std::invalid_argument("next_event: needs at least two groups");

    const std::size_t n = groups.size();
    std::vector<double> candidate(n - 1, -1.0);

    if (p == 2.0) {
        for (std::size_t g = 0; g + 1 < n; ++g) {
            const double denom = groups[g].mean - groups[g + 1].mean;
            if (denom == 0.0) continue;
            const double lam = (groups[g + 1].coef() - groups[g].coef()) / denom;
            if (std::isfinite(lam) && lam > 0.0 && lam < lambda_start)
                candidate[g] = lam;
        }
    } else {
        for (std::size_t g = 0; g + 1 < n; ++g) {
            auto lam = pair_crossing(signal, groups[g], groups[g + 1], lambda_start, p,
                                     std::max(params.tol_lambda, 1e-13), lambda_floor);
            if (lam) candidate[g] = *lam;
        }
    }

    const double lam_star = *std::max_element(candidate.begin(), candidate.end());
    if (!(lam_star > 0.0)) return std::nullopt;

    // Events within the simultaneity window collapse into one record.
    const double window =
        lam_star * std::max(params.tol_lambda, p == 2.0 ? 1e-12 : 1e-9);
    EventRecord ev;
    ev.lambda = lam_star;
    for (std::size_t g = 0; g + 1 < n; ++g)
        if (candidate[g] >= lam_star - window) ev.merges.push_back(g);
    return ev;
}

std::vector<Group> merge_groups(const Signal& signal, const std::vector<Group>& groups,
                                const std::vector<std::size_t>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("merge_groups: empty pair list");
    std::vector<bool> fuse(groups.size(), false);  // fuse[g]: g joins g+1
    for (std::size_t g : pairs) {
        if (g + 1 >= groups.size())
            throw std::invalid_argument("merge_groups: pair index out of range");
        fuse[g] = true;
    }

    std::vector<Group> out;
    std::size_t g = 0;
    while (g < groups.size()) {
        std::size_t h = g;
        while (h + 1 < groups.size() && fuse[h]) ++h;
        out.push_back(make_group(signal, groups[g].lo, groups[h].hi, groups[g].s_left,
                                 groups[h].s_right));
        g = h + 1;
    }
    return out;
}

namespace {

void verify_segment(const Signal& signal, const std::vector<Group>& groups, double p,
                    double probe_lambda) {
    const std::vector<double> u = evaluate_partition(signal, groups, p, probe_lambda);
    const auto report = check_optimality(signal, u, p, probe_lambda, 1e-7);
    if (!report.optimal)
        throw std::runtime_error("compute_path: optimality check failed at lambda=" +
                                 std::to_string(probe_lambda));
}

}  // namespace

SolutionPath compute_path(const Signal& signal, double p, const SolverParams& params) {
    if (!(p > 1.0)) throw std::invalid_argument("compute_path: requires p > 1");

    SolutionPath path;
    path.p = p;

    const auto [c, lambda_bar] = constant_solution(signal, p);
    path.lambda_bar = lambda_bar;

    if (signal.size() == 1) {
        PathSegment seg;
        seg.lambda_lo = 0.0;
        seg.lambda_hi = kInf;
        seg.groups.push_back(make_group(signal, 0, 0, 0, 0));
        path.segments.push_back(std::move(seg));
        path.terminal_value = signal.value(0);
        return path;
    }

    auto [groups, lambda0] = initial_partition_and_lambda(signal, p, params);
    double upper = kInf;
    double start = lambda0;

    while (groups.size() > 1) {
        auto ev = next_event(signal, groups, start, p, params, 0.1 * lambda_bar);
        if (!ev)
            throw std::runtime_error("compute_path: no merge event found");

        PathSegment seg;
        seg.lambda_lo = ev->lambda;
        seg.lambda_hi = upper;
        seg.groups = groups;
        const double probe =
            std::isinf(upper) ? 2.0 * lambda0 : std::sqrt(seg.lambda_lo * upper);
        verify_segment(signal, seg.groups, p, probe);
        path.segments.push_back(std::move(seg));
        path.events.push_back(*ev);

        groups = merge_groups(signal, groups, ev->merges);
        upper = ev->lambda;
        start = ev->lambda;
    }

    PathSegment tail;
    tail.lambda_lo = 0.0;
    tail.lambda_hi = upper;
    tail.groups = groups;
    verify_segment(signal, tail.groups, p, std::isinf(upper) ? 1.0 : 0.5 * upper);
    path.terminal_value = group_value(signal, groups.front(), p,
                                      std::isinf(upper) ? 1.0 : 0.5 * upper);
    path.segments.push_back(std::move(tail));
    return path;
}

std::vector<double> evaluate_path(const SolutionPath& path, const Signal& signal,
                                  double lambda, double tol) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("evaluate_path: lambda must be positive");
    for (const PathSegment& seg : path.segments) {
        if (lambda > seg.lambda_lo && lambda <= seg.lambda_hi)
            return evaluate_partition(signal, seg.groups, path.p, lambda, tol);
    }
    // lambda <= 0 handled above; fall through only on numeric edge.
    return evaluate_partition(signal, path.segments.back().groups, path.p, lambda, tol);
}

SolutionVector solve_at(const Signal& signal, double p, double lambda,
                        const SolverParams& params) {
    const SolutionPath path = compute_path(signal, p, params);
    SolutionVector v;
    v.values = evaluate_path(path, signal, lambda);
    v.lambda = lambda;
    v.p = p;
    return v;
}

}  // namespace tvpath
