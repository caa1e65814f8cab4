#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvpath/energy.hpp"
#include "tvpath/io.hpp"
#include "tvpath/k2.hpp"
#include "tvpath/oracle.hpp"
#include "tvpath/path.hpp"
#include "tvpath/signal.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitMalformedInput = 2;
constexpr int kExitInvalidParams = 3;

struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidParams : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    double p = 2.0;
    double lambda = 0.0;
    std::string input = "-";
    std::string format = "json";
    std::optional<double> dx;
    std::string output = "-";
    std::string emit = "solution";
    double tol = 1e-6;
    std::string lambda_grid;
};

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw MalformedInput("cannot open input file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_all(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidParams("cannot open output file: " + path);
    f << text;
}

tvpath::Signal load_signal(const Options& opt) {
    const std::string text = read_all(opt.input);
    try {
        if (opt.format == "json") {
            return tvpath::signal_from_json(json::parse(text));
        }
        if (opt.format == "csv") {
            std::istringstream in(text);
            return tvpath::signal_from_csv(in, opt.dx);
        }
    } catch (const std::exception& e) {
        throw MalformedInput(e.what());
    }
    throw InvalidParams("unknown input format: " + opt.format);
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string staircase_csv(const tvpath::Signal& signal, const std::vector<double>& u) {
    std::string out = "x,y\n";
    for (const auto& [x, y] : tvpath::staircase_points(signal, u))
        out += fmt17(x) + "," + fmt17(y) + "\n";
    return out;
}

std::vector<double> log_grid(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || !(lo > 0.0) ||
        !(hi > lo) || n < 2)
        throw InvalidParams("--lambda-grid must be lo:hi:n with 0 < lo < hi, n >= 2");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return grid;
}

int run_solve(const Options& opt) {
    if (!(opt.lambda > 0.0)) throw InvalidParams("solve requires --lambda > 0");
    if (!(opt.p >= 1.0)) throw InvalidParams("solve requires --p >= 1");
    const tvpath::Signal signal = load_signal(opt);

    std::vector<double> u;
    bool optimal = true;
    if (opt.p > 1.0) {
        u = tvpath::solve_at(signal, opt.p, opt.lambda).values;
        optimal = tvpath::check_optimality(signal, u, opt.p, opt.lambda, 1e-7).optimal;
    } else {
        u = tvpath::solve_oracle_p1(signal, opt.lambda).values;
    }
    const auto energy = tvpath::energy_G(signal, u, opt.p, opt.lambda);

    if (opt.emit == "staircase") {
        write_all(opt.output, staircase_csv(signal, u));
        return kExitOk;
    }
    json out{{"u", u},
             {"energy",
              {{"tv", energy.tv}, {"fidelity", energy.fidelity}, {"total", energy.total}}},
             {"optimal", optimal}};
    if (opt.emit == "all")
        out["staircase"] = staircase_csv(signal, u);
    write_all(opt.output, out.dump(2) + "\n");
    return kExitOk;
}

int run_path(const Options& opt) {
    if (!(opt.p > 1.0)) throw InvalidParams("path requires --p > 1");
    const tvpath::Signal signal = load_signal(opt);
    const tvpath::SolutionPath path = tvpath::compute_path(signal, opt.p);
    json out = tvpath::path_to_json(path);

    if (opt.emit == "all") {
        json snaps = json::array();
        for (const auto& ev : path.events) {
            const double above = ev.lambda * (1.0 + 1e-9);
            const double below = ev.lambda * (1.0 - 1e-9);
            snaps.push_back(
                json{{"lambda_above", above},
                     {"u_above", tvpath::evaluate_path(path, signal, above)},
                     {"lambda_below", below},
                     {"u_below", tvpath::evaluate_path(path, signal, below)}});
        }
        out["event_snapshots"] = std::move(snaps);
    }
    write_all(opt.output, out.dump(2) + "\n");
    return kExitOk;
}

int run_oracle_check(const Options& opt) {
    if (!(opt.p >= 1.0)) throw InvalidParams("oracle-check requires --p >= 1");
    if (opt.lambda_grid.empty() && opt.p > 1.0)
        throw InvalidParams("oracle-check requires --lambda-grid for p > 1");
    const tvpath::Signal signal = load_signal(opt);

    std::string report = "lambda,max_abs_deviation,worst_index\n";
    bool ok = true;
    double bad_lambda = 0.0;
    std::size_t bad_index = 0;

    if (opt.p > 1.0) {
        const tvpath::SolutionPath path = tvpath::compute_path(signal, opt.p);
        for (double lambda : log_grid(opt.lambda_grid)) {
            const auto u = tvpath::evaluate_path(path, signal, lambda);
            const auto oracle = tvpath::solve_oracle_pgt1(signal, opt.p, lambda, 1e-10);
            double dev = 0.0;
            std::size_t worst = 0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double d = std::abs(u[i] - oracle.values[i]);
                if (d > dev) {
                    dev = d;
                    worst = i;
                }
            }
            report += fmt17(lambda) + "," + fmt17(dev) + "," + std::to_string(worst + 1) +
                      "\n";
            if (!(dev <= opt.tol) || !oracle.converged) {
                if (ok) {
                    bad_lambda = lambda;
                    bad_index = worst;
                }
                ok = false;
            }
        }
    } else {
        // p = 1: dynamic program against exhaustive enumeration.
        const std::size_t k = signal.size();
        if (k > 8) throw InvalidParams("p=1 oracle-check limited to k <= 8");
        std::vector<double> lattice = signal.values();
        std::sort(lattice.begin(), lattice.end());
        lattice.erase(std::unique(lattice.begin(), lattice.end()), lattice.end());

        std::vector<double> lambdas;
        if (!opt.lambda_grid.empty()) {
            lambdas = log_grid(opt.lambda_grid);
        } else {
            const double lb = tvpath::constant_solution(signal, 1.0).second;
            lambdas = {0.1 * lb, lb, 10.0 * lb, 100.0 * lb};
        }
        for (double lambda : lambdas) {
            const auto dp = tvpath::solve_oracle_p1(signal, lambda);
            double best = std::numeric_limits<double>::infinity();
            std::vector<double> v(k, 0.0);
            std::vector<std::size_t> digit(k, 0);
            for (;;) {
                for (std::size_t i = 0; i < k; ++i) v[i] = lattice[digit[i]];
                best = std::min(best, tvpath::energy_G(signal, v, 1.0, lambda).total);
                std::size_t i = 0;
                while (i < k && ++digit[i] == lattice.size()) digit[i++] = 0;
                if (i == k) break;
            }
            const double dev = std::abs(dp.energy - best);
            report += fmt17(lambda) + "," + fmt17(dev) + ",1\n";
            if (dev != 0.0) {
                if (ok) bad_lambda = lambda;
                ok = false;
            }
        }
    }

    write_all(opt.output, report);
    if (!ok) {
        std::cerr << "oracle-check: deviation above tolerance at lambda="
                  << fmt17(bad_lambda) << " index " << bad_index + 1 << "\n";
        return kExitInternal;
    }
    return kExitOk;
}

int run_k2(const Options& opt, double L1, double L2, double f1, double f2) {
    if (!(opt.lambda > 0.0)) throw InvalidParams("k2 requires --lambda > 0");
    if (!(L1 > 0.0) || !(L2 > 0.0)) throw InvalidParams("k2 requires positive lengths");
    tvpath::K2Solution s;
    if (opt.p > 1.0)
        s = tvpath::solve_k2(opt.p, opt.lambda, L1, L2, f1, f2);
    else if (opt.p == 1.0)
        s = tvpath::solve_k2_p1(opt.lambda, L1, L2, f1, f2);
    else
        throw InvalidParams("k2 requires --p >= 1");

    json out{{"u", {s.u1, s.u2}},
             {"merged", s.merged},
             {"unique", s.unique},
             {"degenerate", s.degenerate},
             {"lambda_threshold", s.lambda_threshold}};
    write_all(opt.output, out.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact 1-D total variation denoising for piecewise constant data"};
    app.require_subcommand(1);

    Options opt;
    double k2_L1 = 1.0, k2_L2 = 1.0, k2_f1 = 0.0, k2_f2 = 1.0;
    double dx_arg = 0.0;

    auto add_common = [&](CLI::App* sub, bool needs_signal) {
        sub->add_option("--p", opt.p, "fidelity exponent");
        sub->add_option("--tol", opt.tol, "comparison tolerance");
        sub->add_option("--output", opt.output, "output file or - for stdout");
        if (needs_signal) {
            sub->add_option("--input", opt.input, "input file or - for stdin");
            sub->add_option("--format", opt.format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
            sub->add_option("--dx", dx_arg, "sample spacing for one-column CSV");
            sub->add_option("--emit", opt.emit, "solution|path|staircase|all")
                ->check(CLI::IsMember({"solution", "path", "staircase", "all"}));
        }
    };

    CLI::App* solve = app.add_subcommand("solve", "solve at one lambda");
    add_common(solve, true);
    solve->add_option("--lambda", opt.lambda, "regularization parameter");

    CLI::App* path = app.add_subcommand("path", "full lambda solution path");
    add_common(path, true);

    CLI::App* oracle = app.add_subcommand("oracle-check",
                                          "compare solver against brute-force oracle");
    add_common(oracle, true);
    oracle->add_option("--lambda-grid", opt.lambda_grid, "lo:hi:n log-spaced grid");

    CLI::App* k2 = app.add_subcommand("k2", "closed-form two-segment solution");
    add_common(k2, false);
    k2->add_option("--lambda", opt.lambda, "regularization parameter");
    k2->add_option("--l1", k2_L1, "first segment length");
    k2->add_option("--l2", k2_L2, "second segment length");
    k2->add_option("--f1", k2_f1, "first segment value");
    k2->add_option("--f2", k2_f2, "second segment value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidParams;
    }

    if (dx_arg != 0.0) {
        if (!(dx_arg > 0.0)) {
            std::cerr << "error: --dx must be positive\n";
            return kExitInvalidParams;
        }
        opt.dx = dx_arg;
    }

    try {
        if (solve->parsed()) return run_solve(opt);
        if (path->parsed()) return run_path(opt);
        if (oracle->parsed()) return run_oracle_check(opt);
        if (k2->parsed()) return run_k2(opt, k2_L1, k2_L2, k2_f1, k2_f2);
        return kExitInvalidParams;
    } catch (const MalformedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformedInput;
    } catch (const InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParams;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParams;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
