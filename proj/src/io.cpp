#include "tvpath/io.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace tvpath {

using nlohmann::json;

json signal_to_json(const Signal& signal) {
    return json{{"lengths", signal.lengths()}, {"values", signal.values()}};
}

Signal signal_from_json(const json& j) {
    if (!j.is_object() || !j.contains("lengths") || !j.contains("values"))
        throw std::invalid_argument("signal JSON must have lengths and values arrays");
    std::vector<double> lengths = j.at("lengths").get<std::vector<double>>();
    std::vector<double> values = j.at("values").get<std::vector<double>>();
    const double x0 = j.value("x0", 0.0);
    return Signal(std::move(lengths), std::move(values), x0);
}

namespace {

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

Signal signal_from_csv(std::istream& in, std::optional<double> dx) {
    std::vector<double> col1, col2;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::stringstream row(line);
        std::string a, b;
        std::getline(row, a, ',');
        const bool has_b = static_cast<bool>(std::getline(row, b, ','));

        double va = 0.0, vb = 0.0;
        const bool ok_a = parse_double(a, va);
        const bool ok_b = has_b && parse_double(b, vb);
        if (!ok_a || (has_b && !ok_b)) {
            if (first) {  // header row
                first = false;
                continue;
            }
            throw std::invalid_argument("malformed CSV row: " + line);
        }
        first = false;
        col1.push_back(va);
        if (has_b) col2.push_back(vb);
    }
    if (col1.empty()) throw std::invalid_argument("CSV input is empty");

    if (dx) {
        if (!col2.empty())
            throw std::invalid_argument("sample CSV with --dx must have one column");
        return signal_from_samples(col1, *dx);
    }
    if (col2.size() != col1.size())
        throw std::invalid_argument("CSV input must have length,value rows");
    return make_signal(col1, col2);
}

json path_to_json(const SolutionPath& path) {
    json segments = json::array();
    for (const PathSegment& seg : path.segments) {
        json groups = json::array();
        for (const Group& g : seg.groups) {
            json jg{{"range", {g.lo + 1, g.hi + 1}}, {"a", g.a()}};
            if (path.p == 2.0) {
                jg["M"] = g.mean;
                jg["c"] = g.coef();
            }
            groups.push_back(std::move(jg));
        }
        segments.push_back(json{{"lambda_lo", seg.lambda_lo},
                                {"lambda_hi", std::isinf(seg.lambda_hi)
                                                  ? json(nullptr)
                                                  : json(seg.lambda_hi)},
                                {"groups", std::move(groups)}});
    }
    json events = json::array();
    for (const EventRecord& ev : path.events) {
        json merges = json::array();
        for (std::size_t g : ev.merges) merges.push_back({g + 1, g + 2});
        events.push_back(json{{"lambda", ev.lambda}, {"merges", std::move(merges)}});
    }
    return json{{"p", path.p},
                {"segments", std::move(segments)},
                {"events", std::move(events)},
                {"terminal_value", path.terminal_value}};
}

SolutionPath path_from_json(const json& j, const Signal& signal) {
    SolutionPath path;
    path.p = j.at("p").get<double>();
    path.terminal_value = j.at("terminal_value").get<double>();

    for (const json& js : j.at("segments")) {
        PathSegment seg;
        seg.lambda_lo = js.at("lambda_lo").get<double>();
        seg.lambda_hi = js.at("lambda_hi").is_null()
                            ? std::numeric_limits<double>::infinity()
                            : js.at("lambda_hi").get<double>();
        for (const json& jg : js.at("groups")) {
            const auto range = jg.at("range").get<std::vector<std::size_t>>();
            if (range.size() != 2 || range[0] < 1 || range[1] < range[0] ||
                range[1] > signal.size())
                throw std::invalid_argument("path JSON: bad group range");
            Group g;
            g.lo = range[0] - 1;
            g.hi = range[1] - 1;
            g.s_left = jg.at("a").get<int>();  // only the difference a matters
            g.s_right = 0;
            g.weight = 0.0;
            double wf = 0.0;
            for (std::size_t i = g.lo; i <= g.hi; ++i) {
                g.weight += signal.length(i);
                wf += signal.length(i) * signal.value(i);
            }
            g.mean = wf / g.weight;
            seg.groups.push_back(g);
        }
        path.segments.push_back(std::move(seg));
    }
    for (const json& je : j.at("events")) {
        EventRecord ev;
        ev.lambda = je.at("lambda").get<double>();
        for (const json& jm : je.at("merges")) {
            const auto pair = jm.get<std::vector<std::size_t>>();
            if (pair.size() != 2 || pair[0] < 1)
                throw std::invalid_argument("path JSON: bad merge pair");
            ev.merges.push_back(pair[0] - 1);
        }
        path.events.push_back(std::move(ev));
    }
    return path;
}

}  // namespace tvpath
