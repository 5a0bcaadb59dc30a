#include "hgatac/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hgatac {

namespace {

using nlohmann::json;

std::vector<double> matrix_from_json(const json& rows, int nodes, const std::string& what) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != nodes)
        throw std::invalid_argument(what + ": expected " + std::to_string(nodes) + " rows");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(nodes));
    for (const json& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != nodes)
            throw std::invalid_argument(what + ": ragged matrix row");
        for (const json& v : row) flat.push_back(v.get<double>());
    }
    return flat;
}

json matrix_to_json(const Instance& inst, bool drone) {
    json rows = json::array();
    for (int i = 0; i < inst.nodes(); ++i) {
        json row = json::array();
        for (int j = 0; j < inst.nodes(); ++j)
            row.push_back(drone ? inst.drone_time(i, j) : inst.truck_time(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> matrices_from_coords(const std::vector<std::pair<double, double>>& pts,
                                         int n, double speed, bool manhattan) {
    const int nodes = n + 2;
    auto at = [&](int node) -> const std::pair<double, double>& {
        return pts[static_cast<std::size_t>(node == n + 1 ? 0 : node)];
    };
    std::vector<double> flat(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(nodes));
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            const auto& a = at(i);
            const auto& b = at(j);
            const double d = manhattan
                                 ? std::abs(a.first - b.first) + std::abs(a.second - b.second)
                                 : std::hypot(a.first - b.first, a.second - b.second);
            flat[static_cast<std::size_t>(i) * static_cast<std::size_t>(nodes) +
                 static_cast<std::size_t>(j)] = d / speed;
        }
    }
    return flat;
}

Instance instance_from_json(const json& j, const std::string& where) {
    for (const auto& item : j.items()) {
        static const char* known[] = {"name",          "kind",          "endurance",
                                      "launch_setup",  "retrieval_setup", "customers",
                                      "truck",         "drone",         "coords",
                                      "truck_speed",   "drone_speed",   "truck_metric",
                                      "drone_eligible"};
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw std::invalid_argument(where + ": unknown key '" + item.key() + "'");
    }

    const std::string name = j.value("name", std::string("unnamed"));
    const std::string kind = j.value("kind", std::string("tspd"));
    const int n = j.at("customers").get<int>();
    if (n < 1) throw std::invalid_argument(where + ": customers must be positive");

    AssumptionProfile profile;
    double endurance = std::numeric_limits<double>::infinity();
    if (j.contains("endurance") && !j["endurance"].is_null())
        endurance = j["endurance"].get<double>();
    if (kind == "tspd") {
        profile = AssumptionProfile::tspd(endurance);
    } else if (kind == "fstsp") {
        profile = AssumptionProfile::fstsp(endurance, j.value("launch_setup", 1.0),
                                           j.value("retrieval_setup", 1.0));
    } else {
        throw std::invalid_argument(where + ": unknown kind '" + kind + "'");
    }

    std::vector<double> truck;
    std::vector<double> drone;
    if (j.contains("truck") || j.contains("drone")) {
        if (j.contains("coords"))
            throw std::invalid_argument(where + ": give either matrices or coords, not both");
        truck = matrix_from_json(j.at("truck"), n + 2, where + ": truck");
        drone = matrix_from_json(j.at("drone"), n + 2, where + ": drone");
    } else {
        const json& coords = j.at("coords");
        if (static_cast<int>(coords.size()) != n + 1)
            throw std::invalid_argument(where + ": coords must list the depot plus " +
                                        std::to_string(n) + " customers");
        std::vector<std::pair<double, double>> pts;
        pts.reserve(coords.size());
        for (const json& c : coords) pts.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
        const double ts = j.value("truck_speed", 1.0);
        const double ds = j.value("drone_speed", 1.0);
        const bool manhattan = j.value("truck_metric", std::string("euclidean")) == "manhattan";
        truck = matrices_from_coords(pts, n, ts, manhattan);
        drone = matrices_from_coords(pts, n, ds, false);
    }

    std::vector<std::uint8_t> eligible;
    if (j.contains("drone_eligible")) {
        const json& e = j["drone_eligible"];
        if (static_cast<int>(e.size()) != n)
            throw std::invalid_argument(where + ": drone_eligible needs one flag per customer");
        eligible.assign(static_cast<std::size_t>(n) + 1, 0);
        for (int c = 1; c <= n; ++c)
            eligible[static_cast<std::size_t>(c)] =
                e[static_cast<std::size_t>(c) - 1].get<bool>() ? 1 : 0;
    }

    return Instance(name, n, std::move(truck), std::move(drone), profile, std::move(eligible));
}

} // namespace

std::vector<Instance> read_native(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::vector<Instance> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        try {
            out.push_back(instance_from_json(json::parse(line), where));
        } catch (const json::exception& ex) {
            throw std::invalid_argument(where + ": " + ex.what());
        }
    }
    if (out.empty()) throw std::invalid_argument(path + ": no instances found");
    return out;
}

void write_native(const Instance& inst, std::ostream& os) {
    json j;
    j["name"] = inst.name();
    const AssumptionProfile& p = inst.profile();
    j["kind"] = p.kind == ProblemKind::Tspd ? "tspd" : "fstsp";
    if (p.limited_range()) j["endurance"] = p.endurance;
    if (p.kind == ProblemKind::Fstsp) {
        j["launch_setup"] = p.launch_setup;
        j["retrieval_setup"] = p.retrieval_setup;
    }
    j["customers"] = inst.customers();
    j["truck"] = matrix_to_json(inst, false);
    j["drone"] = matrix_to_json(inst, true);
    json elig = json::array();
    for (int c = 1; c <= inst.customers(); ++c) elig.push_back(inst.drone_eligible(c));
    j["drone_eligible"] = std::move(elig);
    os << j.dump() << '\n';
}

void write_native_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    write_native(inst, out);
}

Instance parse_agatz(const std::string& path, double range_percent) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);

    std::vector<double> values;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line.compare(start, 2, "/*") == 0) continue;
        std::istringstream ss(line.substr(start));
        double v;
        while (ss >> v) {
            if (std::isnan(v)) fail("NaN value");
            values.push_back(v);
        }
        ss.clear();
        std::string rest;
        if (ss >> rest) fail("unexpected token '" + rest + "'");
    }
    if (values.size() < 3) fail("truncated file");

    const double truck_speed = values[0];
    const double drone_speed = values[1];
    const double nodes_d = values[2];
    if (truck_speed <= 0 || drone_speed <= 0) fail("speeds must be positive");
    if (nodes_d < 2 || nodes_d != std::floor(nodes_d)) fail("bad node count");
    const int num_nodes = static_cast<int>(nodes_d); // depot + customers
    if (values.size() != 3 + 3 * static_cast<std::size_t>(num_nodes))
        fail("expected " + std::to_string(3 * num_nodes) + " coordinate values");

    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(num_nodes));
    for (int i = 0; i < num_nodes; ++i)
        pts.emplace_back(values[3 + 3 * static_cast<std::size_t>(i)],
                         values[4 + 3 * static_cast<std::size_t>(i)]);

    const int n = num_nodes - 1;
    std::vector<double> truck = matrices_from_coords(pts, n, truck_speed, false);
    std::vector<double> drone = matrices_from_coords(pts, n, drone_speed, false);

    double endurance = std::numeric_limits<double>::infinity();
    if (range_percent < 200.0) {
        double max_dist = 0.0;
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b)
                max_dist = std::max(max_dist, std::hypot(pts[a].first - pts[b].first,
                                                         pts[a].second - pts[b].second));
        endurance = range_percent / 100.0 * max_dist / drone_speed;
    }

    std::string name = path;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos)
        name = name.substr(slash + 1);
    return Instance(name, n, std::move(truck), std::move(drone),
                    AssumptionProfile::tspd(endurance));
}

namespace {

std::vector<std::vector<double>> read_csv_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {};
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            if (cell.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                            ": bad number '" + cell + "'");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

Instance parse_murray(const std::string& dir, double endurance_minutes, double drone_mph) {
    const AssumptionProfile profile = AssumptionProfile::fstsp(endurance_minutes, 1.0, 1.0);

    auto matrix_of = [&](std::vector<std::vector<double>> rows, const std::string& what,
                         int nodes) {
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(nodes));
        if (static_cast<int>(rows.size()) != nodes)
            throw std::invalid_argument(dir + "/" + what + ": expected " + std::to_string(nodes) +
                                        " rows, found " + std::to_string(rows.size()));
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != nodes)
                throw std::invalid_argument(dir + "/" + what + ": ragged row");
            for (double v : row) {
                if (std::isnan(v) || v < 0)
                    throw std::invalid_argument(dir + "/" + what + ": bad travel time");
                flat.push_back(v);
            }
        }
        return flat;
    };

    std::vector<std::vector<double>> tau = read_csv_matrix(dir + "/tau.csv");
    if (!tau.empty()) {
        const int nodes = static_cast<int>(tau.size());
        const int n = nodes - 2;
        if (n < 1) throw std::invalid_argument(dir + "/tau.csv: too few nodes");
        std::vector<double> truck = matrix_of(std::move(tau), "tau.csv", nodes);
        std::vector<double> drone =
            matrix_of(read_csv_matrix(dir + "/tauprime.csv"), "tauprime.csv", nodes);

        std::vector<std::uint8_t> eligible(static_cast<std::size_t>(n) + 1, 0);
        const auto cprime = read_csv_matrix(dir + "/Cprime.csv");
        for (const auto& row : cprime) {
            for (double v : row) {
                const int c = static_cast<int>(v);
                if (c >= 1 && c <= n) eligible[static_cast<std::size_t>(c)] = 1;
            }
        }
        if (cprime.empty()) eligible.clear(); // no file: everyone is eligible
        return Instance(dir, n, std::move(truck), std::move(drone), profile, std::move(eligible));
    }

    // Fallback: build the matrices from coordinates.
    const auto nodes_csv = read_csv_matrix(dir + "/nodes.csv");
    if (nodes_csv.empty())
        throw std::invalid_argument(dir + ": neither tau.csv nor nodes.csv found");
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : nodes_csv) {
        if (row.size() < 3) throw std::invalid_argument(dir + "/nodes.csv: need id,x,y rows");
        pts.emplace_back(row[1], row[2]);
    }
    if (!pts.empty() && nodes_csv.back()[0] == 0.0 && pts.size() > 1)
        pts.pop_back(); // some folders repeat the depot as a last return row
    const int n = static_cast<int>(pts.size()) - 1;
    if (n < 1) throw std::invalid_argument(dir + "/nodes.csv: too few nodes");
    // Times in minutes: Manhattan truck at 25 mph, euclidean drone.
    std::vector<double> truck = matrices_from_coords(pts, n, 25.0 / 60.0, true);
    std::vector<double> drone = matrices_from_coords(pts, n, drone_mph / 60.0, false);
    return Instance(dir, n, std::move(truck), std::move(drone), profile);
}

Distribution distribution_from_string(const std::string& text) {
    if (text == "uniform") return Distribution::Uniform;
    if (text == "single_center" || text == "single-center") return Distribution::SingleCenter;
    if (text == "double_center" || text == "double-center") return Distribution::DoubleCenter;
    throw std::invalid_argument("unknown distribution: " + text);
}

Instance generate_instance(Distribution dist, int n, double alpha, std::uint64_t seed,
                           const GenOptions& opts) {
    if (n < 1) throw std::invalid_argument("need at least one customer");
    if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    pts.emplace_back(unit(rng), unit(rng)); // depot near the lower-left corner

    auto clamped_normal = [&](double mean, double sd) {
        std::normal_distribution<double> d(mean, sd);
        double v = d(rng);
        return std::min(100.0, std::max(0.0, v));
    };
    for (int c = 0; c < n; ++c) {
        switch (dist) {
            case Distribution::Uniform:
                pts.emplace_back(100.0 * unit(rng), 100.0 * unit(rng));
                break;
            case Distribution::SingleCenter:
                pts.emplace_back(clamped_normal(50.0, 15.0), clamped_normal(50.0, 15.0));
                break;
            case Distribution::DoubleCenter: {
                const bool first = unit(rng) < 0.5;
                const double cx = first ? 25.0 : 75.0;
                const double cy = first ? 25.0 : 75.0;
                pts.emplace_back(clamped_normal(cx, 10.0), clamped_normal(cy, 10.0));
                break;
            }
        }
    }

    std::vector<double> truck = matrices_from_coords(pts, n, 1.0, false);
    std::vector<double> drone = matrices_from_coords(pts, n, alpha, false);

    const char* kind = nullptr;
    switch (dist) {
        case Distribution::Uniform: kind = "uniform"; break;
        case Distribution::SingleCenter: kind = "single_center"; break;
        case Distribution::DoubleCenter: kind = "double_center"; break;
    }
    std::ostringstream name;
    name << kind << "-n" << n << "-a" << alpha << "-s" << seed;

    AssumptionProfile profile = opts.kind == ProblemKind::Tspd
                                    ? AssumptionProfile::tspd(opts.endurance)
                                    : AssumptionProfile::fstsp(opts.endurance, opts.launch_setup,
                                                               opts.retrieval_setup);
    return Instance(name.str(), n, std::move(truck), std::move(drone), profile);
}

void write_report(const std::vector<RunRecord>& records, std::ostream& os,
                  const std::string& format) {
    const bool csv = format == "csv";
    if (!csv && format != "table")
        throw std::invalid_argument("unknown report format: " + format);

    auto gap = [](const RunRecord& r) -> double {
        if (std::isnan(r.baseline) || r.baseline == 0.0)
            return std::numeric_limits<double>::quiet_NaN();
        return (r.mean - r.baseline) / r.baseline * 100.0;
    };

    std::ostringstream body;
    body.setf(std::ios::fixed);
    auto cell = [&](const std::string& s, int width) {
        if (csv)
            body << s << ',';
        else
            body << std::setw(width) << s << "  ";
    };
    auto num = [&](double v, int prec, int width) {
        std::ostringstream c;
        c.setf(std::ios::fixed);
        if (std::isnan(v))
            c << "-";
        else
            c << std::setprecision(prec) << v;
        cell(c.str(), width);
    };
    auto endrow = [&] {
        std::string s = body.str();
        if (csv && !s.empty() && s.back() == ',') s.pop_back();
        os << s << '\n';
        body.str("");
    };

    cell("Instance", 28);
    cell("Variant", 9);
    cell("Best", 10);
    cell("Mean", 10);
    cell("Time", 8);
    cell("Gap", 8);
    endrow();

    double sum_best = 0, sum_mean = 0, sum_time = 0, sum_gap = 0;
    int gap_count = 0;
    for (const RunRecord& r : records) {
        cell(r.instance, 28);
        cell(r.variant, 9);
        num(r.best, 2, 10);
        num(r.mean, 2, 10);
        num(r.time_seconds, 2, 8);
        const double g = gap(r);
        num(g, 2, 8);
        endrow();
        sum_best += r.best;
        sum_mean += r.mean;
        sum_time += r.time_seconds;
        if (!std::isnan(g)) {
            sum_gap += g;
            ++gap_count;
        }
    }
    if (!records.empty()) {
        const double k = static_cast<double>(records.size());
        cell("average", 28);
        cell("", 9);
        num(sum_best / k, 2, 10);
        num(sum_mean / k, 2, 10);
        num(sum_time / k, 2, 8);
        num(gap_count > 0 ? sum_gap / gap_count : std::numeric_limits<double>::quiet_NaN(), 2, 8);
        endrow();
    }
}

void write_report_file(const std::vector<RunRecord>& records, const std::string& path,
                       const std::string& format) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    write_report(records, out, format);
}

void write_trace(const std::vector<TraceRecord>& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    for (const TraceRecord& t : trace) {
        json j;
        j["iteration"] = t.iteration;
        j["cost"] = t.best_cost;
        j["w1"] = t.w1;
        j["w2"] = t.w2;
        out << j.dump() << '\n';
    }
}

} // namespace hgatac
