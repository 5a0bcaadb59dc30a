#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hgatac/io.hpp"
#include "json.hpp"
#include "test_instances.hpp"

using namespace hgatac;
using fixtures::random_instance;

namespace {

/// Scratch directory under the system temp root, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("hgatac-io-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }

    std::string file(const std::string& name, const std::string& content) const {
        const std::filesystem::path p = path / name;
        std::filesystem::create_directories(p.parent_path());
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string at(const std::string& name) const { return (path / name).string(); }
};

template <typename Fn>
std::string thrown_message(Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& ex) {
        return ex.what();
    }
    return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("native format round trips matrices bit for bit") {
    TempDir tmp;

    const Instance gen = random_instance(5, 2.0, 99);
    write_native_file(gen, tmp.at("gen.jsonl"));
    const std::vector<Instance> got = read_native(tmp.at("gen.jsonl"));
    REQUIRE(got.size() == 1);
    const Instance& back = got[0];
    CHECK(back.name() == "uniform-n5-a2-s99");
    CHECK(back.customers() == 5);
    CHECK(back.profile().kind == ProblemKind::Tspd);
    CHECK(!back.profile().limited_range());
    for (int i = 0; i < gen.nodes(); ++i) {
        for (int j = 0; j < gen.nodes(); ++j) {
            CHECK(back.truck_time(i, j) == gen.truck_time(i, j));
            CHECK(back.drone_time(i, j) == gen.drone_time(i, j));
        }
    }

    // FSTSP profile fields and eligibility flags survive as well.
    const Instance base = random_instance(3, 2.0, 17);
    std::vector<double> truck;
    std::vector<double> drone;
    for (int i = 0; i < base.nodes(); ++i) {
        for (int j = 0; j < base.nodes(); ++j) {
            truck.push_back(base.truck_time(i, j));
            drone.push_back(base.drone_time(i, j));
        }
    }
    const Instance fst("rt-fstsp", 3, std::move(truck), std::move(drone),
                       AssumptionProfile::fstsp(55.5, 2.25, 3.5), {0, 1, 0, 1});
    write_native_file(fst, tmp.at("fst.jsonl"));
    const Instance fb = read_native(tmp.at("fst.jsonl")).at(0);
    CHECK(fb.name() == "rt-fstsp");
    CHECK(fb.profile().kind == ProblemKind::Fstsp);
    CHECK(fb.profile().endurance == 55.5);
    CHECK(fb.profile().launch_setup == 2.25);
    CHECK(fb.profile().retrieval_setup == 3.5);
    CHECK(fb.drone_eligible(1));
    CHECK(!fb.drone_eligible(2));
    CHECK(fb.drone_eligible(3));
    for (int i = 0; i < fst.nodes(); ++i)
        for (int j = 0; j < fst.nodes(); ++j) CHECK(fb.truck_time(i, j) == fst.truck_time(i, j));
}

TEST_CASE("native format accepts coordinates and rejects bad input") {
    TempDir tmp;

    const std::string coords = tmp.file(
        "coords.jsonl",
        R"({"name":"c","customers":1,"coords":[[0,0],[3,4]],"truck_speed":1.0,"drone_speed":2.0})"
        "\n\n"
        R"({"name":"m","customers":1,"coords":[[0,0],[3,4]],"truck_metric":"manhattan"})"
        "\n");
    const std::vector<Instance> got = read_native(coords);
    REQUIRE(got.size() == 2);
    CHECK(got[0].truck_time(0, 1) == doctest::Approx(5.0));
    CHECK(got[0].drone_time(0, 1) == doctest::Approx(2.5));
    CHECK(got[0].truck_time(1, 2) == doctest::Approx(5.0)); // return depot copies the depot
    CHECK(got[1].truck_time(0, 1) == doctest::Approx(7.0));
    CHECK(got[1].drone_time(0, 1) == doctest::Approx(5.0)); // drone is always euclidean

    CHECK(contains(
        thrown_message([&] { read_native(tmp.file("k.jsonl", R"({"customer":1,"coords":[]})")); }),
        "unknown key 'customer'"));
    CHECK(contains(thrown_message([&] {
                       read_native(tmp.file(
                           "r.jsonl",
                           R"({"customers":1,"truck":[[0,1,2],[1,0,3],[2,3]],"drone":[[0,1,2],[1,0,3],[2,3,0]]})"));
                   }),
                   "ragged"));
    CHECK(contains(thrown_message([&] {
                       read_native(tmp.file(
                           "b.jsonl", R"({"customers":1,"coords":[[0,0],[1,1]],"truck":[[0]]})"));
                   }),
                   "matrices or coords"));
    CHECK(contains(thrown_message([&] {
                       read_native(tmp.file(
                           "e.jsonl",
                           R"({"customers":2,"coords":[[0,0],[1,1],[2,2]],"drone_eligible":[true]})"));
                   }),
                   "one flag per customer"));
    CHECK(contains(thrown_message([&] { read_native(tmp.file("empty.jsonl", "\n  \n")); }),
                   "no instances"));
    CHECK_THROWS_AS(read_native(tmp.at("missing.jsonl")), std::invalid_argument);

    // Parse failures carry the file and line location.
    const std::string broken =
        tmp.file("broken.jsonl", "{\"customers\":1,\"coords\":[[0,0],[1,1]]}\nnot json\n");
    CHECK(contains(thrown_message([&] { read_native(broken); }), ":2:"));
    // Structural JSON errors inside a valid line are located too.
    CHECK(contains(thrown_message([&] { read_native(tmp.file("nc.jsonl", "{\"customers\":1}")); }),
                   ":1:"));
}

TEST_CASE("benchmark text reader derives times and drone range") {
    TempDir tmp;
    const std::string body =
        "/*The speeds and the nodes*/\n"
        "1.0\n"
        "2.0\n"
        "3\n"
        "0.0 0.0 0\n"
        "4.0 0.0 1\n"
        "0.0 3.0 2\n";
    const std::string path = tmp.file("sample-uniform-1.txt", body);

    const Instance unlimited = parse_agatz(path);
    CHECK(unlimited.name() == "sample-uniform-1.txt");
    CHECK(unlimited.customers() == 2);
    CHECK(unlimited.profile().kind == ProblemKind::Tspd);
    CHECK(!unlimited.profile().limited_range());
    CHECK(unlimited.truck_time(0, 1) == doctest::Approx(4.0));
    CHECK(unlimited.truck_time(0, 2) == doctest::Approx(3.0));
    CHECK(unlimited.truck_time(1, 2) == doctest::Approx(5.0));
    CHECK(unlimited.drone_time(1, 2) == doctest::Approx(2.5));
    CHECK(unlimited.truck_time(1, 3) == doctest::Approx(4.0)); // return depot

    // r percent of the largest pairwise distance, divided by drone speed.
    const Instance ranged = parse_agatz(path, 100.0);
    CHECK(ranged.profile().limited_range());
    CHECK(ranged.profile().endurance == doctest::Approx(2.5));

    CHECK(contains(
        thrown_message([&] { parse_agatz(tmp.file("tok.txt", "1.0 2.0\n3 oops\n")); }),
        "unexpected token 'oops'"));
    CHECK(contains(thrown_message([&] { parse_agatz(tmp.file("short.txt", "1.0 2.0\n")); }),
                   "truncated"));
    CHECK(contains(
        thrown_message([&] { parse_agatz(tmp.file("frac.txt", "1 2 2.5\n0 0 0\n1 1 1\n")); }),
        "bad node count"));
    CHECK(contains(
        thrown_message([&] { parse_agatz(tmp.file("few.txt", "1 2 3\n0 0 0\n1 1 1\n")); }),
        "coordinate values"));
    CHECK_THROWS_AS(parse_agatz(tmp.at("nope.txt")), std::invalid_argument);
}

TEST_CASE("benchmark folder reader handles matrices and eligibility") {
    TempDir tmp;
    tmp.file("m1/tau.csv",
             "0,3,4,0\n"
             "3,0,2,3\n"
             "4,2,0,4\n"
             "0,3,4,0\n");
    tmp.file("m1/tauprime.csv",
             "0,1.5,2,0\n"
             "1.5,0,1,1.5\n"
             "2,1,0,2\n"
             "0,1.5,2,0\n");
    tmp.file("m1/Cprime.csv", "2\n");

    const Instance inst = parse_murray(tmp.at("m1"), 30.0);
    CHECK(inst.customers() == 2);
    CHECK(inst.profile().kind == ProblemKind::Fstsp);
    CHECK(inst.profile().endurance == 30.0);
    CHECK(inst.profile().launch_setup == 1.0);
    CHECK(inst.profile().retrieval_setup == 1.0);
    CHECK(inst.truck_time(0, 1) == 3.0);
    CHECK(inst.truck_time(1, 2) == 2.0);
    CHECK(inst.drone_time(0, 2) == 2.0);
    CHECK(!inst.drone_eligible(1));
    CHECK(inst.drone_eligible(2));

    // Without Cprime.csv every customer may fly.
    tmp.file("m2/tau.csv", "0,1,1\n1,0,1\n1,1,0\n");
    tmp.file("m2/tauprime.csv", "0,1,1\n1,0,1\n1,1,0\n");
    const Instance open = parse_murray(tmp.at("m2"), 20.0);
    CHECK(open.customers() == 1);
    CHECK(open.drone_eligible(1));

    tmp.file("m3/tau.csv", "0,1,1\n1,0,1\n1,1,0\n");
    CHECK(contains(thrown_message([&] { parse_murray(tmp.at("m3"), 20.0); }), "tauprime.csv"));
    CHECK(contains(thrown_message([&] { parse_murray(tmp.at("nowhere"), 20.0); }),
                   "neither tau.csv nor nodes.csv"));
}

TEST_CASE("benchmark folder reader falls back to coordinates") {
    TempDir tmp;
    tmp.file("f1/nodes.csv",
             "0,0.0,0.0,1\n"
             "1,3.0,4.0,0\n"
             "2,1.0,1.0,0\n"
             "0,0.0,0.0,1\n"); // repeated depot return row is dropped

    const Instance inst = parse_murray(tmp.at("f1"), 40.0);
    CHECK(inst.customers() == 2);
    CHECK(inst.profile().endurance == 40.0);
    // Manhattan truck at 25 mph, minutes: 7 miles over 25/60 miles per minute.
    CHECK(inst.truck_time(0, 1) == doctest::Approx(16.8));
    CHECK(inst.truck_time(1, 2) == doctest::Approx(12.0));
    // Euclidean drone at the default 25 mph.
    CHECK(inst.drone_time(0, 1) == doctest::Approx(12.0));
    CHECK(inst.drone_time(1, 2) == doctest::Approx(std::sqrt(13.0) * 60.0 / 25.0));
    CHECK(inst.truck_time(1, 3) == doctest::Approx(16.8)); // return depot copies the depot

    // Faster drone scales the drone matrix only.
    const Instance fast = parse_murray(tmp.at("f1"), 40.0, 50.0);
    CHECK(fast.drone_time(0, 1) == doctest::Approx(6.0));
    CHECK(fast.truck_time(0, 1) == doctest::Approx(16.8));
}

TEST_CASE("generator is deterministic and respects its conventions") {
    const Instance a = generate_instance(Distribution::Uniform, 6, 2.0, 5);
    const Instance b = generate_instance(Distribution::Uniform, 6, 2.0, 5);
    const Instance c = generate_instance(Distribution::Uniform, 6, 2.0, 6);

    CHECK(a.name() == "uniform-n6-a2-s5");
    CHECK(a.customers() == 6);
    bool same = true;
    bool differs = false;
    for (int i = 0; i < a.nodes() && same; ++i) {
        for (int j = 0; j < a.nodes(); ++j) {
            same = same && a.truck_time(i, j) == b.truck_time(i, j);
            differs = differs || a.truck_time(i, j) != c.truck_time(i, j);
        }
    }
    CHECK(same);
    CHECK(differs);

    // Unit-speed truck, drone alpha times faster on the same metric.
    for (int i = 0; i < a.nodes(); ++i) {
        for (int j = 0; j < a.nodes(); ++j) {
            CHECK(a.truck_time(i, j) == a.truck_time(j, i));
            CHECK(a.drone_time(i, j) * 2.0 == doctest::Approx(a.truck_time(i, j)));
        }
        CHECK(a.truck_time(i, i) == 0.0);
    }
    CHECK(a.truck_time(0, a.return_depot()) == 0.0);

    const Instance sc = generate_instance(Distribution::SingleCenter, 4, 1.5, 9);
    CHECK(sc.name() == "single_center-n4-a1.5-s9");
    const Instance dc = generate_instance(Distribution::DoubleCenter, 4, 3.0, 9);
    CHECK(dc.name() == "double_center-n4-a3-s9");

    GenOptions opts;
    opts.kind = ProblemKind::Fstsp;
    opts.endurance = 25.0;
    opts.launch_setup = 0.5;
    opts.retrieval_setup = 0.75;
    const Instance f = generate_instance(Distribution::Uniform, 3, 2.0, 1, opts);
    CHECK(f.profile().kind == ProblemKind::Fstsp);
    CHECK(f.profile().endurance == 25.0);
    CHECK(f.profile().launch_setup == 0.5);
    CHECK(f.profile().retrieval_setup == 0.75);

    CHECK_THROWS_AS(generate_instance(Distribution::Uniform, 0, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(Distribution::Uniform, 4, 0.0, 1), std::invalid_argument);

    CHECK(distribution_from_string("uniform") == Distribution::Uniform);
    CHECK(distribution_from_string("single-center") == Distribution::SingleCenter);
    CHECK(distribution_from_string("double_center") == Distribution::DoubleCenter);
    CHECK_THROWS_AS(distribution_from_string("clustered"), std::invalid_argument);
}

TEST_CASE("report writer formats rows, gaps, and the average line") {
    std::ostringstream empty;
    write_report({}, empty, "csv");
    CHECK(empty.str() == "Instance,Variant,Best,Mean,Time,Gap\n");

    RunRecord r1;
    r1.instance = "demo5";
    r1.variant = "tac";
    r1.best = 10.0;
    r1.mean = 10.0;
    r1.time_seconds = 1.5;
    r1.baseline = 8.0;
    RunRecord r2;
    r2.instance = "rand";
    r2.variant = "tac-plus";
    r2.best = 12.0;
    r2.mean = 13.0;
    r2.time_seconds = 0.5;

    std::ostringstream csv;
    write_report({r1, r2}, csv, "csv");
    CHECK(csv.str() ==
          "Instance,Variant,Best,Mean,Time,Gap\n"
          "demo5,tac,10.00,10.00,1.50,25.00\n"
          "rand,tac-plus,12.00,13.00,0.50,-\n"
          "average,,11.00,11.50,1.00,25.00\n");

    std::ostringstream table;
    write_report({r1, r2}, table, "table");
    const std::string text = table.str();
    CHECK(contains(text, "Instance"));
    CHECK(contains(text, "25.00"));
    CHECK(contains(text, "average"));
    int lines = 0;
    for (char ch : text) lines += ch == '\n';
    CHECK(lines == 4);

    std::ostringstream sink;
    CHECK_THROWS_AS(write_report({r1}, sink, "yaml"), std::invalid_argument);

    TempDir tmp;
    write_report_file({r1}, tmp.at("report.csv"), "csv");
    std::ifstream in(tmp.at("report.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "Instance,Variant,Best,Mean,Time,Gap");
}

TEST_CASE("trace writer emits one compact object per iteration") {
    TraceRecord t1;
    t1.iteration = 0;
    t1.best_cost = 41.5;
    t1.w1 = 2.0;
    t1.w2 = 4.0;
    TraceRecord t2;
    t2.iteration = 1;
    t2.best_cost = 39.25;
    t2.w1 = 2.2;
    t2.w2 = 4.0;

    TempDir tmp;
    write_trace({t1, t2}, tmp.at("trace.jsonl"));

    std::ifstream in(tmp.at("trace.jsonl"));
    std::string line;
    std::vector<nlohmann::json> rows;
    while (std::getline(in, line))
        if (!line.empty()) rows.push_back(nlohmann::json::parse(line));
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.size() == 4);
        CHECK(row.contains("iteration"));
        CHECK(row.contains("cost"));
        CHECK(row.contains("w1"));
        CHECK(row.contains("w2"));
    }
    CHECK(rows[0]["iteration"] == 0);
    CHECK(rows[0]["cost"] == 41.5);
    CHECK(rows[1]["w1"] == 2.2);
    CHECK(rows[1]["iteration"] == 1);
}
