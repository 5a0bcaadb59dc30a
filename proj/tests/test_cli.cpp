#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hgatac/io.hpp"

using namespace hgatac;

namespace {

const std::string kCli = HGATAC_CLI_PATH;
const std::string kDemo = std::string(HGATAC_SOURCE_DIR) + "/data/demo5.json";

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("hgatac-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string at(const std::string& name) const { return (path / name).string(); }
};

struct CmdResult {
    int status = -1;
    std::string output;

    bool contains(const std::string& needle) const {
        return output.find(needle) != std::string::npos;
    }
};

CmdResult run_cli(const TempDir& tmp, const std::string& args) {
    static int counter = 0;
    const std::string capture = tmp.at("capture-" + std::to_string(counter++) + ".txt");
    const std::string cmd = "\"" + kCli + "\" " + args + " > \"" + capture + "\" 2>&1";
    const int rc = std::system(cmd.c_str());

    CmdResult res;
    if (rc != -1 && WIFEXITED(rc)) res.status = WEXITSTATUS(rc);
    std::ifstream in(capture);
    std::stringstream ss;
    ss << in.rdbuf();
    res.output = ss.str();
    return res;
}

std::string line_starting_with(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(prefix, 0) == 0) return line;
    return {};
}

} // namespace

TEST_CASE("solve subcommand prints the demo solution and a report") {
    TempDir tmp;
    const CmdResult r = run_cli(
        tmp, "solve \"" + kDemo + "\" --repeats 2 --seed 3 --variant tac-plus --trace \"" +
                 tmp.at("trace.jsonl") + "\"");
    REQUIRE(r.status == 0);
    CHECK(r.contains("instance: demo5"));
    CHECK(r.contains("completion time: 25"));
    CHECK(r.contains("chromosome:"));
    CHECK(r.contains("truck route:"));
    CHECK(r.contains("Instance"));

    std::ifstream trace(tmp.at("trace.jsonl"));
    REQUIRE(trace.good());
    std::string first;
    std::getline(trace, first);
    CHECK(first.find("\"iteration\"") != std::string::npos);
    CHECK(first.find("\"cost\"") != std::string::npos);
}

TEST_CASE("solve honors --out and is reproducible modulo timing") {
    TempDir tmp;
    const std::string base = "solve \"" + kDemo + "\" --repeats 1 --seed 11 --no-escape";
    const CmdResult a = run_cli(tmp, base + " --out \"" + tmp.at("report.csv") + "\"");
    REQUIRE(a.status == 0);

    std::ifstream report(tmp.at("report.csv"));
    REQUIRE(report.good());
    std::string header;
    std::getline(report, header);
    CHECK(header == "Instance,Variant,Best,Mean,Time,Gap");
    std::string row;
    std::getline(report, row);
    CHECK(row.rfind("demo5,tac-plus,25.00,25.00,", 0) == 0);

    const CmdResult b = run_cli(tmp, base);
    REQUIRE(b.status == 0);
    CHECK(line_starting_with(a.output, "chromosome:") == line_starting_with(b.output, "chromosome:"));
    CHECK(line_starting_with(a.output, "completion time:") ==
          line_starting_with(b.output, "completion time:"));
}

TEST_CASE("bench with an empty glob emits a header and succeeds") {
    TempDir tmp;
    const CmdResult r = run_cli(tmp, "bench \"" + tmp.at("*.none") + "\" --repeats 1");
    REQUIRE(r.status == 0);
    CHECK(r.contains("Instance"));
    int lines = 0;
    for (char c : r.output) lines += c == '\n';
    CHECK(lines == 1);
}

TEST_CASE("bench compares both variants against the best-cost baseline") {
    TempDir tmp;
    const CmdResult gen =
        run_cli(tmp, "gen \"" + tmp.at("insts.jsonl") + "\" --n 6 --count 1 --seed 4");
    REQUIRE(gen.status == 0);
    CHECK(gen.contains("wrote 1 instance"));

    const CmdResult r = run_cli(tmp, "bench \"" + tmp.at("insts.jsonl") +
                                         "\" --repeats 1 --jobs 2 --seed 2 --out \"" +
                                         tmp.at("bench.csv") + "\"");
    REQUIRE(r.status == 0);

    std::ifstream in(tmp.at("bench.csv"));
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string csv = ss.str();
    CHECK(csv.find("uniform-n6-a2-s4,tac,") != std::string::npos);
    CHECK(csv.find("uniform-n6-a2-s4,tac-plus,") != std::string::npos);
    CHECK(csv.find(",0.00\n") != std::string::npos); // the baseline arm gaps at zero
    int lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 4); // header, two arms, average
}

TEST_CASE("ablate reports the classic arm as its own baseline") {
    TempDir tmp;
    REQUIRE(run_cli(tmp, "gen \"" + tmp.at("one.jsonl") + "\" --n 5 --count 1 --seed 6").status ==
            0);
    const CmdResult r = run_cli(tmp, "ablate \"" + tmp.at("one.jsonl") +
                                         "\" --repeats 1 --seed 2 --report-format csv");
    REQUIRE(r.status == 0);
    CHECK(r.contains(",l-moves,"));
    CHECK(r.contains(",classic,"));
}

TEST_CASE("verify subcommand cross-checks solver and decoder") {
    TempDir tmp;
    const CmdResult r = run_cli(tmp, "verify 5 3 --checks 5 --seed 2");
    REQUIRE(r.status == 0);
    CHECK(r.contains("optimal hits: 3/3"));
    CHECK(r.contains("join vs oracle mismatches: 0/15"));
    CHECK(r.contains("verify: PASS"));
}

TEST_CASE("gen writes instances the native reader loads back") {
    TempDir tmp;
    const CmdResult r = run_cli(tmp, "gen \"" + tmp.at("out.jsonl") +
                                         "\" --n 4 --count 2 --seed 9 --kind fstsp --endurance 30");
    REQUIRE(r.status == 0);
    CHECK(r.contains("wrote 2 instances"));

    const std::vector<Instance> insts = read_native(tmp.at("out.jsonl"));
    REQUIRE(insts.size() == 2);
    CHECK(insts[0].name() == "uniform-n4-a2-s9");
    CHECK(insts[1].name() == "uniform-n4-a2-s10");
    for (const Instance& inst : insts) {
        CHECK(inst.customers() == 4);
        CHECK(inst.profile().kind == ProblemKind::Fstsp);
        CHECK(inst.profile().endurance == 30.0);
    }
}

TEST_CASE("usage and runtime failures use distinct exit codes") {
    TempDir tmp;
    CHECK(run_cli(tmp, "").status == 2);                       // a subcommand is required
    CHECK(run_cli(tmp, "frobnicate").status == 2);             // unknown subcommand
    CHECK(run_cli(tmp, "solve").status == 2);                  // missing instance path
    CHECK(run_cli(tmp, "solve x.json --bogus-flag").status == 2);
    CHECK(run_cli(tmp, "verify 9 1").status == 2);             // n outside the oracle range
    CHECK(run_cli(tmp, "gen out.jsonl --dist clustered").status == 2);

    const CmdResult missing = run_cli(tmp, "solve \"" + tmp.at("missing.jsonl") + "\"");
    CHECK(missing.status == 2);
    CHECK(missing.contains("error:"));

    const CmdResult unwritable =
        run_cli(tmp, "gen \"" + tmp.at("no-such-dir/x.jsonl") + "\" --n 3");
    CHECK(unwritable.status == 2);
    CHECK(unwritable.contains("error:"));

    // --help is not an error.
    CHECK(run_cli(tmp, "--help").status == 0);
    CHECK(run_cli(tmp, "solve --help").status == 0);
}
