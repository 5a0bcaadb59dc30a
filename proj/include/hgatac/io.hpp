#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hgatac/instance.hpp"
#include "hgatac/solver.hpp"

namespace hgatac {

/// Native interchange format: one JSON object per line. Each object carries
/// the name, the operational profile, eligibility flags, and either explicit
/// travel-time matrices (authoritative, round-trips bit-exact) or coordinates
/// plus metric/speed fields from which the matrices are derived.
std::vector<Instance> read_native(const std::string& path);
void write_native(const Instance& inst, std::ostream& os);
void write_native_file(const Instance& inst, const std::string& path);

/// Reader for the published TSPD benchmark layout: block comments, truck and
/// drone speeds, node count, then one "x y id" line per node with the depot
/// first. Distances are euclidean, times distance/speed. `range_percent` is
/// the dataset's r parameter: the drone range as a percentage of the largest
/// pairwise distance; 200 or more means unlimited.
Instance parse_agatz(const std::string& path, double range_percent = 200.0);

/// Reader for the FSTSP benchmark folders: tau.csv / tauprime.csv square
/// matrices with Cprime.csv eligibility, or nodes.csv coordinates as a
/// fallback (Manhattan truck at 25 mph, euclidean drone at `drone_mph`).
/// Setup times are one minute each; times are minutes.
Instance parse_murray(const std::string& dir, double endurance_minutes,
                      double drone_mph = 25.0);

enum class Distribution { Uniform, SingleCenter, DoubleCenter };
Distribution distribution_from_string(const std::string& text);

struct GenOptions {
    ProblemKind kind = ProblemKind::Tspd;
    double endurance = std::numeric_limits<double>::infinity();
    double launch_setup = 1.0;    // FSTSP only
    double retrieval_setup = 1.0; // FSTSP only
};

/// Random instance on the [0,100]^2 square with the depot drawn from [0,1]^2
/// (lower-left corner convention). `alpha` is the drone/truck speed ratio;
/// the truck drives at unit speed, so truck times equal euclidean distances.
/// Deterministic per seed.
Instance generate_instance(Distribution dist, int n, double alpha, std::uint64_t seed,
                           const GenOptions& opts = {});

struct RunRecord {
    std::string instance;
    std::uint64_t seed = 0;
    std::string variant;
    double best = 0.0;
    double mean = 0.0;
    double time_seconds = 0.0;
    int iterations = 0;
    /// Reference cost for the Gap column; NaN suppresses the gap.
    double baseline = std::numeric_limits<double>::quiet_NaN();
    std::string trace_path;
};

/// Per-record rows plus an aggregate mean row. `format` is "csv" or "table";
/// Gap = (mean - baseline) / baseline * 100 when a baseline is present.
void write_report(const std::vector<RunRecord>& records, std::ostream& os,
                  const std::string& format);
void write_report_file(const std::vector<RunRecord>& records, const std::string& path,
                       const std::string& format);

/// One JSON object per iteration: iteration, cost, w1, w2.
void write_trace(const std::vector<TraceRecord>& trace, const std::string& path);

} // namespace hgatac
