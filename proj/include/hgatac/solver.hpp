#pragma once

#include <vector>

#include "hgatac/chromosome.hpp"
#include "hgatac/config.hpp"
#include "hgatac/decode.hpp"
#include "hgatac/instance.hpp"

namespace hgatac {

/// Tac runs the plain genetic algorithm; TacPlus adds the buffer-based escape
/// from local optima. The two are otherwise identical.
enum class Variant { Tac, TacPlus };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& text);

struct TraceRecord {
    int iteration = 0;
    double best_cost = 0.0;
    double w1 = 0.0;
    double w2 = 0.0;
    int feasible = 0;
    int type1 = 0;
    int type2 = 0;

    bool operator==(const TraceRecord&) const = default;
};

struct RunResult {
    Chromosome best;
    DecodedSolution solution;
    double cost = 0.0;
    int iterations = 0;
    double wall_seconds = 0.0;
    std::vector<TraceRecord> trace;
};

/// Runs the full algorithm on one instance: seeded population, one offspring
/// per iteration (tournament parents, crossover, optional mutation, local
/// search), classed insertion with probabilistic repair, survivor selection
/// on full subpopulations, penalty adjustment every iteration, plus
/// diversification and (TacPlus) escape whenever the stall counter reaches a
/// multiple of the respective period. Stops after it_ni iterations without
/// incumbent improvement or when the configured time limit runs out.
/// `tsp_tour`, when given, replaces the built-in construction heuristic as the
/// tour behind the partition seed.
RunResult solve(const Instance& inst, const SolverConfig& cfg, Variant variant = Variant::TacPlus,
                const std::vector<int>* tsp_tour = nullptr);

} // namespace hgatac
