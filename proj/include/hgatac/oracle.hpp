#pragma once

#include <vector>

#include "hgatac/chromosome.hpp"
#include "hgatac/instance.hpp"

namespace hgatac {

/// Reference implementations used to pin down expected values in tests. They
/// enumerate instead of recursing over subproblems and accumulate travel times
/// forward, so they share no pricing logic with the decoder they check.

struct OracleOp {
    int launch = 0;
    int drone = 0;
    int land = 0;
    bool stationary = false;
};

struct RendezvousResult {
    bool feasible = false;
    double best = 0.0;
    std::vector<OracleOp> ops;
};

/// Brute-force evaluation of one chromosome: tries every legal combination of
/// launch and rendezvous nodes consistent with gene order and the instance
/// assumptions. Requires a chromosome without adjacent drone genes and n <= 12;
/// throws once more than 10^7 assignments would have to be enumerated.
RendezvousResult enumerate_rendezvous(const Instance& inst, const Chromosome& ch);

struct ExhaustiveResult {
    double best = 0.0;
    Chromosome argmin;
    RendezvousResult detail;
};

/// Global optimum by enumerating every permutation and every admissible sign
/// pattern, pricing each with enumerate_rendezvous. Requires n <= 8.
ExhaustiveResult exhaustive_tspd(const Instance& inst);

} // namespace hgatac
