#pragma once

#include <vector>

#include "hgatac/chromosome.hpp"
#include "hgatac/config.hpp"
#include "hgatac/instance.hpp"
#include "hgatac/local_search.hpp"
#include "hgatac/rng.hpp"

namespace hgatac {

struct EscapeCandidate {
    Chromosome ch;
    double cost = 0.0;
    bool range_violation = false;
};

struct EscapeResult {
    /// Feasible chromosomes pricing strictly below the incumbent, ready to be
    /// injected into the feasible subpopulation.
    std::vector<EscapeCandidate> improved;
    /// Best cost seen in the buffer, improving or not.
    double best_cost = 0.0;
    int buffer_size = 0;
};

/// Buffer walk around a local optimum: starting from the incumbent, repeatedly
/// applies one random local-search move to a random buffer member and keeps
/// results that improve on the best or sit within epsilon of it. A full buffer
/// evicts its worst member. Infeasible intermediates may enter the buffer (at
/// their penalized price) but only feasible improvements are returned.
EscapeResult escape_local_optima(const Instance& inst, const Chromosome& omega_local,
                                 LocalSearch& ls, const SolverConfig& cfg, double w1, double w2,
                                 Rng& rng);

} // namespace hgatac
