#pragma once

#include "hgatac/chromosome.hpp"
#include "hgatac/decode.hpp"
#include "hgatac/rng.hpp"

namespace hgatac {

/// Flips each gene's vehicle type independently with probability `per_gene`.
/// Customers that are not drone eligible never turn negative.
void sign_mutation(Chromosome& ch, const Instance& inst, Rng& rng, double per_gene = 0.1);

/// Shuffles the genes inside a random contiguous window.
void tour_mutation(Chromosome& ch, Rng& rng);

/// Applies one of the two mutations with equal probability.
void mutate(Chromosome& ch, const Instance& inst, Rng& rng, double per_gene = 0.1);

/// Turns an infeasible chromosome into a feasible one. Runs of adjacent drone
/// genes keep one uniformly chosen member; afterwards the drone customer of
/// every endurance-violating sortie is moved onto the truck until the decode
/// is clean. Penalties only steer the intermediate decodes.
Chromosome repair(const Chromosome& ch, const Instance& inst, Rng& rng, double w1 = 1.0,
                  double w2 = 1.0);

} // namespace hgatac
