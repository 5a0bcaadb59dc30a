#pragma once

#include <vector>

#include "hgatac/chromosome.hpp"
#include "hgatac/config.hpp"
#include "hgatac/instance.hpp"
#include "hgatac/population.hpp"
#include "hgatac/rng.hpp"

namespace hgatac {

/// Truck-metric TSP tour over the customers: nearest-neighbor construction
/// followed by 2-opt and Or-opt to local optimality. Deterministic.
std::vector<int> build_tsp_tour(const Instance& inst);

struct PartitionResult {
    Chromosome ch;
    double cost = 0.0;
};

/// Optimal truck/drone split of a fixed customer order: a backward DP over
/// tour positions that chooses each customer's mode and every sortie's launch
/// and rendezvous simultaneously, under the same operation rules the decoder
/// uses. The result has no adjacent drone genes and respects endurance, so it
/// always decodes feasible. O(n^3).
PartitionResult exact_partition(const Instance& inst, const std::vector<int>& tour);

/// One perturbation of the seed: with probability 0.5 a per-gene pass
/// (sign flip, neighbor swap), otherwise one segment operation (reverse,
/// negate, or shuffle) on a random window.
Chromosome perturb(const Chromosome& base, const Instance& inst, const SolverConfig& cfg,
                   Rng& rng);

/// Fills the subpopulations to mu members each with perturbations of omega0,
/// classifying every candidate on insertion. A global attempt cap keeps the
/// loop finite; classes random perturbation cannot reach are topped up with
/// targeted constructions, and classes the instance cannot produce at all are
/// left underfull. Used both at startup and by diversification refills.
void fill_subpopulations(Population& pop, const Chromosome& omega0, const Instance& inst,
                         const SolverConfig& cfg, Rng& rng);

struct SeededPopulation {
    Population pop;
    Chromosome omega0;
    double omega0_cost = 0.0;
};

/// Builds the initial population: TSP tour, exact partition into omega0,
/// then perturbation filling. `tour` overrides the built-in tour when given.
SeededPopulation initial_population(const Instance& inst, const SolverConfig& cfg, Rng& rng,
                                    const std::vector<int>* tour = nullptr);

} // namespace hgatac
