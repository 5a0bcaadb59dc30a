#pragma once

#include <vector>

#include "hgatac/chromosome.hpp"
#include "hgatac/rng.hpp"

namespace hgatac {

enum class NodeKind { Truck, Drone };

/// Classic order crossover adapted to signed genes: the inclusive segment
/// [cut1, cut2] comes from p1, the remaining customers follow in p2's order
/// (with p2's signs) starting after the segment and wrapping around.
Chromosome ox1(const Chromosome& p1, const Chromosome& p2, int cut1, int cut2);

/// Order-based crossover: the customers found at the selected positions of p2
/// are rearranged inside p1 to match p2's relative order, carrying p2's signs;
/// every other gene stays as in p1.
Chromosome ox2(const Chromosome& p1, const Chromosome& p2, const std::vector<int>& positions);

/// Type-aware variant 1: p1's genes of the chosen kind inside the window keep
/// their positions; all remaining customers fill the gaps left to right in the
/// order and with the type they have in p2. A zero-length window therefore
/// reproduces p2.
Chromosome tox1(const Chromosome& p1, const Chromosome& p2, NodeKind kind, int start, int len);

/// Type-aware variant 2: the window takes p1's customers with the type each of
/// them has in p2; outside the window the missing customers follow p2's order
/// with the type they have in p1.
Chromosome tox2(const Chromosome& p1, const Chromosome& p2, int start, int len);

/// Draws one of the four operators uniformly along with its random parameters.
Chromosome crossover(const Chromosome& p1, const Chromosome& p2, Rng& rng);

} // namespace hgatac
