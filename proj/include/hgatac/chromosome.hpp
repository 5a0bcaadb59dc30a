#pragma once

#include <string>
#include <vector>

#include "hgatac/instance.hpp"

namespace hgatac {

/// Giant-tour chromosome: a signed permutation of 1..n. A positive gene is a
/// truck customer, a negative gene a drone customer. Depots are not stored;
/// the decoder affixes 0 and 0' around the genes.
struct Chromosome {
    std::vector<int> genes;

    Chromosome() = default;
    explicit Chromosome(std::vector<int> g) : genes(std::move(g)) {}

    int size() const { return static_cast<int>(genes.size()); }
    bool is_drone(int pos) const { return genes[static_cast<std::size_t>(pos)] < 0; }
    int customer(int pos) const { return std::abs(genes[static_cast<std::size_t>(pos)]); }

    bool operator==(const Chromosome& other) const = default;

    /// Comma separated signed genes, e.g. "4,-2,6,9,-5,3".
    std::string to_string() const;
    static Chromosome from_string(const std::string& text);
};

enum class FeasibilityClass { Feasible, Type1, Type2 };

const char* to_string(FeasibilityClass c);

struct ChromosomeViolation {
    enum Kind { Length, NotPermutation, ZeroGene, Ineligible };
    Kind kind;
    std::string message;
};

/// Structural checks against an instance: length n, each customer exactly
/// once, no zero gene, negative genes only on drone-eligible customers.
/// Returns all violations found; empty means valid.
std::vector<ChromosomeViolation> validate(const Chromosome& ch, const Instance& inst);

/// Two or more consecutive negative genes make a chromosome type-1 infeasible.
bool has_adjacent_drone_genes(const Chromosome& ch);

/// Position-wise normalized Hamming distance between two equal-length
/// chromosomes; a sign difference counts as a mismatch.
double hamming_distance(const Chromosome& a, const Chromosome& b);

} // namespace hgatac
