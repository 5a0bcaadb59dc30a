#include "hgatac/chromosome.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace hgatac {

std::string Chromosome::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(genes[i]);
    }
    return out;
}

Chromosome Chromosome::from_string(const std::string& text) {
    Chromosome ch;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t a = tok.find_first_not_of(" \t");
        std::size_t b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) throw std::invalid_argument("empty gene token");
        tok = tok.substr(a, b - a + 1);
        int value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw std::invalid_argument("bad gene token: " + tok);
        ch.genes.push_back(value);
    }
    return ch;
}

const char* to_string(FeasibilityClass c) {
    switch (c) {
        case FeasibilityClass::Feasible: return "feasible";
        case FeasibilityClass::Type1: return "type1";
        case FeasibilityClass::Type2: return "type2";
    }
    return "?";
}

std::vector<ChromosomeViolation> validate(const Chromosome& ch, const Instance& inst) {
    std::vector<ChromosomeViolation> out;
    const int n = inst.customers();
    if (ch.size() != n) {
        out.push_back({ChromosomeViolation::Length,
                       "expected " + std::to_string(n) + " genes, got " + std::to_string(ch.size())});
        return out;
    }
    std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int pos = 0; pos < n; ++pos) {
        int g = ch.genes[static_cast<std::size_t>(pos)];
        if (g == 0) {
            out.push_back({ChromosomeViolation::ZeroGene, "gene 0 at position " + std::to_string(pos)});
            continue;
        }
        int c = std::abs(g);
        if (c > n) {
            out.push_back({ChromosomeViolation::NotPermutation,
                           "customer " + std::to_string(c) + " out of range"});
            continue;
        }
        if (++seen[static_cast<std::size_t>(c)] > 1)
            out.push_back({ChromosomeViolation::NotPermutation,
                           "customer " + std::to_string(c) + " repeated"});
        if (g < 0 && !inst.drone_eligible(c))
            out.push_back({ChromosomeViolation::Ineligible,
                           "customer " + std::to_string(c) + " is not drone eligible"});
    }
    for (int c = 1; c <= n; ++c)
        if (seen[static_cast<std::size_t>(c)] == 0)
            out.push_back({ChromosomeViolation::NotPermutation,
                           "customer " + std::to_string(c) + " missing"});
    return out;
}

bool has_adjacent_drone_genes(const Chromosome& ch) {
    for (int pos = 0; pos + 1 < ch.size(); ++pos)
        if (ch.genes[static_cast<std::size_t>(pos)] < 0 &&
            ch.genes[static_cast<std::size_t>(pos) + 1] < 0)
            return true;
    return false;
}

double hamming_distance(const Chromosome& a, const Chromosome& b) {
    if (a.size() != b.size() || a.size() == 0)
        throw std::invalid_argument("hamming distance needs equal nonempty chromosomes");
    int mismatches = 0;
    for (int i = 0; i < a.size(); ++i)
        if (a.genes[static_cast<std::size_t>(i)] != b.genes[static_cast<std::size_t>(i)])
            ++mismatches;
    return static_cast<double>(mismatches) / static_cast<double>(a.size());
}

} // namespace hgatac
