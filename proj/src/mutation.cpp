#include "hgatac/mutation.hpp"

#include <algorithm>
#include <stdexcept>

namespace hgatac {

void sign_mutation(Chromosome& ch, const Instance& inst, Rng& rng, double per_gene) {
    for (int i = 0; i < ch.size(); ++i) {
        if (!chance(rng, per_gene)) continue;
        int& g = ch.genes[static_cast<std::size_t>(i)];
        if (g < 0) {
            g = -g;
        } else if (inst.drone_eligible(g)) {
            g = -g;
        }
    }
}

void tour_mutation(Chromosome& ch, Rng& rng) {
    const int n = ch.size();
    if (n < 2) return;
    int a = uniform_int(rng, 0, n - 1);
    int b = uniform_int(rng, 0, n - 1);
    if (a > b) std::swap(a, b);
    std::shuffle(ch.genes.begin() + a, ch.genes.begin() + b + 1, rng);
}

void mutate(Chromosome& ch, const Instance& inst, Rng& rng, double per_gene) {
    if (chance(rng, 0.5))
        sign_mutation(ch, inst, rng, per_gene);
    else
        tour_mutation(ch, rng);
}

Chromosome repair(const Chromosome& ch, const Instance& inst, Rng& rng, double w1, double w2) {
    Chromosome out = ch;
    const int n = out.size();

    // collapse runs of adjacent drone genes, keeping one survivor per run
    int i = 0;
    while (i < n) {
        if (!out.is_drone(i)) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && out.is_drone(j + 1)) ++j;
        if (j > i) {
            const int keep = uniform_int(rng, i, j);
            for (int p = i; p <= j; ++p)
                if (p != keep) out.genes[static_cast<std::size_t>(p)] = out.customer(p);
        }
        i = j + 1;
    }

    std::vector<int> pos_of(static_cast<std::size_t>(n) + 1, -1);
    for (int p = 0; p < n; ++p) pos_of[static_cast<std::size_t>(out.customer(p))] = p;

    JoinDecoder decoder(inst);
    while (true) {
        DecodedSolution sol = decoder.decode(out, w1, w2);
        if (!sol.range_violation) break;
        bool flipped = false;
        for (const Operation& op : sol.operations) {
            if (!op.violates_endurance) continue;
            for (int customer : op.chain) {
                int p = pos_of[static_cast<std::size_t>(customer)];
                if (out.genes[static_cast<std::size_t>(p)] < 0) {
                    out.genes[static_cast<std::size_t>(p)] = customer;
                    flipped = true;
                }
            }
        }
        if (!flipped)
            throw std::logic_error("repair: violation reported without a violating sortie");
    }
    return out;
}

} // namespace hgatac
