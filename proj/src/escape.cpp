#include "hgatac/escape.hpp"

#include <algorithm>

#include "hgatac/decode.hpp"

namespace hgatac {

EscapeResult escape_local_optima(const Instance& inst, const Chromosome& omega_local,
                                 LocalSearch& ls, const SolverConfig& cfg, double w1, double w2,
                                 Rng& rng) {
    JoinDecoder decoder(inst);

    struct Entry {
        Chromosome ch;
        double cost;
        bool range_violation;
        bool type1;
    };
    std::vector<Entry> buffer;
    buffer.reserve(static_cast<std::size_t>(cfg.escape_capacity));

    const auto local_info = decoder.cost(omega_local, w1, w2);
    const double local_cost = local_info.cost;
    double best_cost = local_cost;
    buffer.push_back({omega_local, local_cost, local_info.range_violation,
                      has_adjacent_drone_genes(omega_local)});

    auto contains = [&](const Chromosome& ch) {
        return std::any_of(buffer.begin(), buffer.end(),
                           [&](const Entry& e) { return e.ch == ch; });
    };
    auto add = [&](Entry e) {
        if (static_cast<int>(buffer.size()) < cfg.escape_capacity) {
            buffer.push_back(std::move(e));
            return;
        }
        auto worst = std::max_element(buffer.begin(), buffer.end(),
                                      [](const Entry& a, const Entry& b) { return a.cost < b.cost; });
        *worst = std::move(e);
    };

    Chromosome candidate;
    for (int iter = 0; iter < cfg.escape_max_iter; ++iter) {
        candidate = buffer[static_cast<std::size_t>(
                               uniform_int(rng, 0, static_cast<int>(buffer.size()) - 1))]
                        .ch;
        if (!ls.random_move(candidate, rng)) continue;
        if (contains(candidate)) continue;
        const auto info = decoder.cost(candidate, w1, w2);
        const bool type1 = has_adjacent_drone_genes(candidate);
        if (info.cost < best_cost) {
            best_cost = info.cost;
            add({std::move(candidate), info.cost, info.range_violation, type1});
        } else if ((info.cost - best_cost) / best_cost < cfg.escape_epsilon) {
            add({std::move(candidate), info.cost, info.range_violation, type1});
        }
    }

    EscapeResult out;
    out.best_cost = best_cost;
    out.buffer_size = static_cast<int>(buffer.size());
    for (Entry& e : buffer) {
        if (e.cost < local_cost && !e.type1 && !e.range_violation)
            out.improved.push_back({std::move(e.ch), e.cost, e.range_violation});
    }
    return out;
}

} // namespace hgatac
