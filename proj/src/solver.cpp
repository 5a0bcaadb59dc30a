#include "hgatac/solver.hpp"

#include <chrono>
#include <stdexcept>

#include "hgatac/crossover.hpp"
#include "hgatac/escape.hpp"
#include "hgatac/local_search.hpp"
#include "hgatac/mutation.hpp"
#include "hgatac/population.hpp"
#include "hgatac/seeding.hpp"

namespace hgatac {

const char* to_string(Variant v) { return v == Variant::Tac ? "tac" : "tac-plus"; }

Variant variant_from_string(const std::string& text) {
    if (text == "tac") return Variant::Tac;
    if (text == "tac-plus" || text == "tac+") return Variant::TacPlus;
    throw std::invalid_argument("unknown variant: " + text);
}

RunResult solve(const Instance& inst, const SolverConfig& cfg, Variant variant,
                const std::vector<int>* tsp_tour) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    Rng rng(cfg.seed);
    SeededPopulation seeded = initial_population(inst, cfg, rng, tsp_tour);
    Population& pop = seeded.pop;
    LocalSearch ls(inst, cfg);
    JoinDecoder decoder(inst);
    const bool escape_on = variant == Variant::TacPlus && cfg.enable_escape;

    const Member* seed_best = pop.best_feasible();
    if (seed_best == nullptr) throw std::logic_error("seeding produced no feasible member");
    RunResult out;
    out.best = seed_best->ch;
    out.cost = seed_best->cost;

    auto pull_incumbent = [&] {
        const Member* m = pop.best_feasible();
        if (m != nullptr && m->cost < out.cost) {
            out.cost = m->cost;
            out.best = m->ch;
            return true;
        }
        return false;
    };

    auto insert_with_pruning = [&](FeasibilityClass cls, Member m) {
        pop.insert(cls, std::move(m));
        if (pop.size(cls) == cfg.mu + cfg.lambda) pop.select_survivors(cls);
    };

    int no_improve = 0;
    int iter = 0;
    while (no_improve < cfg.it_ni) {
        if (cfg.time_limit_s > 0.0 && elapsed() > cfg.time_limit_s) break;
        ++iter;

        Chromosome child;
        {
            const Member& p1 = pop.tournament_select(rng);
            const Member& p2 = pop.tournament_select(rng);
            child = crossover(p1.ch, p2.ch, rng);
        }
        if (chance(rng, cfg.p_mutation)) mutate(child, inst, rng, cfg.sign_flip_prob);

        JoinDecoder::CostInfo info = ls.improve(child, pop.w1(), pop.w2(), rng);
        FeasibilityClass cls = has_adjacent_drone_genes(child) ? FeasibilityClass::Type1
                               : info.range_violation          ? FeasibilityClass::Type2
                                                               : FeasibilityClass::Feasible;
        pop.record_offspring_class(cls);

        if (cls != FeasibilityClass::Feasible && chance(rng, cfg.p_repair)) {
            child = repair(child, inst, rng, pop.w1(), pop.w2());
            info = decoder.cost(child, pop.w1(), pop.w2());
            cls = FeasibilityClass::Feasible;
        }
        const double child_cost = info.cost;
        insert_with_pruning(cls, Member{std::move(child), info.cost, info.range_violation, 0});

        bool improved = false;
        if (cls == FeasibilityClass::Feasible && child_cost < out.cost) {
            const SubPopulation& f = pop.subpop(FeasibilityClass::Feasible);
            out.cost = child_cost;
            out.best = f.member(f.cost_best_index()).ch;
            improved = true;
        }

        pop.adjust_penalties();

        if (!improved) {
            ++no_improve;
            if (no_improve % cfg.it_div == 0) {
                pop.truncate_for_diversify();
                fill_subpopulations(pop, seeded.omega0, inst, cfg, rng);
                improved = pull_incumbent();
            }
            if (!improved && escape_on && no_improve % cfg.it_loc == 0) {
                EscapeResult esc =
                    escape_local_optima(inst, out.best, ls, cfg, pop.w1(), pop.w2(), rng);
                for (EscapeCandidate& cand : esc.improved)
                    insert_with_pruning(FeasibilityClass::Feasible,
                                        Member{std::move(cand.ch), cand.cost, false, 0});
                improved = pull_incumbent();
            }
        }
        if (improved) no_improve = 0;

        out.trace.push_back({iter, out.cost, pop.w1(), pop.w2(),
                             pop.size(FeasibilityClass::Feasible),
                             pop.size(FeasibilityClass::Type1),
                             pop.size(FeasibilityClass::Type2)});
    }

    out.iterations = iter;
    out.wall_seconds = elapsed();
    out.solution = join_feasible(inst, out.best);
    return out;
}

} // namespace hgatac
