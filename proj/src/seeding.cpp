#include "hgatac/seeding.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hgatac/decode.hpp"

namespace hgatac {

namespace {

constexpr double kImproveEps = 1e-9;

/// Applies the first improving 2-opt or Or-opt move to the depot-to-depot
/// path; returns false at local optimality. Works on asymmetric matrices by
/// carrying both forward and reversed leg prefix sums.
bool improve_path_once(const Instance& inst, std::vector<int>& path) {
    const int last = static_cast<int>(path.size()) - 1;
    std::vector<double> fwd(path.size(), 0.0);
    std::vector<double> rev(path.size(), 0.0);
    for (int k = 1; k <= last; ++k) {
        fwd[static_cast<std::size_t>(k)] = fwd[static_cast<std::size_t>(k) - 1] +
                                           inst.truck_time(path[static_cast<std::size_t>(k) - 1],
                                                           path[static_cast<std::size_t>(k)]);
        rev[static_cast<std::size_t>(k)] = rev[static_cast<std::size_t>(k) - 1] +
                                           inst.truck_time(path[static_cast<std::size_t>(k)],
                                                           path[static_cast<std::size_t>(k) - 1]);
    }
    auto leg = [&](int a, int b) {
        return inst.truck_time(path[static_cast<std::size_t>(a)], path[static_cast<std::size_t>(b)]);
    };

    for (int i = 1; i < last; ++i) {
        for (int j = i + 1; j < last; ++j) {
            const double delta = leg(i - 1, j) + leg(i, j + 1) +
                                 (rev[static_cast<std::size_t>(j)] - rev[static_cast<std::size_t>(i)]) -
                                 leg(i - 1, i) - leg(j, j + 1) -
                                 (fwd[static_cast<std::size_t>(j)] - fwd[static_cast<std::size_t>(i)]);
            if (delta < -kImproveEps) {
                std::reverse(path.begin() + i, path.begin() + j + 1);
                return true;
            }
        }
    }

    for (int len = 1; len <= 3; ++len) {
        for (int i = 1; i + len - 1 < last; ++i) {
            const int end = i + len - 1;
            const double detach = leg(i - 1, end + 1) - leg(i - 1, i) - leg(end, end + 1);
            for (int k = 0; k < last; ++k) {
                if (k >= i - 1 && k <= end) continue;
                const double delta = detach - leg(k, k + 1) + leg(k, i) + leg(end, k + 1);
                if (delta < -kImproveEps) {
                    std::vector<int> block(path.begin() + i, path.begin() + end + 1);
                    path.erase(path.begin() + i, path.begin() + end + 1);
                    const int slot = k < i ? k + 1 : k + 1 - len;
                    path.insert(path.begin() + slot, block.begin(), block.end());
                    return true;
                }
            }
        }
    }
    return false;
}

} // namespace

std::vector<int> build_tsp_tour(const Instance& inst) {
    const int n = inst.customers();
    std::vector<int> path;
    path.reserve(static_cast<std::size_t>(n) + 2);
    path.push_back(inst.start_depot());
    std::vector<std::uint8_t> used(static_cast<std::size_t>(n) + 1, 0);
    int cur = inst.start_depot();
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int c = 1; c <= n; ++c) {
            if (used[static_cast<std::size_t>(c)]) continue;
            if (best < 0 || inst.truck_time(cur, c) < inst.truck_time(cur, best)) best = c;
        }
        used[static_cast<std::size_t>(best)] = 1;
        path.push_back(best);
        cur = best;
    }
    path.push_back(inst.return_depot());

    while (improve_path_once(inst, path)) {
    }

    return {path.begin() + 1, path.end() - 1};
}

PartitionResult exact_partition(const Instance& inst, const std::vector<int>& tour) {
    const int n = static_cast<int>(tour.size());
    if (n != inst.customers()) throw std::invalid_argument("tour length does not match instance");
    {
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) + 1, 0);
        for (int c : tour) {
            if (c < 1 || c > n || seen[static_cast<std::size_t>(c)])
                throw std::invalid_argument("tour is not a permutation of the customers");
            seen[static_cast<std::size_t>(c)] = 1;
        }
    }

    const AssumptionProfile& prof = inst.profile();
    const bool stationary = prof.stationary_truck_rendezvous;
    const double e = prof.endurance;
    const bool fstsp = prof.kind == ProblemKind::Fstsp;

    std::vector<int> node(static_cast<std::size_t>(n) + 2);
    node[0] = inst.start_depot();
    for (int p = 1; p <= n; ++p) node[static_cast<std::size_t>(p)] = tour[static_cast<std::size_t>(p) - 1];
    node[static_cast<std::size_t>(n) + 1] = inst.return_depot();

    auto tt = [&](int a, int b) {
        return inst.truck_time(node[static_cast<std::size_t>(a)], node[static_cast<std::size_t>(b)]);
    };
    auto dt = [&](int a, int b) {
        return inst.drone_time(node[static_cast<std::size_t>(a)], node[static_cast<std::size_t>(b)]);
    };

    // Prefix sums of consecutive position legs; bridge(q) removes position q
    // from a consecutive walk.
    std::vector<double> pre(static_cast<std::size_t>(n) + 2, 0.0);
    for (int p = 1; p <= n + 1; ++p)
        pre[static_cast<std::size_t>(p)] = pre[static_cast<std::size_t>(p) - 1] + tt(p - 1, p);
    auto bridge = [&](int q) { return tt(q - 1, q) + tt(q, q + 1) - tt(q - 1, q + 1); };

    struct Rec {
        enum Kind : std::uint8_t { Terminal, Truck, Launch };
        Kind kind = Terminal;
        int q = -1;
        int k = -1;
        bool stationary = false;
    };

    // S[p]: truck at position p, everything up to p served, drone aboard.
    // V[q]: drone customer q just served by a sortie that landed on position
    // q-1's node; the truck still has to pass q's neighborhood.
    std::vector<double> S(static_cast<std::size_t>(n) + 2, kUnreachable);
    std::vector<double> V(static_cast<std::size_t>(n) + 2, kUnreachable);
    std::vector<Rec> recS(static_cast<std::size_t>(n) + 2);
    std::vector<Rec> recV(static_cast<std::size_t>(n) + 2);

    S[static_cast<std::size_t>(n) + 1] = 0.0;

    // Shared transition generator. `at` is the truck position, `served_q` the
    // drone position already handled when evaluating a virtual state (-1 for
    // real states). Launch positions start after max(at, served_q).
    auto eval = [&](int at, int served_q, Rec& rec) {
        double best = kUnreachable;
        rec = Rec{};

        const int first_unserved = std::max(at, served_q) + 1;
        auto skipped = [&](int upto) {
            return served_q > at && served_q < upto ? bridge(served_q) : 0.0;
        };

        if (first_unserved <= n + 1) { // move the truck one position forward
            const double c = pre[static_cast<std::size_t>(first_unserved)] -
                             pre[static_cast<std::size_t>(at)] - skipped(first_unserved) +
                             S[static_cast<std::size_t>(first_unserved)];
            if (c < best) {
                best = c;
                rec.kind = Rec::Truck;
                rec.k = first_unserved;
            }
        } else if (at == n + 1) {
            best = 0.0;
            rec.kind = Rec::Terminal;
        }

        const int min_q = served_q >= 0 ? served_q + 2 : at + 1;
        for (int q = min_q; q <= n; ++q) {
            if (!inst.drone_eligible(node[static_cast<std::size_t>(q)])) continue;
            const double launch_leg = dt(at, q);
            const int chain[1] = {node[static_cast<std::size_t>(q)]};

            if (stationary && q >= first_unserved + 1) {
                const double truck_leg = pre[static_cast<std::size_t>(q) - 1] -
                                         pre[static_cast<std::size_t>(at)] - skipped(q - 1);
                const double flight = launch_leg + dt(q, q - 1);
                if (flight <= e) {
                    const double c = operation_time(inst, truck_leg, node[static_cast<std::size_t>(at)],
                                                    chain, node[static_cast<std::size_t>(q) - 1], false) +
                                     V[static_cast<std::size_t>(q)];
                    if (c < best) {
                        best = c;
                        rec.kind = Rec::Launch;
                        rec.q = q;
                        rec.k = q - 1;
                        rec.stationary = true;
                    }
                }
            }

            for (int k = q + 1; k <= n + 1; ++k) {
                const double truck_leg = pre[static_cast<std::size_t>(k)] -
                                         pre[static_cast<std::size_t>(at)] - skipped(k) - bridge(q);
                const double flight = launch_leg + dt(q, k);
                bool ok;
                bool relaunch = false;
                if (!fstsp) {
                    ok = flight <= e;
                } else {
                    relaunch = recS[static_cast<std::size_t>(k)].kind == Rec::Launch;
                    const double truck_side = truck_leg + prof.retrieval_setup +
                                              (relaunch ? prof.launch_setup : 0.0);
                    ok = truck_side <= e && flight + prof.retrieval_setup <= e;
                }
                if (!ok) continue;
                const double c = operation_time(inst, truck_leg, node[static_cast<std::size_t>(at)],
                                                chain, node[static_cast<std::size_t>(k)], relaunch) +
                                 S[static_cast<std::size_t>(k)];
                if (c < best) {
                    best = c;
                    rec.kind = Rec::Launch;
                    rec.q = q;
                    rec.k = k;
                    rec.stationary = false;
                }
            }
        }
        return best;
    };

    for (int p = n; p >= 0; --p) {
        if (stationary && p + 1 <= n)
            V[static_cast<std::size_t>(p) + 1] = eval(p, p + 1, recV[static_cast<std::size_t>(p) + 1]);
        S[static_cast<std::size_t>(p)] = eval(p, -1, recS[static_cast<std::size_t>(p)]);
    }

    if (S[0] >= kUnreachable) throw std::logic_error("partition found no feasible assignment");

    std::vector<std::uint8_t> drone(static_cast<std::size_t>(n) + 2, 0);
    bool virt = false;
    int s = 0;
    while (true) {
        const Rec& rec = virt ? recV[static_cast<std::size_t>(s)] : recS[static_cast<std::size_t>(s)];
        if (rec.kind == Rec::Terminal) break;
        if (rec.kind == Rec::Truck) {
            virt = false;
            s = rec.k;
            continue;
        }
        drone[static_cast<std::size_t>(rec.q)] = 1;
        if (rec.stationary) {
            virt = true;
            s = rec.q;
        } else {
            virt = false;
            s = rec.k;
        }
    }

    PartitionResult out;
    out.cost = S[0];
    out.ch.genes.resize(static_cast<std::size_t>(n));
    for (int p = 1; p <= n; ++p)
        out.ch.genes[static_cast<std::size_t>(p) - 1] =
            drone[static_cast<std::size_t>(p)] ? -tour[static_cast<std::size_t>(p) - 1]
                                               : tour[static_cast<std::size_t>(p) - 1];
    return out;
}

Chromosome perturb(const Chromosome& base, const Instance& inst, const SolverConfig& cfg,
                   Rng& rng) {
    Chromosome ch = base;
    const int n = ch.size();
    if (n == 0) return ch;

    auto flip = [&](int i) {
        if (ch.is_drone(i))
            ch.genes[static_cast<std::size_t>(i)] = ch.customer(i);
        else if (inst.drone_eligible(ch.customer(i)))
            ch.genes[static_cast<std::size_t>(i)] = -ch.genes[static_cast<std::size_t>(i)];
    };

    if (chance(rng, 0.5)) {
        for (int i = 0; i < n; ++i) {
            if (chance(rng, cfg.sign_flip_prob)) flip(i);
            if (n > 1 && chance(rng, cfg.swap_prob)) {
                int j = chance(rng, 0.5) ? i + 1 : i - 1;
                if (j < 0) j = i + 1; // boundary genes only have one neighbor
                if (j >= n) j = i - 1;
                std::swap(ch.genes[static_cast<std::size_t>(i)],
                          ch.genes[static_cast<std::size_t>(j)]);
            }
        }
    } else {
        int i1 = uniform_int(rng, 0, n - 1);
        int i2 = uniform_int(rng, 0, n - 1);
        if (i1 > i2) std::swap(i1, i2);
        switch (uniform_int(rng, 0, 2)) {
            case 0:
                std::reverse(ch.genes.begin() + i1, ch.genes.begin() + i2 + 1);
                break;
            case 1:
                for (int i = i1; i <= i2; ++i) flip(i);
                break;
            default:
                std::shuffle(ch.genes.begin() + i1, ch.genes.begin() + i2 + 1, rng);
                break;
        }
    }
    return ch;
}

namespace {

std::vector<int> eligible_customers(const Instance& inst) {
    std::vector<int> out;
    for (int c = 1; c <= inst.customers(); ++c)
        if (inst.drone_eligible(c)) out.push_back(c);
    return out;
}

Chromosome random_truck_permutation(const Instance& inst, Rng& rng) {
    std::vector<int> genes(static_cast<std::size_t>(inst.customers()));
    std::iota(genes.begin(), genes.end(), 1);
    std::shuffle(genes.begin(), genes.end(), rng);
    return Chromosome(std::move(genes));
}

} // namespace

void fill_subpopulations(Population& pop, const Chromosome& omega0, const Instance& inst,
                         const SolverConfig& cfg, Rng& rng) {
    JoinDecoder decoder(inst);
    const int n = inst.customers();
    const std::vector<int> eligible = eligible_customers(inst);

    auto try_insert = [&](Chromosome ch) {
        const auto info = decoder.cost(ch, pop.w1(), pop.w2());
        const FeasibilityClass cls = has_adjacent_drone_genes(ch) ? FeasibilityClass::Type1
                                     : info.range_violation      ? FeasibilityClass::Type2
                                                                 : FeasibilityClass::Feasible;
        if (!pop.has_subpop(cls) || pop.size(cls) >= cfg.mu) return;
        pop.insert(cls, Member{std::move(ch), info.cost, info.range_violation, 0});
    };

    const bool want_type1 = n >= 2 && eligible.size() >= 2;
    const bool want_type2 = pop.has_subpop(FeasibilityClass::Type2) && !eligible.empty();
    auto underfull = [&](FeasibilityClass cls) { return pop.size(cls) < cfg.mu; };
    auto any_missing = [&]() {
        if (underfull(FeasibilityClass::Feasible)) return true;
        if (want_type1 && underfull(FeasibilityClass::Type1)) return true;
        if (want_type2 && underfull(FeasibilityClass::Type2)) return true;
        return false;
    };

    const std::uint64_t cap = cfg.fill_cap_per_mu * static_cast<std::uint64_t>(cfg.mu);
    for (std::uint64_t attempt = 0; attempt < cap && any_missing(); ++attempt)
        try_insert(perturb(omega0, inst, cfg, rng));

    // Targeted top-ups for classes the random walk did not reach.
    if (want_type1) {
        int guard = 64 * cfg.mu;
        while (underfull(FeasibilityClass::Type1) && guard-- > 0) {
            Chromosome ch = random_truck_permutation(inst, rng);
            const int a = eligible[static_cast<std::size_t>(
                uniform_int(rng, 0, static_cast<int>(eligible.size()) - 1))];
            int b = a;
            while (b == a)
                b = eligible[static_cast<std::size_t>(
                    uniform_int(rng, 0, static_cast<int>(eligible.size()) - 1))];
            auto& g = ch.genes;
            g.erase(std::remove(g.begin(), g.end(), a), g.end());
            g.erase(std::remove(g.begin(), g.end(), b), g.end());
            const int slot = uniform_int(rng, 0, static_cast<int>(g.size()));
            g.insert(g.begin() + slot, {-a, -b});
            try_insert(std::move(ch));
        }
    }
    if (want_type2) {
        // Bias toward customers whose round trip from the depot is longest;
        // they are the likeliest to break the endurance budget anywhere.
        std::vector<int> far = eligible;
        std::sort(far.begin(), far.end(), [&](int a, int b) {
            return inst.drone_time(0, a) + inst.drone_time(a, 0) >
                   inst.drone_time(0, b) + inst.drone_time(b, 0);
        });
        if (far.size() > 3) far.resize(3);
        int guard = 256 * cfg.mu;
        while (underfull(FeasibilityClass::Type2) && guard-- > 0) {
            Chromosome ch = random_truck_permutation(inst, rng);
            const int c = far[static_cast<std::size_t>(
                uniform_int(rng, 0, static_cast<int>(far.size()) - 1))];
            for (auto& gene : ch.genes)
                if (gene == c) gene = -c;
            const auto info = decoder.cost(ch, pop.w1(), pop.w2());
            if (!info.range_violation) continue;
            if (pop.size(FeasibilityClass::Type2) >= cfg.mu) break;
            pop.insert(FeasibilityClass::Type2, Member{std::move(ch), info.cost, true, 0});
        }
    }
    while (underfull(FeasibilityClass::Feasible)) {
        Chromosome ch = random_truck_permutation(inst, rng);
        const auto info = decoder.cost(ch, pop.w1(), pop.w2());
        pop.insert(FeasibilityClass::Feasible, Member{std::move(ch), info.cost, false, 0});
    }
}

SeededPopulation initial_population(const Instance& inst, const SolverConfig& cfg, Rng& rng,
                                    const std::vector<int>* tour) {
    cfg.validate();
    const std::vector<int> order = tour ? *tour : build_tsp_tour(inst);
    PartitionResult seed = exact_partition(inst, order);

    SeededPopulation out{Population(inst, cfg), std::move(seed.ch), seed.cost};
    JoinDecoder decoder(inst);
    const DecodedSolution dec = decoder.decode_feasible(out.omega0);
    if (dec.range_violation)
        throw std::logic_error("partition produced an endurance-violating seed");
    out.pop.insert(FeasibilityClass::Feasible,
                   Member{out.omega0, dec.completion_time, false, 0});
    fill_subpopulations(out.pop, out.omega0, inst, cfg, rng);
    return out;
}

} // namespace hgatac
