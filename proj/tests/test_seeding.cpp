#include <algorithm>
#include <limits>
#include <set>
#include <vector>

#include "doctest.h"
#include "hgatac/oracle.hpp"
#include "hgatac/seeding.hpp"
#include "test_instances.hpp"

using namespace hgatac;

namespace {

double nearest_neighbor_cost(const Instance& inst) {
    const int n = inst.customers();
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    int at = inst.start_depot();
    double total = 0.0;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int c = 1; c <= n; ++c) {
            if (used[static_cast<std::size_t>(c)]) continue;
            const double t = inst.truck_time(at, c);
            if (t < best) {
                best = t;
                pick = c;
            }
        }
        used[static_cast<std::size_t>(pick)] = true;
        total += best;
        at = pick;
    }
    return total + inst.truck_time(at, inst.return_depot());
}

double tour_cost(const Instance& inst, const std::vector<int>& tour) {
    std::vector<int> path;
    path.push_back(inst.start_depot());
    path.insert(path.end(), tour.begin(), tour.end());
    path.push_back(inst.return_depot());
    return truck_leg_time(inst, path);
}

/// Reference split: best over all sign patterns without adjacent drone genes,
/// each priced by the rendezvous oracle. Exponential, for tiny n only.
double brute_force_partition(const Instance& inst, const std::vector<int>& tour) {
    const int n = static_cast<int>(tour.size());
    double best = std::numeric_limits<double>::infinity();
    for (int mask = 0; mask < (1 << n); ++mask) {
        if ((mask & (mask << 1)) != 0) continue; // adjacent drone genes
        std::vector<int> genes(tour.begin(), tour.end());
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1) {
                if (!inst.drone_eligible(genes[static_cast<std::size_t>(i)])) {
                    ok = false;
                    break;
                }
                genes[static_cast<std::size_t>(i)] = -genes[static_cast<std::size_t>(i)];
            }
        }
        if (!ok) continue;
        const RendezvousResult r = enumerate_rendezvous(inst, Chromosome(genes));
        if (r.feasible && r.best < best) best = r.best;
    }
    return best;
}

} // namespace

TEST_CASE("the tour builder is deterministic and beats nearest neighbor") {
    for (int seed : {3, 14, 159}) {
        const Instance inst = fixtures::random_instance(12, 2.0, seed);
        const std::vector<int> tour = build_tsp_tour(inst);
        CHECK(tour == build_tsp_tour(inst));
        CHECK(static_cast<int>(tour.size()) == 12);
        std::set<int> unique(tour.begin(), tour.end());
        CHECK(static_cast<int>(unique.size()) == 12);
        CHECK(*unique.begin() == 1);
        CHECK(*unique.rbegin() == 12);
        CHECK(tour_cost(inst, tour) <= nearest_neighbor_cost(inst) + 1e-9);
    }
}

TEST_CASE("exact partition reproduces the worked example") {
    const Instance inst = fixtures::demo_instance();
    const PartitionResult r = exact_partition(inst, {1, 2, 3, 4, 5});
    CHECK(r.cost == 25.0);
    CHECK(r.ch.genes == std::vector<int>{-1, 2, -3, 4, -5});
    CHECK(join_feasible(inst, r.ch).completion_time == 25.0);
}

TEST_CASE("exact partition never loses to the plain truck tour") {
    for (int seed = 0; seed < 10; ++seed) {
        GenOptions opts;
        if (seed % 2 == 1) opts.endurance = 70.0;
        const Instance inst = fixtures::random_instance(9, 2.0, 40 + seed, opts);
        const std::vector<int> tour = build_tsp_tour(inst);
        const PartitionResult r = exact_partition(inst, tour);
        CHECK(r.cost <= tour_cost(inst, tour) + 1e-9);
        // The reported cost is exactly what the decoder assigns the result.
        const DecodedSolution sol = join_feasible(inst, r.ch);
        CHECK_FALSE(sol.range_violation);
        CHECK(sol.completion_time == doctest::Approx(r.cost).epsilon(1e-12));
    }
}

TEST_CASE("exact partition matches brute force over sign patterns") {
    for (int trial = 0; trial < 8; ++trial) {
        GenOptions opts;
        if (trial % 2 == 1) opts.endurance = 60.0;
        if (trial % 4 >= 2) {
            opts.kind = ProblemKind::Fstsp;
            opts.endurance = 90.0;
        }
        const Instance inst = fixtures::random_instance(7, 2.0, 600 + trial, opts);
        const std::vector<int> tour = build_tsp_tour(inst);
        const PartitionResult r = exact_partition(inst, tour);
        CHECK(r.cost == doctest::Approx(brute_force_partition(inst, tour)).epsilon(1e-9));
    }
}

TEST_CASE("perturbations of the seed stay structurally valid") {
    const Instance inst = fixtures::random_instance(8, 2.0, 77);
    SolverConfig cfg;
    Rng rng(5);
    const Chromosome base = exact_partition(inst, build_tsp_tour(inst)).ch;
    bool changed = false;
    for (int trial = 0; trial < 500; ++trial) {
        const Chromosome p = perturb(base, inst, cfg, rng);
        CHECK(validate(p, inst).empty());
        changed = changed || p.genes != base.genes;
    }
    CHECK(changed);
}

TEST_CASE("seeding fills every reachable class up to mu") {
    SolverConfig cfg;
    cfg.mu = 6;
    cfg.lambda = 5;

    // Unlimited range: feasible and type-1 subpopulations fill completely.
    {
        const Instance inst = fixtures::random_instance(7, 2.0, 11);
        Rng rng(2);
        SeededPopulation seeded = initial_population(inst, cfg, rng);
        CHECK(seeded.pop.size(FeasibilityClass::Feasible) == cfg.mu);
        CHECK(seeded.pop.size(FeasibilityClass::Type1) == cfg.mu);
        CHECK_FALSE(seeded.pop.has_subpop(FeasibilityClass::Type2));
        CHECK(validate(seeded.omega0, inst).empty());
        CHECK_FALSE(has_adjacent_drone_genes(seeded.omega0));
        const DecodedSolution sol = join_feasible(inst, seeded.omega0);
        CHECK_FALSE(sol.range_violation);
        CHECK(sol.completion_time == doctest::Approx(seeded.omega0_cost));
        // Members of the feasible class decode clean; the best one is real.
        const Member* best = seeded.pop.best_feasible();
        REQUIRE(best != nullptr);
        CHECK(best->cost <= seeded.omega0_cost + 1e-9);
    }

    // Finite range: the type-2 subpopulation exists and gets filled as well.
    {
        GenOptions opts;
        opts.endurance = 60.0;
        const Instance inst = fixtures::random_instance(7, 2.0, 12, opts);
        Rng rng(3);
        SeededPopulation seeded = initial_population(inst, cfg, rng);
        CHECK(seeded.pop.size(FeasibilityClass::Feasible) == cfg.mu);
        CHECK(seeded.pop.size(FeasibilityClass::Type1) == cfg.mu);
        CHECK(seeded.pop.size(FeasibilityClass::Type2) == cfg.mu);
    }
}

TEST_CASE("a supplied tour overrides the built-in construction") {
    const Instance inst = fixtures::demo_instance();
    SolverConfig cfg;
    cfg.mu = 3;
    cfg.lambda = 3;
    Rng rng(4);
    const std::vector<int> tour{1, 2, 3, 4, 5};
    SeededPopulation seeded = initial_population(inst, cfg, rng, &tour);
    CHECK(seeded.omega0_cost == 25.0);
    CHECK(seeded.omega0.genes == std::vector<int>{-1, 2, -3, 4, -5});
}
