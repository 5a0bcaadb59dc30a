#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <vector>

#include "hgatac/chromosome.hpp"
#include "hgatac/config.hpp"
#include "hgatac/decode.hpp"
#include "hgatac/instance.hpp"
#include "hgatac/rng.hpp"

namespace hgatac {

struct Member {
    Chromosome ch;
    /// Decoded completion time; penalized with the w1/w2 current at decode
    /// time for infeasible members, strict for feasible ones.
    double cost = 0.0;
    bool range_violation = false;
    /// Insertion sequence number, used to break ordering ties deterministically.
    std::uint64_t seq = 0;
};

/// One feasibility-keyed subpopulation with a pairwise distance matrix kept
/// up to date on insertion. Capacity is fixed (mu + lambda); the caller must
/// prune before the next insert once it is full.
class SubPopulation {
public:
    explicit SubPopulation(int capacity);

    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    int capacity() const { return capacity_; }
    const Member& member(int i) const { return members_[static_cast<std::size_t>(i)]; }

    void insert(Member m);
    void set_cost(int i, double cost, bool range_violation);

    /// Index of the lowest-cost member, ties by insertion sequence.
    int cost_best_index() const;

    double distance(int i, int j) const;
    /// Mean distance to the two closest members (fewer when the subpopulation
    /// is smaller than three; zero when the member is alone).
    double delta(int i) const;
    double fitness_of(int i, double elite_frac) const;

    /// Keeps the best mu by (fitness, sequence); the cost-best member is
    /// always retained even when its diversity-adjusted rank is poor.
    void select_survivors(int mu, double elite_frac);

    /// Diversification pruning: same rule with a smaller keep count.
    void truncate(int n_keep, double elite_frac);

private:
    std::vector<int> ranked(double elite_frac) const;
    void keep(const std::vector<int>& indices);

    int capacity_;
    std::vector<Member> members_;
    std::vector<double> dist_; // row-major, stride = capacity_
};

/// The full population: one subpopulation per feasibility class, the adaptive
/// penalty state, and the sliding window of recent offspring classes that
/// drives the penalty controller. A type-2 subpopulation exists only when the
/// instance has a finite flight range.
class Population {
public:
    Population(const Instance& inst, const SolverConfig& cfg);

    bool has_subpop(FeasibilityClass cls) const;
    SubPopulation& subpop(FeasibilityClass cls);
    const SubPopulation& subpop(FeasibilityClass cls) const;
    int size(FeasibilityClass cls) const;
    int total_size() const;

    double w1() const { return w1_; }
    double w2() const { return w2_; }
    void set_penalties(double w1, double w2);

    /// Inserts a classified, already-priced member; assigns its sequence
    /// number. Throws when the class has no subpopulation or it is full.
    void insert(FeasibilityClass cls, Member m);

    void record_offspring_class(FeasibilityClass cls);
    int window_size() const { return static_cast<int>(window_.size()); }
    double xi_feasible() const;
    double xi_type1() const;
    double xi_type2() const;

    /// Four-branch penalty update over the recent-class window. No-op while
    /// the window is empty.
    void adjust_penalties();

    /// k-tournament over the union of all subpopulations; ties keep the
    /// earlier draw. Throws when the population is empty.
    const Member& tournament_select(Rng& rng) const;

    /// Re-prices infeasible members with the current penalties (class and
    /// membership never change), then prunes the subpopulation to mu.
    void select_survivors(FeasibilityClass cls);

    /// Prunes every subpopulation to ceil(best_frac * mu) for diversification.
    void truncate_for_diversify();

    /// Lowest-cost feasible member, or nullptr when none exists yet.
    const Member* best_feasible() const;

private:
    int slot(FeasibilityClass cls) const;

    const Instance* inst_;
    const SolverConfig* cfg_;
    JoinDecoder decoder_;
    double w1_;
    double w2_;
    std::uint64_t next_seq_ = 0;

    std::vector<FeasibilityClass> keys_;
    std::vector<SubPopulation> pops_;

    std::deque<FeasibilityClass> window_;
    std::array<int, 3> window_counts_{0, 0, 0};
};

} // namespace hgatac
