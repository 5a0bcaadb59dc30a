#pragma once

#include <vector>

#include "hgatac/chromosome.hpp"
#include "hgatac/config.hpp"
#include "hgatac/decode.hpp"
#include "hgatac/rng.hpp"

namespace hgatac {

/// Move operators. L1..L7 are the type-aware moves; the remaining three are
/// classical sequence moves that keep the neighborhood connected.
enum class MoveOp { L1, L2, L3, L4, L5, L6, L7, TwoOpt, OrOpt, Relocate };

const char* to_string(MoveOp op);

/// Deterministic move cores. Each returns false (leaving `ch` untouched) when
/// the requested move is structurally impossible or would break eligibility.

/// Three consecutive truck genes starting at pos; the middle one turns drone.
bool apply_l1(Chromosome& ch, const Instance& inst, int pos);
/// Remove the drone gene at from_pos and reinsert it at index `slot` of the
/// shortened chromosome; both neighbors of the new spot must be truck genes
/// (a depot counts as a truck neighbor at the ends).
bool apply_l2(Chromosome& ch, int from_pos, int slot);
/// Swap the customers at a truck and a drone position; each position keeps
/// its vehicle type.
bool apply_l3(Chromosome& ch, const Instance& inst, int truck_pos, int drone_pos);
/// Two-opt on the truck tour: arcs are indexed over consecutive truck genes
/// with the depots as virtual endpoints; the gene segment between the two
/// arcs is reversed in place (drone genes ride along).
bool apply_l4(Chromosome& ch, int arc1, int arc2);
/// Swap two drone genes and convert both customers to truck duty.
bool apply_l5(Chromosome& ch, int pos1, int pos2);
/// Swap two drone genes; only the customer landing at pos1 (convert_first) or
/// pos2 becomes a truck customer, the other stays a drone customer.
bool apply_l6(Chromosome& ch, int pos1, int pos2, bool convert_first);
/// Merge two sorties: drone gene d_pos joins the sortie around j_pos, whose
/// drone customer converts to truck duty; d is reinserted directly before or
/// after it.
bool apply_l7(Chromosome& ch, int d_pos, int j_pos, bool insert_before);

bool apply_two_opt(Chromosome& ch, int i, int j);
bool apply_or_opt(Chromosome& ch, int start, int len, int slot);
bool apply_relocate(Chromosome& ch, const Instance& inst, int from, int slot, bool flip);

/// First-improvement local search under the penalized decode. Per pass every
/// enabled operator draws n random candidates (second endpoints restricted to
/// the n_close nearest customers); improving candidates are kept immediately.
/// Passes repeat until one yields no improvement, capped by max_ls_passes.
class LocalSearch {
public:
    LocalSearch(const Instance& inst, const SolverConfig& cfg);

    JoinDecoder::CostInfo improve(Chromosome& ch, double w1, double w2, Rng& rng);

    /// Samples one operator and one structurally valid move, used by the
    /// escape procedure. Returns false when nothing applicable was found.
    bool random_move(Chromosome& ch, Rng& rng);

    const std::vector<MoveOp>& operators() const { return ops_; }
    int n_close() const { return n_close_; }

private:
    bool sample(MoveOp op, Chromosome& ch, Rng& rng) const;
    int near_partner(int customer, bool drone_metric, Rng& rng) const;

    const Instance* inst_;
    const SolverConfig* cfg_;
    JoinDecoder decoder_;
    std::vector<MoveOp> ops_;
    int n_close_;
    std::vector<std::vector<int>> near_truck_; // per customer, nearest first
    std::vector<std::vector<int>> near_drone_;
};

} // namespace hgatac
