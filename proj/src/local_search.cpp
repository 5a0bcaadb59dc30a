#include "hgatac/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hgatac {

const char* to_string(MoveOp op) {
    switch (op) {
        case MoveOp::L1: return "L1";
        case MoveOp::L2: return "L2";
        case MoveOp::L3: return "L3";
        case MoveOp::L4: return "L4";
        case MoveOp::L5: return "L5";
        case MoveOp::L6: return "L6";
        case MoveOp::L7: return "L7";
        case MoveOp::TwoOpt: return "two-opt";
        case MoveOp::OrOpt: return "or-opt";
        case MoveOp::Relocate: return "relocate";
    }
    return "?";
}

namespace {

std::vector<int> truck_positions(const Chromosome& ch) {
    std::vector<int> out;
    for (int i = 0; i < ch.size(); ++i)
        if (!ch.is_drone(i)) out.push_back(i);
    return out;
}

std::vector<int> drone_positions(const Chromosome& ch) {
    std::vector<int> out;
    for (int i = 0; i < ch.size(); ++i)
        if (ch.is_drone(i)) out.push_back(i);
    return out;
}

} // namespace

bool apply_l1(Chromosome& ch, const Instance& inst, int pos) {
    if (pos < 0 || pos + 2 >= ch.size()) return false;
    if (ch.is_drone(pos) || ch.is_drone(pos + 1) || ch.is_drone(pos + 2)) return false;
    if (!inst.drone_eligible(ch.customer(pos + 1))) return false;
    ch.genes[static_cast<std::size_t>(pos) + 1] = -ch.customer(pos + 1);
    return true;
}

bool apply_l2(Chromosome& ch, int from_pos, int slot) {
    const int n = ch.size();
    if (from_pos < 0 || from_pos >= n || !ch.is_drone(from_pos)) return false;
    if (slot < 0 || slot > n - 1) return false;
    std::vector<int> rest = ch.genes;
    const int gene = rest[static_cast<std::size_t>(from_pos)];
    rest.erase(rest.begin() + from_pos);
    if (slot > static_cast<int>(rest.size())) return false;
    const bool left_truck = slot == 0 || rest[static_cast<std::size_t>(slot) - 1] > 0;
    const bool right_truck = slot == static_cast<int>(rest.size()) ||
                             rest[static_cast<std::size_t>(slot)] > 0;
    if (!left_truck || !right_truck) return false;
    rest.insert(rest.begin() + slot, gene);
    if (std::equal(rest.begin(), rest.end(), ch.genes.begin())) return false;
    ch.genes = std::move(rest);
    return true;
}

bool apply_l3(Chromosome& ch, const Instance& inst, int truck_pos, int drone_pos) {
    const int n = ch.size();
    if (truck_pos < 0 || truck_pos >= n || drone_pos < 0 || drone_pos >= n) return false;
    if (ch.is_drone(truck_pos) || !ch.is_drone(drone_pos)) return false;
    const int truck_customer = ch.customer(truck_pos);
    const int drone_customer = ch.customer(drone_pos);
    if (!inst.drone_eligible(truck_customer)) return false;
    ch.genes[static_cast<std::size_t>(truck_pos)] = drone_customer;
    ch.genes[static_cast<std::size_t>(drone_pos)] = -truck_customer;
    return true;
}

bool apply_l4(Chromosome& ch, int arc1, int arc2) {
    if (arc1 > arc2) std::swap(arc1, arc2);
    if (arc1 == arc2) return false;
    const std::vector<int> trucks = truck_positions(ch);
    const int arcs = static_cast<int>(trucks.size()) + 1; // depot arcs included
    if (arc1 < 0 || arc2 >= arcs) return false;
    // Arc a connects truck gene a-1 to truck gene a (depots at the ends).
    // Reversing between the arcs flips the gene segment from the head of arc1
    // to the tail of arc2 inclusive.
    const int from = trucks[static_cast<std::size_t>(arc1)];
    const int to = trucks[static_cast<std::size_t>(arc2) - 1];
    if (from >= to) return false;
    std::reverse(ch.genes.begin() + from, ch.genes.begin() + to + 1);
    return true;
}

bool apply_l5(Chromosome& ch, int pos1, int pos2) {
    const int n = ch.size();
    if (pos1 == pos2 || pos1 < 0 || pos2 < 0 || pos1 >= n || pos2 >= n) return false;
    if (!ch.is_drone(pos1) || !ch.is_drone(pos2)) return false;
    const int c1 = ch.customer(pos1);
    const int c2 = ch.customer(pos2);
    ch.genes[static_cast<std::size_t>(pos1)] = c2;
    ch.genes[static_cast<std::size_t>(pos2)] = c1;
    return true;
}

bool apply_l6(Chromosome& ch, int pos1, int pos2, bool convert_first) {
    const int n = ch.size();
    if (pos1 == pos2 || pos1 < 0 || pos2 < 0 || pos1 >= n || pos2 >= n) return false;
    if (!ch.is_drone(pos1) || !ch.is_drone(pos2)) return false;
    const int c1 = ch.customer(pos1);
    const int c2 = ch.customer(pos2);
    ch.genes[static_cast<std::size_t>(pos1)] = convert_first ? c2 : -c2;
    ch.genes[static_cast<std::size_t>(pos2)] = convert_first ? -c1 : c1;
    return true;
}

bool apply_l7(Chromosome& ch, int d_pos, int j_pos, bool insert_before) {
    const int n = ch.size();
    if (d_pos == j_pos || d_pos < 0 || j_pos < 0 || d_pos >= n || j_pos >= n) return false;
    if (!ch.is_drone(d_pos) || !ch.is_drone(j_pos)) return false;
    // j must sit in a sortie pattern truck-drone-truck (depots count at ends)
    const bool left_truck = j_pos == 0 || !ch.is_drone(j_pos - 1);
    const bool right_truck = j_pos == n - 1 || !ch.is_drone(j_pos + 1);
    if (!left_truck || !right_truck) return false;

    const int d_gene = ch.genes[static_cast<std::size_t>(d_pos)];
    std::vector<int> rest = ch.genes;
    rest[static_cast<std::size_t>(j_pos)] = std::abs(rest[static_cast<std::size_t>(j_pos)]);
    rest.erase(rest.begin() + d_pos);
    int j_now = j_pos - (d_pos < j_pos ? 1 : 0);
    rest.insert(rest.begin() + (insert_before ? j_now : j_now + 1), d_gene);
    ch.genes = std::move(rest);
    return true;
}

bool apply_two_opt(Chromosome& ch, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= ch.size() || i == j) return false;
    std::reverse(ch.genes.begin() + i, ch.genes.begin() + j + 1);
    return true;
}

bool apply_or_opt(Chromosome& ch, int start, int len, int slot) {
    const int n = ch.size();
    if (len < 1 || len > 2 || start < 0 || start + len > n) return false;
    std::vector<int> block(ch.genes.begin() + start, ch.genes.begin() + start + len);
    std::vector<int> rest = ch.genes;
    rest.erase(rest.begin() + start, rest.begin() + start + len);
    if (slot < 0 || slot > static_cast<int>(rest.size())) return false;
    rest.insert(rest.begin() + slot, block.begin(), block.end());
    if (std::equal(rest.begin(), rest.end(), ch.genes.begin())) return false;
    ch.genes = std::move(rest);
    return true;
}

bool apply_relocate(Chromosome& ch, const Instance& inst, int from, int slot, bool flip) {
    const int n = ch.size();
    if (from < 0 || from >= n) return false;
    int gene = ch.genes[static_cast<std::size_t>(from)];
    if (flip) {
        if (gene < 0)
            gene = -gene;
        else if (inst.drone_eligible(gene))
            gene = -gene;
        else
            return false;
    }
    std::vector<int> rest = ch.genes;
    rest.erase(rest.begin() + from);
    if (slot < 0 || slot > static_cast<int>(rest.size())) return false;
    rest.insert(rest.begin() + slot, gene);
    if (std::equal(rest.begin(), rest.end(), ch.genes.begin())) return false;
    ch.genes = std::move(rest);
    return true;
}

LocalSearch::LocalSearch(const Instance& inst, const SolverConfig& cfg)
    : inst_(&inst), cfg_(&cfg), decoder_(inst) {
    ops_ = {MoveOp::TwoOpt, MoveOp::OrOpt, MoveOp::Relocate};
    if (cfg.enable_l_moves) {
        ops_.insert(ops_.begin(), {MoveOp::L1, MoveOp::L2, MoveOp::L3, MoveOp::L4, MoveOp::L5,
                                   MoveOp::L6, MoveOp::L7});
    }
    const int n = inst.customers();
    n_close_ = std::max(1, static_cast<int>(std::ceil(cfg.close_frac * (n + 1))));

    near_truck_.resize(static_cast<std::size_t>(n) + 1);
    near_drone_.resize(static_cast<std::size_t>(n) + 1);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int c = 1; c <= n; ++c) {
        std::iota(order.begin(), order.end(), 1);
        order.erase(std::remove(order.begin(), order.end(), c), order.end());
        auto by = [&](auto metric) {
            std::vector<int> sorted = order;
            std::stable_sort(sorted.begin(), sorted.end(), [&](int a, int b) {
                return metric(c, a) < metric(c, b);
            });
            if (static_cast<int>(sorted.size()) > n_close_) sorted.resize(static_cast<std::size_t>(n_close_));
            return sorted;
        };
        near_truck_[static_cast<std::size_t>(c)] =
            by([&](int a, int b) { return inst.truck_time(a, b); });
        near_drone_[static_cast<std::size_t>(c)] =
            by([&](int a, int b) { return inst.drone_time(a, b); });
    }
}

int LocalSearch::near_partner(int customer, bool drone_metric, Rng& rng) const {
    const auto& list = (drone_metric ? near_drone_ : near_truck_)[static_cast<std::size_t>(customer)];
    if (list.empty()) return -1;
    return list[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(list.size()) - 1))];
}

bool LocalSearch::sample(MoveOp op, Chromosome& ch, Rng& rng) const {
    const int n = ch.size();
    std::vector<int> pos_of(static_cast<std::size_t>(n) + 1, -1);
    for (int i = 0; i < n; ++i) pos_of[static_cast<std::size_t>(ch.customer(i))] = i;

    switch (op) {
        case MoveOp::L1: {
            if (n < 3) return false;
            return apply_l1(ch, *inst_, uniform_int(rng, 0, n - 3));
        }
        case MoveOp::L2: {
            const auto drones = drone_positions(ch);
            if (drones.empty()) return false;
            const int d = drones[static_cast<std::size_t>(
                uniform_int(rng, 0, static_cast<int>(drones.size()) - 1))];
            const int partner = near_partner(ch.customer(d), true, rng);
            if (partner < 0 || pos_of[static_cast<std::size_t>(partner)] < 0) return false;
            int anchor = pos_of[static_cast<std::size_t>(partner)];
            if (ch.is_drone(anchor)) return false;
            // insert next to the partner, on a uniformly chosen side
            int anchor_after_removal = anchor - (d < anchor ? 1 : 0);
            int slot = chance(rng, 0.5) ? anchor_after_removal : anchor_after_removal + 1;
            return apply_l2(ch, d, slot);
        }
        case MoveOp::L3: {
            const auto drones = drone_positions(ch);
            if (drones.empty()) return false;
            const int d = drones[static_cast<std::size_t>(
                uniform_int(rng, 0, static_cast<int>(drones.size()) - 1))];
            const int partner = near_partner(ch.customer(d), true, rng);
            if (partner < 0) return false;
            const int t = pos_of[static_cast<std::size_t>(partner)];
            if (t < 0 || ch.is_drone(t)) return false;
            return apply_l3(ch, *inst_, t, d);
        }
        case MoveOp::L4: {
            const auto trucks = truck_positions(ch);
            if (trucks.size() < 2) return false;
            const int arcs = static_cast<int>(trucks.size()) + 1;
            const int a1 = uniform_int(rng, 0, arcs - 1);
            // pick the second arc near the first arc's head customer
            int head1 = a1 < static_cast<int>(trucks.size())
                            ? ch.customer(trucks[static_cast<std::size_t>(a1)])
                            : ch.customer(trucks.back());
            const int partner = near_partner(head1, false, rng);
            if (partner < 0) return false;
            const int p = pos_of[static_cast<std::size_t>(partner)];
            if (p < 0 || ch.is_drone(p)) return false;
            const auto it = std::lower_bound(trucks.begin(), trucks.end(), p);
            const int a2 = static_cast<int>(it - trucks.begin());
            return apply_l4(ch, a1, a2);
        }
        case MoveOp::L5:
        case MoveOp::L6: {
            const auto drones = drone_positions(ch);
            if (drones.size() < 2) return false;
            const int p1 = drones[static_cast<std::size_t>(
                uniform_int(rng, 0, static_cast<int>(drones.size()) - 1))];
            const int partner = near_partner(ch.customer(p1), true, rng);
            if (partner < 0) return false;
            const int p2 = pos_of[static_cast<std::size_t>(partner)];
            if (p2 < 0 || !ch.is_drone(p2) || p2 == p1) return false;
            if (op == MoveOp::L5) return apply_l5(ch, p1, p2);
            return apply_l6(ch, p1, p2, chance(rng, 0.5));
        }
        case MoveOp::L7: {
            const auto drones = drone_positions(ch);
            if (drones.size() < 2) return false;
            const int d = drones[static_cast<std::size_t>(
                uniform_int(rng, 0, static_cast<int>(drones.size()) - 1))];
            const int partner = near_partner(ch.customer(d), true, rng);
            if (partner < 0) return false;
            const int j = pos_of[static_cast<std::size_t>(partner)];
            if (j < 0 || !ch.is_drone(j) || j == d) return false;
            return apply_l7(ch, d, j, chance(rng, 0.5));
        }
        case MoveOp::TwoOpt: {
            if (n < 2) return false;
            const int i = uniform_int(rng, 0, n - 1);
            const int partner = near_partner(ch.customer(i), false, rng);
            if (partner < 0) return false;
            return apply_two_opt(ch, i, pos_of[static_cast<std::size_t>(partner)]);
        }
        case MoveOp::OrOpt: {
            if (n < 2) return false;
            const int len = std::min(n - 1, uniform_int(rng, 1, 2));
            const int start = uniform_int(rng, 0, n - len);
            const int partner = near_partner(ch.customer(start), false, rng);
            if (partner < 0) return false;
            int anchor = pos_of[static_cast<std::size_t>(partner)];
            if (anchor >= start && anchor < start + len) return false;
            int slot = anchor - (anchor > start ? len : 0) + 1;
            return apply_or_opt(ch, start, len, slot);
        }
        case MoveOp::Relocate: {
            if (n < 2) return false;
            const int from = uniform_int(rng, 0, n - 1);
            const bool flip = chance(rng, 0.5);
            const int partner = near_partner(ch.customer(from), ch.is_drone(from), rng);
            if (partner < 0) return false;
            int anchor = pos_of[static_cast<std::size_t>(partner)];
            int slot = anchor - (anchor > from ? 1 : 0) + (chance(rng, 0.5) ? 0 : 1);
            return apply_relocate(ch, *inst_, from, slot, flip);
        }
    }
    return false;
}

JoinDecoder::CostInfo LocalSearch::improve(Chromosome& ch, double w1, double w2, Rng& rng) {
    JoinDecoder::CostInfo cur = decoder_.cost(ch, w1, w2);
    const int samples = std::max(1, inst_->customers());
    std::vector<MoveOp> order = ops_;
    Chromosome candidate;
    for (int pass = 0; pass < cfg_->max_ls_passes; ++pass) {
        bool improved = false;
        std::shuffle(order.begin(), order.end(), rng);
        for (MoveOp op : order) {
            for (int s = 0; s < samples; ++s) {
                candidate = ch;
                if (!sample(op, candidate, rng)) continue;
                const JoinDecoder::CostInfo info = decoder_.cost(candidate, w1, w2);
                if (info.cost < cur.cost) {
                    ch = candidate;
                    cur = info;
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    return cur;
}

bool LocalSearch::random_move(Chromosome& ch, Rng& rng) {
    constexpr int kAttempts = 30;
    for (int a = 0; a < kAttempts; ++a) {
        const MoveOp op = ops_[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(ops_.size()) - 1))];
        if (sample(op, ch, rng)) return true;
    }
    return false;
}

} // namespace hgatac
