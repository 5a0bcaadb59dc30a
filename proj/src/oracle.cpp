#include "hgatac/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hgatac {

namespace {

constexpr long long kAssignmentGuard = 10'000'000;

struct Sequence {
    std::vector<int> node;        // 0, customers..., 0'
    std::vector<bool> drone;      // per position
    std::vector<int> drone_pos;   // positions of drone customers, ascending
};

Sequence lay_out(const Instance& inst, const Chromosome& ch) {
    Sequence s;
    const int n = ch.size();
    s.node.resize(static_cast<std::size_t>(n) + 2);
    s.drone.resize(static_cast<std::size_t>(n) + 2, false);
    s.node[0] = 0;
    for (int i = 0; i < n; ++i) {
        s.node[static_cast<std::size_t>(i) + 1] = ch.customer(i);
        if (ch.is_drone(i)) {
            s.drone[static_cast<std::size_t>(i) + 1] = true;
            s.drone_pos.push_back(i + 1);
        }
    }
    s.node[static_cast<std::size_t>(n) + 1] = inst.return_depot();
    return s;
}

class Enumerator {
public:
    Enumerator(const Instance& inst, const Sequence& seq) : inst_(inst), seq_(seq) {}

    RendezvousResult run() {
        launch_.assign(seq_.drone_pos.size(), 0);
        land_.assign(seq_.drone_pos.size(), 0);
        stationary_.assign(seq_.drone_pos.size(), false);
        best_ = std::numeric_limits<double>::infinity();
        choose(0, 0);
        RendezvousResult out;
        out.feasible = best_ < std::numeric_limits<double>::infinity();
        out.best = out.feasible ? best_ : 0.0;
        out.ops = best_ops_;
        return out;
    }

private:
    // Picks launch and rendezvous positions for sortie r onward, then scores
    // the complete assignment. prev_eff is the position the truck occupies
    // after the previous sortie ended.
    void choose(std::size_t r, int prev_eff) {
        if (r == seq_.drone_pos.size()) {
            score();
            return;
        }
        const int d = seq_.drone_pos[r];
        const int next_d = r + 1 < seq_.drone_pos.size()
                               ? seq_.drone_pos[r + 1]
                               : static_cast<int>(seq_.node.size());
        for (int l = prev_eff; l < d; ++l) {
            if (seq_.drone[static_cast<std::size_t>(l)]) continue;
            launch_[r] = l;
            if (inst_.profile().stationary_truck_rendezvous && l < d - 1) {
                land_[r] = d - 1;
                stationary_[r] = true;
                choose(r + 1, d - 1);
            }
            stationary_[r] = false;
            for (int k = d + 1; k < next_d; ++k) {
                if (seq_.drone[static_cast<std::size_t>(k)]) continue;
                land_[r] = k;
                choose(r + 1, k);
            }
        }
    }

    void score() {
        if (++count_ > kAssignmentGuard)
            throw std::runtime_error("rendezvous enumeration exceeds candidate guard");
        const AssumptionProfile& prof = inst_.profile();
        const double e = prof.endurance;
        double total = 0.0;
        int cur = 0;
        for (std::size_t r = 0; r < seq_.drone_pos.size(); ++r) {
            const int d = seq_.drone_pos[r];
            const int l = launch_[r];
            const int land = land_[r];
            total += truck_walk(cur, l);
            double truck_leg = truck_walk(l, land);
            double flight = inst_.drone_time(seq_.node[static_cast<std::size_t>(l)],
                                             seq_.node[static_cast<std::size_t>(d)]) +
                            inst_.drone_time(seq_.node[static_cast<std::size_t>(d)],
                                             seq_.node[static_cast<std::size_t>(land)]);
            if (prof.kind == ProblemKind::Tspd) {
                if (flight > e) return;
                total += std::max(truck_leg, flight);
            } else {
                bool relaunch = r + 1 < seq_.drone_pos.size() && launch_[r + 1] == land;
                double truck_side = truck_leg + prof.retrieval_setup +
                                    (relaunch ? prof.launch_setup : 0.0);
                double drone_side = flight + prof.retrieval_setup;
                if (truck_side > e || drone_side > e) return;
                total += std::max(truck_side, drone_side);
            }
            cur = land;
        }
        total += truck_walk(cur, static_cast<int>(seq_.node.size()) - 1);
        if (total < best_) {
            best_ = total;
            best_ops_.clear();
            for (std::size_t r = 0; r < seq_.drone_pos.size(); ++r)
                best_ops_.push_back({seq_.node[static_cast<std::size_t>(launch_[r])],
                                     seq_.node[static_cast<std::size_t>(seq_.drone_pos[r])],
                                     seq_.node[static_cast<std::size_t>(land_[r])],
                                     stationary_[r]});
        }
    }

    // Truck travel time from position `from` to position `to`, stopping at
    // every truck position in between and flying past drone positions.
    double truck_walk(int from, int to) const {
        double total = 0.0;
        int prev = from;
        for (int p = from + 1; p <= to; ++p) {
            if (seq_.drone[static_cast<std::size_t>(p)]) continue;
            total += inst_.truck_time(seq_.node[static_cast<std::size_t>(prev)],
                                      seq_.node[static_cast<std::size_t>(p)]);
            prev = p;
        }
        return total;
    }

    const Instance& inst_;
    const Sequence& seq_;
    std::vector<int> launch_;
    std::vector<int> land_;
    std::vector<bool> stationary_;
    long long count_ = 0;
    double best_ = 0.0;
    std::vector<OracleOp> best_ops_;
};

RendezvousResult enumerate_core(const Instance& inst, const Chromosome& ch) {
    Sequence seq = lay_out(inst, ch);
    Enumerator en(inst, seq);
    return en.run();
}

} // namespace

RendezvousResult enumerate_rendezvous(const Instance& inst, const Chromosome& ch) {
    if (inst.customers() > 12)
        throw std::invalid_argument("rendezvous enumeration is limited to n <= 12");
    auto violations = validate(ch, inst);
    if (!violations.empty())
        throw std::invalid_argument("invalid chromosome: " + violations.front().message);
    if (has_adjacent_drone_genes(ch))
        throw std::invalid_argument("rendezvous enumeration requires non-adjacent drone genes");
    return enumerate_core(inst, ch);
}

ExhaustiveResult exhaustive_tspd(const Instance& inst) {
    const int n = inst.customers();
    if (n > 8) throw std::invalid_argument("exhaustive search is limited to n <= 8");

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);

    ExhaustiveResult out;
    out.best = std::numeric_limits<double>::infinity();
    Chromosome ch;
    ch.genes.resize(static_cast<std::size_t>(n));
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (mask & (mask >> 1)) continue; // adjacent drone genes
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                bool neg = (mask >> i) & 1u;
                if (neg && !inst.drone_eligible(perm[static_cast<std::size_t>(i)])) ok = false;
                ch.genes[static_cast<std::size_t>(i)] =
                    neg ? -perm[static_cast<std::size_t>(i)] : perm[static_cast<std::size_t>(i)];
            }
            if (!ok) continue;
            RendezvousResult res = enumerate_core(inst, ch);
            if (res.feasible && res.best < out.best) {
                out.best = res.best;
                out.argmin = ch;
                out.detail = std::move(res);
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (out.best == std::numeric_limits<double>::infinity())
        throw std::runtime_error("exhaustive search found no feasible solution");
    return out;
}

} // namespace hgatac
