#include "hgatac/decode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hgatac {

FeasibilityClass classify(const Chromosome& ch, const DecodedSolution& decoded) {
    if (has_adjacent_drone_genes(ch)) return FeasibilityClass::Type1;
    if (decoded.range_violation) return FeasibilityClass::Type2;
    return FeasibilityClass::Feasible;
}

namespace {

double saturating_add(double a, double b) { return std::min(a + b, kPenaltyCap); }

} // namespace

void JoinDecoder::prepare(const Chromosome& ch) {
    const int n = ch.size();
    const int npos = n + 2;
    pos_node_.assign(static_cast<std::size_t>(npos), 0);
    pos_drone_.assign(static_cast<std::size_t>(npos), 0);
    pos_node_[0] = 0;
    for (int p = 1; p <= n; ++p) {
        pos_node_[static_cast<std::size_t>(p)] = ch.customer(p - 1);
        pos_drone_[static_cast<std::size_t>(p)] = ch.is_drone(p - 1) ? 1 : 0;
    }
    pos_node_[static_cast<std::size_t>(n + 1)] = inst_->return_depot();

    tpos_.clear();
    tidx_of_pos_.assign(static_cast<std::size_t>(npos), -1);
    runs_.clear();
    for (int p = 0; p < npos; ++p) {
        if (pos_drone_[static_cast<std::size_t>(p)]) {
            if (runs_.empty() || runs_.back().b != p - 1) {
                Run r;
                r.a = r.b = p;
                r.first_node = r.last_node = pos_node_[static_cast<std::size_t>(p)];
                runs_.push_back(r);
            } else {
                runs_.back().b = p;
                runs_.back().last_node = pos_node_[static_cast<std::size_t>(p)];
            }
        } else {
            tidx_of_pos_[static_cast<std::size_t>(p)] = static_cast<int>(tpos_.size());
            tpos_.push_back(p);
        }
    }

    ctt_.assign(tpos_.size(), 0.0);
    for (std::size_t j = 1; j < tpos_.size(); ++j)
        ctt_[j] = ctt_[j - 1] + inst_->truck_time(pos_node_[static_cast<std::size_t>(tpos_[j - 1])],
                                                  pos_node_[static_cast<std::size_t>(tpos_[j])]);

    // next_run_[j]: index of the first drone run past truck state j.
    next_run_.assign(tpos_.size(), -1);
    int run_idx = 0;
    for (std::size_t j = 0; j < tpos_.size(); ++j) {
        while (run_idx < static_cast<int>(runs_.size()) &&
               runs_[static_cast<std::size_t>(run_idx)].a < tpos_[j])
            ++run_idx;
        next_run_[j] = run_idx < static_cast<int>(runs_.size()) ? run_idx : -1;
    }
}

double JoinDecoder::eval_state(int u_tidx, int next_run, Mode mode, double w2,
                               Record& rec) const {
    const AssumptionProfile& prof = inst_->profile();
    const bool fstsp = prof.kind == ProblemKind::Fstsp;
    const double e = prof.endurance;
    const int m_last = static_cast<int>(tpos_.size()) - 1;
    const int u_node = pos_node_[static_cast<std::size_t>(tpos_[static_cast<std::size_t>(u_tidx)])];

    // Last truck state before the next run (or the terminal depot).
    const int endT = next_run < 0
                         ? m_last
                         : tidx_of_pos_[static_cast<std::size_t>(
                               runs_[static_cast<std::size_t>(next_run)].a - 1)];

    // Move-truck decision: advancing to the immediately following truck node
    // dominates longer jumps because the leg times telescope.
    double mt_cost = kUnreachable;
    if (endT >= u_tidx + 1)
        mt_cost = ctt_[static_cast<std::size_t>(u_tidx + 1)] -
                  ctt_[static_cast<std::size_t>(u_tidx)] +
                  cost_[static_cast<std::size_t>(u_tidx + 1)];

    double ll_cost = kUnreachable;
    Record ll_rec;
    if (next_run >= 0) {
        const Run& run = runs_[static_cast<std::size_t>(next_run)];
        const double launch_leg = inst_->drone_time(u_node, run.first_node);
        const int jplus_start = tidx_of_pos_[static_cast<std::size_t>(run.b + 1)];
        const int jplus_end = next_run + 1 < static_cast<int>(runs_.size())
                                  ? tidx_of_pos_[static_cast<std::size_t>(
                                        runs_[static_cast<std::size_t>(next_run + 1)].a - 1)]
                                  : m_last;

        auto consider = [&](int land_tidx, bool stationary, double continuation) {
            const int land_node =
                pos_node_[static_cast<std::size_t>(tpos_[static_cast<std::size_t>(land_tidx)])];
            const double truck_leg = ctt_[static_cast<std::size_t>(land_tidx)] -
                                     ctt_[static_cast<std::size_t>(u_tidx)];
            const double last_leg = inst_->drone_time(run.last_node, land_node);
            const double drone_raw = launch_leg + run.mid_raw + last_leg;
            double term;
            bool violates;
            if (!fstsp) {
                violates = drone_raw > e;
                if (mode == Mode::Strict) {
                    if (violates) return;
                    term = std::max(truck_leg, drone_raw);
                } else {
                    double drone_pen = saturating_add(launch_leg + last_leg, run.mid_pen);
                    if (violates) drone_pen = saturating_add(drone_pen, w2 * (drone_raw - e));
                    term = std::max(truck_leg, drone_pen);
                }
            } else {
                const bool relaunch = !stationary &&
                                      rec_[static_cast<std::size_t>(land_tidx)].kind ==
                                          Record::LaunchLand;
                const double truck_raw = truck_leg + prof.retrieval_setup +
                                         (relaunch ? prof.launch_setup : 0.0);
                const double drone_all = drone_raw + prof.retrieval_setup;
                violates = truck_raw > e || drone_all > e;
                if (mode == Mode::Strict) {
                    if (violates) return;
                    term = std::max(truck_raw, drone_all);
                } else {
                    double truck_pen = truck_raw;
                    if (truck_raw > e) truck_pen = saturating_add(truck_pen, w2 * (truck_raw - e));
                    double drone_pen = saturating_add(launch_leg + last_leg + prof.retrieval_setup,
                                                      run.mid_pen);
                    if (drone_all > e) drone_pen = saturating_add(drone_pen, w2 * (drone_all - e));
                    term = std::max(truck_pen, drone_pen);
                }
            }
            const double cand = term + continuation;
            if (cand < ll_cost) {
                ll_cost = cand;
                ll_rec.kind = Record::LaunchLand;
                ll_rec.next = land_tidx;
                ll_rec.run = next_run;
                ll_rec.stationary = stationary;
                ll_rec.violates = violates;
                ll_rec.duration = term;
            }
        };

        // The stationary rendezvous sits earliest in the sequence, so it is
        // tried first to keep ties resolving toward the smallest index.
        if (prof.stationary_truck_rendezvous && endT >= u_tidx + 1)
            consider(endT, true, vcost_[static_cast<std::size_t>(next_run)]);
        for (int j = jplus_start; j <= jplus_end; ++j)
            consider(j, false, cost_[static_cast<std::size_t>(j)]);
    }

    if (ll_cost < mt_cost) {
        rec = ll_rec;
        return ll_cost;
    }
    rec = Record{};
    rec.kind = Record::MoveTruck;
    rec.next = u_tidx + 1;
    rec.duration = mt_cost - (mt_cost < kUnreachable
                                  ? cost_[static_cast<std::size_t>(u_tidx + 1)]
                                  : 0.0);
    return mt_cost;
}

void JoinDecoder::run_dp(Mode mode, double w1, double w2) {
    for (Run& run : runs_) {
        run.mid_raw = 0.0;
        run.mid_pen = 0.0;
        double mult = 1.0;
        for (int p = run.a; p < run.b; ++p) {
            const double leg = inst_->drone_time(pos_node_[static_cast<std::size_t>(p)],
                                                 pos_node_[static_cast<std::size_t>(p + 1)]);
            run.mid_raw += leg;
            mult = std::min(mult * w1, kPenaltyCap);
            run.mid_pen = saturating_add(run.mid_pen, std::min(mult * leg, kPenaltyCap));
        }
    }

    const int m = static_cast<int>(tpos_.size());
    cost_.assign(static_cast<std::size_t>(m), kUnreachable);
    rec_.assign(static_cast<std::size_t>(m), Record{});
    const bool virtuals = inst_->profile().stationary_truck_rendezvous;
    vcost_.assign(runs_.size(), kUnreachable);
    vrec_.assign(runs_.size(), Record{});

    cost_[static_cast<std::size_t>(m - 1)] = 0.0;
    rec_[static_cast<std::size_t>(m - 1)].kind = Record::Terminal;

    int r = static_cast<int>(runs_.size()) - 1;
    for (int j = m - 2; j >= 0; --j) {
        // Virtual states: truck parked on the node just before run r while the
        // sortie for run r is out; progress is past the run already.
        while (virtuals && r >= 0 &&
               runs_[static_cast<std::size_t>(r)].a - 1 == tpos_[static_cast<std::size_t>(j)]) {
            const int nr = r + 1 < static_cast<int>(runs_.size()) ? r + 1 : -1;
            vcost_[static_cast<std::size_t>(r)] =
                eval_state(j, nr, mode, w2, vrec_[static_cast<std::size_t>(r)]);
            --r;
        }
        if (!virtuals && r >= 0 &&
            runs_[static_cast<std::size_t>(r)].a - 1 == tpos_[static_cast<std::size_t>(j)])
            --r;
        cost_[static_cast<std::size_t>(j)] =
            eval_state(j, next_run_[static_cast<std::size_t>(j)], mode, w2,
                       rec_[static_cast<std::size_t>(j)]);
    }
}

bool JoinDecoder::walk_range_violation() const {
    bool violation = false;
    bool virtual_state = false;
    int idx = 0;
    while (true) {
        const Record& rec = virtual_state ? vrec_[static_cast<std::size_t>(idx)]
                                          : rec_[static_cast<std::size_t>(idx)];
        if (rec.kind == Record::Terminal) break;
        if (rec.kind == Record::LaunchLand) {
            violation = violation || rec.violates;
            if (rec.stationary) {
                virtual_state = true;
                idx = rec.run;
                continue;
            }
        }
        virtual_state = false;
        idx = rec.next;
    }
    return violation;
}

DecodedSolution JoinDecoder::reconstruct(const Chromosome& ch) const {
    DecodedSolution out;
    out.completion_time = cost_[0];
    out.type1_violation = has_adjacent_drone_genes(ch);
    out.truck_route.push_back(0);

    bool virtual_state = false;
    int idx = 0;       // truck-state index, or run index for virtual states
    int u_tidx = 0;    // physical truck position index
    while (true) {
        const Record& rec = virtual_state ? vrec_[static_cast<std::size_t>(idx)]
                                          : rec_[static_cast<std::size_t>(idx)];
        const double c = virtual_state ? vcost_[static_cast<std::size_t>(idx)]
                                       : cost_[static_cast<std::size_t>(idx)];
        out.state_costs.push_back(
            {pos_node_[static_cast<std::size_t>(tpos_[static_cast<std::size_t>(u_tidx)])], c});
        if (rec.kind == Record::Terminal) break;
        if (rec.kind == Record::MoveTruck) {
            out.truck_route.push_back(pos_node_[static_cast<std::size_t>(
                tpos_[static_cast<std::size_t>(rec.next)])]);
            virtual_state = false;
            idx = rec.next;
            u_tidx = rec.next;
            continue;
        }
        const Run& run = runs_[static_cast<std::size_t>(rec.run)];
        Operation op;
        op.launch = pos_node_[static_cast<std::size_t>(tpos_[static_cast<std::size_t>(u_tidx)])];
        for (int p = run.a; p <= run.b; ++p)
            op.chain.push_back(pos_node_[static_cast<std::size_t>(p)]);
        op.land = pos_node_[static_cast<std::size_t>(tpos_[static_cast<std::size_t>(rec.next)])];
        op.duration = rec.duration;
        op.violates_endurance = rec.violates;
        out.range_violation = out.range_violation || rec.violates;
        for (int j = u_tidx + 1; j <= rec.next; ++j)
            out.truck_route.push_back(
                pos_node_[static_cast<std::size_t>(tpos_[static_cast<std::size_t>(j)])]);
        out.operations.push_back(std::move(op));
        u_tidx = rec.next;
        if (rec.stationary) {
            virtual_state = true;
            idx = rec.run;
        } else {
            virtual_state = false;
            idx = rec.next;
        }
    }
    return out;
}

JoinDecoder::CostInfo JoinDecoder::cost(const Chromosome& ch, double w1, double w2) {
    prepare(ch);
    run_dp(Mode::Penalized, w1, w2);
    return {cost_[0], walk_range_violation()};
}

DecodedSolution JoinDecoder::decode(const Chromosome& ch, double w1, double w2) {
    prepare(ch);
    run_dp(Mode::Penalized, w1, w2);
    return reconstruct(ch);
}

DecodedSolution JoinDecoder::decode_feasible(const Chromosome& ch) {
    if (has_adjacent_drone_genes(ch))
        throw std::invalid_argument("strict decode requires a chromosome without adjacent drone genes");
    prepare(ch);
    run_dp(Mode::Strict, 1.0, 1.0);
    if (cost_[0] < kUnreachable) return reconstruct(ch);
    // No admissible rendezvous assignment; price the violations instead so the
    // caller still gets a classifiable solution.
    run_dp(Mode::Penalized, 1.0, 1.0);
    DecodedSolution out = reconstruct(ch);
    out.range_violation = true;
    return out;
}

DecodedSolution join(const Instance& inst, const Chromosome& ch, double w1, double w2) {
    if (w1 < 1.0 || w2 < 1.0) throw std::invalid_argument("penalty multipliers must be >= 1");
    auto violations = validate(ch, inst);
    if (!violations.empty()) throw std::invalid_argument("invalid chromosome: " + violations.front().message);
    JoinDecoder decoder(inst);
    return decoder.decode(ch, w1, w2);
}

DecodedSolution join_feasible(const Instance& inst, const Chromosome& ch) {
    auto violations = validate(ch, inst);
    if (!violations.empty()) throw std::invalid_argument("invalid chromosome: " + violations.front().message);
    JoinDecoder decoder(inst);
    return decoder.decode_feasible(ch);
}

} // namespace hgatac
