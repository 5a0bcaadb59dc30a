#include "hgatac/population.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hgatac {

SubPopulation::SubPopulation(int capacity) : capacity_(capacity) {
    if (capacity < 1) throw std::invalid_argument("subpopulation capacity must be positive");
    members_.reserve(static_cast<std::size_t>(capacity));
    dist_.assign(static_cast<std::size_t>(capacity) * static_cast<std::size_t>(capacity), 0.0);
}

void SubPopulation::insert(Member m) {
    if (size() >= capacity_) throw std::logic_error("subpopulation is full");
    const int id = size();
    const std::size_t stride = static_cast<std::size_t>(capacity_);
    for (int j = 0; j < id; ++j) {
        const double d = hamming_distance(m.ch, members_[static_cast<std::size_t>(j)].ch);
        dist_[static_cast<std::size_t>(id) * stride + static_cast<std::size_t>(j)] = d;
        dist_[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(id)] = d;
    }
    members_.push_back(std::move(m));
}

void SubPopulation::set_cost(int i, double cost, bool range_violation) {
    members_[static_cast<std::size_t>(i)].cost = cost;
    members_[static_cast<std::size_t>(i)].range_violation = range_violation;
}

int SubPopulation::cost_best_index() const {
    int best = -1;
    for (int i = 0; i < size(); ++i) {
        if (best < 0 || members_[static_cast<std::size_t>(i)].cost <
                            members_[static_cast<std::size_t>(best)].cost)
            best = i;
    }
    return best;
}

double SubPopulation::distance(int i, int j) const {
    return dist_[static_cast<std::size_t>(i) * static_cast<std::size_t>(capacity_) +
                 static_cast<std::size_t>(j)];
}

double SubPopulation::delta(int i) const {
    const int s = size();
    if (s < 2) return 0.0;
    double d1 = 2.0, d2 = 2.0; // distances are in [0,1]
    for (int j = 0; j < s; ++j) {
        if (j == i) continue;
        const double d = distance(i, j);
        if (d < d1) {
            d2 = d1;
            d1 = d;
        } else if (d < d2) {
            d2 = d;
        }
    }
    if (s == 2) return d1;
    return 0.5 * (d1 + d2);
}

double SubPopulation::fitness_of(int i, double elite_frac) const {
    return members_[static_cast<std::size_t>(i)].cost * std::pow(1.0 - elite_frac, delta(i));
}

std::vector<int> SubPopulation::ranked(double elite_frac) const {
    std::vector<std::pair<double, int>> order;
    order.reserve(static_cast<std::size_t>(size()));
    for (int i = 0; i < size(); ++i) order.emplace_back(fitness_of(i, elite_frac), i);
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return members_[static_cast<std::size_t>(a.second)].seq <
               members_[static_cast<std::size_t>(b.second)].seq;
    });
    std::vector<int> out;
    out.reserve(order.size());
    for (const auto& [f, i] : order) out.push_back(i);
    return out;
}

void SubPopulation::keep(const std::vector<int>& indices) {
    std::vector<Member> kept;
    kept.reserve(indices.size());
    for (int i : indices) kept.push_back(std::move(members_[static_cast<std::size_t>(i)]));

    const std::size_t stride = static_cast<std::size_t>(capacity_);
    std::vector<double> nd(dist_.size(), 0.0);
    for (std::size_t a = 0; a < indices.size(); ++a) {
        for (std::size_t b = 0; b < indices.size(); ++b) {
            nd[a * stride + b] = dist_[static_cast<std::size_t>(indices[a]) * stride +
                                       static_cast<std::size_t>(indices[b])];
        }
    }
    members_ = std::move(kept);
    dist_ = std::move(nd);
}

void SubPopulation::truncate(int n_keep, double elite_frac) {
    if (n_keep >= size()) return;
    std::vector<int> sel = ranked(elite_frac);
    sel.resize(static_cast<std::size_t>(n_keep));
    const int best = cost_best_index();
    if (std::find(sel.begin(), sel.end(), best) == sel.end()) sel.back() = best;
    std::sort(sel.begin(), sel.end(),
              [&](int a, int b) { return members_[static_cast<std::size_t>(a)].seq <
                                         members_[static_cast<std::size_t>(b)].seq; });
    keep(sel);
}

void SubPopulation::select_survivors(int mu, double elite_frac) {
    truncate(mu, elite_frac);
}

Population::Population(const Instance& inst, const SolverConfig& cfg)
    : inst_(&inst), cfg_(&cfg), decoder_(inst), w1_(cfg.w1_init), w2_(cfg.w2_init) {
    cfg.validate();
    const int cap = cfg.mu + cfg.lambda;
    keys_.push_back(FeasibilityClass::Feasible);
    keys_.push_back(FeasibilityClass::Type1);
    if (inst.profile().limited_range()) keys_.push_back(FeasibilityClass::Type2);
    for (std::size_t i = 0; i < keys_.size(); ++i) pops_.emplace_back(cap);
}

int Population::slot(FeasibilityClass cls) const {
    for (std::size_t i = 0; i < keys_.size(); ++i)
        if (keys_[i] == cls) return static_cast<int>(i);
    return -1;
}

bool Population::has_subpop(FeasibilityClass cls) const { return slot(cls) >= 0; }

SubPopulation& Population::subpop(FeasibilityClass cls) {
    const int s = slot(cls);
    if (s < 0) throw std::logic_error("no subpopulation for this feasibility class");
    return pops_[static_cast<std::size_t>(s)];
}

const SubPopulation& Population::subpop(FeasibilityClass cls) const {
    const int s = slot(cls);
    if (s < 0) throw std::logic_error("no subpopulation for this feasibility class");
    return pops_[static_cast<std::size_t>(s)];
}

int Population::size(FeasibilityClass cls) const {
    const int s = slot(cls);
    return s < 0 ? 0 : pops_[static_cast<std::size_t>(s)].size();
}

int Population::total_size() const {
    int t = 0;
    for (const auto& p : pops_) t += p.size();
    return t;
}

void Population::set_penalties(double w1, double w2) {
    if (w1 < cfg_->w_min || w1 > cfg_->w_max || w2 < cfg_->w_min || w2 > cfg_->w_max)
        throw std::invalid_argument("penalties out of [w_min, w_max]");
    w1_ = w1;
    w2_ = w2;
}

void Population::insert(FeasibilityClass cls, Member m) {
    m.seq = next_seq_++;
    subpop(cls).insert(std::move(m));
}

void Population::record_offspring_class(FeasibilityClass cls) {
    constexpr std::size_t kWindow = 100;
    if (window_.size() == kWindow) {
        --window_counts_[static_cast<std::size_t>(window_.front())];
        window_.pop_front();
    }
    window_.push_back(cls);
    ++window_counts_[static_cast<std::size_t>(cls)];
}

double Population::xi_feasible() const {
    if (window_.empty()) return 0.0;
    return static_cast<double>(window_counts_[0]) / static_cast<double>(window_.size());
}

double Population::xi_type1() const {
    if (window_.empty()) return 0.0;
    return static_cast<double>(window_counts_[1]) / static_cast<double>(window_.size());
}

double Population::xi_type2() const {
    if (window_.empty()) return 0.0;
    return static_cast<double>(window_counts_[2]) / static_cast<double>(window_.size());
}

void Population::adjust_penalties() {
    if (window_.empty()) return;
    const double xi_f = xi_feasible();
    const double xi_m = xi_type1();
    const double xi_r = xi_type2();
    if (xi_f < cfg_->xi_ref - cfg_->zeta) {
        if (xi_r < xi_m)
            w1_ = std::min(cfg_->eta_increase * w1_, cfg_->w_max);
        else
            w2_ = std::min(cfg_->eta_increase * w2_, cfg_->w_max);
    } else if (xi_f > cfg_->xi_ref + cfg_->zeta) {
        if (xi_r < xi_m)
            w2_ = std::max(cfg_->eta_decrease * w2_, cfg_->w_min);
        else
            w1_ = std::max(cfg_->eta_decrease * w1_, cfg_->w_min);
    }
}

const Member& Population::tournament_select(Rng& rng) const {
    const int total = total_size();
    if (total == 0) throw std::logic_error("tournament over an empty population");

    auto pick = [&](int flat) -> std::pair<int, int> {
        for (std::size_t s = 0; s < pops_.size(); ++s) {
            if (flat < pops_[s].size()) return {static_cast<int>(s), flat};
            flat -= pops_[s].size();
        }
        throw std::logic_error("flat index out of range");
    };

    int best_pop = -1;
    int best_idx = -1;
    double best_fit = 0.0;
    for (int k = 0; k < cfg_->k_tournament; ++k) {
        const auto [p, i] = pick(uniform_int(rng, 0, total - 1));
        const double fit = pops_[static_cast<std::size_t>(p)].fitness_of(i, cfg_->elite_frac);
        if (best_pop < 0 || fit < best_fit) {
            best_pop = p;
            best_idx = i;
            best_fit = fit;
        }
    }
    return pops_[static_cast<std::size_t>(best_pop)].member(best_idx);
}

void Population::select_survivors(FeasibilityClass cls) {
    SubPopulation& sp = subpop(cls);
    if (cls != FeasibilityClass::Feasible) {
        for (int i = 0; i < sp.size(); ++i) {
            const auto info = decoder_.cost(sp.member(i).ch, w1_, w2_);
            sp.set_cost(i, info.cost, info.range_violation);
        }
    }
    sp.select_survivors(cfg_->mu, cfg_->elite_frac);
}

void Population::truncate_for_diversify() {
    const int n_keep = static_cast<int>(std::ceil(cfg_->best_frac * cfg_->mu));
    for (auto& p : pops_) p.truncate(n_keep, cfg_->elite_frac);
}

const Member* Population::best_feasible() const {
    const SubPopulation& sp = pops_[0];
    if (sp.empty()) return nullptr;
    return &sp.member(sp.cost_best_index());
}

} // namespace hgatac
