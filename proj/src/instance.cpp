#include "hgatac/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hgatac {

AssumptionProfile AssumptionProfile::tspd(double endurance) {
    AssumptionProfile p;
    p.kind = ProblemKind::Tspd;
    p.endurance = endurance;
    p.launch_setup = 0.0;
    p.retrieval_setup = 0.0;
    p.allow_land_at_launch_node = true;
    p.stationary_truck_rendezvous = true;
    return p;
}

AssumptionProfile AssumptionProfile::fstsp(double endurance, double launch_setup,
                                           double retrieval_setup) {
    AssumptionProfile p;
    p.kind = ProblemKind::Fstsp;
    p.endurance = endurance;
    p.launch_setup = launch_setup;
    p.retrieval_setup = retrieval_setup;
    p.allow_land_at_launch_node = false;
    p.stationary_truck_rendezvous = false;
    return p;
}

Instance::Instance(std::string name, int customers, std::vector<double> truck_times,
                   std::vector<double> drone_times, AssumptionProfile profile,
                   std::vector<std::uint8_t> drone_eligible)
    : name_(std::move(name)),
      n_(customers),
      truck_(std::move(truck_times)),
      drone_(std::move(drone_times)),
      profile_(profile),
      eligible_(std::move(drone_eligible)) {
    if (n_ < 1) throw std::invalid_argument("instance needs at least one customer");
    const std::size_t dim = static_cast<std::size_t>(n_ + 2);
    if (truck_.size() != dim * dim || drone_.size() != dim * dim)
        throw std::invalid_argument("travel time matrices must be (n+2)^2");
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            double t = truck_[i * dim + j];
            double d = drone_[i * dim + j];
            if (!std::isfinite(t) || !std::isfinite(d))
                throw std::invalid_argument("travel times must be finite");
            if (t < 0.0 || d < 0.0) throw std::invalid_argument("travel times must be nonnegative");
            if (i == j && (t != 0.0 || d != 0.0))
                throw std::invalid_argument("matrix diagonal must be zero");
            max_truck_ = std::max(max_truck_, t);
            max_drone_ = std::max(max_drone_, d);
        }
    }
    if (eligible_.empty()) {
        eligible_.assign(static_cast<std::size_t>(n_) + 1, 1);
        eligible_[0] = 0;
    }
    if (eligible_.size() != static_cast<std::size_t>(n_) + 1)
        throw std::invalid_argument("eligibility vector must cover customers 1..n");
    eligible_[0] = 0;
    if (profile_.endurance < 0.0 || std::isnan(profile_.endurance))
        throw std::invalid_argument("endurance must be nonnegative");
    if (profile_.launch_setup < 0.0 || profile_.retrieval_setup < 0.0)
        throw std::invalid_argument("setup times must be nonnegative");
}

std::size_t Instance::idx(int from, int to) const {
    if (from < 0 || from >= nodes() || to < 0 || to >= nodes())
        throw std::out_of_range("node index out of range");
    return static_cast<std::size_t>(from) * static_cast<std::size_t>(nodes()) +
           static_cast<std::size_t>(to);
}

bool Instance::drone_eligible(int customer) const {
    if (customer < 1 || customer > n_) return false;
    return eligible_[static_cast<std::size_t>(customer)] != 0;
}

int Instance::drone_eligible_count() const {
    int c = 0;
    for (int i = 1; i <= n_; ++i)
        if (drone_eligible(i)) ++c;
    return c;
}

double truck_leg_time(const Instance& inst, std::span<const int> path) {
    if (path.empty()) throw std::invalid_argument("truck path must contain at least one node");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        total += inst.truck_time(path[i], path[i + 1]);
    return total;
}

double operation_time(const Instance& inst, double truck_leg, int i, std::span<const int> chain,
                      int k, bool relaunch_at_k) {
    if (chain.empty()) throw std::invalid_argument("sortie needs at least one drone customer");
    double flight = inst.drone_time(i, chain.front());
    for (std::size_t q = 0; q + 1 < chain.size(); ++q)
        flight += inst.drone_time(chain[q], chain[q + 1]);
    flight += inst.drone_time(chain.back(), k);
    const AssumptionProfile& p = inst.profile();
    if (p.kind == ProblemKind::Tspd) return std::max(truck_leg, flight);
    double truck_side = truck_leg + p.retrieval_setup + (relaunch_at_k ? p.launch_setup : 0.0);
    double drone_side = flight + p.retrieval_setup;
    return std::max(truck_side, drone_side);
}

double operation_time(const Instance& inst, int i, std::span<const int> chain, int k,
                      bool relaunch_at_k) {
    return operation_time(inst, inst.truck_time(i, k), i, chain, k, relaunch_at_k);
}

} // namespace hgatac
