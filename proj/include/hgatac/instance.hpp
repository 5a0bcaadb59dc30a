#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hgatac {

enum class ProblemKind { Tspd, Fstsp };

/// Operational assumptions a solver run has to respect. TSPD and FSTSP share
/// the same data layout and differ only in these switches.
struct AssumptionProfile {
    ProblemKind kind = ProblemKind::Tspd;
    /// Maximum time the drone may stay airborne per sortie (infinity = unlimited).
    double endurance = std::numeric_limits<double>::infinity();
    /// Setup time charged when the drone is launched from the truck (FSTSP s_L).
    double launch_setup = 0.0;
    /// Retrieval time charged when the drone rejoins the truck (FSTSP s_R).
    double retrieval_setup = 0.0;
    /// TSPD lets a sortie end on the node it started from; FSTSP forbids it.
    bool allow_land_at_launch_node = true;
    /// TSPD lets the truck park and wait for the drone mid-sortie.
    bool stationary_truck_rendezvous = true;

    bool limited_range() const { return endurance < std::numeric_limits<double>::infinity(); }

    static AssumptionProfile tspd(double endurance = std::numeric_limits<double>::infinity());
    static AssumptionProfile fstsp(double endurance, double launch_setup = 1.0,
                                   double retrieval_setup = 1.0);
};

/// A routing instance over nodes 0 (start depot), 1..n (customers) and
/// n+1 (return depot, a copy of the start depot). Travel time matrices are
/// dense (n+2)^2 and need not be symmetric or metric.
class Instance {
public:
    Instance(std::string name, int customers, std::vector<double> truck_times,
             std::vector<double> drone_times, AssumptionProfile profile,
             std::vector<std::uint8_t> drone_eligible = {});

    const std::string& name() const { return name_; }
    const AssumptionProfile& profile() const { return profile_; }

    int customers() const { return n_; }
    int nodes() const { return n_ + 2; }
    int start_depot() const { return 0; }
    int return_depot() const { return n_ + 1; }

    double truck_time(int from, int to) const { return truck_[idx(from, to)]; }
    double drone_time(int from, int to) const { return drone_[idx(from, to)]; }

    /// True when the customer may be served by the drone. Depots are never
    /// drone-served. TSPD instances usually leave every customer eligible.
    bool drone_eligible(int customer) const;
    int drone_eligible_count() const;

    double max_truck_time() const { return max_truck_; }
    double max_drone_time() const { return max_drone_; }

private:
    std::size_t idx(int from, int to) const;

    std::string name_;
    int n_;
    std::vector<double> truck_;
    std::vector<double> drone_;
    AssumptionProfile profile_;
    std::vector<std::uint8_t> eligible_;
    double max_truck_ = 0.0;
    double max_drone_ = 0.0;
};

/// Sum of consecutive truck legs along `path` (at least one node).
double truck_leg_time(const Instance& inst, std::span<const int> path);

/// Duration of one sortie: launch at i, serve the drone `chain`, rejoin the
/// truck at k. `truck_leg` is the truck travel time from i to k through
/// whatever customers the truck serves meanwhile; the caller supplies it
/// because the decoder knows the route and this function does not.
/// TSPD: max(truck leg, drone legs). FSTSP adds the retrieval setup to both
/// sides and the launch setup to the truck side when the drone relaunches
/// from k immediately.
double operation_time(const Instance& inst, double truck_leg, int i, std::span<const int> chain,
                      int k, bool relaunch_at_k);

/// Convenience overload using the direct truck leg i -> k.
double operation_time(const Instance& inst, int i, std::span<const int> chain, int k,
                      bool relaunch_at_k);

} // namespace hgatac
