#pragma once

#include <cstdint>
#include <vector>

#include "hgatac/chromosome.hpp"
#include "hgatac/instance.hpp"

namespace hgatac {

/// One drone sortie: launch at a truck node, serve `chain`, rejoin at `land`.
/// Feasible solutions always carry a single-customer chain; longer chains only
/// appear in penalized evaluations of type-1 infeasible chromosomes.
struct Operation {
    int launch = 0;
    std::vector<int> chain;
    int land = 0;
    /// Duration as priced by the decoder; includes penalty surcharges when the
    /// evaluation ran in penalized mode.
    double duration = 0.0;
    /// Raw endurance check of this sortie, ignoring penalties.
    bool violates_endurance = false;
};

struct StateCost {
    int node = 0;
    double cost = 0.0;
};

struct DecodedSolution {
    double completion_time = 0.0;
    std::vector<Operation> operations;
    /// Every node the truck visits, 0 first and 0' (= n+1) last.
    std::vector<int> truck_route;
    bool range_violation = false;
    bool type1_violation = false;
    /// Cost-to-go values along the optimal decision path, ending at (0', 0).
    std::vector<StateCost> state_costs;
};

FeasibilityClass classify(const Chromosome& ch, const DecodedSolution& decoded);

/// Sentinel for states with no admissible decision. Strictly larger than any
/// priced solution, kept finite so comparisons stay totally ordered.
inline constexpr double kUnreachable = 1e30;
/// Penalized terms saturate here; exponential type-1 chain penalties would
/// otherwise overflow while their ordering is all that matters.
inline constexpr double kPenaltyCap = 1e24;

/// Backward dynamic program that prices a chromosome by choosing, for every
/// drone customer, the optimal launch and rendezvous nodes. States are the
/// truck nodes of the affixed sequence 0, genes..., 0'; at each the decoder
/// either moves the truck to the next truck node or launches a sortie. Runs
/// in O(n^2). Keeps scratch buffers so repeated evaluations do not allocate.
class JoinDecoder {
public:
    struct CostInfo {
        double cost = 0.0;
        bool range_violation = false;
    };

    explicit JoinDecoder(const Instance& inst) : inst_(&inst) {}

    const Instance& instance() const { return *inst_; }

    /// Penalized evaluation (w1, w2 >= 1): type-1 chains priced with powers of
    /// w1, endurance excesses priced with w2. Never returns kUnreachable.
    CostInfo cost(const Chromosome& ch, double w1, double w2);

    /// Penalized evaluation with full solution reconstruction.
    DecodedSolution decode(const Chromosome& ch, double w1, double w2);

    /// Strict evaluation: endurance-violating sorties are inadmissible.
    /// Throws if the chromosome has adjacent drone genes. When no admissible
    /// rendezvous assignment exists the solution is re-priced with w1 = w2 = 1
    /// and flagged with range_violation so callers can classify it as type 2.
    DecodedSolution decode_feasible(const Chromosome& ch);

private:
    enum class Mode { Strict, Penalized };

    struct Run {
        int a = 0;            // first position of the drone run
        int b = 0;            // last position of the drone run
        int first_node = 0;
        int last_node = 0;
        double mid_raw = 0.0; // flight time between chain customers
        double mid_pen = 0.0; // same, with w1 powers applied
    };

    struct Record {
        enum Kind : std::uint8_t { Terminal, MoveTruck, LaunchLand };
        Kind kind = Terminal;
        int next = -1;        // truck-state index reached (for LaunchLand: landing)
        int run = -1;
        bool stationary = false;
        bool violates = false;
        double duration = 0.0;
    };

    void prepare(const Chromosome& ch);
    void run_dp(Mode mode, double w1, double w2);
    double eval_state(int u_tidx, int next_run, Mode mode, double w2, Record& rec) const;
    DecodedSolution reconstruct(const Chromosome& ch) const;
    bool walk_range_violation() const;

    const Instance* inst_;

    // sequence layout scratch, rebuilt by prepare()
    std::vector<int> pos_node_;
    std::vector<std::uint8_t> pos_drone_;
    std::vector<int> tpos_;
    std::vector<int> tidx_of_pos_;
    std::vector<double> ctt_;
    std::vector<Run> runs_;
    std::vector<int> next_run_;

    // dp tables
    std::vector<double> cost_;
    std::vector<Record> rec_;
    std::vector<double> vcost_;
    std::vector<Record> vrec_;
};

/// Penalized decode of a chromosome (validates inputs, then runs JoinDecoder).
DecodedSolution join(const Instance& inst, const Chromosome& ch, double w1, double w2);

/// Strict decode for chromosomes without adjacent drone genes.
DecodedSolution join_feasible(const Instance& inst, const Chromosome& ch);

} // namespace hgatac
