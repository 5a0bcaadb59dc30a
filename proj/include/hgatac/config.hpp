#pragma once

#include <cstdint>
#include <string>

namespace hgatac {

/// Tuning knobs of the genetic algorithm. Defaults follow the calibrated
/// values the algorithm was published with; everything can be overridden
/// from a JSON config file.
struct SolverConfig {
    int mu = 15;                 // subpopulation size after survivor selection
    int lambda = 25;             // offspring capacity on top of mu
    double zeta = 0.05;          // dead band around xi_ref
    double eta_increase = 1.1;   // penalty growth factor
    double eta_decrease = 0.9;   // penalty shrink factor
    double elite_frac = 0.2;     // elite share used by the biased fitness
    double best_frac = 0.3;      // share of mu kept on diversification
    double xi_ref = 0.2;         // target share of feasible offspring
    double p_repair = 0.5;
    double p_mutation = 0.1;
    double close_frac = 0.3;     // nearest-neighbor restriction, share of N
    int it_ni = 2500;            // stop after this many non-improving iterations
    int it_div = 100;            // diversify period (non-improving iterations)
    int it_loc = 1000;           // escape period (non-improving iterations)
    int k_tournament = 2;
    double w1_init = 2.0;
    double w2_init = 2.0;
    double w_min = 1.0;
    double w_max = 64.0;
    double sign_flip_prob = 0.1; // per-gene, sign mutation and seed perturbation
    double swap_prob = 0.1;      // per-gene neighbor swap in seed perturbation
    int max_ls_passes = 20;
    bool enable_l_moves = true;
    bool enable_escape = true;
    int escape_capacity = 40;
    double escape_epsilon = 0.05;
    int escape_max_iter = 10000;
    std::uint64_t fill_cap_per_mu = 10000; // seeding attempt cap is this times mu
    double time_limit_s = 0.0;   // wall clock budget per run, 0 = unlimited
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;

    /// Reads overrides from a JSON object file. Unknown keys are an error.
    static SolverConfig load(const std::string& path);
};

} // namespace hgatac
