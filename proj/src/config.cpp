#include "hgatac/config.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace hgatac {

void SolverConfig::validate() const {
    if (mu < 1 || lambda < 1) throw std::invalid_argument("mu and lambda must be positive");
    if (zeta < 0.0 || zeta > 1.0) throw std::invalid_argument("zeta must be in [0,1]");
    if (eta_increase < 1.0) throw std::invalid_argument("eta_I must be >= 1");
    if (eta_decrease <= 0.0 || eta_decrease > 1.0)
        throw std::invalid_argument("eta_D must be in (0,1]");
    if (elite_frac < 0.0 || elite_frac >= 1.0)
        throw std::invalid_argument("n_elite fraction must be in [0,1)");
    if (best_frac <= 0.0 || best_frac > 1.0)
        throw std::invalid_argument("n_best fraction must be in (0,1]");
    if (xi_ref < 0.0 || xi_ref > 1.0) throw std::invalid_argument("xi_ref must be in [0,1]");
    if (p_repair < 0.0 || p_repair > 1.0 || p_mutation < 0.0 || p_mutation > 1.0 ||
        sign_flip_prob < 0.0 || sign_flip_prob > 1.0 || swap_prob < 0.0 || swap_prob > 1.0)
        throw std::invalid_argument("probabilities must be in [0,1]");
    if (close_frac <= 0.0 || close_frac > 1.0)
        throw std::invalid_argument("n_close fraction must be in (0,1]");
    if (it_ni < 1 || it_div < 1 || it_loc < 1)
        throw std::invalid_argument("iteration thresholds must be positive");
    if (k_tournament < 1) throw std::invalid_argument("k_tournament must be positive");
    if (w_min < 1.0 || w_max < w_min) throw std::invalid_argument("need 1 <= w_min <= w_max");
    if (w1_init < w_min || w1_init > w_max || w2_init < w_min || w2_init > w_max)
        throw std::invalid_argument("initial penalties must lie within [w_min, w_max]");
    if (max_ls_passes < 1) throw std::invalid_argument("max_ls_passes must be positive");
    if (escape_capacity < 1 || escape_max_iter < 1 || escape_epsilon < 0.0)
        throw std::invalid_argument("escape parameters out of range");
    if (time_limit_s < 0.0) throw std::invalid_argument("time limit must be nonnegative");
}

SolverConfig SolverConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

    SolverConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const auto& v = it.value();
        if (key == "mu") cfg.mu = v.get<int>();
        else if (key == "lambda") cfg.lambda = v.get<int>();
        else if (key == "zeta") cfg.zeta = v.get<double>();
        else if (key == "eta_I") cfg.eta_increase = v.get<double>();
        else if (key == "eta_D") cfg.eta_decrease = v.get<double>();
        else if (key == "n_elite") cfg.elite_frac = v.get<double>();
        else if (key == "n_best") cfg.best_frac = v.get<double>();
        else if (key == "xi_ref") cfg.xi_ref = v.get<double>();
        else if (key == "p_repair") cfg.p_repair = v.get<double>();
        else if (key == "p_m") cfg.p_mutation = v.get<double>();
        else if (key == "n_close") cfg.close_frac = v.get<double>();
        else if (key == "it_NI") cfg.it_ni = v.get<int>();
        else if (key == "it_DIV") cfg.it_div = v.get<int>();
        else if (key == "it_LOC") cfg.it_loc = v.get<int>();
        else if (key == "k_tournament") cfg.k_tournament = v.get<int>();
        else if (key == "w1") cfg.w1_init = v.get<double>();
        else if (key == "w2") cfg.w2_init = v.get<double>();
        else if (key == "w_min") cfg.w_min = v.get<double>();
        else if (key == "w_max") cfg.w_max = v.get<double>();
        else if (key == "sign_flip_prob") cfg.sign_flip_prob = v.get<double>();
        else if (key == "swap_prob") cfg.swap_prob = v.get<double>();
        else if (key == "max_ls_passes") cfg.max_ls_passes = v.get<int>();
        else if (key == "enable_l_moves") cfg.enable_l_moves = v.get<bool>();
        else if (key == "enable_escape") cfg.enable_escape = v.get<bool>();
        else if (key == "escape_capacity") cfg.escape_capacity = v.get<int>();
        else if (key == "escape_epsilon") cfg.escape_epsilon = v.get<double>();
        else if (key == "escape_max_iter") cfg.escape_max_iter = v.get<int>();
        else if (key == "time_limit") cfg.time_limit_s = v.get<double>();
        else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
        else throw std::invalid_argument("unknown config key: " + key);
    }
    cfg.validate();
    return cfg;
}

} // namespace hgatac
