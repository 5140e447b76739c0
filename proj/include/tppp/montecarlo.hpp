#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tppp/geometry.hpp"
#include "tppp/model.hpp"

namespace tppp {

struct SimConfig {
    int n_realizations = 10000;
    std::uint64_t seed = 1;
    double window_radius = 0; // 0 = truncation-rule default
    std::vector<double> x_grid;
    bool record_raw = false;
};

struct EmpiricalMd {
    std::vector<double> x_grid;
    std::vector<double> estimates; // P(P_m > x)
    std::vector<double> std_errs;  // binomial standard errors
    int n_realizations = 0;
    std::vector<double> raw; // conditional success probabilities, if recorded
};

struct ShadowGapRow {
    double sigma;
    double mark_moment; // E[nu^delta], the density-scaling divisor
    double sup_gap;     // max_x |MD_plp - MD_tppp|
    double std_err;     // combined standard error at the argmax
};

// Conditional success probability of one pattern: fading and ALOHA are
// averaged analytically, geometry and shadowing stay conditioned.
// receiver_mark is the desired link's own shadowing coefficient.
double cond_success_prob(const PointPattern& pattern,
                         const NetworkParams& params,
                         double receiver_mark = 1.0);

EmpiricalMd estimate_md(PointProcessModel model, const NetworkParams& params,
                        const SimConfig& sim);

// Sample mean and standard error of the conditional success probability.
std::pair<double, double> estimate_success_prob(PointProcessModel model,
                                                const NetworkParams& params,
                                                const SimConfig& sim);

// Theorem-6 sweep: for each shadowing level, rescales the street density
// by E[nu^delta] and reports the sup-gap between the empirical PLP-PPP
// and TPPP meta distributions.
std::vector<ShadowGapRow> shadowing_gap_sweep(const NetworkParams& params,
                                              const std::vector<double>& sigmas,
                                              const SimConfig& sim);

} // namespace tppp
