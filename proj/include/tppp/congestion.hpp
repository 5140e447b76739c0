#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tppp/model.hpp"
#include "tppp/montecarlo.hpp"

namespace tppp {

// A rate-control contour query: find p per lambda so that either the
// TPPP success probability (success mode) or the beta-approximated TPPP
// meta distribution at reliability_x (MD mode) equals target_q.
struct ContourRequest {
    double target_q = 0.9;
    std::optional<double> reliability_x; // set = MD mode
    std::vector<double> lambda_grid;
    NetworkParams fixed; // lambda and p are overridden per grid point
};

struct ContourPoint {
    double lambda = 0;
    double p = 0;
    bool feasible = true;
    // the metric actually achieved: target_q when feasible, otherwise
    // the best (p = 1) achievable value
    double achieved = 0;
};

std::vector<ContourPoint> contour_success(const ContourRequest& req);
std::vector<ContourPoint> contour_md(const ContourRequest& req);

struct ValidationRow {
    double lambda = 0;
    double p = 0;
    double exact_md = 0;
    double deviation = 0;
};

// Exact PLP-PPP meta distribution evaluated at each contour pair;
// empirical (Monte Carlo) when sim.n_realizations > 0, analytic
// Gil-Pelaez otherwise.
std::vector<ValidationRow> validate_against_exact(
    const std::vector<ContourPoint>& pairs, const NetworkParams& params,
    double x, const SimConfig& sim);

// Range of the TPPP success probability along a contour's feasible part.
std::pair<double, double> success_range_along_md_contour(
    const ContourRequest& req);

} // namespace tppp
