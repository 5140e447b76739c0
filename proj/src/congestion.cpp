#include "tppp/congestion.hpp"

#include <cmath>

#include "tppp/analytic.hpp"
#include "tppp/metadist.hpp"
#include "tppp/numerics.hpp"

namespace tppp {

namespace {

// Exponent slope of the TPPP success probability: ln p_m = -lambda p K.
double success_exponent_k(const NetworkParams& q) {
    double delta = q.delta();
    double D = q.d_link;
    return q.m * D * std::pow(q.theta, delta / 2) * gamma_pair(delta / 2) +
           q.mu * M_PI * D * D * std::pow(q.theta, delta) * gamma_pair(delta);
}

NetworkParams with_rate(const NetworkParams& fixed, double lambda, double p) {
    NetworkParams q = fixed;
    q.lambda = lambda;
    q.p = p;
    return q;
}

} // namespace

std::vector<ContourPoint> contour_success(const ContourRequest& req) {
    double K = success_exponent_k(req.fixed);
    std::vector<ContourPoint> out;
    for (double lambda : req.lambda_grid) {
        ContourPoint pt;
        pt.lambda = lambda;
        pt.p = -std::log(req.target_q) / (lambda * K);
        if (pt.p > 1.0) {
            pt.feasible = false;
            pt.p = 1.0;
            pt.achieved = success_prob_tppp_plp(with_rate(req.fixed, lambda, 1.0));
        } else {
            pt.feasible = true;
            pt.achieved = req.target_q;
        }
        out.push_back(pt);
    }
    return out;
}

std::vector<ContourPoint> contour_md(const ContourRequest& req) {
    double x = *req.reliability_x;
    std::vector<ContourPoint> out;
    for (double lambda : req.lambda_grid) {
        auto residual = [&](double p) {
            return md_beta(PointProcessModel::TPPP_PLP,
                           with_rate(req.fixed, lambda, p), x) -
                   req.target_q;
        };
        ContourPoint pt;
        pt.lambda = lambda;
        try {
            pt.p = brent_root(residual, 1e-9, 1.0, 1e-13);
            pt.feasible = true;
            pt.achieved = req.target_q;
        } catch (const NoSignChange&) {
            pt.p = 1.0;
            pt.feasible = false;
            pt.achieved = md_beta(PointProcessModel::TPPP_PLP,
                                  with_rate(req.fixed, lambda, 1.0), x);
        }
        out.push_back(pt);
    }
    return out;
}

std::vector<ValidationRow> validate_against_exact(
    const std::vector<ContourPoint>& pairs, const NetworkParams& params,
    double x, const SimConfig& sim) {
    std::vector<ValidationRow> out;
    for (const auto& pt : pairs) {
        NetworkParams q = with_rate(params, pt.lambda, pt.p);
        ValidationRow row;
        row.lambda = pt.lambda;
        row.p = pt.p;
        if (sim.n_realizations > 0) {
            SimConfig one = sim;
            one.x_grid = {x};
            row.exact_md =
                estimate_md(PointProcessModel::PLP_PPP, q, one).estimates[0];
        } else {
            row.exact_md = md_exact(PointProcessModel::PLP_PPP, q, x);
        }
        row.deviation = row.exact_md - pt.achieved;
        out.push_back(row);
    }
    return out;
}

std::pair<double, double> success_range_along_md_contour(
    const ContourRequest& req) {
    auto pairs = req.reliability_x ? contour_md(req) : contour_success(req);
    double lo = 1.0, hi = 0.0;
    for (const auto& pt : pairs) {
        if (!pt.feasible) continue;
        double ps = req.reliability_x
                        ? success_prob_tppp_plp(
                              with_rate(req.fixed, pt.lambda, pt.p))
                        : pt.achieved;
        lo = std::min(lo, ps);
        hi = std::max(hi, ps);
    }
    return {lo, hi};
}

} // namespace tppp
