#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tppp/analytic.hpp"
#include "tppp/congestion.hpp"
#include "tppp/metadist.hpp"
#include "tppp/numerics.hpp"

using namespace tppp;

namespace {

NetworkParams fig12_params() {
    NetworkParams p;
    p.mu = 1;
    p.d_link = 0.25;
    p.alpha = 4;
    p.theta = 1; // 0 dB
    return p;
}

ContourRequest md_request(double q, double x,
                          const std::vector<double>& lambdas) {
    ContourRequest req;
    req.target_q = q;
    req.reliability_x = x;
    req.lambda_grid = lambdas;
    req.fixed = fig12_params();
    return req;
}

std::vector<double> inv_lambda_grid() {
    // the x = 0.5, q = 0.9 contour stays feasible (p < 1) up to 1/lambda = 7
    std::vector<double> lambdas;
    for (double inv = 1.0; inv <= 7.01; inv += 1.0)
        lambdas.push_back(1.0 / inv);
    return lambdas;
}

} // namespace

TEST_CASE("success-mode contour closed form") {
    ContourRequest req;
    req.target_q = 0.9;
    req.lambda_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
    req.fixed = fig12_params();
    auto pts = contour_success(req);
    REQUIRE(pts.size() == 5);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& pt = pts[i];
        REQUIRE(pt.feasible);
        CHECK(pt.p > 0);
        CHECK(pt.p <= 1.0);
        // exact inverse: achieved success probability equals the target
        NetworkParams q = req.fixed;
        q.lambda = pt.lambda;
        q.p = pt.p;
        CHECK(std::abs(success_prob_tppp_plp(q) - req.target_q) < 1e-10);
        // lambda p = C: doubling lambda halves p
        CHECK(pt.lambda * pt.p ==
              doctest::Approx(pts[0].lambda * pts[0].p).epsilon(1e-12));
    }
    // two routes: closed form vs direct root finding
    for (const auto& pt : pts) {
        double root = brent_root(
            [&](double p) {
                NetworkParams q = req.fixed;
                q.lambda = pt.lambda;
                q.p = p;
                return success_prob_tppp_plp(q) - req.target_q;
            },
            1e-9, 1.0);
        CHECK(std::abs(root - pt.p) < 1e-8);
    }
}

TEST_CASE("success-mode trivial and infeasible cases") {
    ContourRequest req;
    req.target_q = 1.0;
    req.lambda_grid = {0.5, 1.0};
    req.fixed = fig12_params();
    for (const auto& pt : contour_success(req)) CHECK(pt.p == 0.0);
    // tiny density + demanding target: infeasible, report best at p=1
    req.target_q = 0.5;
    req.lambda_grid = {1e-3};
    auto pts = contour_success(req);
    REQUIRE(pts.size() == 1);
    CHECK(!pts[0].feasible);
    NetworkParams q = req.fixed;
    q.lambda = 1e-3;
    q.p = 1.0;
    CHECK(pts[0].achieved == doctest::Approx(success_prob_tppp_plp(q)));
    CHECK(pts[0].achieved > 0.5); // the gap report: p=1 overshoots the target
}

TEST_CASE("md-mode contour residuals and non-constant lambda p") {
    auto req = md_request(0.9, 0.5, inv_lambda_grid());
    auto pts = contour_md(req);
    double lp_min = 1e300, lp_max = 0;
    for (const auto& pt : pts) {
        REQUIRE(pt.feasible);
        NetworkParams q = req.fixed;
        q.lambda = pt.lambda;
        q.p = pt.p;
        CHECK(std::abs(md_beta(PointProcessModel::TPPP_PLP, q, 0.5) - 0.9) <
              1e-8);
        lp_min = std::min(lp_min, pt.lambda * pt.p);
        lp_max = std::max(lp_max, pt.lambda * pt.p);
    }
    CHECK(lp_max / lp_min > 1.01); // MD contours are not lambda p = C lines
}

TEST_CASE("md-mode contour curvature in the (1/lambda, p) plane") {
    // equally spaced 1/lambda so the sign of the second difference is
    // the sign of the curvature; each x gets a window where the whole
    // contour is feasible (p < 1)
    auto curvature = [&](double x, double inv_lo, double inv_hi, double step) {
        std::vector<double> lambdas;
        for (double inv = inv_lo; inv <= inv_hi + 1e-9; inv += step)
            lambdas.push_back(1.0 / inv);
        auto pts = contour_md(md_request(0.9, x, lambdas));
        std::vector<double> p;
        for (const auto& pt : pts) {
            REQUIRE(pt.feasible);
            p.push_back(pt.p);
        }
        double worst_pos = -1e300, worst_neg = 1e300;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            double d2 = p[i + 1] - 2 * p[i] + p[i - 1];
            worst_pos = std::max(worst_pos, d2);
            worst_neg = std::min(worst_neg, d2);
        }
        return std::pair{worst_neg, worst_pos};
    };
    auto [neg9, pos9] = curvature(0.9, 4.0, 10.0, 1.0);
    CHECK(neg9 > -1e-12); // convex at x = 0.9
    auto [neg1, pos1] = curvature(0.1, 0.25, 2.75, 0.25);
    CHECK(pos1 < 1e-12); // concave at x = 0.1
}

TEST_CASE("contour p decreases with the reliability target") {
    for (double lambda : {1.0, 4.0}) {
        double prev = 2.0;
        for (double q : {0.8, 0.9, 0.95, 0.98}) {
            auto pts = contour_md(md_request(q, 0.5, {lambda}));
            REQUIRE(pts.size() == 1);
            REQUIRE(pts[0].feasible);
            CHECK(pts[0].p < prev);
            prev = pts[0].p;
        }
    }
}

TEST_CASE("success probability range along md contours") {
    // success-probability mode collapses to (q, q)
    ContourRequest sreq;
    sreq.target_q = 0.9;
    sreq.lambda_grid = {0.5, 1.0, 2.0};
    sreq.fixed = fig12_params();
    auto [lo_s, hi_s] = success_range_along_md_contour(sreq);
    CHECK(lo_s == doctest::Approx(0.9).epsilon(1e-10));
    CHECK(hi_s == doctest::Approx(0.9).epsilon(1e-10));
    // the q=0.9, x=0.8 MD contour trades some average success away: at
    // high density the required p gives p2 well below 0.9
    std::vector<double> wide;
    for (double inv = 0.125; inv <= 8.01; inv *= 2) wide.push_back(1.0 / inv);
    auto [lo, hi] = success_range_along_md_contour(md_request(0.9, 0.8, wide));
    CHECK(lo < 0.9);
    CHECK(lo > 0.8);
    // refinement stability of the endpoints
    std::vector<double> fine;
    for (double inv = 0.125; inv <= 8.01; inv *= std::sqrt(2.0))
        fine.push_back(1.0 / inv);
    auto [lo_f, hi_f] = success_range_along_md_contour(md_request(0.9, 0.8, fine));
    CHECK(std::abs(lo_f - lo) < 1e-3);
    CHECK(std::abs(hi_f - hi) < 1e-3);
}

TEST_CASE("validation against the exact plp-ppp md") {
    SimConfig sim;
    sim.n_realizations = 20000;
    sim.seed = 2718;
    CHECK(validate_against_exact({}, fig12_params(), 0.5, sim).empty());
    for (double x : {0.5, 0.9}) {
        auto req = md_request(0.9, x, {1.0, 0.5});
        auto pts = contour_md(req);
        auto rows = validate_against_exact(pts, req.fixed, x, sim);
        REQUIRE(rows.size() == pts.size());
        for (const auto& row : rows) {
            CHECK(std::abs(row.deviation) < 0.03);
        }
    }
}
