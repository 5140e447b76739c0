#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tppp/metadist.hpp"
#include "tppp/montecarlo.hpp"

using namespace tppp;

namespace {

NetworkParams fig11_params() {
    NetworkParams p;
    p.lambda = 1;
    p.mu = 1;
    p.p = 0.3;
    p.d_link = 0.25;
    p.alpha = 4;
    p.theta = 1; // 0 dB
    return p;
}

} // namespace

TEST_CASE("beta_from_moments") {
    // mean 0.5 forces alpha = beta
    BetaParams bp = beta_from_moments(0.5, 0.3);
    CHECK(bp.alpha_shape == doctest::Approx(bp.beta_shape).epsilon(1e-13));
    CHECK(bp.second_moment() == doctest::Approx(0.3).epsilon(1e-12));
    // randomized feasible moments: back substitution is the identity
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double m1 = 0.05 + 0.9 * uni(rng);
        double m2 = m1 * m1 + (m1 - m1 * m1) * (0.02 + 0.96 * uni(rng));
        BetaParams b = beta_from_moments(m1, m2);
        CHECK(b.alpha_shape > 0);
        CHECK(b.beta_shape > 0);
        CHECK(b.mean() == doctest::Approx(m1).epsilon(1e-12));
        CHECK(b.second_moment() == doctest::Approx(m2).epsilon(1e-12));
    }
    CHECK_THROWS_AS(beta_from_moments(0.5, 0.25), InfeasibleMoments); // zero var
    CHECK_THROWS_AS(beta_from_moments(0.5, 0.6), InfeasibleMoments);
    CHECK_THROWS_AS(beta_from_moments(1.2, 0.5), InfeasibleMoments);
}

TEST_CASE("md_beta endpoints and monotonicity") {
    NetworkParams p = fig11_params();
    CHECK(md_beta(PointProcessModel::TPPP_PLP, p, 0.0) == 1.0);
    CHECK(md_beta(PointProcessModel::TPPP_PLP, p, 1.0) == 0.0);
    double prev = 1.0;
    for (double x = 0.02; x < 1.0; x += 0.02) {
        double v = md_beta(PointProcessModel::TPPP_PLP, p, x);
        CHECK(v <= prev + 1e-12);
        CHECK(v >= 0.0);
        prev = v;
    }
}

TEST_CASE("md_beta degenerate fallback") {
    // lambda p fixed, p -> 0: variance vanishes and the beta fit is
    // ill-conditioned; the MD collapses to a step at m1
    NetworkParams p = fig11_params();
    p.p = 1e-9;
    p.lambda = 0.3e9;
    double m1 = success_prob_tppp_plp(p);
    CHECK(md_beta(PointProcessModel::TPPP_PLP, p, m1 * 0.9) == 1.0);
    CHECK(md_beta(PointProcessModel::TPPP_PLP, p, std::min(1.0, m1 * 1.1)) ==
          0.0);
}

TEST_CASE("md_exact trivial limit with no interferers") {
    NetworkParams p = fig11_params();
    p.lambda = 1e-300;
    p.mu = 0;
    for (double x : {0.1, 0.5, 0.9}) {
        CHECK(md_exact(PointProcessModel::TPPP_PLP, p, x) ==
              doctest::Approx(1.0).epsilon(2e-3));
    }
}

TEST_CASE("survival-function mean identity") {
    // int_0^1 MD(x) dx must equal the first moment
    NetworkParams p = fig11_params();
    for (double th : {0.25, 1.0}) {
        NetworkParams q = p.with_theta(th);
        MdEvaluator ev(PointProcessModel::TPPP_PLP, q, 1e-4);
        double integral = quad::integrate(
            [&](double x) { return ev.md_exact(x); }, 1e-6, 1.0 - 1e-6, 2e-4,
            2000);
        CHECK(integral == doctest::Approx(ev.first_moment()).epsilon(2e-3));
    }
}

TEST_CASE("beta approximation tight in the tails") {
    NetworkParams p = fig11_params().with_theta(10.0);
    MdEvaluator ev(PointProcessModel::TPPP_PLP, p, 1e-4);
    for (double x : {0.01, 0.99}) {
        CHECK(std::abs(ev.md_exact(x) - ev.md_beta(x)) < 1e-3);
    }
}

TEST_CASE("exact md matches the empirical md") {
    NetworkParams p = fig11_params();
    SimConfig sim;
    sim.n_realizations = 20000;
    sim.seed = 12;
    for (double x = 0.1; x < 1.0; x += 0.2) sim.x_grid.push_back(x);
    for (auto model :
         {PointProcessModel::TPPP_PLP, PointProcessModel::PPP2D}) {
        EmpiricalMd emd = estimate_md(model, p, sim);
        MdEvaluator ev(model, p, 1e-4);
        for (std::size_t k = 0; k < sim.x_grid.size(); ++k) {
            CHECK(std::abs(ev.md_exact(sim.x_grid[k]) - emd.estimates[k]) <
                  0.02);
        }
    }
}

TEST_CASE("plp-ppp exact md via the moment cache") {
    NetworkParams p = fig11_params();
    MdEvaluator plp(PointProcessModel::PLP_PPP, p, 1e-3);
    MdEvaluator tppp(PointProcessModel::TPPP_PLP, p, 1e-3);
    // headline number: ~80% of links are at least 60% reliable
    double at06 = plp.md_exact(0.6);
    CHECK(at06 == doctest::Approx(0.80).epsilon(0.04));
    double prev = 1.0;
    for (double x = 0.15; x < 1.0; x += 0.2) {
        double e = plp.md_exact(x);
        double t = tppp.md_exact(x);
        // the TPPP lower-bounds the PLP-PPP meta distribution
        CHECK(e >= t - 0.05);
        CHECK(e <= prev + 2e-3);
        prev = e;
    }
}
