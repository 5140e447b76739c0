#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tppp/model.hpp"
#include "tppp/numerics.hpp"

using namespace tppp;

static NetworkParams base_params() {
    NetworkParams p;
    p.lambda = 1;
    p.mu = 1;
    p.p = 0.3;
    p.theta = 1;
    p.d_link = 0.25;
    p.alpha = 4;
    p.m = 2;
    return p;
}

TEST_CASE("validate derives delta, s, tau") {
    auto p = base_params();
    auto d = validate(p);
    CHECK(d.delta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.s == doctest::Approx(std::pow(0.25, 4)).epsilon(1e-15));
    CHECK(d.tau == doctest::Approx(1.0)); // PLP: tau = mu
    CHECK(d.lambda2 == doctest::Approx(1.0));
}

TEST_CASE("PSP tau matches numeric integral of h f_H(h)") {
    auto p = base_params();
    p.street_model = StreetModel::PSP;
    p.mu = 0.1;
    p.half_length = HalfLengthDist::rayleigh(0.1);
    auto d = validate(p);

    // oracle: E[H] by quadrature of h f_H(h)
    auto hl = *p.half_length;
    double mean_h = quad::integrate_half_line(
        [&](double h) { return h * hl.pdf(h); }, 0.0, 1e-10);
    CHECK(hl.mean() == doctest::Approx(mean_h).epsilon(1e-9));
    CHECK(d.tau == doctest::Approx(2 * 0.1 * mean_h).epsilon(1e-9));
    CHECK(d.tau == doctest::Approx(2 * 0.1 * std::sqrt(M_PI / 0.4)).epsilon(1e-9));
}

TEST_CASE("validation reports every violated invariant") {
    auto p = base_params();
    p.alpha = 1.5;
    p.p = 1.7;
    p.d_link = -1;
    try {
        validate(p);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("AlphaOutOfRange") != std::string::npos);
        CHECK(msg.find("ProbOutOfRange") != std::string::npos);
        CHECK(msg.find("d_link") != std::string::npos);
    }
}

TEST_CASE("length-biased density integrates to 1") {
    auto hl = HalfLengthDist::rayleigh(0.37);
    double total = quad::integrate_half_line(
        [&](double h) { return hl.length_biased_pdf(h); }, 0.0, 1e-10);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Rayleigh sampler mean within 3 SE of sqrt(pi/(4c))") {
    const double c = 0.8;
    auto hl = HalfLengthDist::rayleigh(c);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int n = 1000000;
    double sum = 0, sum_sq = 0;
    for (int i = 0; i < n; ++i) {
        double h = hl.sample(uni(rng));
        sum += h;
        sum_sq += h * h;
    }
    double mean = sum / n;
    double se = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::abs(mean - std::sqrt(M_PI / (4 * c))) < 3 * se);
}

TEST_CASE("length-biased sampler mean equals E[H^2]/E[H] within 3 SE") {
    const double c = 0.8;
    auto hl = HalfLengthDist::rayleigh(c);
    std::mt19937_64 rng(999);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int n = 1000000;
    double sum = 0, sum_sq = 0;
    for (int i = 0; i < n; ++i) {
        double h = hl.sample_length_biased(uni(rng), uni(rng), uni(rng));
        sum += h;
        sum_sq += h * h;
    }
    double mean = sum / n;
    double se = std::sqrt((sum_sq / n - mean * mean) / n);
    double expected = hl.mean_sq() / hl.mean();
    CHECK(std::abs(mean - expected) < 3 * se);
}

TEST_CASE("deterministic half-length") {
    auto hl = HalfLengthDist::deterministic(2.5);
    CHECK(hl.mean() == 2.5);
    CHECK(hl.sample(0.42) == 2.5);
    CHECK(hl.sample_length_biased(0.1, 0.2, 0.3) == 2.5);
}

TEST_CASE("dB round trip") {
    for (double db : {-30.0, -3.0, 0.0, 7.5, 30.0}) {
        CHECK(linear_to_db(db_to_linear(db)) == doctest::Approx(db).epsilon(1e-12));
    }
}
