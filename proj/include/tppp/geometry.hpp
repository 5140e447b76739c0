#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "tppp/model.hpp"
#include "tppp/rng.hpp"

namespace tppp {

using Vec2 = Eigen::Vector2d;
class Rng;

// Infinite street: the locus x cos(phi) + y sin(phi) = t.
struct Line {
    double t;   // signed perpendicular distance from the origin
    double phi; // perpendicular angle in [0, pi)

    Vec2 foot() const { return {t * std::cos(phi), t * std::sin(phi)}; }
    Vec2 direction() const { return {-std::sin(phi), std::cos(phi)}; }
};

// Finite street segment centered at its midpoint.
struct Stick {
    Vec2 midpoint;
    double orientation; // [0, pi)
    double half_length;

    Vec2 direction() const {
        return {std::cos(orientation), std::sin(orientation)};
    }
    Vec2 endpoint_a() const { return midpoint - half_length * direction(); }
    Vec2 endpoint_b() const { return midpoint + half_length * direction(); }
};

// A sampled street realization in a finite window. The typical vehicle's
// streets contain the origin.
struct StreetSystem {
    StreetModel model = StreetModel::PLP;
    std::vector<Line> typical_lines;
    std::vector<Stick> typical_sticks;
    std::vector<Line> other_lines;
    std::vector<Stick> other_sticks;
    double window_radius = 0;

    std::size_t typical_count() const {
        return typical_lines.size() + typical_sticks.size();
    }
};

struct MarkedPoint {
    Vec2 pos;
    double shadow_mark = 1.0;
    bool on_typical_street = false;
};

// Interferer locations relative to the typical vehicle at the origin.
struct PointPattern {
    std::vector<MarkedPoint> points;
};

struct Realization {
    StreetSystem streets;
    PointPattern pattern;
};

// Default simulation window: truncating at this radius biases the
// expected far interference by less than 1e-4 of the near-field mean.
double default_window_radius(const NetworkParams& params);

Realization sample_plp_ppp(const NetworkParams& params, double window_radius, Rng& rng);
Realization sample_psp_ppp(const NetworkParams& params, double window_radius, Rng& rng);
PointPattern sample_tppp(const NetworkParams& params, double window_radius, Rng& rng);

// Seeded one-shot variants.
Realization sample_plp_ppp(const NetworkParams& params, double window_radius,
                           std::uint64_t seed);
Realization sample_psp_ppp(const NetworkParams& params, double window_radius,
                           std::uint64_t seed);
PointPattern sample_tppp(const NetworkParams& params, double window_radius,
                         std::uint64_t seed);

// One Palm-conditioned interferer pattern for any supported model.
PointPattern sample_pattern(PointProcessModel model, const NetworkParams& params,
                            double window_radius, Rng& rng);

// Analytic nearest-neighbor distance CDF of the given model.
double nnd_cdf(PointProcessModel model, const NetworkParams& params, double r);

// Pair correlation function of the PLP-PPP, g(r) = 1 + 1/(mu r).
double pcf_plp_ppp(double mu, double r);

// Length of the chord of a stick (half-length h, midpoint at distance
// gamma from the origin, angle psi between stick direction and the
// midpoint direction) that lies inside b(o, r).
double stick_chord_in_disk(double r, double gamma, double psi, double h);

struct NnMomentRow {
    int n;
    double mean_r2_over_n;
    double std_err;
};

// Empirical normalized mean squared distances E[r_n^2]/n to the n-th
// nearest neighbor, with standard errors.
std::vector<NnMomentRow> nn_distance_moments(PointProcessModel model,
                                             const NetworkParams& params,
                                             int n_max, int n_realizations,
                                             std::uint64_t seed);

} // namespace tppp
