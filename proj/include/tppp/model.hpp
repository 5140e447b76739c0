#pragma once

#include <cstdint>
#include <optional>

#include "tppp/errors.hpp"

namespace tppp {

// Distribution of the half-length H of a stick-shaped street.
// Provides the density f_H, its mean, a sampler, and the length-biased
// variant ftilde_H(h) = h f_H(h) / E[H] for the street hosting the
// typical vehicle.
struct HalfLengthDist {
    enum class Kind { Rayleigh, Deterministic };

    static HalfLengthDist rayleigh(double c);      // f_H(h) = 2ch exp(-ch^2)
    static HalfLengthDist deterministic(double h); // point mass at h

    Kind kind;
    double c = 0;  // Rayleigh shape
    double h0 = 0; // Deterministic half-length

    double pdf(double h) const;
    double mean() const;              // E[H]
    double mean_sq() const;           // E[H^2]
    double quantile(double q) const;  // inverse CDF
    double length_biased_pdf(double h) const;

    // Inverse-transform sample from f_H given a uniform u in (0,1).
    double sample(double u) const;

    // Sample from the length-biased density ftilde_H(h) = h f_H(h)/E[H],
    // given three independent uniforms in (0,1).
    double sample_length_biased(double u1, double u2, double u3) const;
};

enum class StreetModel { PLP, PSP };

// The point-process models the library can analyze or simulate.
enum class PointProcessModel { PPP1D, PPP2D, PLP_PPP, TPPP_PLP, PSP_PPP, TPPP_PSP };

// All scalar model parameters. Immutable value type.
struct NetworkParams {
    double lambda = 1;        // vehicle intensity per unit street length
    double mu = 1;            // street intensity
    double p = 0.3;           // ALOHA transmit probability
    double theta = 1;         // SIR threshold, linear scale
    double d_link = 0.25;     // transmitter distance D
    double alpha = 4;         // path-loss exponent
    int m = 2;                // order of the typical vehicle, 2 or 4
    StreetModel street_model = StreetModel::PLP;
    std::optional<HalfLengthDist> half_length; // required when street_model == PSP
    double shadow_sigma = 0;  // shadowing std dev, 0 = no shadowing

    double delta() const { return 2.0 / alpha; }
    double s() const;  // s = theta * D^alpha

    NetworkParams with_theta(double th) const {
        NetworkParams q = *this;
        q.theta = th;
        return q;
    }
};

// Quantities derived from validated parameters.
struct DerivedParams {
    double delta;    // 2/alpha
    double s;        // theta * D^alpha
    double tau;      // mean street length per unit area
    double lambda2;  // intensity of the TPPP's 2D background PPP
};

// Checks every invariant and either returns the derived quantities or
// throws ValidationError listing all violations.
DerivedParams validate(const NetworkParams& params);

double db_to_linear(double db);
double linear_to_db(double linear);

} // namespace tppp
