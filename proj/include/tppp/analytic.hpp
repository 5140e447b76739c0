#pragma once

#include "tppp/model.hpp"
#include "tppp/numerics.hpp"

namespace tppp {

// A moment-of-conditional-success-probability query, M_b = E[P_m^b].
struct MomentRequest {
    PointProcessModel model;
    Complex b;
    NetworkParams params;
    double tol = 1e-8;
};

// b-th moment for a d-dimensional PPP of the given intensity, link
// distance D = params.d_link.
Complex moment_dppp(Complex b, int d, double intensity,
                    const NetworkParams& params);

// Closed-form TPPP moment: the 1D (through-street) factor times the 2D
// background factor.
Complex moment_tppp_plp(Complex b, const NetworkParams& params);

// Exact PLP-PPP moment via nested adaptive quadrature.
Complex moment_plp_ppp(Complex b, const NetworkParams& params,
                       double tol = 1e-8);

// PLP-PPP success probability (first moment) by its reduced double
// integral; cheaper than moment_plp_ppp(1, .).
double success_prob_plp_ppp(const NetworkParams& params, double tol = 1e-9);

// Closed-form TPPP success probability.
double success_prob_tppp_plp(const NetworkParams& params);

// Leading-order outage as theta -> 0 (the 1D-PPP regime).
double asymptote_theta0(const NetworkParams& params, double theta);

// Success probability limit as theta -> inf (the 2D-PPP regime).
double asymptote_theta_inf(const NetworkParams& params, double theta);

// First moment restricted to the typical vehicle's own street(s) of the
// PSP-PPP, already raised to the power m/2.
double psp_typical_street_moment(const NetworkParams& params,
                                 double tol = 1e-7);

// Exact PSP-PPP success probability. Expensive: the exponent is a
// triply nested quadrature averaged over the half-length distribution
// (seconds per call at default tolerance).
double success_prob_psp_ppp(const NetworkParams& params, double tol = 1e-6);

// Success probability of the TPPP matched to a PSP street system.
double success_prob_tppp_psp(const NetworkParams& params, double tol = 1e-7);

// Var[P_m] = Re M_2 - (Re M_1)^2.
double variance_cond_success(PointProcessModel model,
                             const NetworkParams& params, double tol = 1e-8);

// Dispatch over all models. PSP-based models only support b = 1.
Complex moment(const MomentRequest& req);

} // namespace tppp
