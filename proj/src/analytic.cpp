#include "tppp/analytic.hpp"

#include <cmath>

namespace tppp {

namespace {

double tau_of(const NetworkParams& p) {
    return p.street_model == StreetModel::PLP ? p.mu
                                              : 2 * p.mu * p.half_length->mean();
}

// s^{delta/2} = D theta^{delta/2}, the natural length scale of the link
double length_scale(const NetworkParams& p) {
    return p.d_link * std::pow(p.theta, p.delta() / 2);
}

} // namespace

Complex moment_dppp(Complex b, int d, double intensity,
                    const NetworkParams& params) {
    if (intensity == 0.0 || b == Complex(0.0)) return 1.0;
    double dp = d / params.alpha;
    double cd = d == 1 ? 2.0 : M_PI;
    Complex expo = -intensity * cd * std::pow(params.d_link, d) *
                   std::pow(params.theta, dp) * gamma_pair(dp) *
                   diversity_gain(b, params.p, dp);
    return std::exp(expo);
}

Complex moment_tppp_plp(Complex b, const NetworkParams& params) {
    return moment_dppp(b, 1, params.m * params.lambda / 2.0, params) *
           moment_dppp(b, 2, params.lambda * params.mu, params);
}

Complex moment_plp_ppp(Complex b, const NetworkParams& params, double tol) {
    double delta = params.delta();
    double p = params.p;
    double A = length_scale(params);
    Complex term1 = -params.m * params.lambda * A * gamma_pair(delta / 2) *
                    diversity_gain(b, p, delta / 2);
    if (params.mu == 0.0) return std::exp(term1);
    // G_b in scale-free coordinates: the perpendicular distance t and the
    // along-street coordinate both measured in units of s^{delta/2}; the
    // endpoint singularity is removed by v = (t^2 + y^2)^{1/delta}
    auto g_exponent = [&](double t2) -> Complex {
        auto inner = [&](double y) -> Complex {
            double frac = p / (1.0 + std::pow(t2 + y * y, 1.0 / delta));
            return 1.0 - std::exp(b * std::log1p(-frac));
        };
        return 2.0 * params.lambda * A *
               quad::integrate_half_line(inner, 0.0, tol / 10, 200000);
    };
    Complex outer = quad::integrate_half_line(
        [&](double t) -> Complex {
            return 1.0 - std::exp(-g_exponent(t * t));
        },
        0.0, tol, 200000);
    return std::exp(term1 - 2.0 * params.mu * A * outer);
}

double success_prob_plp_ppp(const NetworkParams& params, double tol) {
    double delta = params.delta();
    double A = length_scale(params);
    double lp = params.lambda * params.p;
    double term1 = params.m * lp * A * gamma_pair(delta / 2);
    if (params.mu == 0.0) return std::exp(-term1);
    // Laplace transform of the interference from one street at scaled
    // perpendicular distance t, with u = u_t + y^2 removing the
    // 1/sqrt(u - u_t) singularity
    auto laplace = [&](double u_t) {
        double integral = quad::integrate_half_line(
            [&](double y) {
                return 2.0 / (1.0 + std::pow(u_t + y * y, 1.0 / delta));
            },
            0.0, tol / 10, 200000);
        return std::exp(-lp * A * integral);
    };
    double outer = quad::integrate_half_line(
        [&](double t) { return 1.0 - laplace(t * t); }, 0.0, tol, 200000);
    return std::exp(-term1 - 2.0 * params.mu * A * outer);
}

double success_prob_tppp_plp(const NetworkParams& params) {
    double delta = params.delta();
    double lp = params.lambda * params.p;
    double D = params.d_link;
    return std::exp(-params.m * lp * D * std::pow(params.theta, delta / 2) *
                        gamma_pair(delta / 2) -
                    lp * params.mu * M_PI * D * D *
                        std::pow(params.theta, delta) * gamma_pair(delta));
}

double asymptote_theta0(const NetworkParams& params, double theta) {
    double delta = params.delta();
    return params.m * params.lambda * params.p * params.d_link *
           std::pow(theta, delta / 2) * gamma_pair(delta / 2);
}

double asymptote_theta_inf(const NetworkParams& params, double theta) {
    double delta = params.delta();
    return std::exp(-M_PI * params.lambda * params.p * params.mu *
                    params.d_link * params.d_link * std::pow(theta, delta) *
                    gamma_pair(delta));
}

namespace {

// Typical-street factor for one stick of half-length h, in units of the
// length scale A (so h here is h/A).
double psp_typical_factor(double h, double lp_a, double alpha, double tol) {
    auto inner = [&](double w) {
        double integral = quad::integrate(
            [&](double v) { return 1.0 / (1.0 + std::pow(std::abs(v), alpha)); },
            -w - h, -w + h, tol / 10, 200000);
        return std::exp(-lp_a * integral);
    };
    return quad::integrate(inner, -h, h, tol, 200000) / (2 * h);
}

} // namespace

double psp_typical_street_moment(const NetworkParams& params, double tol) {
    const auto& hl = *params.half_length;
    double A = length_scale(params);
    double lp_a = params.lambda * params.p * A;
    double alpha = params.alpha;
    double factor;
    if (hl.kind == HalfLengthDist::Kind::Deterministic) {
        factor = psp_typical_factor(hl.h0 / A, lp_a, alpha, tol);
    } else {
        factor = quad::integrate_half_line(
            [&](double h) {
                return h > 0 ? psp_typical_factor(h / A, lp_a, alpha, tol) *
                                   hl.length_biased_pdf(h)
                             : 0.0;
            },
            0.0, tol * 10, 400000);
    }
    return std::pow(factor, params.m / 2.0);
}

namespace {

// Mean interference contribution of sticks of (scaled) half-length h:
// int_0^pi int_0^inf gamma (1 - L_{I_a}) dgamma dpsi, all lengths in
// units of the scale A.
double psp_offstreet_exponent(double h, double lp_a, double alpha, double tol) {
    auto over_gamma = [&](double psi) {
        double cp = std::cos(psi), sp = std::sin(psi);
        return quad::integrate_half_line(
            [&](double gamma) {
                double b2 = gamma * sp * gamma * sp;
                double integral = quad::integrate(
                    [&](double v) {
                        return 1.0 / (1.0 + std::pow(v * v + b2, alpha / 2));
                    },
                    gamma * cp - h, gamma * cp + h, tol / 100, 200000);
                return gamma * (1.0 - std::exp(-lp_a * integral));
            },
            0.0, tol / 10, 400000);
    };
    return quad::integrate(over_gamma, 0.0, M_PI, tol, 200000);
}

} // namespace

double success_prob_psp_ppp(const NetworkParams& params, double tol) {
    const auto& hl = *params.half_length;
    double A = length_scale(params);
    double lp_a = params.lambda * params.p * A;
    double alpha = params.alpha;
    double typical = psp_typical_street_moment(params, tol / 10);
    if (params.mu == 0.0) return typical;
    double expo;
    if (hl.kind == HalfLengthDist::Kind::Deterministic) {
        expo = psp_offstreet_exponent(hl.h0 / A, lp_a, alpha, tol);
    } else {
        expo = quad::integrate_half_line(
            [&](double h) {
                return h > 0 ? psp_offstreet_exponent(h / A, lp_a, alpha, tol) *
                                   hl.pdf(h)
                             : 0.0;
            },
            0.0, tol * 10, 400000);
    }
    // the exponent above is in units of A^2
    return typical * std::exp(-2 * params.mu * A * A * expo);
}

double success_prob_tppp_psp(const NetworkParams& params, double tol) {
    double delta = params.delta();
    double typical = psp_typical_street_moment(params, tol);
    double eh = params.half_length ? params.half_length->mean() : 0.0;
    return typical * std::exp(-2 * params.lambda * params.p * params.mu * M_PI *
                              eh * params.d_link * params.d_link *
                              std::pow(params.theta, delta) * gamma_pair(delta));
}

Complex moment(const MomentRequest& req) {
    const NetworkParams& p = req.params;
    switch (req.model) {
        case PointProcessModel::PPP1D:
            return moment_dppp(req.b, 1, p.m * p.lambda / 2.0, p);
        case PointProcessModel::PPP2D:
            return moment_dppp(req.b, 2, p.lambda * tau_of(p), p);
        case PointProcessModel::TPPP_PLP:
            return moment_tppp_plp(req.b, p);
        case PointProcessModel::PLP_PPP:
            return moment_plp_ppp(req.b, p, req.tol);
        case PointProcessModel::PSP_PPP:
            if (req.b == Complex(1.0)) return success_prob_psp_ppp(p, req.tol);
            throw Error("moment: PSP-PPP moments beyond b=1 require simulation");
        case PointProcessModel::TPPP_PSP:
            if (req.b == Complex(1.0)) return success_prob_tppp_psp(p, req.tol);
            throw Error("moment: TPPP-PSP moments beyond b=1 require simulation");
    }
    throw Error("moment: unknown model");
}

double variance_cond_success(PointProcessModel model,
                             const NetworkParams& params, double tol) {
    double m2 = moment({model, 2.0, params, tol}).real();
    double m1 = moment({model, 1.0, params, tol}).real();
    return m2 - m1 * m1;
}

} // namespace tppp
