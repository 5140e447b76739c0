#include "tppp/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "tppp/numerics.hpp"

namespace tppp {

namespace {

double mark_for(Rng& rng, double sigma) {
    return sigma > 0 ? rng.lognormal_mean1(sigma) : 1.0;
}

// 1D PPP of intensity lambda on a line chord, appended to out.
void scatter_on_line(const Line& line, double lambda, double window_radius,
                     bool typical, const NetworkParams& params, Rng& rng,
                     std::vector<MarkedPoint>& out) {
    if (std::abs(line.t) >= window_radius) return;
    double half_chord =
        std::sqrt(window_radius * window_radius - line.t * line.t);
    int n = rng.poisson(lambda * 2 * half_chord);
    Vec2 foot = line.foot();
    Vec2 dir = line.direction();
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform(-half_chord, half_chord);
        out.push_back({foot + u * dir, mark_for(rng, params.shadow_sigma), typical});
    }
}

void scatter_on_stick(const Stick& stick, double lambda, double window_radius,
                      bool typical, const NetworkParams& params, Rng& rng,
                      std::vector<MarkedPoint>& out) {
    int n = rng.poisson(lambda * 2 * stick.half_length);
    Vec2 dir = stick.direction();
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform(-stick.half_length, stick.half_length);
        Vec2 pos = stick.midpoint + u * dir;
        double mark = mark_for(rng, params.shadow_sigma);
        if (pos.norm() <= window_radius) out.push_back({pos, mark, typical});
    }
}

// typical street orientations: x-axis, plus y-axis when m = 4
double typical_orientation(int k) { return k == 0 ? 0.0 : M_PI / 2; }

Stick sample_typical_stick(const NetworkParams& params, int k, Rng& rng) {
    const auto& hl = *params.half_length;
    double h = hl.sample_length_biased(rng.uniform(), rng.uniform(), rng.uniform());
    double w = rng.uniform(-h, h); // signed offset of the origin from the midpoint
    Stick s;
    s.orientation = typical_orientation(k);
    s.half_length = h;
    s.midpoint = -w * Vec2{std::cos(s.orientation), std::sin(s.orientation)};
    return s;
}

void scatter_2d_ppp(double intensity, double window_radius,
                    const NetworkParams& params, Rng& rng,
                    std::vector<MarkedPoint>& out) {
    int n = rng.poisson(intensity * M_PI * window_radius * window_radius);
    for (int i = 0; i < n; ++i) {
        double r = window_radius * std::sqrt(rng.uniform());
        double a = rng.uniform(0, 2 * M_PI);
        out.push_back({{r * std::cos(a), r * std::sin(a)},
                       mark_for(rng, params.shadow_sigma), false});
    }
}

} // namespace

double default_window_radius(const NetworkParams& params) {
    // tail mean below 1e-4 of the near-field mean taken from the link
    // distance outward
    return params.d_link * std::pow(1.0 + 1e4, 1.0 / (params.alpha - 2.0));
}

Realization sample_plp_ppp(const NetworkParams& params, double window_radius,
                           Rng& rng) {
    Realization out;
    auto& ss = out.streets;
    ss.model = StreetModel::PLP;
    ss.window_radius = window_radius;
    for (int k = 0; k < params.m / 2; ++k) {
        // line through the origin along the k-th typical orientation
        Line l{0.0, typical_orientation(k) + M_PI / 2};
        ss.typical_lines.push_back(l);
        scatter_on_line(l, params.lambda, window_radius, true, params, rng,
                        out.pattern.points);
    }
    int n_lines = rng.poisson(2 * params.mu * window_radius);
    for (int i = 0; i < n_lines; ++i) {
        Line l{rng.uniform(-window_radius, window_radius), rng.uniform(0, M_PI)};
        ss.other_lines.push_back(l);
        scatter_on_line(l, params.lambda, window_radius, false, params, rng,
                        out.pattern.points);
    }
    return out;
}

Realization sample_psp_ppp(const NetworkParams& params, double window_radius,
                           Rng& rng) {
    const auto& hl = *params.half_length;
    double h_cut = hl.quantile(1.0 - 1e-6);
    Realization out;
    auto& ss = out.streets;
    ss.model = StreetModel::PSP;
    ss.window_radius = window_radius;
    for (int k = 0; k < params.m / 2; ++k) {
        Stick s = sample_typical_stick(params, k, rng);
        ss.typical_sticks.push_back(s);
        scatter_on_stick(s, params.lambda, window_radius, true, params, rng,
                         out.pattern.points);
    }
    double r_mid = window_radius + h_cut;
    int n_sticks = rng.poisson(params.mu * M_PI * r_mid * r_mid);
    for (int i = 0; i < n_sticks; ++i) {
        double r = r_mid * std::sqrt(rng.uniform());
        double a = rng.uniform(0, 2 * M_PI);
        Stick s;
        s.midpoint = {r * std::cos(a), r * std::sin(a)};
        s.orientation = rng.uniform(0, M_PI);
        s.half_length = std::min(hl.sample(rng.uniform()), h_cut);
        ss.other_sticks.push_back(s);
        scatter_on_stick(s, params.lambda, window_radius, false, params, rng,
                         out.pattern.points);
    }
    return out;
}

PointPattern sample_tppp(const NetworkParams& params, double window_radius,
                         Rng& rng) {
    PointPattern out;
    double lambda2;
    if (params.street_model == StreetModel::PLP) {
        lambda2 = params.lambda * params.mu;
        for (int k = 0; k < params.m / 2; ++k) {
            Line l{0.0, typical_orientation(k) + M_PI / 2};
            scatter_on_line(l, params.lambda, window_radius, true, params, rng,
                            out.points);
        }
    } else {
        lambda2 = 2 * params.lambda * params.mu * params.half_length->mean();
        for (int k = 0; k < params.m / 2; ++k) {
            Stick s = sample_typical_stick(params, k, rng);
            scatter_on_stick(s, params.lambda, window_radius, true, params, rng,
                             out.points);
        }
    }
    scatter_2d_ppp(lambda2, window_radius, params, rng, out.points);
    return out;
}

Realization sample_plp_ppp(const NetworkParams& params, double window_radius,
                           std::uint64_t seed) {
    Rng rng = Rng::stream(seed, 0);
    return sample_plp_ppp(params, window_radius, rng);
}

Realization sample_psp_ppp(const NetworkParams& params, double window_radius,
                           std::uint64_t seed) {
    Rng rng = Rng::stream(seed, 0);
    return sample_psp_ppp(params, window_radius, rng);
}

PointPattern sample_tppp(const NetworkParams& params, double window_radius,
                         std::uint64_t seed) {
    Rng rng = Rng::stream(seed, 0);
    return sample_tppp(params, window_radius, rng);
}

PointPattern sample_pattern(PointProcessModel model, const NetworkParams& params,
                            double window_radius, Rng& rng) {
    switch (model) {
        case PointProcessModel::PPP1D: {
            PointPattern out;
            Line l{0.0, M_PI / 2};
            scatter_on_line(l, params.m * params.lambda / 2.0, window_radius, true,
                            params, rng, out.points);
            return out;
        }
        case PointProcessModel::PPP2D: {
            PointPattern out;
            double tau = params.street_model == StreetModel::PLP
                             ? params.mu
                             : 2 * params.mu * params.half_length->mean();
            scatter_2d_ppp(params.lambda * tau, window_radius, params, rng,
                           out.points);
            return out;
        }
        case PointProcessModel::PLP_PPP:
            return sample_plp_ppp(params, window_radius, rng).pattern;
        case PointProcessModel::PSP_PPP:
            return sample_psp_ppp(params, window_radius, rng).pattern;
        case PointProcessModel::TPPP_PLP: {
            NetworkParams q = params;
            q.street_model = StreetModel::PLP;
            return sample_tppp(q, window_radius, rng);
        }
        case PointProcessModel::TPPP_PSP: {
            NetworkParams q = params;
            q.street_model = StreetModel::PSP;
            return sample_tppp(q, window_radius, rng);
        }
    }
    throw Error("sample_pattern: unknown model");
}

double stick_chord_in_disk(double r, double gamma, double psi, double h) {
    double sin_psi = std::sin(psi);
    double disc = r * r - gamma * gamma * sin_psi * sin_psi;
    if (disc <= 0) return 0.0;
    double root = std::sqrt(disc);
    double mid = -gamma * std::cos(psi);
    double lo = std::max(mid - root, -h);
    double hi = std::min(mid + root, h);
    return std::max(0.0, hi - lo);
}

double pcf_plp_ppp(double mu, double r) { return 1.0 + 1.0 / (mu * r); }

namespace {

double nnd_cdf_psp(const NetworkParams& params, double r) {
    const auto& hl = *params.half_length;
    const double lambda = params.lambda;
    // typical-street factor: origin on the stick at uniform distance from
    // the midpoint, half-length length-biased
    auto typical_inner = [&](double h) {
        return quad::integrate(
                   [&](double g) {
                       return std::exp(-lambda * stick_chord_in_disk(r, g, 0, h));
                   },
                   0.0, h, 1e-8) /
               h;
    };
    double t_factor;
    if (hl.kind == HalfLengthDist::Kind::Deterministic) {
        t_factor = typical_inner(hl.h0);
    } else {
        t_factor = quad::integrate_half_line(
            [&](double h) {
                return h > 0 ? typical_inner(h) * hl.length_biased_pdf(h) : 0.0;
            },
            0.0, 1e-6, 200000);
    }
    // remaining sticks: Cox void probability; angle integral reduced to
    // the direction difference psi
    auto outer = [&](double h) {
        return quad::integrate(
            [&](double psi) {
                return quad::integrate(
                    [&](double g) {
                        double ell = stick_chord_in_disk(r, g, psi, h);
                        return ell > 0 ? g * (1.0 - std::exp(-lambda * ell)) : 0.0;
                    },
                    0.0, r + h, 1e-8);
            },
            0.0, M_PI, 1e-7);
    };
    double e_outer;
    if (hl.kind == HalfLengthDist::Kind::Deterministic) {
        e_outer = outer(hl.h0);
    } else {
        e_outer = quad::integrate_half_line(
            [&](double h) { return h > 0 ? outer(h) * hl.pdf(h) : 0.0; }, 0.0,
            1e-6, 200000);
    }
    return 1.0 - std::pow(t_factor, params.m / 2.0) * std::exp(-2 * params.mu * e_outer);
}

} // namespace

double nnd_cdf(PointProcessModel model, const NetworkParams& params, double r) {
    if (r <= 0) return 0.0;
    const double lambda = params.lambda;
    switch (model) {
        case PointProcessModel::PPP1D:
            return 1.0 - std::exp(-params.m * lambda * r);
        case PointProcessModel::PPP2D: {
            double lambda2 = validate(params).lambda2;
            return 1.0 - std::exp(-M_PI * lambda2 * r * r);
        }
        case PointProcessModel::TPPP_PLP:
            return 1.0 - std::exp(-params.m * lambda * r -
                                  lambda * params.mu * M_PI * r * r);
        case PointProcessModel::PLP_PPP: {
            double integral = quad::integrate(
                [&](double u) {
                    return 1.0 - std::exp(-2 * lambda * std::sqrt(r * r - u * u));
                },
                0.0, r, 1e-10);
            return 1.0 -
                   std::exp(-params.m * lambda * r - 2 * params.mu * integral);
        }
        case PointProcessModel::PSP_PPP:
            return nnd_cdf_psp(params, r);
        case PointProcessModel::TPPP_PSP:
            throw Error("nnd_cdf: no analytic form for the PSP-based TPPP");
    }
    throw Error("nnd_cdf: unknown model");
}

std::vector<NnMomentRow> nn_distance_moments(PointProcessModel model,
                                             const NetworkParams& params,
                                             int n_max, int n_realizations,
                                             std::uint64_t seed) {
    double tau = validate(params).tau;
    double area_density = std::max(params.lambda * tau, 1e-12);
    double window_radius = std::sqrt(
        (n_max + 10 * std::sqrt(double(n_max)) + 30) / (M_PI * area_density));
    window_radius = std::max(window_radius, 2.0);

    std::vector<double> sum(n_max, 0.0), sum_sq(n_max, 0.0);
    std::vector<long> count(n_max, 0);
    std::vector<double> d2;
    for (int i = 0; i < n_realizations; ++i) {
        Rng rng = Rng::stream(seed, i);
        PointPattern pat = sample_pattern(model, params, window_radius, rng);
        d2.clear();
        d2.reserve(pat.points.size());
        for (const auto& pt : pat.points) d2.push_back(pt.pos.squaredNorm());
        int have = std::min<int>(n_max, d2.size());
        std::partial_sort(d2.begin(), d2.begin() + have, d2.end());
        for (int n = 0; n < have; ++n) {
            sum[n] += d2[n];
            sum_sq[n] += d2[n] * d2[n];
            count[n] += 1;
        }
    }
    std::vector<NnMomentRow> rows;
    for (int n = 0; n < n_max; ++n) {
        if (count[n] == 0) continue;
        double mean = sum[n] / count[n];
        double var = std::max(0.0, sum_sq[n] / count[n] - mean * mean);
        rows.push_back({n + 1, mean / (n + 1),
                        std::sqrt(var / count[n]) / (n + 1)});
    }
    return rows;
}

} // namespace tppp
