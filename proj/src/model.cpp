#include "tppp/model.hpp"

#include <cmath>
#include <sstream>

namespace tppp {

HalfLengthDist HalfLengthDist::rayleigh(double c) {
    HalfLengthDist d;
    d.kind = Kind::Rayleigh;
    d.c = c;
    return d;
}

HalfLengthDist HalfLengthDist::deterministic(double h) {
    HalfLengthDist d;
    d.kind = Kind::Deterministic;
    d.h0 = h;
    return d;
}

double HalfLengthDist::pdf(double h) const {
    if (h < 0) return 0;
    if (kind == Kind::Rayleigh) return 2 * c * h * std::exp(-c * h * h);
    return 0; // point mass has no density; callers special-case Deterministic
}

double HalfLengthDist::mean() const {
    if (kind == Kind::Rayleigh) return std::sqrt(M_PI / (4 * c));
    return h0;
}

double HalfLengthDist::mean_sq() const {
    if (kind == Kind::Rayleigh) return 1.0 / c;
    return h0 * h0;
}

double HalfLengthDist::quantile(double q) const {
    if (kind == Kind::Rayleigh) return std::sqrt(-std::log1p(-q) / c);
    return h0;
}

double HalfLengthDist::length_biased_pdf(double h) const {
    if (h < 0) return 0;
    return h * pdf(h) / mean();
}

double HalfLengthDist::sample(double u) const {
    if (kind == Kind::Rayleigh) return quantile(u);
    return h0;
}

double HalfLengthDist::sample_length_biased(double u1, double u2, double u3) const {
    if (kind == Kind::Deterministic) return h0;
    // h^2 ~ Gamma(3/2, rate c): an Exp(1) plus half a squared standard normal
    double e = -std::log(u1);
    double z = std::sqrt(-2.0 * std::log(u2)) * std::cos(2 * M_PI * u3);
    return std::sqrt((e + 0.5 * z * z) / c);
}

double NetworkParams::s() const { return theta * std::pow(d_link, alpha); }

DerivedParams validate(const NetworkParams& params) {
    std::ostringstream errs;
    if (!(params.alpha > 2))
        errs << "AlphaOutOfRange: alpha must be > 2, got " << params.alpha << "; ";
    if (!(params.p > 0 && params.p <= 1))
        errs << "ProbOutOfRange: p must be in (0,1], got " << params.p << "; ";
    if (!(params.lambda > 0))
        errs << "NonPositiveParam: lambda must be > 0, got " << params.lambda << "; ";
    if (!(params.mu >= 0))
        errs << "NonPositiveParam: mu must be >= 0, got " << params.mu << "; ";
    if (!(params.theta > 0))
        errs << "NonPositiveParam: theta must be > 0, got " << params.theta << "; ";
    if (!(params.d_link > 0))
        errs << "NonPositiveParam: d_link must be > 0, got " << params.d_link << "; ";
    if (params.m != 2 && params.m != 4)
        errs << "NonPositiveParam: m must be 2 or 4, got " << params.m << "; ";
    if (!(params.shadow_sigma >= 0))
        errs << "NonPositiveParam: shadow_sigma must be >= 0; ";
    if (params.street_model == StreetModel::PSP) {
        if (!params.half_length) {
            errs << "NonPositiveParam: PSP requires a half-length distribution; ";
        } else {
            const auto& hl = *params.half_length;
            if (hl.kind == HalfLengthDist::Kind::Rayleigh && !(hl.c > 0))
                errs << "NonPositiveParam: Rayleigh c must be > 0; ";
            if (hl.kind == HalfLengthDist::Kind::Deterministic && !(hl.h0 > 0))
                errs << "NonPositiveParam: deterministic half-length must be > 0; ";
        }
    }
    std::string msg = errs.str();
    if (!msg.empty()) throw ValidationError(msg);

    DerivedParams d;
    d.delta = params.delta();
    d.s = params.s();
    if (params.street_model == StreetModel::PLP) {
        d.tau = params.mu;
    } else {
        d.tau = 2 * params.mu * params.half_length->mean();
    }
    d.lambda2 = params.lambda * d.tau;
    return d;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

} // namespace tppp
