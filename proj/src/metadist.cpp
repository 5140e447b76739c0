#include "tppp/metadist.hpp"

#include <cmath>
#include <set>

#include "tppp/numerics.hpp"

namespace tppp {

BetaParams beta_from_moments(double m1, double m2) {
    if (!(m1 > 0 && m1 < 1) || !(m2 > m1 * m1 && m2 < m1))
        throw InfeasibleMoments("beta_from_moments: need 0<m1<1, m1^2<m2<m1");
    double alpha = m1 * (m1 - m2) / (m2 - m1 * m1);
    return {alpha, alpha * (1 - m1) / m1};
}

double md_beta_value(const BetaParams& bp, double x) {
    if (x <= 0) return 1.0;
    if (x >= 1) return 0.0;
    return 1.0 - reg_inc_beta(x, bp.alpha_shape, bp.beta_shape);
}

MdEvaluator::MdEvaluator(PointProcessModel model, const NetworkParams& params,
                         double tol, double moment_tol)
    : model_(model),
      params_(params),
      tol_(tol),
      moment_tol_(moment_tol),
      expensive_(model == PointProcessModel::PLP_PPP) {}

Complex MdEvaluator::exact_moment(Complex b) const {
    return moment({model_, b, params_, moment_tol_});
}

// Memoized M_{jt} with linear interpolation between verified nodes; new
// nodes are inserted until the interpolant is locally accurate, so each
// expensive moment is computed at most once across all x values.
Complex MdEvaluator::cached_moment(double t) const {
    const double step = 0.5;       // initial node spacing in t
    const double atol = 2e-4;      // interpolation target, well under tol_
    const double min_gap = 1e-3;
    if (cache_.empty()) cache_.emplace(0.0, Complex(1.0));
    while (cache_.rbegin()->first < t) {
        double tn = cache_.rbegin()->first + step;
        cache_.emplace(tn, exact_moment(Complex(0.0, tn)));
    }
    for (;;) {
        auto hi = cache_.lower_bound(t);
        if (hi->first == t) return hi->second;
        auto lo = std::prev(hi);
        double w = (t - lo->first) / (hi->first - lo->first);
        Complex linear = (1 - w) * lo->second + w * hi->second;
        if (verified_.count(lo->first) || hi->first - lo->first < min_gap)
            return linear;
        double mid = 0.5 * (lo->first + hi->first);
        Complex exact = exact_moment(Complex(0.0, mid));
        Complex interp_mid = 0.5 * (lo->second + hi->second);
        bool ok = std::abs(exact - interp_mid) < atol;
        cache_.emplace(mid, exact);
        if (ok) {
            // both refined halves are at least as accurate as the parent
            verified_.insert(lo->first);
            verified_.insert(mid);
            auto h2 = cache_.lower_bound(t);
            auto l2 = std::prev(h2);
            double w2 = (t - l2->first) / (h2->first - l2->first);
            return (1 - w2) * l2->second + w2 * h2->second;
        }
    }
}

Complex MdEvaluator::moment_jt(double t) const {
    if (t == 0.0) return 1.0;
    if (expensive_) return cached_moment(t);
    return exact_moment(Complex(0.0, t));
}

double MdEvaluator::md_exact(double x) const {
    return gil_pelaez([this](double t) { return moment_jt(t); }, x, tol_);
}

double MdEvaluator::first_moment() const {
    return exact_moment(Complex(1.0)).real();
}

double MdEvaluator::second_moment() const {
    return exact_moment(Complex(2.0)).real();
}

double MdEvaluator::md_beta(double x) const {
    if (x <= 0) return 1.0;
    if (x >= 1) return 0.0;
    double m1 = first_moment();
    try {
        return md_beta_value(beta_from_moments(m1, second_moment()), x);
    } catch (const InfeasibleMoments&) {
        return x < m1 ? 1.0 : 0.0; // degenerate (near-zero-variance) limit
    }
}

double md_exact(PointProcessModel model, const NetworkParams& params, double x,
                double tol) {
    return MdEvaluator(model, params, tol).md_exact(x);
}

double md_beta(PointProcessModel model, const NetworkParams& params, double x) {
    return MdEvaluator(model, params).md_beta(x);
}

} // namespace tppp
