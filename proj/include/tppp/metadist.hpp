#pragma once

#include <map>
#include <set>

#include "tppp/analytic.hpp"
#include "tppp/model.hpp"

namespace tppp {

struct BetaParams {
    double alpha_shape;
    double beta_shape;

    double mean() const { return alpha_shape / (alpha_shape + beta_shape); }
    double second_moment() const {
        double ab = alpha_shape + beta_shape;
        return mean() * (alpha_shape + 1) / (ab + 1);
    }
};

// Solve E[X] = m1, E[X^2] = m2 for the beta shape parameters.
// Throws InfeasibleMoments unless 0 < m1 < 1 and m1^2 < m2 < m1.
BetaParams beta_from_moments(double m1, double m2);

// P(X > x) = 1 - I_x(alpha, beta) for a fitted beta distribution.
double md_beta_value(const BetaParams& bp, double x);

// Meta-distribution evaluator for one (model, params) pair. Shares the
// complex-moment evaluations across x values: for the PLP-PPP the
// moment function is memoized on a lazily refined t-grid, since a
// fresh nested quadrature per Gil-Pelaez node would be prohibitive.
class MdEvaluator {
  public:
    MdEvaluator(PointProcessModel model, const NetworkParams& params,
                double tol = 1e-3, double moment_tol = 1e-6);

    double md_exact(double x) const;
    double md_beta(double x) const;
    double first_moment() const;
    double second_moment() const;
    Complex moment_jt(double t) const;

  private:
    Complex exact_moment(Complex b) const;
    Complex cached_moment(double t) const;

    PointProcessModel model_;
    NetworkParams params_;
    double tol_;
    double moment_tol_;
    bool expensive_;
    mutable std::map<double, Complex> cache_;
    mutable std::set<double> verified_; // lower endpoints of accurate gaps
};

// Exact MD at one point, P(P_m > x), by Gil-Pelaez inversion.
double md_exact(PointProcessModel model, const NetworkParams& params, double x,
                double tol = 1e-3);

// Beta-approximated MD at one point; degenerate moments fall back to
// the step function 1{x < m1}.
double md_beta(PointProcessModel model, const NetworkParams& params, double x);

} // namespace tppp
