#pragma once

#include <stdexcept>
#include <string>

namespace tppp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter validation failed; message lists every violated invariant.
struct ValidationError : Error {
    using Error::Error;
};

// A series or integral failed to reach the requested tolerance.
// Carries the partial result and the estimated remaining error.
struct NoConvergence : Error {
    NoConvergence(const std::string& what, double partial_re, double partial_im,
                  double err)
        : Error(what), partial_real(partial_re), partial_imag(partial_im),
          error_estimate(err) {}
    double partial_real;
    double partial_imag;
    double error_estimate;
};

struct MaxSubdivisions : NoConvergence {
    using NoConvergence::NoConvergence;
};

struct NoSignChange : Error {
    using Error::Error;
};

struct InfeasibleMoments : Error {
    using Error::Error;
};

} // namespace tppp
