#pragma once

// Adaptive quadrature of semi-infinite integrals with certified exponential
// tail truncation.  The caller supplies the integrand already restricted to
// the real parameter x >= 0 (any complex shift tau = x + i Delta and the
// real part are taken inside the callable) together with a lower bound on
// its exponential decay rate.

#include <functional>

#include "lensdet/coupling.hpp"
#include "lensdet/lens_spec.hpp"

namespace lensdet {

struct ContourLine {
    double delta = 0.0;        // imaginary offset of the line (0 = real axis)
    double decay_rate = 1.0;   // lower bound rho on the decay e^{-rho x}
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;
    long max_evals = 1000000;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod subdivision on [0, X] plus the analytic tail bound
// C e^{-rho X}/rho folded into the error estimate; X is chosen so the tail
// bound stays below abs_tol/2, with C estimated by sampling.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& integrand,
                                         const ContourLine& line);

// Standard line for a quotient/coupling pair: Delta at half the pole gap,
// decay rate 1 - max(alpha, 0) for real alpha (the cosine factor of an
// imaginary mass is bounded, so rho = 1 there).
ContourLine default_line(double pole_gap, const Coupling& coupling);
ContourLine default_line(const LensSpec& spec, const Coupling& coupling);
ContourLine default_line(const GeneralLensSpec& spec, const Coupling& coupling);
ContourLine default_line(const HigherLensSpec& spec, const Coupling& coupling);

}  // namespace lensdet
