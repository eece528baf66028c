#pragma once

// Closed-form degeneracy generating functions and cylinder kernels for the
// sphere quotients, together with brute-force character-sum oracles for the
// mode degeneracies.
//
// Conventions, with t = exp(-tau):
//   H(tau) = sum_l d_l e^{-l tau}   (right degeneracies, homogeneous spaces)
//   K(tau) = sum_l D_l e^{-l tau}   (total degeneracies; D_l = l d_l when
//                                    homogeneous), and K = -dH/dtau there.

#include <complex>
#include <vector>

#include "lensdet/lens_spec.hpp"

namespace lensdet {

using cplx = std::complex<double>;

// --- homogeneous family ---------------------------------------------------
//
// H(tau) = cosh(q tau delta) / (2 sinh tau sinh(q tau/2))
//        = (t^{1+r} + t^{1+q-r}) / ((1-t^2)(1-t^q)),
// K(tau) = -dH/dtau in closed form, K'(tau) = dK/dtau.
// All three switch to Laurent series for |tau| < 1e-2 where the closed
// forms cancel; the leading behavior there is H ~ 1/(q tau^2) and
// K ~ 2/(q tau^3).  q and r may be real (continuous sweeps).

cplx homogeneous_h(double q, double r, cplx tau);
cplx homogeneous_k(double q, double r, cplx tau);
cplx homogeneous_k_prime(double q, double r, cplx tau);

cplx homogeneous_h(const LensSpec& spec, cplx tau);
cplx homogeneous_k(const LensSpec& spec, cplx tau);
cplx homogeneous_k_prime(const LensSpec& spec, cplx tau);

// H(tau) - e^{-tau} on the real axis with the l = 1 (zero mode) term
// removed without cancellation; used by the subtracted integrals.
double homogeneous_h_subtracted(double q, double r, double tau);

// --- two-sided and higher quotients ----------------------------------------
//
// general_k: K(tau) = (sinh tau / 2q) sum_p 1/((cosh tau - cos b1)(cosh tau - cos b2))
// higher_k:  same with a product over the e rotation angles.

cplx general_k(const GeneralLensSpec& spec, cplx tau);
cplx higher_k(const HigherLensSpec& spec, cplx tau);

// --- exact degeneracies -----------------------------------------------------
//
// degeneracy_coefficients: Taylor coefficients of the closed-form generating
// function (lattice counting for the homogeneous family, Chebyshev-series
// expansion of the product form otherwise).  Exact integers.
//
// degeneracies_oracle: independent group-averaged character sums, with the
// degenerate-angle cases evaluated by their exact limits.

std::vector<long long> degeneracy_coefficients(const LensSpec& spec, int l_max);
std::vector<long long> degeneracy_coefficients(const GeneralLensSpec& spec, int l_max);
std::vector<long long> degeneracy_coefficients(const HigherLensSpec& spec, int l_max);

std::vector<long long> degeneracies_oracle(const LensSpec& spec, int l_max);
std::vector<long long> degeneracies_oracle(const GeneralLensSpec& spec, int l_max);

// Smallest level l >= l_min with d_l != 0 (homogeneous, integer twist);
// sets the exponential decay rate of the subtracted kernels.
int first_level_at_least(const LensSpec& spec, int l_min);

}  // namespace lensdet
