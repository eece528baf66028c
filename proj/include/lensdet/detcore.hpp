#pragma once

// Zeta-function continuations for the quotient Laplacians:
//
//   Z(s) = sum_l D_l (l^2 - alpha^2)^{-s},   logdet = -Z'(0).
//
// Z'(0) is computed for every quotient family from the contour
// representation
//
//   Z'(0) = int_0^inf dx Re[ 2 K(x + i Delta) cosh(alpha (x + i Delta))
//                            / (x + i Delta) ],
//
// with K the family's cylinder kernel.  Z(1) and the zero-mode-subtracted
// derivative Zbar'(0) (which reaches minimal coupling, alpha = 1) follow
// from the back-integrated resolvent.

#include <optional>
#include <string>

#include "lensdet/contour.hpp"
#include "lensdet/coupling.hpp"
#include "lensdet/kernels.hpp"

namespace lensdet {

enum class Quantity { ZPrime0, ZAt1, ZBarPrime0 };

struct Convention {
    std::string field = "real-scalar";
    std::string normalization = "canonical";
};

struct SpectralResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    Quantity quantity = Quantity::ZPrime0;
    Convention convention;
    std::string spec_echo;
    // Set when the closed-form generating function is used outside the
    // even orders where the two-sphere reduction derives it.
    bool formula_extended = false;
    long evaluations = 0;
    bool converged = true;

    double logdet() const { return -value; }
    double det() const { return std::exp(-value); }
};

SpectralResult zprime0(const LensSpec& spec, const Coupling& coupling,
                       std::optional<ContourLine> line = {});
SpectralResult zprime0(const GeneralLensSpec& spec, const Coupling& coupling,
                       std::optional<ContourLine> line = {});
SpectralResult zprime0(const HigherLensSpec& spec, const Coupling& coupling,
                       std::optional<ContourLine> line = {});

// Continuous-(q, r) homogeneous family, for parameter sweeps over the
// closed forms.
SpectralResult zprime0_homogeneous(double q, double r, const Coupling& coupling,
                                   std::optional<ContourLine> line = {});

// Z(1, q, alpha) = int_0^inf dx Re[H(tau) cosh(alpha tau)], tau = x + i Delta,
// for the untwisted homogeneous space; requires 0 <= alpha^2 < 1.
SpectralResult z_at_1(const LensSpec& spec, const Coupling& coupling,
                      std::optional<ContourLine> line = {});
SpectralResult z_at_1_homogeneous(double q, const Coupling& coupling,
                                  std::optional<ContourLine> line = {});

// Closed form for even orders: Z(1, 2q, 0) = (pi/4q) sum_{p=1}^{q-1} cosec(pi p/q).
double z1_closed_form_even(int two_q);

// Zero-mode-subtracted derivative at zero via the back-integrated resolvent,
//   Zbar'(0, q, alpha) = int_0^inf dtau/tau^2 Hbar(tau)
//                          (2 a tau sinh a tau - 2 cosh a tau + 2 - a^2 tau^2)
//                        + alpha^2 (Z(1,q,0) - 1) + Z'(0,q,0),
// valid on untwisted homogeneous spaces for 0 <= alpha <= 1.
SpectralResult zbar_prime0(const LensSpec& spec, double alpha);
SpectralResult zbar_prime0_homogeneous(double q, double alpha);

// alpha = 1: the minimal-coupling -logdet.
SpectralResult minimal_logdet(const LensSpec& spec);

// Stable evaluation of 2 a t sinh(a t) - 2 cosh(a t) + 2 - a^2 t^2
// (series below |a t| = 1/2, direct above).
double small_tau_bracket(double alpha, double tau);

}  // namespace lensdet
