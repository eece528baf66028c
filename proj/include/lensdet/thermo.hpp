#pragma once

// Finite-temperature thermodynamics on the twisted homogeneous lens spaces:
// Casimir energy, free energy, internal energy and entropy from the
// cylinder-kernel series
//
//   F(beta) = E0 - (1/beta) sum_{m>=1} K(m beta)/m,
//
// plus the terminating high-temperature expansions.

#include "lensdet/lens_spec.hpp"

namespace lensdet {

struct ThermoState {
    double beta = 1.0;
    int field_factor = 1;       // 1 = real scalar, 2 = complex field
    double series_tol = 1e-12;
    double beta_min = 1e-2;
    long max_terms = 1000000;
};

struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Closed-form Casimir energy
//   E0(q, delta) = ((7 - 120 d^2 + 240 d^4) q^4 + 40 (1 - 12 d^2) q^2 + 112)
//                  / (2880 q),
// quoted for a complex field; the real-scalar value is half.
double casimir_energy(int q, double delta);
double casimir_energy_real(int q, double delta);
Rational casimir_energy_rational(int q, Rational delta);

struct ThermoPoint {
    double free_energy = 0.0;
    double internal_energy = 0.0;
    double entropy = 0.0;
};

double free_energy(const LensSpec& spec, const ThermoState& state);
double internal_energy(const LensSpec& spec, const ThermoState& state);
double entropy(const LensSpec& spec, const ThermoState& state);

// delta-parameterized versions (delta = r/q - 1/2; even in delta).
double free_energy_delta(int q, double delta, const ThermoState& state);
double internal_energy_delta(int q, double delta, const ThermoState& state);
double entropy_delta(int q, double delta, const ThermoState& state);
ThermoPoint thermo_point_delta(int q, double delta, const ThermoState& state);

// Two-sided quotients: the closed-form Casimir energy above covers only the
// homogeneous family, so the caller supplies E0 (real-scalar value) here.
double free_energy(const GeneralLensSpec& spec, double e0_real, const ThermoState& state);

// Truncated high-temperature expansions for a real scalar:
//   F ~ -pi^4/(45 q) beta^-4 - Z'(0)/2 beta^-1,
//   E ~  pi^4/(15 q) beta^-4,
//   S ~  4 pi^4/(45 q) beta^-3 + Z'(0)/2.
ThermoPoint high_temp_asymptotics(int q, double beta, double zprime0_value);

}  // namespace lensdet
