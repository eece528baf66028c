#include "lensdet/thermo.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "lensdet/kernels.hpp"

namespace lensdet {

namespace {
constexpr double kPi = std::numbers::pi;

Rational reduce(__int128 num, __int128 den) {
    if (den < 0) { num = -num; den = -den; }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    return Rational{static_cast<long long>(num / a), static_cast<long long>(den / a)};
}
}  // namespace

double casimir_energy(int q, double delta) {
    if (q < 1) throw std::invalid_argument("casimir_energy: q must be >= 1");
    double d2 = delta * delta;
    double d4 = d2 * d2;
    double q2 = static_cast<double>(q) * q;
    double q4 = q2 * q2;
    return ((7.0 - 120.0 * d2 + 240.0 * d4) * q4 + 40.0 * (1.0 - 12.0 * d2) * q2 + 112.0) /
           (2880.0 * q);
}

double casimir_energy_real(int q, double delta) { return 0.5 * casimir_energy(q, delta); }

Rational casimir_energy_rational(int q, Rational delta) {
    if (q < 1) throw std::invalid_argument("casimir_energy_rational: q must be >= 1");
    if (delta.den == 0) throw std::invalid_argument("casimir_energy_rational: zero denominator");
    __int128 n = delta.num, d = delta.den;
    __int128 n2 = n * n, d2 = d * d;
    __int128 n4 = n2 * n2, d4 = d2 * d2;
    __int128 Q = q;
    __int128 q2 = Q * Q, q4 = q2 * q2;
    __int128 num = (7 * d4 - 120 * n2 * d2 + 240 * n4) * q4 + 40 * (d4 - 12 * n2 * d2) * q2 +
                   112 * d4;
    return reduce(num, 2880 * Q * d4);
}

namespace {

// Kahan-compensated accumulation of the K and K' towers.
ThermoPoint thermo_series(int q, double delta, const ThermoState& state) {
    if (!(state.beta > 0.0)) throw std::invalid_argument("thermo: beta must be positive");
    if (state.beta < state.beta_min)
        throw ConvergenceError(
            "thermo: beta below beta_min; the series needs ~1/beta terms, raise max_terms "
            "and lower beta_min deliberately");
    if (state.field_factor != 1 && state.field_factor != 2)
        throw std::invalid_argument("thermo: field_factor must be 1 or 2");

    const double beta = state.beta;
    const double r = q * (delta + 0.5);  // kernel twist label; K is even in delta
    const double e0 = casimir_energy_real(q, delta);

    double sum_f = 0.0, c_f = 0.0;  // sum K(m beta)/m
    double sum_e = 0.0, c_e = 0.0;  // sum K'(m beta)
    const double scale = std::max(std::abs(e0), 1.0);
    for (long m = 1;; ++m) {
        if (m > state.max_terms)
            throw ConvergenceError("thermo: series term cap reached; raise max_terms");
        double tau = m * beta;
        if (tau > 750.0) break;  // every remaining term underflows
        double k = homogeneous_k(q, r, cplx(tau, 0.0)).real();
        double kp = homogeneous_k_prime(q, r, cplx(tau, 0.0)).real();
        double tf = k / m;
        double y = tf - c_f;
        double t = sum_f + y;
        c_f = (t - sum_f) - y;
        sum_f = t;
        double te = kp;
        y = te - c_e;
        t = sum_e + y;
        c_e = (t - sum_e) - y;
        sum_e = t;
        double mag = std::abs(tf) + beta * std::abs(te);
        if (m >= 4 && mag < state.series_tol * std::max({std::abs(sum_f), scale}))
            break;
    }

    ThermoPoint out;
    double ff = state.field_factor;
    out.free_energy = ff * (e0 - sum_f / beta);
    out.internal_energy = ff * (e0 - sum_e);
    out.entropy = ff * (sum_f - beta * sum_e);
    return out;
}

}  // namespace

ThermoPoint thermo_point_delta(int q, double delta, const ThermoState& state) {
    if (q < 1) throw std::invalid_argument("thermo: q must be >= 1");
    if (!(delta >= -0.5 && delta <= 0.5))
        throw std::invalid_argument("thermo: delta must lie in [-1/2, 1/2]");
    return thermo_series(q, delta, state);
}

double free_energy_delta(int q, double delta, const ThermoState& state) {
    return thermo_point_delta(q, delta, state).free_energy;
}
double internal_energy_delta(int q, double delta, const ThermoState& state) {
    return thermo_point_delta(q, delta, state).internal_energy;
}
double entropy_delta(int q, double delta, const ThermoState& state) {
    return thermo_point_delta(q, delta, state).entropy;
}

double free_energy(const LensSpec& spec, const ThermoState& state) {
    return free_energy_delta(spec.q, spec.delta(), state);
}

double free_energy(const GeneralLensSpec& spec, double e0_real, const ThermoState& state) {
    if (!(state.beta > 0.0)) throw std::invalid_argument("thermo: beta must be positive");
    if (state.beta < state.beta_min)
        throw ConvergenceError("thermo: beta below beta_min; raise max_terms deliberately");
    double sum = 0.0, comp = 0.0;
    const double scale = std::max(std::abs(e0_real), 1.0);
    for (long m = 1;; ++m) {
        if (m > state.max_terms)
            throw ConvergenceError("thermo: series term cap reached; raise max_terms");
        double tau = m * state.beta;
        if (tau > 750.0) break;
        double term = general_k(spec, cplx(tau, 0.0)).real() / m;
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (m >= 4 && std::abs(term) < state.series_tol * std::max(std::abs(sum), scale)) break;
    }
    return state.field_factor * (e0_real - sum / state.beta);
}
double internal_energy(const LensSpec& spec, const ThermoState& state) {
    return internal_energy_delta(spec.q, spec.delta(), state);
}
double entropy(const LensSpec& spec, const ThermoState& state) {
    return entropy_delta(spec.q, spec.delta(), state);
}

ThermoPoint high_temp_asymptotics(int q, double beta, double zprime0_value) {
    if (q < 1 || !(beta > 0.0)) throw std::invalid_argument("high_temp_asymptotics: bad inputs");
    double pi4 = kPi * kPi * kPi * kPi;
    double b = beta;
    ThermoPoint out;
    out.free_energy = -pi4 / (45.0 * q) / (b * b * b * b) - 0.5 * zprime0_value / b;
    out.internal_energy = pi4 / (15.0 * q) / (b * b * b * b);
    out.entropy = 4.0 * pi4 / (45.0 * q) / (b * b * b) + 0.5 * zprime0_value;
    return out;
}

}  // namespace lensdet
