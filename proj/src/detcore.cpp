#include "lensdet/detcore.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace lensdet {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_integer(double v) { return std::abs(v - std::round(v)) < 1e-9; }

// Odd orders >= 3 use the even-order generating function continued in q.
bool extended_formula(double q) {
    if (!is_integer(q)) return true;
    long n = std::lround(q);
    return n >= 3 && n % 2 == 1;
}

std::string echo_homogeneous(double q, double r, const Coupling& c) {
    std::ostringstream os;
    os << "L(q=" << q << ", r=" << r << "), " << c.describe();
    return os.str();
}

void check_line(const ContourLine& line, double gap) {
    if (!(line.delta >= 0.0 && line.delta < gap))
        throw std::invalid_argument("contour offset must lie in [0, pole gap)");
}

SpectralResult from_quadrature(const QuadratureResult& q, Quantity what, std::string echo,
                               bool extended) {
    SpectralResult r;
    r.value = q.value;
    r.abs_error_estimate = q.abs_error_estimate;
    r.quantity = what;
    r.spec_echo = std::move(echo);
    r.formula_extended = extended;
    r.evaluations = q.evaluations;
    r.converged = q.converged;
    return r;
}

template <typename Kernel>
SpectralResult zprime0_impl(Kernel&& kernel, double gap, const Coupling& coupling,
                            std::optional<ContourLine> line, std::string echo, bool extended) {
    coupling.require_contour();
    ContourLine L = line.value_or(default_line(gap, coupling));
    check_line(L, gap);
    auto f = [&](double x) {
        cplx tau(x, L.delta);
        return (2.0 * kernel(tau) * coupling.cosh_alpha_tau(tau) / tau).real();
    };
    return from_quadrature(integrate_semi_infinite(f, L), Quantity::ZPrime0, std::move(echo),
                           extended);
}

}  // namespace

SpectralResult zprime0_homogeneous(double q, double r, const Coupling& coupling,
                                   std::optional<ContourLine> line) {
    return zprime0_impl([q, r](cplx tau) { return homogeneous_k(q, r, tau); },
                        pole_gap_homogeneous(q), coupling, line, echo_homogeneous(q, r, coupling),
                        extended_formula(q));
}

SpectralResult zprime0(const LensSpec& spec, const Coupling& coupling,
                       std::optional<ContourLine> line) {
    return zprime0_homogeneous(spec.q, spec.r, coupling, line);
}

SpectralResult zprime0(const GeneralLensSpec& spec, const Coupling& coupling,
                       std::optional<ContourLine> line) {
    std::ostringstream os;
    os << "L(" << spec.q << "; " << spec.nu1 << "," << spec.nu2 << "), " << coupling.describe();
    return zprime0_impl([&spec](cplx tau) { return general_k(spec, tau); }, pole_gap(spec),
                        coupling, line, os.str(), false);
}

SpectralResult zprime0(const HigherLensSpec& spec, const Coupling& coupling,
                       std::optional<ContourLine> line) {
    std::ostringstream os;
    os << "L(" << spec.q << "; ";
    for (size_t i = 0; i < spec.nu.size(); ++i) os << (i ? "," : "") << spec.nu[i];
    os << ") on S^" << 2 * spec.e() - 1 << ", " << coupling.describe();
    return zprime0_impl([&spec](cplx tau) { return higher_k(spec, tau); }, pole_gap(spec),
                        coupling, line, os.str(), false);
}

SpectralResult z_at_1_homogeneous(double q, const Coupling& coupling,
                                  std::optional<ContourLine> line) {
    double a2 = coupling.alpha_sq();
    if (!(a2 >= 0.0 && a2 < 1.0))
        throw std::invalid_argument("z_at_1: requires 0 <= alpha^2 < 1");
    double gap = pole_gap_homogeneous(q);
    ContourLine L = line.value_or(default_line(gap, coupling));
    check_line(L, gap);
    auto f = [&](double x) {
        cplx tau(x, L.delta);
        return (homogeneous_h(q, 0.0, tau) * coupling.cosh_alpha_tau(tau)).real();
    };
    return from_quadrature(integrate_semi_infinite(f, L), Quantity::ZAt1,
                           echo_homogeneous(q, 0.0, coupling), extended_formula(q));
}

SpectralResult z_at_1(const LensSpec& spec, const Coupling& coupling,
                      std::optional<ContourLine> line) {
    if (spec.twist_index() != 0)
        throw std::invalid_argument("z_at_1: only the untwisted bundle is supported");
    return z_at_1_homogeneous(spec.q, coupling, line);
}

double z1_closed_form_even(int two_q) {
    if (two_q <= 0 || two_q % 2 != 0)
        throw std::invalid_argument("z1_closed_form_even: order must be even and positive");
    int q = two_q / 2;
    double sum = 0.0;
    for (int p = 1; p < q; ++p) sum += 1.0 / std::sin(kPi * p / q);
    return kPi / (4.0 * q) * sum;
}

double small_tau_bracket(double alpha, double tau) {
    double u = alpha * tau;
    double u2 = u * u;
    if (std::abs(u) <= 0.5) {
        // sum_{k>=2} 2(2k-1) u^{2k} / (2k)!
        double sum = 0.0;
        double pw = u2 * u2;    // u^{2k}
        double fact = 24.0;     // (2k)!
        for (int k = 2; k <= 13; ++k) {
            sum += 2.0 * (2.0 * k - 1.0) / fact * pw;
            pw *= u2;
            fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        }
        return sum;
    }
    return 2.0 * u * std::sinh(u) - 2.0 * std::cosh(u) + 2.0 - u2;
}

namespace {

// First occupied level of the untwisted subtracted kernel, continued in q:
// levels sit at 1 + 2a + qb and q + 1 + 2a + qb, so the first level above
// the zero mode is min(3, q + 1).
double subtracted_decay(double q, double alpha) {
    double l1 = std::min(3.0, q + 1.0);
    return std::max(l1 - alpha, 0.25);
}

}  // namespace

SpectralResult zbar_prime0_homogeneous(double q, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("zbar_prime0: requires 0 <= alpha <= 1");

    ContourLine L;  // real-axis integration
    L.delta = 0.0;
    L.decay_rate = subtracted_decay(q, alpha);
    auto f = [q, alpha](double t) {
        if (t < 1e-8) return alpha * alpha * alpha * alpha / (4.0 * q);  // limit at t = 0
        return homogeneous_h_subtracted(q, 0.0, t) * small_tau_bracket(alpha, t) / (t * t);
    };
    QuadratureResult quad = integrate_semi_infinite(f, L);

    SpectralResult z1 = z_at_1_homogeneous(q, Coupling::conformal4());
    SpectralResult zp = zprime0_homogeneous(q, 0.0, Coupling::conformal4());

    SpectralResult out;
    out.value = quad.value + alpha * alpha * (z1.value - 1.0) + zp.value;
    out.abs_error_estimate =
        quad.abs_error_estimate + alpha * alpha * z1.abs_error_estimate + zp.abs_error_estimate;
    out.quantity = Quantity::ZBarPrime0;
    out.spec_echo = echo_homogeneous(q, 0.0, Coupling::alpha_squared(alpha * alpha)) +
                    ", zero mode subtracted";
    out.formula_extended = extended_formula(q);
    out.evaluations = quad.evaluations + z1.evaluations + zp.evaluations;
    out.converged = quad.converged && z1.converged && zp.converged;
    return out;
}

SpectralResult zbar_prime0(const LensSpec& spec, double alpha) {
    if (spec.twist_index() != 0)
        throw std::invalid_argument(
            "zbar_prime0: the subtraction removes exactly one zero mode, which only the "
            "untwisted bundle has");
    return zbar_prime0_homogeneous(spec.q, alpha);
}

SpectralResult minimal_logdet(const LensSpec& spec) { return zbar_prime0(spec, 1.0); }

}  // namespace lensdet
