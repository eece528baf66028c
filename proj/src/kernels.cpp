#include "lensdet/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace lensdet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSeriesRadius = 1e-2;   // |tau| below which Laurent series take over
constexpr double kPoleTolerance = 1e-8;

// Distance from y to the lattice {k * period : k integer}.
double dist_to_lattice(double y, double period) {
    double k = std::round(y / period);
    return std::abs(y - k * period);
}

// Distance from tau to the conservative homogeneous pole set
// {i pi k} U {2 pi i k / q}.
double homogeneous_pole_distance(double q, cplx tau) {
    double x = std::abs(tau.real());
    double y = tau.imag();
    double d1 = std::hypot(x, dist_to_lattice(y, kPi));
    double d2 = std::hypot(x, dist_to_lattice(y, kTwoPi / q));
    return std::min(d1, d2);
}

void require_off_poles_homogeneous(double q, cplx tau) {
    if (homogeneous_pole_distance(q, tau) < kPoleTolerance)
        throw PoleProximityError("homogeneous kernel evaluated within 1e-8 of a pole");
}

// Poles of the product kernels sit at tau = i(+-beta + 2 pi k) for every
// rotation angle beta (beta = 0 included, via p = 0).
double angle_pole_distance(int q, const std::vector<int>& nu, cplx tau) {
    double x = std::abs(tau.real());
    double y = tau.imag();
    double best = std::hypot(x, dist_to_lattice(y, kTwoPi));
    for (int p = 1; p < q; ++p) {
        for (int n : nu) {
            double beta = kTwoPi * (static_cast<long long>(p) * n % q) / q;
            double dy = std::min(dist_to_lattice(y - beta, kTwoPi),
                                 dist_to_lattice(y + beta, kTwoPi));
            best = std::min(best, std::hypot(x, dy));
        }
    }
    return best;
}

void require_off_poles_angles(int q, const std::vector<int>& nu, cplx tau) {
    if (angle_pole_distance(q, nu, tau) < kPoleTolerance)
        throw PoleProximityError("product kernel evaluated within 1e-8 of a pole");
}

// ---------------------------------------------------------------------------
// Laurent series of the homogeneous kernels about tau = 0.
//
// With u = tau^2,
//   H(tau) = (1/(q tau^2)) sum_k p_k u^k,
// where p = cosh(q delta tau) * (tau/sinh tau) * ((q tau/2)/sinh(q tau/2))
// as a power series in u.  Twelve terms give relative accuracy well below
// 1e-14 for |tau| < 1e-2.
// ---------------------------------------------------------------------------

constexpr int kTerms = 12;
using Poly = std::array<double, kTerms>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly c{};
    for (int i = 0; i < kTerms; ++i)
        for (int j = 0; i + j < kTerms; ++j) c[i + j] += a[i] * b[j];
    return c;
}

Poly poly_reciprocal(const Poly& a) {
    Poly r{};
    r[0] = 1.0 / a[0];
    for (int n = 1; n < kTerms; ++n) {
        double s = 0.0;
        for (int j = 1; j <= n; ++j) s += a[j] * r[n - j];
        r[n] = -s / a[0];
    }
    return r;
}

// sinh(s tau)/(s tau) as a series in u = tau^2.
Poly sinhc_poly(double s) {
    Poly p{};
    double s2 = s * s;
    double term = 1.0;
    for (int k = 0; k < kTerms; ++k) {
        p[k] = term;
        term *= s2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return p;
}

// cosh(s tau) as a series in u = tau^2.
Poly cosh_poly(double s) {
    Poly p{};
    double s2 = s * s;
    double term = 1.0;
    for (int k = 0; k < kTerms; ++k) {
        p[k] = term;
        term *= s2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
    }
    return p;
}

Poly laurent_coefficients(double q, double r) {
    double delta = r / q - 0.5;
    Poly p = poly_mul(cosh_poly(q * delta), poly_reciprocal(sinhc_poly(1.0)));
    return poly_mul(p, poly_reciprocal(sinhc_poly(0.5 * q)));
}

cplx h_series(double q, double r, cplx tau) {
    Poly p = laurent_coefficients(q, r);
    cplx u = tau * tau;
    cplx acc = p[kTerms - 1];
    for (int k = kTerms - 2; k >= 0; --k) acc = acc * u + p[k];
    return acc / (q * u);
}

cplx k_series(double q, double r, cplx tau) {
    Poly p = laurent_coefficients(q, r);
    cplx u = tau * tau;
    // K = (1/q) [2 p0 tau^-3 - sum_{k>=2} (2k-2) p_k tau^{2k-3}]
    cplx acc = 0.0;
    for (int k = kTerms - 1; k >= 2; --k) acc = acc * u + (2.0 * k - 2.0) * p[k];
    return (2.0 * p[0] / (u * tau) - acc * tau) / q;
}

cplx k_prime_series(double q, double r, cplx tau) {
    Poly p = laurent_coefficients(q, r);
    cplx u = tau * tau;
    // K' = (1/q) [-6 p0 tau^-4 - sum_{k>=2} (2k-2)(2k-3) p_k tau^{2k-4}]
    cplx acc = 0.0;
    for (int k = kTerms - 1; k >= 2; --k)
        acc = acc * u + (2.0 * k - 2.0) * (2.0 * k - 3.0) * p[k];
    return (-6.0 * p[0] / (u * u) - acc) / q;
}

// ---------------------------------------------------------------------------
// Closed forms in w = e^{-tau}.  Every power of w is a decaying exponential,
// so the expressions neither overflow nor underflow for Re tau > 0.
//
//   H = (w^a + w^b) A B,  A = 1/(1-w^2),  B = 1/(1-w^q),
// with a = 1+r, b = 1+q-r.  Applying the Euler operator u = w d/dw
// (so that d/dtau = -u) gives K = u(H) and K' = -u(K).
// ---------------------------------------------------------------------------

struct HomogeneousParts {
    cplx A, B, P, Q;   // P = 2 w^2 A, Q = q w^q B
    cplx S0, S1, S2;   // sum of w-powers weighted by 1, exponent, exponent^2
    double q;
};

HomogeneousParts homogeneous_parts(double q, double r, cplx tau) {
    HomogeneousParts parts;
    parts.q = q;
    double a = 1.0 + r;
    double b = 1.0 + q - r;
    cplx w2 = std::exp(-2.0 * tau);
    cplx wq = std::exp(-q * tau);
    cplx na = std::exp(-a * tau);
    cplx nb = std::exp(-b * tau);
    parts.A = 1.0 / (1.0 - w2);
    parts.B = 1.0 / (1.0 - wq);
    parts.P = 2.0 * w2 * parts.A;
    parts.Q = q * wq * parts.B;
    parts.S0 = na + nb;
    parts.S1 = a * na + b * nb;
    parts.S2 = a * a * na + b * b * nb;
    return parts;
}

cplx h_closed(const HomogeneousParts& p) { return p.S0 * p.A * p.B; }

cplx k_closed(const HomogeneousParts& p) {
    return p.A * p.B * (p.S1 + p.S0 * (p.P + p.Q));
}

cplx k_prime_closed(const HomogeneousParts& p) {
    cplx pq = p.P + p.Q;
    return -p.A * p.B *
           (p.S2 + 2.0 * p.S1 * pq +
            p.S0 * (pq * pq + p.P * p.P + p.Q * p.Q + 2.0 * p.P + p.q * p.Q));
}

void validate_homogeneous(double q, double r) {
    if (!(q > 0.0)) throw std::invalid_argument("homogeneous kernel: q must be positive");
    if (!(r >= 0.0 && r <= q))
        throw std::invalid_argument("homogeneous kernel: twist must lie in [0, q]");
}

}  // namespace

cplx homogeneous_h(double q, double r, cplx tau) {
    validate_homogeneous(q, r);
    require_off_poles_homogeneous(q, tau);
    if (std::abs(tau) < kSeriesRadius) return h_series(q, r, tau);
    return h_closed(homogeneous_parts(q, r, tau));
}

cplx homogeneous_k(double q, double r, cplx tau) {
    validate_homogeneous(q, r);
    require_off_poles_homogeneous(q, tau);
    if (std::abs(tau) < kSeriesRadius) return k_series(q, r, tau);
    return k_closed(homogeneous_parts(q, r, tau));
}

cplx homogeneous_k_prime(double q, double r, cplx tau) {
    validate_homogeneous(q, r);
    require_off_poles_homogeneous(q, tau);
    if (std::abs(tau) < kSeriesRadius) return k_prime_series(q, r, tau);
    return k_prime_closed(homogeneous_parts(q, r, tau));
}

cplx homogeneous_h(const LensSpec& spec, cplx tau) { return homogeneous_h(spec.q, spec.r, tau); }
cplx homogeneous_k(const LensSpec& spec, cplx tau) { return homogeneous_k(spec.q, spec.r, tau); }
cplx homogeneous_k_prime(const LensSpec& spec, cplx tau) {
    return homogeneous_k_prime(spec.q, spec.r, tau);
}

double homogeneous_h_subtracted(double q, double r, double tau) {
    validate_homogeneous(q, r);
    if (tau <= 0.0)
        throw std::invalid_argument("homogeneous_h_subtracted: tau must be positive");
    if (tau < kSeriesRadius) return h_series(q, r, tau).real() - std::exp(-tau);
    if (tau < 1.5) return h_closed(homogeneous_parts(q, r, tau)).real() - std::exp(-tau);
    // Beyond the first level the exponential sum converges in a handful of
    // terms and avoids the H - e^{-tau} cancellation.
    double a = 1.0 + r;
    double b = 1.0 + q - r;
    double acc = std::exp(-a * tau) + std::exp(-b * tau) - std::exp(-tau);
    // expand 1/((1-w^2)(1-w^q)) = sum_{j,k} w^{2j+qk} far enough for the
    // tail to underflow the leading term
    for (int j = 0; 2.0 * j * tau < 60.0 + a * tau; ++j) {
        for (int k = 0; q * k * tau < 60.0 + a * tau - 2.0 * j * tau; ++k) {
            if (j == 0 && k == 0) continue;
            double shift = 2.0 * j + q * k;
            acc += std::exp(-(a + shift) * tau) + std::exp(-(b + shift) * tau);
        }
    }
    return acc;
}

// --- product kernels --------------------------------------------------------

namespace {

// sum over the group of prod_i (1 - 2 w cos(beta_i) + w^2)^{-1},
// assembled so that only decaying powers of w appear:
//   K = 2^e w^{e-1} (1 - w^2) / (4 q) * sum_p prod_i ...
cplx product_kernel(int q, const std::vector<int>& nu, cplx tau) {
    require_off_poles_angles(q, nu, tau);
    const int e = static_cast<int>(nu.size());
    cplx w = std::exp(-tau);
    cplx w2 = w * w;
    cplx sum = 0.0;
    for (int p = 0; p < q; ++p) {
        cplx prod = 1.0;
        for (int n : nu) {
            double beta = kTwoPi * (static_cast<long long>(p) * n % q) / q;
            prod *= 1.0 - 2.0 * w * std::cos(beta) + w2;
        }
        sum += 1.0 / prod;
    }
    cplx prefactor = (1.0 - w2) / (4.0 * static_cast<double>(q));
    prefactor *= std::pow(2.0, e) * std::exp(-(e - 1.0) * tau);
    return prefactor * sum;
}

}  // namespace

cplx general_k(const GeneralLensSpec& spec, cplx tau) {
    return product_kernel(spec.q, {spec.nu1, spec.nu2}, tau);
}

cplx higher_k(const HigherLensSpec& spec, cplx tau) {
    return product_kernel(spec.q, spec.nu, tau);
}

// --- exact degeneracies -----------------------------------------------------

namespace {

// #{(a, b) >= 0 : 2a + qb = n}
long long pair_count(long long n, long long q) {
    if (n < 0) return 0;
    if (q % 2 == 0) return (n % 2 == 0) ? n / q + 1 : 0;
    long long bmax = n / q;
    long long b0 = n % 2;  // q odd: b must share the parity of n
    return (bmax >= b0) ? (bmax - b0) / 2 + 1 : 0;
}

long long round_integer(double v, const char* what) {
    double r = std::round(v);
    if (std::abs(v - r) > 1e-6)
        throw std::runtime_error(std::string(what) +
                                 ": non-integer degeneracy, character convention bug");
    return static_cast<long long>(r);
}

std::vector<long long> round_all(const std::vector<double>& vals, const char* what) {
    std::vector<long long> out(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) out[i] = round_integer(vals[i], what);
    return out;
}

// Chebyshev U_l(cos beta) = sin((l+1) beta)/sin(beta) by recurrence.
std::vector<double> chebyshev_u(double c, int n_max) {
    std::vector<double> u(n_max + 1);
    u[0] = 1.0;
    if (n_max >= 1) u[1] = 2.0 * c;
    for (int n = 2; n <= n_max; ++n) u[n] = 2.0 * c * u[n - 1] - u[n - 2];
    return u;
}

std::vector<long long> product_coefficients(int q, const std::vector<int>& nu, int l_max) {
    // t-series of K = t (1-t^2)/q sum_p prod_i 1/(1 - 2 t cos(beta_i) + t^2);
    // each factor expands into Chebyshev polynomials of the second kind.
    std::vector<double> total(l_max + 1, 0.0);
    for (int p = 0; p < q; ++p) {
        std::vector<double> prod(l_max + 1, 0.0);
        prod[0] = 1.0;
        for (int n : nu) {
            double beta = kTwoPi * (static_cast<long long>(p) * n % q) / q;
            auto u = chebyshev_u(std::cos(beta), l_max);
            std::vector<double> next(l_max + 1, 0.0);
            for (int i = 0; i <= l_max; ++i) {
                if (prod[i] == 0.0) continue;
                for (int j = 0; i + j <= l_max; ++j) next[i + j] += prod[i] * u[j];
            }
            prod = std::move(next);
        }
        for (int i = 0; i <= l_max; ++i) total[i] += prod[i];
    }
    std::vector<double> coef(l_max + 1, 0.0);
    for (int l = 1; l <= l_max; ++l) {
        double v = total[l - 1];
        if (l >= 3) v -= total[l - 3];
        coef[l] = v / q;
    }
    coef.erase(coef.begin());  // drop l = 0
    return round_all(coef, "product_coefficients");
}

}  // namespace

std::vector<long long> degeneracy_coefficients(const LensSpec& spec, int l_max) {
    int q = spec.q;
    int r = spec.twist_index();
    std::vector<long long> d(l_max);
    for (int l = 1; l <= l_max; ++l)
        d[l - 1] = pair_count(l - (1 + r), q) + pair_count(l - (q + 1 - r), q);
    return d;
}

std::vector<long long> degeneracy_coefficients(const GeneralLensSpec& spec, int l_max) {
    return product_coefficients(spec.q, {spec.nu1, spec.nu2}, l_max);
}

std::vector<long long> degeneracy_coefficients(const HigherLensSpec& spec, int l_max) {
    return product_coefficients(spec.q, spec.nu, l_max);
}

std::vector<long long> degeneracies_oracle(const LensSpec& spec, int l_max) {
    const int q = spec.q;
    const int r = spec.twist_index();
    std::vector<double> vals(l_max, 0.0);
    for (int l = 1; l <= l_max; ++l) {
        cplx acc = 0.0;
        for (int p = 0; p < q; ++p) {
            double theta = kTwoPi * p / q;
            double chi;
            if (p == 0)
                chi = l;
            else if (2 * p == q)
                chi = (l % 2 == 1) ? l : -l;  // limit of sin(l th)/sin(th) at th = pi
            else
                chi = std::sin(l * theta) / std::sin(theta);
            acc += std::polar(1.0, -kTwoPi * p * r / q) * chi;
        }
        acc /= static_cast<double>(q);
        if (std::abs(acc.imag()) > 1e-6)
            throw std::runtime_error("degeneracies_oracle: complex residue, phase bug");
        vals[l - 1] = acc.real();
    }
    return round_all(vals, "degeneracies_oracle");
}

std::vector<long long> degeneracies_oracle(const GeneralLensSpec& spec, int l_max) {
    const int q = spec.q;
    std::vector<double> vals(l_max, 0.0);
    for (int l = 1; l <= l_max; ++l) {
        double acc = 0.0;
        for (int p = 0; p < q; ++p) {
            long long a1 = static_cast<long long>(p) * spec.nu1 % q;
            long long a2 = static_cast<long long>(p) * spec.nu2 % q;
            double c;
            if (a1 == a2 || a1 + a2 == q) {
                // coincident cosines: derivative limit of the character ratio
                if (a1 == 0)
                    c = static_cast<double>(l) * l;  // p = 0
                else if (2 * a1 == q)
                    c = static_cast<double>(l) * ((l % 2 == 1) ? l : -l);  // beta = pi
                else {
                    double beta = kTwoPi * a1 / q;
                    c = l * std::sin(l * beta) / std::sin(beta);
                }
            } else {
                double b1 = kTwoPi * a1 / q;
                double b2 = kTwoPi * a2 / q;
                c = (std::cos(l * b1) - std::cos(l * b2)) / (std::cos(b1) - std::cos(b2));
            }
            acc += c;
        }
        vals[l - 1] = acc / q;
    }
    return round_all(vals, "degeneracies_oracle");
}

int first_level_at_least(const LensSpec& spec, int l_min) {
    int q = spec.q;
    int r = spec.twist_index();
    for (int l = l_min; l <= l_min + 2 * q + 2; ++l)
        if (pair_count(l - (1 + r), q) + pair_count(l - (q + 1 - r), q) > 0) return l;
    throw std::logic_error("first_level_at_least: no occupied level found");
}

}  // namespace lensdet
