#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "lensdet/detcore.hpp"

using namespace lensdet;
using std::numbers::pi;

TEST_CASE("small_tau_bracket") {
    CHECK(small_tau_bracket(1.0, 0.0) == 0.0);

    // long-double reference series, summed independently
    auto reference = [](double u) {
        long double sum = 0.0L, pw = 1.0L, fact = 1.0L;
        for (int k = 1; k <= 20; ++k) {
            pw *= static_cast<long double>(u) * u;
            fact *= (2.0L * k - 1.0L) * (2.0L * k);
            if (k >= 2) sum += 2.0L * (2.0L * k - 1.0L) / fact * pw;
        }
        return static_cast<double>(sum);
    };
    for (double u : {1e-3, 1e-2, 0.3, 0.499, 0.501, 2.0}) {
        CHECK(small_tau_bracket(1.0, u) == doctest::Approx(reference(u)).epsilon(1e-13));
        CHECK(small_tau_bracket(0.5, 2.0 * u) ==
              doctest::Approx(reference(u)).epsilon(1e-13));  // depends only on alpha*tau
    }
    // leading order tau^4/4
    CHECK(small_tau_bracket(1.0, 1e-3) == doctest::Approx(2.5e-13).epsilon(1e-5));
    // a direct evaluation well inside the non-cancelling regime
    CHECK(small_tau_bracket(1.0, 2.0) ==
          doctest::Approx(4.0 * std::sinh(2.0) - 2.0 * std::cosh(2.0) - 2.0).epsilon(1e-13));
}

TEST_CASE("Z(1) quadrature and closed form") {
    CHECK(std::abs(z_at_1(LensSpec(2), Coupling::conformal4()).value) <= 1e-9);
    CHECK(z_at_1(LensSpec(4), Coupling::conformal4()).value ==
          doctest::Approx(pi / 8).epsilon(1e-9));
    CHECK(z_at_1(LensSpec(6), Coupling::conformal4()).value ==
          doctest::Approx(pi / (3.0 * std::sqrt(3.0))).epsilon(1e-9));

    CHECK(z1_closed_form_even(2) == 0.0);
    CHECK(z1_closed_form_even(4) == doctest::Approx(pi / 8).epsilon(1e-15));
    CHECK(z1_closed_form_even(12) ==
          doctest::Approx(pi / 24.0 * (5.0 + 4.0 / std::sqrt(3.0))).epsilon(1e-15));
    CHECK(z_at_1(LensSpec(12), Coupling::conformal4()).value ==
          doctest::Approx(z1_closed_form_even(12)).epsilon(1e-9));
    CHECK_THROWS_AS(z1_closed_form_even(5), std::invalid_argument);
    CHECK_THROWS_AS(z_at_1(LensSpec(4, 1.0), Coupling::conformal4()), std::invalid_argument);
    CHECK_THROWS_AS(z_at_1(LensSpec(2), Coupling::imaginary_mass(1.0)), std::invalid_argument);
}

TEST_CASE("large-mass Weyl asymptote") {
    for (int q : {1, 2, 3}) {
        for (double m : {6.0, 10.0}) {
            double v = zprime0(LensSpec(q), Coupling::imaginary_mass(m)).value;
            double ratio = v * 3.0 * q / (pi * m * m * m);
            CHECK(std::abs(ratio - 1.0) <= (m < 8.0 ? 1e-3 : 1e-4));
        }
    }
}

TEST_CASE("general and homogeneous spectra coincide for nu = (1,1)") {
    auto a = zprime0(GeneralLensSpec(5, 1, 1), Coupling::conformal4());
    auto b = zprime0(LensSpec(5), Coupling::conformal4());
    CHECK(std::abs(a.value - b.value) <=
          2.0 * (a.abs_error_estimate + b.abs_error_estimate));
}

TEST_CASE("lens-space isomorphisms at q = 29 (spot checks)") {
    auto z = [](int nu) { return zprime0(GeneralLensSpec(29, 1, nu), Coupling::conformal4()); };
    auto a = z(2), b = z(27), c = z(15);  // 29-2 and 2^-1 mod 29
    CHECK(std::abs(a.value - b.value) <= 2.0 * (a.abs_error_estimate + b.abs_error_estimate));
    CHECK(std::abs(a.value - c.value) <= 2.0 * (a.abs_error_estimate + c.abs_error_estimate));
}

TEST_CASE("zero-mode identity links the subtracted and contour pipelines") {
    for (int q : {1, 2, 5}) {
        for (double alpha : {0.3, 0.6}) {
            double bar = zbar_prime0(LensSpec(q), alpha).value;
            double direct = zprime0(LensSpec(q), Coupling::alpha_squared(alpha * alpha)).value;
            CHECK(bar - direct == doctest::Approx(std::log(1.0 - alpha * alpha)).epsilon(1e-8));
        }
    }
}

TEST_CASE("minimal coupling on projective three-space") {
    auto r = minimal_logdet(LensSpec(2));
    CHECK(r.value == doctest::Approx(-0.695171).epsilon(2e-5));
    CHECK(r.quantity == Quantity::ZBarPrime0);

    // decomposition into sphere quantities
    double cross = minimal_logdet(LensSpec(1)).value -
                   4.0 * zprime0(LensSpec(1), Coupling::conformal3()).value;
    CHECK(r.value == doctest::Approx(cross).epsilon(1e-7));

    CHECK_THROWS_AS(minimal_logdet(LensSpec(3, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(zprime0(LensSpec(2), Coupling::minimal()), std::invalid_argument);
}

TEST_CASE("back-integration at conformal3 against the direct contour value") {
    double bar = zbar_prime0(LensSpec(3), 0.5).value;
    double direct = zprime0(LensSpec(3), Coupling::conformal3()).value + std::log(0.75);
    CHECK(bar == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("twist continuity and periodicity") {
    // fine sampling of Z'(0) over the twist at q = 4, conformal3
    double prev = zprime0_homogeneous(4.0, 0.0, Coupling::conformal3()).value;
    double maxstep = 0.0;
    for (int i = 1; i <= 50; ++i) {
        double r = 4.0 * i / 50.0 * (1.0 - 1e-12);
        double v = zprime0_homogeneous(4.0, r, Coupling::conformal3()).value;
        maxstep = std::max(maxstep, std::abs(v - prev));
        prev = v;
    }
    CHECK(maxstep <= 0.2);
    // r -> q is the untwisted spectrum again
    double wrap = zprime0_homogeneous(4.0, 4.0 - 1e-7, Coupling::conformal3()).value;
    double base = zprime0_homogeneous(4.0, 0.0, Coupling::conformal3()).value;
    CHECK(wrap == doctest::Approx(base).epsilon(1e-5));
}

TEST_CASE("resolvent sum against the back-integration integrand") {
    // sum_{l>=2} D_l (l^2-a^2)^-2 computed directly vs the kernel-side
    // integral (1/2) int tau Hbar(tau) sinh(a tau)/a dtau
    const double alpha = 0.5;
    for (int q : {1, 3}) {
        const long L = 200000;
        LensSpec spec(q);
        auto d = degeneracy_coefficients(spec, L);
        double direct = 0.0;
        for (long l = L; l >= 2; --l) {
            if (d[l - 1] == 0) continue;
            double ev = static_cast<double>(l) * l - alpha * alpha;
            direct += static_cast<double>(l) * d[l - 1] / (ev * ev);
        }
        direct += 1.0 / (q * static_cast<double>(L));  // integral tail estimate

        ContourLine line;
        line.decay_rate = (q == 1 ? 2.0 : 3.0) - alpha;
        auto kernel_side = integrate_semi_infinite(
            [&](double t) {
                if (t < 1e-8) return 0.5 / q;
                return 0.5 * t * homogeneous_h_subtracted(q, 0.0, t) * std::sinh(alpha * t) /
                       alpha;
            },
            line);
        CHECK(kernel_side.value == doctest::Approx(direct).epsilon(1e-6));
    }
}

TEST_CASE("contour-offset independence of Z(1)") {
    double gap = pole_gap(LensSpec(4));
    std::vector<SpectralResult> rs;
    for (double f : {0.25, 0.5, 0.75}) {
        ContourLine L = default_line(LensSpec(4), Coupling::conformal4());
        L.delta = f * gap;
        rs.push_back(z_at_1(LensSpec(4), Coupling::conformal4(), L));
    }
    for (size_t i = 0; i < rs.size(); ++i)
        for (size_t j = i + 1; j < rs.size(); ++j)
            CHECK(std::abs(rs[i].value - rs[j].value) <=
                  10.0 * (rs[i].abs_error_estimate + rs[j].abs_error_estimate));
}

TEST_CASE("result metadata") {
    auto r3 = zprime0(LensSpec(3), Coupling::conformal4());
    CHECK(r3.formula_extended);  // odd order, continued closed form
    auto r4 = zprime0(LensSpec(4), Coupling::conformal4());
    CHECK_FALSE(r4.formula_extended);
    CHECK(r4.det() == doctest::Approx(std::exp(-r4.value)));
    CHECK(r4.logdet() == doctest::Approx(-r4.value));
    CHECK(r4.convention.normalization == "canonical");

    ContourLine bad = default_line(LensSpec(4), Coupling::conformal4());
    bad.delta = 10.0;  // beyond the pole gap
    CHECK_THROWS_AS(zprime0(LensSpec(4), Coupling::conformal4(), bad), std::invalid_argument);
}
