#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lensdet/kernels.hpp"

using namespace lensdet;
using std::numbers::pi;

namespace {

// brute-force kernel sums from the exact coefficients
cplx h_by_series(const LensSpec& spec, cplx tau, int l_max) {
    auto d = degeneracy_coefficients(spec, l_max);
    cplx acc = 0.0;
    for (int l = l_max; l >= 1; --l) acc += static_cast<double>(d[l - 1]) * std::exp(-double(l) * tau);
    return acc;
}

cplx k_by_series(const LensSpec& spec, cplx tau, int l_max) {
    auto d = degeneracy_coefficients(spec, l_max);
    cplx acc = 0.0;
    for (int l = l_max; l >= 1; --l)
        acc += static_cast<double>(l) * static_cast<double>(d[l - 1]) * std::exp(-double(l) * tau);
    return acc;
}

}  // namespace

TEST_CASE("homogeneous H against direct mode sums") {
    // S^3: d_l = l, so H(1) = sum l e^-l = e/(e-1)^2
    double e = std::exp(1.0);
    double expected = e / ((e - 1) * (e - 1));
    CHECK(homogeneous_h(LensSpec(1), cplx(1.0, 0.0)).real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(homogeneous_h(LensSpec(1), cplx(1.0, 0.0)).real() ==
          doctest::Approx(1.0 / (4.0 * std::pow(std::sinh(0.5), 2))).epsilon(1e-14));

    // leading mode: untwisted d_1 = 1, so H ~ e^-tau at large tau
    CHECK(homogeneous_h(LensSpec(2), cplx(10.0, 0.0)).real() ==
          doctest::Approx(std::exp(-10.0)).epsilon(1e-8));

    // twisted case against the exact coefficient sum
    LensSpec s42(4, 2.0);
    cplx tau(0.7, 0.0);
    cplx ref = h_by_series(s42, tau, 200);
    CHECK(std::abs(homogeneous_h(s42, tau) - ref) <= 1e-12 * std::abs(ref));
}

TEST_CASE("homogeneous K against direct mode sums") {
    // S^3: K(1) = sum l^2 e^-l = e(e+1)/(e-1)^3
    double e = std::exp(1.0);
    double expected = e * (e + 1) / std::pow(e - 1, 3);
    CHECK(homogeneous_k(LensSpec(1), cplx(1.0, 0.0)).real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(homogeneous_k(LensSpec(1), cplx(1.0, 0.0)).real() ==
          doctest::Approx(std::cosh(0.5) / (4.0 * std::pow(std::sinh(0.5), 3))).epsilon(1e-14));

    // projective space keeps the odd levels with full weight l^2
    double odd_sum = 0.0;
    for (int l = 199; l >= 1; l -= 2) odd_sum += l * l * std::exp(-double(l));
    CHECK(homogeneous_k(LensSpec(2), cplx(1.0, 0.0)).real() ==
          doctest::Approx(odd_sum).epsilon(1e-12));
}

TEST_CASE("odd parity of every cylinder kernel") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ux(0.2, 2.0);
    std::uniform_real_distribution<double> uy(-0.4, 0.4);
    GeneralLensSpec gen(5, 1, 2);
    HigherLensSpec hig(3, {1, 1, 2});
    for (int i = 0; i < 50; ++i) {
        cplx tau(ux(rng), uy(rng));
        cplx k1 = homogeneous_k(LensSpec(4, 1.0), tau);
        CHECK(std::abs(k1 + homogeneous_k(LensSpec(4, 1.0), -tau)) <= 1e-10 * std::abs(k1));
        cplx k2 = general_k(gen, tau);
        CHECK(std::abs(k2 + general_k(gen, -tau)) <= 1e-10 * std::abs(k2));
        cplx k3 = higher_k(hig, tau);
        CHECK(std::abs(k3 + higher_k(hig, -tau)) <= 1e-10 * std::abs(k3));
    }
}

TEST_CASE("K is the negative derivative of H") {
    const double h = 1e-4;
    for (double q : {1.0, 3.0, 6.0}) {
        for (double r : {0.0, 1.0}) {
            if (r >= q) continue;
            for (double t : {0.5, 1.0, 2.0}) {
                cplx tau(t, 0.0);
                cplx k = homogeneous_k(q, r, tau);
                cplx diff = -(homogeneous_h(q, r, tau + h) - homogeneous_h(q, r, tau - h)) /
                            (2.0 * h);
                CHECK(std::abs(k - diff) <= 1e-6 * std::max(1.0, std::abs(k)));
            }
        }
    }
}

TEST_CASE("K' is the derivative of K") {
    const double h = 1e-4;
    for (double t : {0.3, 1.0, 2.5}) {
        cplx tau(t, 0.0);
        cplx diff = (homogeneous_k(4.0, 1.0, tau + h) - homogeneous_k(4.0, 1.0, tau - h)) /
                    (2.0 * h);
        CHECK(std::abs(homogeneous_k_prime(4.0, 1.0, tau) - diff) <=
              1e-5 * std::max(1.0, std::abs(diff)));
    }
}

TEST_CASE("small-tau behavior K q tau^3 -> 2") {
    for (int q : {1, 2, 5}) {
        for (double t : {1e-3, 1e-4}) {
            double v = homogeneous_k(LensSpec(q), cplx(t, 0.0)).real() * q * t * t * t;
            CHECK(v == doctest::Approx(2.0).epsilon(1e-5));
        }
    }
}

TEST_CASE("Laurent series joins the closed form and the mode sum") {
    // tau = 0.005 takes the series path; the exact coefficient sum converges
    // there too, slowly but surely
    LensSpec spec(3);
    double tau = 0.005;
    cplx ref = h_by_series(spec, cplx(tau, 0.0), 12000);
    CHECK(std::abs(homogeneous_h(spec, cplx(tau, 0.0)) - ref) <= 1e-11 * std::abs(ref));
    cplx refk = k_by_series(spec, cplx(tau, 0.0), 12000);
    CHECK(std::abs(homogeneous_k(spec, cplx(tau, 0.0)) - refk) <= 1e-11 * std::abs(refk));

    // both sides of the switch radius agree with the mode sum
    for (double t : {0.00999, 0.01001}) {
        cplx r = h_by_series(spec, cplx(t, 0.0), 12000);
        CHECK(std::abs(homogeneous_h(spec, cplx(t, 0.0)) - r) <= 1e-11 * std::abs(r));
    }
}

TEST_CASE("subtracted kernel") {
    // q = 2: Hbar = 3 e^-3t + 5 e^-5t + ...
    LensSpec spec(2);
    auto d = degeneracy_coefficients(spec, 12000);
    for (double t : {0.005, 0.3, 1.2, 3.0, 8.0}) {
        double ref = 0.0;
        for (int l = 12000; l >= 2; --l) ref += d[l - 1] * std::exp(-l * t);
        double got = homogeneous_h_subtracted(2.0, 0.0, t);
        CHECK(got == doctest::Approx(ref).epsilon(1e-11));
    }
}

TEST_CASE("general kernel reductions") {
    // q = 1 is the full sphere
    cplx tau(1.0, 0.0);
    CHECK(std::abs(general_k(GeneralLensSpec(1, 1, 1), tau) - homogeneous_k(LensSpec(1), tau)) <=
          1e-13);

    // nu = (1,1) is the one-sided space
    cplx tau2(0.8, 0.3);
    cplx a = general_k(GeneralLensSpec(5, 1, 1), tau2);
    cplx b = homogeneous_k(LensSpec(5), tau2);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));

    // a genuinely two-sided case against the exact coefficient sum
    GeneralLensSpec spec(5, 1, 2);
    auto D = degeneracies_oracle(spec, 200);
    cplx ref = 0.0;
    for (int l = 200; l >= 1; --l) ref += static_cast<double>(D[l - 1]) * std::exp(-1.2 * l);
    CHECK(std::abs(general_k(spec, cplx(1.2, 0.0)) - ref) <= 1e-10 * std::abs(ref));
}

TEST_CASE("normalization invariance of the two-sided kernel") {
    GeneralLensSpec raw(7, 3, 4);
    GeneralLensSpec norm = raw.normalized();
    CHECK(norm.nu1 == 1);
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> ux(0.3, 2.0);
    std::uniform_real_distribution<double> uy(-0.3, 0.3);
    for (int i = 0; i < 10; ++i) {
        cplx tau(ux(rng), uy(rng));
        cplx a = general_k(raw, tau);
        cplx b = general_k(norm, tau);
        CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("higher kernel") {
    // e = 2 is the two-sided kernel
    GeneralLensSpec g(7, 1, 3);
    HigherLensSpec h2(7, {1, 3});
    cplx tau(0.9, 0.0);
    CHECK(higher_k(h2, tau) == general_k(g, tau));

    // e = 3, q = 1: the S^5 coefficients are nonnegative
    auto coef = degeneracy_coefficients(HigherLensSpec(1, {0, 0, 0}), 30);
    for (auto c : coef) CHECK(c >= 0);

    CHECK_THROWS_AS(HigherLensSpec(3, {1}), std::invalid_argument);
}

TEST_CASE("degeneracy oracle examples") {
    for (int q : {1, 3, 7}) CHECK(degeneracies_oracle(LensSpec(q), 1)[0] == 1);

    auto full = degeneracies_oracle(LensSpec(1), 20);
    for (int l = 1; l <= 20; ++l) CHECK(full[l - 1] == l);

    auto proj = degeneracies_oracle(LensSpec(2), 5);
    CHECK(proj == std::vector<long long>{1, 0, 3, 0, 5});
}

TEST_CASE("generating function matches the character oracle") {
    for (int q = 1; q <= 8; ++q) {
        std::vector<long long> sum(30, 0);
        for (int r = 0; r < q; ++r) {
            LensSpec spec(q, r);
            auto a = degeneracy_coefficients(spec, 30);
            auto b = degeneracies_oracle(spec, 30);
            CHECK(a == b);
            for (int l = 0; l < 30; ++l) sum[l] += a[l];
        }
        // twist sum rule: summing over all twists recovers the full sphere
        for (int l = 1; l <= 30; ++l) CHECK(sum[l - 1] == l);
    }
    for (int q : {5, 7}) {
        for (int nu = 1; nu < q; ++nu) {
            GeneralLensSpec spec(q, 1, nu);
            CHECK(degeneracy_coefficients(spec, 30) == degeneracies_oracle(spec, 30));
        }
    }
}

TEST_CASE("pole gaps") {
    CHECK(pole_gap(LensSpec(4)) == doctest::Approx(pi / 2));
    CHECK(pole_gap(LensSpec(1)) == doctest::Approx(pi));
    CHECK(pole_gap(GeneralLensSpec(5, 1, 2)) == doctest::Approx(2 * pi / 5));
    CHECK(pole_gap(GeneralLensSpec(2, 1, 1)) == doctest::Approx(pi));
    CHECK(pole_gap(HigherLensSpec(3, {1, 1, 2})) == doctest::Approx(2 * pi / 3));
}

TEST_CASE("pole proximity is detected") {
    CHECK_THROWS_AS(homogeneous_h(LensSpec(3), cplx(0.0, 2.0 * pi / 3) + cplx(1e-10, 0.0)),
                    PoleProximityError);
    CHECK_THROWS_AS(homogeneous_k(LensSpec(1), cplx(1e-10, 0.0)), PoleProximityError);
    CHECK_THROWS_AS(general_k(GeneralLensSpec(5, 1, 2), cplx(1e-10, 2.0 * pi / 5)),
                    PoleProximityError);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(LensSpec(0), std::invalid_argument);
    CHECK_THROWS_AS(LensSpec(4, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(LensSpec(4, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(GeneralLensSpec(6, 1, 2), std::invalid_argument);  // gcd(2,6) != 1
    CHECK_THROWS_AS(degeneracies_oracle(LensSpec(4, 0.5), 10), std::invalid_argument);
    CHECK(LensSpec(4, 1.0).twist_index() == 1);
    CHECK(LensSpec(4, 1.0).delta() == doctest::Approx(-0.25));
}

TEST_CASE("first occupied levels") {
    CHECK(first_level_at_least(LensSpec(1), 2) == 2);
    CHECK(first_level_at_least(LensSpec(2), 2) == 3);
    CHECK(first_level_at_least(LensSpec(5), 2) == 3);
    CHECK(first_level_at_least(LensSpec(4, 2.0), 1) == 3);
}
