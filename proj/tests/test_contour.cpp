#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "lensdet/contour.hpp"

using namespace lensdet;
using std::numbers::pi;

namespace {
ContourLine line(double rho, double abs_tol = 1e-11, double rel_tol = 1e-10) {
    ContourLine L;
    L.decay_rate = rho;
    L.abs_tol = abs_tol;
    L.rel_tol = rel_tol;
    return L;
}
}  // namespace

TEST_CASE("elementary integrals") {
    auto r1 = integrate_semi_infinite([](double x) { return std::exp(-x); }, line(1.0));
    CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r1.converged);
    CHECK(r1.evaluations > 0);

    // the shifted-line exponential picks up cos(Delta)
    double d = 0.7;
    auto r2 = integrate_semi_infinite(
        [d](double x) { return (std::exp(-std::complex<double>(x, d))).real(); }, line(1.0));
    CHECK(r2.value == doctest::Approx(std::cos(d)).epsilon(1e-12));

    auto r3 = integrate_semi_infinite([](double x) { return x * std::exp(-2 * x); }, line(1.5));
    CHECK(r3.value == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("error estimates are honest on known integrals") {
    struct Known {
        std::function<double(double)> f;
        double exact;
        double rho;
    };
    const double sq = 0.3;
    std::vector<Known> battery = {
        {[](double x) { return std::exp(-x); }, 1.0, 1.0},
        {[](double x) { return x * std::exp(-2 * x); }, 0.25, 1.5},
        {[](double x) { return x * x * std::exp(-x); }, 2.0, 0.9},
        {[](double x) { return x * x * x * std::exp(-x); }, 6.0, 0.9},
        {[](double x) { return std::exp(-x) * std::cos(x); }, 0.5, 1.0},
        {[](double x) { return std::exp(-x) * std::cos(5 * x); }, 1.0 / 26.0, 1.0},
        {[](double x) { return std::exp(-x) * std::cos(20 * x); }, 1.0 / 401.0, 1.0},
        {[](double x) { return std::exp(-x) * std::sin(x); }, 0.5, 1.0},
        {[](double x) { return std::exp(-2 * x) * std::sin(3 * x); }, 3.0 / 13.0, 2.0},
        {[](double x) { return std::exp(-x * x); }, std::sqrt(pi) / 2.0, 1.0},
        {[sq](double x) { return std::exp(-x) * std::cosh(sq * x); }, 1.0 / (1.0 - sq * sq), 0.65},
        {[](double x) { return std::exp(-0.5 * x); }, 2.0, 0.5},
        {[](double x) { return (1.0 + x) * std::exp(-x); }, 2.0, 0.9},
        {[](double x) { return x * x * std::exp(-3 * x); }, 2.0 / 27.0, 3.0},
        {[](double x) { return std::cos(x) * std::exp(-2 * x); }, 0.4, 2.0},
        {[](double x) { return std::sin(10 * x) * std::exp(-0.8 * x); }, 10.0 / 100.64, 0.8},
        {[](double x) { return x * std::exp(-x) * std::sin(x); }, 0.5, 1.0},
        {[](double x) { return x * std::exp(-x) * std::cos(x); }, 0.0, 1.0},
        {[](double x) { return x * x * x * x * std::exp(-x); }, 24.0, 0.9},
        {[](double x) { return std::exp(-1.2 * x) * std::cos(2 * x); }, 1.2 / 5.44, 1.2},
    };
    CHECK(battery.size() == 20);
    for (size_t i = 0; i < battery.size(); ++i) {
        auto r = integrate_semi_infinite(battery[i].f, line(battery[i].rho));
        INFO("integral #", i);
        CHECK(r.converged);
        CHECK(std::abs(r.value - battery[i].exact) <= 5.0 * r.abs_error_estimate);
    }
}

TEST_CASE("bit-identical determinism") {
    auto f = [](double x) { return std::exp(-x) * std::cos(5 * x); };
    auto a = integrate_semi_infinite(f, line(1.0));
    auto b = integrate_semi_infinite(f, line(1.0));
    CHECK(a.value == b.value);
    CHECK(a.abs_error_estimate == b.abs_error_estimate);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("non-convergence is flagged, not hidden") {
    // far too few subdivisions for a 60000-period oscillation
    ContourLine L = line(0.01, 1e-13, 1e-13);
    L.max_evals = 2100;
    auto r = integrate_semi_infinite([](double x) { return std::cos(200 * x) * std::exp(-0.01 * x); },
                                     L);
    CHECK_FALSE(r.converged);
}

TEST_CASE("non-finite integrands are rejected") {
    CHECK_THROWS_AS(integrate_semi_infinite(
                        [](double x) { return x < 2.0 ? 1.0 : std::nan(""); }, line(1.0)),
                    PoleProximityError);
    CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 1.0; }, line(-1.0)),
                    std::invalid_argument);
}

TEST_CASE("default contour lines") {
    auto L1 = default_line(LensSpec(4), Coupling::conformal4());
    CHECK(L1.delta == doctest::Approx(pi / 4));
    CHECK(L1.decay_rate == doctest::Approx(1.0));

    auto L2 = default_line(LensSpec(1), Coupling::conformal3());
    CHECK(L2.decay_rate == doctest::Approx(0.5));

    auto L3 = default_line(LensSpec(1), Coupling::imaginary_mass(10.0));
    CHECK(L3.decay_rate == doctest::Approx(1.0));

    CHECK_THROWS_AS(default_line(LensSpec(1), Coupling::minimal()), std::invalid_argument);
    CHECK_THROWS_AS(default_line(LensSpec(1), Coupling::alpha_squared(1.5)),
                    std::invalid_argument);
}
