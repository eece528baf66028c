#include "lensdet/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "lensdet/detcore.hpp"
#include "lensdet/polyhedral.hpp"
#include "lensdet/thermo.hpp"

namespace lensdet {

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " FAIL[" << what << "]";
        }
    }
    void note(const std::string& s) { detail << " " << s; }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(9);
    os << v;
    return os.str();
}

// Shared cache of cyclic Z'(0) values across criteria.
class Context {
public:
    double zp(int q, int r, const Coupling& c) {
        auto key = std::make_tuple(q, r, c.alpha_sq());
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        double v = zprime0(LensSpec(q, r), c).value;
        cache_[key] = v;
        return v;
    }

    double rep_value(const PolyhedralGroup& g, const std::string& rep, const Coupling& c) {
        double acc = 0.0;
        for (const auto& b : decompose(g, RepLabel::parse(rep)).blocks)
            acc += b.coefficient *
                   zp(b.cyclic_order, ((b.twist % b.cyclic_order) + b.cyclic_order) % b.cyclic_order, c);
        return acc;
    }

private:
    std::map<std::tuple<int, int, double>, double> cache_;
};

// --- A1: untwisted polyhedral determinants ----------------------------------

CriterionResult a1(Context& ctx) {
    Check ck;
    const char* names[3] = {"T", "O", "I"};
    const double published[2][3] = {{0.159259, 0.099650, 0.055743},    // conformal3
                                    {0.202089, 0.128776, 0.073056}};   // conformal4
    const Coupling couplings[2] = {Coupling::conformal3(), Coupling::conformal4()};
    for (int ci = 0; ci < 2; ++ci) {
        for (int gi = 0; gi < 3; ++gi) {
            auto g = PolyhedralGroup::from_name(names[gi]);
            double det = std::exp(-ctx.rep_value(g, "1", couplings[ci]));
            ck.expect(std::abs(det - published[ci][gi]) <= 5e-6,
                      std::string(names[gi]) + (ci ? "/c4" : "/c3"));
            ck.note(std::string(names[gi]) + (ci ? "/c4=" : "/c3=") + fmt(det));
        }
    }
    return {"A1", ck.ok, "untwisted dets vs published (abs tol 5e-6):" + ck.detail.str()};
}

// --- A2: large-mass Weyl asymptote Z'(0, q, im) -> pi m^3 / 3q ---------------

CriterionResult a2(Context&) {
    Check ck;
    const int qs[3] = {1, 2, 3};
    const double ms[3] = {10.0, 10.0, 8.0};
    const double tols[3] = {1e-4, 1e-4, 1e-3};
    for (int i = 0; i < 3; ++i) {
        double v = zprime0(LensSpec(qs[i]), Coupling::imaginary_mass(ms[i])).value;
        double ratio = v * 3.0 * qs[i] / (kPi * ms[i] * ms[i] * ms[i]);
        ck.expect(std::abs(ratio - 1.0) <= tols[i],
                  "q=" + std::to_string(qs[i]) + ",m=" + fmt(ms[i]));
        ck.note("q=" + std::to_string(qs[i]) + " ratio=" + fmt(ratio));
    }
    return {"A2", ck.ok, "Weyl asymptote ratios:" + ck.detail.str()};
}

// --- A3: minimal coupling on projective space --------------------------------

CriterionResult a3(Context&) {
    Check ck;
    double p3 = minimal_logdet(LensSpec(2)).value;
    ck.expect(std::abs(p3 - (-0.695171)) <= 1e-5, "published value");
    double s3_minimal = minimal_logdet(LensSpec(1)).value;
    double s3_conf3 = zprime0(LensSpec(1), Coupling::conformal3()).value;
    double cross = s3_minimal - 4.0 * s3_conf3;
    ck.expect(std::abs(p3 - cross) <= 1e-7, "sphere cross-check");
    ck.note("Zbar'(0,2,1)=" + fmt(p3) + " cross=" + fmt(cross));
    return {"A3", ck.ok, "minimal coupling:" + ck.detail.str()};
}

// --- A4: twisted polyhedral determinants under one global kappa --------------

CriterionResult a4(Context& ctx) {
    Check ck;
    auto I = PolyhedralGroup::from_name("I");
    const Coupling c3 = Coupling::conformal3();
    const Coupling c4 = Coupling::conformal4();

    // canonical block sums of the twisted reps
    double s2s_c3[3], s2s_c4[3];
    const char* names[3] = {"T", "O", "I"};
    for (int gi = 0; gi < 3; ++gi) {
        auto g = PolyhedralGroup::from_name(names[gi]);
        s2s_c3[gi] = ctx.rep_value(g, "2s", c3);
        s2s_c4[gi] = ctx.rep_value(g, "2s", c4);
    }
    double s2sp = ctx.rep_value(I, "2sp", c4);
    double s3 = ctx.rep_value(I, "3", c4);
    double s3p = ctx.rep_value(I, "3p", c4);
    double det1_I = std::exp(-ctx.rep_value(I, "1", c4));

    const double pub2s_c3[3] = {0.652112, 0.439366, 0.260126};
    const double pub2s_c4[3] = {0.663348, 0.454594, 0.272797};
    const double pub3 = 0.164545, pub3p = 2.00091;

    // relative tolerance 1e-3, widened to half a unit in the last printed
    // digit where that is coarser (0.000391 carries only 3 s.f.)
    auto match = [](double computed, double published, double print_ulp) {
        double tol = std::max(1e-3 * published, 0.51 * print_ulp);
        return std::abs(computed - published) <= tol;
    };

    auto tally = [&](double kappa, std::vector<std::string>& misses) {
        int hits = 0;
        auto check = [&](double computed, double published, double ulp, const std::string& tag) {
            if (match(computed, published, ulp)) {
                ++hits;
            } else {
                misses.push_back(tag + " computed=" + fmt(computed) + " published=" +
                                 fmt(published));
            }
        };
        for (int gi = 0; gi < 3; ++gi) {
            check(std::exp(-kappa * s2s_c3[gi]), pub2s_c3[gi], 1e-6,
                  std::string("2s/") + names[gi] + "/c3");
            check(std::exp(-kappa * s2s_c4[gi]), pub2s_c4[gi], 1e-6,
                  std::string("2s/") + names[gi] + "/c4");
        }
        check(det1_I * std::exp(-kappa * s2s_c4[2]), 0.019929, 1e-6, "1+2s");
        check(det1_I * std::exp(-kappa * s2sp), 0.021993, 1e-6, "1+2sp");
        check(det1_I * det1_I * det1_I, 0.000391, 1e-6, "1+1+1");
        check(std::exp(-kappa * s3), pub3, 1e-6, "3");
        check(std::exp(-kappa * s3p), pub3p, 1e-5, "3p");
        return hits;
    };

    int best_hits = -1;
    double best_kappa = 0.0;
    std::vector<std::string> best_misses;
    for (double kappa : {0.5, 1.0, 2.0}) {
        std::vector<std::string> misses;
        int hits = tally(kappa, misses);
        if (hits > best_hits) {
            best_hits = hits;
            best_kappa = kappa;
            best_misses = misses;
        }
    }
    ck.expect(best_hits == 11, "all eleven at one kappa");
    ck.note("determined kappa=" + fmt(best_kappa) + " matching " + std::to_string(best_hits) +
            "/11");
    for (const auto& m : best_misses) ck.note("[" + m + "]");
    if (best_hits != 11)
        ck.note("(mismatched reference entries are inconsistent with their own source's "
                "det(1) and cyclic relations; see README, Known discrepancies)");

    // direct-sum multiplicativity, independent of kappa
    double sum = ctx.rep_value(I, "1", c4) + ctx.rep_value(I, "2s", c4);
    double combined = evaluate(I, RepLabel::parse("1+2s"), Quantity::ZPrime0, c4).value;
    ck.expect(std::abs(std::exp(-combined) / (std::exp(-sum)) - 1.0) <= 1e-4,
              "det(1+2s) = det(1) det(2s)");
    return {"A4", ck.ok, "twisted dets:" + ck.detail.str()};
}

// --- A5: Z(1) quadrature vs even-order closed form ----------------------------

CriterionResult a5(Context&) {
    Check ck;
    for (int two_q : {2, 4, 6, 8, 10, 12}) {
        double quad = z_at_1(LensSpec(two_q), Coupling::conformal4()).value;
        double closed = z1_closed_form_even(two_q);
        ck.expect(std::abs(quad - closed) <= 1e-9, "2q=" + std::to_string(two_q));
        if (two_q == 2) ck.expect(std::abs(quad) <= 1e-9, "Z(1,2,0)=0");
    }
    ck.note("max order checked 2q=12");
    return {"A5", ck.ok, "Z(1) closed form (tol 1e-9):" + ck.detail.str()};
}

// --- A6: zero-mode identity Zbar'(0) = Z'(0) + ln(1 - alpha^2) ---------------

CriterionResult a6(Context&) {
    Check ck;
    for (int q : {1, 2, 5}) {
        for (double alpha : {0.3, 0.6}) {
            double bar = zbar_prime0(LensSpec(q), alpha).value;
            double direct = zprime0(LensSpec(q), Coupling::alpha_squared(alpha * alpha)).value +
                            std::log(1.0 - alpha * alpha);
            ck.expect(std::abs(bar - direct) <= 1e-8,
                      "q=" + std::to_string(q) + ",a=" + fmt(alpha));
        }
    }
    return {"A6", ck.ok, "zero-mode identity (tol 1e-8):" + ck.detail.str()};
}

// --- A7: exact degeneracy suite ----------------------------------------------

CriterionResult a7(Context&) {
    Check ck;
    const int l_max = 30;
    for (int q = 1; q <= 12 && ck.ok; ++q) {
        std::vector<long long> row_sum(l_max, 0);
        for (int r = 0; r < q; ++r) {
            LensSpec spec(q, r);
            auto a = degeneracy_coefficients(spec, l_max);
            auto b = degeneracies_oracle(spec, l_max);
            ck.expect(a == b, "hom q=" + std::to_string(q) + " r=" + std::to_string(r));
            for (int l = 0; l < l_max; ++l) row_sum[l] += a[l];
        }
        for (int l = 1; l <= l_max; ++l)
            ck.expect(row_sum[l - 1] == l, "twist sum rule q=" + std::to_string(q));
    }
    for (int q : {5, 7, 29}) {
        for (int nu = 1; nu < q && ck.ok; ++nu) {
            GeneralLensSpec spec(q, 1, nu);
            ck.expect(degeneracy_coefficients(spec, l_max) == degeneracies_oracle(spec, l_max),
                      "gen q=" + std::to_string(q) + " nu=" + std::to_string(nu));
        }
    }
    return {"A7", ck.ok, "generating function == character oracle, l<=30:" + ck.detail.str()};
}

// --- A8: contour robustness ---------------------------------------------------

CriterionResult a8(Context&) {
    Check ck;

    auto delta_indep = [&](auto spec, const Coupling& c, const std::string& tag) {
        double gap = pole_gap(spec);
        std::vector<SpectralResult> rs;
        for (double f : {0.25, 0.5, 0.75}) {
            ContourLine L = default_line(spec, c);
            L.delta = f * gap;
            rs.push_back(zprime0(spec, c, L));
        }
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = i + 1; j < rs.size(); ++j)
                ck.expect(std::abs(rs[i].value - rs[j].value) <=
                              10.0 * (rs[i].abs_error_estimate + rs[j].abs_error_estimate),
                          tag + " delta independence");
    };
    delta_indep(LensSpec(4, 1.0), Coupling::conformal3(), "homogeneous");
    delta_indep(GeneralLensSpec(5, 1, 2), Coupling::conformal4(), "general");
    delta_indep(HigherLensSpec(3, {1, 1, 2}), Coupling::conformal4(), "higher");

    // lens-space isomorphisms at q = 29
    std::vector<SpectralResult> z(29);
    for (int nu = 1; nu <= 28; ++nu)
        z[nu] = zprime0(GeneralLensSpec(29, 1, nu), Coupling::conformal4());
    for (int nu = 1; nu <= 28; ++nu) {
        int mirror = 29 - nu;
        int inverse = mod_inverse(nu, 29);
        ck.expect(std::abs(z[nu].value - z[mirror].value) <=
                      2.0 * (z[nu].abs_error_estimate + z[mirror].abs_error_estimate),
                  "nu<->29-nu at nu=" + std::to_string(nu));
        ck.expect(std::abs(z[nu].value - z[inverse].value) <=
                      2.0 * (z[nu].abs_error_estimate + z[inverse].abs_error_estimate),
                  "nu<->nu^-1 at nu=" + std::to_string(nu));
    }
    return {"A8", ck.ok, "delta independence + q=29 isomorphisms:" + ck.detail.str()};
}

// --- A9: thermodynamics --------------------------------------------------------

CriterionResult a9(Context&) {
    Check ck;

    Rational e0 = casimir_energy_rational(1, Rational{1, 2});
    ck.expect(e0.num == 1 && e0.den == 120, "E0(1,1/2) == 1/120");

    for (int q : {1, 2}) {
        ThermoState st;
        st.beta = 0.05;
        double f = free_energy(LensSpec(q), st);
        double target = -kPi * kPi * kPi * kPi / (45.0 * q);
        ck.expect(std::abs(f * std::pow(st.beta, 4) / target - 1.0) <= 0.02,
                  "F beta^4 at q=" + std::to_string(q));
    }

    for (int q : {1, 2, 4}) {
        LensSpec spec(q, q == 4 ? 1.0 : 0.0);
        for (double beta : {0.3, 0.7, 1.5, 4.0}) {
            ThermoState st;
            st.beta = beta;
            auto pt = thermo_point_delta(spec.q, spec.delta(), st);
            double resid = pt.free_energy -
                           (pt.internal_energy - pt.entropy / beta);
            ck.expect(std::abs(resid) <= 1e-10, "F=E-TS at q=" + std::to_string(q) +
                                                    ",beta=" + fmt(beta));
        }
    }

    ThermoState cold;
    cold.beta = 50.0;
    cold.field_factor = 2;
    double f_cold = free_energy(LensSpec(1), cold);
    ck.expect(std::abs(f_cold - 2.0 * casimir_energy_real(1, -0.5)) <= 1e-12,
              "beta->inf limit");
    return {"A9", ck.ok, "thermodynamics:" + ck.detail.str()};
}

// --- A10: higher dimensions -----------------------------------------------------

CriterionResult a10(Context&) {
    Check ck;
    GeneralLensSpec g(7, 1, 3);
    HigherLensSpec h2(7, {1, 3});
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> ux(0.1, 2.5);
    double gap = pole_gap(g);
    std::uniform_real_distribution<double> uy(-0.8 * gap, 0.8 * gap);
    for (int i = 0; i < 20; ++i) {
        cplx tau(ux(rng), uy(rng));
        cplx a = higher_k(h2, tau);
        cplx b = general_k(g, tau);
        ck.expect(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(b)),
                  "e=2 reduction at sample " + std::to_string(i));
    }

    HigherLensSpec h3(3, {1, 1, 2});
    double gap3 = pole_gap(h3);
    std::vector<SpectralResult> rs;
    for (double f : {0.25, 0.5, 0.75}) {
        ContourLine L = default_line(h3, Coupling::conformal4());
        L.delta = f * gap3;
        rs.push_back(zprime0(h3, Coupling::conformal4(), L));
    }
    for (size_t i = 0; i < rs.size(); ++i) {
        ck.expect(std::isfinite(rs[i].value), "finite value");
        for (size_t j = i + 1; j < rs.size(); ++j)
            ck.expect(std::abs(rs[i].value - rs[j].value) <=
                          10.0 * (rs[i].abs_error_estimate + rs[j].abs_error_estimate),
                      "S^5 delta independence");
    }
    ck.note("Z'(0, e=3, q=3)=" + fmt(rs[1].value));
    return {"A10", ck.ok, "higher dimensions:" + ck.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& only) {
    using Runner = std::function<CriterionResult(Context&)>;
    const std::vector<std::pair<std::string, Runner>> table = {
        {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},  {"A5", a5},
        {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9},  {"A10", a10},
    };
    for (const auto& id : only) {
        bool known = std::any_of(table.begin(), table.end(),
                                 [&](const auto& e) { return e.first == id; });
        if (!known) throw std::invalid_argument("unknown criterion id: " + id);
    }
    Context ctx;
    std::vector<CriterionResult> out;
    for (const auto& [id, fn] : table) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        out.push_back(fn(ctx));
    }
    return out;
}

}  // namespace lensdet
