// lensdet — zeta-regularized determinants, zeta values, and finite-
// temperature thermodynamics on fixed-point-free quotients of odd spheres.
//
// Subcommands:
//   det      single-value queries and parameter sweeps (JSON/CSV)
//   figure   emit the data grid behind one of the standard figures (CSV)
//   verify   run the acceptance criteria suite

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lensdet/acceptance.hpp"
#include "lensdet/detcore.hpp"
#include "lensdet/polyhedral.hpp"
#include "lensdet/thermo.hpp"

using nlohmann::json;
using namespace lensdet;

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

// Deterministic parallel map: results land in input order.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

struct SweepSpec {
    std::string param;  // "q", "twist", "nu"
    double start = 0.0, stop = 0.0, step = 1.0;

    static SweepSpec parse(const std::string& text) {
        SweepSpec s;
        auto eq = text.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--sweep", "expected name=a:b[:step]");
        s.param = text.substr(0, eq);
        if (s.param != "q" && s.param != "twist" && s.param != "nu")
            throw CLI::ValidationError("--sweep", "parameter must be q, twist or nu");
        std::string rest = text.substr(eq + 1);
        std::replace(rest.begin(), rest.end(), ':', ' ');
        std::istringstream is(rest);
        if (!(is >> s.start >> s.stop)) throw CLI::ValidationError("--sweep", "bad range");
        if (!(is >> s.step)) s.step = 1.0;
        if (!(s.step > 0.0) || s.stop < s.start) throw CLI::ValidationError("--sweep", "bad range");
        return s;
    }

    std::vector<double> values() const {
        std::vector<double> v;
        for (double x = start; x <= stop + 1e-12; x += step) v.push_back(x);
        return v;
    }
};

struct DetOptions {
    int q = 1;
    double twist = 0.0;
    std::vector<int> nu;
    int e = 0;
    std::string poly, rep = "1";
    std::string coupling_name;
    double alpha2 = std::numeric_limits<double>::quiet_NaN();
    double mass_mu = std::numeric_limits<double>::quiet_NaN();
    std::string field = "real";
    double delta_override = std::numeric_limits<double>::quiet_NaN();
    double abs_tol = 1e-11, rel_tol = 1e-10;
    std::string quantity = "logdet";
    std::string format = "json";
    std::string out;
    std::string sweep;
    int jobs = 1;

    Coupling coupling() const {
        if (!coupling_name.empty()) {
            if (coupling_name == "conformal3") return Coupling::conformal3();
            if (coupling_name == "conformal4") return Coupling::conformal4();
            if (coupling_name == "minimal") return Coupling::minimal();
            throw CLI::ValidationError("--coupling", "unknown coupling " + coupling_name);
        }
        if (!std::isnan(alpha2)) return Coupling::alpha_squared(alpha2);
        if (!std::isnan(mass_mu)) return Coupling::mass(mass_mu);
        return Coupling::conformal4();
    }

    std::optional<ContourLine> line_for(double gap, const Coupling& c) const {
        ContourLine L = default_line(gap, c);
        if (!std::isnan(delta_override)) L.delta = delta_override;
        L.abs_tol = abs_tol;
        L.rel_tol = rel_tol;
        return L;
    }
    int field_factor() const { return field == "complex" ? 2 : 1; }
};

SpectralResult compute_point(const DetOptions& opt, const Coupling& c) {
    if (!opt.poly.empty()) {
        auto g = PolyhedralGroup::from_name(opt.poly);
        return evaluate(g, RepLabel::parse(opt.rep), Quantity::ZPrime0, c);
    }
    if (!opt.nu.empty() && (opt.e > 2 || opt.nu.size() > 2)) {
        HigherLensSpec spec(opt.q, opt.nu);
        if (opt.e && opt.e != spec.e())
            throw CLI::ValidationError("--e", "does not match the number of --nu entries");
        return zprime0(spec, c, opt.line_for(pole_gap(spec), c));
    }
    if (opt.nu.size() == 2) {
        GeneralLensSpec spec(opt.q, opt.nu[0], opt.nu[1]);
        return zprime0(spec, c, opt.line_for(pole_gap(spec), c));
    }
    LensSpec spec(opt.q, opt.twist);
    if (c.is_minimal()) return minimal_logdet(spec);
    return zprime0(spec, c, opt.line_for(pole_gap(spec), c));
}

json spec_echo_json(const DetOptions& opt) {
    json j;
    if (!opt.poly.empty()) {
        j["family"] = "polyhedral";
        j["group"] = opt.poly;
        j["rep"] = opt.rep;
    } else if (opt.nu.size() > 2) {
        j["family"] = "higher";
        j["q"] = opt.q;
        j["nu"] = opt.nu;
    } else if (opt.nu.size() == 2) {
        j["family"] = "general";
        j["q"] = opt.q;
        j["nu"] = opt.nu;
    } else {
        j["family"] = "homogeneous";
        j["q"] = opt.q;
        j["twist"] = opt.twist;
    }
    return j;
}

// Requested quantity for a real-scalar result; the complex-field factor of
// two is applied here and only here.
std::pair<double, double> present(const SpectralResult& r, const std::string& quantity,
                                  int field_factor) {
    double z = field_factor * r.value;
    double err = field_factor * r.abs_error_estimate;
    if (quantity == "zprime0") return {z, err};
    if (quantity == "logdet") return {-z, err};
    return {std::exp(-z), std::exp(-z) * err};  // det
}

int run_det(const DetOptions& opt) {
    Coupling c = opt.coupling();

    if (!opt.sweep.empty()) {
        SweepSpec sw = SweepSpec::parse(opt.sweep);
        auto values = sw.values();
        std::vector<std::string> rows(values.size());
        std::atomic<bool> all_converged{true};
        parallel_for(values.size(), opt.jobs, [&](std::size_t i) {
            SpectralResult r;
            if (sw.param == "q") {
                double qv = values[i];
                r = c.is_minimal() ? zbar_prime0_homogeneous(qv, 1.0)
                                   : zprime0_homogeneous(qv, opt.twist, c);
            } else if (sw.param == "twist") {
                double rv = std::fmod(values[i], static_cast<double>(opt.q));
                r = zprime0_homogeneous(opt.q, rv, c);
            } else {  // nu
                GeneralLensSpec spec(opt.q, 1, static_cast<int>(std::lround(values[i])));
                r = zprime0(spec, c, opt.line_for(pole_gap(spec), c));
            }
            auto [v, err] = present(r, opt.quantity, opt.field_factor());
            rows[i] = num(values[i]) + "," + num(v) + "," + num(err) + "\n";
            if (!r.converged) all_converged = false;
        });
        std::string text = "param,value,error\n";
        for (const auto& row : rows) text += row;
        write_text(opt.out, text);
        return all_converged ? 0 : 1;
    }

    SpectralResult r = compute_point(opt, c);
    auto [v, err] = present(r, opt.quantity, opt.field_factor());

    if (opt.format == "csv") {
        write_text(opt.out, "value,error\n" + num(v) + "," + num(err) + "\n");
    } else {
        json j;
        j["schema_version"] = 1;
        j["quantity"] = opt.quantity;
        j["value"] = v;
        j["zprime0"] = opt.field_factor() * r.value;
        j["logdet"] = -opt.field_factor() * r.value;
        j["det"] = std::exp(-opt.field_factor() * r.value);
        j["abs_error_estimate"] = err;
        j["convention"] = {{"field", opt.field == "complex" ? "complex" : "real-scalar"},
                           {"normalization", r.convention.normalization}};
        j["spec"] = spec_echo_json(opt);
        j["coupling"] = {{"name", c.describe()}, {"alpha_sq", c.alpha_sq()}};
        j["formula_extended"] = r.formula_extended;
        j["converged"] = r.converged;
        write_text(opt.out, j.dump(2) + "\n");
    }
    return r.converged ? 0 : 1;
}

// --- figures -----------------------------------------------------------------

struct FigureOptions {
    int n = 1;
    std::string out;
    int jobs = 1;
};

std::string emit_figure(const FigureOptions& fig) {
    std::ostringstream os;
    auto grid = [](double a, double b, double step) {
        std::vector<double> v;
        for (double x = a; x <= b + 1e-12; x += step) v.push_back(x);
        return v;
    };

    switch (fig.n) {
        case 1: {  // logdet vs continuous q at the two conformal couplings
            os << "q,alpha2,value,error\n";
            auto qs = grid(1.0, 8.0, 0.1);
            std::vector<std::string> rows(qs.size() * 2);
            parallel_for(rows.size(), fig.jobs, [&](std::size_t i) {
                double a2 = (i % 2 == 0) ? 0.0 : 0.25;
                double qv = qs[i / 2];
                auto r = zprime0_homogeneous(qv, 0.0, Coupling::alpha_squared(a2));
                rows[i] = num(qv) + "," + num(a2) + "," + num(-r.value) + "," +
                          num(r.abs_error_estimate) + "\n";
            });
            for (auto& s : rows) os << s;
            break;
        }
        case 2: {  // logdet vs mass mu for q = 1, 2, 3
            os << "q,mu,value,error\n";
            auto mus = grid(0.0, 6.0, 0.1);
            std::vector<std::string> rows(3 * mus.size());
            parallel_for(rows.size(), fig.jobs, [&](std::size_t i) {
                int q = static_cast<int>(i / mus.size()) + 1;
                double mu = mus[i % mus.size()];
                auto r = zprime0(LensSpec(q), Coupling::mass(mu));
                rows[i] = num(q) + "," + num(mu) + "," + num(-r.value) + "," +
                          num(r.abs_error_estimate) + "\n";
            });
            for (auto& s : rows) os << s;
            break;
        }
        case 3: {  // complex-field effective action vs continuous twist, q = 4
            os << "r,value,error\n";
            auto rs = grid(0.0, 4.0 - 0.02, 0.02);
            std::vector<std::string> rows(rs.size());
            parallel_for(rows.size(), fig.jobs, [&](std::size_t i) {
                auto r = zprime0_homogeneous(4.0, rs[i], Coupling::conformal3());
                rows[i] =
                    num(rs[i]) + "," + num(r.value) + "," + num(r.abs_error_estimate) + "\n";
            });
            for (auto& s : rows) os << s;
            break;
        }
        case 4:    // complex-field free energy vs temperature, q = 1, 2, 3
        case 5: {  // same on the 4-lens for the integer twists
            os << (fig.n == 4 ? "q,T,value,error\n" : "r,T,value,error\n");
            auto temps = grid(0.05, 2.0, 0.05);
            int outer = fig.n == 4 ? 3 : 4;
            std::vector<std::string> rows(outer * temps.size());
            parallel_for(rows.size(), fig.jobs, [&](std::size_t i) {
                int k = static_cast<int>(i / temps.size());
                double T = temps[i % temps.size()];
                ThermoState st;
                st.beta = 1.0 / T;
                st.field_factor = 2;
                LensSpec spec = fig.n == 4 ? LensSpec(k + 1) : LensSpec(4, k);
                double f = free_energy(spec, st);
                rows[i] = num(fig.n == 4 ? k + 1 : k) + "," + num(T) + "," + num(f) + "," +
                          num(st.series_tol * std::abs(f)) + "\n";
            });
            for (auto& s : rows) os << s;
            break;
        }
        case 6: {  // logdet across the two-sided lens spaces L(29; 1, nu)
            os << "nu,value,error\n";
            std::vector<std::string> rows(28);
            parallel_for(rows.size(), fig.jobs, [&](std::size_t i) {
                GeneralLensSpec spec(29, 1, static_cast<int>(i) + 1);
                auto r = zprime0(spec, Coupling::conformal4());
                rows[i] = num(i + 1.0) + "," + num(-r.value) + "," +
                          num(r.abs_error_estimate) + "\n";
            });
            for (auto& s : rows) os << s;
            break;
        }
        case 7: {  // minimal vs conformal-in-4d logdet over continuous q
            os << "q,coupling,value,error\n";
            auto qs = grid(1.0, 8.0, 0.25);
            std::vector<std::string> rows(qs.size() * 2);
            parallel_for(rows.size(), fig.jobs, [&](std::size_t i) {
                double qv = qs[i / 2];
                if (i % 2 == 0) {
                    auto r = zbar_prime0_homogeneous(qv, 1.0);
                    rows[i] = num(qv) + ",minimal," + num(-r.value) + "," +
                              num(r.abs_error_estimate) + "\n";
                } else {
                    auto r = zprime0_homogeneous(qv, 0.0, Coupling::conformal4());
                    rows[i] = num(qv) + ",conformal4," + num(-r.value) + "," +
                              num(r.abs_error_estimate) + "\n";
                }
            });
            for (auto& s : rows) os << s;
            break;
        }
        default:
            throw CLI::ValidationError("figure", "figure number must be 1..7");
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zeta determinants and thermodynamics on odd-sphere quotients"};
    app.require_subcommand(1);

    DetOptions det;
    auto* cmd_det = app.add_subcommand("det", "evaluate a determinant / zeta derivative");
    cmd_det->add_option("--q", det.q, "cyclic order q");
    cmd_det->add_option("--twist", det.twist, "bundle twist r in [0, q)");
    cmd_det->add_option("--nu", det.nu, "rotation labels, e.g. --nu 1,7")->delimiter(',');
    cmd_det->add_option("--e", det.e, "half-dimension for higher quotients");
    cmd_det->add_option("--poly", det.poly, "polyhedral group T|O|I");
    cmd_det->add_option("--rep", det.rep, "flat-bundle rep label, e.g. 1, 2s, 1+2s, 3p");
    auto* oc =
        cmd_det->add_option("--coupling", det.coupling_name, "conformal3|conformal4|minimal");
    auto* oa = cmd_det->add_option("--alpha2", det.alpha2, "coupling alpha^2");
    auto* om = cmd_det->add_option("--mass", det.mass_mu, "mass mu (alpha^2 = 1/4 - mu^2)");
    oc->excludes(oa)->excludes(om);
    oa->excludes(om);
    cmd_det->add_option("--field", det.field, "real|complex (default real)")
        ->check(CLI::IsMember({"real", "complex"}));
    cmd_det->add_option("--delta", det.delta_override, "contour offset override");
    cmd_det->add_option("--abs-tol", det.abs_tol, "quadrature absolute tolerance");
    cmd_det->add_option("--rel-tol", det.rel_tol, "quadrature relative tolerance");
    cmd_det->add_option("--quantity", det.quantity, "logdet|det|zprime0 (default logdet)")
        ->check(CLI::IsMember({"logdet", "det", "zprime0"}));
    cmd_det->add_option("--format", det.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_det->add_option("--out", det.out, "output path (default stdout)");
    cmd_det->add_option("--sweep", det.sweep, "parameter sweep, e.g. q=1:8:0.25, nu=1:28");
    cmd_det->add_option("--jobs", det.jobs, "sweep parallelism");

    FigureOptions fig;
    auto* cmd_fig = app.add_subcommand("figure", "emit a figure data grid as CSV");
    cmd_fig->add_option("n", fig.n, "figure number 1..7")->required()->check(CLI::Range(1, 7));
    cmd_fig->add_option("--out", fig.out, "output path (default stdout)");
    cmd_fig->add_option("--jobs", fig.jobs, "grid parallelism");

    std::vector<std::string> only;
    auto* cmd_verify = app.add_subcommand("verify", "run the acceptance criteria");
    cmd_verify->add_option("--only", only, "run a single criterion, e.g. --only A3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_det->parsed()) return run_det(det);
        if (cmd_fig->parsed()) {
            std::cerr << "note: continuous-q grids evaluate the closed forms; non-integer q "
                         "has no quotient-space interpretation\n";
            write_text(fig.out, emit_figure(fig));
            return 0;
        }
        if (cmd_verify->parsed()) {
            bool ok = true;
            for (const auto& r : run_acceptance(only)) {
                std::printf("%-4s %s %s\n", r.id.c_str(), r.passed ? "PASS" : "FAIL",
                            r.detail.c_str());
                ok = ok && r.passed;
            }
            return ok ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const PoleProximityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
