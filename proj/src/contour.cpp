#include "lensdet/contour.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

namespace lensdet {

namespace {

struct CountedIntegrand {
    const std::function<double(double)>* f;
    long evaluations = 0;
    bool saw_nonfinite = false;
};

double trampoline(double x, void* params) {
    auto* ci = static_cast<CountedIntegrand*>(params);
    ++ci->evaluations;
    double v = (*ci->f)(x);
    if (!std::isfinite(v)) {
        ci->saw_nonfinite = true;
        return 0.0;
    }
    return v;
}

void disable_gsl_abort() {
    static std::once_flag once;
    std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

}  // namespace

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& integrand,
                                         const ContourLine& line) {
    if (!(line.decay_rate > 0.0))
        throw std::invalid_argument("integrate_semi_infinite: decay_rate must be positive");
    if (!(line.abs_tol > 0.0) || !(line.rel_tol > 0.0))
        throw std::invalid_argument("integrate_semi_infinite: tolerances must be positive");
    disable_gsl_abort();

    const double rho = line.decay_rate;

    // Envelope constant for the tail bound, from samples of |f| e^{rho x}.
    double envelope = line.abs_tol;
    for (int i = 0; i <= 48; ++i) {
        double x = i / 3.0;
        double v = integrand(x);
        if (!std::isfinite(v))
            throw PoleProximityError(
                "integrate_semi_infinite: non-finite sample; reduce the contour offset");
        envelope = std::max(envelope, std::abs(v) * std::exp(rho * x));
    }
    envelope *= 50.0;

    double cut = std::log(2.0 * envelope / (rho * line.abs_tol)) / rho;
    cut = std::clamp(cut, 16.0, 2000.0);
    const double tail_bound = envelope * std::exp(-rho * cut) / rho;

    CountedIntegrand ci{&integrand};
    gsl_function f;
    f.function = &trampoline;
    f.params = &ci;

    const size_t limit = static_cast<size_t>(
        std::clamp(line.max_evals / 21, static_cast<long>(100), static_cast<long>(200000)));
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
        gsl_integration_workspace_alloc(limit));
    if (!ws) throw std::bad_alloc();

    double value = 0.0;
    double abserr = 0.0;
    int status = gsl_integration_qag(&f, 0.0, cut, 0.5 * line.abs_tol, line.rel_tol, limit,
                                     GSL_INTEG_GAUSS21, ws.get(), &value, &abserr);

    if (ci.saw_nonfinite || !std::isfinite(value))
        throw PoleProximityError(
            "integrate_semi_infinite: non-finite integrand; reduce the contour offset");

    QuadratureResult result;
    result.value = value;
    result.abs_error_estimate = abserr + tail_bound;
    result.evaluations = ci.evaluations;
    result.converged =
        (status == GSL_SUCCESS) ||
        result.abs_error_estimate <=
            10.0 * std::max(line.abs_tol, line.rel_tol * std::abs(value));
    return result;
}

ContourLine default_line(double pole_gap, const Coupling& coupling) {
    coupling.require_contour();
    ContourLine line;
    line.delta = 0.5 * pole_gap;
    double a2 = coupling.alpha_sq();
    line.decay_rate = (a2 >= 0.0) ? 1.0 - std::sqrt(a2) : 1.0;
    return line;
}

ContourLine default_line(const LensSpec& spec, const Coupling& coupling) {
    return default_line(pole_gap(spec), coupling);
}
ContourLine default_line(const GeneralLensSpec& spec, const Coupling& coupling) {
    return default_line(pole_gap(spec), coupling);
}
ContourLine default_line(const HigherLensSpec& spec, const Coupling& coupling) {
    return default_line(pole_gap(spec), coupling);
}

}  // namespace lensdet
