#pragma once

// Mass/coupling parameter of the scalar Laplacian.  Eigenvalues are
// l^2 - alpha^2, l = 1, 2, ...; alpha^2 = 0 is conformal in four
// dimensions, 1/4 conformal in three, 1 minimal (one zero mode), and
// alpha^2 = -m^2 an imaginary mass.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace lensdet {

class Coupling {
public:
    static Coupling conformal4() { return Coupling(0.0); }
    static Coupling conformal3() { return Coupling(0.25); }
    static Coupling minimal() { return Coupling(1.0); }
    static Coupling mass(double mu) { return Coupling(0.25 - mu * mu); }
    static Coupling imaginary_mass(double m) { return Coupling(-m * m); }
    static Coupling alpha_squared(double a2) { return Coupling(a2); }

    double alpha_sq() const { return alpha_sq_; }
    bool is_minimal() const { return alpha_sq_ == 1.0; }

    // Contour-based continuations need every eigenvalue l^2 - alpha^2
    // strictly positive.
    void require_contour() const {
        if (alpha_sq_ >= 1.0)
            throw std::invalid_argument(
                "coupling: alpha^2 >= 1 reaches the zero-mode regime; only the "
                "subtracted (minimal) pipeline applies there");
    }

    // cosh(alpha tau), evaluated as cos(m tau) when alpha^2 = -m^2 < 0.
    std::complex<double> cosh_alpha_tau(std::complex<double> tau) const {
        if (alpha_sq_ >= 0.0) return std::cosh(std::sqrt(alpha_sq_) * tau);
        return std::cos(std::sqrt(-alpha_sq_) * tau);
    }

    std::string describe() const;

private:
    explicit Coupling(double a2) : alpha_sq_(a2) {}
    double alpha_sq_;
};

inline std::string Coupling::describe() const {
    if (alpha_sq_ == 0.0) return "conformal4";
    if (alpha_sq_ == 0.25) return "conformal3";
    if (alpha_sq_ == 1.0) return "minimal";
    return "alpha2=" + std::to_string(alpha_sq_);
}

}  // namespace lensdet
