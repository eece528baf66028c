#include "lensdet/polyhedral.hpp"

#include <cmath>
#include <sstream>

#include "lensdet/kernels.hpp"

namespace lensdet {

int PolyhedralGroup::n() const {
    switch (kind) {
        case PolyKind::Tetrahedral: return 3;
        case PolyKind::Octahedral: return 4;
        case PolyKind::Icosahedral: return 5;
    }
    throw std::logic_error("PolyhedralGroup: bad kind");
}

int PolyhedralGroup::order() const {
    switch (kind) {
        case PolyKind::Tetrahedral: return 24;
        case PolyKind::Octahedral: return 48;
        case PolyKind::Icosahedral: return 120;
    }
    throw std::logic_error("PolyhedralGroup: bad kind");
}

std::string PolyhedralGroup::name() const {
    switch (kind) {
        case PolyKind::Tetrahedral: return "T";
        case PolyKind::Octahedral: return "O";
        case PolyKind::Icosahedral: return "I";
    }
    return "?";
}

PolyhedralGroup PolyhedralGroup::from_name(const std::string& name) {
    if (name == "T") return {PolyKind::Tetrahedral};
    if (name == "O") return {PolyKind::Octahedral};
    if (name == "I") return {PolyKind::Icosahedral};
    throw std::invalid_argument("PolyhedralGroup: unknown group '" + name + "' (use T, O, I)");
}

int RepLabel::dimension() const {
    int d = 0;
    for (Irrep ir : parts) {
        switch (ir) {
            case Irrep::One: d += 1; break;
            case Irrep::TwoS:
            case Irrep::TwoSPrime: d += 2; break;
            case Irrep::Three:
            case Irrep::ThreePrime: d += 3; break;
        }
    }
    return d;
}

std::string RepLabel::name() const {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += "+";
        switch (parts[i]) {
            case Irrep::One: s += "1"; break;
            case Irrep::TwoS: s += "2s"; break;
            case Irrep::TwoSPrime: s += "2sp"; break;
            case Irrep::Three: s += "3"; break;
            case Irrep::ThreePrime: s += "3p"; break;
        }
    }
    return s;
}

RepLabel RepLabel::parse(const std::string& text) {
    RepLabel rep;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, '+')) {
        if (piece == "1") rep.parts.push_back(Irrep::One);
        else if (piece == "2s") rep.parts.push_back(Irrep::TwoS);
        else if (piece == "2sp" || piece == "2s'") rep.parts.push_back(Irrep::TwoSPrime);
        else if (piece == "3") rep.parts.push_back(Irrep::Three);
        else if (piece == "3p" || piece == "3'") rep.parts.push_back(Irrep::ThreePrime);
        else throw std::invalid_argument("RepLabel: unknown irrep '" + piece + "'");
    }
    if (rep.parts.empty()) throw std::invalid_argument("RepLabel: empty label");
    return rep;
}

namespace {

void append_irrep_blocks(std::vector<CyclicBlock>& out, const PolyhedralGroup& g, Irrep ir) {
    const int twoN = 2 * g.n();
    switch (ir) {
        case Irrep::One:
            out.insert(out.end(), {{0.5, 4, 0}, {0.5, 6, 0}, {0.5, twoN, 0}, {-0.5, 2, 0}});
            return;
        case Irrep::TwoS:
            out.insert(out.end(), {{0.5, 4, 1}, {0.5, 6, 1}, {0.5, twoN, 1}, {-0.5, 2, 1}});
            return;
        case Irrep::TwoSPrime:
            if (g.kind != PolyKind::Icosahedral) break;
            out.insert(out.end(), {{1.0, 6, 1}, {-0.5, 10, 5}, {-1.0, 10, 1}});
            return;
        case Irrep::ThreePrime:
            if (g.kind != PolyKind::Icosahedral) break;
            out.insert(out.end(), {{0.5, 4, 2}, {-1.0, 10, 2}});
            return;
        case Irrep::Three:
            if (g.kind != PolyKind::Icosahedral) break;
            out.insert(out.end(), {{0.5, 4, 2}, {-1.0, 10, 4}});
            return;
    }
    throw std::invalid_argument("decompose: irrep not available for group " + g.name());
}

LensSpec block_spec(const CyclicBlock& b) {
    int r = ((b.twist % b.cyclic_order) + b.cyclic_order) % b.cyclic_order;
    return LensSpec(b.cyclic_order, static_cast<double>(r));
}

}  // namespace

CyclicDecomposition decompose(const PolyhedralGroup& group, const RepLabel& rep) {
    CyclicDecomposition dec;
    for (Irrep ir : rep.parts) append_irrep_blocks(dec.blocks, group, ir);
    return dec;
}

std::vector<long long> decomposition_degeneracies(const CyclicDecomposition& dec, int l_max) {
    std::vector<double> acc(l_max, 0.0);
    for (const auto& b : dec.blocks) {
        auto d = degeneracy_coefficients(block_spec(b), l_max);
        for (int l = 1; l <= l_max; ++l) acc[l - 1] += b.coefficient * l * d[l - 1];
    }
    std::vector<long long> out(l_max);
    for (int l = 1; l <= l_max; ++l) {
        double v = acc[l - 1];
        double r = std::round(v);
        if (std::abs(v - r) > 1e-6 || r < -1e-6)
            throw std::runtime_error("decomposition_degeneracies: level " + std::to_string(l) +
                                     " is not a nonnegative integer");
        out[l - 1] = static_cast<long long>(r);
    }
    return out;
}

SpectralResult evaluate(const PolyhedralGroup& group, const RepLabel& rep, Quantity quantity,
                        const Coupling& coupling) {
    CyclicDecomposition dec = decompose(group, rep);
    SpectralResult out;
    out.quantity = quantity;
    out.spec_echo = "S^3/" + group.name() + "', rep " + rep.name() + ", " + coupling.describe();
    for (const auto& b : dec.blocks) {
        LensSpec spec = block_spec(b);
        SpectralResult r;
        switch (quantity) {
            case Quantity::ZPrime0: r = zprime0(spec, coupling); break;
            case Quantity::ZAt1: r = z_at_1(spec, coupling); break;
            default:
                throw std::invalid_argument("evaluate: unsupported spectral quantity");
        }
        out.value += b.coefficient * r.value;
        out.abs_error_estimate += std::abs(b.coefficient) * r.abs_error_estimate;
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
    }
    return out;
}

double evaluate_free_energy(const PolyhedralGroup& group, const RepLabel& rep,
                            const ThermoState& state) {
    CyclicDecomposition dec = decompose(group, rep);
    double acc = 0.0;
    for (const auto& b : dec.blocks) acc += b.coefficient * free_energy(block_spec(b), state);
    return acc;
}

}  // namespace lensdet
