#pragma once

// Binary polyhedral quotients S^3/Gamma' and flat-bundle twistings, reduced
// to signed combinations of twisted cyclic blocks.  With R, S, T the group
// generators (binary orders 4, 6, 2n, and RST central of order 2):
//
//   trivial:  S(1)    = 1/2 [S(0;R) + S(0;S) + S(0;T) - S(0;RST)]
//   spinor:   S(2s)   = 1/2 [S(1;R) + S(1;S) + S(1;T) - S(1;RST)]
//   I' only:  S(2s')  = S(1;S) - 1/2 S(5;T) - S(1;T)
//             S(3')   = 1/2 S(2;R) - S(2;T)
//             S(3)    = 1/2 S(2;R) - S(4;T)
//
// where S(r; gamma) is the twisted quantity on the cyclic quotient of order
// ord(gamma), and direct sums concatenate blocks.

#include <string>
#include <vector>

#include "lensdet/detcore.hpp"
#include "lensdet/thermo.hpp"

namespace lensdet {

enum class PolyKind { Tetrahedral, Octahedral, Icosahedral };

struct PolyhedralGroup {
    PolyKind kind = PolyKind::Icosahedral;

    int n() const;       // last entry of the (2, 3, n) symbol
    int order() const;   // 24, 48, 120
    std::string name() const;

    static PolyhedralGroup from_name(const std::string& name);  // "T", "O", "I"
};

enum class Irrep { One, TwoS, TwoSPrime, Three, ThreePrime };

struct RepLabel {
    std::vector<Irrep> parts;  // direct sum of irreps

    int dimension() const;
    std::string name() const;
    static RepLabel parse(const std::string& text);  // e.g. "1", "2s", "1+2s", "3p"
};

struct CyclicBlock {
    double coefficient = 0.0;
    int cyclic_order = 1;
    int twist = 0;  // stored verbatim, reduced mod order only at evaluation
};

struct CyclicDecomposition {
    std::vector<CyclicBlock> blocks;
};

CyclicDecomposition decompose(const PolyhedralGroup& group, const RepLabel& rep);

// Mode degeneracies of the decomposition for the full spectrum (total
// degeneracies D_l = l d_l per block); exact nonnegative integers.
std::vector<long long> decomposition_degeneracies(const CyclicDecomposition& dec, int l_max);

SpectralResult evaluate(const PolyhedralGroup& group, const RepLabel& rep, Quantity quantity,
                        const Coupling& coupling);

// Thermal tower of the twisted blocks (coupling-independent).
double evaluate_free_energy(const PolyhedralGroup& group, const RepLabel& rep,
                            const ThermoState& state);

}  // namespace lensdet
