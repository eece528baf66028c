#pragma once

// Verification suite: every published determinant, asymptote, closed form
// and exactness property the library is required to reproduce, each with a
// pinned tolerance.  Used by the `verify` CLI subcommand and the acceptance
// test binary.

#include <string>
#include <vector>

namespace lensdet {

struct CriterionResult {
    std::string id;       // "A1".."A10"
    bool passed = false;
    std::string detail;   // measured values / tolerances, one line
};

// Runs the requested criteria ("A3", ...); empty list = all.  Unknown ids
// throw std::invalid_argument.
std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& only = {});

}  // namespace lensdet
