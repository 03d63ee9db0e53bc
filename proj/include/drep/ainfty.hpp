#pragma once

#include "drep/algebra.hpp"
#include "drep/cyclic.hpp"
#include "drep/linalg.hpp"
#include "drep/presentation.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace drep {

// Contracting homotopies for pi: R -> A and the recursive A-infinity
// components f_n they induce.
//
// The section f1 sends a basis word of A to the same word read in R; pi
// evaluates degree-0 words of R through A's multiplication table and
// kills positive degrees.  The homotopy h solves d h + h d = id - f1 pi
// blockwise; solvability of those systems is exactly the resolution
// property and failures are reported per block.  Requires a
// weight-preserving differential so blocks stay finite.

struct ResolutionData {
    DGPresentation r;
    BasedAlgebra a;
    std::vector<int> rgen_of_agen; // A alphabet -> R generator index

    AVec project_word(const Mono& word) const; // pi on a monomial
    AVec project(const Poly& q) const;
    Mono lift_basis(int basis_index) const;    // f1 on a basis element
};
ResolutionData make_resolution_data(const DGPresentation& r, const BasedAlgebra& a);

struct ContractingHomotopy {
    int n_max = 0;
    int w_max = 0;
    std::map<std::pair<int, int>, std::vector<Mono>> bases;  // block (n, w)
    std::map<std::pair<int, int>, std::vector<Poly>> images; // h per basis monomial

    Poly apply(const Poly& q) const; // defined termwise on covered blocks
};
ContractingHomotopy build_homotopy(const ResolutionData& res, int n_max, int w_max,
                                   PivotPolicy policy = PivotPolicy::SmallestMagnitude);

struct AInftyMorphism {
    int n_max = 0;
    int w_max = 0;
    // Words of non-unit basis indices, length >= 1, mapped to elements of
    // R of homdeg len-1.  Unit-containing words are zero by strict
    // unitality and are not stored.
    std::map<CycWord, Poly> f;

    Poly eval(const ResolutionData& res, const CycWord& word) const;
};
AInftyMorphism solve_components(const ResolutionData& res, const ContractingHomotopy& h,
                                int n_max, int w_max);

struct TwistReport {
    bool pass = true;
    std::vector<std::string> violations;
};
// Re-checks pi f1 = id and the component equations with the first sum
// assembled independently through the bar differential b'.
TwistReport check_twisting(const ResolutionData& res, const AInftyMorphism& f, int n_max,
                           int w_max);

} // namespace drep
