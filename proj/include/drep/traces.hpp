#pragma once

#include "drep/ainfty.hpp"
#include "drep/repfun.hpp"

#include <map>
#include <string>
#include <vector>

namespace drep {

// Derived-character trace maps T_n: CC_n(A) -> R_V and the chain-level
// GL-invariance checks.

// T_n of a single cyclic word (a_1, ..., a_{n+1}): sum the diagonal of
// the matrix evaluation of f_{n+1} over all signed rotations.
Poly trace_word(const RepScheme& s, const ResolutionData& res, const AInftyMorphism& f,
                const CycWord& word);
Poly trace_chain(const RepScheme& s, const ResolutionData& res, const AInftyMorphism& f,
                 const std::map<CycWord, Rational>& chain);

// Sum_i (f2(a,b) - f2(b,a))_{ii}, the chain-level ch2.
Poly ch2_trace(const RepScheme& s, const ResolutionData& res, const AInftyMorphism& f, int a,
               int b);

// Noncommutative trace Sum_i f1(a)_{ii} in the free entry algebra.
Poly ntrace(const RepScheme& s, const ResolutionData& res, int a);

// Conjugation substitution x_i_j -> (g^{-1} X g)_{ij} applied to a value
// in R_V; g must be invertible.
Poly gl_substitute(const RepScheme& s, const RatMatrix& g, const Poly& value);

struct GLReport {
    bool pass = false;
    int samples = 0;
    bool negative_control_moved = false;
};
// Checks every supplied trace value against `samples` random conjugations
// (integer entries in [-3, 3], singular draws rejected) and runs the
// non-invariant probe x_1_2 as a negative control.
GLReport gl_invariance_check(const RepScheme& s, const std::vector<Poly>& values, int samples,
                             unsigned seed);

} // namespace drep
