#pragma once

#include "drep/presentation.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace drep {

// An ordinary algebra with a chosen monomial basis and exact structure
// constants, built from generators and relations by a terminating
// rewriting system (graded cases) or by closure (finite-dimensional
// cases).  This is the coefficient algebra A for the cyclic complex and
// the A-infinity transfer.

using AVec = std::vector<std::pair<int, Rational>>; // sparse vector over the basis

struct AlgebraSpec {
    DGPresentation pres;         // degree-0 generators, NC flavor
    std::vector<Poly> relations; // two-sided ideal generators
};

struct BasedAlgebra {
    std::vector<std::string> gen_names;
    std::vector<int> gen_weights;
    std::vector<std::vector<int>> basis; // normal-form words; basis[unit] = {}
    std::vector<int> weights;            // per basis element
    int unit = 0;
    int wmax = -1;                       // >= 0: weight-truncated table
    std::vector<std::vector<AVec>> table;

    int dim() const { return static_cast<int>(basis.size()); }
    int index_of(const std::vector<int>& word) const; // -1 when absent
    const AVec& mul(int i, int j) const;
    std::string name_of(int i) const;
};

// wmax >= 0 builds the weight-truncated basis (products beyond wmax are
// dropped; relations must not raise weight).  wmax < 0 requires the
// algebra to close up to a finite basis.  Associativity and unit laws are
// validated within the window.
BasedAlgebra based_algebra(const AlgebraSpec& spec, int wmax);

AVec avec_scale(const Rational& c, const AVec& v);
void avec_add(AVec& dst, const AVec& src, const Rational& c);

} // namespace drep
