#pragma once

#include "drep/presentation.hpp"

#include <string>
#include <vector>

namespace drep {

// Matrix reduction: from an almost-free presentation R to the entry
// algebras.  Every source generator x contributes d^2 entry generators
// x_i_j of the same degree, weight and kind; the differential of an entry
// is the (i,j) entry of the matrix evaluation of d(x).  entries_nc is the
// free entry algebra, entries its abelianization R_V.

using PolyMatrix = std::vector<std::vector<Poly>>;

struct RepScheme {
    int dim = 0;
    DGPresentation source;     // the input presentation (NC)
    DGPresentation entries_nc; // free algebra on entries
    DGPresentation entries;    // graded-commutative quotient R_V

    int entry(int src_gen, int i, int j) const; // 1-based i, j
    std::string entry_name(int src_gen, int i, int j) const;
};

RepScheme matrix_reduce(const DGPresentation& r, int d);

// Same construction for a presentation carrying module generators (a free
// bimodule given by its generators and differential).
RepScheme bimodule_entries(const DGPresentation& r, int d);

DGPresentation abelianize(const DGPresentation& p);

// d x d matrix of entry polynomials representing a source polynomial.
PolyMatrix evaluate_matrix(const RepScheme& s, const Poly& src, bool nc = false);
PolyMatrix universal_matrix(const RepScheme& s, int src_gen, bool nc = false);
Poly matrix_trace(const PolyMatrix& m);

struct RepEquations {
    RepScheme scheme;
    std::vector<Poly> equations; // nonzero entries of evaluated relations
};
RepEquations rep_equations(const DGPresentation& algebra, const std::vector<Poly>& relations,
                           int d);

// tau_V: pushes a derivation of the source to a derivation of R_V by
// entrywise matrix evaluation of the generator images.
Derivation derivation_pushforward(const RepScheme& s, const Derivation& der);

} // namespace drep
