#pragma once

#include "drep/homology.hpp"
#include "drep/linalg.hpp"
#include "drep/presentation.hpp"
#include "drep/repfun.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace drep {

// Noncommutative 1-forms, the periodicity complexes X+(R) and X+(R)_V,
// the maps S_V / B_V, and derived tangent complexes.

struct OneForms {
    DGPresentation ext;          // R generators plus module generators d<x>
    std::vector<int> dgen;       // source generator -> its form generator
    int source_gens = 0;

    Poly del(const Poly& r) const;            // universal derivation
    Poly natural_reduce(const Poly& w) const; // rotate form symbol to last position
    Poly beta(const Poly& form) const;        // u d(g) -> [u, g]
    Poly dbar(const Poly& r) const;           // natural_reduce of del
};
OneForms one_forms(const DGPresentation& r);

// Signed cyclic class of a word in R-bar-natural: lexicographically least
// rotation with Koszul signs; self-cancelling orbits vanish.
struct CyclicWordCanon {
    Mono word;
    int sign = 1;
    bool zero = false;
};
CyclicWordCanon cyclic_word_reduce(const DGPresentation& p, const Mono& word);
Poly tau(const DGPresentation& p, const Poly& q); // R-bar -> R-bar-natural

struct ExactnessCell {
    int n = 0;
    int w = 0;
    bool exact = true;
    std::string note;
};
// Row exactness of 0 <- Rbar_nat <- Rbar <- Omega1_nat <- Rbar_nat <- 0
// per (degree, weight) block.
std::vector<ExactnessCell> periodicity_exactness(const DGPresentation& r, int n_max, int w_max);

// Assembles the total differentials of X+(R) (and of X+(R)_V when d > 0)
// per (total degree, weight) block and verifies D^2 = 0.
struct XComplexReport {
    bool d_squared_zero = true;
    std::vector<std::string> failures;
    int blocks_checked = 0;
};
XComplexReport x_complexes(const DGPresentation& r, int d, int n_max, int w_max, int col_max);

// The V side: R_V with its de Rham differential into the entry 1-forms.
struct VForms {
    RepScheme scheme;      // of R itself
    RepScheme forms;       // of the extended presentation (module entries)
    Derivation de_rham;    // del_V on entries of R_V, valued in forms.entries
    Poly del_v(const Poly& rv) const;
};
VForms v_forms(const DGPresentation& r, int d);

// A class in Tot X+(R)_V in the reduced shape (r_n, w_{n-1}, w_{n-3}, ...):
// comps[0] lives in R_V, the rest in the entry 1-forms.
struct VClass {
    int n = 0;
    std::vector<Poly> comps;
};
struct SvBvResult {
    VClass sv;      // (r_{n-2}, w_{n-3}, ...) after solving the lift
    Poly bv;        // del_V of the leading component
    Poly lifted_r;  // the solved r_{n-2}
};
SvBvResult sv_bv(const VForms& vf, const VClass& cls, int w_max);

// Extended trace: lift a cyclic cycle r in R-bar-natural through the
// periodicity row, then push every component through Tr_V.  tail, when
// given, receives the final degree-0 or 1 source lift before tracing.
VClass extended_trace(const VForms& vf, const OneForms& forms, const Poly& r_cycle,
                      Poly* tail = nullptr);

// Derived tangent complex at a representation point.
struct TangentResult {
    std::vector<int> dims; // homology dims by degree
};
TangentResult tangent_complex(const std::vector<Poly>& relations, const DGPresentation& r,
                              int d, const std::map<std::string, RatMatrix>& rho);

} // namespace drep
