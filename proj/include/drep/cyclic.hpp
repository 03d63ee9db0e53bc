#pragma once

#include "drep/algebra.hpp"
#include "drep/linalg.hpp"

#include <string>
#include <vector>

namespace drep {

// Connes' cyclic complex CC(A) on canonical words, the Hochschild b, the
// bar differential b', and the norm map N.
//
// A word of length n+1 represents a class in CC_n; the cyclic operator
// t_n rotates with sign (-1)^n.  Canonical form is the lexicographically
// least rotation; orbits identified with minus themselves vanish over Q.

using CycWord = std::vector<int>; // basis indices into a BasedAlgebra

struct CyclicCanon {
    CycWord word;
    int sign = 1;
    bool zero = false;
};
CyclicCanon cyclic_reduce(const CycWord& word, int n);

// Canonical cyclic words of degree n; w >= 0 restricts to total weight w,
// w < 0 enumerates the full finite-dimensional complex.
std::vector<CycWord> cyclic_basis(const BasedAlgebra& a, int n, int w = -1);
// Raw tensor words of the given length (bar side).
std::vector<CycWord> tensor_words(const BasedAlgebra& a, int len, int w = -1);

// b: CC_n -> CC_{n-1} on the given canonical bases.
SparseMatrix b_matrix(const BasedAlgebra& a, int n, const std::vector<CycWord>& src,
                      const std::vector<CycWord>& dst);
// b': A^{x len} -> A^{x len-1} on raw tensor words.
SparseMatrix bprime_matrix(const BasedAlgebra& a, int len, const std::vector<CycWord>& src,
                           const std::vector<CycWord>& dst);
// N_len: CC_{len-1} -> A^{x len}, the sum of signed rotations.
SparseMatrix norm_matrix(const BasedAlgebra& a, int len, const std::vector<CycWord>& src,
                         const std::vector<CycWord>& dst);
// The signed rotation t on A^{x len}.
SparseMatrix t_matrix(const BasedAlgebra& a, int len, const std::vector<CycWord>& words);

struct HCCell {
    int n = 0;
    int w = -1;
    int dim = 0;         // HC_n
    int reduced_dim = 0; // HC-bar_n (quotient by CC(k))
};
// Finite-dimensional A: w_max < 0, one cell per n.  Weight-graded A:
// cells for all 0 <= w <= w_max.
std::vector<HCCell> hc_dims(const BasedAlgebra& a, int n_max, int w_max = -1);

struct NormReport {
    bool pass = true;
    std::vector<std::string> detail; // per-n notes; failures listed first
};
// Injectivity of N_n, Im N_n = signed-cyclic invariants, (1-t)N = 0 and
// b'N = Nb for all n <= n_max.
NormReport norm_check(const BasedAlgebra& a, int n_max);

} // namespace drep
