#pragma once

#include "drep/linalg.hpp"
#include "drep/presentation.hpp"

#include <optional>
#include <vector>

namespace drep {

// Weight-graded chain blocks and exact homology ranks.
//
// A block (n, w) is the span of monomials of homological degree n and
// weight w; presentations carrying module generators use monomials with
// exactly one module factor.  When the differential preserves weights the
// per-block kernel/rank bookkeeping is exact.  When some d(g) lowers
// weight, ranks at weight w draw sources from weights up to w + slack and
// the result is a stabilization heuristic, reported as such.

std::vector<Mono> block_basis(const DGPresentation& p, int n, int w);

struct DifferentialMatrix {
    SparseMatrix mat;
    std::vector<Mono> sources; // columns: blocks (n, w') for w-slack <= w' <= w
    std::vector<Mono> targets; // rows: degree n-1, weights <= w
};
DifferentialMatrix differential_matrix(const DGPresentation& p, int n, int w, int slack = 0);

struct HomCell {
    int n = 0;
    int w = 0;
    int dim = 0;
    bool valid = true;
    int slack = 0;
};

struct HomTable {
    int n_max = 0;
    int w_max = 0;
    bool weight_preserving = true;
    std::vector<HomCell> cells; // row-major: n * (w_max+1) + w
    const HomCell& at(int n, int w) const;
};

// slack < 0 requests per-cell auto-stabilization (increase until the
// dimension repeats); threads <= 0 uses the hardware default.
HomTable homology_dims(const DGPresentation& p, int n_max, int w_max, int slack = -1,
                       int threads = 0);

// Does q = d(x) have a solution x with weights within slack of q's weight?
struct BoundaryResult {
    bool is_boundary = false;
    Poly witness;
    int slack = 0;
};
BoundaryResult is_boundary(const DGPresentation& p, const Poly& q, int slack = 0);

bool weight_preserving(const DGPresentation& p);

} // namespace drep
