#pragma once

#include "drep/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace drep {

// Exact rational matrices and Gauss-Jordan reduction.
//
// Pivot policy: among all active entries pick the smallest |num|*|den|,
// ties broken by lowest column then lowest row.  This keeps coefficient
// growth down and makes every reduction (rank, kernel, solutions)
// deterministic, which the golden tests rely on.  Matrices whose initial
// fill exceeds 30% take a dense path with the same policy.

using RatMatrix = std::vector<std::vector<Rational>>;

struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::map<int, Rational>> row;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), row(static_cast<size_t>(r)) {}

    void add(int r, int c, const Rational& v);
    void set(int r, int c, const Rational& v);
    Rational get(int r, int c) const;
    long long nnz() const;
    double fill() const;
};

enum class PivotPolicy {
    SmallestMagnitude, // production policy described above
    FirstNonzero,      // scan order policy, kept for cross-checks
};

struct ElimOp {
    int dst = 0;
    int src = -1;      // -1: scale dst by factor, else dst += factor * src
    Rational factor;
};

struct Reduction {
    int rows = 0;
    int cols = 0;
    int rank = 0;
    bool dense_path = false;
    std::vector<std::pair<int, int>> pivots;        // (row, col) in elimination order
    std::vector<std::map<int, Rational>> rref;      // fully reduced rows
    std::vector<ElimOp> script;                     // row ops, replayable on any rhs

    // Sparse column vectors spanning the right kernel, one per free column
    // in ascending column order.
    std::vector<std::vector<std::pair<int, Rational>>> kernel() const;

    // Solves A x = rhs; returns the particular solution with zero free
    // coordinates, or nullopt when the system is inconsistent.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& rhs) const;

    std::vector<Rational> replay(std::vector<Rational> v) const;
};

Reduction reduce(const SparseMatrix& a, PivotPolicy policy = PivotPolicy::SmallestMagnitude);
int rank_of(const SparseMatrix& a);

} // namespace drep
