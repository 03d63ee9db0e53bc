#include "drep/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace drep {

void SparseMatrix::add(int r, int c, const Rational& v) {
    if (v == 0) return;
    auto& m = row.at(static_cast<size_t>(r));
    if (c < 0 || c >= cols) throw std::out_of_range("column index");
    auto [it, fresh] = m.emplace(c, v);
    if (!fresh) {
        it->second += v;
        if (it->second == 0) m.erase(it);
    }
}

void SparseMatrix::set(int r, int c, const Rational& v) {
    auto& m = row.at(static_cast<size_t>(r));
    if (c < 0 || c >= cols) throw std::out_of_range("column index");
    if (v == 0) m.erase(c);
    else m[c] = v;
}

Rational SparseMatrix::get(int r, int c) const {
    const auto& m = row.at(static_cast<size_t>(r));
    auto it = m.find(c);
    return it == m.end() ? Rational(0) : it->second;
}

long long SparseMatrix::nnz() const {
    long long n = 0;
    for (const auto& m : row) n += static_cast<long long>(m.size());
    return n;
}

double SparseMatrix::fill() const {
    if (rows == 0 || cols == 0) return 0.0;
    return static_cast<double>(nnz()) / (static_cast<double>(rows) * cols);
}

namespace {

constexpr double kDenseThreshold = 0.30;

struct PivotChoice {
    int row = -1;
    int col = -1;
};

// Shared pivot selection; candidates are reported by the storage loops.
struct PivotScan {
    PivotPolicy policy;
    PivotChoice best;
    mpz_class best_mag;

    void offer(int r, int c, const Rational& v) {
        if (best.row < 0) {
            best = {r, c};
            if (policy == PivotPolicy::SmallestMagnitude) best_mag = pivot_magnitude(v);
            return;
        }
        if (policy == PivotPolicy::FirstNonzero) return; // keep the first hit
        mpz_class mag = pivot_magnitude(v);
        if (mag < best_mag || (mag == best_mag && (c < best.col || (c == best.col && r < best.row)))) {
            best = {r, c};
            best_mag = std::move(mag);
        }
    }
};

Reduction reduce_sparse(const SparseMatrix& a, PivotPolicy policy) {
    Reduction red;
    red.rows = a.rows;
    red.cols = a.cols;
    red.rref = a.row;

    std::vector<bool> row_done(static_cast<size_t>(a.rows), false);
    std::vector<bool> col_done(static_cast<size_t>(a.cols), false);

    for (;;) {
        PivotScan scan{policy, {}, {}};
        for (int r = 0; r < a.rows; ++r) {
            if (row_done[static_cast<size_t>(r)]) continue;
            for (const auto& [c, v] : red.rref[static_cast<size_t>(r)]) {
                if (col_done[static_cast<size_t>(c)]) continue;
                scan.offer(r, c, v);
                if (policy == PivotPolicy::FirstNonzero) break;
            }
            if (policy == PivotPolicy::FirstNonzero && scan.best.row >= 0) break;
        }
        if (scan.best.row < 0) break;

        int pr = scan.best.row, pc = scan.best.col;
        auto& prow = red.rref[static_cast<size_t>(pr)];
        Rational pv = prow.at(pc);
        if (pv != 1) {
            Rational inv = 1 / pv;
            for (auto& [c, v] : prow) v *= inv;
            red.script.push_back({pr, -1, inv});
        }
        for (int r = 0; r < a.rows; ++r) {
            if (r == pr) continue;
            auto& tr = red.rref[static_cast<size_t>(r)];
            auto it = tr.find(pc);
            if (it == tr.end()) continue;
            Rational f = -it->second;
            for (const auto& [c, v] : prow) {
                auto [jt, fresh] = tr.emplace(c, f * v);
                if (!fresh) {
                    jt->second += f * v;
                    if (jt->second == 0) tr.erase(jt);
                }
            }
            red.script.push_back({r, pr, f});
        }
        row_done[static_cast<size_t>(pr)] = true;
        col_done[static_cast<size_t>(pc)] = true;
        red.pivots.emplace_back(pr, pc);
        ++red.rank;
    }
    return red;
}

Reduction reduce_dense(const SparseMatrix& a, PivotPolicy policy) {
    Reduction red;
    red.rows = a.rows;
    red.cols = a.cols;
    red.dense_path = true;

    std::vector<std::vector<Rational>> m(static_cast<size_t>(a.rows),
                                         std::vector<Rational>(static_cast<size_t>(a.cols), Rational(0)));
    for (int r = 0; r < a.rows; ++r)
        for (const auto& [c, v] : a.row[static_cast<size_t>(r)])
            m[static_cast<size_t>(r)][static_cast<size_t>(c)] = v;

    std::vector<bool> row_done(static_cast<size_t>(a.rows), false);
    std::vector<bool> col_done(static_cast<size_t>(a.cols), false);

    for (;;) {
        PivotScan scan{policy, {}, {}};
        for (int r = 0; r < a.rows && !(policy == PivotPolicy::FirstNonzero && scan.best.row >= 0); ++r) {
            if (row_done[static_cast<size_t>(r)]) continue;
            for (int c = 0; c < a.cols; ++c) {
                if (col_done[static_cast<size_t>(c)]) continue;
                const Rational& v = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
                if (v == 0) continue;
                scan.offer(r, c, v);
                if (policy == PivotPolicy::FirstNonzero) break;
            }
        }
        if (scan.best.row < 0) break;

        int pr = scan.best.row, pc = scan.best.col;
        auto& prow = m[static_cast<size_t>(pr)];
        Rational pv = prow[static_cast<size_t>(pc)];
        if (pv != 1) {
            Rational inv = 1 / pv;
            for (auto& v : prow)
                if (v != 0) v *= inv;
            red.script.push_back({pr, -1, inv});
        }
        for (int r = 0; r < a.rows; ++r) {
            if (r == pr) continue;
            auto& tr = m[static_cast<size_t>(r)];
            if (tr[static_cast<size_t>(pc)] == 0) continue;
            Rational f = -tr[static_cast<size_t>(pc)];
            for (int c = 0; c < a.cols; ++c)
                if (prow[static_cast<size_t>(c)] != 0)
                    tr[static_cast<size_t>(c)] += f * prow[static_cast<size_t>(c)];
            red.script.push_back({r, pr, f});
        }
        row_done[static_cast<size_t>(pr)] = true;
        col_done[static_cast<size_t>(pc)] = true;
        red.pivots.emplace_back(pr, pc);
        ++red.rank;
    }

    red.rref.assign(static_cast<size_t>(a.rows), {});
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < a.cols; ++c)
            if (m[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0)
                red.rref[static_cast<size_t>(r)].emplace(c, m[static_cast<size_t>(r)][static_cast<size_t>(c)]);
    return red;
}

} // namespace

Reduction reduce(const SparseMatrix& a, PivotPolicy policy) {
    if (a.fill() > kDenseThreshold) return reduce_dense(a, policy);
    return reduce_sparse(a, policy);
}

int rank_of(const SparseMatrix& a) {
    return reduce(a).rank;
}

std::vector<std::vector<std::pair<int, Rational>>> Reduction::kernel() const {
    std::vector<bool> is_pivot_col(static_cast<size_t>(cols), false);
    std::vector<int> pivot_row_of_col(static_cast<size_t>(cols), -1);
    for (const auto& [r, c] : pivots) {
        is_pivot_col[static_cast<size_t>(c)] = true;
        pivot_row_of_col[static_cast<size_t>(c)] = r;
    }
    std::vector<std::vector<std::pair<int, Rational>>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot_col[static_cast<size_t>(f)]) continue;
        std::vector<std::pair<int, Rational>> v;
        for (const auto& [r, c] : pivots) {
            auto it = rref[static_cast<size_t>(r)].find(f);
            if (it != rref[static_cast<size_t>(r)].end()) v.emplace_back(c, -it->second);
        }
        v.emplace_back(f, Rational(1));
        std::sort(v.begin(), v.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Rational> Reduction::replay(std::vector<Rational> v) const {
    for (const ElimOp& op : script) {
        if (op.src < 0) {
            v[static_cast<size_t>(op.dst)] *= op.factor;
        } else {
            Rational t = op.factor * v[static_cast<size_t>(op.src)];
            v[static_cast<size_t>(op.dst)] += t;
        }
    }
    return v;
}

std::optional<std::vector<Rational>> Reduction::solve(const std::vector<Rational>& rhs) const {
    if (static_cast<int>(rhs.size()) != rows)
        throw std::invalid_argument("rhs length does not match row count");
    std::vector<Rational> y = replay(rhs);
    std::vector<bool> pivot_row(static_cast<size_t>(rows), false);
    for (const auto& [r, c] : pivots) pivot_row[static_cast<size_t>(r)] = true;
    for (int r = 0; r < rows; ++r)
        if (!pivot_row[static_cast<size_t>(r)] && y[static_cast<size_t>(r)] != 0)
            return std::nullopt;
    std::vector<Rational> x(static_cast<size_t>(cols), Rational(0));
    for (const auto& [r, c] : pivots) x[static_cast<size_t>(c)] = y[static_cast<size_t>(r)];
    return x;
}

} // namespace drep
