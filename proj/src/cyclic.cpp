#include "drep/cyclic.hpp"

#include "drep/resource.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace drep {

namespace {

CycWord rotate_right(const CycWord& w) {
    if (w.empty()) return w;
    CycWord r;
    r.reserve(w.size());
    r.push_back(w.back());
    r.insert(r.end(), w.begin(), w.end() - 1);
    return r;
}

void enumerate_words(const BasedAlgebra& a, int len, int w, CycWord& word,
                     std::vector<CycWord>& out) {
    if (static_cast<int>(word.size()) == len) {
        if (w < 0 || w == 0) {
            if ((out.size() & 4095) == 0)
                ensure_budget(out.size() * (word.size() * sizeof(int) + sizeof(CycWord)),
                              "tensor word enumeration");
            out.push_back(word);
        }
        return;
    }
    for (int g = 0; g < a.dim(); ++g) {
        int gw = a.weights[static_cast<size_t>(g)];
        if (w >= 0 && gw > w) continue;
        word.push_back(g);
        enumerate_words(a, len, w < 0 ? w : w - gw, word, out);
        word.pop_back();
    }
}

std::map<CycWord, int> index_map(const std::vector<CycWord>& words) {
    std::map<CycWord, int> m;
    for (size_t i = 0; i < words.size(); ++i) m.emplace(words[i], static_cast<int>(i));
    return m;
}

int sign_pow(int base_sign, int k) { return (base_sign < 0 && k % 2 != 0) ? -1 : 1; }

SparseMatrix spmul(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw std::logic_error("matrix product shape mismatch");
    SparseMatrix out(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (const auto& [k, v] : a.row[static_cast<size_t>(r)])
            for (const auto& [c, w] : b.row[static_cast<size_t>(k)]) out.add(r, c, v * w);
    return out;
}

bool is_zero(const SparseMatrix& m) {
    for (const auto& r : m.row)
        if (!r.empty()) return false;
    return true;
}

int kernel_dim(const SparseMatrix& m) { return m.cols - rank_of(m); }

// Column index of the all-unit word, or -1.
int unit_word_index(const BasedAlgebra& a, const std::vector<CycWord>& words) {
    for (size_t i = 0; i < words.size(); ++i) {
        bool all_unit = true;
        for (int g : words[i]) all_unit &= g == a.unit;
        if (all_unit && !words[i].empty()) return static_cast<int>(i);
    }
    return -1;
}

SparseMatrix drop_row_col(const SparseMatrix& m, int drop_row, int drop_col) {
    SparseMatrix out(m.rows - (drop_row >= 0 ? 1 : 0), m.cols - (drop_col >= 0 ? 1 : 0));
    for (int r = 0; r < m.rows; ++r) {
        if (r == drop_row) continue;
        int rr = r - (drop_row >= 0 && r > drop_row ? 1 : 0);
        for (const auto& [c, v] : m.row[static_cast<size_t>(r)]) {
            if (c == drop_col) continue;
            int cc = c - (drop_col >= 0 && c > drop_col ? 1 : 0);
            out.set(rr, cc, v);
        }
    }
    return out;
}

} // namespace

CyclicCanon cyclic_reduce(const CycWord& word, int n) {
    if (static_cast<int>(word.size()) != n + 1)
        throw std::invalid_argument("cyclic word length does not match the degree");
    CyclicCanon canon;
    canon.word = word;
    canon.sign = 1;
    int rot_sign = n % 2 == 0 ? 1 : -1; // sign of one application of t
    CycWord cur = word;
    int best_k = 0;
    for (int k = 1; k <= n; ++k) {
        cur = rotate_right(cur);
        if (cur < canon.word) {
            canon.word = cur;
            best_k = k;
        }
    }
    canon.sign = sign_pow(rot_sign, best_k);
    // A rotation fixing the canonical word with the opposite sign kills the class.
    cur = canon.word;
    for (int k = 1; k <= n; ++k) {
        cur = rotate_right(cur);
        if (cur == canon.word && sign_pow(rot_sign, k) == -1) {
            canon.zero = true;
            break;
        }
    }
    return canon;
}

std::vector<CycWord> cyclic_basis(const BasedAlgebra& a, int n, int w) {
    std::vector<CycWord> all;
    CycWord word;
    enumerate_words(a, n + 1, w, word, all);
    std::vector<CycWord> out;
    for (const CycWord& cw : all) {
        CyclicCanon c = cyclic_reduce(cw, n);
        if (!c.zero && c.word == cw) out.push_back(cw);
    }
    return out;
}

std::vector<CycWord> tensor_words(const BasedAlgebra& a, int len, int w) {
    std::vector<CycWord> out;
    CycWord word;
    enumerate_words(a, len, w, word, out);
    return out;
}

SparseMatrix b_matrix(const BasedAlgebra& a, int n, const std::vector<CycWord>& src,
                      const std::vector<CycWord>& dst) {
    SparseMatrix out(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    if (n <= 0) return out;
    std::map<CycWord, int> rows = index_map(dst);
    for (size_t c = 0; c < src.size(); ++c) {
        const CycWord& w = src[c];
        auto emit = [&](const CycWord& shorter, const Rational& coeff) {
            CyclicCanon canon = cyclic_reduce(shorter, n - 1);
            if (canon.zero) return;
            auto it = rows.find(canon.word);
            if (it == rows.end())
                throw std::runtime_error("Hochschild image leaves the target basis");
            out.add(it->second, static_cast<int>(c), coeff * canon.sign);
        };
        for (int i = 0; i < n; ++i) {
            for (const auto& [e, coeff] : a.mul(w[static_cast<size_t>(i)],
                                                w[static_cast<size_t>(i + 1)])) {
                CycWord shorter;
                shorter.reserve(w.size() - 1);
                shorter.insert(shorter.end(), w.begin(), w.begin() + i);
                shorter.push_back(e);
                shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
                emit(shorter, i % 2 == 0 ? coeff : -coeff);
            }
        }
        for (const auto& [e, coeff] : a.mul(w[static_cast<size_t>(n)], w[0])) {
            CycWord shorter;
            shorter.reserve(w.size() - 1);
            shorter.push_back(e);
            shorter.insert(shorter.end(), w.begin() + 1, w.begin() + n);
            emit(shorter, n % 2 == 0 ? coeff : -coeff);
        }
    }
    return out;
}

SparseMatrix bprime_matrix(const BasedAlgebra& a, int len, const std::vector<CycWord>& src,
                           const std::vector<CycWord>& dst) {
    SparseMatrix out(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    if (len <= 1) return out;
    std::map<CycWord, int> rows = index_map(dst);
    for (size_t c = 0; c < src.size(); ++c) {
        const CycWord& w = src[c];
        for (int i = 0; i + 1 < len; ++i)
            for (const auto& [e, coeff] : a.mul(w[static_cast<size_t>(i)],
                                                w[static_cast<size_t>(i + 1)])) {
                CycWord shorter;
                shorter.reserve(w.size() - 1);
                shorter.insert(shorter.end(), w.begin(), w.begin() + i);
                shorter.push_back(e);
                shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
                auto it = rows.find(shorter);
                if (it == rows.end())
                    throw std::runtime_error("bar image leaves the target basis");
                out.add(it->second, static_cast<int>(c), i % 2 == 0 ? coeff : -coeff);
            }
    }
    return out;
}

SparseMatrix norm_matrix(const BasedAlgebra& a, int len, const std::vector<CycWord>& src,
                         const std::vector<CycWord>& dst) {
    (void)a;
    SparseMatrix out(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    std::map<CycWord, int> rows = index_map(dst);
    int rot_sign = (len - 1) % 2 == 0 ? 1 : -1;
    for (size_t c = 0; c < src.size(); ++c) {
        CycWord cur = src[c];
        for (int k = 0; k < len; ++k) {
            auto it = rows.find(cur);
            if (it == rows.end())
                throw std::runtime_error("rotation leaves the target basis");
            out.add(it->second, static_cast<int>(c), Rational(sign_pow(rot_sign, k)));
            cur = rotate_right(cur);
        }
    }
    return out;
}

SparseMatrix t_matrix(const BasedAlgebra& a, int len, const std::vector<CycWord>& words) {
    (void)a;
    SparseMatrix out(static_cast<int>(words.size()), static_cast<int>(words.size()));
    std::map<CycWord, int> rows = index_map(words);
    int rot_sign = (len - 1) % 2 == 0 ? 1 : -1;
    for (size_t c = 0; c < words.size(); ++c) {
        CycWord r = rotate_right(words[c]);
        auto it = rows.find(r);
        if (it == rows.end()) throw std::runtime_error("rotation leaves the word set");
        out.add(it->second, static_cast<int>(c), Rational(rot_sign));
    }
    return out;
}

std::vector<HCCell> hc_dims(const BasedAlgebra& a, int n_max, int w_max) {
    std::vector<HCCell> out;
    std::vector<int> weights;
    if (w_max < 0)
        weights.push_back(-1);
    else
        for (int w = 0; w <= w_max; ++w) weights.push_back(w);

    for (int w : weights) {
        std::vector<std::vector<CycWord>> bases(static_cast<size_t>(n_max) + 2);
        for (int n = 0; n <= n_max + 1; ++n)
            bases[static_cast<size_t>(n)] = cyclic_basis(a, n, w);
        static const std::vector<CycWord> kNoWords;
        for (int n = 0; n <= n_max; ++n) {
            const auto& here = bases[static_cast<size_t>(n)];
            const auto& below = n > 0 ? bases[static_cast<size_t>(n - 1)] : kNoWords;
            const auto& above = bases[static_cast<size_t>(n + 1)];
            SparseMatrix bn = b_matrix(a, n, here, below);
            SparseMatrix bn1 = b_matrix(a, n + 1, above, here);
            HCCell cell;
            cell.n = n;
            cell.w = w;
            cell.dim = kernel_dim(bn) - rank_of(bn1);

            int uc = unit_word_index(a, here);
            int ub = unit_word_index(a, below);
            int ua = unit_word_index(a, above);
            SparseMatrix rn = drop_row_col(bn, ub, uc);
            SparseMatrix rn1 = drop_row_col(bn1, uc, ua);
            cell.reduced_dim = kernel_dim(rn) - rank_of(rn1);
            out.push_back(cell);
        }
    }
    return out;
}

NormReport norm_check(const BasedAlgebra& a, int n_max) {
    NormReport report;
    std::vector<std::string> ok_lines;
    for (int n = 0; n <= n_max; ++n) {
        int len = n + 1;
        std::vector<CycWord> cyc = cyclic_basis(a, n);
        std::vector<CycWord> raw = tensor_words(a, len);
        SparseMatrix N = norm_matrix(a, len, cyc, raw);
        SparseMatrix T = t_matrix(a, len, raw);

        std::string line = "n=" + std::to_string(n) + ":";
        bool good = true;

        Reduction rn = reduce(N);
        if (rn.rank != N.cols) {
            line += " N is not injective;";
            good = false;
        }

        SparseMatrix one_minus_t(T.rows, T.cols);
        for (int i = 0; i < T.rows; ++i) one_minus_t.set(i, i, Rational(1));
        for (int r = 0; r < T.rows; ++r)
            for (const auto& [c, v] : T.row[static_cast<size_t>(r)])
                one_minus_t.add(r, c, -v);
        if (!is_zero(spmul(one_minus_t, N))) {
            line += " (1-t)N != 0;";
            good = false;
        }
        if (rn.rank != kernel_dim(one_minus_t)) {
            line += " Im N != t-invariants;";
            good = false;
        }

        if (n >= 1) {
            std::vector<CycWord> cyc_below = cyclic_basis(a, n - 1);
            std::vector<CycWord> raw_below = tensor_words(a, len - 1);
            SparseMatrix bp = bprime_matrix(a, len, raw, raw_below);
            SparseMatrix b = b_matrix(a, n, cyc, cyc_below);
            SparseMatrix Nb = spmul(norm_matrix(a, len - 1, cyc_below, raw_below), b);
            SparseMatrix bpN = spmul(bp, N);
            SparseMatrix diff = bpN;
            for (int r = 0; r < Nb.rows; ++r)
                for (const auto& [c, v] : Nb.row[static_cast<size_t>(r)]) diff.add(r, c, -v);
            if (!is_zero(diff)) {
                line += " b'N != Nb;";
                good = false;
            }
        }

        if (good) {
            ok_lines.push_back(line + " N injective onto the t-invariants, b'N = Nb");
        } else {
            report.pass = false;
            report.detail.push_back(line);
        }
    }
    report.detail.insert(report.detail.end(), ok_lines.begin(), ok_lines.end());
    return report;
}

} // namespace drep
