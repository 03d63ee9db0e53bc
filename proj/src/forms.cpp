#include "drep/forms.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace drep {

namespace {

std::vector<int> flatten(const Mono& m) {
    std::vector<int> letters;
    for (const Run& r : m)
        for (int k = 0; k < r.exp; ++k) letters.push_back(r.gen);
    return letters;
}

Mono word_of(const std::vector<int>& letters) {
    Mono m;
    for (int g : letters) {
        if (!m.empty() && m.back().gen == g)
            ++m.back().exp;
        else
            m.push_back({g, 1});
    }
    return m;
}

int letters_parity(const DGPresentation& p, const std::vector<int>& letters, size_t from,
                   size_t to) {
    int s = 0;
    for (size_t i = from; i < to; ++i)
        s += p.gens[static_cast<size_t>(letters[i])].homdeg;
    return s % 2;
}

int find_mono(const std::vector<Mono>& sorted_basis, const Mono& m) {
    auto it = std::lower_bound(sorted_basis.begin(), sorted_basis.end(), m, mono_less);
    if (it == sorted_basis.end() || !(*it == m)) return -1;
    return static_cast<int>(it - sorted_basis.begin());
}

void expand_into(const Poly& q, const std::vector<Mono>& rows, int col, SparseMatrix& mat,
                 const char* what) {
    for (const auto& [m, c] : q.terms) {
        int row = find_mono(rows, m);
        if (row < 0) throw std::logic_error(std::string(what) + " leaves the expected block");
        mat.add(row, col, c);
    }
}

SparseMatrix spmul(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw std::logic_error("matrix product shape mismatch");
    SparseMatrix out(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (const auto& [k, v] : a.row[static_cast<size_t>(r)])
            for (const auto& [c, w] : b.row[static_cast<size_t>(k)]) out.add(r, c, v * w);
    return out;
}

bool matrix_zero(const SparseMatrix& m) {
    for (const auto& r : m.row)
        if (!r.empty()) return false;
    return true;
}

bool is_natural_word(const DGPresentation& ext, const Mono& m) {
    return !m.empty() && ext.gens[static_cast<size_t>(m.back().gen)].kind == GenKind::Module;
}

std::vector<Mono> natural_basis(const DGPresentation& ext, int n, int w) {
    std::vector<Mono> out;
    for (const Mono& m : block_basis(ext, n, w))
        if (is_natural_word(ext, m)) out.push_back(m);
    return out;
}

std::vector<Mono> cyclic_block(const DGPresentation& r, int n, int w) {
    std::vector<Mono> out;
    for (const Mono& m : block_basis(r, n, w)) {
        CyclicWordCanon c = cyclic_word_reduce(r, m);
        if (!c.zero && c.word == m) out.push_back(m);
    }
    return out;
}

} // namespace

Poly OneForms::del(const Poly& r) const {
    Poly out;
    for (const auto& [m, c] : r.terms) {
        std::vector<int> letters = flatten(m);
        for (size_t pos = 0; pos < letters.size(); ++pos) {
            if (ext.gens[static_cast<size_t>(letters[pos])].kind == GenKind::Module)
                throw std::invalid_argument("the universal derivation applies to algebra words");
            std::vector<int> word(letters.begin(), letters.begin() + static_cast<long>(pos));
            word.push_back(dgen[static_cast<size_t>(letters[pos])]);
            word.insert(word.end(), letters.begin() + static_cast<long>(pos) + 1, letters.end());
            add_term(out, word_of(word), c);
        }
    }
    return out;
}

Poly OneForms::natural_reduce(const Poly& w) const {
    Poly out;
    for (const auto& [m, c] : w.terms) {
        std::vector<int> letters = flatten(m);
        size_t pos = letters.size();
        int count = 0;
        for (size_t i = 0; i < letters.size(); ++i)
            if (ext.gens[static_cast<size_t>(letters[i])].kind == GenKind::Module) {
                pos = i;
                ++count;
            }
        if (count != 1)
            throw std::invalid_argument("expected exactly one form symbol per word");
        int par_b = letters_parity(ext, letters, pos + 1, letters.size());
        int par_am = letters_parity(ext, letters, 0, pos + 1);
        int sign = (par_b == 1 && par_am == 1) ? -1 : 1;
        std::vector<int> rotated(letters.begin() + static_cast<long>(pos) + 1, letters.end());
        rotated.insert(rotated.end(), letters.begin(),
                       letters.begin() + static_cast<long>(pos) + 1);
        add_term(out, word_of(rotated), c * sign);
    }
    return out;
}

Poly OneForms::beta(const Poly& form) const {
    Poly nr = natural_reduce(form);
    Poly out;
    for (const auto& [m, c] : nr.terms) {
        std::vector<int> letters = flatten(m);
        int dg = letters.back();
        int src = -1;
        for (size_t g = 0; g < dgen.size(); ++g)
            if (dgen[g] == dg) src = static_cast<int>(g);
        if (src < 0) throw std::logic_error("unknown form symbol");
        std::vector<int> u(letters.begin(), letters.end() - 1);
        std::vector<int> ug = u;
        ug.push_back(src);
        add_term(out, word_of(ug), c);
        int par_u = letters_parity(ext, u, 0, u.size());
        int par_g = ext.gens[static_cast<size_t>(src)].homdeg % 2;
        std::vector<int> gu{src};
        gu.insert(gu.end(), u.begin(), u.end());
        add_term(out, word_of(gu), (par_u == 1 && par_g == 1) ? c : -c);
    }
    return out;
}

Poly OneForms::dbar(const Poly& r) const { return natural_reduce(del(r)); }

OneForms one_forms(const DGPresentation& r) {
    if (r.flavor != Flavor::NC)
        throw std::invalid_argument("one-forms need a free presentation");
    for (const auto& g : r.gens)
        if (g.kind == GenKind::Module)
            throw std::invalid_argument("the presentation already carries module generators");
    OneForms f;
    f.ext = r;
    f.source_gens = static_cast<int>(r.gens.size());
    for (const auto& g : r.gens) {
        std::string name = "d" + g.name;
        if (f.ext.find(name) >= 0)
            throw std::runtime_error("form symbol name '" + name + "' collides with a generator");
        f.dgen.push_back(
            f.ext.add_generator({name, g.homdeg, g.weight, GenKind::Module}));
    }
    for (size_t g = 0; g < r.gens.size(); ++g)
        if (!r.diff[g].is_zero())
            f.ext.set_diff(f.dgen[g], f.del(r.diff[g]));
    return f;
}

CyclicWordCanon cyclic_word_reduce(const DGPresentation& p, const Mono& word) {
    CyclicWordCanon canon;
    canon.word = word;
    std::vector<int> letters = flatten(word);
    if (letters.empty()) return canon;
    int total = letters_parity(p, letters, 0, letters.size());

    std::vector<int> cur = letters;
    int cur_sign = 1;
    std::vector<int> best = letters;
    int best_sign = 1;
    std::map<std::vector<int>, int> seen{{letters, 1}};
    for (size_t k = 1; k < letters.size(); ++k) {
        int pg = p.gens[static_cast<size_t>(cur[0])].homdeg % 2;
        int pv = (total - pg) % 2 != 0 ? 1 : 0;
        if (pg == 1 && pv == 1) cur_sign = -cur_sign;
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        auto [it, fresh] = seen.emplace(cur, cur_sign);
        if (!fresh && it->second != cur_sign) canon.zero = true;
        if (cur < best) {
            best = cur;
            best_sign = cur_sign;
        }
    }
    canon.word = word_of(best);
    canon.sign = best_sign;
    return canon;
}

Poly tau(const DGPresentation& p, const Poly& q) {
    Poly out;
    for (const auto& [m, c] : q.terms) {
        if (m.empty()) continue;
        CyclicWordCanon canon = cyclic_word_reduce(p, m);
        if (canon.zero) continue;
        add_term(out, canon.word, c * canon.sign);
    }
    return out;
}

std::vector<ExactnessCell> periodicity_exactness(const DGPresentation& r, int n_max,
                                                 int w_max) {
    OneForms of = one_forms(r);
    std::vector<ExactnessCell> out;
    for (int n = 0; n <= n_max; ++n)
        for (int w = 1; w <= w_max; ++w) {
            std::vector<Mono> c2 = block_basis(r, n, w);
            std::vector<Mono> c3 = cyclic_block(r, n, w);
            std::vector<Mono> c1 = natural_basis(of.ext, n, w);

            SparseMatrix mt(static_cast<int>(c3.size()), static_cast<int>(c2.size()));
            for (size_t c = 0; c < c2.size(); ++c)
                expand_into(tau(r, poly_of(c2[c])), c3, static_cast<int>(c), mt, "tau");
            SparseMatrix mb(static_cast<int>(c2.size()), static_cast<int>(c1.size()));
            for (size_t c = 0; c < c1.size(); ++c)
                expand_into(of.beta(poly_of(c1[c])), c2, static_cast<int>(c), mb, "beta");
            SparseMatrix md(static_cast<int>(c1.size()), static_cast<int>(c3.size()));
            for (size_t c = 0; c < c3.size(); ++c)
                expand_into(of.dbar(poly_of(c3[c])), c1, static_cast<int>(c), md, "dbar");

            int rank_t = rank_of(mt);
            int rank_b = rank_of(mb);
            int rank_d = rank_of(md);

            ExactnessCell cell;
            cell.n = n;
            cell.w = w;
            auto fail = [&](const std::string& note) {
                cell.exact = false;
                if (cell.note.empty()) cell.note = note;
            };
            if (rank_t != static_cast<int>(c3.size())) fail("tau is not surjective");
            if (!matrix_zero(spmul(mt, mb))) fail("tau beta != 0");
            if (static_cast<int>(c2.size()) - rank_t != rank_b) fail("ker tau != im beta");
            if (!matrix_zero(spmul(mb, md))) fail("beta dbar != 0");
            if (static_cast<int>(c1.size()) - rank_b != rank_d) fail("ker beta != im dbar");
            if (rank_d != static_cast<int>(c3.size())) fail("dbar is not injective");
            out.push_back(cell);
        }
    return out;
}

namespace {

// One side of a periodicity complex: column bases and the four maps that
// assemble its total differential.
struct TotSide {
    std::function<std::vector<Mono>(int, int)> even_basis, odd_basis;
    std::function<Poly(const Mono&)> even_vert, odd_vert;   // unsigned d
    std::function<Poly(const Mono&)> even_horiz, odd_horiz; // to the previous column
};

SparseMatrix total_matrix(const TotSide& side, int big_n, int w, int col_max) {
    struct Block {
        int col = 0;
        std::vector<Mono> basis;
        int offset = 0;
    };
    auto blocks_at = [&](int total_deg) {
        std::vector<Block> blocks;
        int offset = 0;
        for (int j = 0; j <= col_max; ++j) {
            int m = total_deg - j;
            if (m < 0) continue;
            Block b;
            b.col = j;
            b.basis = j % 2 == 0 ? side.even_basis(m, w) : side.odd_basis(m, w);
            b.offset = offset;
            offset += static_cast<int>(b.basis.size());
            blocks.push_back(std::move(b));
        }
        return blocks;
    };
    std::vector<Block> src = blocks_at(big_n);
    std::vector<Block> dst = blocks_at(big_n - 1);
    auto dst_block = [&](int col) -> const Block* {
        for (const Block& b : dst)
            if (b.col == col) return &b;
        return nullptr;
    };
    int rows = 0, cols = 0;
    for (const Block& b : dst) rows += static_cast<int>(b.basis.size());
    for (const Block& b : src) cols += static_cast<int>(b.basis.size());

    SparseMatrix mat(rows, cols);
    for (const Block& b : src)
        for (size_t k = 0; k < b.basis.size(); ++k) {
            int col = b.offset + static_cast<int>(k);
            bool even = b.col % 2 == 0;
            Poly vert = even ? side.even_vert(b.basis[k]) : side.odd_vert(b.basis[k]);
            if (const Block* t = dst_block(b.col); t && !vert.is_zero()) {
                int vs = b.col % 2 == 0 ? 1 : -1;
                for (const auto& [m, c] : vert.terms) {
                    int row = find_mono(t->basis, m);
                    if (row < 0) throw std::logic_error("vertical image leaves its column");
                    mat.add(t->offset + row, col, c * vs);
                }
            }
            if (b.col >= 1) {
                Poly horiz = even ? side.even_horiz(b.basis[k]) : side.odd_horiz(b.basis[k]);
                if (const Block* t = dst_block(b.col - 1); t && !horiz.is_zero())
                    for (const auto& [m, c] : horiz.terms) {
                        int row = find_mono(t->basis, m);
                        if (row < 0)
                            throw std::logic_error("horizontal image leaves its column");
                        mat.add(t->offset + row, col, c);
                    }
            }
        }
    return mat;
}

} // namespace

XComplexReport x_complexes(const DGPresentation& r, int d, int n_max, int w_max,
                           int col_max) {
    XComplexReport report;
    OneForms of = one_forms(r);

    TotSide nc;
    nc.even_basis = [&](int n, int w) { return block_basis(r, n, w); };
    nc.odd_basis = [&](int n, int w) { return natural_basis(of.ext, n, w); };
    nc.even_vert = [&](const Mono& m) { return apply_d(of.ext, poly_of(m)); };
    nc.odd_vert = [&](const Mono& m) {
        return of.natural_reduce(apply_d(of.ext, poly_of(m)));
    };
    nc.even_horiz = [&](const Mono& m) { return of.dbar(poly_of(m)); };
    nc.odd_horiz = [&](const Mono& m) { return of.beta(poly_of(m)); };

    std::vector<std::pair<std::string, TotSide>> sides;
    sides.emplace_back("X+(R)", std::move(nc));

    VForms vf;
    if (d > 0) {
        vf = v_forms(r, d);
        TotSide v;
        v.even_basis = [&](int n, int w) { return block_basis(vf.scheme.entries, n, w); };
        v.odd_basis = [&](int n, int w) { return block_basis(vf.forms.entries, n, w); };
        v.even_vert = [&](const Mono& m) { return apply_d(vf.scheme.entries, poly_of(m)); };
        v.odd_vert = [&](const Mono& m) { return apply_d(vf.forms.entries, poly_of(m)); };
        v.even_horiz = [&](const Mono& m) { return vf.del_v(poly_of(m)); };
        v.odd_horiz = [&](const Mono&) { return Poly{}; };
        sides.emplace_back("X+(R)_V", std::move(v));
    }

    for (const auto& [label, side] : sides)
        for (int n = 2; n <= n_max; ++n)
            for (int w = 1; w <= w_max; ++w) {
                SparseMatrix dn = total_matrix(side, n, w, col_max);
                SparseMatrix dn1 = total_matrix(side, n - 1, w, col_max);
                ++report.blocks_checked;
                if (!matrix_zero(spmul(dn1, dn))) {
                    report.d_squared_zero = false;
                    report.failures.push_back(label + ": D^2 != 0 at (n=" + std::to_string(n) +
                                              ", w=" + std::to_string(w) + ")");
                }
            }
    return report;
}

Poly VForms::del_v(const Poly& rv) const {
    return apply_derivation(forms.entries, de_rham, rv);
}

VForms v_forms(const DGPresentation& r, int d) {
    VForms vf;
    OneForms of = one_forms(r);
    vf.scheme = matrix_reduce(r, d);
    vf.forms = bimodule_entries(of.ext, d);
    // Form symbols keep the homological degree of their sources, so the
    // de Rham derivation is even, matching OneForms::del.
    vf.de_rham.parity = 0;
    vf.de_rham.images.resize(vf.forms.entries.gens.size());
    for (size_t g = 0; g < r.gens.size(); ++g)
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j)
                vf.de_rham.images[static_cast<size_t>(vf.forms.entry(static_cast<int>(g), i, j))] =
                    poly_of(mono_of(vf.forms.entry(of.dgen[g], i, j)));
    return vf;
}

SvBvResult sv_bv(const VForms& vf, const VClass& cls, int w_max) {
    if (cls.comps.empty()) throw std::invalid_argument("empty periodicity class");
    SvBvResult res;
    res.bv = vf.del_v(cls.comps[0]);
    res.sv.n = cls.n - 2;
    if (cls.n < 2) return res;

    Poly omega = cls.comps.size() >= 2 ? cls.comps[1] : Poly{};
    Poly rhs = apply_d(vf.forms.entries, omega);

    std::vector<Mono> cols;
    for (int w = 1; w <= w_max; ++w) {
        std::vector<Mono> blk = block_basis(vf.scheme.entries, cls.n - 2, w);
        cols.insert(cols.end(), blk.begin(), blk.end());
    }
    std::vector<Mono> rows;
    for (int w = 1; w <= w_max; ++w) {
        std::vector<Mono> blk = block_basis(vf.forms.entries, cls.n - 2, w);
        rows.insert(rows.end(), blk.begin(), blk.end());
    }
    std::sort(rows.begin(), rows.end(), mono_less);

    SparseMatrix mat(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
        expand_into(vf.del_v(poly_of(cols[c])), rows, static_cast<int>(c), mat, "del_V");
    std::vector<Rational> rv(rows.size(), Rational(0));
    for (const auto& [m, c] : rhs.terms) {
        int row = find_mono(rows, m);
        if (row < 0) throw std::logic_error("d(omega) leaves the expected block");
        rv[static_cast<size_t>(row)] = c;
    }
    Reduction red = reduce(mat);
    auto sol = red.solve(rv);
    if (!sol)
        throw std::runtime_error("the class does not lift through del_V");
    for (size_t c = 0; c < cols.size(); ++c)
        if ((*sol)[c] != 0) add_term(res.lifted_r, cols[c], (*sol)[c]);

    res.sv.comps.push_back(res.lifted_r);
    for (size_t k = 2; k < cls.comps.size(); ++k) res.sv.comps.push_back(cls.comps[k]);
    return res;
}

VClass extended_trace(const VForms& vf, const OneForms& forms, const Poly& r_cycle,
                      Poly* tail) {
    VClass out;
    if (tail) *tail = Poly{};
    if (r_cycle.is_zero()) return out;
    const DGPresentation& ext = forms.ext;
    const DGPresentation& r = vf.scheme.source;
    int n = homdeg(ext, r_cycle);
    int w = weight(ext, r_cycle);
    out.n = n;

    auto tr = [&](const Poly& q) { return matrix_trace(evaluate_matrix(vf.forms, q, false)); };

    out.comps.push_back(tr(r_cycle));
    Poly cur = r_cycle;
    for (int m = n; m >= 1; m -= 2) {
        std::vector<Mono> omega_basis = natural_basis(ext, m - 1, w);
        std::vector<Mono> beta_rows = block_basis(r, m - 1, w);
        SparseMatrix mb(static_cast<int>(beta_rows.size()),
                        static_cast<int>(omega_basis.size()));
        for (size_t c = 0; c < omega_basis.size(); ++c)
            expand_into(forms.beta(poly_of(omega_basis[c])), beta_rows, static_cast<int>(c),
                        mb, "beta");
        Poly rhs_b = negate(apply_d(ext, cur));
        std::vector<Rational> rv(beta_rows.size(), Rational(0));
        for (const auto& [mm, c] : rhs_b.terms) {
            int row = find_mono(beta_rows, mm);
            if (row < 0) throw std::logic_error("d of the cycle leaves its block");
            rv[static_cast<size_t>(row)] = c;
        }
        auto sol = reduce(mb).solve(rv);
        if (!sol)
            throw std::runtime_error("no form lift at degree " + std::to_string(m - 1) +
                                     ": the input is not a cyclic cycle");
        Poly omega;
        for (size_t c = 0; c < omega_basis.size(); ++c)
            if ((*sol)[c] != 0) add_term(omega, omega_basis[c], (*sol)[c]);
        out.comps.push_back(tr(omega));

        if (m - 2 < 0) break;
        std::vector<Mono> r_basis = block_basis(r, m - 2, w);
        std::vector<Mono> form_rows = natural_basis(ext, m - 2, w);
        SparseMatrix md(static_cast<int>(form_rows.size()), static_cast<int>(r_basis.size()));
        for (size_t c = 0; c < r_basis.size(); ++c)
            expand_into(forms.dbar(poly_of(r_basis[c])), form_rows, static_cast<int>(c), md,
                        "dbar");
        Poly rhs_d = forms.natural_reduce(apply_d(ext, omega));
        std::vector<Rational> dv(form_rows.size(), Rational(0));
        for (const auto& [mm, c] : rhs_d.terms) {
            int row = find_mono(form_rows, mm);
            if (row < 0) throw std::logic_error("d(omega) leaves its block");
            dv[static_cast<size_t>(row)] = c;
        }
        auto lift = reduce(md).solve(dv);
        if (!lift)
            throw std::runtime_error("no lift through dbar at degree " + std::to_string(m - 2));
        cur = Poly{};
        for (size_t c = 0; c < r_basis.size(); ++c)
            if ((*lift)[c] != 0) add_term(cur, r_basis[c], (*lift)[c]);
        if (tail) *tail = cur;
        if (m - 2 == 0) break;
    }
    return out;
}

namespace {

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    size_t d = a.size();
    RatMatrix out(d, std::vector<Rational>(d, Rational(0)));
    for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

RatMatrix mat_id(size_t d) {
    RatMatrix out(d, std::vector<Rational>(d, Rational(0)));
    for (size_t i = 0; i < d; ++i) out[i][i] = 1;
    return out;
}

bool mat_zero(const RatMatrix& a) {
    for (const auto& row : a)
        for (const auto& v : row)
            if (v != 0) return false;
    return true;
}

} // namespace

TangentResult tangent_complex(const std::vector<Poly>& relations, const DGPresentation& r,
                              int d, const std::map<std::string, RatMatrix>& rho) {
    if (d < 1) throw std::invalid_argument("matrix dimension must be positive");
    size_t ud = static_cast<size_t>(d);

    std::vector<RatMatrix> rep(r.gens.size());
    for (size_t g = 0; g < r.gens.size(); ++g) {
        if (r.gens[g].homdeg != 0) continue;
        auto it = rho.find(r.gens[g].name);
        if (it == rho.end())
            throw std::invalid_argument("no representation value for generator '" +
                                        r.gens[g].name + "'");
        if (it->second.size() != ud)
            throw std::invalid_argument("representation value for '" + r.gens[g].name +
                                        "' has the wrong size");
        for (const auto& row : it->second)
            if (row.size() != ud)
                throw std::invalid_argument("representation value for '" + r.gens[g].name +
                                            "' has the wrong size");
        rep[g] = it->second;
    }

    auto eval_range = [&](const std::vector<int>& letters, size_t from, size_t to,
                          bool& ok) -> RatMatrix {
        RatMatrix acc = mat_id(ud);
        for (size_t i = from; i < to; ++i) {
            if (r.gens[static_cast<size_t>(letters[i])].homdeg != 0) {
                ok = false;
                return acc;
            }
            acc = mat_mul(acc, rep[static_cast<size_t>(letters[i])]);
        }
        ok = true;
        return acc;
    };

    for (const Poly& rel : relations) {
        RatMatrix total(ud, std::vector<Rational>(ud, Rational(0)));
        for (const auto& [m, c] : rel.terms) {
            std::vector<int> letters = flatten(m);
            bool ok = true;
            RatMatrix v = eval_range(letters, 0, letters.size(), ok);
            if (!ok) throw std::invalid_argument("relations must sit in degree 0");
            for (size_t i = 0; i < ud; ++i)
                for (size_t j = 0; j < ud; ++j) total[i][j] += c * v[i][j];
        }
        if (!mat_zero(total))
            throw std::invalid_argument("the representation does not satisfy the relations");
    }

    int n_top = 0;
    for (const auto& g : r.gens) n_top = std::max(n_top, g.homdeg);
    std::vector<std::vector<int>> by_deg(static_cast<size_t>(n_top) + 1);
    for (size_t g = 0; g < r.gens.size(); ++g)
        by_deg[static_cast<size_t>(r.gens[g].homdeg)].push_back(static_cast<int>(g));

    // Columns of level n: one matrix unit per degree-n generator; the
    // differential substitutes it into every admissible slot of d(h).
    auto level_dim = [&](int n) {
        return static_cast<int>(by_deg[static_cast<size_t>(n)].size()) * d * d;
    };
    auto col_of = [&](int n, int gen, int i, int j) {
        const auto& lvl = by_deg[static_cast<size_t>(n)];
        int pos = static_cast<int>(std::find(lvl.begin(), lvl.end(), gen) - lvl.begin());
        return pos * d * d + i * d + j;
    };

    std::vector<SparseMatrix> maps; // maps[n]: level n -> level n+1
    for (int n = 0; n < n_top; ++n) {
        SparseMatrix mat(level_dim(n + 1), level_dim(n));
        for (int h : by_deg[static_cast<size_t>(n) + 1]) {
            for (const auto& [m, coeff] : r.diff[static_cast<size_t>(h)].terms) {
                std::vector<int> letters = flatten(m);
                for (size_t pos = 0; pos < letters.size(); ++pos) {
                    int g = letters[pos];
                    if (r.gens[static_cast<size_t>(g)].homdeg != n) continue;
                    bool ok_pre = true, ok_suf = true;
                    RatMatrix pre = eval_range(letters, 0, pos, ok_pre);
                    RatMatrix suf = eval_range(letters, pos + 1, letters.size(), ok_suf);
                    if (!ok_pre || !ok_suf) continue;
                    for (int i = 0; i < d; ++i)
                        for (int j = 0; j < d; ++j)
                            for (int a = 0; a < d; ++a)
                                for (int b = 0; b < d; ++b) {
                                    Rational v = coeff *
                                                 pre[static_cast<size_t>(i)][static_cast<size_t>(a)] *
                                                 suf[static_cast<size_t>(b)][static_cast<size_t>(j)];
                                    if (v != 0)
                                        mat.add(col_of(n + 1, h, i, j), col_of(n, g, a, b), v);
                                }
                }
            }
        }
        maps.push_back(std::move(mat));
    }

    TangentResult res;
    for (int n = 0; n <= n_top; ++n) {
        int cycles = n < n_top ? level_dim(n) - rank_of(maps[static_cast<size_t>(n)])
                               : level_dim(n);
        int boundaries = n > 0 ? rank_of(maps[static_cast<size_t>(n) - 1]) : 0;
        res.dims.push_back(cycles - boundaries);
    }
    return res;
}

} // namespace drep
