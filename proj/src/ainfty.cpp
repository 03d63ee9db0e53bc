#include "drep/ainfty.hpp"

#include "drep/homology.hpp"

#include <algorithm>
#include <stdexcept>

namespace drep {

namespace {

std::vector<int> flatten_mono(const Mono& m) {
    std::vector<int> letters;
    for (const Run& r : m)
        for (int k = 0; k < r.exp; ++k) letters.push_back(r.gen);
    return letters;
}

int find_mono(const std::vector<Mono>& sorted_basis, const Mono& m) {
    auto it = std::lower_bound(sorted_basis.begin(), sorted_basis.end(), m, mono_less);
    if (it == sorted_basis.end() || !(*it == m)) return -1;
    return static_cast<int>(it - sorted_basis.begin());
}

Mono word_to_mono(const std::vector<int>& letters) {
    Mono m;
    for (int g : letters) {
        if (!m.empty() && m.back().gen == g)
            ++m.back().exp;
        else
            m.push_back({g, 1});
    }
    return m;
}

std::string word_label(const BasedAlgebra& a, const CycWord& w) {
    std::string s = "(";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ", ";
        s += a.name_of(w[i]);
    }
    return s + ")";
}

int word_weight(const BasedAlgebra& a, const CycWord& w) {
    int s = 0;
    for (int g : w) s += a.weights[static_cast<size_t>(g)];
    return s;
}

void enumerate_nonunit_words(const BasedAlgebra& a, int len, int w_max, CycWord& word,
                             std::vector<CycWord>& out) {
    if (static_cast<int>(word.size()) == len) {
        out.push_back(word);
        return;
    }
    for (int g = 0; g < a.dim(); ++g) {
        if (g == a.unit) continue;
        if (word_weight(a, word) + a.weights[static_cast<size_t>(g)] > w_max) continue;
        word.push_back(g);
        enumerate_nonunit_words(a, len, w_max, word, out);
        word.pop_back();
    }
}

} // namespace

AVec ResolutionData::project_word(const Mono& word) const {
    for (const Run& run : word)
        if (r.gens[static_cast<size_t>(run.gen)].homdeg != 0) return {};
    AVec v{{a.unit, Rational(1)}};
    for (int letter : flatten_mono(word)) {
        int al = -1;
        for (size_t i = 0; i < rgen_of_agen.size(); ++i)
            if (rgen_of_agen[i] == letter) al = static_cast<int>(i);
        if (al < 0)
            throw std::runtime_error("degree-0 generator '" +
                                     r.gens[static_cast<size_t>(letter)].name +
                                     "' has no image in the algebra");
        int bi = a.index_of({al});
        if (bi < 0)
            throw std::runtime_error("generator '" + a.gen_names[static_cast<size_t>(al)] +
                                     "' is not an algebra basis word");
        AVec next;
        for (const auto& [i, c] : v) avec_add(next, a.mul(i, bi), c);
        v = std::move(next);
    }
    return v;
}

AVec ResolutionData::project(const Poly& q) const {
    AVec out;
    for (const auto& [m, c] : q.terms) {
        AVec w = project_word(m);
        avec_add(out, w, c);
    }
    return out;
}

Mono ResolutionData::lift_basis(int basis_index) const {
    std::vector<int> letters;
    for (int al : a.basis[static_cast<size_t>(basis_index)])
        letters.push_back(rgen_of_agen[static_cast<size_t>(al)]);
    return word_to_mono(letters);
}

ResolutionData make_resolution_data(const DGPresentation& r, const BasedAlgebra& a) {
    ResolutionData res;
    res.r = r;
    res.a = a;
    for (const auto& g : r.gens)
        if (g.kind == GenKind::Module)
            throw std::runtime_error("resolutions carry no module generators");
    for (size_t i = 0; i < a.gen_names.size(); ++i) {
        int rg = r.find(a.gen_names[i]);
        if (rg < 0)
            throw std::runtime_error("algebra generator '" + a.gen_names[i] +
                                     "' is missing from the presentation");
        const Generator& g = r.gens[static_cast<size_t>(rg)];
        if (g.homdeg != 0)
            throw std::runtime_error("algebra generator '" + a.gen_names[i] +
                                     "' has positive degree in the presentation");
        if (g.weight != a.gen_weights[i])
            throw std::runtime_error("weight mismatch for generator '" + a.gen_names[i] + "'");
        res.rgen_of_agen.push_back(rg);
    }
    for (size_t g = 0; g < r.gens.size(); ++g)
        if (r.gens[g].homdeg == 0 &&
            std::find(res.rgen_of_agen.begin(), res.rgen_of_agen.end(),
                      static_cast<int>(g)) == res.rgen_of_agen.end())
            throw std::runtime_error("degree-0 generator '" + r.gens[g].name +
                                     "' has no algebra counterpart");
    return res;
}

Poly ContractingHomotopy::apply(const Poly& q) const {
    // A monomial belongs to exactly one block, so search the covered blocks.
    Poly out;
    for (const auto& [m, c] : q.terms) {
        bool found = false;
        for (const auto& [key, basis] : bases) {
            int idx = find_mono(basis, m);
            if (idx < 0) continue;
            out = add(out, scale(c, images.at(key)[static_cast<size_t>(idx)]));
            found = true;
            break;
        }
        if (!found) throw std::out_of_range("homotopy applied outside the built blocks");
    }
    return out;
}

ContractingHomotopy build_homotopy(const ResolutionData& res, int n_max, int w_max,
                                   PivotPolicy policy) {
    const DGPresentation& r = res.r;
    if (!weight_preserving(r))
        throw std::runtime_error("the homotopy needs a weight-preserving differential");

    ContractingHomotopy h;
    h.n_max = n_max;
    h.w_max = w_max;
    for (int n = 0; n <= n_max; ++n)
        for (int w = 0; w <= w_max; ++w) {
            std::vector<Mono> tgt = block_basis(r, n, w);
            std::vector<Mono> src = block_basis(r, n + 1, w);
            SparseMatrix mat(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
            for (size_t c = 0; c < src.size(); ++c) {
                Poly dm = apply_d(r, poly_of(src[c]));
                for (const auto& [t, coeff] : dm.terms) {
                    int row = find_mono(tgt, t);
                    if (row < 0)
                        throw std::logic_error("differential leaves its weight block");
                    mat.set(row, static_cast<int>(c), coeff);
                }
            }
            Reduction red = reduce(mat, policy);

            std::vector<Poly> imgs(tgt.size());
            for (size_t k = 0; k < tgt.size(); ++k) {
                Poly rhs_poly = poly_of(tgt[k]);
                if (n == 0) {
                    AVec pi = res.project_word(tgt[k]);
                    for (const auto& [i, c] : pi)
                        add_term(rhs_poly, res.lift_basis(i), -c);
                } else {
                    Poly dm = apply_d(r, poly_of(tgt[k]));
                    rhs_poly = sub(rhs_poly, h.apply(dm));
                }
                std::vector<Rational> rhs(tgt.size(), Rational(0));
                for (const auto& [m, c] : rhs_poly.terms) {
                    int row = find_mono(tgt, m);
                    if (row < 0) throw std::logic_error("homotopy right side leaves the block");
                    rhs[static_cast<size_t>(row)] = c;
                }
                auto sol = red.solve(rhs);
                if (!sol)
                    throw std::runtime_error(
                        "no contracting homotopy in block (n=" + std::to_string(n) +
                        ", w=" + std::to_string(w) + "): the presentation fails the " +
                        "resolution property there");
                for (size_t c = 0; c < src.size(); ++c)
                    if ((*sol)[c] != 0) add_term(imgs[k], src[c], (*sol)[c]);
            }
            h.bases.emplace(std::make_pair(n, w), std::move(tgt));
            h.images.emplace(std::make_pair(n, w), std::move(imgs));
        }
    return h;
}

Poly AInftyMorphism::eval(const ResolutionData& res, const CycWord& word) const {
    if (word.empty()) throw std::invalid_argument("empty tensor word");
    for (int g : word)
        if (g < 0 || g >= res.a.dim()) throw std::out_of_range("basis index out of range");
    if (static_cast<int>(word.size()) > n_max || word_weight(res.a, word) > w_max)
        throw std::out_of_range("tensor word outside the solved range");
    bool has_unit = false;
    for (int g : word) has_unit |= g == res.a.unit;
    if (has_unit) return word.size() == 1 ? unit_poly() : Poly{};
    auto it = f.find(word);
    if (it == f.end()) throw std::logic_error("missing A-infinity component");
    return it->second;
}

AInftyMorphism solve_components(const ResolutionData& res, const ContractingHomotopy& h,
                                int n_max, int w_max) {
    if (h.n_max < std::max(n_max - 2, 0) || h.w_max < w_max)
        throw std::invalid_argument("the homotopy covers too few blocks");
    AInftyMorphism out;
    out.n_max = n_max;
    out.w_max = w_max;

    const BasedAlgebra& a = res.a;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<CycWord> words;
        CycWord scratch;
        enumerate_nonunit_words(a, n, w_max, scratch, words);
        for (const CycWord& w : words) {
            if (n == 1) {
                out.f.emplace(w, poly_of(res.lift_basis(w[0])));
                continue;
            }
            Poly rhs;
            for (int p = 0; p + 1 < n; ++p) {
                for (const auto& [e, c] : a.mul(w[static_cast<size_t>(p)],
                                                w[static_cast<size_t>(p + 1)])) {
                    CycWord shorter;
                    shorter.insert(shorter.end(), w.begin(), w.begin() + p);
                    shorter.push_back(e);
                    shorter.insert(shorter.end(), w.begin() + p + 2, w.end());
                    Poly val;
                    if (e == a.unit)
                        val = n - 1 == 1 ? unit_poly() : Poly{};
                    else
                        val = out.f.at(shorter);
                    if (!val.is_zero())
                        rhs = add(rhs, scale(p % 2 == 0 ? c : -c, val));
                }
            }
            for (int i = 1; i < n; ++i) {
                CycWord pre(w.begin(), w.begin() + i);
                CycWord suf(w.begin() + i, w.end());
                Poly prod = mul(res.r, out.f.at(pre), out.f.at(suf));
                rhs = add(rhs, scale(Rational(i % 2 == 0 ? 1 : -1), prod));
            }
            out.f.emplace(w, h.apply(rhs));
        }
    }
    return out;
}

TwistReport check_twisting(const ResolutionData& res, const AInftyMorphism& f, int n_max,
                           int w_max) {
    TwistReport report;
    const BasedAlgebra& a = res.a;

    for (int i = 0; i < a.dim(); ++i) {
        if (a.weights[static_cast<size_t>(i)] > w_max) continue;
        CycWord w{i};
        AVec pi = res.project(f.eval(res, w));
        AVec expect{{i, Rational(1)}};
        if (pi != expect)
            report.violations.push_back("pi f1 != id at " + a.name_of(i));
    }

    for (int n = 2; n <= n_max; ++n)
        for (int w = 0; w <= w_max; ++w) {
            std::vector<CycWord> src = tensor_words(a, n, w);
            std::vector<CycWord> dst = tensor_words(a, n - 1, w);
            if (src.empty()) continue;
            SparseMatrix bp = bprime_matrix(a, n, src, dst);
            for (size_t col = 0; col < src.size(); ++col) {
                const CycWord& word = src[col];
                bool has_unit = false;
                for (int g : word) has_unit |= g == a.unit;
                if (has_unit) continue;

                Poly lhs = apply_d(res.r, f.eval(res, word));
                Poly rhs;
                for (size_t row = 0; row < dst.size(); ++row) {
                    Rational c = bp.get(static_cast<int>(row), static_cast<int>(col));
                    if (c == 0) continue;
                    rhs = add(rhs, scale(c, f.eval(res, dst[row])));
                }
                for (int i = 1; i < n; ++i) {
                    CycWord pre(word.begin(), word.begin() + i);
                    CycWord suf(word.begin() + i, word.end());
                    Poly prod = mul(res.r, f.eval(res, pre), f.eval(res, suf));
                    rhs = add(rhs, scale(Rational(i % 2 == 0 ? 1 : -1), prod));
                }
                if (!(lhs == rhs))
                    report.violations.push_back("twisting equation fails at f" +
                                                std::to_string(n) + word_label(a, word));
            }
        }
    report.pass = report.violations.empty();
    return report;
}

} // namespace drep
