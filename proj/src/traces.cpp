#include "drep/traces.hpp"

#include <random>
#include <stdexcept>

namespace drep {

namespace {

CycWord rotate_right(const CycWord& w) {
    CycWord r;
    r.reserve(w.size());
    r.push_back(w.back());
    r.insert(r.end(), w.begin(), w.end() - 1);
    return r;
}

RatMatrix invert(const RatMatrix& g) {
    int d = static_cast<int>(g.size());
    SparseMatrix m(d, d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(g[static_cast<size_t>(i)].size()) != d)
            throw std::invalid_argument("conjugating matrix is not square");
        for (int j = 0; j < d; ++j) m.set(i, j, g[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }
    Reduction red = reduce(m);
    if (red.rank != d) throw std::invalid_argument("conjugating matrix is singular");
    RatMatrix inv(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d)));
    for (int j = 0; j < d; ++j) {
        std::vector<Rational> e(static_cast<size_t>(d), Rational(0));
        e[static_cast<size_t>(j)] = 1;
        auto col = red.solve(e);
        if (!col) throw std::logic_error("full-rank solve failed");
        for (int i = 0; i < d; ++i) inv[static_cast<size_t>(i)][static_cast<size_t>(j)] = (*col)[static_cast<size_t>(i)];
    }
    return inv;
}

} // namespace

Poly trace_word(const RepScheme& s, const ResolutionData& res, const AInftyMorphism& f,
                const CycWord& word) {
    if (word.empty()) throw std::invalid_argument("empty cyclic word");
    int n = static_cast<int>(word.size()) - 1;
    int rot_sign = n % 2 == 0 ? 1 : -1;
    Poly out;
    CycWord cur = word;
    int sign = 1;
    for (int k = 0; k <= n; ++k) {
        Poly fr = f.eval(res, cur);
        if (!fr.is_zero()) {
            PolyMatrix m = evaluate_matrix(s, fr, false);
            out = add(out, scale(Rational(sign), matrix_trace(m)));
        }
        cur = rotate_right(cur);
        sign *= rot_sign;
    }
    return out;
}

Poly trace_chain(const RepScheme& s, const ResolutionData& res, const AInftyMorphism& f,
                 const std::map<CycWord, Rational>& chain) {
    Poly out;
    for (const auto& [word, c] : chain)
        out = add(out, scale(c, trace_word(s, res, f, word)));
    return out;
}

Poly ch2_trace(const RepScheme& s, const ResolutionData& res, const AInftyMorphism& f, int a,
               int b) {
    Poly diff = sub(f.eval(res, CycWord{a, b}), f.eval(res, CycWord{b, a}));
    return matrix_trace(evaluate_matrix(s, diff, false));
}

Poly ntrace(const RepScheme& s, const ResolutionData& res, int a) {
    Poly lift = poly_of(res.lift_basis(a));
    return matrix_trace(evaluate_matrix(s, lift, true));
}

Poly gl_substitute(const RepScheme& s, const RatMatrix& g, const Poly& value) {
    int d = s.dim;
    if (static_cast<int>(g.size()) != d)
        throw std::invalid_argument("conjugating matrix has the wrong size");
    RatMatrix gi = invert(g);

    // x_ij -> (g^{-1} x g)_ij for every source generator, extended
    // multiplicatively.
    std::vector<Poly> sub_gen(s.entries.gens.size());
    for (size_t src = 0; src < s.source.gens.size(); ++src)
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
                Poly p;
                for (int k = 1; k <= d; ++k)
                    for (int l = 1; l <= d; ++l) {
                        Rational c = gi[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] *
                                     g[static_cast<size_t>(l - 1)][static_cast<size_t>(j - 1)];
                        if (c != 0)
                            add_term(p, mono_of(s.entry(static_cast<int>(src), k, l)), c);
                    }
                sub_gen[static_cast<size_t>(s.entry(static_cast<int>(src), i, j))] = p;
            }

    Poly out;
    for (const auto& [m, coeff] : value.terms) {
        Poly acc = unit_poly();
        for (const Run& run : m)
            for (int e = 0; e < run.exp; ++e)
                acc = mul(s.entries, acc, sub_gen[static_cast<size_t>(run.gen)]);
        out = add(out, scale(coeff, acc));
    }
    return out;
}

GLReport gl_invariance_check(const RepScheme& s, const std::vector<Poly>& values, int samples,
                             unsigned seed) {
    GLReport report;
    report.pass = true;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> entry(-3, 3);
    int d = s.dim;

    Poly probe;
    bool have_probe = d >= 2 && !s.source.gens.empty();
    if (have_probe) probe = poly_of(mono_of(s.entry(0, 1, 2)));

    for (int smp = 0; smp < samples; ++smp) {
        RatMatrix g;
        for (;;) {
            g.assign(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d)));
            SparseMatrix m(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    g[static_cast<size_t>(i)][static_cast<size_t>(j)] = entry(rng);
                    m.set(i, j, g[static_cast<size_t>(i)][static_cast<size_t>(j)]);
                }
            if (rank_of(m) == d) break;
        }
        ++report.samples;
        for (const Poly& v : values)
            if (!(gl_substitute(s, g, v) == v)) report.pass = false;
        if (have_probe && !(gl_substitute(s, g, probe) == probe))
            report.negative_control_moved = true;
    }
    return report;
}

} // namespace drep
