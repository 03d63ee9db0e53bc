#include "drep/repfun.hpp"

#include <stdexcept>

namespace drep {

namespace {

constexpr char kSep = '_';

void check_source_names(const DGPresentation& r) {
    for (const auto& g : r.gens)
        if (g.name.find(kSep) != std::string::npos)
            throw std::runtime_error("generator '" + g.name +
                                     "' contains the reserved entry separator '_'");
}

RepScheme reduce_impl(const DGPresentation& r, int d, bool allow_module) {
    if (d < 1) throw std::runtime_error("matrix dimension must be positive");
    if (r.flavor != Flavor::NC)
        throw std::runtime_error("matrix reduction expects a free (NC) presentation");
    if (!allow_module)
        for (const auto& g : r.gens)
            if (g.kind == GenKind::Module)
                throw std::runtime_error("unexpected module generator '" + g.name + "'");
    check_source_names(r);

    RepScheme s;
    s.dim = d;
    s.source = r;
    s.entries_nc.flavor = Flavor::NC;
    s.entries.flavor = Flavor::Comm;
    for (const auto& g : r.gens)
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
                Generator e{g.name + kSep + std::to_string(i) + kSep + std::to_string(j),
                            g.homdeg, g.weight, g.kind};
                s.entries_nc.add_generator(e);
                s.entries.add_generator(e);
            }

    for (size_t g = 0; g < r.gens.size(); ++g) {
        if (r.diff[g].is_zero()) continue;
        PolyMatrix dm_nc = evaluate_matrix(s, r.diff[g], true);
        PolyMatrix dm = evaluate_matrix(s, r.diff[g], false);
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
                int e = s.entry(static_cast<int>(g), i, j);
                s.entries_nc.set_diff(e, dm_nc[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]);
                s.entries.set_diff(e, dm[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]);
            }
    }
    return s;
}

} // namespace

int RepScheme::entry(int src_gen, int i, int j) const {
    return src_gen * dim * dim + (i - 1) * dim + (j - 1);
}

std::string RepScheme::entry_name(int src_gen, int i, int j) const {
    return entries.gens[static_cast<size_t>(entry(src_gen, i, j))].name;
}

RepScheme matrix_reduce(const DGPresentation& r, int d) {
    return reduce_impl(r, d, false);
}

RepScheme bimodule_entries(const DGPresentation& r, int d) {
    bool has_module = false;
    for (const auto& g : r.gens) has_module |= g.kind == GenKind::Module;
    if (!has_module) throw std::runtime_error("presentation has no module generators");
    for (size_t g = 0; g < r.gens.size(); ++g)
        if (r.gens[g].kind == GenKind::Module)
            for (const auto& [m, c] : r.diff[g].terms)
                if (module_count(r, m) != 1)
                    throw std::runtime_error("module differential is not bimodule-linear");
    return reduce_impl(r, d, true);
}

DGPresentation abelianize(const DGPresentation& p) {
    if (p.flavor == Flavor::Comm) return p;
    DGPresentation c;
    c.flavor = Flavor::Comm;
    for (const auto& g : p.gens) c.add_generator(g);
    for (size_t g = 0; g < p.gens.size(); ++g) {
        Poly d;
        for (const auto& [m, co] : p.diff[g].terms) {
            auto nf = comm_normalize(c, m);
            if (nf) add_term(d, nf->first, co * nf->second);
        }
        c.set_diff(static_cast<int>(g), d);
    }
    return c;
}

PolyMatrix universal_matrix(const RepScheme& s, int src_gen, bool nc) {
    PolyMatrix m(static_cast<size_t>(s.dim), std::vector<Poly>(static_cast<size_t>(s.dim)));
    for (int i = 1; i <= s.dim; ++i)
        for (int j = 1; j <= s.dim; ++j)
            m[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] =
                poly_of(mono_of(s.entry(src_gen, i, j)));
    (void)nc; // entry indices coincide in both entry algebras
    return m;
}

PolyMatrix evaluate_matrix(const RepScheme& s, const Poly& src, bool nc) {
    const DGPresentation& tgt = nc ? s.entries_nc : s.entries;
    int d = s.dim;
    PolyMatrix acc(static_cast<size_t>(d), std::vector<Poly>(static_cast<size_t>(d)));
    for (const auto& [word, coeff] : src.terms) {
        // Identity matrix, then multiply one letter at a time.
        PolyMatrix cur(static_cast<size_t>(d), std::vector<Poly>(static_cast<size_t>(d)));
        for (int i = 0; i < d; ++i) cur[static_cast<size_t>(i)][static_cast<size_t>(i)] = unit_poly();
        for (const Run& run : word)
            for (int rep = 0; rep < run.exp; ++rep) {
                PolyMatrix next(static_cast<size_t>(d), std::vector<Poly>(static_cast<size_t>(d)));
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        Poly e;
                        for (int k = 0; k < d; ++k) {
                            const Poly& left = cur[static_cast<size_t>(i)][static_cast<size_t>(k)];
                            if (left.is_zero()) continue;
                            Poly g = poly_of(mono_of(s.entry(run.gen, k + 1, j + 1)));
                            e = add(e, mul(tgt, left, g));
                        }
                        next[static_cast<size_t>(i)][static_cast<size_t>(j)] = e;
                    }
                cur = std::move(next);
            }
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (const auto& [m, c] : cur[static_cast<size_t>(i)][static_cast<size_t>(j)].terms)
                    add_term(acc[static_cast<size_t>(i)][static_cast<size_t>(j)], m, coeff * c);
    }
    return acc;
}

Poly matrix_trace(const PolyMatrix& m) {
    Poly t;
    for (size_t i = 0; i < m.size(); ++i) t = add(t, m[i][i]);
    return t;
}

RepEquations rep_equations(const DGPresentation& algebra, const std::vector<Poly>& relations,
                           int d) {
    for (const auto& g : algebra.gens)
        if (g.homdeg != 0)
            throw std::runtime_error("rep_equations expects a degree-0 presentation");
    RepEquations out{matrix_reduce(algebra, d), {}};
    for (const Poly& rel : relations) {
        PolyMatrix m = evaluate_matrix(out.scheme, rel, false);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const Poly& e = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (!e.is_zero()) out.equations.push_back(e);
            }
    }
    return out;
}

Derivation derivation_pushforward(const RepScheme& s, const Derivation& der) {
    if (der.images.size() != s.source.gens.size())
        throw std::runtime_error("derivation does not match the source presentation");
    Derivation out;
    out.parity = der.parity;
    out.images.resize(s.entries.gens.size());
    for (size_t g = 0; g < s.source.gens.size(); ++g) {
        if (der.images[g].is_zero()) continue;
        PolyMatrix m = evaluate_matrix(s, der.images[g], false);
        for (int i = 1; i <= s.dim; ++i)
            for (int j = 1; j <= s.dim; ++j)
                out.images[static_cast<size_t>(s.entry(static_cast<int>(g), i, j))] =
                    m[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
    }
    return out;
}

} // namespace drep
