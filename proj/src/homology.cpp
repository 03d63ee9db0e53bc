#include "drep/homology.hpp"

#include "drep/resource.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace drep {

namespace {

constexpr int kMaxAutoSlack = 8;

bool has_module_gens(const DGPresentation& p) {
    for (const auto& g : p.gens)
        if (g.kind == GenKind::Module) return true;
    return false;
}

size_t mono_bytes(const Mono& m) { return sizeof(Mono) + m.size() * sizeof(Run); }

void enumerate_nc(const DGPresentation& p, int n, int w, int want_module, Mono& word,
                  int deg, int wt, int mods, size_t& bytes, std::vector<Mono>& out) {
    if (deg == n && wt == w && mods == want_module) {
        bytes += mono_bytes(word);
        if ((out.size() & 1023) == 0) ensure_budget(bytes, "block basis");
        out.push_back(word);
    }
    if (wt >= w) return;
    for (size_t g = 0; g < p.gens.size(); ++g) {
        const Generator& gen = p.gens[g];
        if (deg + gen.homdeg > n || wt + gen.weight > w) continue;
        int m = mods + (gen.kind == GenKind::Module ? 1 : 0);
        if (m > want_module) continue;
        bool merged = !word.empty() && word.back().gen == static_cast<int>(g);
        if (merged)
            ++word.back().exp;
        else
            word.push_back({static_cast<int>(g), 1});
        enumerate_nc(p, n, w, want_module, word, deg + gen.homdeg, wt + gen.weight, m,
                     bytes, out);
        if (merged)
            --word.back().exp;
        else
            word.pop_back();
    }
}

void enumerate_comm(const DGPresentation& p, int n, int w, int want_module, size_t g,
                    Mono& word, int deg, int wt, int mods, size_t& bytes,
                    std::vector<Mono>& out) {
    if (deg == n && wt == w && mods == want_module) {
        bytes += mono_bytes(word);
        if ((out.size() & 1023) == 0) ensure_budget(bytes, "block basis");
        out.push_back(word);
    }
    if (wt >= w) return;
    for (size_t h = g; h < p.gens.size(); ++h) {
        const Generator& gen = p.gens[h];
        bool odd = gen.homdeg % 2 != 0;
        int e_max = odd || gen.kind == GenKind::Module ? 1 : (w - wt) / gen.weight;
        for (int e = 1; e <= e_max; ++e) {
            if (deg + e * gen.homdeg > n || wt + e * gen.weight > w) break;
            int m = mods + (gen.kind == GenKind::Module ? e : 0);
            if (m > want_module) break;
            word.push_back({static_cast<int>(h), e});
            enumerate_comm(p, n, w, want_module, h + 1, word, deg + e * gen.homdeg,
                           wt + e * gen.weight, m, bytes, out);
            word.pop_back();
        }
    }
}

int block_rank_onto(const DGPresentation& p, int n, int w, int slack,
                    PivotPolicy policy = PivotPolicy::SmallestMagnitude) {
    // Rank of d from degree n+1 (weights w..w+slack) onto the rows of
    // block (n, w) exactly.
    DifferentialMatrix m = differential_matrix(p, n + 1, w + slack, slack);
    std::vector<int> keep;
    for (size_t r = 0; r < m.targets.size(); ++r)
        if (weight(p, m.targets[r]) == w) keep.push_back(static_cast<int>(r));
    SparseMatrix sub(static_cast<int>(keep.size()), m.mat.cols);
    for (size_t r = 0; r < keep.size(); ++r)
        sub.row[r] = m.mat.row[static_cast<size_t>(keep[r])];
    Reduction red = reduce(sub, policy);
    return red.rank;
}

HomCell compute_cell(const DGPresentation& p, int n, int w, bool wp, int slack) {
    DifferentialMatrix into = differential_matrix(p, n, w, 0);
    Reduction red = reduce(into.mat);
    int cycles = into.mat.cols - red.rank;

    HomCell cell{n, w, 0, true, 0};
    if (wp) {
        cell.dim = cycles - block_rank_onto(p, n, w, 0);
        if (cell.dim < 0) throw std::logic_error("negative rank in a weight-preserving block");
        return cell;
    }
    if (slack >= 0) {
        cell.slack = slack;
        cell.dim = cycles - block_rank_onto(p, n, w, slack);
        if (cell.dim < 0) {
            cell.dim = 0;
            cell.valid = false;
        }
        return cell;
    }
    int prev = cycles - block_rank_onto(p, n, w, 0);
    for (int s = 1; s <= kMaxAutoSlack; ++s) {
        int cur = cycles - block_rank_onto(p, n, w, s);
        if (cur == prev) {
            cell.slack = s;
            cell.dim = std::max(cur, 0);
            cell.valid = cur >= 0;
            return cell;
        }
        prev = cur;
    }
    cell.slack = kMaxAutoSlack;
    cell.dim = std::max(prev, 0);
    cell.valid = false;
    return cell;
}

} // namespace

std::vector<Mono> block_basis(const DGPresentation& p, int n, int w) {
    if (n < 0 || w < 0) return {};
    int want_module = has_module_gens(p) ? 1 : 0;
    std::vector<Mono> out;
    Mono word;
    size_t bytes = 0;
    if (p.flavor == Flavor::NC)
        enumerate_nc(p, n, w, want_module, word, 0, 0, 0, bytes, out);
    else
        enumerate_comm(p, n, w, want_module, 0, word, 0, 0, 0, bytes, out);
    std::sort(out.begin(), out.end(), mono_less);
    return out;
}

DifferentialMatrix differential_matrix(const DGPresentation& p, int n, int w, int slack) {
    if (slack < 0) throw std::invalid_argument("slack must be >= 0");
    DifferentialMatrix out;
    for (int ws = std::max(w - slack, 0); ws <= w; ++ws) {
        std::vector<Mono> blk = block_basis(p, n, ws);
        out.sources.insert(out.sources.end(), blk.begin(), blk.end());
    }
    std::map<Mono, int, MonoLess> row_of;
    for (int wt = 0; wt <= w; ++wt)
        for (const Mono& m : block_basis(p, n - 1, wt)) {
            int r = static_cast<int>(out.targets.size());
            out.targets.push_back(m);
            row_of.emplace(m, r);
        }
    out.mat = SparseMatrix(static_cast<int>(out.targets.size()),
                           static_cast<int>(out.sources.size()));
    for (size_t c = 0; c < out.sources.size(); ++c) {
        Poly dm = apply_d(p, poly_of(out.sources[c]));
        for (const auto& [m, coeff] : dm.terms) {
            auto it = row_of.find(m);
            if (it == row_of.end())
                throw std::runtime_error("differential leaves the weight window");
            out.mat.set(it->second, static_cast<int>(c), coeff);
        }
    }
    return out;
}

const HomCell& HomTable::at(int n, int w) const {
    if (n < 0 || n > n_max || w < 0 || w > w_max)
        throw std::out_of_range("homology cell out of range");
    return cells[static_cast<size_t>(n) * static_cast<size_t>(w_max + 1) +
                 static_cast<size_t>(w)];
}

HomTable homology_dims(const DGPresentation& p, int n_max, int w_max, int slack,
                       int threads) {
    if (n_max < 0 || w_max < 0) throw std::invalid_argument("negative table bounds");
    HomTable table;
    table.n_max = n_max;
    table.w_max = w_max;
    table.weight_preserving = weight_preserving(p);
    table.cells.resize(static_cast<size_t>(n_max + 1) * static_cast<size_t>(w_max + 1));

    std::vector<std::pair<int, int>> todo;
    for (int n = 0; n <= n_max; ++n)
        for (int w = 0; w <= w_max; ++w) todo.emplace_back(n, w);

    unsigned nthreads = threads > 0 ? static_cast<unsigned>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(todo.size()));

    std::atomic<size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            auto [n, w] = todo[i];
            try {
                table.cells[static_cast<size_t>(n) * static_cast<size_t>(w_max + 1) +
                            static_cast<size_t>(w)] =
                    compute_cell(p, n, w, table.weight_preserving, slack);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    return table;
}

BoundaryResult is_boundary(const DGPresentation& p, const Poly& q, int slack) {
    BoundaryResult out;
    out.slack = slack;
    if (q.is_zero()) {
        out.is_boundary = true;
        return out;
    }
    int n = homdeg(p, q);
    int wq = 0;
    for (const auto& [m, c] : q.terms) wq = std::max(wq, weight(p, m));

    std::vector<Mono> sources;
    for (int w = 0; w <= wq + slack; ++w) {
        std::vector<Mono> blk = block_basis(p, n + 1, w);
        sources.insert(sources.end(), blk.begin(), blk.end());
    }
    std::map<Mono, int, MonoLess> row_of;
    std::vector<Poly> images(sources.size());
    auto row_index = [&](const Mono& m) {
        auto [it, fresh] = row_of.emplace(m, static_cast<int>(row_of.size()));
        (void)fresh;
        return it->second;
    };
    for (size_t c = 0; c < sources.size(); ++c) {
        images[c] = apply_d(p, poly_of(sources[c]));
        for (const auto& [m, coeff] : images[c].terms) row_index(m);
    }
    for (const auto& [m, coeff] : q.terms) row_index(m);

    SparseMatrix mat(static_cast<int>(row_of.size()), static_cast<int>(sources.size()));
    for (size_t c = 0; c < sources.size(); ++c)
        for (const auto& [m, coeff] : images[c].terms)
            mat.set(row_of.at(m), static_cast<int>(c), coeff);
    std::vector<Rational> rhs(row_of.size(), Rational(0));
    for (const auto& [m, coeff] : q.terms) rhs[static_cast<size_t>(row_of.at(m))] = coeff;

    Reduction red = reduce(mat);
    auto sol = red.solve(rhs);
    if (!sol) return out;
    out.is_boundary = true;
    for (size_t c = 0; c < sources.size(); ++c)
        if ((*sol)[c] != 0) add_term(out.witness, sources[c], (*sol)[c]);
    return out;
}

bool weight_preserving(const DGPresentation& p) {
    for (size_t g = 0; g < p.gens.size(); ++g)
        for (const auto& [m, c] : p.diff[g].terms)
            if (weight(p, m) != p.gens[g].weight) return false;
    return true;
}

} // namespace drep
