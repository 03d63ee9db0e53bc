#include "drep/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace drep {

namespace {

constexpr size_t kClosureCap = 4096;

using Word = std::vector<int>;

struct Rule {
    Word lead;
    int lead_weight = 0;
    std::vector<std::pair<Word, Rational>> tail;
};

Word flatten(const Mono& m) {
    Word w;
    for (const Run& r : m)
        for (int k = 0; k < r.exp; ++k) w.push_back(r.gen);
    return w;
}

int word_weight(const std::vector<int>& gen_weights, const Word& w) {
    int s = 0;
    for (int g : w) s += gen_weights[static_cast<size_t>(g)];
    return s;
}

// Rewriting order: weight, then length, then the letter sequence.  It is
// a well-order compatible with concatenation, so orienting every relation
// toward its largest monomial yields a terminating system.
bool rewrite_less(const std::vector<int>& gen_weights, const Word& a, const Word& b) {
    int wa = word_weight(gen_weights, a), wb = word_weight(gen_weights, b);
    if (wa != wb) return wa < wb;
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

bool matches_at(const Word& w, size_t pos, const Word& lead) {
    if (pos + lead.size() > w.size()) return false;
    return std::equal(lead.begin(), lead.end(), w.begin() + static_cast<long>(pos));
}

bool ends_with_lead(const Word& w, const std::vector<Rule>& rules) {
    for (const Rule& r : rules)
        if (r.lead.size() <= w.size() &&
            std::equal(r.lead.begin(), r.lead.end(), w.end() - static_cast<long>(r.lead.size())))
            return true;
    return false;
}

std::string word_name(const std::vector<std::string>& names, const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size();) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!s.empty()) s += "*";
        s += names[static_cast<size_t>(w[i])];
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

struct Builder {
    std::vector<std::string> names;
    std::vector<int> gen_weights;
    std::vector<Rule> rules;
    int wmax = -1;
    std::vector<Word> basis;
    std::map<Word, int> index;

    bool irreducible(const Word& w) const {
        for (size_t i = 0; i < w.size(); ++i)
            for (const Rule& r : rules)
                if (matches_at(w, i, r.lead)) return false;
        return true;
    }

    void enumerate_basis() {
        std::vector<Word> layer{Word{}};
        basis.push_back(Word{});
        while (!layer.empty()) {
            std::vector<Word> next;
            for (const Word& w : layer)
                for (size_t g = 0; g < names.size(); ++g) {
                    Word ext = w;
                    ext.push_back(static_cast<int>(g));
                    if (wmax >= 0 && word_weight(gen_weights, ext) > wmax) continue;
                    if (ends_with_lead(ext, rules)) continue;
                    next.push_back(ext);
                    basis.push_back(ext);
                    if (wmax < 0 && basis.size() > kClosureCap)
                        throw std::runtime_error(
                            "algebra does not close up to a finite basis");
                }
            layer = std::move(next);
        }
        std::sort(basis.begin(), basis.end(), [](const Word& a, const Word& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<int>(i));
    }

    AVec normal_form(const Word& start, const Rational& coeff) const {
        std::map<int, Rational> acc;
        std::vector<std::pair<Word, Rational>> work{{start, coeff}};
        while (!work.empty()) {
            auto [w, c] = std::move(work.back());
            work.pop_back();
            bool reduced = false;
            for (size_t i = 0; i < w.size() && !reduced; ++i)
                for (const Rule& r : rules) {
                    if (!matches_at(w, i, r.lead)) continue;
                    for (const auto& [tw, tc] : r.tail) {
                        Word nw(w.begin(), w.begin() + static_cast<long>(i));
                        nw.insert(nw.end(), tw.begin(), tw.end());
                        nw.insert(nw.end(), w.begin() + static_cast<long>(i + r.lead.size()),
                                  w.end());
                        work.emplace_back(std::move(nw), c * tc);
                    }
                    reduced = true;
                    break;
                }
            if (reduced) continue;
            if (wmax >= 0 && word_weight(gen_weights, w) > wmax) continue;
            auto it = index.find(w);
            if (it == index.end())
                throw std::logic_error("normal form left the enumerated basis");
            Rational& slot = acc[it->second];
            slot += c;
            if (slot == 0) acc.erase(it->second);
        }
        return AVec(acc.begin(), acc.end());
    }
};

AVec table_mul(const BasedAlgebra& a, const AVec& u, int k) {
    AVec out;
    for (const auto& [i, c] : u) avec_add(out, a.table[static_cast<size_t>(i)][static_cast<size_t>(k)], c);
    return out;
}

} // namespace

int BasedAlgebra::index_of(const std::vector<int>& word) const {
    auto less = [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    };
    auto it = std::lower_bound(basis.begin(), basis.end(), word, less);
    if (it == basis.end() || *it != word) return -1;
    return static_cast<int>(it - basis.begin());
}

const AVec& BasedAlgebra::mul(int i, int j) const {
    return table[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

std::string BasedAlgebra::name_of(int i) const {
    return word_name(gen_names, basis[static_cast<size_t>(i)]);
}

BasedAlgebra based_algebra(const AlgebraSpec& spec, int wmax) {
    if (spec.pres.flavor != Flavor::NC)
        throw std::runtime_error("algebra presentations must be free (NC)");
    Builder b;
    b.wmax = wmax;
    for (const auto& g : spec.pres.gens) {
        if (g.homdeg != 0 || g.kind != GenKind::Algebra)
            throw std::runtime_error("algebra generators must sit in degree 0");
        b.names.push_back(g.name);
        b.gen_weights.push_back(g.weight);
    }

    for (const Poly& rel : spec.relations) {
        if (rel.is_zero()) continue;
        const Mono* lead = nullptr;
        Word lead_word;
        for (const auto& [m, c] : rel.terms) {
            Word w = flatten(m);
            if (!lead || rewrite_less(b.gen_weights, lead_word, w)) {
                lead = &m;
                lead_word = std::move(w);
            }
        }
        if (lead_word.empty())
            throw std::runtime_error("relation with a constant leading term");
        Rule rule;
        rule.lead = lead_word;
        rule.lead_weight = word_weight(b.gen_weights, lead_word);
        Rational lc = rel.terms.at(*lead);
        for (const auto& [m, c] : rel.terms) {
            if (&m == lead) continue;
            rule.tail.emplace_back(flatten(m), -c / lc);
        }
        b.rules.push_back(std::move(rule));
    }

    b.enumerate_basis();

    BasedAlgebra a;
    a.gen_names = b.names;
    a.gen_weights = b.gen_weights;
    a.basis = b.basis;
    a.wmax = wmax;
    for (const Word& w : a.basis) a.weights.push_back(word_weight(b.gen_weights, w));
    a.unit = 0;
    if (!a.basis[0].empty()) throw std::logic_error("unit missing from the basis");

    a.table.assign(a.basis.size(), std::vector<AVec>(a.basis.size()));
    for (size_t i = 0; i < a.basis.size(); ++i)
        for (size_t j = 0; j < a.basis.size(); ++j) {
            Word prod = a.basis[i];
            prod.insert(prod.end(), a.basis[j].begin(), a.basis[j].end());
            a.table[i][j] = b.normal_form(prod, 1);
        }

    for (int i = 0; i < a.dim(); ++i) {
        AVec ei{{i, Rational(1)}};
        if (a.mul(a.unit, i) != ei || a.mul(i, a.unit) != ei)
            throw std::runtime_error("unit law fails for " + a.name_of(i));
    }
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (int k = 0; k < a.dim(); ++k) {
                if (wmax >= 0 && a.weights[static_cast<size_t>(i)] +
                                         a.weights[static_cast<size_t>(j)] +
                                         a.weights[static_cast<size_t>(k)] >
                                     wmax)
                    continue;
                AVec left = table_mul(a, a.mul(i, j), k);
                AVec right;
                for (const auto& [l, c] : a.mul(j, k)) avec_add(right, a.mul(i, l), c);
                if (left != right)
                    throw std::runtime_error("structure constants fail associativity at (" +
                                             a.name_of(i) + ", " + a.name_of(j) + ", " +
                                             a.name_of(k) + ")");
            }
    return a;
}

AVec avec_scale(const Rational& c, const AVec& v) {
    AVec out;
    if (c == 0) return out;
    out.reserve(v.size());
    for (const auto& [i, x] : v) out.emplace_back(i, c * x);
    return out;
}

void avec_add(AVec& dst, const AVec& src, const Rational& c) {
    if (c == 0 || src.empty()) return;
    AVec out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || dst[i].first > src[j].first) {
            Rational v = c * src[j].second;
            if (v != 0) out.emplace_back(src[j].first, v);
            ++j;
        } else {
            Rational v = dst[i].second + c * src[j].second;
            if (v != 0) out.emplace_back(dst[i].first, v);
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

} // namespace drep
