#include "drep/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace drep {

bool mono_less(const Mono& a, const Mono& b) {
    int la = mono_letters(a), lb = mono_letters(b);
    if (la != lb) return la < lb;
    size_t ia = 0, ib = 0;
    int ea = 0, eb = 0; // letters consumed within the current run
    while (ia < a.size() && ib < b.size()) {
        if (a[ia].gen != b[ib].gen) return a[ia].gen < b[ib].gen;
        int step = std::min(a[ia].exp - ea, b[ib].exp - eb);
        ea += step;
        eb += step;
        if (ea == a[ia].exp) { ++ia; ea = 0; }
        if (eb == b[ib].exp) { ++ib; eb = 0; }
    }
    return false; // equal letter sequences
}

bool valid_identifier(const std::string& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

int DGPresentation::add_generator(const Generator& g) {
    if (!valid_identifier(g.name))
        throw std::runtime_error("invalid generator name: '" + g.name + "'");
    if (index_.count(g.name))
        throw std::runtime_error("duplicate generator name: '" + g.name + "'");
    if (g.homdeg < 0)
        throw std::runtime_error("generator '" + g.name + "' has negative degree");
    if (g.weight < 1)
        throw std::runtime_error("generator '" + g.name + "' needs positive weight");
    int id = static_cast<int>(gens.size());
    gens.push_back(g);
    diff.emplace_back();
    index_.emplace(g.name, id);
    return id;
}

int DGPresentation::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

void DGPresentation::set_diff(int gen, Poly p) {
    diff.at(static_cast<size_t>(gen)) = std::move(p);
}

int mono_letters(const Mono& m) {
    int n = 0;
    for (const Run& r : m) n += r.exp;
    return n;
}

int homdeg(const DGPresentation& p, const Mono& m) {
    int n = 0;
    for (const Run& r : m) n += r.exp * p.gens[r.gen].homdeg;
    return n;
}

int weight(const DGPresentation& p, const Mono& m) {
    int n = 0;
    for (const Run& r : m) n += r.exp * p.gens[r.gen].weight;
    return n;
}

int parity(const DGPresentation& p, const Mono& m) {
    return homdeg(p, m) & 1;
}

int module_count(const DGPresentation& p, const Mono& m) {
    int n = 0;
    for (const Run& r : m)
        if (p.gens[r.gen].kind == GenKind::Module) n += r.exp;
    return n;
}

bool homogeneous(const DGPresentation& p, const Poly& q, int* hom, int* wt) {
    bool first = true;
    int h = 0, w = 0;
    for (const auto& [m, c] : q.terms) {
        int mh = homdeg(p, m), mw = weight(p, m);
        if (first) {
            h = mh;
            w = mw;
            first = false;
        } else if (mh != h || mw != w) {
            return false;
        }
    }
    if (hom) *hom = h;
    if (wt) *wt = w;
    return true;
}

int homdeg(const DGPresentation& p, const Poly& q) {
    int h = 0;
    bool first = true;
    for (const auto& [m, c] : q.terms) {
        int mh = homdeg(p, m);
        if (first) { h = mh; first = false; }
        else if (mh != h) throw std::runtime_error("polynomial is not degree-homogeneous");
    }
    return h;
}

int weight(const DGPresentation& p, const Poly& q) {
    int w = 0;
    bool first = true;
    for (const auto& [m, c] : q.terms) {
        int mw = weight(p, m);
        if (first) { w = mw; first = false; }
        else if (mw != w) throw std::runtime_error("polynomial is not weight-homogeneous");
    }
    return w;
}

Mono mono_of(int gen, int exp) {
    if (exp == 0) return {};
    return {Run{gen, exp}};
}

namespace {

// Appends a run, merging with the tail when the generator repeats.
void push_run(Mono& m, const Run& r) {
    if (r.exp == 0) return;
    if (!m.empty() && m.back().gen == r.gen)
        m.back().exp += r.exp;
    else
        m.push_back(r);
}

Mono concat(const Mono& a, const Mono& b) {
    Mono m = a;
    for (const Run& r : b) push_run(m, r);
    return m;
}

} // namespace

std::optional<std::pair<Mono, int>> comm_normalize(const DGPresentation& p, const Mono& raw) {
    // Insertion sort on the flattened letters; swapping two odd letters
    // flips the sign, and a repeated odd letter kills the monomial.
    std::vector<int> letters;
    letters.reserve(static_cast<size_t>(mono_letters(raw)));
    for (const Run& r : raw)
        for (int i = 0; i < r.exp; ++i) letters.push_back(r.gen);

    int sign = 1;
    for (size_t i = 1; i < letters.size(); ++i) {
        int g = letters[i];
        int gp = p.gens[g].homdeg & 1;
        size_t j = i;
        while (j > 0 && letters[j - 1] > g) {
            if (gp && (p.gens[letters[j - 1]].homdeg & 1)) sign = -sign;
            letters[j] = letters[j - 1];
            --j;
        }
        letters[j] = g;
    }

    Mono out;
    for (int g : letters) push_run(out, Run{g, 1});
    for (const Run& r : out)
        if ((p.gens[r.gen].homdeg & 1) && r.exp > 1) return std::nullopt;
    return std::make_pair(std::move(out), sign);
}

void add_term(Poly& q, const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = q.terms.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) q.terms.erase(it);
    }
}

Poly poly_of(const Mono& m, const Rational& c) {
    Poly q;
    add_term(q, m, c);
    return q;
}

Poly unit_poly() {
    return poly_of(Mono{});
}

Poly add(const Poly& a, const Poly& b) {
    Poly q = a;
    for (const auto& [m, c] : b.terms) add_term(q, m, c);
    return q;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly q = a;
    for (const auto& [m, c] : b.terms) add_term(q, m, -c);
    return q;
}

Poly negate(const Poly& a) {
    Poly q;
    for (const auto& [m, c] : a.terms) q.terms.emplace(m, -c);
    return q;
}

Poly scale(const Rational& c, const Poly& a) {
    Poly q;
    if (c == 0) return q;
    for (const auto& [m, k] : a.terms) {
        Rational v = c * k;
        q.terms.emplace(m, v);
    }
    return q;
}

Poly mul(const DGPresentation& p, const Mono& a, const Mono& b) {
    Mono raw = concat(a, b);
    if (module_count(p, raw) > 1)
        throw std::logic_error("product would carry two module generators");
    if (p.flavor == Flavor::NC) return poly_of(raw);
    auto nf = comm_normalize(p, raw);
    if (!nf) return {};
    return poly_of(nf->first, nf->second);
}

Poly mul(const DGPresentation& p, const Poly& a, const Poly& b) {
    Poly q;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            Poly t = mul(p, ma, mb);
            for (const auto& [m, s] : t.terms) add_term(q, m, ca * cb * s);
        }
    return q;
}

Poly apply_derivation(const DGPresentation& p, const Derivation& d, const Poly& q) {
    if (d.images.size() != p.gens.size())
        throw std::logic_error("derivation images do not match the generator list");
    Poly out;
    for (const auto& [m, c] : q.terms) {
        std::vector<int> letters;
        letters.reserve(static_cast<size_t>(mono_letters(m)));
        for (const Run& r : m)
            for (int i = 0; i < r.exp; ++i) letters.push_back(r.gen);

        int prefix_parity = 0;
        for (size_t i = 0; i < letters.size(); ++i) {
            int g = letters[i];
            const Poly& img = d.images[g];
            if (!img.is_zero()) {
                Mono prefix, suffix;
                for (size_t j = 0; j < i; ++j) push_run(prefix, Run{letters[j], 1});
                for (size_t j = i + 1; j < letters.size(); ++j) push_run(suffix, Run{letters[j], 1});
                int sign = (d.parity && prefix_parity) ? -1 : 1;
                Poly t = mul(p, poly_of(prefix), mul(p, img, poly_of(suffix)));
                for (const auto& [tm, tc] : t.terms)
                    add_term(out, tm, c * tc * sign);
            }
            prefix_parity ^= (p.gens[g].homdeg & 1);
        }
    }
    return out;
}

Poly apply_d(const DGPresentation& p, const Poly& q) {
    Derivation d{1, p.diff};
    return apply_derivation(p, d, q);
}

DSquaredReport check_d_squared(const DGPresentation& p) {
    for (size_t g = 0; g < p.gens.size(); ++g) {
        Poly r = apply_d(p, p.diff[g]);
        if (!r.is_zero()) return {false, static_cast<int>(g), std::move(r)};
    }
    return {};
}

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }
    std::string integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw std::runtime_error("expected integer in '" + s + "'");
        return s.substr(start, pos - start);
    }
};

} // namespace

Poly parse_poly(const DGPresentation& p, const std::string& text) {
    Lexer lx{text};
    Poly out;
    bool first = true;
    while (!lx.eof()) {
        Rational coeff = 1;
        if (lx.accept('-')) coeff = -1;
        else if (lx.accept('+')) coeff = 1;
        else if (!first)
            throw std::runtime_error("expected + or - between terms in '" + text + "'");
        first = false;

        Mono word;
        bool saw_factor = false;
        for (;;) {
            char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string num = lx.integer();
                std::string lit = num;
                if (lx.accept('/')) lit += "/" + lx.integer();
                coeff *= rational_from_string(lit);
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                std::string name = lx.ident();
                int g = p.find(name);
                if (g < 0) throw std::runtime_error("unknown generator '" + name + "'");
                int exp = 1;
                if (lx.accept('^')) {
                    if (p.flavor != Flavor::Comm)
                        throw std::runtime_error("'^' is only valid on commutative generators");
                    if (p.gens[g].homdeg & 1)
                        throw std::runtime_error("'^' is only valid on even generators");
                    exp = std::stoi(lx.integer());
                    if (exp < 0) throw std::runtime_error("negative exponent");
                }
                push_run(word, Run{g, exp});
            } else {
                throw std::runtime_error("unexpected character '" + std::string(1, c) +
                                         "' in '" + text + "'");
            }
            saw_factor = true;
            if (!lx.accept('*')) break;
        }
        if (!saw_factor) throw std::runtime_error("empty term in '" + text + "'");

        if (p.flavor == Flavor::Comm) {
            auto nf = comm_normalize(p, word);
            if (nf) add_term(out, nf->first, coeff * nf->second);
        } else {
            add_term(out, word, coeff);
        }
    }
    return out;
}

std::string print_mono(const DGPresentation& p, const Mono& m) {
    if (m.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const Run& r : m) {
        bool caret = p.flavor == Flavor::Comm && !(p.gens[r.gen].homdeg & 1);
        int reps = caret ? 1 : r.exp;
        for (int i = 0; i < reps; ++i) {
            if (!first) os << "*";
            os << p.gens[r.gen].name;
            first = false;
        }
        if (caret && r.exp > 1) os << "^" << r.exp;
    }
    return os.str();
}

std::string print_poly(const DGPresentation& p, const Poly& q) {
    if (q.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : q.terms) {
        Rational a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (a != 1 || m.empty()) {
            os << to_string(a);
            if (!m.empty()) os << "*";
        }
        if (!m.empty()) os << print_mono(p, m);
    }
    return os.str();
}

} // namespace drep
