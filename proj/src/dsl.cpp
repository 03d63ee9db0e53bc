#include "drep/dsl.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <tuple>
#include <vector>

namespace drep {

namespace {

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool integer_token(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

ParseError::ParseError(const std::string& msg, int ln)
    : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}

PresentationFile parse_presentation(const std::string& text) {
    PresentationFile file;
    file.algebra.pres.flavor = Flavor::NC;
    file.resolution.flavor = Flavor::NC;

    enum class Section { None, Algebra, Resolution };
    Section section = Section::None;
    bool has_resolution = false;
    std::vector<std::pair<int, std::string>> pending_rels;    // (line, expr)
    std::vector<std::tuple<int, std::string, std::string>> pending_d; // (line, gen, expr)

    std::istringstream in(text);
    std::string raw;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = strip(raw);
        if (line.empty()) continue;

        std::vector<std::string> tok = split_ws(line);
        const std::string& head = tok[0];

        if (head == "algebra" || head == "resolution") {
            if (tok.size() != 1) throw ParseError("unexpected text after '" + head + "'", ln);
            if (head == "algebra") {
                if (file.has_algebra) throw ParseError("duplicate algebra section", ln);
                section = Section::Algebra;
                file.has_algebra = true;
            } else {
                if (has_resolution) throw ParseError("duplicate resolution section", ln);
                section = Section::Resolution;
                has_resolution = true;
            }
            continue;
        }
        if (section == Section::None)
            throw ParseError("statement outside of a section", ln);
        DGPresentation& pres =
            section == Section::Algebra ? file.algebra.pres : file.resolution;

        if (head == "flavor") {
            if (section != Section::Resolution)
                throw ParseError("flavor applies to the resolution section", ln);
            if (tok.size() != 2 || (tok[1] != "comm" && tok[1] != "nc"))
                throw ParseError("expected 'flavor comm' or 'flavor nc'", ln);
            if (!pres.gens.empty())
                throw ParseError("flavor must precede the generators", ln);
            pres.flavor = tok[1] == "comm" ? Flavor::Comm : Flavor::NC;
        } else if (head == "gen") {
            Generator g;
            size_t i = 1;
            if (tok.size() < 2) throw ParseError("gen needs a name", ln);
            g.name = tok[i++];
            if (!valid_identifier(g.name))
                throw ParseError("bad generator name '" + g.name + "'", ln);
            if (i < tok.size() && integer_token(tok[i])) g.homdeg = std::stoi(tok[i++]);
            if (i < tok.size() && tok[i] == "weight") {
                ++i;
                if (i >= tok.size() || !integer_token(tok[i]))
                    throw ParseError("weight needs an integer", ln);
                g.weight = std::stoi(tok[i++]);
            }
            if (i != tok.size()) throw ParseError("unexpected text after gen", ln);
            if (section == Section::Algebra && g.homdeg != 0)
                throw ParseError("algebra generators sit in degree 0", ln);
            if (pres.find(g.name) >= 0)
                throw ParseError("duplicate generator '" + g.name + "'", ln);
            try {
                pres.add_generator(g);
            } catch (const std::exception& e) {
                throw ParseError(e.what(), ln);
            }
        } else if (head == "rel") {
            if (section != Section::Algebra)
                throw ParseError("rel belongs to the algebra section", ln);
            pending_rels.emplace_back(ln, strip(line.substr(3)));
        } else if (head == "d") {
            if (section != Section::Resolution)
                throw ParseError("d lines belong to the resolution section", ln);
            size_t eq = line.find('=');
            if (eq == std::string::npos) throw ParseError("d line needs '='", ln);
            std::string gen = strip(line.substr(1, eq - 1));
            std::string expr = strip(line.substr(eq + 1));
            if (!valid_identifier(gen)) throw ParseError("bad generator in d line", ln);
            if (expr.empty()) throw ParseError("empty differential", ln);
            pending_d.emplace_back(ln, gen, expr);
        } else {
            throw ParseError("unknown statement '" + head + "'", ln);
        }
    }
    if (!has_resolution) throw ParseError("missing resolution section", ln == 0 ? 1 : ln);

    for (const auto& [rel_ln, expr] : pending_rels) {
        try {
            file.algebra.relations.push_back(parse_poly(file.algebra.pres, expr));
        } catch (const std::exception& e) {
            throw ParseError(e.what(), rel_ln);
        }
    }
    for (const auto& [d_ln, gen, expr] : pending_d) {
        int g = file.resolution.find(gen);
        if (g < 0) throw ParseError("d of unknown generator '" + gen + "'", d_ln);
        Poly p;
        try {
            p = parse_poly(file.resolution, expr);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), d_ln);
        }
        if (!file.resolution.diff[static_cast<size_t>(g)].is_zero())
            throw ParseError("duplicate differential for '" + gen + "'", d_ln);
        const Generator& gg = file.resolution.gens[static_cast<size_t>(g)];
        // Weights may mix (the homology window machinery copes); the
        // homological degree must drop by exactly one.
        int hom = 0;
        bool first = true;
        for (const auto& [m, c] : p.terms) {
            int mh = homdeg(file.resolution, m);
            if (first) {
                hom = mh;
                first = false;
            } else if (mh != hom) {
                throw ParseError("differential of '" + gen + "' mixes homological degrees",
                                 d_ln);
            }
        }
        if (!p.is_zero() && hom != gg.homdeg - 1)
            throw ParseError("differential of '" + gen + "' must drop the degree by one",
                             d_ln);
        file.resolution.set_diff(g, p);
    }
    return file;
}

PresentationFile load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str());
}

std::string print_presentation(const DGPresentation& p) {
    std::ostringstream out;
    out << "resolution\n";
    if (p.flavor == Flavor::Comm) out << "  flavor comm\n";
    for (const auto& g : p.gens) {
        out << "  gen " << g.name;
        if (g.homdeg != 0) out << " " << g.homdeg;
        if (g.weight != 1) out << " weight " << g.weight;
        out << "\n";
    }
    for (size_t g = 0; g < p.gens.size(); ++g)
        if (!p.diff[g].is_zero())
            out << "  d " << p.gens[g].name << " = " << print_poly(p, p.diff[g]) << "\n";
    return out.str();
}

std::map<std::string, RatMatrix> parse_rep_file(const std::string& text, int dim) {
    std::map<std::string, RatMatrix> out;
    std::istringstream in(text);
    std::string raw;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = strip(raw);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'name = [[...]]'", ln);
        std::string name = strip(line.substr(0, eq));
        if (!valid_identifier(name)) throw ParseError("bad generator name '" + name + "'", ln);
        if (out.count(name)) throw ParseError("duplicate value for '" + name + "'", ln);

        std::string rest = strip(line.substr(eq + 1));
        RatMatrix mat;
        size_t i = 0;
        auto expect = [&](char c) {
            if (i >= rest.size() || rest[i] != c)
                throw ParseError(std::string("expected '") + c + "'", ln);
            ++i;
        };
        auto skip_ws = [&] {
            while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
        };
        skip_ws();
        expect('[');
        for (int r = 0; r < dim; ++r) {
            skip_ws();
            expect('[');
            std::vector<Rational> row;
            for (int c = 0; c < dim; ++c) {
                skip_ws();
                size_t start = i;
                while (i < rest.size() && rest[i] != ',' && rest[i] != ']') ++i;
                std::string num = strip(rest.substr(start, i - start));
                if (num.empty()) throw ParseError("missing matrix entry", ln);
                try {
                    row.push_back(rational_from_string(num));
                } catch (const std::exception& e) {
                    throw ParseError(e.what(), ln);
                }
                if (c + 1 < dim) expect(',');
            }
            skip_ws();
            expect(']');
            mat.push_back(std::move(row));
            if (r + 1 < dim) {
                skip_ws();
                expect(',');
            }
        }
        skip_ws();
        expect(']');
        skip_ws();
        if (i != rest.size()) throw ParseError("unexpected text after the matrix", ln);
        out.emplace(name, std::move(mat));
    }
    return out;
}

std::map<std::string, RatMatrix> load_rep_file(const std::string& path, int dim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rep_file(buf.str(), dim);
}

} // namespace drep
