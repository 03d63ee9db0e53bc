#pragma once

#include "drep/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace drep {

// Free graded presentations and their differentials.
//
// A presentation is a list of generators, each with a homological degree
// (>= 0), a positive weight, and a kind (algebra or module generator),
// together with one differential polynomial per generator.  The flavor
// selects the monomial calculus: NC keeps words verbatim, Comm sorts them
// into graded-commutative normal form with Koszul signs.

enum class Flavor { NC, Comm };
enum class GenKind { Algebra, Module };

struct Generator {
    std::string name;
    int homdeg = 0;
    int weight = 1;
    GenKind kind = GenKind::Algebra;
};

// A monomial is a run-length encoded word in generator indices.
// Invariants: exps >= 1; NC monos never hold two adjacent runs of the same
// generator; Comm monos are sorted by generator index with odd exps <= 1.
// The empty mono is the unit.
struct Run {
    int gen = 0;
    int exp = 1;
    friend bool operator==(const Run&, const Run&) = default;
};
using Mono = std::vector<Run>;

// Global monomial order: total letter count first, then the flattened
// letter sequence compared by generator index.  Used for bases, printing
// and every deterministic iteration in the engine.
bool mono_less(const Mono& a, const Mono& b);

struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const { return mono_less(a, b); }
};

struct Poly {
    std::map<Mono, Rational, MonoLess> terms;

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const Poly&, const Poly&) = default;
};

class DGPresentation {
public:
    Flavor flavor = Flavor::NC;
    std::vector<Generator> gens;
    std::vector<Poly> diff; // parallel to gens; defaults to zero

    int add_generator(const Generator& g); // returns index, validates
    int find(const std::string& name) const; // -1 when absent
    void set_diff(int gen, Poly p);

private:
    std::map<std::string, int> index_;
};

bool valid_identifier(const std::string& name);

int mono_letters(const Mono& m);
int homdeg(const DGPresentation& p, const Mono& m);
int weight(const DGPresentation& p, const Mono& m);
int parity(const DGPresentation& p, const Mono& m);
int module_count(const DGPresentation& p, const Mono& m);
int homdeg(const DGPresentation& p, const Poly& q); // throws if mixed
int weight(const DGPresentation& p, const Poly& q); // throws if mixed
bool homogeneous(const DGPresentation& p, const Poly& q, int* hom = nullptr, int* wt = nullptr);

Mono mono_of(int gen, int exp = 1);

// Sorts a raw concatenation into Comm normal form.  Returns the normal
// form with its Koszul sign, or nullopt when an odd generator repeats.
std::optional<std::pair<Mono, int>> comm_normalize(const DGPresentation& p, const Mono& raw);

void add_term(Poly& q, const Mono& m, const Rational& c);
Poly poly_of(const Mono& m, const Rational& c = 1);
Poly unit_poly();
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly negate(const Poly& a);
Poly scale(const Rational& c, const Poly& a);
Poly mul(const DGPresentation& p, const Poly& a, const Poly& b);
Poly mul(const DGPresentation& p, const Mono& a, const Mono& b);

// A homogeneous-degree derivation given by its generator images and the
// parity of its degree.  apply follows the signed Leibniz rule
// D(uv) = D(u) v + (-1)^{|D||u|} u D(v).
struct Derivation {
    int parity = 1;
    std::vector<Poly> images; // parallel to p.gens
};

Poly apply_derivation(const DGPresentation& p, const Derivation& d, const Poly& q);
Poly apply_d(const DGPresentation& p, const Poly& q);

struct DSquaredReport {
    bool ok = true;
    int gen = -1;       // first failing generator
    Poly residual;      // d(d(gen)) when not ok
};
DSquaredReport check_d_squared(const DGPresentation& p);

// Expression syntax shared by files and tests: terms joined by + and -,
// factors joined by *, ^ only on even generators in Comm flavor,
// coefficients integral or p/q.
Poly parse_poly(const DGPresentation& p, const std::string& text);
std::string print_mono(const DGPresentation& p, const Mono& m);
std::string print_poly(const DGPresentation& p, const Poly& q);

} // namespace drep
