#pragma once

#include "drep/presentation.hpp"

#include <random>

namespace drep::testutil {

// k<x,y;t>, |t| = 1, wt(t) = 2, dt = xy - yx.
inline DGPresentation ex2d_nc() {
    DGPresentation p;
    p.flavor = Flavor::NC;
    p.add_generator({"x", 0, 1});
    p.add_generator({"y", 0, 1});
    int t = p.add_generator({"t", 1, 2});
    p.set_diff(t, parse_poly(p, "x*y - y*x"));
    return p;
}

// k<x,y,z;xi,theta,lambda;t> resolving U(sl2), all weights 1.
inline DGPresentation ex3d_nc() {
    DGPresentation p;
    p.flavor = Flavor::NC;
    p.add_generator({"x", 0, 1});
    p.add_generator({"y", 0, 1});
    p.add_generator({"z", 0, 1});
    int xi = p.add_generator({"xi", 1, 1});
    int th = p.add_generator({"theta", 1, 1});
    int la = p.add_generator({"lambda", 1, 1});
    int t = p.add_generator({"t", 2, 1});
    p.set_diff(xi, parse_poly(p, "y*z - z*y + x"));
    p.set_diff(th, parse_poly(p, "z*x - x*z + y"));
    p.set_diff(la, parse_poly(p, "x*y - y*x + z"));
    p.set_diff(t, parse_poly(p, "x*xi - xi*x + y*theta - theta*y + z*lambda - lambda*z"));
    return p;
}

inline Mono random_raw_mono(std::mt19937& rng, int ngens, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> pick(0, ngens - 1);
    int l = len(rng);
    Mono m;
    for (int i = 0; i < l; ++i) {
        int g = pick(rng);
        if (!m.empty() && m.back().gen == g) m.back().exp += 1;
        else m.push_back(Run{g, 1});
    }
    return m;
}

inline Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline Poly random_poly(std::mt19937& rng, const DGPresentation& p, int terms, int max_len) {
    Poly q;
    for (int i = 0; i < terms; ++i) {
        Mono raw = random_raw_mono(rng, static_cast<int>(p.gens.size()), max_len);
        Rational c = random_rational(rng);
        if (p.flavor == Flavor::Comm) {
            auto nf = comm_normalize(p, raw);
            if (nf) add_term(q, nf->first, c * nf->second);
        } else {
            add_term(q, raw, c);
        }
    }
    return q;
}

// Random homogeneous polynomial: keep only terms matching the degree of
// the first sampled monomial.
inline Poly random_homogeneous_poly(std::mt19937& rng, const DGPresentation& p, int terms,
                                    int max_len) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        Poly q = random_poly(rng, p, terms, max_len);
        if (q.is_zero()) continue;
        int h = homdeg(p, q.terms.begin()->first);
        Poly out;
        for (const auto& [m, c] : q.terms)
            if (homdeg(p, m) == h) add_term(out, m, c);
        if (!out.is_zero()) return out;
    }
    return unit_poly();
}

} // namespace drep::testutil
