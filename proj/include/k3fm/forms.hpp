#pragma once

// GL2(Z) equivalence of nondegenerate 2x2 symmetric integer matrices, via
// classical reduction of the attached quadratic form A x^2 + B xy + C y^2
// (B even here, since it is twice a matrix entry).  Three regimes:
//   definite           reduce to the unique |B| <= A <= C representative,
//   indefinite, disc not a square
//                      compare reduction cycles,
//   disc a square      split off an isotropic vector and compare the
//                      residues of the complementary coefficient.

#include <set>
#include <vector>

#include "k3fm/smith.hpp"

namespace k3fm {

namespace forms_detail {

struct Form {
    Int a, b, c;  // A x^2 + B xy + C y^2
    bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const Form& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    Int disc() const {
        return checked_int(mul_i128(b, b) - mul_i128(4, mul_i128(a, c)));
    }
    Int eval(Int x, Int y) const {
        I128 r = mul_i128(a, mul_i128(x, x));
        r = add_i128(r, mul_i128(b, mul_i128(x, y)));
        r = add_i128(r, mul_i128(c, mul_i128(y, y)));
        return checked_int(r);
    }
};

// substitution x -> p x + u y, y -> q x + v y
inline Form transform(const Form& f, Int p, Int q, Int u, Int v) {
    Form g;
    g.a = f.eval(p, q);
    g.c = f.eval(u, v);
    I128 m = mul_i128(2, add_i128(mul_i128(f.a, mul_i128(p, u)), mul_i128(f.c, mul_i128(q, v))));
    m = add_i128(m, mul_i128(f.b, add_i128(mul_i128(p, v), mul_i128(q, u))));
    g.b = checked_int(m);
    return g;
}

inline Form definite_reduce(Form f) {
    // positive definite input; terminates with |B| <= A <= C
    for (;;) {
        if (f.c < f.a) { f = Form{f.c, -f.b, f.a}; continue; }
        if (f.b > f.a || f.b <= -f.a) {
            Int b = mod_nonneg(f.b, 2 * f.a);
            if (b > f.a) b -= 2 * f.a;
            f.c = checked_int((mul_i128(b, b) - f.disc()) / (4 * f.a));
            f.b = b;
            continue;
        }
        break;
    }
    if (f.b < 0) f.b = -f.b;  // mirror, allowed under GL2
    return f;
}

inline bool indefinite_reduced(const Form& f, Int sq) {
    if (f.b <= 0 || f.b > sq) return false;
    Int twoa = 2 * (f.a < 0 ? -f.a : f.a);
    // sq(disc) - 2|A| < B  and  2|A| - sq(disc) < B, exactly
    I128 hi = mul_i128(f.b + twoa, f.b + twoa);
    if (hi <= f.disc()) return false;
    if (twoa > f.b) {
        I128 lo = mul_i128(twoa - f.b, twoa - f.b);
        if (lo >= f.disc()) return false;
    }
    return true;
}

// neighbouring form on the right in the reduction chain
inline Form rho(const Form& f, Int sq) {
    Int ac = f.c < 0 ? -f.c : f.c;
    Int w1 = (ac > sq) ? ac : sq;  // window is (w1 - 2|C|, w1]
    Int base = mod_nonneg(-f.b, 2 * ac);
    Int lo = w1 - 2 * ac + 1;
    Int b = lo + mod_nonneg(base - lo, 2 * ac);
    Form g;
    g.a = f.c;
    g.b = b;
    g.c = checked_int((mul_i128(b, b) - f.disc()) / (4 * f.c));
    return g;
}

inline std::set<Form> reduction_cycle(Form f, Int sq) {
    int guard = 0;
    while (!indefinite_reduced(f, sq)) {
        f = rho(f, sq);
        if (++guard > 100000) throw std::logic_error("indefinite reduction did not settle");
    }
    std::set<Form> cycle;
    Form g = f;
    do {
        cycle.insert(g);
        g = rho(g, sq);
        if (cycle.size() > 1000000) throw std::logic_error("reduction cycle unreasonably long");
    } while (!(g == f));
    return cycle;
}

inline bool properly_equivalent_indefinite(const Form& f, const Form& g, Int sq) {
    std::set<Form> cf = reduction_cycle(f, sq);
    Form g0 = g;
    int guard = 0;
    while (!indefinite_reduced(g0, sq)) {
        g0 = rho(g0, sq);
        if (++guard > 100000) throw std::logic_error("indefinite reduction did not settle");
    }
    return cf.count(g0) > 0;
}

inline void primitive_direction(Int& p, Int& q) {
    Int g = gcd_int(p, q);
    p /= g;
    q /= g;
}

// residues of the trailing coefficient after moving an isotropic vector to
// the first basis slot; a GL2 invariant set when the discriminant is h^2
inline std::set<Int> isotropic_residues(const Form& f, Int h) {
    std::vector<std::pair<Int, Int>> dirs;
    if (f.a == 0) {
        dirs.push_back({1, 0});
        Int p = -f.c, q = f.b;
        primitive_direction(p, q);
        dirs.push_back({p, q});
    } else {
        for (Int sgn : {Int(1), Int(-1)}) {
            Int p = -f.b + sgn * h, q = 2 * f.a;
            primitive_direction(p, q);
            dirs.push_back({p, q});
        }
    }
    std::set<Int> out;
    for (auto [p, q] : dirs) {
        Egcd e = egcd(p, q);  // p x + q y = 1
        Int u = -e.y, v = e.x;
        Form g = transform(f, p, q, u, v);
        if (g.a != 0 || (g.b != h && g.b != -h))
            throw std::logic_error("isotropic normalization failed");
        out.insert(mod_nonneg(g.c, h));
    }
    return out;
}

}  // namespace forms_detail

inline bool forms_equivalent(const IMat& g1, const IMat& g2) {
    if (g1.rows() != 2 || g1.cols() != 2 || g2.rows() != 2 || g2.cols() != 2)
        throw std::invalid_argument("forms_equivalent expects 2x2 matrices");
    if (g1(0, 1) != g1(1, 0) || g2(0, 1) != g2(1, 0))
        throw std::invalid_argument("forms_equivalent expects symmetric matrices");
    using forms_detail::Form;
    Form f{g1(0, 0), 2 * g1(0, 1), g1(1, 1)};
    Form g{g2(0, 0), 2 * g2(0, 1), g2(1, 1)};
    Int disc = f.disc();
    if (disc == 0 || g.disc() == 0)
        throw std::invalid_argument("forms_equivalent expects nondegenerate matrices");
    if (disc != g.disc()) return false;

    if (disc < 0) {  // definite
        bool neg = f.a < 0;
        if (neg != (g.a < 0)) return false;
        if (neg) {
            f = Form{-f.a, -f.b, -f.c};
            g = Form{-g.a, -g.b, -g.c};
        }
        return forms_detail::definite_reduce(f) == forms_detail::definite_reduce(g);
    }
    Int sq = isqrt_floor(disc);
    if (sq * sq == disc) {
        auto rf = forms_detail::isotropic_residues(f, sq);
        auto rg = forms_detail::isotropic_residues(g, sq);
        for (Int c : rf)
            if (rg.count(c)) return true;
        return false;
    }
    if (forms_detail::properly_equivalent_indefinite(f, g, sq)) return true;
    Form gm{g.a, -g.b, g.c};  // improper change of orientation
    return forms_detail::properly_equivalent_indefinite(f, gm, sq);
}

}  // namespace k3fm
