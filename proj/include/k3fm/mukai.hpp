#pragma once

// Duality involutions attached to coprime factorizations d = r*s.  Each pair
// gives the multiplier that is 1 mod 2s and -1 mod 2r; together they exhaust
// the multiplier group mod +-1, which also counts Fourier-Mukai partners.

#include <algorithm>
#include <vector>

#include "k3fm/disc_group.hpp"

namespace k3fm {

struct CoprimePair {
    Int r = 1, s = 1;  // r <= s, r*s = d, gcd(r, s) = 1
    bool operator==(const CoprimePair& o) const { return r == o.r && s == o.s; }
};

inline std::vector<CoprimePair> coprime_factorizations(Int d) {
    if (d <= 0) throw std::invalid_argument("degree must be positive");
    std::vector<CoprimePair> out;
    for (Int r = 1; r * r <= d; ++r)
        if (d % r == 0 && gcd_int(r, d / r) == 1) out.push_back({r, d / r});
    std::sort(out.begin(), out.end(),
              [](const CoprimePair& a, const CoprimePair& b) { return a.r < b.r; });
    return out;
}

inline GroupElement mukai_group_element(Int d, const CoprimePair& p) {
    if (p.r <= 0 || p.s <= 0 || p.r > p.s || mul_checked(p.r, p.s) != d ||
        gcd_int(p.r, p.s) != 1)
        throw std::invalid_argument("not a coprime ordered factorization of d");
    Int a = crt_pair(1, 2 * p.s, -1, 2 * p.r);  // lives mod 2d
    return element_of({d, a});
}

inline Int fm_partner_count(Int d) {
    if (d <= 0) throw std::invalid_argument("degree must be positive");
    Int n = 1;
    for (Int i = 1; i < prime_count(d); ++i) n = mul_checked(n, 2);
    return n;
}

// (r, c*ell, s) with ell^2 = 2d; the pairing doubles the Euler form
struct MukaiVector {
    Int r = 0, c = 0, s = 0;
    Int two_d = 2;
};

inline Int mukai_pairing(const MukaiVector& v, const MukaiVector& w) {
    if (v.two_d != w.two_d) throw std::invalid_argument("mukai_pairing: mismatched degrees");
    I128 acc = mul_i128(mul_i128(v.c, w.c), v.two_d);
    acc = add_i128(acc, -mul_i128(v.r, w.s));
    acc = add_i128(acc, -mul_i128(v.s, w.r));
    return checked_int(acc);
}

}  // namespace k3fm
