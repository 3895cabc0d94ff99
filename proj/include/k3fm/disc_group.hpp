#pragma once

// The finite group acting on the period domain of 2d-polarized K3 surfaces:
// multipliers of the cyclic dual quotient of L2d, taken modulo +-1.  An
// automorphism of Z/2d preserving the quadratic form is multiplication by a
// unit a with a^2 == 1 (mod 4d); the class {a, 2d - a} acts on the moduli
// space and is stored by its least representative.

#include <algorithm>
#include <vector>

#include "k3fm/lattice.hpp"

namespace k3fm {

inline std::vector<Int> distinct_prime_factors(Int n) {
    if (n < 1) throw std::invalid_argument("factorization of a non-positive integer");
    std::vector<Int> ps;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

// number of distinct primes dividing d, except that d = 1 counts as 1;
// the degenerate value keeps the order formulas below uniform
inline Int prime_count(Int d) {
    if (d <= 0) throw std::invalid_argument("prime_count needs a positive argument");
    if (d == 1) return 1;
    return static_cast<Int>(distinct_prime_factors(d).size());
}

struct Multiplier {
    Int d = 1;
    Int value = 1;  // in [0, 2d), unit mod 2d, value^2 == 1 mod 4d
    bool operator==(const Multiplier& o) const { return d == o.d && value == o.value; }
};

inline std::vector<Multiplier> enumerate_multipliers(Int d) {
    if (d <= 0) throw std::invalid_argument("degree must be positive");
    std::vector<Multiplier> out;
    const Int two_d = 2 * d, four_d = 4 * d;
    for (Int a = 1; a < two_d; ++a) {
        if (gcd_int(a, two_d) != 1) continue;
        if (mul_checked(a, a) % four_d == 1 % four_d) out.push_back({d, a});
    }
    return out;  // ascending by construction
}

struct GroupElement {
    Int d = 1;
    Int rep = 1;  // min(a, 2d - a) over the class {a, 2d - a}
    bool operator==(const GroupElement& o) const { return d == o.d && rep == o.rep; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool operator<(const GroupElement& o) const {
        return d != o.d ? d < o.d : rep < o.rep;
    }
    bool is_identity() const { return rep == 1; }
};

inline GroupElement element_of(const Multiplier& m) {
    return {m.d, std::min(m.value, 2 * m.d - m.value)};
}

inline GroupElement identity_element(Int d) { return {d, 1}; }

inline std::vector<GroupElement> group_elements(Int d) {
    std::vector<GroupElement> out;
    for (const Multiplier& m : enumerate_multipliers(d)) {
        GroupElement g = element_of(m);
        if (out.empty() || !(out.back() == g)) out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline GroupElement compose(const GroupElement& a, const GroupElement& b) {
    if (a.d != b.d) throw std::invalid_argument("compose: mismatched degrees");
    Int two_d = 2 * a.d;
    Int prod = mul_checked(a.rep, b.rep) % two_d;
    return element_of({a.d, prod});
}

// k-coefficient of the image of k, reduced mod 2d.  The matrix acts in the
// standard L2d basis, so that coefficient is just f(0,0).
inline Multiplier induced_multiplier(Int d, const Isometry& f) {
    GramLattice l = l2d_lattice(d);
    if (!is_isometry(l, f.mat))
        throw std::invalid_argument("induced_multiplier: not an isometry of the polarized complement");
    Int a = mod_nonneg(f.mat(0, 0), 2 * d);
    if (gcd_int(a, 2 * d) != 1 || mul_checked(a, a) % (4 * d) != 1 % (4 * d))
        throw std::logic_error("induced multiplier is not a form multiplier");
    return {d, a};
}

// A degree-2d polarized K3 shares its period with a cubic fourfold only when
// 2d avoids 4, 9 and every odd prime that is 2 mod 3.
inline bool cubic_admissible(Int two_d) {
    if (two_d <= 0 || two_d % 2 != 0)
        throw std::invalid_argument("cubic_admissible expects a positive even argument");
    if (two_d % 4 == 0 || two_d % 9 == 0) return false;
    for (Int p : distinct_prime_factors(two_d))
        if (p > 2 && p % 3 == 2) return false;
    return true;
}

}  // namespace k3fm
