// Acceptance gate: every release-blocking check, one line per criterion.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <random>
#include <set>

#include "k3fm/heegner.hpp"

using namespace k3fm;

namespace {

int failures = 0;

template <typename F>
void criterion(int idx, const char* what, double limit_secs, F body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" [exception: ") + e.what() + "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_secs > 0 && secs > limit_secs) {
        ok = false;
        note += " [over time budget]";
    }
    std::printf("[%s] criterion %d: %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", idx, what,
                secs, note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

// determinant modulo a large prime, enough to pin down a value known to be +-1
Int det_mod_p(IMat m, Int p) {
    const Eigen::Index n = m.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = mod_nonneg(m(i, j), p);
    auto inv = [&](Int a) {
        Int r = 1, b = mod_nonneg(a, p), e = p - 2;
        while (e > 0) {
            if (e & 1) r = checked_int(mul_i128(r, b) % p);
            b = checked_int(mul_i128(b, b) % p);
            e >>= 1;
        }
        return r;
    };
    Int det = 1;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index r = c; r < n; ++r)
            if (m(r, c) != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            m.row(piv).swap(m.row(c));
            det = p - det;
        }
        det = checked_int(mul_i128(det, m(c, c)) % p);
        Int ic = inv(m(c, c));
        for (Eigen::Index r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            Int f = checked_int(mul_i128(m(r, c), ic) % p);
            for (Eigen::Index j = c; j < n; ++j)
                m(r, j) = mod_nonneg(m(r, j) - checked_int(mul_i128(f, m(c, j)) % p), p);
        }
    }
    return det % p;
}

bool check_group_orders() {
    for (Int d = 1; d <= 2000; ++d) {
        auto ms = enumerate_multipliers(d);
        Int expect_ms = (d == 1) ? 1 : (Int{1} << prime_count(d));
        if (static_cast<Int>(ms.size()) != expect_ms) return false;
        Int prev = 0;
        for (const Multiplier& m : ms) {
            if (m.value <= prev || m.value >= 2 * d) return false;
            prev = m.value;
            if (gcd_int(m.value, 2 * d) != 1) return false;
            if (mod_nonneg(mul_checked(m.value, m.value) - 1, 4 * d) != 0) return false;
        }
        auto gs = group_elements(d);
        if (static_cast<Int>(gs.size()) != (Int{1} << (prime_count(d) - 1))) return false;
        for (const GroupElement& g : gs)
            if (compose(g, g) != identity_element(d)) return false;
    }
    return true;
}

bool check_mukai_bijection() {
    for (Int d = 1; d <= 500; ++d) {
        auto pairs = coprime_factorizations(d);
        auto gs = group_elements(d);
        if (pairs.size() != gs.size()) return false;
        if (static_cast<Int>(pairs.size()) != fm_partner_count(d)) return false;
        std::set<GroupElement> hit;
        for (const CoprimePair& p : pairs) {
            GroupElement g = mukai_group_element(d, p);
            if (compose(g, g) != identity_element(d)) return false;
            hit.insert(g);
        }
        if (hit.size() != gs.size()) return false;
        if (!mukai_group_element(d, {1, d}).is_identity()) return false;
    }
    return true;
}

bool check_degree_twelve() {
    FixedLocusReport r = classify_fixed_divisors(6);
    if (r.entries.size() != 1) return false;
    if (!(r.entries[0].first == GroupElement{6, 5})) return false;
    if (r.entries[0].second.size() != 1) return false;
    if (!(r.entries[0].second[0] == HeegnerInvariant{6, 4, 2, 6})) return false;
    IMat g = generic_ns_gram(6, {1, 2, 2});
    IMat expect(2, 2), conics(2, 2);
    expect << 12, -6, -6, 2;
    conics << 2, 4, 4, 2;
    return mats_equal(g, expect) && forms_equivalent(g, conics);
}

bool check_degree_thirty() {
    FixedLocusReport r = classify_fixed_divisors(15);
    if (r.entries.size() != 1) return false;
    if (!(r.entries[0].first == GroupElement{15, 11})) return false;
    if (!r.entries[0].second.empty()) return false;
    return !has_fixed_class_with_norm(15, 6) && !has_fixed_class_with_norm(15, 10);
}

bool check_twice_prime_family() {
    for (Int p : {3, 11, 19, 43, 59, 67, 83}) {
        auto cls = classes_of(classify_fixed_divisors(2 * p));
        if (cls.size() != 1) return false;
        if (!(cls[0].inv == HeegnerInvariant{2 * p, 4, 2, 2 * p})) return false;
        if (!(cls[0].g == GroupElement{2 * p, 2 * p - 1})) return false;
    }
    return true;
}

bool check_against_search() {
    for (Int d = 1; d <= 60; ++d) {
        auto fast = classes_of(classify_fixed_divisors(d));
        if (fast != brute_force_classify(d, 2 * d)) return false;
        if (fast != brute_force_classify(d, 4 * d)) return false;
    }
    return true;
}

bool check_dual_quotients() {
    for (Int d = 1; d <= 50; ++d) {
        DiscriminantGroup g = discriminant_group(l2d_lattice(d));
        if (!g.is_cyclic() || g.order() != 2 * d) return false;
        if (g.q_values.size() != 1) return false;
        if (g.q_values[0] != Frac(4 * d - 1, 2 * d)) return false;
    }
    return true;
}

bool check_random_reflections() {
    std::mt19937_64 rng(20260823);
    std::uniform_int_distribution<Int> pick_d(1, 50), pick_mu(1, 3);
    const Int prime = 1000000007;
    int accepted = 0;
    while (accepted < 1000) {
        Int d = pick_d(rng);
        std::vector<Int> ns;
        for (Int n : even_divisors(2 * d))
            if (n != 2 && n != 2 * d) ns.push_back(n);
        if (ns.empty()) continue;
        Int n = ns[std::uniform_int_distribution<size_t>(0, ns.size() - 1)(rng)];
        Int alpha = std::uniform_int_distribution<Int>(0, 4 * d - 1)(rng);
        Int m = (n / 2) * pick_mu(rng);
        I128 num = mul_i128(2 * d, mul_i128(alpha, alpha)) - n;
        if (num % mul_i128(m, m) != 0) continue;
        Int jsq = checked_int(num / mul_i128(m, m));
        if (jsq % 2 != 0) continue;
        ReflectiveCandidate c{alpha, m, jsq};
        if (!in_reflective_set(d, c)) continue;

        GramLattice l = l2d_lattice(d);
        Isometry f = reflection(l, embed_candidate(c));
        if (!is_isometry(l, f.mat)) return false;
        if (!mats_equal(mul_exact(f.mat, f.mat), IMat::Identity(21, 21))) return false;
        if (det_mod_p(f.mat, prime) != prime - 1) return false;
        if (!(induced_multiplier(d, f) == reflection_multiplier(d, c))) return false;
        ++accepted;
    }
    return true;
}

bool check_prime_powers_and_uniqueness() {
    for (Int d = 2; d <= 200; ++d) {
        if (distinct_prime_factors(d).size() == 1) {
            if (classify_fixed_divisors(d).total_classes() != 0) return false;
        }
    }
    for (Int d = 1; d <= 200; ++d) {
        std::set<HeegnerInvariant> seen;
        for (const FixedClass& c : classes_of(classify_fixed_divisors(d))) {
            if (seen.count(c.inv)) return false;
            seen.insert(c.inv);
        }
    }
    return true;
}

}  // namespace

int main() {
    criterion(1, "multiplier group orders for d up to 2000", 60, check_group_orders);
    criterion(2, "coprime factorizations biject onto the group for d up to 500", 10,
              check_mukai_bijection);
    criterion(3, "degree 12: one fixed class, two-conic generic gram", 0, check_degree_twelve);
    criterion(4, "degree 30: no fixed classes, both norms obstructed", 0, check_degree_thirty);
    criterion(5, "twice a prime 3 mod 8: exactly one fixed class of norm 4", 30,
              check_twice_prime_family);
    criterion(6, "classifier equals bounded vector search for d up to 60", 300,
              check_against_search);
    criterion(7, "rank-21 dual quotients are cyclic of order 2d with the right square", 0,
              check_dual_quotients);
    criterion(8, "1000 random reflective vectors give honest involutions", 0,
              check_random_reflections);
    criterion(9, "prime powers are empty and invariants determine the element", 0,
              check_prime_powers_and_uniqueness);
    if (failures == 0) std::printf("all criteria passed\n");
    else std::printf("%d criteria failed\n", failures);
    return failures;
}
