#include <doctest.h>

#include <random>

#include "k3fm/lattice.hpp"

using namespace k3fm;

namespace {

IVec vec(std::initializer_list<Int> xs) {
    IVec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (Int x : xs) v(i++) = x;
    return v;
}

IVec basis_vec(Int n, Int i, Int scale = 1) {
    IVec v = IVec::Zero(n);
    v(i) = scale;
    return v;
}

}  // namespace

TEST_CASE("standard builders have the expected shape") {
    GramLattice u = hyperbolic_plane();
    CHECK(u.rank() == 2);
    CHECK(u.gram()(0, 0) == 0);
    CHECK(u.gram()(0, 1) == 1);
    CHECK(u.signature() == Signature{1, 1});
    CHECK(u.is_even());

    GramLattice e8 = e8_negative();
    CHECK(e8.rank() == 8);
    CHECK(e8.signature() == Signature{0, 8});
    CHECK(e8.is_even());
    CHECK(discriminant_group(e8).is_trivial());  // unimodular chain + leg 2,3,5

    GramLattice k3 = k3_lattice();
    CHECK(k3.rank() == 22);
    CHECK(k3.signature() == Signature{3, 19});
    CHECK(discriminant_group(k3).is_trivial());

    GramLattice l12 = l2d_lattice(6);
    CHECK(l12.rank() == 21);
    CHECK(l12.gram()(0, 0) == -12);
    CHECK(l12.signature() == Signature{2, 19});
    CHECK(l12.is_even());

    CHECK_THROWS_AS(rank_one(3), std::invalid_argument);
    CHECK_THROWS_AS(rank_one(0), std::invalid_argument);
    CHECK_THROWS_AS(l2d_lattice(0), std::invalid_argument);
}

TEST_CASE("gram validation") {
    IMat bad(2, 3);
    bad.setZero();
    CHECK_THROWS_AS(GramLattice{bad}, std::invalid_argument);
    IMat asym(2, 2);
    asym << 0, 1, 2, 0;
    CHECK_THROWS_AS(GramLattice{asym}, std::invalid_argument);
    IMat dgn(2, 2);
    dgn << 1, 1, 1, 1;
    CHECK_THROWS_AS(GramLattice{dgn}, std::invalid_argument);
}

TEST_CASE("signature handles zero diagonals exactly") {
    IMat m(2, 2);
    m << 0, 1, 1, -2;  // determinant -1
    CHECK(GramLattice(m).signature() == Signature{1, 1});
    IMat w(2, 2);
    w << 2, 4, 4, 2;  // determinant -12
    CHECK(GramLattice(w).signature() == Signature{1, 1});
    IMat nd(3, 3);
    nd << -2, 1, 0, 1, -2, 1, 0, 1, -2;
    CHECK(GramLattice(nd).signature() == Signature{0, 3});
}

TEST_CASE("inner products, content, primitivity, divisibility") {
    GramLattice l = l2d_lattice(6);
    IVec k = basis_vec(21, 0);
    CHECK(inner(l, k, k) == -12);
    IVec ef = basis_vec(21, 1) + basis_vec(21, 2);
    CHECK(inner(l, ef, ef) == 2);
    CHECK(inner(l, k, ef) == 0);

    CHECK(content(vec({6, -10, 15})) == 1);
    CHECK(content(vec({4, -6, 8})) == 2);
    CHECK(is_primitive(l, ef));
    CHECK_FALSE(is_primitive(l, IVec(2 * ef)));
    CHECK_THROWS_AS(is_primitive(l, IVec(IVec::Zero(21))), std::invalid_argument);

    CHECK(divisibility(l, k) == 12);
    CHECK(divisibility(l, ef) == 1);
    IVec beta = basis_vec(21, 0) + 2 * basis_vec(21, 1) + 2 * basis_vec(21, 2);
    CHECK(divisibility(l, beta) == gcd_int(12 * 1, 2));  // gcd(2d a, m)
}

TEST_CASE("discriminant groups via the dual quotient") {
    CHECK(discriminant_group(hyperbolic_plane()).is_trivial());

    DiscriminantGroup r = discriminant_group(rank_one(-12));
    REQUIRE(r.elementary_divisors == std::vector<Int>{12});
    CHECK(r.q_values[0] == Frac(23, 12));  // -1/12 mod 2
    CHECK(r.pairings[0][0] == Frac(11, 12));

    for (Int d = 1; d <= 50; ++d) {
        DiscriminantGroup g = discriminant_group(l2d_lattice(d));
        REQUIRE(g.is_cyclic());
        REQUIRE(g.order() == 2 * d);
        CHECK(g.q_values[0] == Frac(4 * d - 1, 2 * d));
        DiscriminantGroup h = discriminant_group(rank_one(-2 * d));
        CHECK(g.elementary_divisors == h.elementary_divisors);
        CHECK(g.q_values[0] == h.q_values[0]);
    }
}

TEST_CASE("isometry checks are exact") {
    GramLattice u = hyperbolic_plane();
    IMat swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(is_isometry(u, swap));
    CHECK(is_isometry(u, IMat(IMat::Identity(2, 2))));
    IMat shear(2, 2);
    shear << 1, 1, 0, 1;
    CHECK_FALSE(is_isometry(u, shear));
    CHECK_THROWS_AS(make_isometry(u, shear), std::invalid_argument);
    CHECK(mats_equal(make_isometry(u, swap).mat, swap));
}

TEST_CASE("reflections") {
    GramLattice u = hyperbolic_plane();
    Isometry s = reflection(u, vec({1, -1}));  // square -2, swaps the basis
    IMat swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(mats_equal(s.mat, swap));

    GramLattice l = l2d_lattice(6);
    Isometry r = reflection(l, basis_vec(21, 0));  // the polarization dual
    IMat expect = IMat::Identity(21, 21);
    expect(0, 0) = -1;
    CHECK(mats_equal(r.mat, expect));
    CHECK(is_isometry(l, r.mat));

    IVec bad = basis_vec(21, 0) + basis_vec(21, 1) + basis_vec(21, 2);
    CHECK_THROWS_AS(reflection(l, bad), NonIntegralReflection);
    CHECK_THROWS_AS(reflection(u, vec({1, 0})), std::invalid_argument);  // isotropic

    GramLattice uu = direct_sum(hyperbolic_plane(), hyperbolic_plane());
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Int> entry(-4, 4);
    int found = 0;
    while (found < 25) {
        IVec b(4);
        for (int i = 0; i < 4; ++i) b(i) = entry(rng);
        if (content(b) == 0) continue;
        Int b2 = inner(uu, b, b);
        if (b2 == 0) continue;
        if ((2 * divisibility(uu, b)) % b2 != 0) continue;
        Isometry f = reflection(uu, b);
        CHECK(is_isometry(uu, f.mat));
        CHECK(mats_equal(mul_exact(f.mat, f.mat), IMat::Identity(4, 4)));
        ++found;
    }
}

TEST_CASE("saturation invariants") {
    GramLattice u = hyperbolic_plane();
    Saturation s = saturate_pair(u, vec({2, 0}), vec({0, 2}));
    CHECK(s.index == 4);
    Int det = s.gram(0, 0) * s.gram(1, 1) - s.gram(0, 1) * s.gram(1, 0);
    CHECK(det == -1);  // the whole plane
    CHECK_THROWS_AS(saturate_pair(u, vec({1, 0}), vec({-3, 0})), std::invalid_argument);
}

TEST_CASE("hyperplane model embeds the polarization complement") {
    for (Int d : {1, 6, 15}) {
        HyperplaneModel m = l2d_in_lambda(d);
        CHECK(inner(m.lambda, m.h, m.h) == 2 * d);
        IMat pulled = mul_exact(mul_exact(m.iota.transpose(), m.lambda.gram()), m.iota);
        CHECK(mats_equal(pulled, l2d_lattice(d).gram()));
        for (int j = 0; j < 21; ++j) {
            IVec col = m.iota.col(j);
            CHECK(inner(m.lambda, col, m.h) == 0);
        }
    }
}

TEST_CASE("saturating the degree-12 polarization with its reflective class") {
    HyperplaneModel m = l2d_in_lambda(6);
    IVec beta = IVec::Zero(22);
    beta(0) = 1;
    beta(1) = -6;
    beta(2) = 2;
    beta(3) = 2;  // k + 2(e2 + f2), square -4
    CHECK(inner(m.lambda, beta, beta) == -4);
    Saturation s = saturate_pair(m.lambda, m.h, beta);
    CHECK(s.index == 2);
    IMat expect(2, 2);
    expect << 12, -6, -6, 2;
    CHECK(mats_equal(s.gram, expect));

    // the half-sum and half-difference generate it, with the two-conic gram
    IVec usum = IVec::Zero(22), vdiff = IVec::Zero(22);
    usum(0) = 1; usum(2) = 1; usum(3) = 1;
    vdiff(1) = 6; vdiff(2) = -1; vdiff(3) = -1;
    CHECK(inner(m.lambda, usum, usum) == 2);
    CHECK(inner(m.lambda, vdiff, vdiff) == 2);
    CHECK(inner(m.lambda, usum, vdiff) == 4);
}
