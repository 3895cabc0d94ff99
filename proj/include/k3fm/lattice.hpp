#pragma once

// Even-lattice core: Gram containers, the standard builders used by the rest
// of the package, and the exact linear algebra on them (signature, dual
// quotient, reflections, saturation of a rank-2 sublattice).
//
// Fixed basis conventions, used throughout and by the serialized output:
//   U          hyperbolic plane, basis e, f with e*e = f*f = 0, e*f = 1.
//   E8(-1)     negatived E8 Cartan matrix; nodes 0..6 form a chain and node 7
//              hangs off node 4, so the diagram is T(2,3,5).
//   Lambda     U + U + U + E8(-1) + E8(-1), rank 22.
//   L2d        <k> + U + U + E8(-1) + E8(-1), rank 21, k*k = -2d, k first.

#include <Eigen/Dense>
#include <algorithm>
#include <utility>
#include <vector>

#include "k3fm/arith.hpp"
#include "k3fm/smith.hpp"

namespace k3fm {

struct Signature {
    Int positive = 0;
    Int negative = 0;
    bool operator==(const Signature& o) const {
        return positive == o.positive && negative == o.negative;
    }
};

namespace detail {

// Exact symmetric congruence reduction; counts pivot signs.  Zero diagonal
// with a nonzero row is repaired by adding a suitable other basis vector.
inline Signature signature_of_gram(const IMat& g, bool* degenerate) {
    const Eigen::Index n = g.rows();
    std::vector<std::vector<Frac>> a(n, std::vector<Frac>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a[i][j] = Frac(g(i, j));

    Signature sig;
    if (degenerate) *degenerate = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (a[i][i].is_zero()) {
            Eigen::Index j = -1;
            for (Eigen::Index c = i + 1; c < n; ++c)
                if (!a[i][c].is_zero()) { j = c; break; }
            if (j < 0) {
                if (degenerate) *degenerate = true;
                continue;
            }
            // basis change v_i += v_j (or -=) makes the diagonal nonzero
            Frac twice = a[i][j] + a[i][j];
            Frac plus = twice + a[j][j];
            int s = plus.is_zero() ? -1 : 1;
            for (Eigen::Index c = 0; c < n; ++c)
                a[i][c] = (s > 0) ? a[i][c] + a[j][c] : a[i][c] - a[j][c];
            for (Eigen::Index r = 0; r < n; ++r)
                a[r][i] = (s > 0) ? a[r][i] + a[r][j] : a[r][i] - a[r][j];
        }
        Frac p = a[i][i];
        if (p.sign() > 0) ++sig.positive; else ++sig.negative;
        for (Eigen::Index r = i + 1; r < n; ++r) {
            if (a[r][i].is_zero()) continue;
            Frac q = a[r][i] / p;
            for (Eigen::Index c = i; c < n; ++c) a[r][c] = a[r][c] - q * a[i][c];
            for (Eigen::Index c = i; c < n; ++c) a[c][r] = a[r][c];
        }
    }
    return sig;
}

}  // namespace detail

class GramLattice {
  public:
    explicit GramLattice(IMat gram) : gram_(std::move(gram)) {
        if (gram_.rows() != gram_.cols() || gram_.rows() == 0)
            throw std::invalid_argument("gram matrix must be square and nonempty");
        for (Eigen::Index i = 0; i < gram_.rows(); ++i)
            for (Eigen::Index j = 0; j < i; ++j)
                if (gram_(i, j) != gram_(j, i))
                    throw std::invalid_argument("gram matrix must be symmetric");
        bool degenerate = false;
        sig_ = detail::signature_of_gram(gram_, &degenerate);
        if (degenerate) throw std::invalid_argument("gram matrix is degenerate");
    }

    Int rank() const { return gram_.rows(); }
    const IMat& gram() const { return gram_; }
    Signature signature() const { return sig_; }

    bool is_even() const {
        for (Eigen::Index i = 0; i < gram_.rows(); ++i)
            if (gram_(i, i) % 2 != 0) return false;
        return true;
    }

  private:
    IMat gram_;
    Signature sig_;
};

inline GramLattice hyperbolic_plane() {
    IMat g(2, 2);
    g << 0, 1, 1, 0;
    return GramLattice(g);
}

inline GramLattice e8_negative() {
    IMat g = IMat::Zero(8, 8);
    for (int i = 0; i < 8; ++i) g(i, i) = -2;
    const int edges[7][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}};
    for (auto& e : edges) { g(e[0], e[1]) = 1; g(e[1], e[0]) = 1; }
    return GramLattice(g);
}

inline GramLattice rank_one(Int square) {
    if (square == 0 || square % 2 != 0)
        throw std::invalid_argument("rank-one lattice needs a nonzero even square");
    IMat g(1, 1);
    g(0, 0) = square;
    return GramLattice(g);
}

inline GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
    Int n = a.rank(), m = b.rank();
    IMat g = IMat::Zero(n + m, n + m);
    g.topLeftCorner(n, n) = a.gram();
    g.bottomRightCorner(m, m) = b.gram();
    return GramLattice(g);
}

// U + U + U + E8(-1) + E8(-1)
inline GramLattice k3_lattice() {
    GramLattice u = hyperbolic_plane(), e8 = e8_negative();
    return direct_sum(direct_sum(direct_sum(u, u), direct_sum(u, e8)), e8);
}

// <-2d> + U + U + E8(-1) + E8(-1), the polarization complement
inline GramLattice l2d_lattice(Int d) {
    if (d <= 0) throw std::invalid_argument("polarization degree must be positive");
    GramLattice u = hyperbolic_plane(), e8 = e8_negative();
    return direct_sum(direct_sum(rank_one(-2 * d), direct_sum(u, u)),
                      direct_sum(e8, e8));
}

inline void check_vector(const GramLattice& l, const IVec& v, const char* what) {
    if (v.size() != l.rank())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

inline Int inner(const GramLattice& l, const IVec& v, const IVec& w) {
    check_vector(l, v, "inner");
    check_vector(l, w, "inner");
    I128 acc = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) == 0) continue;
        I128 row = 0;
        for (Eigen::Index j = 0; j < w.size(); ++j)
            if (w(j) != 0) row = add_i128(row, mul_i128(l.gram()(i, j), w(j)));
        acc = add_i128(acc, mul_i128(v(i), row));
    }
    return checked_int(acc);
}

inline Int content(const IVec& v) {
    Int g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd_int(g, v(i));
    return g;
}

inline bool is_primitive(const GramLattice& l, const IVec& v) {
    check_vector(l, v, "is_primitive");
    Int c = content(v);
    if (c == 0) throw std::invalid_argument("is_primitive: zero vector");
    return c == 1;
}

// gcd of pairings with the lattice, i.e. the content of gram * v
inline Int divisibility(const GramLattice& l, const IVec& v) {
    check_vector(l, v, "divisibility");
    if (content(v) == 0) throw std::invalid_argument("divisibility: zero vector");
    Int g = 0;
    for (Eigen::Index i = 0; i < l.rank(); ++i) {
        I128 acc = 0;
        for (Eigen::Index j = 0; j < v.size(); ++j)
            if (v(j) != 0) acc = add_i128(acc, mul_i128(l.gram()(i, j), v(j)));
        g = gcd_int(g, checked_int(acc));
    }
    return g;
}

// Dual quotient: cyclic factors of order > 1 with generator q-values mod 2
// and generator pairings mod 1, all as exact reduced fractions.
struct DiscriminantGroup {
    std::vector<Int> elementary_divisors;       // ascending, each divides the next
    std::vector<Frac> q_values;                 // q(g_i) in [0, 2)
    std::vector<std::vector<Frac>> pairings;    // <g_i, g_j> in [0, 1)

    bool is_trivial() const { return elementary_divisors.empty(); }
    Int order() const {
        Int n = 1;
        for (Int e : elementary_divisors) n = mul_checked(n, e);
        return n;
    }
    bool is_cyclic() const { return elementary_divisors.size() <= 1; }
};

inline DiscriminantGroup discriminant_group(const GramLattice& l) {
    SmithResult s = smith_normal_form(l.gram());
    const Eigen::Index n = l.rank();

    DiscriminantGroup dg;
    std::vector<IVec> gens;       // lifted generator = v column / divisor
    std::vector<Int> divs;
    for (Eigen::Index i = 0; i < n; ++i) {
        Int e = s.d(i, i);
        if (e > 1) { divs.push_back(e); gens.push_back(s.v.col(i)); }
    }
    dg.elementary_divisors = divs;
    const std::size_t k = divs.size();
    dg.q_values.resize(k);
    dg.pairings.assign(k, std::vector<Frac>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            I128 acc = 0;
            for (Eigen::Index a = 0; a < n; ++a)
                for (Eigen::Index b = 0; b < n; ++b)
                    if (gens[i](a) != 0 && gens[j](b) != 0)
                        acc = add_i128(acc, mul_i128(mul_i128(gens[i](a), l.gram()(a, b)),
                                                     gens[j](b)));
            Frac val(checked_int(acc), mul_checked(divs[i], divs[j]));
            dg.pairings[i][j] = val.mod_one();
            if (i == j) dg.q_values[i] = val.mod_two();
        }
    }
    return dg;
}

struct Isometry {
    IMat mat;
};

inline bool is_isometry(const GramLattice& l, const IMat& f) {
    if (f.rows() != l.rank() || f.cols() != l.rank()) return false;
    // f^T * g * f == g, exactly
    const IMat& g = l.gram();
    const Eigen::Index n = l.rank();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            I128 acc = 0;
            for (Eigen::Index a = 0; a < n; ++a) {
                if (f(a, i) == 0) continue;
                I128 row = 0;
                for (Eigen::Index b = 0; b < n; ++b)
                    if (f(b, j) != 0)
                        row = add_i128(row, mul_i128(g(a, b), f(b, j)));
                acc = add_i128(acc, mul_i128(f(a, i), row));
            }
            if (acc != static_cast<I128>(g(i, j))) return false;
        }
    return true;
}

inline Isometry make_isometry(const GramLattice& l, IMat f) {
    if (!is_isometry(l, f)) throw std::invalid_argument("matrix does not preserve the form");
    return Isometry{std::move(f)};
}

struct NonIntegralReflection : std::runtime_error {
    explicit NonIntegralReflection(const std::string& msg) : std::runtime_error(msg) {}
};

// x -> x - 2 (x*beta)/(beta*beta) beta; defined over Z iff beta^2 | 2 div(beta)
inline Isometry reflection(const GramLattice& l, const IVec& beta) {
    check_vector(l, beta, "reflection");
    Int b2 = inner(l, beta, beta);
    if (b2 == 0) throw std::invalid_argument("reflection in an isotropic vector");
    const Eigen::Index n = l.rank();
    IVec pair(n);  // pairings of beta with the basis
    for (Eigen::Index i = 0; i < n; ++i) {
        I128 acc = 0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (beta(j) != 0) acc = add_i128(acc, mul_i128(l.gram()(i, j), beta(j)));
        pair(i) = checked_int(acc);
    }
    IMat f = IMat::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Int num = mul_checked(2, pair(i));
        if (num % b2 != 0)
            throw NonIntegralReflection("non-integral reflection: square does not divide twice the divisibility");
        Int q = num / b2;
        for (Eigen::Index r = 0; r < n; ++r)
            f(r, i) = checked_int(static_cast<I128>(f(r, i)) - mul_i128(q, beta(r)));
    }
    return Isometry{std::move(f)};
}

struct Saturation {
    IMat gram;   // 2x2 gram of the primitive closure
    Int index;   // index of span{v, w} inside it
};

// Primitive closure of span{v, w}: the first two dual rows of the column
// transform of the Smith form of the 2 x n coordinate matrix.
inline Saturation saturate_pair(const GramLattice& l, const IVec& v, const IVec& w) {
    check_vector(l, v, "saturate_pair");
    check_vector(l, w, "saturate_pair");
    const Eigen::Index n = l.rank();
    IMat b(2, n);
    b.row(0) = v.transpose();
    b.row(1) = w.transpose();
    SmithResult s = smith_normal_form(b);
    if (s.d(0, 0) == 0 || s.d(1, 1) == 0)
        throw std::invalid_argument("saturate_pair: vectors are linearly dependent");

    IMat basis = s.v_inv.topRows(2);  // rows span the saturation
    IMat g(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            IVec a = basis.row(i).transpose(), c = basis.row(j).transpose();
            g(i, j) = inner(l, a, c);
        }
    return Saturation{g, mul_checked(s.d(0, 0), s.d(1, 1))};
}

// Rank-21 sublattice <k> + U + U + E8 + E8 sitting inside Lambda as the
// orthogonal complement of h = e1 + d f1, with k = e1 - d f1.
struct HyperplaneModel {
    GramLattice lambda;
    IVec h;      // polarization class, h*h = 2d
    IMat iota;   // 22 x 21, columns are the images of the L2d basis
};

inline HyperplaneModel l2d_in_lambda(Int d) {
    if (d <= 0) throw std::invalid_argument("polarization degree must be positive");
    HyperplaneModel m{k3_lattice(), IVec::Zero(22), IMat::Zero(22, 21)};
    m.h(0) = 1;
    m.h(1) = d;
    m.iota(0, 0) = 1;
    m.iota(1, 0) = -d;                       // k = e1 - d f1
    for (int j = 1; j < 21; ++j) m.iota(j + 1, j) = 1;  // shift past the first plane
    return m;
}

}  // namespace k3fm
