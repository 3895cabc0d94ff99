#pragma once

// Smith normal form over Z for dense integer matrices, tracking the
// unimodular transforms on both sides.  Pivoting picks the entry of least
// absolute value; intermediate values still grow much faster than the input,
// so the elimination runs in 128 bits and only the final matrices are
// narrowed (with a range check) back to 64.

#include <Eigen/Dense>
#include <cstdlib>
#include <vector>

#include "k3fm/arith.hpp"

namespace k3fm {

using IMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

inline bool mats_equal(const IMat& a, const IMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return (a.array() == b.array()).all();
}

// exact product with 128-bit accumulation; throws on 64-bit overflow
inline IMat mul_exact(const IMat& a, const IMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mul_exact: shape mismatch");
    IMat r(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            I128 acc = 0;
            for (Eigen::Index k = 0; k < a.cols(); ++k)
                acc = add_i128(acc, mul_i128(a(i, k), b(k, j)));
            r(i, j) = checked_int(acc);
        }
    return r;
}

struct SmithResult {
    IMat d;      // u * m * v = d, diagonal with positive entries dividing forward
    IMat u;      // unimodular, rows
    IMat v;      // unimodular, cols
    IMat v_inv;  // v * v_inv = id

    std::vector<Int> elementary_divisors() const {
        std::vector<Int> out;
        Eigen::Index n = std::min(d.rows(), d.cols());
        for (Eigen::Index i = 0; i < n; ++i)
            if (d(i, i) != 0) out.push_back(d(i, i));
        return out;
    }
};

namespace detail {

using Wide = std::vector<std::vector<I128>>;

inline Wide wide_identity(Eigen::Index n) {
    Wide w(n, std::vector<I128>(n, 0));
    for (Eigen::Index i = 0; i < n; ++i) w[i][i] = 1;
    return w;
}

inline I128 wabs(I128 v) { return v < 0 ? -v : v; }

inline void wrow_swap(Wide& d, Wide& u, Eigen::Index a, Eigen::Index b) {
    std::swap(d[a], d[b]);
    std::swap(u[a], u[b]);
}

inline void wrow_negate(Wide& d, Wide& u, Eigen::Index a) {
    for (I128& x : d[a]) x = -x;
    for (I128& x : u[a]) x = -x;
}

// row a += q * row b
inline void wrow_add(Wide& d, Wide& u, Eigen::Index a, Eigen::Index b, I128 q) {
    for (std::size_t j = 0; j < d[a].size(); ++j)
        d[a][j] = add_i128(d[a][j], mul_i128(q, d[b][j]));
    for (std::size_t j = 0; j < u[a].size(); ++j)
        u[a][j] = add_i128(u[a][j], mul_i128(q, u[b][j]));
}

inline void wcol_swap(Wide& d, Wide& v, Wide& vi, Eigen::Index a, Eigen::Index b) {
    for (auto& row : d) std::swap(row[a], row[b]);
    for (auto& row : v) std::swap(row[a], row[b]);
    std::swap(vi[a], vi[b]);
}

inline void wcol_negate(Wide& d, Wide& v, Wide& vi, Eigen::Index a) {
    for (auto& row : d) row[a] = -row[a];
    for (auto& row : v) row[a] = -row[a];
    for (I128& x : vi[a]) x = -x;
}

// col a += q * col b; the inverse transform subtracts on the rows of v_inv
inline void wcol_add(Wide& d, Wide& v, Wide& vi, Eigen::Index a, Eigen::Index b, I128 q) {
    for (auto& row : d) row[a] = add_i128(row[a], mul_i128(q, row[b]));
    for (auto& row : v) row[a] = add_i128(row[a], mul_i128(q, row[b]));
    for (std::size_t j = 0; j < vi[b].size(); ++j)
        vi[b][j] = add_i128(vi[b][j], mul_i128(-q, vi[a][j]));
}

inline IMat narrow(const Wide& w, Eigen::Index rows, Eigen::Index cols) {
    IMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = checked_int(w[i][j]);
    return m;
}

}  // namespace detail

inline SmithResult smith_normal_form(const IMat& m) {
    using namespace detail;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Wide d(rows, std::vector<I128>(cols));
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) d[i][j] = m(i, j);
    Wide u = wide_identity(rows), v = wide_identity(cols), vi = wide_identity(cols);

    const Eigen::Index steps = std::min(rows, cols);
    for (Eigen::Index t = 0; t < steps; ++t) {
        for (;;) {
            // smallest nonzero |entry| of the trailing block into pivot place;
            // re-selecting every pass keeps the quotients small
            Eigen::Index pi = -1, pj = -1;
            I128 best = 0;
            for (Eigen::Index i = t; i < rows; ++i)
                for (Eigen::Index j = t; j < cols; ++j) {
                    I128 a = wabs(d[i][j]);
                    if (a != 0 && (pi < 0 || a < best)) { best = a; pi = i; pj = j; }
                }
            if (pi < 0) break;
            if (pi != t) wrow_swap(d, u, t, pi);
            if (pj != t) wcol_swap(d, v, vi, t, pj);

            bool dirty = false;
            for (Eigen::Index i = t + 1; i < rows; ++i) {
                if (d[i][t] == 0) continue;
                I128 q = d[i][t] / d[t][t];
                if (q != 0) wrow_add(d, u, i, t, -q);
                if (d[i][t] != 0) dirty = true;  // remainder smaller than pivot
            }
            for (Eigen::Index j = t + 1; j < cols; ++j) {
                if (d[t][j] == 0) continue;
                I128 q = d[t][j] / d[t][t];
                if (q != 0) wcol_add(d, v, vi, j, t, -q);
                if (d[t][j] != 0) dirty = true;
            }
            if (dirty) continue;

            // pivot must divide the rest of the block
            bool divides = true;
            for (Eigen::Index i = t + 1; i < rows && divides; ++i)
                for (Eigen::Index j = t + 1; j < cols && divides; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        wrow_add(d, u, t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (d[t][t] < 0) wrow_negate(d, u, t);
        if (d[t][t] == 0) break;  // trailing block exhausted
    }

    SmithResult s;
    s.d = narrow(d, rows, cols);
    s.u = narrow(u, rows, rows);
    s.v = narrow(v, cols, cols);
    s.v_inv = narrow(vi, cols, cols);
    return s;
}

}  // namespace k3fm
