#pragma once

// Exact integer and rational scalar helpers shared by the lattice code.
// All arithmetic is overflow-checked; anything that would leave the
// representable range throws instead of wrapping.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace k3fm {

using Int = std::int64_t;
using I128 = __int128;

inline Int checked_int(I128 v) {
    static const I128 lo = static_cast<I128>(INT64_MIN);
    static const I128 hi = static_cast<I128>(INT64_MAX);
    if (v < lo || v > hi) throw std::overflow_error("value exceeds 64-bit range");
    return static_cast<Int>(v);
}

inline I128 mul_i128(I128 a, I128 b) {
    I128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("128-bit multiply overflow");
    return r;
}

inline I128 add_i128(I128 a, I128 b) {
    I128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("128-bit add overflow");
    return r;
}

inline Int mul_checked(Int a, Int b) { return checked_int(mul_i128(a, b)); }
inline Int add_checked(Int a, Int b) { return checked_int(add_i128(a, b)); }

inline Int gcd_int(Int a, Int b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

// least non-negative residue
inline Int mod_nonneg(Int a, Int m) {
    if (m <= 0) throw std::invalid_argument("modulus must be positive");
    Int r = a % m;
    return r < 0 ? r + m : r;
}

struct Egcd {
    Int g, x, y;  // g = a*x + b*y
};

inline Egcd egcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    return {a, x0, y0};
}

// x == r1 (mod m1), x == r2 (mod m2); result is the least non-negative
// solution mod lcm(m1, m2).  Throws when the system is inconsistent.
inline Int crt_pair(Int r1, Int m1, Int r2, Int m2) {
    if (m1 <= 0 || m2 <= 0) throw std::invalid_argument("crt: moduli must be positive");
    Egcd e = egcd(m1, m2);
    Int diff = r2 - r1;
    if (diff % e.g != 0) throw std::invalid_argument("crt: incompatible congruences");
    Int m2g = m2 / e.g;
    Int lcm = mul_checked(m1, m2g);
    I128 t = static_cast<I128>(diff / e.g) * e.x % m2g;
    I128 x = static_cast<I128>(r1) + mul_i128(t, m1);
    x %= lcm;
    if (x < 0) x += lcm;
    return checked_int(x);
}

inline Int isqrt_floor(Int n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative value");
    if (n == 0) return 0;
    Int r = static_cast<Int>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(Int n) {
    if (n < 0) return false;
    Int r = isqrt_floor(n);
    return r * r == n;
}

// Reduced fraction with positive denominator.  Used for discriminant-form
// values (q mod 2, pairings mod 1) and for the exact signature reduction.
struct Frac {
    Int num = 0;
    Int den = 1;

    Frac() = default;
    Frac(Int n, Int d = 1) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("fraction with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        Int g = gcd_int(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Frac& o) const { return !(*this == o); }

    Frac operator+(const Frac& o) const {
        return Frac(add_checked(mul_checked(num, o.den), mul_checked(o.num, den)),
                    mul_checked(den, o.den));
    }
    Frac operator-(const Frac& o) const {
        return Frac(checked_int(mul_i128(num, o.den) - mul_i128(o.num, den)),
                    mul_checked(den, o.den));
    }
    Frac operator*(const Frac& o) const {
        return Frac(mul_checked(num, o.num), mul_checked(den, o.den));
    }
    Frac operator/(const Frac& o) const {
        if (o.num == 0) throw std::invalid_argument("fraction division by zero");
        return Frac(mul_checked(num, o.den), mul_checked(den, o.num));
    }
    Frac operator-() const { return Frac(-num, den); }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }
    int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }

    // canonical representative in [0, k): num shifted by multiples of k*den
    Frac mod(Int k) const {
        Int m = mul_checked(k, den);
        return Frac(mod_nonneg(num, m), den);
    }
    Frac mod_one() const { return mod(1); }
    Frac mod_two() const { return mod(2); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace k3fm
