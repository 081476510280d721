#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cusptransfer {

using i64 = std::int64_t;
using i128 = __int128_t;

inline i64 checked_cast(i128 v, const char* where = "integer") {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw std::overflow_error(std::string(where) + ": 64-bit overflow");
    return static_cast<i64>(v);
}

inline i64 gcd64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { i64 t = a % b; a = b; b = t; }
    return a;
}

inline i64 lcm64(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return checked_cast(i128(a) / gcd64(a, b) * b, "lcm");
}

// g = gcd(a,b) together with x,y such that a*x + b*y = g.
inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    i64 old_r = a, r = b;
    i64 old_x = 1, xx = 0;
    i64 old_y = 0, yy = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * xx; old_x = xx; xx = t;
        t = old_y - q * yy; old_y = yy; yy = t;
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    x = old_x; y = old_y;
    return old_r;
}

inline i64 mod_reduce(i64 a, i64 m) {
    if (m <= 0) throw std::invalid_argument("mod_reduce: modulus must be positive");
    i64 r = a % m;
    if (r < 0) r += m;
    return r;
}

inline i64 mul_mod(i64 a, i64 b, i64 m) {
    return checked_cast((i128(mod_reduce(a, m)) * mod_reduce(b, m)) % m, "mul_mod");
}

inline i64 inv_mod(i64 a, i64 m) {
    i64 x, y;
    i64 g = ext_gcd(mod_reduce(a, m), m, x, y);
    if (g != 1) throw std::domain_error("inv_mod: element not invertible");
    return mod_reduce(x, m);
}

inline i64 pow_mod(i64 a, i64 e, i64 m) {
    if (e < 0) return pow_mod(inv_mod(a, m), -e, m);
    i64 r = 1 % m;
    a = mod_reduce(a, m);
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline i64 ipow(i64 b, i64 e) {
    i128 r = 1;
    for (i64 i = 0; i < e; ++i) r = r * b;
    return checked_cast(r, "ipow");
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Prime factorization by trial division, exponents in increasing prime order.
inline std::vector<std::pair<i64, i64>> factorize(i64 n) {
    if (n <= 0) throw std::invalid_argument("factorize: argument must be positive");
    std::vector<std::pair<i64, i64>> f;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            i64 e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline i64 euler_phi(i64 n) {
    i64 r = 1;
    for (auto [p, e] : factorize(n)) r *= ipow(p, e - 1) * (p - 1);
    return n == 1 ? 1 : r;
}

// v_p(n) for n != 0.
inline i64 valuation(i64 n, i64 p) {
    if (n == 0) throw std::invalid_argument("valuation: argument is zero");
    if (n < 0) n = -n;
    i64 v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// Least nonnegative x with x = r_i (mod m_i).  Non-coprime moduli are accepted
// when the residues are consistent; otherwise throws.
inline i64 crt_solve(const std::vector<std::pair<i64, i64>>& congruences) {
    if (congruences.empty()) throw std::invalid_argument("crt_solve: no congruences");
    i64 r0 = 0, m0 = 1;
    for (auto [r, m] : congruences) {
        if (m <= 0) throw std::invalid_argument("crt_solve: modulus must be positive");
        r = mod_reduce(r, m);
        i64 x, y;
        i64 g = ext_gcd(m0, m, x, y);
        if ((r - r0) % g != 0) throw std::domain_error("inconsistent congruences");
        i64 lcm = checked_cast(i128(m0) / g * m, "crt modulus");
        // r0 + m0 * t = r (mod m), t = (r - r0)/g * x (mod m/g)
        i64 t = mod_reduce(checked_cast(i128((r - r0) / g) % (m / g) * (x % (m / g)), "crt"), m / g);
        r0 = mod_reduce(checked_cast(i128(r0) + i128(m0) * t, "crt"), lcm);
        m0 = lcm;
    }
    return r0;
}

}  // namespace cusptransfer
