#pragma once

// Bit-packed polynomials over GF(2): bit i of the word is the coefficient
// of t^i.  Degrees stay below 49 here (field moduli have degree <= 24 and
// products of two reduced elements stay below 2*24), so uint64_t is enough.

#include <cstdint>

namespace charq::gf2 {

inline int degree(std::uint64_t f) {
    if (f == 0) return -1;
    return 63 - __builtin_clzll(f);
}

// Carryless (XOR) product.
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

inline std::uint64_t mod(std::uint64_t f, std::uint64_t g) {
    int dg = degree(g);
    for (int df = degree(f); df >= dg; df = degree(f))
        f ^= g << (df - dg);
    return f;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t g) {
    return mod(mul(a, b), g);
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = mod(a, b);
        std::uint64_t t = a; a = b; b = t;
    }
    return a;
}

// x^(2^k) mod g, by repeated squaring of the residue.
inline std::uint64_t frob_power(std::uint64_t g, int k) {
    std::uint64_t r = mod(2 /* t */, g);
    for (int i = 0; i < k; ++i) r = mulmod(r, r, g);
    return r;
}

// Rabin irreducibility test for monic f of degree m >= 1.
inline bool irreducible(std::uint64_t f) {
    int m = degree(f);
    if (m <= 0) return false;
    if (m == 1) return true;
    if ((f & 1) == 0) return false;  // divisible by t
    if (frob_power(f, m) != 2) return false;  // x^(2^m) != x mod f
    for (int p = 2; p <= m; ++p) {
        if (m % p != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) { prime = false; break; }
        if (!prime) continue;
        std::uint64_t h = frob_power(f, m / p) ^ 2;  // x^(2^(m/p)) - x
        if (degree(gcd(h, f)) != 0) return false;
    }
    return true;
}

// The lexicographically smallest monic irreducible of degree m, where
// coefficient tuples (c0, c1, ..., cm) are compared from the constant
// term upward.  For m = 1 this yields t itself, the prime-field
// convention: GF(2)[t]/(t) = GF(2).
inline std::uint64_t first_irreducible(int m) {
    if (m == 1) return 2;  // t
    const std::uint64_t lead = std::uint64_t{1} << m;
    for (std::uint64_t key = 0; key < lead; ++key) {
        std::uint64_t f = lead;
        for (int i = 0; i < m; ++i)
            if ((key >> (m - 1 - i)) & 1) f |= std::uint64_t{1} << i;
        if (irreducible(f)) return f;
    }
    return 0;  // unreachable: irreducibles exist in every degree
}

}  // namespace charq::gf2
