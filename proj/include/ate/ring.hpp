#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "ate/errors.hpp"
#include "ate/rational.hpp"

// Arithmetic substrate for Z/NZ: factorization, least prime factor, units,
// inverses and quadratic-residue classification. Everything here is exact
// and deterministic; factorization handles any N < 2^62.

namespace ate {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

constexpr u64 kMaxModulus = (u64{1} << 62);

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = m == 1 ? 0 : 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // This base set is a proven deterministic witness set for n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

/// Pollard rho (Brent variant). Precondition: n composite, odd, not a prime power hit by trial division.
inline u64 pollard_rho(u64 n, u64 c0) {
    for (u64 c = c0;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        u64 q = 1;
        int steps = 0;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            u64 diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            q = mulmod(q, diff, n);
            if (++steps % 64 == 0) {
                d = std::gcd(q, n);
                if (d != 1) break;
            }
        }
        if (d == 1) d = std::gcd(q, n);
        if (d != 1 && d != n) return d;
        // cycle degenerated; retry with a different increment
    }
}

inline void factor_into(u64 n, std::map<u64, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    u64 d = pollard_rho(n, 1);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace detail

/// A ring size N with cached factorization and unit-structure data.
struct Modulus {
    u64 n = 0;
    std::vector<std::pair<u64, int>> factorization; // (prime, exponent), primes ascending
    u64 lpf = 0;                                    // least prime factor
    int omega = 0;                                  // number of distinct primes
    u64 totient = 0;                                // Euler phi(N)

    bool operator==(const Modulus& o) const { return n == o.n; }
};

/// Factor N > 1 (trial division to 10^7, then deterministic Miller-Rabin + Pollard rho).
inline Modulus factorize(u64 n) {
    if (n <= 1) throw DomainError("modulus must exceed 1, got " + std::to_string(n));
    if (n > kMaxModulus) throw DomainError("modulus exceeds implementation bound 2^62");

    std::map<u64, int> fac;
    u64 rest = n;
    for (u64 p : {2ull, 3ull, 5ull}) {
        while (rest % p == 0) rest /= p, fac[p]++;
    }
    constexpr u64 kTrialLimit = 10'000'000;
    for (u64 p = 7; p <= kTrialLimit && p * p <= rest; p += 6) {
        // 6k+1 / 6k+5 wheel
        while (rest % p == 0) rest /= p, fac[p]++;
        u64 q = p + 4;
        while (rest % q == 0) rest /= q, fac[q]++;
    }
    detail::factor_into(rest, fac);

    Modulus m;
    m.n = n;
    m.factorization.assign(fac.begin(), fac.end());
    m.lpf = m.factorization.front().first;
    m.omega = static_cast<int>(m.factorization.size());
    u64 phi = 1, check = 1;
    for (auto [p, a] : m.factorization) {
        u64 pk = 1;
        for (int i = 1; i < a; ++i) pk *= p;
        phi *= pk * (p - 1);
        check *= pk * p;
    }
    m.totient = phi;
    if (check != n) throw Error("internal: factorization does not multiply back to N");
    return m;
}

/// Element of Z/NZ, always stored in canonical range [0, N).
struct Residue {
    u64 value = 0;
    u64 modulus = 0;

    Residue() = default;
    Residue(i64 v, u64 n) : modulus(n) {
        i64 r = v % static_cast<i64>(n);
        if (r < 0) r += static_cast<i64>(n);
        value = static_cast<u64>(r);
    }
    Residue(const BigInt& v, u64 n) : modulus(n) {
        BigInt r = v % n;
        if (r < 0) r += n;
        value = static_cast<u64>(r);
    }
    bool operator==(const Residue& o) const = default;
};

/// Multiplicative inverse of c mod N; throws NotAUnitError when gcd(c, N) > 1.
inline Residue mod_inverse(i64 c, const Modulus& m) {
    Residue r(c, m.n);
    u64 g = std::gcd(r.value, m.n);
    if (g != 1) throw NotAUnitError(r.value, m.n, g);
    // extended Euclid on (value, n)
    i64 old_r = static_cast<i64>(r.value), rr = static_cast<i64>(m.n);
    i64 old_s = 1, s = 0;
    while (rr != 0) {
        i64 q = old_r / rr;
        old_r = std::exchange(rr, old_r - q * rr);
        old_s = std::exchange(s, old_s - q * s);
    }
    return Residue(old_s, m.n);
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
inline int legendre_symbol(i64 a, u64 p) {
    if (p == 2 || !is_prime(p)) throw DomainError("legendre_symbol requires an odd prime, got " + std::to_string(p));
    u64 av = Residue(a, p).value;
    if (av == 0) return 0;
    u64 e = powmod(av, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

/// Largest prime factor of |v|, with the convention lpp(0) = lpp(±1) = 1.
inline u64 largest_prime_factor(const BigInt& v) {
    BigInt a = v < 0 ? BigInt(-v) : v;
    if (a <= 1) return 1;
    if (a > kMaxModulus) throw DomainError("coefficient too large to factor (exceeds 2^62)");
    Modulus m = factorize(static_cast<u64>(a));
    return m.factorization.back().first;
}

} // namespace ate
