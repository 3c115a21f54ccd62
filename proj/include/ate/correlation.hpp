#pragma once

#include <cstdint>
#include <thread>
#include <vector>

#include "ate/errors.hpp"
#include "ate/residue_set.hpp"

// Exact correlation kernel: counts[h] = |A intersect (B + h)| for every shift h.
// Two interchangeable backends that must agree bit-for-bit:
//   - shifted-bit-vector popcount, O(N^2 / 64)
//   - number-theoretic transform convolution, O(N log N), exact because every
//     count is bounded by N < 998244353.

namespace ate {

enum class CorrelationBackend { Auto, BitVector, Transform };

struct CorrelationProfile {
    u64 n = 0;
    std::vector<i64> counts;
};

namespace ntt {

constexpr u64 kPrime = 998244353; // 119 * 2^23 + 1, primitive root 3
constexpr u64 kMaxTransform = u64{1} << 23;

inline void transform(std::vector<u64>& a, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 w = powmod(3, (kPrime - 1) / len, kPrime);
        if (invert) w = powmod(w, kPrime - 2, kPrime);
        for (std::size_t i = 0; i < n; i += len) {
            u64 wn = 1;
            for (std::size_t j = 0; j < len / 2; ++j) {
                u64 u = a[i + j], v = mulmod(a[i + j + len / 2], wn, kPrime);
                a[i + j] = u + v < kPrime ? u + v : u + v - kPrime;
                a[i + j + len / 2] = u >= v ? u - v : u + kPrime - v;
                wn = mulmod(wn, w, kPrime);
            }
        }
    }
    if (invert) {
        u64 inv_n = powmod(n % kPrime, kPrime - 2, kPrime);
        for (auto& x : a) x = mulmod(x, inv_n, kPrime);
    }
}

/// Cyclic convolution of two length-n sequences with entries in [0, kPrime).
inline std::vector<u64> cyclic_convolution(std::vector<u64> a, std::vector<u64> b) {
    const std::size_t n = a.size();
    std::size_t size = 1;
    while (size < 2 * n - 1) size <<= 1;
    if (size > kMaxTransform) throw DomainError("transform backend limited to N <= 2^22");
    a.resize(size, 0);
    b.resize(size, 0);
    transform(a, false);
    transform(b, false);
    for (std::size_t i = 0; i < size; ++i) a[i] = mulmod(a[i], b[i], kPrime);
    transform(a, true);
    std::vector<u64> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        u64 v = a[t] + (t + n < size ? a[t + n] : 0);
        out[t] = v >= kPrime ? v - kPrime : v;
    }
    return out;
}

} // namespace ntt

namespace detail {

inline CorrelationProfile correlate_bitvector(const ResidueSet& a, const ResidueSet& b, int workers) {
    const u64 n = a.n();
    CorrelationProfile prof;
    prof.n = n;
    prof.counts.assign(n, 0);
    const DoubledBits b2(b);
    auto run = [&](u64 lo, u64 hi) {
        for (u64 h = lo; h < hi; ++h) prof.counts[h] = count_shift_overlap(a.words(), b2, h);
    };
    if (workers <= 1 || n < 4096) {
        run(0, n);
    } else {
        std::vector<std::thread> pool;
        u64 chunk = (n + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            u64 lo = t * chunk, hi = std::min<u64>(n, lo + chunk);
            if (lo < hi) pool.emplace_back(run, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return prof;
}

inline CorrelationProfile correlate_transform(const ResidueSet& a, const ResidueSet& b) {
    const u64 n = a.n();
    if (n >= ntt::kPrime) throw DomainError("transform backend requires N < 998244353");
    std::vector<u64> av(n, 0), bv(n, 0);
    for (u64 x = 0; x < n; ++x) {
        if (a.contains(x)) av[x] = 1;
        if (b.contains(x)) bv[(n - x) % n] = 1; // reversed B turns correlation into convolution
    }
    auto conv = ntt::cyclic_convolution(std::move(av), std::move(bv));
    CorrelationProfile prof;
    prof.n = n;
    prof.counts.assign(n, 0);
    for (u64 h = 0; h < n; ++h) prof.counts[h] = static_cast<i64>(conv[h]);
    return prof;
}

} // namespace detail

/// counts[h] = |{x : x in A and x - h in B}| for every h in [0, N).
inline CorrelationProfile correlation_profile(const ResidueSet& a, const ResidueSet& b,
                                              CorrelationBackend backend = CorrelationBackend::Auto,
                                              int workers = 1) {
    a.require_same_modulus(b);
    if (backend == CorrelationBackend::Auto)
        backend = a.n() <= 8192 ? CorrelationBackend::BitVector : CorrelationBackend::Transform;
    return backend == CorrelationBackend::BitVector ? detail::correlate_bitvector(a, b, workers)
                                                    : detail::correlate_transform(a, b);
}

} // namespace ate
