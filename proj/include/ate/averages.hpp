#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

#include "ate/correlation.hpp"
#include "ate/poly.hpp"
#include "ate/residue_set.hpp"
#include "ate/rng.hpp"

// The exact averaging engine. Every average is assembled from integer counts
// and only becomes a rational at the very end, so equality checks are exact.

namespace ate {

constexpr u64 kDefaultExhaustiveBound = 24;

struct AverageReport {
    Rational average;   // (1/N) sum_n mu(A ∩ T^{P(n)} B)
    Rational product;   // mu(A) mu(B)
    Rational deviation; // average - product, signed
};

namespace detail {

/// sum_h c_h * counts[h] as an exact integer.
inline BigInt contract(const std::vector<i64>& hist, const std::vector<i64>& counts) {
    u128 acc = 0;
    for (std::size_t h = 0; h < hist.size(); ++h)
        if (hist[h]) acc += static_cast<u128>(hist[h]) * static_cast<u128>(counts[h]);
    BigInt out = static_cast<u64>(acc >> 64);
    out <<= 64;
    out += static_cast<u64>(acc);
    return out;
}

} // namespace detail

/// Definition of the polynomial ergodic average over representatives n = 1..N,
/// computed as (1/N^2) sum_h c_h |A ∩ (B+h)| with c_h the image histogram of P.
inline AverageReport polynomial_average(const ResidueSet& a, const ResidueSet& b, const IntValuedPoly& p,
                                        CorrelationBackend backend = CorrelationBackend::Auto,
                                        int workers = 1) {
    a.require_same_modulus(b);
    const u64 n = a.n();
    ImageHistogram hist = image_histogram(p, a.modulus());
    CorrelationProfile prof = correlation_profile(a, b, backend, workers);
    BigInt num = detail::contract(hist.counts, prof.counts);
    Rational n2 = Rational(BigInt(n) * n);
    AverageReport rep;
    rep.average = Rational(num) / n2;
    rep.product = Rational(BigInt(a.size()) * b.size()) / n2;
    rep.deviation = rep.average - rep.product;
    return rep;
}

struct DeviationScan {
    ResidueSet witness;
    Rational max_abs_deviation;
    bool proven_max = true; // false for the seeded sampling mode
    u64 subsets_examined = 0;
};

namespace detail {

/// Weights folded over the symmetry counts[h] = counts[N-h] of the B = A case.
inline std::vector<std::pair<u32, i64>> folded_weights(const ImageHistogram& hist) {
    std::vector<std::pair<u32, i64>> w;
    const u64 n = hist.n;
    for (u64 h = 0; h <= n / 2; ++h) {
        i64 c = hist.counts[h];
        if (h != 0 && h * 2 != n) c += hist.counts[n - h];
        if (c) w.emplace_back(static_cast<u32>(h), c);
    }
    return w;
}

inline u32 rotl_mask(u32 m, unsigned h, unsigned n) {
    return h == 0 ? m : ((m << h) | (m >> (n - h))) & ((u32{1} << n) - 1);
}

/// Minimal-rotation canonicality; nonempty canonical masks always have bit 0 set.
inline bool is_canonical_rotation(u32 m, unsigned n) {
    if (m == 0) return true;
    if ((m & 1) == 0) return false;
    for (unsigned r = 1; r < n; ++r)
        if (rotl_mask(m, r, n) < m) return false;
    return true;
}

} // namespace detail

/// Search all subsets A of Z/NZ for the largest |average - mu(A)^2|, P-average with B = A.
/// The symmetry flag restricts to minimal-rotation representatives; the maximum is unchanged
/// because shifting A does not change any term of the average.
inline DeviationScan max_deviation_exhaustive(const Modulus& m, const IntValuedPoly& p, bool symmetry,
                                              u64 bound = kDefaultExhaustiveBound, int workers = 1) {
    const u64 n = m.n;
    if (n > bound || n > 24) throw RefuseExhaustiveError(n, std::min<u64>(bound, 24));
    ImageHistogram hist = image_histogram(p, m);
    const auto weights = detail::folded_weights(hist);
    const unsigned nn = static_cast<unsigned>(n);
    const u64 total = u64{1} << nn;

    struct Best {
        u64 num = 0; // |N^2 * deviation|
        u32 mask = 0;
        u64 examined = 0;
    };
    auto scan = [&](u64 lo, u64 hi) {
        Best best;
        for (u64 mi = lo; mi < hi; ++mi) {
            u32 mask = static_cast<u32>(mi);
            if (symmetry && !detail::is_canonical_rotation(mask, nn)) continue;
            ++best.examined;
            i64 s = 0;
            for (auto [h, w] : weights) s += w * std::popcount(mask & detail::rotl_mask(mask, h, nn));
            i64 pc = std::popcount(mask);
            u64 dev = static_cast<u64>(std::abs(s - pc * pc));
            if (dev > best.num || (dev == best.num && mask < best.mask)) {
                best.num = dev;
                best.mask = mask;
            }
        }
        return best;
    };

    Best best;
    if (workers <= 1 || total < (u64{1} << 16)) {
        best = scan(0, total);
    } else { // merge keeps (max value, then least mask): bit-identical for any worker count
        std::vector<Best> parts(workers);
        std::vector<std::thread> pool;
        u64 chunk = (total + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            u64 lo = t * chunk, hi = std::min(total, lo + chunk);
            if (lo < hi) pool.emplace_back([&, t, lo, hi] { parts[t] = scan(lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (const auto& part : parts) {
            best.examined += part.examined;
            if (part.num > best.num || (part.num == best.num && part.mask < best.mask))
                best.num = part.num, best.mask = part.mask;
        }
    }

    DeviationScan out{ResidueSet::empty(m), Rational(best.num, BigInt(n) * n), true, best.examined};
    for (unsigned x = 0; x < nn; ++x)
        if ((best.mask >> x) & 1) out.witness.insert(x);
    return out;
}

/// Seeded sampling fallback for N beyond the exhaustive bound. The result is a
/// lower bound on the true maximum, never a proven maximum.
inline DeviationScan max_deviation_sampled(const Modulus& m, const IntValuedPoly& p, u64 samples,
                                           u64 seed) {
    const u64 n = m.n;
    ImageHistogram hist = image_histogram(p, m);
    const auto weights = detail::folded_weights(hist);
    SeededRng rng(seed);
    const std::size_t nwords = (n + 63) / 64;
    std::vector<u64> words(nwords);
    detail::DoubledBits b2(n);

    u64 best_num = 0;
    std::vector<u64> best_words(nwords, 0);
    for (u64 it = 0; it < samples; ++it) {
        for (auto& w : words) w = rng.word();
        u64 rem = n & 63;
        if (rem) words.back() &= (u64{1} << rem) - 1;
        b2.refill(words);

        i64 pc = 0;
        for (u64 w : words) pc += std::popcount(w);
        i64 s = 0;
        for (auto [h, w] : weights) s += w * detail::count_shift_overlap(words, b2, h);
        u64 dev = static_cast<u64>(std::abs(s - pc * pc));
        if (dev > best_num) {
            best_num = dev;
            best_words = words;
        }
    }
    DeviationScan out{ResidueSet::empty(m), Rational(BigInt(best_num), BigInt(n) * n), false, samples};
    for (u64 x = 0; x < n; ++x)
        if ((best_words[x >> 6] >> (x & 63)) & 1) out.witness.insert(x);
    return out;
}

// ----------------------------------------------------------------------------
// Conditional expectations onto the sigma-algebras of T^{p^m}-invariant sets
// in Z/p^kZ, and the closed-form identity for squares over these moduli.
// ----------------------------------------------------------------------------

struct ConditionalTerm {
    int level = 0;  // m in [0, k]
    Rational inner; // <E(1_A | B_m), 1_A>
};

namespace detail {

inline u64 checked_prime_power(u64 p, int k) {
    if (!is_prime(p)) throw DomainError("p must be prime, got " + std::to_string(p));
    if (k < 1) throw DomainError("exponent must be >= 1");
    u64 n = 1;
    for (int i = 0; i < k; ++i) {
        if (n > kMaxModulus / p) throw DomainError("p^k exceeds implementation bound");
        n *= p;
    }
    return n;
}

} // namespace detail

/// <E(1_A | B_m), 1_A> = (1/p^{k-m}) sum_j mu(A ∩ T^{j p^m} A), exactly.
inline ConditionalTerm conditional_inner(const ResidueSet& a, u64 p, int k, int level) {
    const u64 n = detail::checked_prime_power(p, k);
    if (a.n() != n)
        throw DomainError("set lives in Z/" + std::to_string(a.n()) + "Z, expected Z/p^k = " +
                          std::to_string(n));
    if (level < 0 || level > k) throw DomainError("level must lie in [0, k]");
    CorrelationProfile prof = correlation_profile(a, a);
    u64 pm = 1;
    for (int i = 0; i < level; ++i) pm *= p;
    const u64 classes = n / pm; // p^{k-m}
    BigInt num = 0;
    for (u64 j = 0; j < classes; ++j) num += prof.counts[(j * pm) % n];
    // counts are |A ∩ (A + jp^m)|; divide by N for measures and by p^{k-m} for the average
    return ConditionalTerm{level, Rational(num, BigInt(classes) * n)};
}

struct PkgoalReport {
    Rational lhs;
    Rational rhs;
    bool equal = false;
    bool asserted = true; // false when evaluated outside p = 3 mod 4 via the permissive flag
    Rational ck_term;
    std::vector<Rational> inner_terms; // <E(1_A|B_m), 1_A> for m = 1..k-1
};

/// Certifies the closed form for the squares average over Z/p^kZ, p = 3 mod 4:
/// lhs = mu(A)^2 + C_k mu(A)/p^{k/2} + sum_{m=1}^{k-1} (-1)^m p^{-ceil(m/2)} <E(1_A|B_m), 1_A>,
/// with C_k = 1 for even k and 0 for odd k.
inline PkgoalReport pkgoal_check(const ResidueSet& a, u64 p, int k, bool permissive = false) {
    const u64 n = detail::checked_prime_power(p, k);
    if (k < 2) throw DomainError("pkgoal requires k > 1");
    if (a.n() != n) throw DomainError("set modulus must equal p^k");
    const bool residue_class_ok = (p % 4 == 3);
    if (!residue_class_ok && !permissive)
        throw DomainError("the identity is asserted only for p = 3 mod 4; pass the permissive flag "
                          "to evaluate both sides anyway");

    PkgoalReport rep;
    IntValuedPoly squares = IntValuedPoly::from_coeffs({Rational(0), Rational(0), Rational(1)});
    rep.lhs = polynomial_average(a, a, squares).average;

    const Rational mu = a.measure();
    Rational rhs = mu * mu;
    if (k % 2 == 0) {
        u64 phalf = 1;
        for (int i = 0; i < k / 2; ++i) phalf *= p;
        rep.ck_term = mu / phalf;
    } else {
        rep.ck_term = 0;
    }
    rhs += rep.ck_term;
    for (int m = 1; m <= k - 1; ++m) {
        Rational inner = conditional_inner(a, p, k, m).inner;
        rep.inner_terms.push_back(inner);
        u64 pceil = 1;
        for (int i = 0; i < (m + 1) / 2; ++i) pceil *= p;
        Rational term = inner / pceil;
        rhs += (m % 2 == 1) ? -term : term;
    }
    rep.rhs = rhs;
    rep.equal = (rep.lhs == rep.rhs);
    rep.asserted = residue_class_ok;
    return rep;
}

} // namespace ate
