#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ate/averages.hpp"
#include "ate/correlation.hpp"
#include "ate/poly.hpp"
#include "ate/residue_set.hpp"

// Certifiers for the exponential-sum lemma, the weighted linear-shift bound,
// the uniform norm bound with its differencing chain, and the lpf thresholds.
// Decisions are made only on exact rationals; whenever a square root would
// appear, both sides are raised to the matching power of two instead.

namespace ate {

constexpr u64 kMaxSignalModulus = 4096;   // brute-force range for signal checks
constexpr u64 kMaxNormModulus = 20000;    // O(N^2) histogram self-correlation
constexpr u64 kChainBudget = u64{1} << 26; // N^(d+1) cap for the differencing chain

// ----------------------------------------------------------------------------
// Signals
// ----------------------------------------------------------------------------

/// Function Z/NZ -> C with exact rational components. Mean and norm are
/// recomputed on demand, never cached.
class ComplexSignal {
public:
    ComplexSignal(Modulus m, std::vector<RatComplex> values)
        : modulus_(std::move(m)), values_(std::move(values)) {
        if (values_.size() != modulus_.n) throw DomainError("signal length must equal N");
    }

    static ComplexSignal constant(const Modulus& m, const Rational& value) {
        return ComplexSignal(m, std::vector<RatComplex>(m.n, RatComplex(value)));
    }

    /// f = 1_A - mu(A): the mean-zero indicator used throughout.
    static ComplexSignal centered_indicator(const ResidueSet& a) {
        const u64 n = a.n();
        Rational mu = a.measure();
        std::vector<RatComplex> v(n);
        for (u64 x = 0; x < n; ++x) v[x] = RatComplex(Rational(a.contains(x) ? 1 : 0) - mu);
        return ComplexSignal(a.modulus(), std::move(v));
    }

    /// Seeded +-1 signal.
    static ComplexSignal rademacher(const Modulus& m, u64 seed) {
        SeededRng rng(seed);
        std::vector<RatComplex> v(m.n);
        for (auto& x : v) x = RatComplex(Rational(rng.word() & 1 ? 1 : -1));
        return ComplexSignal(m, std::move(v));
    }

    const Modulus& modulus() const { return modulus_; }
    u64 n() const { return modulus_.n; }
    const std::vector<RatComplex>& values() const { return values_; }

    RatComplex mean() const {
        RatComplex acc;
        for (const auto& v : values_) acc += v;
        Rational inv_n(1, modulus_.n);
        return {acc.re * inv_n, acc.im * inv_n};
    }

    Rational norm_sq() const {
        Rational acc(0);
        for (const auto& v : values_) acc += v.norm_sq();
        return acc / Rational(modulus_.n);
    }

    bool is_real() const {
        for (const auto& v : values_)
            if (v.im != 0) return false;
        return true;
    }

    bool bounded_by_one() const {
        for (const auto& v : values_)
            if (v.norm_sq() > 1) return false;
        return true;
    }

private:
    Modulus modulus_;
    std::vector<RatComplex> values_;
};

namespace detail {

/// Signal scaled to Gaussian-integer components over a common denominator.
struct ScaledSignal {
    BigInt den;
    std::vector<BigInt> re, im;
    bool real = true;

    explicit ScaledSignal(const ComplexSignal& f) {
        den = 1;
        for (const auto& v : f.values())
            den = boost::multiprecision::lcm(boost::multiprecision::lcm(den, denominator(v.re)),
                                             denominator(v.im));
        const u64 n = f.n();
        re.resize(n);
        im.resize(n);
        for (u64 x = 0; x < n; ++x) {
            re[x] = numerator(f.values()[x].re) * (den / denominator(f.values()[x].re));
            im[x] = numerator(f.values()[x].im) * (den / denominator(f.values()[x].im));
            if (im[x] != 0) real = false;
        }
    }
};

/// autocorr[h] = <T^h f, f> = (1/N) sum_m f(m+h) conj(f(m)), exact.
inline std::vector<RatComplex> autocorrelation(const ComplexSignal& f) {
    const u64 n = f.n();
    ScaledSignal s(f);
    const Rational scale = Rational(1) / (Rational(n) * Rational(s.den) * Rational(s.den));
    std::vector<RatComplex> out(n);
    for (u64 h = 0; h < n; ++h) {
        BigInt re = 0, im = 0;
        for (u64 m = 0; m < n; ++m) {
            u64 mh = m + h < n ? m + h : m + h - n;
            // (a+bi)(c-di) with (a,b) = f(m+h), (c,d) = f(m)
            re += s.re[mh] * s.re[m] + s.im[mh] * s.im[m];
            if (!s.real) im += s.im[mh] * s.re[m] - s.re[mh] * s.im[m];
        }
        out[h] = RatComplex(Rational(re) * scale, Rational(im) * scale);
    }
    return out;
}

/// D[h] = #{(n, n') in [1,N]^2 : P(n) - P(n') = h mod N}, from the image histogram.
inline std::vector<i64> difference_histogram(const ImageHistogram& hist) {
    const u64 n = hist.n;
    std::vector<i64> d(n, 0);
    auto support = hist.support();
    for (auto [g, cg] : support)
        for (auto [g2, cg2] : support) d[(g + n - g2) % n] += cg * cg2;
    return d;
}

/// Certified enclosure of sqrt(x) for display; decisions never use it.
inline std::pair<Rational, Rational> sqrt_enclosure(const Rational& x) {
    if (x < 0) throw DomainError("sqrt of negative rational");
    const BigInt scale = BigInt(1) << 48;
    BigInt v = (numerator(x) * scale * scale) / denominator(x);
    BigInt root = boost::multiprecision::sqrt(v);
    return {Rational(root, scale), Rational(root + 1, scale)};
}

} // namespace detail

// ----------------------------------------------------------------------------
// Exponential sums
// ----------------------------------------------------------------------------

/// Exact value of |(1/N^{d+1}) sum_{n,h_1..h_d} e(n (prod h_i) j / N)|, which by
/// orthogonality equals N^{-d} #{(h_1..h_d) in [1,N]^d : j prod h_i = 0 mod N}.
/// Counting is done per prime power via the valuation distribution
/// #{h in [1,p^a] : v_p(h) = v} = p^{a-v} - p^{a-v-1} (v < a), and 1 at v = a.
inline Rational expsum_exact(const Modulus& m, u64 j, int d) {
    if (d < 1) throw DomainError("expsum requires d >= 1");
    j %= m.n;
    if (j == 0) throw DomainError("expsum excludes j = 0 mod N");
    Rational result(1);
    for (auto [p, a] : m.factorization) {
        int e = 0;
        u64 jj = j;
        while (e < a && jj % p == 0) jj /= p, ++e;
        int t = a - e;
        if (t == 0) continue;
        std::vector<BigInt> ways(t + 1);
        for (int v = 0; v < t; ++v)
            ways[v] = big_pow(BigInt(p), a - v) - big_pow(BigInt(p), a - v - 1);
        ways[t] = big_pow(BigInt(p), a - t); // v_p(h) >= t
        std::vector<BigInt> dp(t + 1, 0);
        dp[0] = 1;
        for (int round = 0; round < d; ++round) {
            std::vector<BigInt> next(t + 1, 0);
            for (int v = 0; v <= t; ++v) {
                if (dp[v] == 0) continue;
                for (int w = 0; w <= t; ++w) next[std::min(v + w, t)] += dp[v] * ways[w];
            }
            dp = std::move(next);
        }
        result *= Rational(dp[t], big_pow(BigInt(p), a * d));
    }
    return result;
}

struct ExpsumBoundReport {
    Rational lhs;  // worst case over j in [1, N-1]
    Rational rhs;  // d / lpf(N)
    bool holds = false;
    Rational slack;
    u64 worst_j = 0;
};

/// Worst case over j of expsum_exact versus the d/lpf(N) bound. The value only
/// depends on gcd(j, N), so it suffices to scan divisors of N below N.
inline ExpsumBoundReport expsum_bound_check(const Modulus& m, int d) {
    if (d < 1) throw DomainError("expsum requires d >= 1");
    std::vector<u64> divisors{1};
    for (auto [p, a] : m.factorization) {
        std::size_t base = divisors.size();
        u64 pw = 1;
        for (int i = 1; i <= a; ++i) {
            pw *= p;
            for (std::size_t k = 0; k < base; ++k) divisors.push_back(divisors[k] * pw);
        }
    }
    ExpsumBoundReport rep;
    rep.rhs = Rational(d, m.lpf);
    for (u64 delta : divisors) {
        if (delta == m.n) continue;
        Rational v = expsum_exact(m, delta, d);
        if (v > rep.lhs) {
            rep.lhs = v;
            rep.worst_j = delta;
        }
    }
    rep.holds = rep.lhs <= rep.rhs;
    rep.slack = rep.rhs - rep.lhs;
    return rep;
}

// ----------------------------------------------------------------------------
// Weighted linear-shift bound
// ----------------------------------------------------------------------------

struct LinearBoundReport {
    RatComplex lhs;      // exact complex value of the averaged inner products
    Rational lhs_abs_sq; // |lhs|^2, exact
    Rational rhs;        // |mean|^2 + (d / lpf) ||f||^2
    bool holds = false;  // certified via |lhs|^2 <= rhs^2
    Rational slack_lo;   // rhs - upper enclosure of |lhs|
};

/// Certifies |(1/N^d) sum_{h} (1/N) sum_n <T^{n prod h_i} f, f>|
///   <= |int f|^2 + (d/lpf N) ||f||^2, with everything exact.
inline LinearBoundReport weighted_linear_check(const ComplexSignal& f, int d) {
    if (d < 1) throw DomainError("weighted_linear_check requires d >= 1");
    const u64 n = f.n();
    if (n > kMaxSignalModulus || d > 4)
        throw DomainError("weighted_linear_check limited to N <= 4096, d <= 4");

    // cnt_j[g] = #{(h_1..h_j) : prod h_i = g}; one more round folds in n.
    std::vector<u64> cnt(n, 0);
    cnt[1 % n] = 1;
    for (int round = 0; round < d + 1; ++round) {
        std::vector<u64> next(n, 0);
        for (u64 g = 0; g < n; ++g) {
            if (!cnt[g]) continue;
            for (u64 h = 0; h < n; ++h) next[mulmod(g, h, n)] += cnt[g];
        }
        cnt = std::move(next);
    }

    auto autocorr = detail::autocorrelation(f);
    RatComplex acc;
    for (u64 hh = 0; hh < n; ++hh) {
        if (!cnt[hh]) continue;
        Rational w(cnt[hh]);
        acc += RatComplex(autocorr[hh].re * w, autocorr[hh].im * w);
    }
    Rational denom = rat_pow(Rational(n), static_cast<unsigned>(d + 1));
    LinearBoundReport rep;
    rep.lhs = RatComplex(acc.re / denom, acc.im / denom);
    rep.lhs_abs_sq = rep.lhs.norm_sq();
    rep.rhs = f.mean().norm_sq() + Rational(d, f.modulus().lpf) * f.norm_sq();
    rep.holds = rep.lhs_abs_sq <= rep.rhs * rep.rhs;
    rep.slack_lo = rep.rhs - detail::sqrt_enclosure(rep.lhs_abs_sq).second;
    return rep;
}

// ----------------------------------------------------------------------------
// Uniform norm bound and the differencing chain
// ----------------------------------------------------------------------------

struct ChainCheck {
    int depth = 0;       // d in 1..k-1
    Rational lhs_pow;    // (||avg||^2)^{2^{d-1}}
    Rational rhs;        // averaged inner products of the d-fold differenced polynomial
    bool holds = false;
};

struct NormBoundReport {
    Rational lhs_sq;       // ||(1/N) sum_n T^{P(n)} f||^2, exact
    int degree = 0;
    u64 lpf = 0;
    Rational bound_base;   // (k-1)/lpf N; the asserted bound is its 2^-(k-1) power
    bool applicable = false;
    std::string reason;    // why the bound is not asserted, when applicable = false
    bool holds = false;
    bool reduction_checked = false; // c' > 1: reduced-form norm equality verified
    std::vector<ChainCheck> chain;
};

namespace detail {

/// Real autocorrelation as integer numerators over a common denominator:
/// <T^h f, f> = num[h] / den.
struct RealAutocorr {
    std::vector<BigInt> num;
    BigInt den;

    /// For f = 1_A - mu(A): num[h] = N |A ∩ (A+h)| - |A|^2 over den = N^2,
    /// straight off the popcount correlation profile.
    static RealAutocorr from_set(const ResidueSet& a) {
        const u64 n = a.n();
        CorrelationProfile prof = correlation_profile(a, a);
        RealAutocorr ac;
        ac.den = BigInt(n) * n;
        ac.num.resize(n);
        BigInt s2 = BigInt(a.size()) * a.size();
        for (u64 h = 0; h < n; ++h) ac.num[h] = BigInt(prof.counts[h]) * n - s2;
        return ac;
    }

    static RealAutocorr from_signal(const ScaledSignal& s, u64 n) {
        RealAutocorr ac;
        ac.den = BigInt(n) * s.den * s.den;
        ac.num.assign(n, 0);
        for (u64 h = 0; h < n; ++h) {
            BigInt acc = 0;
            for (u64 m = 0; m < n; ++m) {
                u64 mh = m + h < n ? m + h : m + h - n;
                acc += s.re[mh] * s.re[m];
            }
            ac.num[h] = acc;
        }
        return ac;
    }

    /// Autocorrelation of the dilated signal f(c^-1 x): only a reindexing h -> c^-1 h.
    RealAutocorr dilated(u64 cinv, u64 n) const {
        RealAutocorr out;
        out.den = den;
        out.num.resize(n);
        for (u64 h = 0; h < n; ++h) out.num[h] = num[mulmod(cinv, h, n)];
        return out;
    }
};

/// ||(1/N) sum_n T^{P(n)} f||^2 = (1/N^2) sum_h D[h] autocorr[h], exact.
inline Rational norm_avg_sq(const std::vector<i64>& diff_hist, const RealAutocorr& ac, u64 n) {
    BigInt acc = 0;
    for (u64 h = 0; h < n; ++h)
        if (diff_hist[h]) acc += BigInt(diff_hist[h]) * ac.num[h];
    return Rational(acc, BigInt(n) * n * ac.den);
}

inline Rational norm_avg_sq_complex(const std::vector<i64>& diff_hist,
                                    const std::vector<RatComplex>& autocorr, u64 n) {
    Rational re(0), im(0);
    for (u64 h = 0; h < n; ++h) {
        if (!diff_hist[h]) continue;
        Rational w(diff_hist[h]);
        re += autocorr[h].re * w;
        im += autocorr[h].im * w;
    }
    if (im != 0) throw Error("internal: norm squared came out non-real");
    return re / Rational(BigInt(n) * n);
}

/// Chain right-hand side at depth d for an integer-coefficient N-periodic polynomial:
/// (1/N^{d+1}) sum_{h_1..h_d, n} autocorr[Delta_d(P)(n; h) mod N], via the
/// inclusion-exclusion expansion of the iterated difference over subsets of the shifts.
inline Rational chain_rhs(const IntValuedPoly& p, const Modulus& m, const RealAutocorr& ac, int depth) {
    const u64 n = m.n;
    std::vector<u64> table(n);
    for (u64 x = 0; x < n; ++x) table[x] = eval_mod(p, BigInt(x), m).value;

    const int subsets = 1 << depth;
    std::vector<u64> shift(depth, 1), subset_sum(subsets, 0);
    std::vector<int> sign(subsets);
    for (int sub = 0; sub < subsets; ++sub)
        sign[sub] = (std::popcount(static_cast<unsigned>(sub)) + depth) % 2 == 0 ? 1 : -1;

    BigInt total = 0;
    for (;;) {
        for (int sub = 0; sub < subsets; ++sub) {
            u64 acc = 0;
            for (int i = 0; i < depth; ++i)
                if ((sub >> i) & 1) acc += shift[i];
            subset_sum[sub] = acc % n;
        }
        for (u64 x = 0; x < n; ++x) {
            i64 val = 0;
            for (int sub = 0; sub < subsets; ++sub) {
                u64 arg = x + subset_sum[sub];
                val += sign[sub] * static_cast<i64>(table[arg >= n ? arg - n : arg]);
            }
            u64 residue = static_cast<u64>(((val % static_cast<i64>(n)) + static_cast<i64>(n)) %
                                           static_cast<i64>(n));
            total += ac.num[residue];
        }
        int i = 0;
        while (i < depth && shift[i] == n) shift[i++] = 1;
        if (i == depth) break;
        ++shift[i];
    }
    Rational den = rat_pow(Rational(n), static_cast<unsigned>(depth + 1)) * Rational(ac.den);
    return Rational(total) / den;
}

/// Shared tail: degree dispatch, dilation reduction, chain and the final bound.
inline NormBoundReport norm_check_core(const Modulus& m, const RealAutocorr& ac, const IntValuedPoly& p) {
    const u64 n = m.n;
    NormBoundReport rep;
    rep.degree = p.degree();
    rep.lpf = m.lpf;
    rep.lhs_sq = norm_avg_sq(difference_histogram(image_histogram(p, m)), ac, n);

    const int k = p.degree();
    if (k <= 0) {
        rep.bound_base = 0;
        rep.applicable = (rep.lhs_sq == 0); // a vanishing average is trivially certified
        rep.reason = rep.applicable ? "" : "constant polynomial: the average is a single shift of f";
        rep.holds = rep.lhs_sq == 0;
        return rep;
    }

    const BigInt cp = p.c_prime();
    if (k == 1) {
        // P = c1 n + c0 with integer coefficients; a unit c1 makes the average the mean.
        rep.bound_base = 0;
        u64 c1 = Residue(numerator(p.monomial_coeffs()[1]), n).value;
        if (std::gcd(c1, n) == 1 || rep.lhs_sq == 0) {
            rep.applicable = true;
            rep.holds = rep.lhs_sq == 0;
        } else {
            rep.applicable = false;
            rep.reason = "degree-one shift map is not a permutation mod N";
        }
        return rep;
    }

    // Reduce to integer coefficients when needed: lpf > c' makes m -> c'^-1 m a permutation.
    IntValuedPoly reduced = p;
    RealAutocorr reduced_ac;
    const RealAutocorr* chain_ac = &ac;
    if (cp > 1) {
        if (BigInt(m.lpf) <= cp) {
            rep.bound_base = Rational(k - 1, m.lpf);
            if (rep.lhs_sq == 0) {
                rep.applicable = true;
                rep.holds = true;
            } else {
                rep.applicable = false;
                rep.reason = "lpf(N) <= c': cannot clear denominators by a unit dilation";
            }
            return rep;
        }
        reduced = p.scale_argument(cp);
        u64 cinv = mod_inverse(static_cast<i64>(Residue(cp, n).value), m).value;
        reduced_ac = ac.dilated(cinv, n);
        chain_ac = &reduced_ac;
        Rational reduced_sq =
            norm_avg_sq(difference_histogram(image_histogram(reduced, m)), reduced_ac, n);
        if (reduced_sq != rep.lhs_sq)
            throw Error("internal: dilation reduction changed the averaged norm");
        rep.reduction_checked = true;
    }

    for (int depth = 1; depth <= k - 1; ++depth) {
        if (std::pow(static_cast<double>(n), depth + 1) > static_cast<double>(kChainBudget)) break;
        ChainCheck c;
        c.depth = depth;
        c.lhs_pow = rat_pow(rep.lhs_sq, 1u << (depth - 1));
        c.rhs = chain_rhs(reduced, m, *chain_ac, depth);
        c.holds = c.lhs_pow <= c.rhs;
        rep.chain.push_back(std::move(c));
    }

    rep.bound_base = Rational(k - 1, m.lpf);
    BigInt lead = numerator(reduced.leading());
    if (lead < 0) lead = -lead;
    BigInt need = cp;
    if (BigInt(k) > need) need = k;
    if (lead > need) need = lead;
    if (BigInt(m.lpf) <= need && rep.lhs_sq != 0) {
        rep.applicable = false;
        rep.reason = "lpf(N) <= max(degree, |leading of c'P|, c'); the permutation reindexing fails";
        return rep;
    }
    rep.applicable = true;
    rep.holds = rat_pow(rep.lhs_sq, 1u << (k - 2)) <= rep.bound_base;
    return rep;
}

} // namespace detail

/// Certifies the uniform norm bound ||(1/N) sum_n T^{P(n)} f|| <= ((k-1)/lpf N)^{2^-(k-1)}
/// for mean-zero |f| <= 1, comparing (lhs^2)^{2^{k-2}} against (k-1)/lpf N exactly.
/// Along the way it checks the differencing chain at each depth d = 1..k-1 that fits
/// the N^{d+1} budget. For c' > 1 the reduction to the integer-coefficient c'P with
/// the dilated signal is verified exactly as well. Complex signals get the bound but
/// not the chain.
inline NormBoundReport average_norm_check(const ComplexSignal& f, const IntValuedPoly& p) {
    const u64 n = f.n();
    const Modulus& m = f.modulus();
    if (n > kMaxSignalModulus) throw DomainError("signal norm check limited to N <= 4096");
    if (f.mean() != RatComplex(Rational(0)))
        throw DomainError("average_norm_check requires a mean-zero signal");
    if (!f.bounded_by_one()) throw DomainError("average_norm_check requires |f| <= 1");

    if (f.is_real())
        return detail::norm_check_core(m, detail::RealAutocorr::from_signal(detail::ScaledSignal(f), n), p);

    // Complex path: exact lhs^2 via the complex autocorrelation, no chain.
    auto autocorr = detail::autocorrelation(f);
    NormBoundReport rep;
    rep.degree = p.degree();
    rep.lpf = m.lpf;
    rep.lhs_sq =
        detail::norm_avg_sq_complex(detail::difference_histogram(image_histogram(p, m)), autocorr, n);
    const int k = p.degree();
    rep.bound_base = k >= 2 ? Rational(k - 1, m.lpf) : Rational(0);
    if (rep.lhs_sq == 0) {
        rep.applicable = true;
        rep.holds = true;
        return rep;
    }
    if (k < 2 || p.c_prime() > 1) {
        rep.applicable = false;
        rep.reason = "complex path asserts the bound only for integer coefficients of degree >= 2";
        return rep;
    }
    BigInt lead = numerator(p.leading());
    if (lead < 0) lead = -lead;
    BigInt need = std::max(BigInt(k), lead);
    if (BigInt(m.lpf) <= need) {
        rep.applicable = false;
        rep.reason = "lpf(N) <= max(degree, |leading coefficient|)";
        return rep;
    }
    rep.applicable = true;
    rep.holds = rat_pow(rep.lhs_sq, 1u << (k - 2)) <= rep.bound_base;
    return rep;
}

/// Set entry point: f = 1_A - mu(A) with the autocorrelation off the popcount
/// kernel, so this scales to the full exhaustive/sampled study sizes.
inline NormBoundReport average_norm_check(const ResidueSet& a, const IntValuedPoly& p) {
    if (a.n() > kMaxNormModulus) throw DomainError("set norm check limited to N <= 20000");
    return detail::norm_check_core(a.modulus(), detail::RealAutocorr::from_set(a), p);
}

// ----------------------------------------------------------------------------
// Thresholds
// ----------------------------------------------------------------------------

struct ThresholdReport {
    BigInt c_p;          // max{c', degree, largest prime of the scaled leading coefficient}
    Rational threshold;  // pair-count threshold at the given epsilon
    Rational eps;
    Rational delta;
    Rational c_quant;    // max{C_P, (d-1)/4 * delta^{-2^{d-2}}}
    bool degenerate = false; // mu(A) in {0, 1}: the epsilon clause collapses to C_P
};

/// Exact threshold arithmetic. Note (sqrt(mu(B)))^{2^{d-1}} = mu(B)^{2^{d-2}} keeps
/// everything rational for d >= 2.
inline ThresholdReport thresholds(const IntValuedPoly& p, const Rational& mu_a, const Rational& mu_b,
                                  const Rational& eps, const Rational& delta) {
    const int d = p.degree();
    if (d <= 1) throw DomainError("thresholds require degree > 1");
    if (d > 32) throw DomainError("thresholds limited to degree <= 32");
    if (mu_a < 0 || mu_a > 1 || mu_b <= 0 || mu_b > 1)
        throw DomainError("measures must satisfy 0 <= mu(A) <= 1 and 0 < mu(B) <= 1");
    if (eps <= 0 || eps > 1) throw DomainError("epsilon must lie in (0, 1]");
    if (delta <= 0 || delta > 1) throw DomainError("delta must lie in (0, 1]");

    ThresholdReport rep;
    rep.c_p = p.constant_cp();
    rep.eps = eps;
    rep.delta = delta;

    rep.degenerate = (mu_a == 0 || mu_a == 1);
    Rational threshold(rep.c_p);
    if (!rep.degenerate) {
        unsigned e1 = 1u << (d - 1), e2 = 1u << (d - 2);
        Rational denom = rat_pow(eps, e1) * rat_pow(mu_a, e1) * rat_pow(mu_b, e2);
        Rational second = Rational(d - 1) * mu_a * (1 - mu_a) / denom;
        if (second > threshold) threshold = second;
    }
    rep.threshold = threshold;

    Rational cq = Rational(d - 1, 4) / rat_pow(delta, 1u << (d - 2));
    rep.c_quant = cq > Rational(rep.c_p) ? cq : Rational(rep.c_p);
    return rep;
}

} // namespace ate
