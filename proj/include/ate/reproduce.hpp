#pragma once

#include <chrono>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "ate/averages.hpp"
#include "ate/bounds.hpp"
#include "ate/combinatorics.hpp"
#include "ate/setexpr.hpp"

// The reproduction suite: every headline quantity and inequality the library
// certifies, bundled as numbered checks with pinned expected values, pinned
// seeds and pinned runtime budgets. `ate reproduce --all` and the acceptance
// test binary both run exactly this code.

namespace ate::reproduce {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double ms = 0.0;
    std::vector<std::string> notes;
};

constexpr int kCriterionCount = 12;

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

inline void check(CriterionResult& r, bool ok, const std::string& what) {
    if (!ok) {
        r.pass = false;
        r.notes.push_back("FAILED: " + what);
    }
}

inline void note(CriterionResult& r, const std::string& s) { r.notes.push_back(s); }

inline void budget(CriterionResult& r, double limit_ms) {
    if (r.ms >= limit_ms)
        check(r, false, "runtime " + std::to_string(r.ms) + " ms exceeds " +
                            std::to_string(limit_ms) + " ms");
}

inline ResidueSet multiples_of(const Modulus& m, u64 p) {
    ResidueSet s = ResidueSet::empty(m);
    for (u64 x = 0; x < m.n; x += p) s.insert(x);
    return s;
}

inline ResidueSet mask_set(const Modulus& m, u64 mask) {
    ResidueSet s = ResidueSet::empty(m);
    for (u64 x = 0; x < m.n; ++x)
        if ((mask >> x) & 1) s.insert(x);
    return s;
}

/// Floating oracle for the exponential sums (test-side cross-check only).
inline double expsum_float(u64 n, u64 j, int d) {
    const double tau = 2.0 * std::numbers::pi;
    std::vector<std::complex<double>> rowsum(n);
    for (u64 g = 0; g < n; ++g) {
        std::complex<double> acc = 0;
        for (u64 m = 1; m <= n; ++m) acc += std::polar(1.0, tau * double(m * g % n) / double(n));
        rowsum[g] = acc;
    }
    std::complex<double> total = 0;
    if (d == 1) {
        for (u64 h = 1; h <= n; ++h) total += rowsum[h * j % n];
    } else {
        for (u64 h1 = 1; h1 <= n; ++h1)
            for (u64 h2 = 1; h2 <= n; ++h2) total += rowsum[h1 * h2 % n * j % n];
    }
    return std::abs(total) / std::pow(double(n), d + 1);
}

} // namespace detail

// 1. The two-point set over fifteen points: average 2/225 against product 4/225.
inline CriterionResult criterion_1(int) {
    CriterionResult r{1, "squares average over Z/15 on the two-point set", true};
    Modulus m = factorize(15);
    ResidueSet a = ResidueSet::from_elements(m, {0, 7});
    IntValuedPoly sq = parse_and_validate("n^2");
    auto t0 = detail::Clock::now();
    AverageReport rep = polynomial_average(a, a, sq);
    r.ms = detail::ms_since(t0);
    detail::check(r, rep.average == Rational(2, 225), "average != 2/225");
    detail::check(r, rep.product == Rational(4, 225), "product != 4/225");
    detail::note(r, "average=" + to_frac_string(rep.average) + " product=" + to_frac_string(rep.product));
    detail::budget(r, 1.0);
    return r;
}

// 2. Multiples of the least prime factor under P(n) = lpf * n deviate by (p-1)/p^2.
inline CriterionResult criterion_2(int) {
    CriterionResult r{2, "deviation (p-1)/p^2 for multiples of the least prime factor", true};
    for (u64 n : {15ull, 35ull, 55ull}) {
        Modulus m = factorize(n);
        u64 p = m.lpf;
        IntValuedPoly pn = IntValuedPoly::from_coeffs({Rational(0), Rational(p)});
        ResidueSet a = detail::multiples_of(m, p);
        auto t0 = detail::Clock::now();
        AverageReport rep = polynomial_average(a, a, pn);
        double ms = detail::ms_since(t0);
        r.ms += ms;
        detail::check(r, rep.deviation == Rational(p - 1, p * p),
                      "N=" + std::to_string(n) + ": deviation != (p-1)/p^2");
        if (ms >= 1.0) detail::check(r, false, "N=" + std::to_string(n) + " exceeded 1 ms");
        detail::note(r, "N=" + std::to_string(n) + " deviation=" + to_frac_string(rep.deviation));
    }
    return r;
}

// 3. Exhaustive over Z/pZ for p in {3, 7, 11}: the squares average is exactly mu(A)^2.
inline CriterionResult criterion_3(int) {
    CriterionResult r{3, "squares average equals the product for every subset, p = 3 mod 4", true};
    IntValuedPoly sq = parse_and_validate("n^2");
    auto t0 = detail::Clock::now();
    u64 cases = 0;
    for (u64 p : {3ull, 7ull, 11ull}) {
        Modulus m = factorize(p);
        ImageHistogram hist = image_histogram(sq, m);
        for (u64 mask = 0; mask < (u64{1} << p); ++mask, ++cases) {
            // integer form: sum_h c_h |A ∩ (A+h)| must equal |A|^2
            i64 s = 0;
            u64 pc = std::popcount(mask);
            for (u64 h = 0; h < p; ++h) {
                if (!hist.counts[h]) continue;
                u64 rot = h ? (((mask << h) | (mask >> (p - h))) & ((u64{1} << p) - 1)) : mask;
                s += hist.counts[h] * std::popcount(mask & rot);
            }
            if (s != static_cast<i64>(pc * pc)) {
                detail::check(r, false, "p=" + std::to_string(p) + " mask=" + std::to_string(mask));
                break;
            }
        }
    }
    r.ms = detail::ms_since(t0);
    detail::note(r, std::to_string(cases) + " subsets checked");
    detail::budget(r, 5000.0);
    return r;
}

// 4. Prime-power closed form: exhaustive at 3^2, seeded at 3^3 and 7^2.
inline CriterionResult criterion_4(int) {
    CriterionResult r{4, "prime-power closed form for the squares average", true};
    auto t0 = detail::Clock::now();
    Modulus m9 = factorize(9);
    for (u64 mask = 0; mask < 512; ++mask) {
        if (!pkgoal_check(detail::mask_set(m9, mask), 3, 2).equal) {
            detail::check(r, false, "p=3 k=2 mask=" + std::to_string(mask));
            break;
        }
    }
    struct Case {
        u64 p;
        int k;
        u64 seed;
    };
    for (Case c : {Case{3, 3, 401}, Case{7, 2, 402}}) {
        u64 n = 1;
        for (int i = 0; i < c.k; ++i) n *= c.p;
        Modulus m = factorize(n);
        SeededRng rng(c.seed);
        for (int iter = 0; iter < 10000; ++iter) {
            ResidueSet a = ResidueSet::random(m, rng);
            if (!pkgoal_check(a, c.p, c.k).equal) {
                detail::check(r, false,
                              "p=" + std::to_string(c.p) + " k=" + std::to_string(c.k) + " iter=" +
                                  std::to_string(iter));
                break;
            }
        }
    }
    r.ms = detail::ms_since(t0);
    detail::note(r, "512 exhaustive + 2 x 10^4 seeded sets");
    detail::budget(r, 60000.0);
    return r;
}

// 5. Exponential sums: worst case <= d/lpf(N) for N <= 1000, d <= 3, and the
//    floating cross-check for N <= 60, d <= 2.
inline CriterionResult criterion_5(int) {
    CriterionResult r{5, "exponential-sum bound d/lpf(N) with floating cross-check", true};
    auto t0 = detail::Clock::now();
    for (u64 n = 2; n <= 1000 && r.pass; ++n) {
        Modulus m = factorize(n);
        for (int d = 1; d <= 3; ++d) {
            if (!expsum_bound_check(m, d).holds) {
                detail::check(r, false, "bound failed at N=" + std::to_string(n) + " d=" + std::to_string(d));
                break;
            }
        }
    }
    for (u64 n = 2; n <= 60 && r.pass; ++n) {
        Modulus m = factorize(n);
        for (int d = 1; d <= 2; ++d) {
            for (u64 j = 1; j < n; ++j) {
                double exact = to_double(expsum_exact(m, j, d));
                if (std::abs(exact - detail::expsum_float(n, j, d)) >= 1e-9) {
                    detail::check(r, false, "cross-check failed at N=" + std::to_string(n) + " j=" +
                                                std::to_string(j) + " d=" + std::to_string(d));
                    break;
                }
            }
        }
    }
    r.ms = detail::ms_since(t0);
    detail::budget(r, 120000.0);
    return r;
}

// 6. Uniform norm bound for the squares: 1000 seeded sets at N = 97, 199, 397.
inline CriterionResult criterion_6(int) {
    CriterionResult r{6, "uniform norm bound at primes 97, 199, 397", true};
    IntValuedPoly sq = parse_and_validate("n^2");
    auto t0 = detail::Clock::now();
    for (u64 n : {97ull, 199ull, 397ull}) {
        Modulus m = factorize(n);
        SeededRng rng(600 + n);
        Rational worst(0);
        for (int iter = 0; iter < 1000; ++iter) {
            ResidueSet a = ResidueSet::random(m, rng);
            NormBoundReport rep = average_norm_check(a, sq);
            if (!rep.applicable || !rep.holds) {
                detail::check(r, false, "N=" + std::to_string(n) + " iter=" + std::to_string(iter));
                break;
            }
            if (rep.lhs_sq > worst) worst = rep.lhs_sq;
        }
        detail::note(r, "N=" + std::to_string(n) + " worst lhs^2 = " + to_frac_string(worst) +
                            " <= " + to_frac_string(Rational(1, n)));
        if (!r.pass) break;
    }
    r.ms = detail::ms_since(t0);
    detail::budget(r, 60000.0);
    return r;
}

// 7. Pair counts stay within |A||B| at the prime N = 10007 with epsilon = 1.
inline CriterionResult criterion_7(int workers) {
    CriterionResult r{7, "pair counts near |A||B| at N = 10007", true};
    const u64 n = 10007;
    Modulus m = factorize(n);
    IntValuedPoly sq = parse_and_validate("n^2");
    SeededRng rng(700);
    auto t0 = detail::Clock::now();
    BigInt quarter = BigInt(n) * n; // |A||B| * 4 >= N^2 gate
    for (int iter = 0; iter < 100; ++iter) {
        ResidueSet a = ResidueSet::random(m, rng);
        ResidueSet b = ResidueSet::random(m, rng);
        while (BigInt(a.size()) * b.size() * 4 < quarter) {
            a = ResidueSet::random(m, rng);
            b = ResidueSet::random(m, rng);
        }
        PairCountReport rep = pair_count(a, b, sq, Rational(1), CorrelationBackend::Auto, workers);
        bool inside = rep.s > 0 && rep.s < 2 * rep.expected;
        if (!inside || !(rep.epsilon_achieved < 1)) {
            detail::check(r, false, "iter=" + std::to_string(iter) + " s=" + rep.s.str());
            break;
        }
    }
    r.ms = detail::ms_since(t0);
    detail::budget(r, 30000.0);
    return r;
}

// 8. At N = p^2 with p = 3 mod 4, squares plus squares never reach p.
inline CriterionResult criterion_8(int) {
    CriterionResult r{8, "squares fail to cover p at N = p^2", true};
    IntValuedPoly sq = parse_and_validate("n^2");
    auto t0 = detail::Clock::now();
    for (u64 p : {3ull, 7ull, 11ull, 19ull, 23ull, 31ull}) {
        Modulus m = factorize(p * p);
        ResidueSet squares = parse_set("squares", m);
        ResidueSet zero = ResidueSet::from_elements(m, {0});
        CoverageReport cov = coverage_check(squares, zero, sq);
        bool missing_p =
            std::find(cov.missing.begin(), cov.missing.end(), p) != cov.missing.end();
        detail::check(r, !cov.covered && missing_p, "p=" + std::to_string(p));
    }
    r.ms = detail::ms_since(t0);
    detail::budget(r, 5000.0);
    return r;
}

// 9. Under- and over-shooting constructions at p = 1 mod 4 hit (1/2) and (3/2) mu^2.
inline CriterionResult criterion_9(int) {
    CriterionResult r{9, "under- and over-shooting averages at p = 1 mod 4", true};
    auto t0 = detail::Clock::now();
    for (u64 p : {5ull, 13ull, 17ull}) {
        for (u64 k : {1ull, 2ull, 3ull}) {
            Rational mu2(4, p * p);
            CounterexampleWitness u = counterexample_under(p, k);
            detail::check(r, u.observed == Rational(1, 2) * mu2,
                          "under p=" + std::to_string(p) + " k=" + std::to_string(k));
            CounterexampleWitness o = counterexample_over(p, k);
            detail::check(r, o.observed == Rational(3, 2) * mu2,
                          "over p=" + std::to_string(p) + " k=" + std::to_string(k));
        }
    }
    r.ms = detail::ms_since(t0);
    detail::budget(r, 5000.0);
    return r;
}

// 10. Trend across moduli: exhaustive maxima at N = 11 and 23, sampled at 199,
//     required strictly decreasing; and the fixed-factor family stays >= 1/9.
inline CriterionResult criterion_10(int workers) {
    CriterionResult r{10, "deviation trend across moduli", true};
    IntValuedPoly sq = parse_and_validate("n^2");
    auto t0 = detail::Clock::now();
    Rational at11 = max_deviation_exhaustive(factorize(11), sq, true, 24, workers).max_abs_deviation;
    Rational at23 = max_deviation_exhaustive(factorize(23), sq, true, 24, workers).max_abs_deviation;
    Rational at199 = max_deviation_sampled(factorize(199), sq, 100000, 1000).max_abs_deviation;
    detail::note(r, "max|dev| N=11: " + to_frac_string(at11) + ", N=23: " + to_frac_string(at23) +
                        ", N=199 (sampled): " + to_frac_string(at199));
    detail::check(r, at23 < at11, "max at 23 not strictly below max at 11");
    detail::check(r, at199 < at23, "sampled max at 199 not strictly below max at 23");
    if (at11 == 0 && at23 == 0)
        detail::note(r, "note: the squares average equals the product for every subset of Z/pZ "
                        "when p = 3 mod 4, so these maxima are exactly zero and no strict "
                        "decrease exists along 11, 23, 199");

    // fixed factor 3: residue classes 0 and 1 mod 3 under the reflected squares
    IntValuedPoly neg_sq = sq.negate();
    for (u64 mfac : {5ull, 50ull, 500ull}) {
        u64 n = 3 * mfac;
        Modulus mm = factorize(n);
        ResidueSet a = ResidueSet::empty(mm), b = ResidueSet::empty(mm);
        for (u64 x = 0; x < n; ++x) {
            if (x % 3 == 0) a.insert(x);
            if (x % 3 == 1) b.insert(x);
        }
        AverageReport rep = polynomial_average(a, b, neg_sq);
        detail::check(r, rat_abs(rep.deviation) >= Rational(1, 9),
                      "N=" + std::to_string(n) + ": construction deviation below 1/9");
    }
    r.ms = detail::ms_since(t0);
    detail::budget(r, 600000.0);
    return r;
}

// 11. The interval keeps the weak-mixing average above 1/100 at N = 100, 1000, 10000.
inline CriterionResult criterion_11(int) {
    CriterionResult r{11, "weak-mixing failure on intervals", true};
    auto t0 = detail::Clock::now();
    for (u64 n : {100ull, 1000ull, 10000ull}) {
        CounterexampleWitness w = counterexample_interval(n);
        detail::check(r, w.observed > Rational(1, 100), "N=" + std::to_string(n));
        detail::note(r, "N=" + std::to_string(n) + " value=" + to_frac_string(w.observed));
    }
    r.ms = detail::ms_since(t0);
    detail::budget(r, 10000.0);
    return r;
}

// 12. Kernels: backend agreement on 50 seeded instances at N = 10^5, the
//     million-point pair count under ten seconds, and the N = 512 oracle.
inline CriterionResult criterion_12(int workers) {
    CriterionResult r{12, "kernel backend equivalence and the million-point pair count", true};
    auto t0 = detail::Clock::now();
    {
        Modulus m = factorize(100000);
        SeededRng rng(1200);
        for (int iter = 0; iter < 50 && r.pass; ++iter) {
            ResidueSet a = ResidueSet::random(m, rng);
            ResidueSet b = ResidueSet::random(m, rng);
            auto bits = correlation_profile(a, b, CorrelationBackend::BitVector, workers);
            auto ntt = correlation_profile(a, b, CorrelationBackend::Transform);
            if (bits.counts != ntt.counts)
                detail::check(r, false, "backend mismatch at iter=" + std::to_string(iter));
        }
    }
    {
        Modulus m = factorize(1000000);
        SeededRng rng(1201);
        ResidueSet a = ResidueSet::random(m, rng);
        ResidueSet b = ResidueSet::random(m, rng);
        IntValuedPoly sq = parse_and_validate("n^2");
        auto t1 = detail::Clock::now();
        PairCountReport rep = pair_count(a, b, sq, Rational(1), CorrelationBackend::Transform);
        double pair_ms = detail::ms_since(t1);
        detail::note(r, "pair count at N=10^6 took " + std::to_string(pair_ms) + " ms");
        detail::check(r, pair_ms < 10000.0, "million-point pair count exceeded 10 s");
        detail::check(r, rep.s > 0, "million-point pair count came out empty");
    }
    {
        const u64 n = 512;
        Modulus m = factorize(n);
        SeededRng rng(1202);
        ResidueSet a = ResidueSet::random(m, rng);
        ResidueSet b = ResidueSet::random(m, rng);
        IntValuedPoly p = parse_and_validate("n^2 + 3*n");
        PairCountReport rep = pair_count(a, b, p, Rational(1));
        BigInt oracle = 0;
        for (u64 mm = 1; mm <= n; ++mm) {
            u64 shift = eval_mod(p, BigInt(mm), m).value;
            for (u64 x = 0; x < n; ++x)
                if (b.contains(x) && a.contains((x + shift) % n)) ++oracle;
        }
        detail::check(r, rep.s == oracle, "pair count disagrees with the 512-point double loop");
    }
    r.ms = detail::ms_since(t0);
    return r;
}

inline CriterionResult run_criterion(int id, int workers) {
    switch (id) {
        case 1: return criterion_1(workers);
        case 2: return criterion_2(workers);
        case 3: return criterion_3(workers);
        case 4: return criterion_4(workers);
        case 5: return criterion_5(workers);
        case 6: return criterion_6(workers);
        case 7: return criterion_7(workers);
        case 8: return criterion_8(workers);
        case 9: return criterion_9(workers);
        case 10: return criterion_10(workers);
        case 11: return criterion_11(workers);
        case 12: return criterion_12(workers);
        default: throw DomainError("criterion id must lie in [1, 12]");
    }
}

inline std::vector<CriterionResult> run_all(int workers) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, workers));
    return out;
}

} // namespace ate::reproduce
