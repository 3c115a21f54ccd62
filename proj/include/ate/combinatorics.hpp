#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ate/averages.hpp"
#include "ate/bounds.hpp"
#include "ate/correlation.hpp"
#include "ate/poly.hpp"
#include "ate/residue_set.hpp"

// Sumsets, the pair count behind the quantitative theorem, coverage
// certification, Weil-bound solution counts, and the counterexample
// constructors for small fixed prime factors.

namespace ate {

/// A + B = {a + b mod N}, by OR-ing shifted copies of B.
inline ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
    a.require_same_modulus(b);
    const u64 n = a.n();
    detail::DoubledBits b2(b);
    std::vector<u64> acc(a.words().size(), 0);
    for (u64 x = 0; x < n; ++x) {
        if (!a.contains(x)) continue;
        const u64 base = b2.n - x;
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] |= b2.load(base + 64 * i);
    }
    u64 rem = n & 63;
    if (rem) acc.back() &= (u64{1} << rem) - 1;
    ResidueSet out = ResidueSet::empty(a.modulus());
    for (u64 x = 0; x < n; ++x)
        if ((acc[x >> 6] >> (x & 63)) & 1) out.insert(x);
    return out;
}

struct PairCountReport {
    BigInt s;                  // #{(n, m) : n in B, n + P(m) in A}
    BigInt expected;           // |A| |B|
    Rational epsilon_achieved; // |s - |A||B|| / (|A||B|)
    bool threshold_applicable = false;
    bool threshold_ok = false; // lpf(N) exceeded the pair-count threshold at this epsilon
    Rational threshold;
};

/// Pair count via the histogram-correlation contraction, O(N log N + N).
/// The O(N^2) double loop stays in the test suite as the oracle.
inline PairCountReport pair_count(const ResidueSet& a, const ResidueSet& b, const IntValuedPoly& p,
                                  const Rational& eps, CorrelationBackend backend = CorrelationBackend::Auto,
                                  int workers = 1) {
    a.require_same_modulus(b);
    const u64 n = a.n();
    ImageHistogram hist = image_histogram(p, a.modulus());
    CorrelationProfile prof = correlation_profile(a, b, backend, workers);
    PairCountReport rep;
    rep.s = detail::contract(hist.counts, prof.counts);
    rep.expected = BigInt(a.size()) * b.size();
    if (rep.expected == 0) {
        rep.epsilon_achieved = 0;
    } else {
        BigInt diff = rep.s - rep.expected;
        if (diff < 0) diff = -diff;
        rep.epsilon_achieved = Rational(diff, rep.expected);
    }
    if (p.degree() > 1 && a.size() > 0 && b.size() > 0) {
        rep.threshold_applicable = true;
        ThresholdReport th = thresholds(p, a.measure(), b.measure(), eps, a.measure() * b.measure());
        rep.threshold = th.threshold;
        rep.threshold_ok = Rational(a.modulus().lpf) > th.threshold;
    }
    return rep;
}

struct CoverageReport {
    bool covered = false;
    std::vector<u64> missing; // residues outside A + B + S
    struct Witness {
        u64 residue;
        u64 a, b, s;
    };
    std::vector<Witness> witness_triples; // decompositions for a few covered residues
};

/// Is A + B + S all of Z/NZ, where S is the image of Q? Missing residues are
/// enumerated exactly.
inline CoverageReport coverage_check(const ResidueSet& a, const ResidueSet& b, const IntValuedPoly& q) {
    a.require_same_modulus(b);
    const u64 n = a.n();
    ImageHistogram hist = image_histogram(q, a.modulus());
    ResidueSet s = ResidueSet::empty(a.modulus());
    for (auto [h, c] : hist.support()) s.insert(h);

    ResidueSet total = sumset(sumset(a, b), s);
    CoverageReport rep;
    for (u64 x = 0; x < n; ++x)
        if (!total.contains(x)) rep.missing.push_back(x);
    rep.covered = rep.missing.empty();

    auto elems_a = a.elements();
    auto elems_b = b.elements();
    int wanted = 3;
    for (u64 x = 0; x < n && wanted > 0; ++x) {
        if (!total.contains(x)) continue;
        bool found = false;
        for (u64 ea : elems_a) {
            for (u64 eb : elems_b) {
                u64 rest = (x + 2 * n - ea - eb) % n;
                if (s.contains(rest)) {
                    rep.witness_triples.push_back({x, ea, eb, rest});
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        --wanted;
    }
    return rep;
}

struct TripleCountReport {
    BigInt count;       // solutions of F1(x) + F2(y) + F3(z) = c mod p
    double weil_lower;  // p^2 (1 - prod(deg F_i - 1) / sqrt(p)), display only
    bool asserted = false; // preconditions for the bound held
    bool holds = false;    // certified integer comparison against the lower bound
};

/// Counts solutions by value-multiplicity histograms in O(p^2) and compares
/// against the Weil lower bound without floating-point decisions.
inline TripleCountReport solution_count_three(const IntValuedPoly& f1, const IntValuedPoly& f2,
                                              const IntValuedPoly& f3, const Residue& c, u64 p) {
    if (!is_prime(p)) throw DomainError("solution_count_three requires a prime modulus");
    Modulus m = factorize(p);
    std::array<const IntValuedPoly*, 3> fs{&f1, &f2, &f3};

    std::array<std::vector<i64>, 3> hist;
    for (int i = 0; i < 3; ++i) hist[i] = image_histogram(*fs[i], m).counts;

    std::vector<BigInt> conv(p, 0);
    for (u64 v1 = 0; v1 < p; ++v1) {
        if (!hist[0][v1]) continue;
        for (u64 v2 = 0; v2 < p; ++v2)
            if (hist[1][v2]) conv[(v1 + v2) % p] += BigInt(hist[0][v1]) * hist[1][v2];
    }
    TripleCountReport rep;
    rep.count = 0;
    for (u64 w = 0; w < p; ++w)
        if (hist[2][(c.value + p - w % p) % p] != 0)
            rep.count += conv[w] * hist[2][(c.value + p - w % p) % p];

    BigInt dprod = 1;
    bool ok = true;
    for (const auto* f : fs) {
        int d = f->degree();
        if (d < 1 || static_cast<u64>(d) >= p || d % static_cast<i64>(p) == 0 || f->c_prime() != 1)
            ok = false;
        else
            dprod *= d - 1;
    }
    rep.asserted = ok;
    if (ok) {
        rep.weil_lower =
            static_cast<double>(p) * static_cast<double>(p) *
            (1.0 - static_cast<double>(dprod) / std::sqrt(static_cast<double>(p)));
        BigInt p2 = BigInt(p) * p;
        if (rep.count >= p2) {
            rep.holds = true;
        } else {
            BigInt gap = p2 - rep.count;
            rep.holds = gap * gap * p <= p2 * p2 * dprod * dprod;
        }
    } else {
        rep.weil_lower = 0.0;
    }
    return rep;
}

// ----------------------------------------------------------------------------
// Counterexample constructors
// ----------------------------------------------------------------------------

enum class CounterexampleKind { Under, Over, NonPermutation, Interval };

inline const char* kind_name(CounterexampleKind k) {
    switch (k) {
        case CounterexampleKind::Under: return "under";
        case CounterexampleKind::Over: return "over";
        case CounterexampleKind::NonPermutation: return "nonpermutation";
        case CounterexampleKind::Interval: return "interval";
    }
    return "?";
}

struct CounterexampleWitness {
    CounterexampleKind kind;
    u64 n = 0;                        // modulus of the witness system
    u64 p = 0;                        // fixed prime factor
    u64 q1 = 0, q2 = 0;               // residue pair (under/over)
    u64 a = 0, m_a = 0;               // target residue and its multiplicity (nonpermutation)
    std::optional<ResidueSet> set_a;
    std::optional<ResidueSet> set_b;
    std::optional<IntValuedPoly> poly_used;
    Rational predicted;
    Rational observed;
    Rational deviation;               // observed - mu(A) mu(B), signed
};

namespace detail {

inline CounterexampleWitness squares_pathology(u64 p, u64 k, bool residues) {
    if (!is_prime(p) || p % 4 != 1)
        throw DomainError("requires a prime p = 1 mod 4: the construction needs q and p - q in the "
                          "same quadratic class, i.e. -1 a square mod p");
    if (k < 1) throw DomainError("multiplier k must be positive");
    const u64 n = k * p;
    Modulus m = factorize(n);

    // lexicographically least admissible pair (q1, q2 = p - q1)
    int want = residues ? 1 : -1;
    u64 q1 = 0;
    for (u64 q = 1; q < p; ++q) {
        if (legendre_symbol(static_cast<i64>(q), p) == want &&
            legendre_symbol(static_cast<i64>(p - q), p) == want) {
            q1 = q;
            break;
        }
    }
    if (q1 == 0) throw Error("internal: no admissible residue pair found");

    ResidueSet a = ResidueSet::empty(m);
    for (u64 c = 0; c < k; ++c) {
        a.insert(c * p);
        a.insert((c * p + q1) % n);
    }
    CounterexampleWitness w;
    w.kind = residues ? CounterexampleKind::Over : CounterexampleKind::Under;
    w.n = n;
    w.p = p;
    w.q1 = q1;
    w.q2 = p - q1;
    w.poly_used = parse_and_validate("n^2");
    AverageReport rep = polynomial_average(a, a, *w.poly_used);
    Rational mu = a.measure();
    w.predicted = (residues ? Rational(3, 2) : Rational(1, 2)) * mu * mu;
    w.observed = rep.average;
    w.deviation = rep.deviation;
    w.set_a = std::move(a);
    if (w.observed != w.predicted)
        throw Error("internal: pathology average differs from its closed form");
    return w;
}

} // namespace detail

/// Averages along n^2 collapse to half the product measure: A is a union of the
/// classes {cp, cp + q1} with q1, p - q1 both nonresidues mod p.
inline CounterexampleWitness counterexample_under(u64 p, u64 k) {
    return detail::squares_pathology(p, k, false);
}

/// The overshooting variant: q1, p - q1 both nonzero squares mod p.
inline CounterexampleWitness counterexample_over(u64 p, u64 k) {
    return detail::squares_pathology(p, k, true);
}

constexpr u64 kDefaultDirichletBound = 1'000'000;

/// Builds the residue-class pair whose averaged correlation along P exceeds the
/// product by at least 1/p^2. The prime search needs d | p - 1 and p coprime to
/// the leading coefficient of Q(n) = P(cn); existence is guaranteed but without
/// an effective bound, so the search reports failure beyond `search_bound`.
inline CounterexampleWitness counterexample_nonpermutation(const IntValuedPoly& p_poly,
                                                           BigInt c_multiplier = 0,
                                                           u64 search_bound = kDefaultDirichletBound) {
    const int d = p_poly.degree();
    if (d <= 1) throw DomainError("nonpermutation witness requires degree > 1");
    BigInt c = c_multiplier == 0 ? p_poly.c_prime() : c_multiplier;
    IntValuedPoly q = p_poly.scale_argument(c);
    if (q.c_prime() != 1)
        throw DomainError("multiplier c = " + c.str() + " does not clear the denominators");
    BigInt lead = numerator(q.leading());
    if (lead < 0) lead = -lead;

    for (u64 prime = 2; prime <= search_bound; ++prime) {
        if ((prime - 1) % static_cast<u64>(d) != 0) continue;
        if (BigInt(prime) <= c) continue;
        if (lead % prime == 0) continue;
        if (!is_prime(prime)) continue;

        Modulus m = factorize(prime);
        ImageHistogram hist = image_histogram(q, m);
        u64 a = prime, m_a = 0;
        for (u64 r = 0; r < prime; ++r) {
            if (hist.counts[r] >= 2) {
                a = r;
                m_a = static_cast<u64>(hist.counts[r]);
                break;
            }
        }
        if (a == prime) continue; // cannot happen for a non-permutation; stay defensive

        CounterexampleWitness w;
        w.kind = CounterexampleKind::NonPermutation;
        w.n = prime;
        w.p = prime;
        w.a = a;
        w.m_a = m_a;
        ResidueSet sa = ResidueSet::from_elements(m, {0});
        ResidueSet sb = ResidueSet::from_elements(m, {static_cast<i64>(a)});
        // The average runs along T^{-Q(n)}: shifting B by -Q(n) hits A exactly when
        // Q(n) = a mod p.
        w.poly_used = q.negate();
        AverageReport rep = polynomial_average(sa, sb, *w.poly_used);
        w.predicted = Rational(m_a, BigInt(prime) * prime);
        w.observed = rep.average;
        w.deviation = rep.deviation;
        w.set_a = std::move(sa);
        w.set_b = std::move(sb);
        if (w.observed != w.predicted)
            throw Error("internal: nonpermutation witness average mismatch");
        return w;
    }
    throw NotFoundError("no admissible prime up to " + std::to_string(search_bound) +
                        "; raise the search bound");
}

/// The interval A = {0..floor(N/10)} keeps the averaged absolute deviation
/// (1/N) sum_n |mu(A ∩ T^n A) - mu(A)^2| bounded away from zero.
inline CounterexampleWitness counterexample_interval(u64 n) {
    if (n < 10) throw DomainError("interval witness needs N >= 10");
    Modulus m = factorize(n);
    ResidueSet a = ResidueSet::empty(m);
    for (u64 x = 0; x <= n / 10; ++x) a.insert(x);

    CorrelationProfile prof = correlation_profile(a, a);
    BigInt s2 = BigInt(a.size()) * a.size();
    BigInt acc = 0;
    for (u64 h = 0; h < n; ++h) {
        BigInt term = BigInt(prof.counts[h]) * n - s2;
        acc += term < 0 ? -term : term;
    }
    CounterexampleWitness w;
    w.kind = CounterexampleKind::Interval;
    w.n = n;
    w.observed = Rational(acc, big_pow(BigInt(n), 3));
    w.predicted = Rational(1, 100); // asserted lower threshold, not an equality
    w.deviation = w.observed;
    w.set_a = std::move(a);
    return w;
}

/// P(n) = pn with A, B in complementary classes mod p: every term vanishes.
inline AverageReport trivial_disjoint_demo(u64 p, u64 n) {
    if (!is_prime(p)) throw DomainError("p must be prime");
    if (n % p != 0) throw DomainError("p must divide N");
    Modulus m = factorize(n);
    ResidueSet a = ResidueSet::empty(m), b = ResidueSet::empty(m);
    for (u64 x = 0; x < n; ++x) {
        if (x % p == 0) a.insert(x);
        if (x % p == 1) b.insert(x);
    }
    IntValuedPoly pn = IntValuedPoly::from_coeffs({Rational(0), Rational(p)});
    AverageReport rep = polynomial_average(a, b, pn);
    if (rep.average != 0) throw Error("internal: disjoint demo average must vanish");
    return rep;
}

} // namespace ate
