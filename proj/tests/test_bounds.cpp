#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <numbers>
#include <vector>

#include "ate/bounds.hpp"
#include "ate/setexpr.hpp"

using namespace ate;

namespace {

const double kTau = 2.0 * std::numbers::pi;

/// Floating oracle: the literal complex exponential multiple sum.
double expsum_float_oracle(u64 n, u64 j, int d) {
    std::vector<std::complex<double>> rowsum(n);
    for (u64 g = 0; g < n; ++g) {
        std::complex<double> acc = 0;
        for (u64 m = 1; m <= n; ++m) acc += std::polar(1.0, kTau * double(m * g % n) / double(n));
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

/// Test-only floating DFT, for the Plancherel and inversion cross-checks.
std::vector<std::complex<double>> dft(const ComplexSignal& f) {
    const u64 n = f.n();
    std::vector<std::complex<double>> out(n);
    for (u64 j = 0; j < n; ++j) {
        std::complex<double> acc = 0;
        for (u64 m = 0; m < n; ++m) {
            std::complex<double> v(to_double(f.values()[m].re), to_double(f.values()[m].im));
            acc += v * std::polar(1.0, -kTau * double(j * m % n) / double(n));
        }
        out[j] = acc / double(n);
    }
    return out;
}

Rational norm_avg_sq_oracle(const ComplexSignal& f, const IntValuedPoly& p) {
    const u64 n = f.n();
    Modulus m = factorize(n);
    std::vector<RatComplex> g(n);
    for (u64 x = 0; x < n; ++x) {
        RatComplex acc;
        for (u64 nn = 1; nn <= n; ++nn) {
            u64 shift = eval_mod(p, BigInt(nn), m).value;
            acc += f.values()[(x + shift) % n];
        }
        g[x] = acc;
    }
    Rational total(0);
    for (const auto& v : g) total += v.norm_sq();
    return total / rat_pow(Rational(n), 3);
}

} // namespace

TEST_CASE("expsum exact values on the worked inputs") {
    REQUIRE(expsum_exact(factorize(15), 5, 1) == Rational(1, 3));
    REQUIRE(expsum_exact(factorize(15), 1, 1) == Rational(1, 15));
    REQUIRE(expsum_exact(factorize(9), 3, 2) == Rational(5, 9));
    REQUIRE_THROWS_AS(expsum_exact(factorize(9), 0, 1), DomainError);
    REQUIRE_THROWS_AS(expsum_exact(factorize(9), 18, 1), DomainError);
}

TEST_CASE("expsum for d = 1 is gcd(j, N)/N") {
    for (u64 n : {6ull, 15ull, 36ull, 97ull}) {
        Modulus m = factorize(n);
        for (u64 j = 1; j < n; ++j) REQUIRE(expsum_exact(m, j, 1) == Rational(std::gcd(j, n), n));
    }
}

TEST_CASE("expsum equals the direct product-count for small N") {
    for (u64 n : {4ull, 9ull, 12ull, 15ull}) {
        Modulus m = factorize(n);
        for (u64 j = 1; j < n; ++j) {
            i64 pairs = 0;
            for (u64 h1 = 1; h1 <= n; ++h1)
                for (u64 h2 = 1; h2 <= n; ++h2)
                    if (h1 * h2 * j % n == 0) ++pairs;
            REQUIRE(expsum_exact(m, j, 2) == Rational(pairs, BigInt(n) * n));
        }
    }
}

TEST_CASE("expsum matches the complex-exponential oracle") {
    for (u64 n : {5ull, 12ull, 15ull, 27ull, 40ull}) {
        Modulus m = factorize(n);
        for (int d : {1, 2}) {
            for (u64 j = 1; j < n; ++j) {
                double exact = to_double(expsum_exact(m, j, d));
                REQUIRE(std::abs(exact - expsum_float_oracle(n, j, d)) < 1e-9);
            }
        }
    }
}

TEST_CASE("expsum worst case on the worked inputs") {
    ExpsumBoundReport r15 = expsum_bound_check(factorize(15), 1);
    REQUIRE(r15.lhs == Rational(1, 3));
    REQUIRE(r15.rhs == Rational(1, 3));
    REQUIRE(r15.holds);
    REQUIRE(r15.worst_j == 5);

    ExpsumBoundReport r9 = expsum_bound_check(factorize(9), 2);
    REQUIRE(r9.lhs == Rational(5, 9));
    REQUIRE(r9.holds);

    ExpsumBoundReport rp = expsum_bound_check(factorize(97), 1);
    REQUIRE(rp.lhs == Rational(1, 97));
    REQUIRE(rp.rhs == Rational(1, 97));
    REQUIRE(rp.holds);
}

TEST_CASE("divisor scan agrees with the full j scan") {
    for (u64 n : {8ull, 12ull, 30ull, 45ull, 120ull}) {
        Modulus m = factorize(n);
        for (int d : {1, 2, 3}) {
            Rational worst(0);
            for (u64 j = 1; j < n; ++j) worst = std::max(worst, expsum_exact(m, j, d));
            REQUIRE(expsum_bound_check(m, d).lhs == worst);
        }
    }
}

TEST_CASE("expsum bound holds across a range") {
    for (u64 n = 2; n <= 300; ++n) {
        Modulus m = factorize(n);
        for (int d : {1, 2, 3}) REQUIRE(expsum_bound_check(m, d).holds);
    }
}

TEST_CASE("weighted linear bound for the constant signal is tight at one") {
    Modulus m = factorize(15);
    ComplexSignal one = ComplexSignal::constant(m, Rational(1));
    for (int d : {1, 2}) {
        LinearBoundReport rep = weighted_linear_check(one, d);
        REQUIRE(rep.lhs == RatComplex(Rational(1)));
        REQUIRE(rep.rhs == Rational(1) + Rational(d, 3));
        REQUIRE(rep.holds);
    }
}

TEST_CASE("weighted linear bound on centered indicators and rademacher signals") {
    SeededRng rng(51);
    for (u64 n : {6ull, 15ull, 32ull, 64ull}) {
        Modulus m = factorize(n);
        for (int d : {1, 2}) {
            for (int iter = 0; iter < 4; ++iter) {
                ResidueSet a = ResidueSet::random(m, rng);
                REQUIRE(weighted_linear_check(ComplexSignal::centered_indicator(a), d).holds);
            }
            REQUIRE(weighted_linear_check(ComplexSignal::rademacher(m, 1000 + n + d), d).holds);
        }
    }
}

TEST_CASE("weighted linear matches a floating brute force on rational signals") {
    SeededRng rng(53);
    for (u64 n : {8ull, 15ull}) {
        Modulus m = factorize(n);
        ResidueSet a = ResidueSet::random(m, rng);
        ComplexSignal f = ComplexSignal::centered_indicator(a);
        for (int d : {1, 2}) {
            std::complex<double> acc = 0;
            std::vector<double> fv(n);
            for (u64 x = 0; x < n; ++x) fv[x] = to_double(f.values()[x].re);
            auto term = [&](u64 big_h) {
                double inner = 0;
                for (u64 mm = 0; mm < n; ++mm) inner += fv[(mm + big_h) % n] * fv[mm];
                return inner / double(n);
            };
            if (d == 1) {
                for (u64 h = 1; h <= n; ++h)
                    for (u64 nn = 1; nn <= n; ++nn) acc += term(nn * h % n);
            } else {
                for (u64 h1 = 1; h1 <= n; ++h1)
                    for (u64 h2 = 1; h2 <= n; ++h2)
                        for (u64 nn = 1; nn <= n; ++nn) acc += term(nn * h1 % n * h2 % n);
            }
            double brute = acc.real() / std::pow(double(n), d + 1);
            REQUIRE(std::abs(to_double(weighted_linear_check(f, d).lhs.re) - brute) < 1e-9);
        }
    }
}

TEST_CASE("character signals meet the linear bound, with equality at the worst frequency") {
    // f(n) = e(jn/N) is not rational, so this is the floating cross-check path:
    // <T^{nh} f, f> = e(jnh/N) and the whole average collapses onto one frequency.
    const u64 n = 15;
    auto character_lhs = [&](u64 j) {
        std::complex<double> total = 0;
        for (u64 h = 1; h <= n; ++h)
            for (u64 nn = 1; nn <= n; ++nn)
                total += std::polar(1.0, kTau * double(nn * h % n * j % n) / double(n));
        return std::abs(total) / double(n * n);
    };
    // frequency 1 carries the weight expsum(15, 1, 1) = 1/15
    REQUIRE(std::abs(character_lhs(1) - to_double(expsum_exact(factorize(15), 1, 1))) < 1e-9);
    REQUIRE(character_lhs(1) <= 1.0 / 3.0 + 1e-12);
    // frequency 5 attains the bound: gcd(5, 15)/15 = 1/3 = d/lpf exactly
    REQUIRE(std::abs(character_lhs(5) - 1.0 / 3.0) < 1e-9);
}

TEST_CASE("Plancherel and inversion hold for the floating transform") {
    SeededRng rng(57);
    for (u64 n : {7ull, 24ull, 100ull, 128ull}) {
        Modulus m = factorize(n);
        ResidueSet a = ResidueSet::random(m, rng);
        ComplexSignal f = ComplexSignal::centered_indicator(a);
        auto coeffs = dft(f);
        double lhs = 0;
        for (auto c : coeffs) lhs += std::norm(c);
        REQUIRE(std::abs(lhs - to_double(f.norm_sq())) < 1e-9);
        for (u64 mm = 0; mm < n; mm += std::max<u64>(1, n / 7)) {
            std::complex<double> back = 0;
            for (u64 j = 0; j < n; ++j)
                back += coeffs[j] * std::polar(1.0, kTau * double(j * mm % n) / double(n));
            REQUIRE(std::abs(back.real() - to_double(f.values()[mm].re)) < 1e-9);
            REQUIRE(std::abs(back.imag()) < 1e-9);
        }
    }
}

TEST_CASE("norm bound: zero signal holds for any polynomial") {
    Modulus m = factorize(12);
    ComplexSignal zero = ComplexSignal::constant(m, Rational(0));
    for (const char* expr : {"7", "n", "n^2", "(n^2+n)/2"}) {
        NormBoundReport rep = average_norm_check(zero, parse_and_validate(expr));
        REQUIRE(rep.lhs_sq == 0);
        REQUIRE(rep.holds);
    }
}

TEST_CASE("norm bound on the worked set matches the direct oracle") {
    Modulus m = factorize(15);
    ResidueSet a = ResidueSet::from_elements(m, {0, 7});
    IntValuedPoly sq = parse_and_validate("n^2");
    NormBoundReport rep = average_norm_check(a, sq);
    REQUIRE(rep.lhs_sq == norm_avg_sq_oracle(ComplexSignal::centered_indicator(a), sq));
    REQUIRE(rep.applicable);
    REQUIRE(rep.holds); // lhs^2 <= 1/3 exactly, since k = 2
    REQUIRE(rep.bound_base == Rational(1, 3));
    REQUIRE_FALSE(rep.chain.empty());
    for (const auto& c : rep.chain) REQUIRE(c.holds);
}

TEST_CASE("norm bound lhs agrees with the oracle on random instances") {
    SeededRng rng(61);
    for (u64 n : {9ull, 15ull, 25ull, 49ull}) {
        Modulus m = factorize(n);
        for (const char* expr : {"n^2", "n^3 + 2*n", "(n^2+n)/2"}) {
            IntValuedPoly p = parse_and_validate(expr);
            ResidueSet a = ResidueSet::random(m, rng);
            ComplexSignal f = ComplexSignal::centered_indicator(a);
            NormBoundReport rep = average_norm_check(f, p);
            REQUIRE(rep.lhs_sq == norm_avg_sq_oracle(f, p));
        }
    }
}

TEST_CASE("vdc chain holds for rademacher signals at N = 77 and degree 3") {
    Modulus m = factorize(77);
    IntValuedPoly cube = parse_and_validate("n^3");
    for (u64 seed : {1ull, 2ull, 3ull}) {
        // center the +-1 signal so the mean vanishes
        ComplexSignal raw = ComplexSignal::rademacher(m, seed);
        RatComplex mean = raw.mean();
        std::vector<RatComplex> v = raw.values();
        for (auto& x : v) x = x - mean;
        Rational scale = 1 + rat_abs(mean.re); // keep |f| <= 1 after centering
        for (auto& x : v) x = RatComplex(x.re / scale, x.im / scale);
        ComplexSignal f(m, std::move(v));
        NormBoundReport rep = average_norm_check(f, cube);
        REQUIRE(rep.applicable);
        REQUIRE(rep.holds);
        REQUIRE(rep.chain.size() == 2); // d = 1 and d = 2 fit the budget at N = 77
        for (const auto& c : rep.chain) REQUIRE(c.holds);
    }
}

TEST_CASE("norm bound inapplicable cases still report the exact lhs") {
    Modulus m6 = factorize(6);
    ResidueSet a = ResidueSet::from_elements(m6, {0, 3});
    NormBoundReport rep = average_norm_check(a, parse_and_validate("n^2")); // lpf 2 <= k = 2
    REQUIRE_FALSE(rep.applicable);
    REQUIRE(rep.lhs_sq >= 0);
    REQUIRE_FALSE(rep.reason.empty());

    NormBoundReport tri = average_norm_check(a, parse_and_validate("(n^2+n)/2")); // lpf 2 <= c' = 2
    REQUIRE_FALSE(tri.applicable);
}

TEST_CASE("norm bound reduces rational coefficients through the unit dilation") {
    Modulus m = factorize(15);
    ResidueSet a = ResidueSet::from_elements(m, {0, 2, 7, 9});
    NormBoundReport rep = average_norm_check(a, parse_and_validate("(n^2+n)/2"));
    REQUIRE(rep.reduction_checked); // c' = 2, lpf 3 > 2
    REQUIRE(rep.applicable);
    REQUIRE(rep.holds);
}

TEST_CASE("norm bound rejects signals that break the preconditions") {
    Modulus m = factorize(10);
    REQUIRE_THROWS_AS(
        average_norm_check(ComplexSignal::constant(m, Rational(1)), parse_and_validate("n^2")),
        DomainError); // mean not zero
    std::vector<RatComplex> big(10, RatComplex(Rational(0)));
    big[0] = RatComplex(Rational(9));
    big[5] = RatComplex(Rational(-9));
    REQUIRE_THROWS_AS(average_norm_check(ComplexSignal(m, big), parse_and_validate("n^2")),
                      DomainError); // |f| > 1
}

TEST_CASE("degree-one units drive the average to the mean") {
    Modulus m = factorize(15);
    ResidueSet a = ResidueSet::from_elements(m, {1, 2, 4, 8});
    NormBoundReport rep = average_norm_check(a, parse_and_validate("2*n + 1"));
    REQUIRE(rep.applicable);
    REQUIRE(rep.lhs_sq == 0);
    REQUIRE(rep.holds);
    NormBoundReport bad = average_norm_check(a, parse_and_validate("5*n"));
    REQUIRE_FALSE(bad.applicable); // gcd(5, 15) > 1
    REQUIRE(bad.lhs_sq > 0);
}

TEST_CASE("thresholds on the worked parameter sets") {
    IntValuedPoly sq = parse_and_validate("n^2");
    ThresholdReport rep = thresholds(sq, Rational(1, 2), Rational(1, 2), Rational(1), Rational(1, 4));
    REQUIRE(rep.c_p == 2);
    REQUIRE(rep.threshold == 2);
    REQUIRE(rep.c_quant == 2); // max{2, (1/4) * 4}

    IntValuedPoly tri = parse_and_validate("(n^2+n)/2");
    ThresholdReport t2 = thresholds(tri, Rational(1, 2), Rational(1, 2), Rational(1), Rational(1));
    REQUIRE(t2.c_p == 2);

    REQUIRE_THROWS_AS(
        thresholds(parse_and_validate("n"), Rational(1, 2), Rational(1, 2), Rational(1), Rational(1)),
        DomainError);
}

TEST_CASE("threshold invariants and the degenerate measures") {
    IntValuedPoly cube = parse_and_validate("n^3");
    for (auto mu : {Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
        ThresholdReport rep = thresholds(cube, mu, mu, Rational(1, 2), Rational(1, 3));
        REQUIRE(rep.threshold >= Rational(rep.c_p));
        REQUIRE(rep.c_quant >= Rational(rep.c_p));
        REQUIRE_FALSE(rep.degenerate);
    }
    ThresholdReport deg = thresholds(cube, Rational(1), Rational(1, 2), Rational(1), Rational(1));
    REQUIRE(deg.degenerate);
    REQUIRE(deg.threshold == Rational(deg.c_p));
    ThresholdReport zero = thresholds(cube, Rational(0), Rational(1, 2), Rational(1), Rational(1));
    REQUIRE(zero.degenerate);
}

TEST_CASE("squares deviation vanishes at primes 3 mod 4 while a fixed factor persists") {
    IntValuedPoly sq = parse_and_validate("n^2");
    // The squares average equals the product for every subset of Z/pZ when
    // p = 3 mod 4, so these maxima are exactly zero.
    REQUIRE(max_deviation_exhaustive(factorize(11), sq, true).max_abs_deviation == 0);
    REQUIRE(max_deviation_exhaustive(factorize(23), sq, true).max_abs_deviation == 0);
    REQUIRE(max_deviation_sampled(factorize(199), sq, 2000, 7).max_abs_deviation == 0);

    // A genuine monotone instance along growing lpf: primes 1 mod 4.
    Rational at5 = max_deviation_exhaustive(factorize(5), sq, false).max_abs_deviation;
    Rational at13 = max_deviation_exhaustive(factorize(13), sq, true).max_abs_deviation;
    Rational at97 = max_deviation_sampled(factorize(97), sq, 20000, 11).max_abs_deviation;
    REQUIRE(at13 < at5);
    REQUIRE(at97 < at13);

    // Fixed factor 3: the multiples-of-3 witness pins the deviation at 2/9 forever.
    IntValuedPoly three_n = parse_and_validate("3*n");
    for (u64 n : {15ull, 150ull, 1500ull}) {
        Modulus m = factorize(n);
        ResidueSet mult = ResidueSet::empty(m);
        for (u64 x = 0; x < n; x += 3) mult.insert(x);
        REQUIRE(polynomial_average(mult, mult, three_n).deviation == Rational(2, 9));
    }
}
