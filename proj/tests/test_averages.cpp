#include <catch2/catch_amalgamated.hpp>

#include "ate/averages.hpp"
#include "ate/rng.hpp"

using namespace ate;

namespace {

const IntValuedPoly kSquares = parse_and_validate("n^2");

/// O(N^2) oracle: literal double loop over n and the elements of the shifted set.
Rational average_oracle(const ResidueSet& a, const ResidueSet& b, const IntValuedPoly& p) {
    const u64 n = a.n();
    BigInt hits = 0;
    for (u64 m = 1; m <= n; ++m) {
        u64 shift = Residue(p.eval_int(BigInt(m)), n).value;
        for (u64 x = 0; x < n; ++x)
            if (a.contains(x) && b.contains((x + n - shift) % n)) ++hits;
    }
    return Rational(hits, BigInt(n) * n);
}

ResidueSet multiples_of(const Modulus& m, u64 p) {
    ResidueSet s = ResidueSet::empty(m);
    for (u64 x = 0; x < m.n; x += p) s.insert(x);
    return s;
}

} // namespace

TEST_CASE("the worked example over fifteen points") {
    Modulus m = factorize(15);
    ResidueSet a = ResidueSet::from_elements(m, {0, 7});
    AverageReport rep = polynomial_average(a, a, kSquares);
    REQUIRE(rep.average == Rational(2, 225));
    REQUIRE(rep.product == Rational(4, 225));
    REQUIRE(rep.deviation == Rational(-2, 225));
}

TEST_CASE("average matches the double-loop oracle on random instances") {
    SeededRng rng(17);
    for (u64 n : {2ull, 5ull, 24ull, 81ull, 200ull, 512ull}) {
        Modulus m = factorize(n);
        for (const char* expr : {"n^2", "(n^2+n)/2", "n^3 + 2*n", "n^4 - n", "3*n + 1"}) {
            IntValuedPoly p = parse_and_validate(expr);
            ResidueSet a = ResidueSet::random(m, rng);
            ResidueSet b = ResidueSet::random(m, rng);
            AverageReport rep = polynomial_average(a, b, p);
            REQUIRE(rep.average == average_oracle(a, b, p));
            REQUIRE(rep.product == a.measure() * b.measure());
            REQUIRE(rep.deviation == rep.average - rep.product);
        }
    }
}

TEST_CASE("empty set gives zero average") {
    Modulus m = factorize(21);
    ResidueSet a = ResidueSet::empty(m);
    ResidueSet b = ResidueSet::from_elements(m, {1, 2, 3});
    REQUIRE(polynomial_average(a, b, kSquares).average == 0);
}

TEST_CASE("linear permutation polynomials decouple the average") {
    SeededRng rng(19);
    for (u64 n : {7ull, 15ull, 64ull, 143ull}) {
        Modulus m = factorize(n);
        for (int iter = 0; iter < 8; ++iter) {
            u64 c1 = 0;
            do c1 = 1 + rng.below(n - 1); while (std::gcd(c1, n) != 1);
            i64 c0 = static_cast<i64>(rng.below(2 * n)) - static_cast<i64>(n);
            IntValuedPoly p = IntValuedPoly::from_coeffs({Rational(c0), Rational(c1)});
            ResidueSet a = ResidueSet::random(m, rng);
            ResidueSet b = ResidueSet::random(m, rng);
            AverageReport rep = polynomial_average(a, b, p);
            REQUIRE(rep.average == a.measure() * b.measure());
            REQUIRE(rep.deviation == 0);
        }
    }
}

TEST_CASE("squares average over p = 3 mod 4 is exactly the product, exhaustively") {
    for (u64 p : {3ull, 7ull, 11ull}) {
        Modulus m = factorize(p);
        ImageHistogram hist = image_histogram(kSquares, m);
        CorrelationBackend backend = CorrelationBackend::BitVector;
        for (u64 mask = 0; mask < (u64{1} << p); ++mask) {
            ResidueSet a = ResidueSet::empty(m);
            for (u64 x = 0; x < p; ++x)
                if ((mask >> x) & 1) a.insert(x);
            AverageReport rep = polynomial_average(a, a, kSquares, backend);
            REQUIRE(rep.deviation == 0);
        }
        (void)hist;
    }
}

TEST_CASE("exhaustive deviation scan on the worked sizes") {
    IntValuedPoly five_n = parse_and_validate("5*n");

    DeviationScan s4 = max_deviation_exhaustive(factorize(4), kSquares, false);
    REQUIRE(s4.max_abs_deviation == Rational(1, 8));
    REQUIRE(s4.witness.elements() == std::vector<u64>{0, 1});

    DeviationScan s2 = max_deviation_exhaustive(factorize(2), kSquares, false);
    REQUIRE(s2.max_abs_deviation == 0);

    Modulus m15 = factorize(15);
    ResidueSet mult5 = multiples_of(m15, 5);
    AverageReport rep = polynomial_average(mult5, mult5, five_n);
    REQUIRE(rep.deviation == Rational(4, 25)); // (p-1)/p^2 at p = 5
    DeviationScan s15 = max_deviation_exhaustive(m15, five_n, false);
    REQUIRE(s15.max_abs_deviation >= Rational(4, 25));
}

TEST_CASE("symmetry-reduced scan returns the same maximum") {
    for (u64 n : {8ull, 11ull, 12ull, 15ull}) {
        Modulus m = factorize(n);
        for (const char* expr : {"n^2", "(n^2+n)/2", "n^3"}) {
            IntValuedPoly p = parse_and_validate(expr);
            DeviationScan plain = max_deviation_exhaustive(m, p, false);
            DeviationScan folded = max_deviation_exhaustive(m, p, true);
            REQUIRE(plain.max_abs_deviation == folded.max_abs_deviation);
            REQUIRE(folded.subsets_examined < plain.subsets_examined);
        }
    }
}

TEST_CASE("exhaustive scan is worker-count invariant") {
    Modulus m = factorize(17);
    DeviationScan one = max_deviation_exhaustive(m, kSquares, false, 24, 1);
    DeviationScan four = max_deviation_exhaustive(m, kSquares, false, 24, 4);
    REQUIRE(one.max_abs_deviation == four.max_abs_deviation);
    REQUIRE(one.witness == four.witness);
}

TEST_CASE("scan refuses beyond the exhaustive bound") {
    REQUIRE_THROWS_AS(max_deviation_exhaustive(factorize(25), kSquares, false), RefuseExhaustiveError);
    REQUIRE_THROWS_AS(max_deviation_exhaustive(factorize(20), kSquares, false, 16),
                      RefuseExhaustiveError);
}

TEST_CASE("sampled scan lower-bounds the exhaustive maximum") {
    Modulus m = factorize(16);
    DeviationScan exact = max_deviation_exhaustive(m, kSquares, false);
    DeviationScan sampled = max_deviation_sampled(m, kSquares, 3000, 42);
    REQUIRE_FALSE(sampled.proven_max);
    REQUIRE(sampled.max_abs_deviation <= exact.max_abs_deviation);
    REQUIRE(sampled.max_abs_deviation > 0);
}

TEST_CASE("conditional inner products at the extreme levels") {
    SeededRng rng(29);
    for (auto [p, k] : std::vector<std::pair<u64, int>>{{3, 2}, {3, 3}, {7, 2}, {5, 3}}) {
        u64 n = 1;
        for (int i = 0; i < k; ++i) n *= p;
        Modulus m = factorize(n);
        for (int iter = 0; iter < 6; ++iter) {
            ResidueSet a = ResidueSet::random(m, rng);
            Rational mu = a.measure();
            REQUIRE(conditional_inner(a, p, k, 0).inner == mu * mu);
            REQUIRE(conditional_inner(a, p, k, k).inner == mu);
            Rational prev = mu * mu;
            for (int level = 0; level <= k; ++level) {
                Rational cur = conditional_inner(a, p, k, level).inner;
                REQUIRE(cur >= prev); // projections onto nested invariant algebras grow
                REQUIRE(cur <= mu);
                prev = cur;
            }
        }
    }
}

TEST_CASE("conditional inner product of an invariant set") {
    Modulus m9 = factorize(9);
    ResidueSet a = ResidueSet::from_elements(m9, {0, 3, 6});
    REQUIRE(conditional_inner(a, 3, 2, 1).inner == Rational(1, 3));
}

TEST_CASE("conditional inner rejects mismatched moduli") {
    Modulus m8 = factorize(8);
    ResidueSet a = ResidueSet::empty(m8);
    REQUIRE_THROWS_AS(conditional_inner(a, 3, 2, 1), DomainError);
    REQUIRE_THROWS_AS(conditional_inner(a, 2, 3, 5), DomainError); // level out of range
}

TEST_CASE("pkgoal identity on the worked set") {
    Modulus m9 = factorize(9);
    ResidueSet a = ResidueSet::from_elements(m9, {0, 3, 6});
    PkgoalReport rep = pkgoal_check(a, 3, 2);
    REQUIRE(rep.lhs == Rational(1, 9));
    REQUIRE(rep.rhs == Rational(1, 9));
    REQUIRE(rep.equal);
    REQUIRE(rep.ck_term == Rational(1, 9)); // mu(A)/p for even k
    REQUIRE(rep.inner_terms == std::vector<Rational>{Rational(1, 3)});
}

TEST_CASE("pkgoal identity holds exhaustively for p = 3, k = 2") {
    Modulus m9 = factorize(9);
    for (u64 mask = 0; mask < 512; ++mask) {
        ResidueSet a = ResidueSet::empty(m9);
        for (u64 x = 0; x < 9; ++x)
            if ((mask >> x) & 1) a.insert(x);
        REQUIRE(pkgoal_check(a, 3, 2).equal);
    }
}

TEST_CASE("pkgoal identity holds on random sets at p = 3, k = 3 and p = 7, k = 2") {
    SeededRng rng(37);
    Modulus m27 = factorize(27), m49 = factorize(49);
    for (int iter = 0; iter < 300; ++iter) {
        REQUIRE(pkgoal_check(ResidueSet::random(m27, rng), 3, 3).equal);
        REQUIRE(pkgoal_check(ResidueSet::random(m49, rng), 7, 2).equal);
    }
}

TEST_CASE("pkgoal degenerate sets") {
    Modulus m27 = factorize(27);
    REQUIRE(pkgoal_check(ResidueSet::empty(m27), 3, 3).lhs == 0);
    REQUIRE(pkgoal_check(ResidueSet::empty(m27), 3, 3).equal);
    PkgoalReport full = pkgoal_check(ResidueSet::full(m27), 3, 3);
    REQUIRE(full.lhs == 1);
    REQUIRE(full.equal);
}

TEST_CASE("pkgoal guards its residue class") {
    Modulus m25 = factorize(25);
    ResidueSet a = ResidueSet::from_elements(m25, {0, 1, 7});
    REQUIRE_THROWS_AS(pkgoal_check(a, 5, 2), DomainError);
    PkgoalReport rep = pkgoal_check(a, 5, 2, /*permissive=*/true);
    REQUIRE_FALSE(rep.asserted); // both sides evaluated, equality not claimed
    REQUIRE_THROWS_AS(pkgoal_check(a, 5, 1, true), DomainError); // needs k > 1
}

TEST_CASE("sampled deviation from the product decreases along p = 3 mod 4, k = 2") {
    SeededRng rng(41);
    Rational prev;
    bool first = true;
    for (u64 p : {3ull, 7ull, 11ull, 19ull}) {
        Modulus m = factorize(p * p);
        Rational worst = 0;
        for (int iter = 0; iter < 2000; ++iter) {
            ResidueSet a = ResidueSet::random(m, rng);
            Rational dev = rat_abs(polynomial_average(a, a, kSquares).deviation);
            if (dev > worst) worst = dev;
        }
        if (!first) REQUIRE(worst < prev);
        prev = worst;
        first = false;
    }
}
