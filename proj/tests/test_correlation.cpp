#include <catch2/catch_amalgamated.hpp>

#include "ate/correlation.hpp"
#include "ate/rng.hpp"

using namespace ate;

namespace {

/// Direct double-loop oracle for |A ∩ (B+h)|.
std::vector<i64> correlation_oracle(const ResidueSet& a, const ResidueSet& b) {
    const u64 n = a.n();
    std::vector<i64> counts(n, 0);
    for (u64 h = 0; h < n; ++h)
        for (u64 x = 0; x < n; ++x)
            if (a.contains(x) && b.contains((x + n - h) % n)) counts[h]++;
    return counts;
}

} // namespace

TEST_CASE("correlation profile of the worked pair") {
    Modulus m = factorize(15);
    ResidueSet a = ResidueSet::from_elements(m, {0, 7});
    CorrelationProfile prof = correlation_profile(a, a);
    for (u64 h = 0; h < 15; ++h) {
        i64 expect = h == 0 ? 2 : (h == 7 || h == 8) ? 1 : 0;
        REQUIRE(prof.counts[h] == expect);
    }
}

TEST_CASE("degenerate sets") {
    Modulus m = factorize(12);
    ResidueSet empty = ResidueSet::empty(m);
    ResidueSet full = ResidueSet::full(m);
    for (i64 c : correlation_profile(empty, full).counts) REQUIRE(c == 0);
    for (i64 c : correlation_profile(full, full).counts) REQUIRE(c == 12);
}

TEST_CASE("modulus mismatch is rejected") {
    ResidueSet a = ResidueSet::empty(factorize(12));
    ResidueSet b = ResidueSet::empty(factorize(15));
    REQUIRE_THROWS_AS(correlation_profile(a, b), DomainError);
}

TEST_CASE("profile sums and bounds") {
    SeededRng rng(3);
    for (u64 n : {2ull, 17ull, 64ull, 100ull, 257ull}) {
        Modulus m = factorize(n);
        ResidueSet a = ResidueSet::random(m, rng);
        ResidueSet b = ResidueSet::random(m, rng);
        CorrelationProfile prof = correlation_profile(a, b);
        i64 total = 0;
        for (i64 c : prof.counts) {
            REQUIRE(c >= 0);
            REQUIRE(c <= static_cast<i64>(std::min(a.size(), b.size())));
            total += c;
        }
        REQUIRE(total == static_cast<i64>(a.size() * b.size()));
    }
}

TEST_CASE("both backends match the double-loop oracle") {
    SeededRng rng(5);
    for (u64 n : {2ull, 3ull, 37ull, 64ull, 65ull, 128ull, 200ull}) {
        Modulus m = factorize(n);
        ResidueSet a = ResidueSet::random(m, rng);
        ResidueSet b = ResidueSet::random(m, rng);
        auto oracle = correlation_oracle(a, b);
        REQUIRE(correlation_profile(a, b, CorrelationBackend::BitVector).counts == oracle);
        REQUIRE(correlation_profile(a, b, CorrelationBackend::Transform).counts == oracle);
    }
}

TEST_CASE("backends agree exactly on larger random instances") {
    SeededRng rng(9);
    for (u64 n : {1000ull, 4097ull, 30000ull}) {
        Modulus m = factorize(n);
        ResidueSet a = ResidueSet::random(m, rng);
        ResidueSet b = ResidueSet::random(m, rng);
        auto bits = correlation_profile(a, b, CorrelationBackend::BitVector);
        auto ntt = correlation_profile(a, b, CorrelationBackend::Transform);
        REQUIRE(bits.counts == ntt.counts);
    }
}

TEST_CASE("bit-vector backend is worker-count invariant") {
    SeededRng rng(13);
    Modulus m = factorize(5000);
    ResidueSet a = ResidueSet::random(m, rng);
    ResidueSet b = ResidueSet::random(m, rng);
    auto one = correlation_profile(a, b, CorrelationBackend::BitVector, 1);
    auto four = correlation_profile(a, b, CorrelationBackend::BitVector, 4);
    REQUIRE(one.counts == four.counts);
}

TEST_CASE("residue set plumbing") {
    Modulus m = factorize(10);
    ResidueSet a = ResidueSet::from_elements(m, {0, -3, 12});
    REQUIRE(a.size() == 3);
    REQUIRE(a.contains(7));
    REQUIRE(a.contains(2));
    REQUIRE(a.measure() == Rational(3, 10));
    REQUIRE(a.complement().size() == 7);
    REQUIRE(a.shifted(3).contains(0));
    REQUIRE(a.united(a.complement()) == ResidueSet::full(m));
    REQUIRE(a.elements() == std::vector<u64>{0, 2, 7});
}
