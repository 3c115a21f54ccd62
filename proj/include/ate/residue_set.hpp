#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "ate/errors.hpp"
#include "ate/rational.hpp"
#include "ate/ring.hpp"
#include "ate/rng.hpp"

namespace ate {

/// Subset of Z/NZ as a packed bit vector with exact normalized measure.
class ResidueSet {
public:
    explicit ResidueSet(Modulus m) : modulus_(std::move(m)), words_((modulus_.n + 63) / 64, 0) {}

    static ResidueSet empty(const Modulus& m) { return ResidueSet(m); }

    static ResidueSet full(const Modulus& m) {
        ResidueSet s(m);
        for (auto& w : s.words_) w = ~u64{0};
        s.mask_tail();
        s.size_ = m.n;
        return s;
    }

    static ResidueSet from_elements(const Modulus& m, const std::vector<i64>& elems) {
        ResidueSet s(m);
        for (i64 e : elems) s.insert(Residue(e, m.n).value);
        return s;
    }

    /// Uniformly random subset (each element included with probability 1/2).
    static ResidueSet random(const Modulus& m, SeededRng& rng) {
        ResidueSet s(m);
        for (auto& w : s.words_) w = rng.word();
        s.mask_tail();
        s.recount();
        return s;
    }

    /// Random subset with inclusion probability num/2^16 per element.
    static ResidueSet random_density(const Modulus& m, SeededRng& rng, std::uint32_t num) {
        ResidueSet s(m);
        for (u64 x = 0; x < m.n; ++x)
            if (rng.chance(num)) s.insert(x);
        return s;
    }

    const Modulus& modulus() const { return modulus_; }
    u64 n() const { return modulus_.n; }
    u64 size() const { return size_; }
    Rational measure() const { return Rational(size_, modulus_.n); }
    const std::vector<u64>& words() const { return words_; }

    bool contains(u64 x) const { return (words_[x >> 6] >> (x & 63)) & 1; }

    void insert(u64 x) {
        u64& w = words_[x >> 6];
        u64 bit = u64{1} << (x & 63);
        if (!(w & bit)) {
            w |= bit;
            ++size_;
        }
    }

    std::vector<u64> elements() const {
        std::vector<u64> out;
        out.reserve(size_);
        for (u64 x = 0; x < modulus_.n; ++x)
            if (contains(x)) out.push_back(x);
        return out;
    }

    ResidueSet complement() const {
        ResidueSet s(modulus_);
        for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
        s.mask_tail();
        s.size_ = modulus_.n - size_;
        return s;
    }

    ResidueSet united(const ResidueSet& o) const {
        require_same_modulus(o);
        ResidueSet s(modulus_);
        for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = words_[i] | o.words_[i];
        s.recount();
        return s;
    }

    /// The set A + h (cyclic shift).
    ResidueSet shifted(u64 h) const {
        h %= modulus_.n;
        ResidueSet s(modulus_);
        for (u64 x = 0; x < modulus_.n; ++x)
            if (contains(x)) s.insert((x + h) % modulus_.n);
        return s;
    }

    bool operator==(const ResidueSet& o) const {
        return modulus_.n == o.modulus_.n && words_ == o.words_;
    }

    void require_same_modulus(const ResidueSet& o) const {
        if (modulus_.n != o.modulus_.n)
            throw DomainError("modulus mismatch: " + std::to_string(modulus_.n) + " vs " +
                              std::to_string(o.modulus_.n));
    }

private:
    void mask_tail() {
        u64 rem = modulus_.n & 63;
        if (rem) words_.back() &= (u64{1} << rem) - 1;
    }
    void recount() {
        size_ = 0;
        for (u64 w : words_) size_ += static_cast<u64>(std::popcount(w));
    }

    Modulus modulus_;
    std::vector<u64> words_;
    u64 size_ = 0;
};

namespace detail {

/// B laid out twice in a row, so any cyclic rotation of B is a contiguous bit slice.
struct DoubledBits {
    std::vector<u64> buf;
    u64 n;

    explicit DoubledBits(u64 n_) : buf((2 * n_ + 63) / 64 + 1, 0), n(n_) {}
    explicit DoubledBits(const ResidueSet& b) : DoubledBits(b.n()) { refill(b.words()); }

    void refill(const std::vector<u64>& words) {
        std::fill(buf.begin(), buf.end(), 0);
        for (u64 x = 0; x < n; ++x)
            if ((words[x >> 6] >> (x & 63)) & 1) {
                set(x);
                set(x + n);
            }
    }
    void set(u64 pos) { buf[pos >> 6] |= u64{1} << (pos & 63); }

    u64 load(u64 bitpos) const {
        u64 w = bitpos >> 6, s = bitpos & 63;
        u64 lo = buf[w] >> s;
        return s ? lo | (buf[w + 1] << (64 - s)) : lo;
    }
};

/// popcount(A & (B + h)) given the doubled layout of B.
inline i64 count_shift_overlap(const std::vector<u64>& a_words, const DoubledBits& b2, u64 h) {
    const u64 base = b2.n - h; // bit x of (B + h) is bit (x - h mod n) of B
    i64 c = 0;
    for (std::size_t i = 0; i < a_words.size(); ++i)
        c += std::popcount(a_words[i] & b2.load(base + 64 * i));
    return c;
}

} // namespace detail

} // namespace ate
