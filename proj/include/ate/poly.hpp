#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ate/errors.hpp"
#include "ate/rational.hpp"
#include "ate/ring.hpp"

// Integer-valued polynomial algebra: parsing, validation via the binomial-basis
// transform, exact evaluation mod N, image histograms over the representatives
// 1..N, and the iterated difference operators.

namespace ate {

constexpr int kMaxPolyDegree = 64;
constexpr u64 kMaxHistogramModulus = u64{1} << 26;

namespace detail {

// Dense coefficient vector, index = power of n. Parser workhorse.
using Coeffs = std::vector<Rational>;

inline void trim(Coeffs& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

inline Coeffs add(const Coeffs& a, const Coeffs& b, int sign) {
    Coeffs r = a;
    if (r.size() < b.size()) r.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign > 0 ? b[i] : Rational(-b[i]);
    trim(r);
    return r;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b, std::size_t pos) {
    if (a.empty() || b.empty()) return {};
    if (a.size() + b.size() - 2 > kMaxPolyDegree)
        throw ParseError("polynomial degree exceeds " + std::to_string(kMaxPolyDegree), pos);
    Coeffs r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

/// Binomial coefficients C(i, j) for i, j <= kMaxPolyDegree.
inline const std::vector<std::vector<BigInt>>& pascal() {
    static const std::vector<std::vector<BigInt>> table = [] {
        std::vector<std::vector<BigInt>> t(kMaxPolyDegree + 1);
        for (int i = 0; i <= kMaxPolyDegree; ++i) {
            t[i].resize(i + 1);
            t[i][0] = t[i][i] = 1;
            for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
        }
        return t;
    }();
    return table;
}

/// C(n, i) as an exact integer for any integer n (product form, exact division by i!).
inline BigInt binomial_at(const BigInt& n, int i) {
    BigInt num = 1;
    for (int j = 0; j < i; ++j) num *= n - j;
    BigInt fact = 1;
    for (int j = 2; j <= i; ++j) fact *= j;
    return num / fact; // exact: product of i consecutive integers is divisible by i!
}

} // namespace detail

struct ImageHistogram {
    u64 n = 0;
    std::vector<i64> counts; // counts[h] = #{m in [1,N] : P(m) = h mod N}

    /// (h, count) pairs with count > 0, ascending in h. This is the image set S.
    std::vector<std::pair<u64, i64>> support() const {
        std::vector<std::pair<u64, i64>> s;
        for (u64 h = 0; h < n; ++h)
            if (counts[h] > 0) s.emplace_back(h, counts[h]);
        return s;
    }
    bool is_permutation() const {
        for (i64 c : counts)
            if (c != 1) return false;
        return true;
    }
};

/// A rational-coefficient polynomial mapping integers to integers.
/// Construction certifies integer-valuedness via the binomial basis
/// (P = sum b_i * C(n, i) with every b_i an integer).
class IntValuedPoly {
public:
    static IntValuedPoly from_coeffs(std::vector<Rational> monomial) {
        detail::trim(monomial);
        return IntValuedPoly(std::move(monomial));
    }

    const std::vector<Rational>& monomial_coeffs() const { return monomial_; }
    const std::vector<BigInt>& binomial_coeffs() const { return binomial_; }

    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(monomial_.size()) - 1; }
    bool is_zero() const { return monomial_.empty(); }

    /// Least positive integer c' such that c'P has integer coefficients.
    const BigInt& c_prime() const { return c_prime_; }
    Rational leading() const { return is_zero() ? Rational(0) : monomial_.back(); }

    /// max{c', degree, largest prime dividing the integer leading coefficient of c'P}.
    BigInt constant_cp() const {
        BigInt cp = c_prime_;
        if (degree() > 0 && BigInt(degree()) > cp) cp = degree();
        if (!is_zero()) {
            BigInt scaled_lead = numerator(leading() * Rational(c_prime_));
            BigInt lpp = largest_prime_factor(scaled_lead);
            if (lpp > cp) cp = lpp;
        }
        if (cp < 1) cp = 1;
        return cp;
    }

    /// Exact value at an arbitrary integer argument.
    Rational eval(const BigInt& x) const {
        Rational acc(0);
        for (auto it = monomial_.rbegin(); it != monomial_.rend(); ++it) acc = acc * Rational(x) + *it;
        return acc;
    }

    /// Exact integer value via the binomial basis; no rational division occurs.
    BigInt eval_int(const BigInt& x) const {
        BigInt acc = 0;
        for (std::size_t i = 0; i < binomial_.size(); ++i)
            if (binomial_[i] != 0) acc += binomial_[i] * detail::binomial_at(x, static_cast<int>(i));
        return acc;
    }

    /// The polynomial n -> P(c*n).
    IntValuedPoly scale_argument(const BigInt& c) const {
        std::vector<Rational> out(monomial_.size(), Rational(0));
        BigInt pw = 1;
        for (std::size_t i = 0; i < monomial_.size(); ++i) {
            out[i] = monomial_[i] * Rational(pw);
            pw *= c;
        }
        return from_coeffs(std::move(out));
    }

    IntValuedPoly negate() const {
        std::vector<Rational> out = monomial_;
        for (auto& c : out) c = -c;
        return from_coeffs(std::move(out));
    }

    /// The polynomial n -> P(n + h).
    IntValuedPoly shift_argument(i64 h) const {
        const auto& pas = detail::pascal();
        std::vector<Rational> out(monomial_.size(), Rational(0));
        for (std::size_t i = 0; i < monomial_.size(); ++i) {
            BigInt hp = 1;
            for (std::size_t j = i + 1; j-- > 0;) {
                out[j] += monomial_[i] * Rational(pas[i][j] * hp);
                hp *= h;
            }
        }
        return from_coeffs(std::move(out));
    }

    bool operator==(const IntValuedPoly& o) const { return monomial_ == o.monomial_; }

    /// Canonical display form, e.g. "1/2*n^2 + 1/2*n".
    std::string to_text() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const Rational& c = monomial_[i];
            if (c == 0) continue;
            Rational a = rat_abs(c);
            if (s.empty()) {
                if (c < 0) s += "-";
            } else {
                s += c < 0 ? " - " : " + ";
            }
            bool unit = (a == 1) && i > 0;
            if (!unit) {
                s += numerator(a).str();
                if (denominator(a) != 1) s += "/" + denominator(a).str();
                if (i > 0) s += "*";
            }
            if (i >= 1) s += "n";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    explicit IntValuedPoly(std::vector<Rational> monomial) : monomial_(std::move(monomial)) {
        int k = degree();
        // Forward differences at 0 give the binomial coefficients; integrality of
        // all of them is equivalent to integer-valuedness on Z.
        std::vector<Rational> vals(k + 1);
        for (int n = 0; n <= k; ++n) vals[n] = eval(BigInt(n));
        std::vector<Rational> diff = vals;
        binomial_.resize(k + 1);
        for (int i = 0; i <= k; ++i) {
            if (denominator(diff[0]) != 1) {
                for (int n = 0; n <= k; ++n)
                    if (denominator(vals[n]) != 1)
                        throw NotIntegerValuedError(n, to_frac_string(vals[n]));
            }
            binomial_[i] = numerator(diff[0]);
            for (std::size_t j = 0; j + 1 < diff.size(); ++j) diff[j] = diff[j + 1] - diff[j];
            diff.pop_back();
        }
        c_prime_ = 1;
        for (const Rational& c : monomial_) c_prime_ = boost::multiprecision::lcm(c_prime_, denominator(c));
    }

    std::vector<Rational> monomial_;
    std::vector<BigInt> binomial_;
    BigInt c_prime_ = 1;
};

/// P(x) mod N, evaluated exactly at the integer x and then reduced.
inline Residue eval_mod(const IntValuedPoly& p, const BigInt& x, const Modulus& m) {
    return Residue(p.eval_int(x), m.n);
}

/// Histogram of {P(1), ..., P(N)} mod N. Enumerates representatives 1..N even
/// when P is not N-periodic (c' > 1), stepping the binomial basis incrementally.
inline ImageHistogram image_histogram(const IntValuedPoly& p, const Modulus& m) {
    if (m.n > kMaxHistogramModulus)
        throw DomainError("image histogram limited to N <= 2^26");
    const u64 n = m.n;
    ImageHistogram hist;
    hist.n = n;
    hist.counts.assign(n, 0);

    const auto& b = p.binomial_coeffs();
    const int k = p.degree();
    if (k < 0) {
        hist.counts[0] = static_cast<i64>(n);
        return hist;
    }
    std::vector<u64> bmod(k + 1), v(k + 1, 0);
    for (int i = 0; i <= k; ++i) bmod[i] = Residue(b[i], n).value;
    v[0] = 1 % n;
    if (k >= 1) v[1] = 1 % n; // C(1, i) = [i <= 1]
    for (u64 step = 0; step < n; ++step) {
        u64 val = 0;
        for (int i = 0; i <= k; ++i)
            if (bmod[i]) val = (val + mulmod(bmod[i], v[i], n)) % n;
        hist.counts[val]++;
        for (int i = k; i >= 1; --i) v[i] = (v[i] + v[i - 1]) % n; // C(n+1,i) = C(n,i) + C(n,i-1)
    }
    return hist;
}

/// Shifts h_1..h_d together with the symbolic result of differencing P by them.
struct DifferenceData {
    std::vector<i64> shifts;
    IntValuedPoly result;
};

/// Delta_d(P; h_1, ..., h_d) as an exact polynomial in n.
inline DifferenceData iterated_difference(const IntValuedPoly& p, const std::vector<i64>& shifts) {
    if (shifts.empty()) throw DomainError("iterated_difference requires at least one shift");
    IntValuedPoly cur = p;
    for (i64 h : shifts) {
        std::vector<Rational> diff = cur.shift_argument(h).monomial_coeffs();
        diff.resize(std::max(diff.size(), cur.monomial_coeffs().size()), Rational(0));
        for (std::size_t i = 0; i < cur.monomial_coeffs().size(); ++i) diff[i] -= cur.monomial_coeffs()[i];
        cur = IntValuedPoly::from_coeffs(std::move(diff));
    }
    return DifferenceData{shifts, std::move(cur)};
}

// ---------------------------------------------------------------------------
// Polynomial expression parser.
//
// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor (('*' factor) | ('/' INTEGER))*
// factor := base ['^' INTEGER]
// base   := INTEGER | 'n' | '(' expr ')'
//
// Division is only by a (positive) integer literal, e.g. "(n^3+2*n)/3".
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
public:
    explicit PolyParser(const std::string& text) : text_(text) {}

    Coeffs parse() {
        Coeffs r = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return r;
    }

private:
    Coeffs expr() {
        skip_ws();
        int sign = 1;
        if (peek() == '+' || peek() == '-') sign = (take() == '-') ? -1 : 1;
        Coeffs acc = term();
        if (sign < 0) acc = mul(acc, {Rational(-1)}, pos_);
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') return acc;
            take();
            acc = add(acc, term(), c == '+' ? 1 : -1);
        }
    }

    Coeffs term() {
        Coeffs acc = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                take();
                acc = mul(acc, factor(), pos_);
            } else if (c == '/') {
                take();
                skip_ws();
                std::size_t at = pos_;
                BigInt d = integer();
                if (d == 0) throw ParseError("division by zero", at);
                for (auto& q : acc) q /= Rational(d);
            } else {
                return acc;
            }
        }
    }

    Coeffs factor() {
        Coeffs b = base();
        skip_ws();
        if (peek() == '^') {
            take();
            skip_ws();
            std::size_t at = pos_;
            BigInt e = integer();
            if (e < 0 || e > kMaxPolyDegree) throw ParseError("exponent out of range", at);
            Coeffs acc{Rational(1)};
            for (BigInt i = 0; i < e; ++i) acc = mul(acc, b, at);
            return acc;
        }
        return b;
    }

    Coeffs base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            take();
            Coeffs inner = expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            take();
            return inner;
        }
        if (c == 'n') {
            take();
            return Coeffs{Rational(0), Rational(1)};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Coeffs{Rational(integer())};
        throw ParseError(std::string("expected number, 'n' or '(', got '") +
                             (c ? std::string(1, c) : std::string("end of input")) + "'",
                         pos_);
    }

    BigInt integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected integer literal", start);
        return BigInt(text_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char take() { return text_[pos_++]; }

    const std::string& text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parse a polynomial expression and certify it maps integers to integers.
inline IntValuedPoly parse_and_validate(const std::string& expr) {
    detail::PolyParser parser(expr);
    return IntValuedPoly::from_coeffs(parser.parse());
}

} // namespace ate
