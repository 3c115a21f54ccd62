#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "ate/poly.hpp"
#include "ate/residue_set.hpp"

// Set-expression grammar shared by the CLI:
//   {a,b,c}            literal residues (reduced mod N)
//   ap(start,step,count)  arithmetic progression
//   image(POLY)        image of a polynomial; `squares` = image(n^2)
//   res(a,p)           the residue class {n : n = a mod p}
//   interval(len)      {0, 1, ..., len-1}
//   complement(EXPR)
//   union(E1,E2)

namespace ate {

namespace detail {

class SetParser {
public:
    SetParser(const std::string& text, const Modulus& m) : text_(text), m_(m) {}

    ResidueSet parse() {
        ResidueSet s = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input in set expression", pos_);
        return s;
    }

private:
    ResidueSet expr() {
        skip_ws();
        if (peek() == '{') return literal();
        std::size_t at = pos_;
        std::string word = identifier();
        if (word == "squares") return image_of(parse_and_validate("n^2"));
        if (word == "full") return ResidueSet::full(m_);
        if (word == "empty") return ResidueSet::empty(m_);
        if (word == "ap") {
            auto args = int_args(3, at);
            if (args[2] < 0) throw ParseError("ap count must be nonnegative", at);
            ResidueSet s = ResidueSet::empty(m_);
            for (i64 i = 0; i < args[2]; ++i) s.insert(Residue(args[0] + i * args[1], m_.n).value);
            return s;
        }
        if (word == "res") {
            auto args = int_args(2, at);
            if (args[1] <= 0) throw ParseError("res modulus must be positive", at);
            ResidueSet s = ResidueSet::empty(m_);
            u64 p = static_cast<u64>(args[1]);
            u64 a = Residue(args[0], p).value;
            for (u64 x = 0; x < m_.n; ++x)
                if (x % p == a) s.insert(x);
            return s;
        }
        if (word == "interval") {
            auto args = int_args(1, at);
            if (args[0] < 0 || static_cast<u64>(args[0]) > m_.n)
                throw ParseError("interval length out of range", at);
            ResidueSet s = ResidueSet::empty(m_);
            for (i64 x = 0; x < args[0]; ++x) s.insert(static_cast<u64>(x));
            return s;
        }
        if (word == "image") {
            expect('(');
            std::size_t start = pos_;
            int depth = 1;
            while (pos_ < text_.size() && depth > 0) {
                if (text_[pos_] == '(') ++depth;
                if (text_[pos_] == ')') --depth;
                ++pos_;
            }
            if (depth != 0) throw ParseError("unbalanced parentheses in image(...)", start);
            return image_of(parse_and_validate(text_.substr(start, pos_ - 1 - start)));
        }
        if (word == "complement") {
            expect('(');
            ResidueSet inner = expr();
            expect(')');
            return inner.complement();
        }
        if (word == "union") {
            expect('(');
            ResidueSet a = expr();
            expect(',');
            ResidueSet b = expr();
            expect(')');
            return a.united(b);
        }
        throw ParseError("unknown set expression '" + word + "'", at);
    }

    ResidueSet literal() {
        expect('{');
        ResidueSet s = ResidueSet::empty(m_);
        skip_ws();
        if (peek() == '}') {
            take();
            return s;
        }
        for (;;) {
            s.insert(Residue(integer(), m_.n).value);
            skip_ws();
            char c = take();
            if (c == '}') return s;
            if (c != ',') throw ParseError("expected ',' or '}' in set literal", pos_ - 1);
        }
    }

    ResidueSet image_of(const IntValuedPoly& p) {
        ImageHistogram hist = image_histogram(p, m_);
        ResidueSet s = ResidueSet::empty(m_);
        for (auto [h, c] : hist.support()) s.insert(h);
        return s;
    }

    std::vector<i64> int_args(int count, std::size_t at) {
        expect('(');
        std::vector<i64> out;
        for (int i = 0; i < count; ++i) {
            out.push_back(integer());
            if (i + 1 < count) expect(',');
        }
        expect(')');
        (void)at;
        return out;
    }

    i64 integer() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            take();
        }
        u64 v = 0;
        bool any = false;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > (u64{1} << 62)) throw ParseError("integer literal too large", start);
            ++pos_;
            any = true;
        }
        if (!any) throw ParseError("expected integer", start);
        return neg ? -static_cast<i64>(v) : static_cast<i64>(v);
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected set expression", start);
        return text_.substr(start, pos_ - start);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        take();
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char take() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

    const std::string& text_;
    const Modulus& m_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parse a set expression against a fixed modulus; everything reduces mod N here.
inline ResidueSet parse_set(const std::string& text, const Modulus& m) {
    detail::SetParser parser(text, m);
    return parser.parse();
}

} // namespace ate
