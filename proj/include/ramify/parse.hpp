/*
   Copyright 2026 The ramify Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/**
 * @file parse.hpp
 * @brief Text form of Laurent polynomials.
 *
 *   expr   := [sign] term { sign term }
 *   term   := factor { '*' factor }
 *   factor := integer | 'g' ['^' integer] | 't1' ['^' sint] | 't2' ['^' sint]
 *
 * Factors may appear in any order and repeat (they multiply). Whitespace is
 * ignored. Like terms are combined in the field.
 */

#ifndef RAMIFY_PARSE_HPP
#define RAMIFY_PARSE_HPP

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "gf.hpp"
#include "laurent.hpp"

namespace ramify {

class ParseError : public std::invalid_argument {
   public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::invalid_argument(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

   private:
    std::size_t pos_;
};

namespace details {

class PolyParser {
   public:
    static constexpr std::int64_t kMaxExponent = 1'000'000;

    PolyParser(const std::string& text, gf::FieldRef ctx) : ctx_(std::move(ctx)) {
        for (std::size_t i = 0; i < text.size(); ++i)
            if (!std::isspace(static_cast<unsigned char>(text[i]))) {
                s_.push_back(text[i]);
                pos_map_.push_back(i);
            }
        pos_map_.push_back(text.size());
    }

    LaurentPoly parse() {
        LaurentPoly f(ctx_);
        if (s_.empty()) fail("empty expression");
        bool negative = false;
        if (peek() == '+' || peek() == '-') negative = get() == '-';
        while (true) {
            auto [e, c] = term();
            f.add_term(e, negative ? -c : c);
            if (at_end()) break;
            const char op = get();
            if (op != '+' && op != '-') fail(std::string("unexpected '") + op + "'", i_ - 1);
            negative = op == '-';
        }
        return f;
    }

   private:
    std::pair<Exponent, gf::FieldElem> term() {
        Exponent e;
        gf::FieldElem c = gf::FieldElem::one(ctx_);
        while (true) {
            factor(e, c);
            if (at_end() || peek() != '*') break;
            get();
        }
        return {e, c};
    }

    void factor(Exponent& e, gf::FieldElem& c) {
        if (at_end()) fail("expected a factor");
        const std::size_t start = i_;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            const std::uint64_t v = digits();
            c *= gf::FieldElem::from_int(ctx_, static_cast<std::int64_t>(v % ctx_->characteristic()));
            return;
        }
        if (peek() == 'g') {
            get();
            if (ctx_->degree() < 2) fail("generator g is not defined over a prime field", start);
            std::int64_t k = 1;
            if (!at_end() && peek() == '^') {
                get();
                k = signed_int();
            }
            c *= gf::FieldElem::generator(ctx_).powi(k);
            return;
        }
        if (peek() == 't') {
            get();
            if (at_end() || (peek() != '1' && peek() != '2')) fail("expected t1 or t2", start);
            const bool first = get() == '1';
            std::int64_t k = 1;
            if (!at_end() && peek() == '^') {
                get();
                k = signed_int();
            }
            (first ? e.m : e.n) += k;
            if (std::abs(e.m) > kMaxExponent || std::abs(e.n) > kMaxExponent) fail("exponent overflow", start);
            return;
        }
        fail(std::string("unexpected '") + peek() + "'");
    }

    std::int64_t signed_int() {
        bool neg = false;
        if (!at_end() && (peek() == '-' || peek() == '+')) neg = get() == '-';
        const std::size_t start = i_;
        const std::uint64_t v = digits();
        if (v > static_cast<std::uint64_t>(kMaxExponent)) fail("exponent overflow", start);
        return neg ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
    }

    std::uint64_t digits() {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
        std::uint64_t v = 0;
        const std::size_t start = i_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<std::uint64_t>(get() - '0');
            if (v > (std::uint64_t{1} << 60)) fail("integer overflow", start);
        }
        return v;
    }

    bool at_end() const { return i_ >= s_.size(); }
    char peek() const { return s_[i_]; }
    char get() { return s_[i_++]; }

    [[noreturn]] void fail(const std::string& msg) const { fail(msg, i_); }
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, pos_map_[std::min(at, pos_map_.size() - 1)]);
    }

    gf::FieldRef ctx_;
    std::string s_;
    std::vector<std::size_t> pos_map_;
    std::size_t i_ = 0;
};

}  // namespace details

inline LaurentPoly parse_poly(const std::string& expr, const gf::FieldRef& field) {
    return details::PolyParser(expr, field).parse();
}

}  // namespace ramify

#endif  // RAMIFY_PARSE_HPP
