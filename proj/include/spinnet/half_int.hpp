// Copyright 2026 The spinnet Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINNET_HALF_INT_HPP
#define SPINNET_HALF_INT_HPP

#include <charconv>
#include <compare>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spinnet {

/// Raised when quantum numbers violate range or parity rules.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

///
/// Integer or half-integer quantum number, stored as twice its value.
///
/// Spins (j, k, J) are nonnegative; magnetic numbers (m, M) may be negative.
/// All arithmetic stays in the doubled representation, so no rounding ever
/// takes place.
///
class HalfInt {
  public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int twice) {
        HalfInt h;
        h.twice_ = twice;
        return h;
    }

    static constexpr HalfInt integer(int value) { return from_twice(2 * value); }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }

    /// 2j+1, the dimension of the spin-j irrep.
    constexpr int multiplicity() const { return twice_ + 1; }

    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
    constexpr HalfInt& operator+=(HalfInt o) {
        twice_ += o.twice_;
        return *this;
    }
    constexpr HalfInt& operator-=(HalfInt o) {
        twice_ -= o.twice_;
        return *this;
    }

    constexpr auto operator<=>(const HalfInt&) const = default;

    /// Integer value; throws unless is_integer().
    int as_int() const {
        if (!is_integer())
            throw DomainError("half-integer " + str() + " used where an integer is required");
        return twice_ / 2;
    }

    /// "3/2", "-1/2", "2".
    std::string str() const {
        if (is_integer())
            return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

  private:
    int twice_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

inline constexpr HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }

/// (-1)^x for x of integer value.
inline int parity_sign(HalfInt x) {
    const int v = x.as_int();
    return (v % 2 == 0) ? 1 : -1;
}

///
/// Clebsch-Gordan triangle: |a-b| <= c <= a+b with a+b+c integral and all
/// three nonnegative.
///
constexpr bool admissible(HalfInt a, HalfInt b, HalfInt c) {
    const int ta = a.twice(), tb = b.twice(), tc = c.twice();
    if (ta < 0 || tb < 0 || tc < 0)
        return false;
    if ((ta + tb + tc) % 2 != 0)
        return false;
    const int diff = ta > tb ? ta - tb : tb - ta;
    return diff <= tc && tc <= ta + tb;
}

struct Triad {
    HalfInt a, b, c;
    constexpr bool admissible() const { return spinnet::admissible(a, b, c); }
};

/// |m| <= j with j-m integral.
constexpr bool valid_projection(HalfInt j, HalfInt m) {
    if (j.twice() < 0)
        return false;
    const int tm = m.twice() < 0 ? -m.twice() : m.twice();
    return tm <= j.twice() && (j.twice() - m.twice()) % 2 == 0;
}

inline void require_projection(HalfInt j, HalfInt m, std::string_view what) {
    if (j.twice() < 0)
        throw DomainError(std::string(what) + ": negative spin " + j.str());
    if (!valid_projection(j, m))
        throw DomainError(std::string(what) + ": projection " + m.str() +
                          " is not valid for spin " + j.str());
}

/// Thrown by parse_half_int on malformed text.
class ParseError : public std::invalid_argument {
  public:
    ParseError(const std::string& msg, std::size_t position)
        : std::invalid_argument(msg), position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

namespace detail {
inline int parse_int_exact(std::string_view s, std::size_t offset) {
    int v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
        throw ParseError("expected an integer in '" + std::string(s) + "'", offset);
    return v;
}
} // namespace detail

///
/// Accepts "3/2", "-1/2", "2" and "twice=3". Anything else, including a
/// fraction whose denominator is not 2, is rejected.
///
inline HalfInt parse_half_int(std::string_view text) {
    constexpr std::string_view prefix = "twice=";
    if (text.substr(0, prefix.size()) == prefix)
        return HalfInt::from_twice(detail::parse_int_exact(text.substr(prefix.size()), prefix.size()));
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return HalfInt::integer(detail::parse_int_exact(text, 0));
    const int num = detail::parse_int_exact(text.substr(0, slash), 0);
    const int den = detail::parse_int_exact(text.substr(slash + 1), slash + 1);
    if (den == 2)
        return HalfInt::from_twice(num);
    if (den == 1)
        return HalfInt::integer(num);
    throw ParseError("denominator must be 1 or 2 in '" + std::string(text) + "'", slash + 1);
}

} // namespace spinnet

#endif // SPINNET_HALF_INT_HPP
