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

///
/// \file spinnet/exact.hpp
///
/// \brief Exact real arithmetic for Racah-Wigner coefficients.
///
/// Every Clebsch-Gordan coefficient and 6j symbol has the form r * sqrt(s)
/// with r rational and s a squarefree positive integer (ExactReal). Sums of
/// such numbers with different radicands live in SurdSum, the ring of finite
/// Q-linear combinations of square roots of squarefree integers. Because
/// those square roots are linearly independent over Q, SurdSum equality is
/// decided term by term, which turns algebraic identities into exact tests.
///

#ifndef SPINNET_EXACT_HPP
#define SPINNET_EXACT_HPP

#include <gmpxx.h>

#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "half_int.hpp"

namespace spinnet {

using Integer = mpz_class;
using Rational = mpq_class;

namespace detail {

inline constexpr int kPrimeTableLimit = 1 << 16;

inline const std::vector<int>& prime_table() {
    static const std::vector<int> primes = [] {
        std::vector<char> composite(kPrimeTableLimit + 1, 0);
        std::vector<int> out;
        for (int i = 2; i <= kPrimeTableLimit; ++i) {
            if (composite[i])
                continue;
            out.push_back(i);
            for (long k = static_cast<long>(i) * i; k <= kPrimeTableLimit; k += i)
                composite[k] = 1;
        }
        return out;
    }();
    return primes;
}

/// Exponent of prime p in n! (Legendre).
inline long legendre_exponent(long n, long p) {
    long e = 0;
    for (long q = p; q <= n; q *= p) {
        e += n / q;
        if (q > n / p)
            break;
    }
    return e;
}

inline Rational pow_rational(const Integer& base, long exponent) {
    Integer v;
    mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0)
        return Rational(v);
    Rational r(1, 1);
    r /= Rational(v);
    return r;
}

} // namespace detail

///
/// n!, memoized as arbitrary-precision integers. Safe for concurrent use;
/// returned references stay valid for the life of the process.
///
namespace detail {

/// Nearest double (mpf_get_d truncates instead of rounding).
inline double mpf_to_double(const mpf_class& x) {
    if (x == 0)
        return 0.0;
    mp_exp_t exp = 0;
    const std::string digits = x.get_str(exp, 10, 30);
    const bool neg = digits[0] == '-';
    std::string text = (neg ? "-0." : "0.") + digits.substr(neg ? 1 : 0) + "e" + std::to_string(exp);
    return std::strtod(text.c_str(), nullptr);
}

} // namespace detail

inline const Integer& factorial(int n) {
    if (n < 0)
        throw DomainError("factorial of negative number " + std::to_string(n));
    static std::shared_mutex mutex;
    static std::deque<Integer> table{Integer(1)};
    {
        std::shared_lock lock(mutex);
        if (static_cast<std::size_t>(n) < table.size())
            return table[static_cast<std::size_t>(n)];
    }
    std::unique_lock lock(mutex);
    while (table.size() <= static_cast<std::size_t>(n)) {
        Integer next = table.back() * static_cast<unsigned long>(table.size());
        table.push_back(std::move(next));
    }
    return table[static_cast<std::size_t>(n)];
}

///
/// Multiplicative accumulator for the argument of a square root, kept as a
/// prime factorization so that its square part can be pulled out exactly.
///
class Radicand {
  public:
    /// Multiply (power > 0) or divide (power < 0) by n!.
    Radicand& factorial(long n, int power = 1) {
        if (n < 0)
            throw DomainError("factorial of negative number in radicand");
        if (n > detail::kPrimeTableLimit)
            throw DomainError("factorial argument exceeds prime table");
        for (int p : detail::prime_table()) {
            if (p > n)
                break;
            exps_[p] += power * detail::legendre_exponent(n, p);
        }
        return *this;
    }

    Radicand& integer(long k, int power = 1) {
        if (k <= 0)
            throw DomainError("radicand factor must be positive");
        long largest = 1;
        for (int p : detail::prime_table()) {
            if (static_cast<long>(p) * p > k)
                break;
            largest = p;
            while (k % p == 0) {
                exps_[p] += power;
                k /= p;
            }
        }
        if (k > 1) {
            // what is left is prime unless trial division ran out of table
            const long next = largest + 1;
            if (largest == detail::prime_table().back() && next * next <= k)
                throw DomainError("radicand factor has a large composite cofactor");
            exps_[k] += power;
        }
        return *this;
    }

    /// sqrt(this) = coefficient * sqrt(squarefree).
    std::pair<Rational, Integer> split() const {
        Rational coeff(1);
        Integer squarefree(1);
        for (const auto& [p, e] : exps_) {
            if (e == 0)
                continue;
            long half = e >= 0 ? e / 2 : -((-e + 1) / 2);
            long rest = e - 2 * half;
            coeff *= detail::pow_rational(Integer(p), half);
            if (rest)
                squarefree *= p;
        }
        coeff.canonicalize();
        return {coeff, squarefree};
    }

  private:
    std::map<long, long> exps_;
};

///
/// A real number rational_part * sqrt(surd_part) with surd_part a squarefree
/// positive integer. Zero is stored as 0 * sqrt(1).
///
class ExactReal {
  public:
    ExactReal() = default;
    ExactReal(long v) : coeff_(v) {}
    ExactReal(Rational r) : coeff_(std::move(r)) { coeff_.canonicalize(); }

    /// Caller guarantees surd is squarefree and positive.
    ExactReal(Rational r, Integer squarefree_surd) : coeff_(std::move(r)), surd_(std::move(squarefree_surd)) {
        coeff_.canonicalize();
        if (coeff_ == 0)
            surd_ = 1;
    }

    /// sqrt(x) for x >= 0. Factors by trial division, so only for modest x.
    static ExactReal sqrt(const Rational& x) {
        if (x < 0)
            throw DomainError("square root of negative rational");
        if (x == 0)
            return {};
        Radicand r;
        const Integer& num = x.get_num();
        const Integer& den = x.get_den();
        if (!num.fits_slong_p() || !den.fits_slong_p())
            throw DomainError("ExactReal::sqrt argument too large");
        r.integer(num.get_si());
        r.integer(den.get_si(), -1);
        auto [c, s] = r.split();
        return {c, s};
    }

    static ExactReal from_radicand(const Rational& coeff, const Radicand& radicand) {
        auto [c, s] = radicand.split();
        return {coeff * c, s};
    }

    const Rational& rational_part() const { return coeff_; }
    const Integer& surd_part() const { return surd_; }

    bool is_zero() const { return coeff_ == 0; }
    int sign() const { return sgn(coeff_); }

    ExactReal operator-() const { return {-coeff_, surd_}; }

    friend ExactReal operator*(const ExactReal& x, const ExactReal& y) {
        if (x.is_zero() || y.is_zero())
            return {};
        Integer g = gcd(x.surd_, y.surd_);
        Integer s = (x.surd_ / g) * (y.surd_ / g);
        return {x.coeff_ * y.coeff_ * g, s};
    }

    friend bool operator==(const ExactReal& x, const ExactReal& y) {
        return x.coeff_ == y.coeff_ && x.surd_ == y.surd_;
    }

    /// Value rounded to double; relative error below 1e-15.
    double to_double() const {
        if (is_zero())
            return 0.0;
        mpf_class root(0, 256), c(0, 256);
        mpf_set_z(root.get_mpf_t(), surd_.get_mpz_t());
        mpf_sqrt(root.get_mpf_t(), root.get_mpf_t());
        mpf_set_q(c.get_mpf_t(), coeff_.get_mpq_t());
        c *= root;
        return detail::mpf_to_double(c);
    }

    /// Human-readable form such as "-3*sqrt(5)/10", "1/6" or "0".
    std::string str() const {
        if (surd_ == 1)
            return coeff_.get_str();
        std::string out = coeff_ < 0 ? "-" : "";
        Integer num = abs(coeff_.get_num());
        if (num != 1)
            out += num.get_str() + "*";
        out += "sqrt(" + surd_.get_str() + ")";
        if (coeff_.get_den() != 1)
            out += "/" + coeff_.get_den().get_str();
        return out;
    }

  private:
    Rational coeff_{0};
    Integer surd_{1};
};

///
/// Finite sum of ExactReal terms grouped by radicand. Closed under +, -, *.
///
class SurdSum {
  public:
    SurdSum() = default;
    SurdSum(long v) { add(ExactReal(v)); }
    SurdSum(const ExactReal& x) { add(x); }

    SurdSum& add(const ExactReal& x) {
        if (x.is_zero())
            return *this;
        auto [it, inserted] = terms_.try_emplace(x.surd_part(), x.rational_part());
        if (!inserted) {
            it->second += x.rational_part();
            if (it->second == 0)
                terms_.erase(it);
        }
        return *this;
    }

    SurdSum& operator+=(const SurdSum& o) {
        for (const auto& [s, c] : o.terms_)
            add(ExactReal(c, s));
        return *this;
    }
    SurdSum& operator-=(const SurdSum& o) {
        for (const auto& [s, c] : o.terms_)
            add(ExactReal(-c, s));
        return *this;
    }
    friend SurdSum operator+(SurdSum a, const SurdSum& b) { return a += b; }
    friend SurdSum operator-(SurdSum a, const SurdSum& b) { return a -= b; }
    SurdSum operator-() const {
        SurdSum r;
        for (const auto& [s, c] : terms_)
            r.terms_.emplace(s, -c);
        return r;
    }

    friend SurdSum operator*(const SurdSum& a, const SurdSum& b) {
        SurdSum r;
        for (const auto& [sa, ca] : a.terms_)
            for (const auto& [sb, cb] : b.terms_)
                r.add(ExactReal(ca, sa) * ExactReal(cb, sb));
        return r;
    }
    SurdSum& operator*=(const SurdSum& o) { return *this = *this * o; }

    friend bool operator==(const SurdSum& a, const SurdSum& b) { return a.terms_ == b.terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Integer, Rational>& terms() const { return terms_; }

    /// Single-term sums convert back to ExactReal; throws otherwise.
    ExactReal as_exact_real() const {
        if (terms_.empty())
            return {};
        if (terms_.size() != 1)
            throw DomainError("sum of unlike surds is not a single ExactReal");
        return {terms_.begin()->second, terms_.begin()->first};
    }

    double to_double() const {
        mpf_class total(0, 256);
        for (const auto& [s, c] : terms_) {
            mpf_class root(0, 256), coeff(0, 256);
            mpf_set_z(root.get_mpf_t(), s.get_mpz_t());
            mpf_sqrt(root.get_mpf_t(), root.get_mpf_t());
            mpf_set_q(coeff.get_mpf_t(), c.get_mpq_t());
            total += coeff * root;
        }
        return detail::mpf_to_double(total);
    }

    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [s, c] : terms_) {
            std::string t = ExactReal(c, s).str();
            if (!first)
                out += (t[0] == '-') ? " - " + t.substr(1) : " + " + t;
            else
                out += t;
            first = false;
        }
        return out;
    }

  private:
    std::map<Integer, Rational> terms_;
};

} // namespace spinnet

#endif // SPINNET_EXACT_HPP
