#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <string>

#include "demonwalk/errors.hpp"

namespace demonwalk {

/// Exact rational probability. Arbitrary-precision integers underneath, so
/// enumerations never overflow; always stored normalized (gcd 1, positive
/// denominator).
class Rational {
public:
    // plain (non-expression-template) bigint: boost::rational needs a true
    // integer-like type
    using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

    Rational() : r_(0) {}
    Rational(long long n) : r_(Int(n)) {}  // NOLINT(google-explicit-constructor)
    Rational(long long num, long long den) : Rational(Int(num), Int(den)) {}
    Rational(Int num, Int den) {
        if (den == 0) throw DomainError("Rational: zero denominator");
        if (den < 0) {
            den = -den;
            num = -num;
        }
        r_ = boost::rational<Int>(std::move(num), std::move(den));
    }

    Int num() const { return r_.numerator(); }
    Int den() const { return r_.denominator(); }

    Rational operator+(const Rational& o) const { return Rational(r_ + o.r_); }
    Rational operator-(const Rational& o) const { return Rational(r_ - o.r_); }
    Rational operator*(const Rational& o) const { return Rational(r_ * o.r_); }
    Rational operator/(const Rational& o) const {
        // compare the numerator: boost::rational<cpp_int> == int recurses
        if (o.r_.numerator() == 0) throw DomainError("Rational: division by zero");
        return Rational(r_ / o.r_);
    }
    Rational& operator+=(const Rational& o) { r_ += o.r_; return *this; }
    Rational& operator-=(const Rational& o) { r_ -= o.r_; return *this; }
    Rational operator-() const { return Rational(-r_); }

    auto operator<=>(const Rational& o) const { return r_ < o.r_ ? std::strong_ordering::less
                                                     : r_ > o.r_ ? std::strong_ordering::greater
                                                                 : std::strong_ordering::equal; }
    bool operator==(const Rational& o) const { return r_ == o.r_; }

    /// Rendered "num/den" ("3" when the denominator is 1).
    std::string to_string() const;
    double to_double() const;

    /// Floor of the rational as an integer (toward negative infinity).
    Int floor() const;
    /// This value reduced mod 1 into [0,1).
    Rational mod1() const;

private:
    explicit Rational(boost::rational<Int> r) : r_(std::move(r)) {}
    boost::rational<Int> r_;
};

std::string to_string(const Rational& r);

}  // namespace demonwalk
