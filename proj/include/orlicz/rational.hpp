#ifndef ORLICZ_RATIONAL_HPP
#define ORLICZ_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace orlicz {

/// Exact rational arithmetic for exponents.  All ordering decisions in the
/// symbolic layer run on these; doubles appear only in coefficients.
/// Numerator and denominator stay normalized (gcd 1, denominator positive),
/// so defaulted equality is value equality.
class Rational {
  public:
    constexpr Rational() = default;
    constexpr Rational(long long n) : num_(n) {}
    constexpr Rational(long long n, long long d) : num_(n), den_(d) {
        if (d == 0) throw std::invalid_argument("zero denominator");
        normalize();
    }

    constexpr long long numerator() const { return num_; }
    constexpr long long denominator() const { return den_; }

    friend constexpr Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend constexpr Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend constexpr Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend constexpr Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::invalid_argument("division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    constexpr Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    constexpr Rational& operator+=(const Rational& b) { return *this = *this + b; }
    constexpr Rational& operator-=(const Rational& b) { return *this = *this - b; }
    constexpr Rational& operator*=(const Rational& b) { return *this = *this * b; }
    constexpr Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend constexpr bool operator==(const Rational&, const Rational&) = default;
    friend constexpr std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

  private:
    constexpr void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    long long num_ = 0;
    long long den_ = 1;
};

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Parses "p", "-p" or "p/q" with integer p, q.  Bit-exact round trip with
/// format_rational.
inline Rational parse_rational(const std::string& text) {
    std::size_t pos = 0;
    const long long num = std::stoll(text, &pos);
    if (pos == text.size()) return Rational(num);
    if (text[pos] != '/') throw std::invalid_argument("bad rational: " + text);
    std::size_t pos2 = 0;
    const std::string denom_part = text.substr(pos + 1);
    const long long den = std::stoll(denom_part, &pos2);
    if (pos2 != denom_part.size() || den == 0)
        throw std::invalid_argument("bad rational: " + text);
    return Rational(num, den);
}

inline std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline long long ceil_ll(const Rational& r) {
    const long long q = r.numerator() / r.denominator();
    return (r.numerator() % r.denominator() != 0 && r > Rational(0)) ? q + 1 : q;
}

}  // namespace orlicz

#endif
