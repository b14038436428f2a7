#pragma once

#include <stdexcept>
#include <string>

#include "lieinv/bigint.hpp"

namespace lieinv {

/// Exact rational number in canonical form: positive denominator and
/// gcd(|num|, den) = 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    /// Parses "p" or "p/q" with optional leading sign.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s), BigInt(1));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_.is_negative(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const { return make_canonical(-num_, den_); }

    Rational abs() const { return make_canonical(num_.abs(), den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_) < 0;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational pow(long long e) const {
        if (e == 0) return Rational(1);
        if (is_zero() && e < 0) throw std::domain_error("Rational: 0 to a negative power");
        Rational base = e > 0 ? *this : Rational(den_, num_);
        unsigned long long k = e > 0 ? static_cast<unsigned long long>(e)
                                     : static_cast<unsigned long long>(-e);
        Rational acc(1);
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

    double to_double() const { return num_.to_double() / den_.to_double(); }

private:
    BigInt num_, den_;

    static Rational make_canonical(BigInt n, BigInt d) {
        Rational r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        if (den_.is_negative()) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = BigInt::div_exact(num_, g);
            den_ = BigInt::div_exact(den_, g);
        }
    }
};

inline Rational lcm(const Rational& a, const Rational& b) = delete;

/// Least common multiple of two positive integers.
inline BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt(0);
    return BigInt::div_exact(a * b, BigInt::gcd(a, b)).abs();
}

}  // namespace lieinv
