#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieinv {

/// Signed arbitrary-precision integer with base 2^32 limbs.
///
/// Supports exactly what exact linear algebra over the rationals needs:
/// ring arithmetic, comparison, Euclidean division and gcd. Limb counts in
/// this project stay small (determinants of 12x12 integer matrices), so
/// schoolbook algorithms are used throughout.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        if (v < 0) {
            sign_ = -1;
            unsigned long long m = ~static_cast<unsigned long long>(v) + 1ULL;
            push_u64(m);
        } else if (v > 0) {
            sign_ = 1;
            push_u64(static_cast<unsigned long long>(v));
        }
    }

    explicit BigInt(const std::string& s) {
        std::size_t pos = 0;
        int sign = 1;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -1;
            ++pos;
        }
        if (pos >= s.size()) throw std::invalid_argument("BigInt: empty literal");
        for (; pos < s.size(); ++pos) {
            char c = s[pos];
            if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit in literal");
            mul_small(10);
            add_small(static_cast<std::uint32_t>(c - '0'));
        }
        sign_ = mag_.empty() ? 0 : sign;
    }

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }
    int sign() const { return sign_; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    static int cmp(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c : -c;
    }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.sign_ = a.sign_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_ = mul_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    /// Truncated division: quotient rounds toward zero, remainder has the
    /// sign of the dividend and |r| < |b|.
    static void divrem(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        int c = cmp_mag(a.mag_, b.mag_);
        if (a.sign_ == 0 || c < 0) {
            q = BigInt();
            r = a;
            return;
        }
        std::vector<std::uint32_t> qm, rm;
        divrem_mag(a.mag_, b.mag_, qm, rm);
        q.mag_ = std::move(qm);
        q.trim();
        q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        r.mag_ = std::move(rm);
        r.trim();
        r.sign_ = r.mag_.empty() ? 0 : a.sign_;
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divrem(a, b, q, r);
        return q;
    }

    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divrem(a, b, q, r);
        return r;
    }

    /// Exact quotient; throws if the division leaves a remainder.
    static BigInt div_exact(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divrem(a, b, q, r);
        if (!r.is_zero()) throw std::logic_error("BigInt: division is not exact");
        return q;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.mag_.empty() ? 0 : 1;
        b.sign_ = b.mag_.empty() ? 0 : 1;
        while (!b.is_zero()) {
            BigInt q, r;
            divrem(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::vector<std::uint32_t> m = mag_;
        std::string digits;
        while (!m.empty()) {
            std::uint64_t rem = 0;
            for (std::size_t i = m.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | m[i];
                m[i] = static_cast<std::uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            while (!m.empty() && m.back() == 0) m.pop_back();
            for (int k = 0; k < 9; ++k) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        if (sign_ < 0) digits.push_back('-');
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

    double to_double() const {
        double v = 0.0;
        for (std::size_t i = mag_.size(); i-- > 0;) v = v * 4294967296.0 + mag_[i];
        return sign_ < 0 ? -v : v;
    }

    /// Fits in a signed 64-bit value?
    bool fits_int64() const {
        if (mag_.size() > 2) return false;
        unsigned long long v = 0;
        for (std::size_t i = mag_.size(); i-- > 0;) v = (v << 32) | mag_[i];
        if (sign_ >= 0) return v <= 0x7fffffffffffffffULL;
        return v <= 0x8000000000000000ULL;
    }

    long long to_int64() const {
        if (!fits_int64()) throw std::overflow_error("BigInt: does not fit in int64");
        long long v = 0;
        for (std::size_t i = mag_.size(); i-- > 0;) v = (v << 32) | mag_[i];
        return sign_ < 0 ? -v : v;
    }

private:
    int sign_ = 0;
    std::vector<std::uint32_t> mag_;  // little-endian, no trailing zero limbs

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }

    void push_u64(unsigned long long m) {
        mag_.push_back(static_cast<std::uint32_t>(m & 0xffffffffULL));
        if (m >> 32) mag_.push_back(static_cast<std::uint32_t>(m >> 32));
    }

    void mul_small(std::uint32_t f) {
        std::uint64_t carry = 0;
        for (auto& limb : mag_) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * f + carry;
            limb = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<std::uint32_t>(carry));
    }

    void add_small(std::uint32_t v) {
        std::uint64_t carry = v;
        for (std::size_t i = 0; carry && i < mag_.size(); ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(mag_[i]) + carry;
            mag_[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<std::uint32_t>(carry));
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& hi = a.size() >= b.size() ? a : b;
        const auto& lo = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r(hi.size());
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < hi.size(); ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(hi[i]) + (i < lo.size() ? lo[i] : 0) + carry;
            r[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) r.push_back(static_cast<std::uint32_t>(carry));
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size());
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(a[i]) - (i < b.size() ? b[i] : 0) - borrow;
            if (cur < 0) {
                cur += (1LL << 32);
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<std::uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t cur = static_cast<std::uint64_t>(a[i]) * b[j] + r[i + j] + carry;
                r[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            r[i + b.size()] += static_cast<std::uint32_t>(carry);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Knuth algorithm D on magnitudes; requires |a| >= |b| > 0.
    static void divrem_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
        if (b.size() == 1) {
            q.assign(a.size(), 0);
            std::uint64_t rem = 0;
            for (std::size_t i = a.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | a[i];
                q[i] = static_cast<std::uint32_t>(cur / b[0]);
                rem = cur % b[0];
            }
            r.clear();
            if (rem) r.push_back(static_cast<std::uint32_t>(rem));
            return;
        }
        const std::size_t n = b.size();
        const std::size_t m = a.size() - n;
        int shift = 0;
        while (((b[n - 1] << shift) & 0x80000000U) == 0) ++shift;

        std::vector<std::uint32_t> un(a.size() + 1, 0), vn(n);
        for (std::size_t i = a.size(); i-- > 0;) {
            if (shift) un[i + 1] |= a[i] >> (32 - shift);
            un[i] = a[i] << shift;
        }
        for (std::size_t i = n; i-- > 0;) {
            vn[i] = b[i] << shift;
            if (shift && i > 0) vn[i] |= b[i - 1] >> (32 - shift);
        }

        q.assign(m + 1, 0);
        using u128 = unsigned __int128;
        using i128 = __int128;
        const std::uint64_t base = 1ULL << 32;
        for (std::size_t j = m + 1; j-- > 0;) {
            std::uint64_t top = (static_cast<std::uint64_t>(un[j + n]) << 32) | un[j + n - 1];
            std::uint64_t qhat = top / vn[n - 1];
            std::uint64_t rhat = top % vn[n - 1];
            while (qhat >= base ||
                   static_cast<u128>(qhat) * vn[n - 2] >
                       ((static_cast<u128>(rhat) << 32) | un[j + n - 2])) {
                --qhat;
                rhat += vn[n - 1];
                if (rhat >= base) break;
            }
            // multiply and subtract
            i128 borrow = 0;
            u128 carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                u128 p = static_cast<u128>(qhat) * vn[i] + carry;
                carry = p >> 32;
                i128 t = static_cast<i128>(un[i + j]) -
                         static_cast<i128>(static_cast<std::uint64_t>(p & 0xffffffffULL)) - borrow;
                if (t < 0) {
                    t += static_cast<i128>(base);
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                un[i + j] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(t));
            }
            i128 t = static_cast<i128>(un[j + n]) - static_cast<i128>(carry) - borrow;
            if (t < 0) {
                // qhat was one too large: add divisor back
                t += static_cast<i128>(base);
                --qhat;
                std::uint64_t c2 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t cur = static_cast<std::uint64_t>(un[i + j]) + vn[i] + c2;
                    un[i + j] = static_cast<std::uint32_t>(cur);
                    c2 = cur >> 32;
                }
                t += static_cast<i128>(c2);
            }
            un[j + n] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(t));
            q[j] = static_cast<std::uint32_t>(qhat);
        }

        r.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = un[i] >> shift;
            if (shift && i + 1 < n + 1) r[i] |= static_cast<std::uint64_t>(un[i + 1]) << (32 - shift);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        while (!q.empty() && q.back() == 0) q.pop_back();
    }
};

}  // namespace lieinv
