#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "pencil/error.hpp"

namespace pencil {

using BigInt = boost::multiprecision::cpp_int;

inline std::size_t hash_combine(std::size_t seed, std::size_t v) noexcept {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

/// Hash over the sign and magnitude limbs.
inline std::size_t hash_value(const BigInt& v) noexcept {
    const auto& be = v.backend();
    std::size_t h = v.sign() < 0 ? 0x51ed27ULL : 0;
    const auto* limbs = be.limbs();
    for (unsigned i = 0; i < be.size(); ++i)
        h = hash_combine(h, std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(limbs[i])));
    return h;
}

inline BigInt abs(const BigInt& v) { return v.sign() < 0 ? BigInt(-v) : v; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

/// Integer square root, floor(sqrt(n)) for n >= 0.
inline std::uint64_t isqrt(std::uint64_t n) {
    if (n < 2) return n;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > n / r) --r;
    while (r + 1 <= n / (r + 1)) ++r;
    return r;
}

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {} // NOLINT: implicit from integers is intended
    Rational(BigInt v) : num_(std::move(v)), den_(1) {} // NOLINT
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw Error(Errc::ZeroDenominator, "rational with zero denominator");
        normalize();
    }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return num_.sign(); }

    /// Accepts "p", "p/q", and finite decimals "-1.25".
    static Rational parse(std::string_view text) {
        auto fail = [&] { return Error(Errc::ParseError, "not a rational: '" + std::string(text) + "'"); };
        auto parse_int = [&](std::string_view s) -> BigInt {
            std::size_t i = 0;
            bool neg = false;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
            if (i == s.size()) throw fail();
            BigInt v = 0;
            for (; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9') throw fail();
                v = v * 10 + (s[i] - '0');
            }
            return neg ? BigInt(-v) : v;
        };
        if (text.empty()) throw fail();
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            BigInt p = parse_int(text.substr(0, slash));
            std::string_view qs = text.substr(slash + 1);
            if (!qs.empty() && (qs[0] == '+' || qs[0] == '-')) throw fail();
            BigInt q = parse_int(qs);
            if (q == 0) throw Error(Errc::ZeroDenominator, "rational with zero denominator");
            return Rational(std::move(p), std::move(q));
        }
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            std::string_view frac = text.substr(dot + 1);
            if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos) throw fail();
            std::string whole(text.substr(0, dot));
            bool neg = !whole.empty() && whole[0] == '-';
            if (whole.empty() || whole == "-" || whole == "+") whole += "0";
            BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
            BigInt ip = abs(parse_int(whole));
            BigInt fp = parse_int(frac);
            BigInt p = ip * scale + fp;
            return Rational(neg ? BigInt(-p) : p, scale);
        }
        return Rational(parse_int(text));
    }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const {
        return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return Rational(BigInt(a.num_ + b.num_));
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return Rational(BigInt(a.num_ - b.num_));
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error(Errc::ZeroDenominator, "division by zero rational");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        BigInt l = a.num_ * b.den_;
        BigInt r = b.num_ * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ == 1) return;
        BigInt g = gcd(abs(num_), den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

struct RationalHash {
    std::size_t operator()(const Rational& r) const noexcept {
        return hash_combine(hash_value(r.num()), hash_value(r.den()));
    }
};

} // namespace pencil

template <>
struct std::hash<pencil::Rational> : pencil::RationalHash {};
