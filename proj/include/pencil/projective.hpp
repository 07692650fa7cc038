#pragma once

// Exact projective plane over the rationals. Points and lines are stored as
// primitive integer triples: gcd of the absolute values is 1 and the first
// nonzero entry is positive, so equality and hashing are bitwise on the
// canonical form.

#include <array>
#include <compare>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>

#include "pencil/error.hpp"
#include "pencil/rational.hpp"

namespace pencil {

using Triple = std::array<BigInt, 3>;

namespace detail {

inline void canonicalize(Triple& v) {
    int lead = -1;
    for (int i = 0; i < 3; ++i) {
        if (v[i] != 0) {
            lead = i;
            break;
        }
    }
    if (lead < 0) throw Error(Errc::ZeroVector, "homogeneous triple (0,0,0)");
    BigInt g = abs(v[lead]);
    for (int i = lead + 1; i < 3 && g != 1; ++i)
        if (v[i] != 0) g = gcd(g, abs(v[i]));
    if (v[lead].sign() < 0) g = -g;
    if (g != 1)
        for (auto& x : v) x /= g;
}

inline Triple cross(const Triple& a, const Triple& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline BigInt dot(const Triple& a, const Triple& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline BigInt det3(const Triple& a, const Triple& b, const Triple& c) { return dot(a, cross(b, c)); }

} // namespace detail

/// Homogeneous triple in canonical form. `Tag` separates points from lines.
template <class Tag>
class Homogeneous {
public:
    Homogeneous(BigInt x, BigInt y, BigInt z) : v_{std::move(x), std::move(y), std::move(z)} {
        detail::canonicalize(v_);
    }
    explicit Homogeneous(Triple v) : v_(std::move(v)) { detail::canonicalize(v_); }

    const Triple& coords() const noexcept { return v_; }
    const BigInt& operator[](std::size_t i) const noexcept { return v_[i]; }

    std::array<std::string, 3> to_strings() const { return {v_[0].str(), v_[1].str(), v_[2].str()}; }

    friend bool operator==(const Homogeneous&, const Homogeneous&) = default;
    friend std::strong_ordering operator<=>(const Homogeneous& a, const Homogeneous& b) {
        for (int i = 0; i < 3; ++i) {
            if (a.v_[i] < b.v_[i]) return std::strong_ordering::less;
            if (a.v_[i] > b.v_[i]) return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    std::size_t hash() const noexcept {
        return hash_combine(hash_combine(hash_value(v_[0]), hash_value(v_[1])), hash_value(v_[2]));
    }

private:
    Triple v_;
};

struct PointTag {};
struct LineTag {};

/// (X : Y : Z); Z = 0 marks a point at infinity.
class ProjPoint : public Homogeneous<PointTag> {
public:
    using Homogeneous::Homogeneous;

    bool at_infinity() const noexcept { return (*this)[2] == 0; }

    static ProjPoint affine(const Rational& x, const Rational& y) {
        return ProjPoint(x.num() * y.den(), y.num() * x.den(), x.den() * y.den());
    }

    /// Affine coordinates, or nullopt for a point at infinity.
    std::optional<std::pair<Rational, Rational>> to_affine() const {
        if (at_infinity()) return std::nullopt;
        return std::pair{Rational((*this)[0], (*this)[2]), Rational((*this)[1], (*this)[2])};
    }

    friend std::ostream& operator<<(std::ostream& os, const ProjPoint& p) {
        return os << '(' << p[0] << ':' << p[1] << ':' << p[2] << ')';
    }
};

/// [a : b : c], the line aX + bY + cZ = 0.
class ProjLine : public Homogeneous<LineTag> {
public:
    using Homogeneous::Homogeneous;

    /// a x + b y + c = 0 with rational coefficients.
    static ProjLine affine(const Rational& a, const Rational& b, const Rational& c) {
        BigInt l = boost::multiprecision::lcm(boost::multiprecision::lcm(a.den(), b.den()), c.den());
        return ProjLine(a.num() * (l / a.den()), b.num() * (l / b.den()), c.num() * (l / c.den()));
    }

    bool is_line_at_infinity() const noexcept { return (*this)[0] == 0 && (*this)[1] == 0; }

    friend std::ostream& operator<<(std::ostream& os, const ProjLine& l) {
        return os << '[' << l[0] << ':' << l[1] << ':' << l[2] << ']';
    }
};

template <class T>
    requires std::is_base_of_v<Homogeneous<PointTag>, T> || std::is_base_of_v<Homogeneous<LineTag>, T>
std::string to_string(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

struct HomogeneousHash {
    template <class Tag>
    std::size_t operator()(const Homogeneous<Tag>& h) const noexcept { return h.hash(); }
};

inline bool incident(const ProjPoint& p, const ProjLine& l) {
    return detail::dot(p.coords(), l.coords()) == 0;
}

inline ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
    if (p == q) throw Error(Errc::IdenticalPoints, "line_through needs two distinct points");
    return ProjLine(detail::cross(p.coords(), q.coords()));
}

inline ProjPoint meet(const ProjLine& l1, const ProjLine& l2) {
    if (l1 == l2) throw Error(Errc::IdenticalLines, "meet needs two distinct lines");
    return ProjPoint(detail::cross(l1.coords(), l2.coords()));
}

inline bool collinear(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
    return detail::det3(p.coords(), q.coords(), r.coords()) == 0;
}

/// Invertible 3x3 integer matrix acting on column vectors of point
/// coordinates. Lines transform by the inverse transpose, which up to scale
/// is the transposed adjugate, so everything stays integral.
class ProjTransform {
public:
    using Matrix = std::array<Triple, 3>;

    explicit ProjTransform(Matrix rows) : m_(std::move(rows)) {
        if (determinant() == 0) throw Error(Errc::SingularMatrix, "projective transform with zero determinant");
        // cofactor matrix C with C[i][j] = (-1)^{i+j} minor(i,j); adj(M)^T = C,
        // and C = det * M^{-T}.
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
                cof_[i][j] = m_[i1][j1] * m_[i2][j2] - m_[i1][j2] * m_[i2][j1];
            }
        }
    }

    static ProjTransform identity() {
        return ProjTransform(Matrix{Triple{1, 0, 0}, Triple{0, 1, 0}, Triple{0, 0, 1}});
    }

    BigInt determinant() const { return detail::det3(m_[0], m_[1], m_[2]); }
    const Matrix& matrix() const noexcept { return m_; }

    ProjPoint apply(const ProjPoint& p) const { return ProjPoint(mul(m_, p.coords())); }
    ProjLine apply(const ProjLine& l) const { return ProjLine(mul(cof_, l.coords())); }

private:
    static Triple mul(const Matrix& m, const Triple& v) {
        return {detail::dot(m[0], v), detail::dot(m[1], v), detail::dot(m[2], v)};
    }

    Matrix m_;
    Matrix cof_;
};

inline ProjPoint apply_transform(const ProjTransform& t, const ProjPoint& p) { return t.apply(p); }
inline ProjLine apply_transform(const ProjTransform& t, const ProjLine& l) { return t.apply(l); }

} // namespace pencil

template <>
struct std::hash<pencil::ProjPoint> : pencil::HomogeneousHash {};
template <>
struct std::hash<pencil::ProjLine> : pencil::HomogeneousHash {};
