#pragma once

// Generators for the explicit graph and pencil configurations: the Farey
// divisibility construction and its four-pencil realization, the symmetric
// Farey construction with m shifted pencils, general-position lattice
// centres, and the collinear-centre grid configuration.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pencil/error.hpp"
#include "pencil/graph_sets.hpp"
#include "pencil/pencil.hpp"
#include "pencil/projective.hpp"
#include "pencil/rational.hpp"

namespace pencil {

struct GraphConstruction {
    std::string kind;  // "farey-shift" or "symmetric"
    std::string label;
    std::uint64_t n = 0;
    Rational d;
    BipartiteGraph graph;

    const GroundSet& A() const noexcept { return graph.left(); }
    const GroundSet& B() const noexcept { return graph.right(); }
};

/// Integer ranges of the divisibility construction: numerators and
/// denominators up to j_max, denominators at least j_min, multiples up to l_max.
struct FareyShiftBounds {
    std::uint64_t j_min = 1;
    std::uint64_t j_max = 0;
    std::uint64_t l_max = 0;
};

namespace detail {

using HighPrecision = boost::multiprecision::cpp_bin_float_100;

// floor() that treats values within 1e-80 of an integer as that integer, so a
// bound that is exactly integral in exact arithmetic does not drop by one.
inline std::uint64_t floor_bound(const HighPrecision& v) {
    HighPrecision r = boost::multiprecision::round(v);
    if (boost::multiprecision::abs(v - r) < HighPrecision("1e-80")) return static_cast<std::uint64_t>(r);
    return static_cast<std::uint64_t>(boost::multiprecision::floor(v));
}

inline std::uint64_t ceil_bound(const HighPrecision& v) {
    HighPrecision r = boost::multiprecision::round(v);
    if (boost::multiprecision::abs(v - r) < HighPrecision("1e-80")) return static_cast<std::uint64_t>(r);
    return static_cast<std::uint64_t>(boost::multiprecision::ceil(v));
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

// Coprime (numerator, denominator) pairs sorted by the value num/den.
inline void sort_by_value(std::vector<std::pair<std::int64_t, std::int64_t>>& fr) {
    std::sort(fr.begin(), fr.end(), [](const auto& x, const auto& y) {
        return static_cast<__int128>(x.first) * y.second < static_cast<__int128>(y.first) * x.second;
    });
}

} // namespace detail

/// Natural-log bounds, floored (upper) or ceiled (lower). For d = 0 every
/// bound is an exact integer computation.
inline FareyShiftBounds farey_shift_bounds(std::uint64_t n, const Rational& d) {
    if (d.sign() < 0) throw Error(Errc::DomainTooSmall, "d must be nonnegative");
    FareyShiftBounds b;
    if (d.is_zero()) {
        if (n < 4) throw Error(Errc::DomainTooSmall, "farey-shift with d = 0 needs n >= 4");
        b.j_max = isqrt(n);
        b.j_min = 1;
        while (4 * b.j_min * b.j_min < n) ++b.j_min;  // 2j >= sqrt(n)
        b.l_max = n;
        return b;
    }
    if (n < 16) throw Error(Errc::DomainTooSmall, "farey-shift with d > 0 needs n >= 16");
    using detail::HighPrecision;
    const HighPrecision nn(n);
    const HighPrecision exponent = HighPrecision(d.num()) / HighPrecision(d.den());
    const HighPrecision log_power = boost::multiprecision::exp(exponent * boost::multiprecision::log(boost::multiprecision::log(nn)));
    const HighPrecision root_bound = boost::multiprecision::sqrt(nn) / log_power;
    b.j_max = detail::floor_bound(root_bound);
    b.j_min = std::max<std::uint64_t>(1, detail::ceil_bound(root_bound / 2));
    b.l_max = detail::floor_bound(nn / log_power);
    return b;
}

/// A = { i/j : gcd(i,j) = 1, 1 <= i <= j_max, j_min <= j <= j_max },
/// B = { 1/l : 1 <= l <= l_max }, and (i/j, 1/l) is an edge iff j | l.
inline GraphConstruction build_farey_shift_construction(std::uint64_t n, const Rational& d) {
    const FareyShiftBounds bounds = farey_shift_bounds(n, d);

    std::vector<std::pair<std::int64_t, std::int64_t>> fr;
    for (std::uint64_t j = bounds.j_min; j <= bounds.j_max; ++j)
        for (std::uint64_t i = 1; i <= bounds.j_max; ++i)
            if (detail::gcd64(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) == 1)
                fr.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
    detail::sort_by_value(fr);

    std::vector<Rational> a_vals;
    a_vals.reserve(fr.size());
    for (const auto& [i, j] : fr) a_vals.emplace_back(BigInt(i), BigInt(j));

    // ascending values 1/l_max < ... < 1/1, so l sits at index l_max - l
    std::vector<Rational> b_vals;
    b_vals.reserve(bounds.l_max);
    for (std::uint64_t l = bounds.l_max; l >= 1; --l) b_vals.emplace_back(BigInt(1), BigInt(l));

    std::vector<Edge> edges;
    for (std::uint32_t ai = 0; ai < fr.size(); ++ai) {
        const auto j = static_cast<std::uint64_t>(fr[ai].second);
        for (std::uint64_t l = j; l <= bounds.l_max; l += j)
            edges.emplace_back(ai, static_cast<std::uint32_t>(bounds.l_max - l));
    }

    GraphConstruction c;
    c.kind = "farey-shift";
    c.n = n;
    c.d = d;
    c.label = "farey-shift(n=" + std::to_string(n) + ",d=" + d.str() + ")";
    c.graph = BipartiteGraph(GroundSet(std::move(a_vals)), GroundSet(std::move(b_vals)), std::move(edges));
    return c;
}

/// A = { i/j : gcd(i,j) = 1, 1 <= i, j <= floor(sqrt n) } on both sides;
/// edges (i/j, k/j) over a shared denominator j.
inline GraphConstruction build_symmetric_farey_construction(std::uint64_t n) {
    if (n < 1) throw Error(Errc::DomainTooSmall, "symmetric construction needs n >= 1");
    const auto s = static_cast<std::int64_t>(isqrt(n));

    std::vector<std::pair<std::int64_t, std::int64_t>> fr;
    for (std::int64_t j = 1; j <= s; ++j)
        for (std::int64_t i = 1; i <= s; ++i)
            if (detail::gcd64(i, j) == 1) fr.emplace_back(i, j);
    detail::sort_by_value(fr);

    std::vector<std::uint32_t> slot(static_cast<std::size_t>((s + 1) * (s + 1)), 0);
    std::vector<std::vector<std::uint32_t>> by_den(static_cast<std::size_t>(s + 1));
    std::vector<Rational> vals;
    vals.reserve(fr.size());
    for (std::uint32_t idx = 0; idx < fr.size(); ++idx) {
        const auto& [i, j] = fr[idx];
        slot[static_cast<std::size_t>(i * (s + 1) + j)] = idx;
        vals.emplace_back(BigInt(i), BigInt(j));
    }
    for (std::int64_t j = 1; j <= s; ++j)
        for (std::int64_t i = 1; i <= s; ++i)
            if (detail::gcd64(i, j) == 1)
                by_den[static_cast<std::size_t>(j)].push_back(slot[static_cast<std::size_t>(i * (s + 1) + j)]);

    std::vector<Edge> edges;
    std::size_t total = 0;
    for (const auto& row : by_den) total += row.size() * row.size();
    edges.reserve(total);
    for (const auto& row : by_den)
        for (auto u : row)
            for (auto v : row) edges.emplace_back(u, v);

    GroundSet a(std::move(vals));
    GraphConstruction c;
    c.kind = "symmetric";
    c.n = n;
    c.d = Rational(0);
    c.label = "symmetric(n=" + std::to_string(n) + ")";
    c.graph = BipartiteGraph(a, a, std::move(edges));
    return c;
}

/// Number of i in [1, s] coprime to j, for each j in [1, s] (index 0 unused).
inline std::vector<std::uint64_t> coprime_counts(std::uint64_t s) {
    std::vector<std::uint64_t> c(s + 1, 0);
    for (std::uint64_t j = 1; j <= s; ++j)
        for (std::uint64_t i = 1; i <= s; ++i)
            if (std::gcd(i, j) == 1) ++c[j];
    return c;
}

using LatticePoint = std::pair<std::int64_t, std::int64_t>;

inline bool lattice_collinear(const LatticePoint& p, const LatticePoint& q, const LatticePoint& r) {
    return (q.first - p.first) * (r.second - p.second) - (q.second - p.second) * (r.first - p.first) == 0;
}

/// Exhaustive O(m^3) check that no three points are collinear.
inline bool no_three_collinear(const std::vector<LatticePoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k)
                if (lattice_collinear(pts[i], pts[j], pts[k])) return false;
    return true;
}

namespace detail {
inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}
} // namespace detail

inline constexpr std::size_t kExhaustiveGeneralPositionLimit = 1000;

/// m lattice points (t, t^2 mod p), 0 <= t < m, with p the least prime >= m.
/// Coordinates stay below 2m. Verified exhaustively for m <= 1000; beyond that
/// the parabola over F_p has no three collinear points, and collinearity over
/// the integers would survive reduction mod p.
inline std::vector<LatticePoint> general_position_lattice(std::size_t m) {
    if (m < 1) throw Error(Errc::DomainTooSmall, "general position set needs m >= 1");
    std::uint64_t p = std::max<std::uint64_t>(m, 2);
    while (!detail::is_prime(p)) ++p;
    for (;;) {
        std::vector<LatticePoint> pts;
        pts.reserve(m);
        for (std::uint64_t t = 0; t < m; ++t)
            pts.emplace_back(static_cast<std::int64_t>(t), static_cast<std::int64_t>((t * t) % p));
        if (m > kExhaustiveGeneralPositionLimit || no_three_collinear(pts)) return pts;
        do ++p;
        while (!detail::is_prime(p));
    }
}

inline std::vector<ProjPoint> general_position_centers(std::size_t m) {
    std::vector<ProjPoint> out;
    for (const auto& [x, y] : general_position_lattice(m)) out.emplace_back(BigInt(x), BigInt(y), BigInt(1));
    return out;
}

/// Edge points (a, b) of a graph as projective points, in edge order.
inline std::vector<ProjPoint> edge_points(const BipartiteGraph& g) {
    std::vector<ProjPoint> pts;
    pts.reserve(g.edge_count());
    for (const auto& e : g.edges()) pts.push_back(ProjPoint::affine(g.a(e), g.b(e)));
    return pts;
}

/// One pencil per centre, each made of the lines joining the centre to every
/// edge point.
inline PencilConfig pencils_from_graph(const BipartiteGraph& g, const std::vector<ProjPoint>& centres,
                                       std::string label) {
    const auto pts = edge_points(g);
    const std::unordered_set<ProjPoint> point_set(pts.begin(), pts.end());
    std::vector<Pencil> pencils;
    for (const auto& c : centres) {
        if (point_set.count(c))
            throw Error(Errc::CentreOnPointSet, "centre " + to_string(c) + " is an edge point");
        std::unordered_set<ProjLine> lines;
        for (const auto& p : pts) lines.insert(line_through(c, p));
        pencils.emplace_back(c, std::vector<ProjLine>(lines.begin(), lines.end()));
    }
    return PencilConfig(std::move(label), std::move(pencils));
}

inline PencilConfig pencils_from_graph(const GraphConstruction& c, const std::vector<ProjPoint>& centres) {
    return pencils_from_graph(c.graph, centres, c.label);
}

/// Centres (0,0), (-1,0), (-2,0) and the vertical direction (0:1:0).
inline std::vector<ProjPoint> farey_shift_centres() {
    return {ProjPoint(0, 0, 1), ProjPoint(-1, 0, 1), ProjPoint(-2, 0, 1), ProjPoint(0, 1, 0)};
}

/// Four pencils covering every edge point of the divisibility construction.
inline PencilConfig build_farey_pencil_config(const GraphConstruction& c) {
    PencilConfig cfg = pencils_from_graph(c, farey_shift_centres());
    cfg.label = c.label + "/4-pencil";
    return cfg;
}

/// Upper bound (1+x)(1+y) floor(sqrt n)^2 on |(A+x)/_G(A+y)| for the
/// symmetric construction with nonnegative integer shifts.
inline std::uint64_t shifted_ratio_bound(std::int64_t x, std::int64_t y, std::uint64_t n) {
    const std::uint64_t s = isqrt(n);
    return static_cast<std::uint64_t>(1 + x) * static_cast<std::uint64_t>(1 + y) * s * s;
}

/// m pencils centred at (-x, -y) for (x, y) in a general-position lattice set,
/// each covering the edge points of the symmetric construction through slopes
/// in (A+y)/_G(A+x).
inline PencilConfig build_m_pencil_config(std::size_t m, std::uint64_t n) {
    const GraphConstruction c = build_symmetric_farey_construction(n);
    std::vector<ProjPoint> centres;
    for (const auto& [x, y] : general_position_lattice(m)) centres.emplace_back(BigInt(-x), BigInt(-y), BigInt(1));
    PencilConfig cfg = pencils_from_graph(c, centres);
    cfg.label = "m-pencil(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ")";
    return cfg;
}

/// Four pencils with centres on the line at infinity: horizontals y = a and
/// verticals x = a for a in [1, n], and the slope +1 and -1 lines through the
/// grid. Exactly n^2 points are 4-rich.
inline PencilConfig build_grid_footnote_config(std::uint64_t n) {
    if (n < 1) throw Error(Errc::DomainTooSmall, "grid config needs n >= 1");
    const auto nn = static_cast<std::int64_t>(n);
    std::vector<ProjLine> horizontal, vertical, up, down;
    for (std::int64_t a = 1; a <= nn; ++a) {
        horizontal.emplace_back(0, 1, -a);
        vertical.emplace_back(1, 0, -a);
    }
    for (std::int64_t c = -(nn - 1); c <= nn - 1; ++c) up.emplace_back(1, -1, c);  // y = x + c
    for (std::int64_t c = 2; c <= 2 * nn; ++c) down.emplace_back(1, 1, -c);      // y = -x + c
    std::vector<Pencil> pencils;
    pencils.emplace_back(ProjPoint(1, 0, 0), std::move(horizontal));
    pencils.emplace_back(ProjPoint(0, 1, 0), std::move(vertical));
    pencils.emplace_back(ProjPoint(1, 1, 0), std::move(up));
    pencils.emplace_back(ProjPoint(1, -1, 0), std::move(down));
    return PencilConfig("grid-footnote(n=" + std::to_string(n) + ")", std::move(pencils));
}

} // namespace pencil
