#pragma once

// Point-line incidence instance built from two shifted ratio sets of a
// bipartite graph, with the exact counting chain
//   I(P, L) >= sum_a |N(a)|^2   and   |A| * sum_a |N(a)|^2 >= |E(G)|^2.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pencil/error.hpp"
#include "pencil/graph_sets.hpp"
#include "pencil/projective.hpp"
#include "pencil/rational.hpp"

namespace pencil {

using AffinePoint = std::pair<Rational, Rational>;

struct AffineCentre {
    Rational x;
    Rational y;
    friend bool operator==(const AffineCentre&, const AffineCentre&) = default;
};

/// l_{b1,b2}: (b2 - y2) y = (b1 - y1) x + (x1 - x2), tagged with the right
/// indices of b1 and b2.
struct TaggedLine {
    ProjLine line;
    std::uint32_t b1;
    std::uint32_t b2;
};

struct IncidenceInstance {
    /// Graph actually used; transposed when the centres share their abscissa.
    BipartiteGraph graph;
    AffineCentre c1;
    AffineCentre c2;
    bool swapped = false;
    RationalSet ratios1;  // (A - x1) /_G (B - y1)
    RationalSet ratios2;  // (A - x2) /_G (B - y2)
    std::vector<AffinePoint> points;  // ratios1 x ratios2, row-major
    std::vector<TaggedLine> lines;    // index b1 * |B| + b2

    const TaggedLine& line_for(std::uint32_t b1, std::uint32_t b2) const {
        return lines[static_cast<std::size_t>(b1) * graph.right().size() + b2];
    }
};

namespace detail {

inline Rational eval_line(const ProjLine& l, const Rational& x, const Rational& y) {
    return Rational(l[0]) * x + Rational(l[1]) * y + Rational(l[2]);
}

} // namespace detail

/// Requires c1 != c2; if x1 == x2 the picture is reflected in y = x (graph
/// transposed, centre coordinates swapped). After that, y1 and y2 must avoid B.
inline IncidenceInstance build_lemma_instance(const BipartiteGraph& g, AffineCentre c1, AffineCentre c2) {
    if (c1 == c2) throw Error(Errc::CoincidentCentres, "the two centres coincide");
    IncidenceInstance inst;
    if (c1.x == c2.x) {
        inst.graph = g.transposed();
        inst.c1 = {c1.y, c1.x};
        inst.c2 = {c2.y, c2.x};
        inst.swapped = true;
    } else {
        inst.graph = g;
        inst.c1 = std::move(c1);
        inst.c2 = std::move(c2);
    }
    const auto& B = inst.graph.right();
    for (const auto* y : {&inst.c1.y, &inst.c2.y})
        if (B.contains(*y)) throw Error(Errc::ShiftHitsB, "shift y = " + y->str() + " lies in B");

    inst.ratios1 = shifted_restricted_ratio_set(inst.graph, -inst.c1.x, -inst.c1.y);
    inst.ratios2 = shifted_restricted_ratio_set(inst.graph, -inst.c2.x, -inst.c2.y);
    inst.points.reserve(inst.ratios1.size() * inst.ratios2.size());
    for (const auto& u : inst.ratios1)
        for (const auto& v : inst.ratios2) inst.points.emplace_back(u, v);

    const Rational dx = inst.c1.x - inst.c2.x;
    std::vector<Rational> s1, s2;
    for (const auto& b : B.elements()) {
        s1.push_back(b - inst.c1.y);
        s2.push_back(b - inst.c2.y);
    }
    inst.lines.reserve(B.size() * B.size());
    std::unordered_set<ProjLine> seen;
    for (std::uint32_t i = 0; i < B.size(); ++i) {
        for (std::uint32_t j = 0; j < B.size(); ++j) {
            ProjLine l = ProjLine::affine(s1[i], -s2[j], dx);
            if (!seen.insert(l).second) throw std::logic_error("lemma lines l_{b1,b2} not distinct");
            inst.lines.push_back({std::move(l), i, j});
        }
    }
    return inst;
}

namespace detail {

struct SmallTriple {
    std::int64_t v[3];
};

inline bool fits_small(const BigInt& v) {
    static const BigInt limit = BigInt(1) << 62;
    return v < limit && v > -limit;
}

} // namespace detail

/// Direct test of every point against every line.
inline std::uint64_t count_incidences_brute(std::span<const AffinePoint> points, std::span<const ProjLine> lines) {
    std::vector<Triple> pts;
    pts.reserve(points.size());
    for (const auto& [x, y] : points) pts.push_back({x.num() * y.den(), y.num() * x.den(), x.den() * y.den()});

    bool small = true;
    for (const auto& t : pts)
        for (const auto& c : t) small = small && detail::fits_small(c);
    for (const auto& l : lines)
        for (const auto& c : l.coords()) small = small && detail::fits_small(c);

    std::uint64_t count = 0;
    if (small) {
        std::vector<detail::SmallTriple> sp, sl;
        for (const auto& t : pts) sp.push_back({{static_cast<std::int64_t>(t[0]), static_cast<std::int64_t>(t[1]), static_cast<std::int64_t>(t[2])}});
        for (const auto& l : lines)
            sl.push_back({{static_cast<std::int64_t>(l[0]), static_cast<std::int64_t>(l[1]), static_cast<std::int64_t>(l[2])}});
        for (const auto& p : sp)
            for (const auto& l : sl) {
                __int128 s = static_cast<__int128>(p.v[0]) * l.v[0] + static_cast<__int128>(p.v[1]) * l.v[1] +
                             static_cast<__int128>(p.v[2]) * l.v[2];
                count += s == 0;
            }
        return count;
    }
    for (const auto& p : pts)
        for (const auto& l : lines) count += detail::dot(p, l.coords()) == 0;
    return count;
}

/// Hash join: points grouped by abscissa; each non-vertical line is solved
/// for y at every abscissa and looked up, each vertical line takes its whole
/// column.
inline std::uint64_t count_incidences_hash(std::span<const AffinePoint> points, std::span<const ProjLine> lines) {
    std::unordered_map<Rational, std::unordered_set<Rational>> columns;
    for (const auto& [x, y] : points) columns[x].insert(y);
    std::uint64_t count = 0;
    for (const auto& l : lines) {
        if (l.is_line_at_infinity()) continue;
        const Rational a(l[0]), b(l[1]), c(l[2]);
        if (b.is_zero()) {
            auto it = columns.find(-c / a);
            if (it != columns.end()) count += it->second.size();
            continue;
        }
        for (const auto& [x, ys] : columns) count += ys.count(-(a * x + c) / b);
    }
    return count;
}

inline constexpr std::uint64_t kBruteForceIncidenceLimit = 100'000'000;

inline std::uint64_t count_incidences(std::span<const AffinePoint> points, std::span<const ProjLine> lines) {
    if (static_cast<double>(points.size()) * static_cast<double>(lines.size()) <= kBruteForceIncidenceLimit)
        return count_incidences_brute(points, lines);
    return count_incidences_hash(points, lines);
}

inline std::vector<ProjLine> plain_lines(const IncidenceInstance& inst) {
    std::vector<ProjLine> out;
    out.reserve(inst.lines.size());
    for (const auto& t : inst.lines) out.push_back(t.line);
    return out;
}

inline std::uint64_t count_incidences(const IncidenceInstance& inst) {
    return count_incidences(inst.points, plain_lines(inst));
}

/// I <= 4 ((|P||L|)^{2/3} + |P| + |L|), decided exactly by cubing.
inline bool szemeredi_trotter_consistent(std::uint64_t incidences, std::uint64_t points, std::uint64_t lines) {
    const BigInt excess = BigInt(incidences) - 4 * BigInt(points) - 4 * BigInt(lines);
    if (excess <= 0) return true;
    const BigInt product = BigInt(points) * BigInt(lines);
    return excess * excess * excess <= 64 * product * product;
}

struct LemmaReport {
    bool swapped = false;
    std::uint64_t a_size = 0;
    std::uint64_t b_size = 0;
    std::uint64_t edge_count = 0;
    BigInt neighbourhood_square_sum = 0;
    std::uint64_t incidences = 0;
    std::uint64_t point_count = 0;
    std::uint64_t line_count = 0;
    std::uint64_t ratio_set_1 = 0;
    std::uint64_t ratio_set_2 = 0;
    std::uint64_t witness_count = 0;
    std::uint64_t witness_failures = 0;
    bool incidence_bound = false;   // I(P,L) >= sum |N(a)|^2
    bool cauchy_schwarz = false;    // |A| sum |N(a)|^2 >= |E|^2
    bool witnesses = false;         // every (a, b1, b2) point lies on l_{b1,b2}
    bool szemeredi_trotter = false; // I <= 4((|P||L|)^{2/3} + |P| + |L|)
    /// (|R1| + |R2|) n^{7/4} / |E|^{3/2} with n = max(|A|, |B|); recorded,
    /// never asserted. Empty when the graph has no edges.
    std::optional<double> ratio_constant;

    bool verdicts() const { return incidence_bound && cauchy_schwarz && witnesses; }
};

inline LemmaReport verify_lemma_chain(const IncidenceInstance& inst) {
    const auto& g = inst.graph;
    LemmaReport r;
    r.swapped = inst.swapped;
    r.a_size = g.left().size();
    r.b_size = g.right().size();
    r.edge_count = g.edge_count();
    r.neighbourhood_square_sum = neighbourhood_square_sum(g);
    r.incidences = count_incidences(inst);
    r.point_count = inst.points.size();
    r.line_count = inst.lines.size();
    r.ratio_set_1 = inst.ratios1.size();
    r.ratio_set_2 = inst.ratios2.size();

    const auto nb = g.neighbourhoods();
    for (std::uint32_t ai = 0; ai < nb.size(); ++ai) {
        const Rational& a = g.left()[ai];
        const Rational u_num = a - inst.c1.x;
        const Rational v_num = a - inst.c2.x;
        for (auto b1 : nb[ai]) {
            const Rational u = u_num / (g.right()[b1] - inst.c1.y);
            const bool u_in = std::binary_search(inst.ratios1.begin(), inst.ratios1.end(), u);
            for (auto b2 : nb[ai]) {
                const Rational v = v_num / (g.right()[b2] - inst.c2.y);
                const TaggedLine& tl = inst.line_for(b1, b2);
                const bool ok = u_in && std::binary_search(inst.ratios2.begin(), inst.ratios2.end(), v) &&
                                tl.b1 == b1 && tl.b2 == b2 && detail::eval_line(tl.line, u, v).is_zero();
                ++r.witness_count;
                r.witness_failures += !ok;
            }
        }
    }

    r.incidence_bound = BigInt(r.incidences) >= r.neighbourhood_square_sum;
    r.cauchy_schwarz = BigInt(r.a_size) * r.neighbourhood_square_sum >= BigInt(r.edge_count) * BigInt(r.edge_count);
    r.witnesses = r.witness_failures == 0;
    r.szemeredi_trotter = szemeredi_trotter_consistent(r.incidences, r.point_count, r.line_count);
    if (r.edge_count > 0) {
        const double n = static_cast<double>(std::max(r.a_size, r.b_size));
        r.ratio_constant = static_cast<double>(r.ratio_set_1 + r.ratio_set_2) * std::pow(n, 1.75) /
                           std::pow(static_cast<double>(r.edge_count), 1.5);
    }
    return r;
}

inline LemmaReport verify_lemma_chain(const BipartiteGraph& g, AffineCentre c1, AffineCentre c2) {
    return verify_lemma_chain(build_lemma_instance(g, std::move(c1), std::move(c2)));
}

} // namespace pencil
