#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "pencil/constructions.hpp"
#include "pencil/rich_points.hpp"

using namespace pencil;

namespace {
Rational q(long long p, long long r = 1) { return Rational(BigInt(p), BigInt(r)); }

// (i, j) in lowest terms with a = i/j, and l with b = 1/l.
bool divisibility_edge(const Rational& a, const Rational& b) {
    return b.num() == 1 && b.den() % a.den() == 0;
}
} // namespace

TEST(FareyShift, SmallInstanceMatchesEnumeration) {
    auto c = build_farey_shift_construction(16, Rational(0));
    EXPECT_EQ(c.A().size(), 7u);
    EXPECT_EQ(c.B().size(), 16u);
    EXPECT_EQ(c.graph.edge_count(), 39u);
    for (const auto& v : {q(1, 2), q(3, 2), q(1, 3), q(2, 3), q(4, 3), q(1, 4), q(3, 4)}) EXPECT_TRUE(c.A().contains(v)) << v;
    EXPECT_TRUE(std::is_sorted(c.A().elements().begin(), c.A().elements().end()));
    EXPECT_TRUE(std::is_sorted(c.B().elements().begin(), c.B().elements().end()));
}

TEST(FareyShift, AgreesWithOracleAndPredicate) {
    for (std::int64_t n : {4, 5, 9, 16, 17, 50, 64, 100, 256, 1000}) {
        auto c = build_farey_shift_construction(static_cast<std::uint64_t>(n), Rational(0));
        auto o = oracle::farey_shift_d0(n);
        EXPECT_EQ(c.A().size(), o.a.size()) << n;
        EXPECT_EQ(static_cast<std::int64_t>(c.B().size()), o.b_size) << n;
        EXPECT_EQ(static_cast<std::int64_t>(c.graph.edge_count()), o.edges) << n;
        for (const auto& [i, j] : o.a) EXPECT_TRUE(c.A().contains(q(i, j)));
        for (const auto& e : c.graph.edges()) ASSERT_TRUE(divisibility_edge(c.graph.a(e), c.graph.b(e)));
    }
    // frozen from a separate enumeration
    EXPECT_EQ(build_farey_shift_construction(64, Rational(0)).graph.edge_count(), 273u);
    EXPECT_EQ(build_farey_shift_construction(256, Rational(0)).graph.edge_count(), 1856u);
}

TEST(FareyShift, MultipleCountBound) {
    for (std::uint64_t n : {16, 64, 100, 256, 1024}) {
        for (const auto& d : {Rational(0), q(43, 1000), q(1, 4)}) {
            auto c = build_farey_shift_construction(n, d);
            auto bounds = farey_shift_bounds(n, d);
            // every denominator has at least floor(l_max / j_max) multiples
            EXPECT_GE(c.graph.edge_count(), c.A().size() * (bounds.l_max / std::max<std::uint64_t>(bounds.j_max, 1)));
            for (const auto& e : c.graph.edges()) ASSERT_TRUE(divisibility_edge(c.graph.a(e), c.graph.b(e)));
        }
        auto c0 = build_farey_shift_construction(n, Rational(0));
        EXPECT_GE(c0.graph.edge_count(), c0.A().size() * isqrt(n));
    }
}

TEST(FareyShift, LogBoundsShrinkWithD) {
    auto b0 = farey_shift_bounds(4096, Rational(0));
    auto b1 = farey_shift_bounds(4096, q(43, 1000));
    EXPECT_EQ(b0.j_max, 64u);
    EXPECT_EQ(b0.j_min, 32u);
    EXPECT_EQ(b0.l_max, 4096u);
    // 64 / (ln 4096)^0.043 = 58.4278..., 4096 / (ln 4096)^0.043 = 3739.38...
    EXPECT_EQ(b1.j_max, 58u);
    EXPECT_EQ(b1.j_min, 30u);
    EXPECT_EQ(b1.l_max, 3739u);
    auto b2 = farey_shift_bounds(1024, q(43, 1000));
    EXPECT_EQ(b2.j_max, 29u);
    EXPECT_EQ(b2.j_min, 15u);
    EXPECT_EQ(b2.l_max, 942u);
}

TEST(FareyShift, DomainErrors) {
    EXPECT_THROW(build_farey_shift_construction(3, Rational(0)), Error);
    EXPECT_THROW(build_farey_shift_construction(15, q(1, 10)), Error);
    EXPECT_THROW(build_farey_shift_construction(64, q(-1, 10)), Error);
    EXPECT_NO_THROW(build_farey_shift_construction(16, q(1, 10)));
}

TEST(FareyShift, RatioSetsInsideProductTable) {
    for (std::uint64_t n : {16, 64, 256}) {
        auto c = build_farey_shift_construction(n, Rational(0));
        const std::uint64_t root = isqrt(n), c_max = 2 * root;
        for (long long k : {0, 1, 2}) {
            // v = (i + k j) l' with i + k j <= (1 + k) sqrt(n) and l' = l / j <= 2 sqrt(n)
            const std::uint64_t first_max = std::max<std::uint64_t>(c_max, (1 + k) * root);
            auto r = shifted_restricted_ratio_set(c.graph, q(k), q(0));
            for (const auto& v : r) {
                ASSERT_TRUE(v.is_integer());
                bool factor = false;
                auto val = static_cast<std::uint64_t>(v.num());
                for (std::uint64_t f = 1; f <= first_max && !factor; ++f)
                    factor = val % f == 0 && val / f <= c_max;
                EXPECT_TRUE(factor) << n << " " << k << " " << v;
            }
            if (k < 2) EXPECT_LE(r.size(), multiplication_table_size(c_max));
        }
    }
}

TEST(FareyShift, SecondShiftNeedsLargerTable) {
    // frozen from brute-force enumeration: |(A+2)/B| against |C C|, C = [1, 2 floor(sqrt n)]
    auto c = build_farey_shift_construction(64, Rational(0));
    EXPECT_EQ(shifted_restricted_ratio_set(c.graph, q(2), q(0)).size(), 115u);
    EXPECT_EQ(multiplication_table_size(16), 97u);
}

TEST(Symmetric, SmallInstance) {
    auto c = build_symmetric_farey_construction(4);
    EXPECT_EQ(c.A().elements(), (std::vector<Rational>{q(1, 2), q(1), q(2)}));
    EXPECT_EQ(c.A(), c.B());
    EXPECT_EQ(c.graph.edge_count(), 5u);
    EXPECT_EQ(restricted_sum_set(c.graph).size(), 4u);
    EXPECT_EQ(restricted_difference_set(c.graph).size(), 3u);
    EXPECT_EQ(restricted_ratio_set(c.graph), (RationalSet{q(1, 2), q(1), q(2)}));
    EXPECT_EQ(shifted_restricted_ratio_set(c.graph, q(1), q(1)), (RationalSet{q(2, 3), q(1), q(3, 2)}));
}

TEST(Symmetric, AgreesWithOracleAndCauchySchwarzChain) {
    for (std::int64_t n : {1, 2, 4, 9, 16, 30, 64, 256, 1024}) {
        auto c = build_symmetric_farey_construction(static_cast<std::uint64_t>(n));
        auto o = oracle::symmetric(n);
        EXPECT_EQ(static_cast<std::int64_t>(c.A().size()), o.a_size);
        EXPECT_EQ(static_cast<std::int64_t>(c.graph.edge_count()), o.edges);
        // (sum c_j)^2 <= s * sum c_j^2 = s |E|; and n^2/C <= (sum c_j)^2 with the
        // coprime density 6/pi^2 bounded below by 1/2 at these sizes
        BigInt sum = 0, sum_sq = 0;
        for (auto cj : o.coprime) {
            sum += cj;
            sum_sq += BigInt(cj) * cj;
        }
        const auto s = static_cast<std::int64_t>(o.coprime.size());
        EXPECT_EQ(sum_sq, BigInt(o.edges));
        EXPECT_LE(sum * sum, BigInt(s) * sum_sq);
        EXPECT_LE(BigInt(s) * s * s * s, 4 * sum * sum);
    }
    // frozen edge counts from a separate enumeration
    EXPECT_EQ(build_symmetric_farey_construction(16).graph.edge_count(), 33u);
    EXPECT_EQ(build_symmetric_farey_construction(64).graph.edge_count(), 255u);
}

TEST(Symmetric, OpSetsStayLinear) {
    for (std::uint64_t n : {16, 64, 256}) {
        auto g = build_symmetric_farey_construction(n).graph;
        const std::uint64_t s = isqrt(n);
        EXPECT_LE(restricted_sum_set(g).size(), 2 * s * s);
        EXPECT_LE(restricted_ratio_set(g).size(), g.left().size());
        EXPECT_LE(shifted_restricted_ratio_set(g, q(1), q(1)).size(), 4 * s * s);
        EXPECT_LE(restricted_difference_set(g).size(), 2 * s * s);
    }
    auto g = build_symmetric_farey_construction(16).graph;
    EXPECT_EQ(restricted_sum_set(g).size(), 14u);
    EXPECT_EQ(shifted_restricted_ratio_set(g, q(1), q(1)).size(), 17u);
}

TEST(GeneralPosition, Examples) {
    auto one = general_position_lattice(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], LatticePoint(0, 0));
    auto four = general_position_lattice(4);
    EXPECT_EQ(four, (std::vector<LatticePoint>{{0, 0}, {1, 1}, {2, 4}, {3, 4}}));
    EXPECT_FALSE(lattice_collinear({0, 0}, {1, 1}, {2, 4}));
    EXPECT_THROW(general_position_lattice(0), Error);
}

TEST(GeneralPosition, NoThreeCollinearAndSmall) {
    for (std::size_t m = 1; m <= 60; ++m) {
        auto pts = general_position_lattice(m);
        ASSERT_EQ(pts.size(), m);
        EXPECT_TRUE(no_three_collinear(pts)) << m;
        std::set<LatticePoint> distinct(pts.begin(), pts.end());
        EXPECT_EQ(distinct.size(), m);
        for (const auto& [x, y] : pts) {
            EXPECT_GE(x, 0);
            EXPECT_GE(y, 0);
            EXPECT_LE(x, static_cast<std::int64_t>(2 * m));
            EXPECT_LE(y, static_cast<std::int64_t>(2 * m));
        }
    }
    // projective collinear() agrees with the lattice test
    auto centres = general_position_centers(12);
    for (std::size_t i = 0; i < centres.size(); ++i)
        for (std::size_t j = i + 1; j < centres.size(); ++j)
            for (std::size_t k = j + 1; k < centres.size(); ++k) EXPECT_FALSE(collinear(centres[i], centres[j], centres[k]));
}

TEST(PencilsFromGraph, SymmetricSingleCentre) {
    auto c = build_symmetric_farey_construction(4);
    auto cfg = pencils_from_graph(c, {ProjPoint(0, 0, 1)});
    ASSERT_EQ(cfg.pencils.size(), 1u);
    const auto& p = cfg.pencils[0];
    EXPECT_EQ(p.size(), 3u);
    // slopes 1, 1/2, 2 through the origin
    for (const auto& l : {ProjLine(1, -1, 0), ProjLine(1, -2, 0), ProjLine(2, -1, 0)}) EXPECT_TRUE(p.contains(l));
}

TEST(PencilsFromGraph, CentreOnPointSet) {
    auto c = build_symmetric_farey_construction(4);
    try {
        pencils_from_graph(c, {ProjPoint::affine(q(1), q(2))});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::CentreOnPointSet);
    }
    EXPECT_THROW(pencils_from_graph(c, {ProjPoint(0, 0, 1), ProjPoint(0, 0, 5)}), Error);
}

TEST(PencilsFromGraph, CoversEveryEdgePointAndMatchesRatioSets) {
    for (std::uint64_t n : {16, 64}) {
        auto c = build_farey_shift_construction(n, Rational(0));
        auto cfg = build_farey_pencil_config(c);
        ASSERT_EQ(cfg.pencils.size(), 4u);
        const auto pts = edge_points(c.graph);
        for (const auto& p : cfg.pencils)
            for (const auto& e : pts) ASSERT_TRUE(point_on_pencil(e, p));
        for (long long k : {0, 1, 2})
            EXPECT_EQ(cfg.pencils[static_cast<std::size_t>(k)].size(), shifted_restricted_ratio_set(c.graph, q(k), q(0)).size());
        // vertical pencil: one line per participating a
        EXPECT_EQ(cfg.pencils[3].size(), c.A().size());
    }
}

TEST(PencilsFromGraph, VerticalJoinAddsOneLine) {
    // centre (1, 0) shares its abscissa with the edge point (1, 1)
    GroundSet A({q(1), q(2)}), B({q(1), q(2)});
    auto g = BipartiteGraph::complete(A, B);
    auto cfg = pencils_from_graph(g, {ProjPoint(1, 0, 1)}, "vertical");
    // non-vertical joins come from a = 2: slopes 1 and 2; plus x = 1
    EXPECT_EQ(cfg.pencils[0].size(), 3u);
    EXPECT_TRUE(cfg.pencils[0].contains(ProjLine(1, 0, -1)));
}

TEST(FareyPencils, CentresNotAllCollinearButThreeAre) {
    auto c = farey_shift_centres();
    EXPECT_TRUE(collinear(c[0], c[1], c[2]));
    EXPECT_FALSE(collinear(c[0], c[1], c[3]));
    EXPECT_FALSE(collinear(c[0], c[2], c[3]));
    EXPECT_FALSE(collinear(c[1], c[2], c[3]));
}

TEST(MPencil, SmallConfigs) {
    auto one = build_m_pencil_config(1, 9);
    ASSERT_EQ(one.pencils.size(), 1u);
    auto g = build_symmetric_farey_construction(9).graph;
    EXPECT_EQ(one.pencils[0].size(), restricted_ratio_set(g).size());

    auto cfg = build_m_pencil_config(4, 4);
    ASSERT_EQ(cfg.pencils.size(), 4u);
    const auto pts = edge_points(build_symmetric_farey_construction(4).graph);
    for (const auto& p : cfg.pencils)
        for (const auto& e : pts) ASSERT_TRUE(point_on_pencil(e, p));
    EXPECT_GE(rich_points(cfg).count, 5u);
}

TEST(MPencil, PencilSizesWithinShiftBound) {
    for (std::size_t m : {4, 6}) {
        for (std::uint64_t n : {64, 256}) {
            auto cfg = build_m_pencil_config(m, n);
            auto lattice = general_position_lattice(m);
            for (std::size_t k = 0; k < m; ++k) {
                const auto& [x, y] = lattice[k];
                EXPECT_LE(cfg.pencils[k].size(), shifted_ratio_bound(x, y, n));
                EXPECT_LE(cfg.pencils[k].size(), 9 * m * m * n);
            }
        }
    }
}

TEST(GridFootnote, Sizes) {
    for (std::uint64_t n : {1, 2, 5}) {
        auto cfg = build_grid_footnote_config(n);
        EXPECT_EQ(cfg.sizes(), (std::vector<std::size_t>{n, n, 2 * n - 1, 2 * n - 1}));
        for (const auto& p : cfg.pencils) EXPECT_TRUE(p.centre().at_infinity());
    }
    EXPECT_THROW(build_grid_footnote_config(0), Error);
}
