#pragma once

// Sum, difference and ratio sets restricted to the edges of a bipartite
// graph, plus multiplication-table cardinalities.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pencil/error.hpp"
#include "pencil/rational.hpp"

namespace pencil {

/// Sorted, duplicate-free list of values.
using RationalSet = std::vector<Rational>;

/// Ordered list of distinct rationals with a value -> position index.
class GroundSet {
public:
    GroundSet() = default;
    explicit GroundSet(std::vector<Rational> elements) : elements_(std::move(elements)) {
        index_.reserve(elements_.size());
        for (std::uint32_t i = 0; i < elements_.size(); ++i) {
            if (!index_.emplace(elements_[i], i).second)
                throw Error(Errc::DuplicateElement, "ground set element " + elements_[i].str() + " repeated");
        }
    }

    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    const Rational& operator[](std::size_t i) const noexcept { return elements_[i]; }
    const std::vector<Rational>& elements() const noexcept { return elements_; }
    bool contains(const Rational& r) const { return index_.count(r) != 0; }

    std::optional<std::uint32_t> index_of(const Rational& r) const {
        auto it = index_.find(r);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.elements_ == b.elements_; }

private:
    std::vector<Rational> elements_;
    std::unordered_map<Rational, std::uint32_t> index_;
};

/// (left index, right index)
using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Bipartite graph G with E(G) a subset of left x right, stored as sorted
/// index pairs.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(GroundSet left, GroundSet right, std::vector<Edge> edges)
        : left_(std::move(left)), right_(std::move(right)), edges_(std::move(edges)) {
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            const auto& [i, j] = edges_[k];
            if (i >= left_.size() || j >= right_.size())
                throw Error(Errc::EdgeOutOfRange,
                            "edge (" + std::to_string(i) + "," + std::to_string(j) + ") outside ground sets");
            if (k > 0 && edges_[k - 1] == edges_[k])
                throw Error(Errc::DuplicateElement,
                            "edge (" + std::to_string(i) + "," + std::to_string(j) + ") repeated");
        }
    }

    static BipartiteGraph complete(GroundSet left, GroundSet right) {
        std::vector<Edge> e;
        e.reserve(left.size() * right.size());
        for (std::uint32_t i = 0; i < left.size(); ++i)
            for (std::uint32_t j = 0; j < right.size(); ++j) e.emplace_back(i, j);
        return BipartiteGraph(std::move(left), std::move(right), std::move(e));
    }

    const GroundSet& left() const noexcept { return left_; }
    const GroundSet& right() const noexcept { return right_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const Rational& a(const Edge& e) const noexcept { return left_[e.first]; }
    const Rational& b(const Edge& e) const noexcept { return right_[e.second]; }

    /// |N(a)| for every left element.
    std::vector<std::uint32_t> left_degrees() const {
        std::vector<std::uint32_t> deg(left_.size(), 0);
        for (const auto& e : edges_) ++deg[e.first];
        return deg;
    }

    /// N(a) as right indices, one list per left element (edges are sorted,
    /// so each list is ascending).
    std::vector<std::vector<std::uint32_t>> neighbourhoods() const {
        std::vector<std::vector<std::uint32_t>> nb(left_.size());
        for (const auto& e : edges_) nb[e.first].push_back(e.second);
        return nb;
    }

    /// Same edges with the roles of the two sides exchanged.
    BipartiteGraph transposed() const {
        std::vector<Edge> e;
        e.reserve(edges_.size());
        for (const auto& [i, j] : edges_) e.emplace_back(j, i);
        return BipartiteGraph(right_, left_, std::move(e));
    }

private:
    GroundSet left_;
    GroundSet right_;
    std::vector<Edge> edges_;
};

namespace detail {

template <class F>
RationalSet collect_over_edges(const BipartiteGraph& g, F&& value_of_edge) {
    std::unordered_set<Rational> seen;
    seen.reserve(g.edge_count());
    for (const auto& e : g.edges()) seen.insert(value_of_edge(e));
    RationalSet out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// A +_G B
inline RationalSet restricted_sum_set(const BipartiteGraph& g) {
    return detail::collect_over_edges(g, [&](const Edge& e) { return g.a(e) + g.b(e); });
}

/// A -_G B
inline RationalSet restricted_difference_set(const BipartiteGraph& g) {
    return detail::collect_over_edges(g, [&](const Edge& e) { return g.a(e) - g.b(e); });
}

/// (A+x) /_G (B+y). Throws ZeroDenominator naming b when some edge has b + y = 0.
inline RationalSet shifted_restricted_ratio_set(const BipartiteGraph& g, const Rational& x, const Rational& y) {
    std::vector<std::optional<Rational>> shifted_b(g.right().size());
    std::vector<std::optional<Rational>> shifted_a(g.left().size());
    for (const auto& [i, j] : g.edges()) {
        if (!shifted_b[j]) {
            Rational d = g.right()[j] + y;
            if (d.is_zero())
                throw Error(Errc::ZeroDenominator, "b = " + g.right()[j].str() + " gives b + y = 0");
            shifted_b[j] = std::move(d);
        }
        if (!shifted_a[i]) shifted_a[i] = g.left()[i] + x;
    }
    return detail::collect_over_edges(g, [&](const Edge& e) { return *shifted_a[e.first] / *shifted_b[e.second]; });
}

/// A /_G B
inline RationalSet restricted_ratio_set(const BipartiteGraph& g) {
    return shifted_restricted_ratio_set(g, Rational(0), Rational(0));
}

/// Sum over left elements of |N(a)|^2.
inline BigInt neighbourhood_square_sum(const BipartiteGraph& g) {
    BigInt total = 0;
    for (auto d : g.left_degrees()) total += BigInt(static_cast<std::uint64_t>(d) * d);
    return total;
}

inline constexpr std::uint64_t kMultiplicationTableLimit = 3'000'000'000ULL;

/// |{ a*b : 1 <= a, b <= n }|, counted exactly with a segmented bitmap over
/// [1, n^2].
inline std::uint64_t multiplication_table_size(std::uint64_t n) {
    if (n < 1) throw Error(Errc::DomainTooSmall, "multiplication table needs n >= 1");
    if (n > kMultiplicationTableLimit)
        throw Error(Errc::Overflow, "n = " + std::to_string(n) + " exceeds the 64-bit product guard");
    const std::uint64_t top = n * n;
    constexpr std::uint64_t kSegment = std::uint64_t{1} << 24;
    std::vector<std::uint8_t> hit;
    std::uint64_t count = 0;
    for (std::uint64_t lo = 1; lo <= top; lo += kSegment) {
        const std::uint64_t hi = std::min(top, lo + kSegment - 1);
        hit.assign(hi - lo + 1, 0);
        for (std::uint64_t a = 1; a <= n && a * a <= hi; ++a) {
            std::uint64_t b = std::max(a, (lo + a - 1) / a);
            const std::uint64_t b_end = std::min(n, hi / a);
            for (; b <= b_end; ++b) hit[a * b - lo] = 1;
        }
        for (auto h : hit) count += h;
    }
    return count;
}

/// Exponent in Ford's asymptotic for the multiplication table,
/// 1 - (1 + ln ln 2) / ln 2 = 0.086071...
inline double ford_delta() { return 1.0 - (1.0 + std::log(std::log(2.0))) / std::log(2.0); }

/// n / ((ln n)^delta (ln ln n)^{3/2}). Reporting only: the asymptotic hides
/// unknown constants at finite n.
inline double ford_estimate(std::uint64_t n) {
    if (n < 16) throw Error(Errc::DomainTooSmall, "ford_estimate needs n >= 16");
    const double ln = std::log(static_cast<double>(n));
    return static_cast<double>(n) / (std::pow(ln, ford_delta()) * std::pow(std::log(ln), 1.5));
}

} // namespace pencil
