#pragma once

// Scaling sweeps over the constructions and log-log exponent fits.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "pencil/constructions.hpp"
#include "pencil/error.hpp"
#include "pencil/graph_sets.hpp"
#include "pencil/rich_points.hpp"

namespace pencil {

enum class ConstructionKind { FareyShift, Symmetric, GridFootnote, MPencil };

inline std::string_view to_string(ConstructionKind k) {
    switch (k) {
    case ConstructionKind::FareyShift: return "farey-shift";
    case ConstructionKind::Symmetric: return "symmetric";
    case ConstructionKind::GridFootnote: return "grid-footnote";
    case ConstructionKind::MPencil: return "m-pencil";
    }
    return "unknown";
}

inline ConstructionKind parse_construction(std::string_view s) {
    for (auto k : {ConstructionKind::FareyShift, ConstructionKind::Symmetric, ConstructionKind::GridFootnote,
                   ConstructionKind::MPencil})
        if (to_string(k) == s) return k;
    throw Error(Errc::InvalidArgument, "unknown construction '" + std::string(s) + "'");
}

struct SweepRow {
    std::uint64_t n = 0;
    Rational d;
    std::string construction;
    std::uint64_t edge_count = 0;
    std::vector<std::uint64_t> ratio_set_sizes;
    std::optional<std::uint64_t> rich_count;
    std::vector<std::uint64_t> pencil_sizes;
    std::uint64_t wall_time_ms = 0;
};

struct SweepSpec {
    ConstructionKind construction = ConstructionKind::Symmetric;
    std::vector<std::uint64_t> n_values;
    Rational d;
    std::size_t m = 4;
    /// Pencil centres for farey-shift and symmetric rows. Farey-shift falls
    /// back to its four standard centres; symmetric rows without centres
    /// skip rich-point counting.
    std::optional<std::vector<ProjPoint>> centres;
    bool rich = true;     // count rich points where a pencil config exists
    bool op_sets = true;  // compute restricted sum/ratio set sizes
    bool timing = false;  // fill wall_time_ms; off keeps output reproducible
    unsigned threads = 1;
};

namespace detail {

inline std::vector<std::uint64_t> to_u64(const std::vector<std::size_t>& v) {
    return {v.begin(), v.end()};
}

inline void count_rich(SweepRow& row, const PencilConfig& cfg) {
    row.pencil_sizes = to_u64(cfg.sizes());
    row.rich_count = rich_points(cfg).count;
}

inline SweepRow sweep_row(const SweepSpec& spec, std::uint64_t n) {
    const auto start = std::chrono::steady_clock::now();
    SweepRow row;
    row.n = n;
    row.construction = std::string(to_string(spec.construction));
    switch (spec.construction) {
    case ConstructionKind::FareyShift: {
        row.d = spec.d;
        const auto c = build_farey_shift_construction(n, spec.d);
        row.edge_count = c.graph.edge_count();
        if (spec.op_sets)
            for (long long k : {0, 1, 2})
                row.ratio_set_sizes.push_back(shifted_restricted_ratio_set(c.graph, Rational(k), Rational(0)).size());
        if (spec.rich) count_rich(row, pencils_from_graph(c, spec.centres.value_or(farey_shift_centres())));
        break;
    }
    case ConstructionKind::Symmetric: {
        const auto c = build_symmetric_farey_construction(n);
        row.edge_count = c.graph.edge_count();
        if (spec.op_sets) {
            row.ratio_set_sizes.push_back(restricted_sum_set(c.graph).size());
            row.ratio_set_sizes.push_back(restricted_ratio_set(c.graph).size());
            row.ratio_set_sizes.push_back(shifted_restricted_ratio_set(c.graph, Rational(1), Rational(1)).size());
            row.ratio_set_sizes.push_back(restricted_difference_set(c.graph).size());
        }
        if (spec.rich && spec.centres) count_rich(row, pencils_from_graph(c, *spec.centres));
        break;
    }
    case ConstructionKind::MPencil: {
        const auto c = build_symmetric_farey_construction(n);
        row.edge_count = c.graph.edge_count();
        if (spec.op_sets)
            for (const auto& [x, y] : general_position_lattice(spec.m))
                row.ratio_set_sizes.push_back(
                    shifted_restricted_ratio_set(c.graph, Rational(static_cast<long long>(x)), Rational(static_cast<long long>(y))).size());
        if (spec.rich) count_rich(row, build_m_pencil_config(spec.m, n));
        break;
    }
    case ConstructionKind::GridFootnote: {
        row.edge_count = n * n;
        if (spec.rich) count_rich(row, build_grid_footnote_config(n));
        break;
    }
    }
    if (spec.timing)
        row.wall_time_ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
    return row;
}

} // namespace detail

/// One row per n, in the order given (which must be ascending). Rows are
/// independent and computed on up to `threads` workers.
inline std::vector<SweepRow> sweep(const SweepSpec& spec) {
    if (!std::is_sorted(spec.n_values.begin(), spec.n_values.end()))
        throw Error(Errc::InvalidArgument, "sweep n values must be ascending");
    std::vector<SweepRow> rows(spec.n_values.size());
    const unsigned threads = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(rows.size())));
    if (threads <= 1) {
        for (std::size_t k = 0; k < rows.size(); ++k) rows[k] = detail::sweep_row(spec, spec.n_values[k]);
        return rows;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t k = t; k < rows.size(); k += threads) rows[k] = detail::sweep_row(spec, spec.n_values[k]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

struct ExponentFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    std::uint64_t n_min = 0;
    std::uint64_t n_max = 0;
};

/// Least squares for ln(value) = slope * ln(n) + intercept.
inline ExponentFit fit_exponent(const std::vector<std::pair<std::uint64_t, double>>& samples) {
    if (samples.size() < 3) throw Error(Errc::TooFewPoints, "exponent fit needs at least 3 rows");
    double sx = 0, sy = 0;
    ExponentFit fit;
    fit.n_min = samples.front().first;
    fit.n_max = samples.front().first;
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, v] : samples) {
        if (n == 0 || !(v > 0)) throw Error(Errc::NonpositiveValue, "exponent fit needs positive n and values");
        pts.emplace_back(std::log(static_cast<double>(n)), std::log(v));
        sx += pts.back().first;
        sy += pts.back().second;
        fit.n_min = std::min(fit.n_min, n);
        fit.n_max = std::max(fit.n_max, n);
    }
    const double k = static_cast<double>(pts.size());
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0) throw Error(Errc::TooFewPoints, "exponent fit needs at least two distinct n");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (const auto& [x, y] : pts) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    fit.r_squared = syy == 0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return fit;
}

/// Fits one numeric column: edge_count, rich_count, wall_time_ms,
/// max_ratio_set or max_pencil_size.
inline ExponentFit fit_exponent(const std::vector<SweepRow>& rows, std::string_view field) {
    std::vector<std::pair<std::uint64_t, double>> samples;
    for (const auto& r : rows) {
        double v = 0;
        if (field == "edge_count") {
            v = static_cast<double>(r.edge_count);
        } else if (field == "rich_count") {
            if (!r.rich_count) throw Error(Errc::NonpositiveValue, "row without rich_count");
            v = static_cast<double>(*r.rich_count);
        } else if (field == "wall_time_ms") {
            v = static_cast<double>(r.wall_time_ms);
        } else if (field == "max_ratio_set") {
            v = r.ratio_set_sizes.empty() ? 0.0 : static_cast<double>(*std::max_element(r.ratio_set_sizes.begin(), r.ratio_set_sizes.end()));
        } else if (field == "max_pencil_size") {
            v = r.pencil_sizes.empty() ? 0.0 : static_cast<double>(*std::max_element(r.pencil_sizes.begin(), r.pencil_sizes.end()));
        } else {
            throw Error(Errc::InvalidArgument, "unknown fit field '" + std::string(field) + "'");
        }
        samples.emplace_back(r.n, v);
    }
    return fit_exponent(samples);
}

/// value / n^exponent for each row of a rich-count sweep.
inline std::vector<double> constant_ratios(const std::vector<SweepRow>& rows, double exponent) {
    std::vector<double> out;
    for (const auto& r : rows)
        out.push_back(static_cast<double>(r.rich_count.value_or(0)) / std::pow(static_cast<double>(r.n), exponent));
    return out;
}

/// No value exceeds the running maximum of its predecessors by more than
/// `slack` (relative).
inline bool bounded_above(const std::vector<double>& v, double slack) {
    for (std::size_t k = 1; k < v.size(); ++k)
        if (v[k] > (1 + slack) * *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k))) return false;
    return true;
}

/// No value drops below the running minimum of its predecessors by more than
/// `slack` (relative).
inline bool bounded_below(const std::vector<double>& v, double slack) {
    for (std::size_t k = 1; k < v.size(); ++k)
        if (v[k] < (1 - slack) * *std::min_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k))) return false;
    return true;
}

} // namespace pencil
