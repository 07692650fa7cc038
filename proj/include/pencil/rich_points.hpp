#pragma once

// Exact m-rich points of a pencil configuration. Candidates are the pairwise
// meets of the two smallest pencils; each candidate is kept if the line
// joining it to every other centre belongs to that pencil.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pencil/error.hpp"
#include "pencil/pencil.hpp"
#include "pencil/projective.hpp"

namespace pencil {

struct RichPointReport {
    std::string config_label;
    std::vector<ProjPoint> points;  // sorted by canonical form
    std::size_t count = 0;
    std::vector<std::size_t> pencil_sizes;
    std::size_t infinite_count = 0;
    /// Centres that lie on a line of every other pencil. Never in `points`.
    std::vector<ProjPoint> excluded_centres;
};

inline bool point_on_pencil(const ProjPoint& p, const Pencil& pc) {
    if (p == pc.centre()) throw Error(Errc::PointIsCentre, "point coincides with the pencil centre");
    return pc.contains(line_through(pc.centre(), p));
}

/// Hash view of a pencil for repeated membership queries. Read-only after
/// construction, so it may be shared between threads.
class PencilIndex {
public:
    explicit PencilIndex(const Pencil& p) : pencil_(&p), lines_(p.lines().begin(), p.lines().end()) {}

    const Pencil& pencil() const noexcept { return *pencil_; }

    /// True iff some line of the pencil passes through q. The centre counts
    /// as covered whenever the pencil is nonempty.
    bool covers(const ProjPoint& q) const {
        if (q == pencil_->centre()) return !lines_.empty();
        return lines_.count(line_through(pencil_->centre(), q)) != 0;
    }

private:
    const Pencil* pencil_;
    std::unordered_set<ProjLine> lines_;
};

struct RichPointOptions {
    unsigned threads = 1;
};

/// Points incident to at least one line of every pencil, excluding pencil
/// centres (reported separately). Throws TooFewPencils for fewer than two
/// pencils and InfiniteRichSet when one line belongs to every pencil.
inline RichPointReport rich_points(const PencilConfig& config, RichPointOptions opts = {}) {
    const auto& pencils = config.pencils;
    const std::size_t m = pencils.size();
    if (m < 2) throw Error(Errc::TooFewPencils, "rich points need at least two pencils");

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pencils[a].size() < pencils[b].size(); });
    const Pencil& first = pencils[order[0]];
    const Pencil& second = pencils[order[1]];

    std::vector<PencilIndex> index;
    index.reserve(m);
    for (const auto& p : pencils) index.emplace_back(p);

    std::unordered_set<ProjPoint> candidates;
    candidates.reserve(first.size() * second.size());
    std::optional<ProjLine> shared;
    for (const auto& l1 : first.lines()) {
        for (const auto& l2 : second.lines()) {
            if (l1 == l2) {
                shared = l1;
                continue;
            }
            candidates.insert(meet(l1, l2));
        }
    }

    // The line through both centres can belong to both pencils; every point
    // on it is then covered twice, and a rich point there must sit on a line
    // of some pencil that does not contain it.
    if (shared) {
        const Pencil* other = nullptr;
        for (std::size_t k = 2; k < m; ++k) {
            const Pencil& p = pencils[order[k]];
            if (!p.contains(*shared)) {
                other = &p;
                break;
            }
        }
        if (!other) throw Error(Errc::InfiniteRichSet, "line " + to_string(*shared) + " belongs to every pencil");
        for (const auto& l : other->lines()) candidates.insert(meet(*shared, l));
    }

    std::vector<ProjPoint> cand(candidates.begin(), candidates.end());
    std::unordered_map<ProjPoint, std::size_t> centre_of;
    for (std::size_t k = 0; k < m; ++k) centre_of.emplace(pencils[k].centre(), k);

    std::vector<std::size_t> rest(order.begin() + 2, order.end());

    struct Partial {
        std::vector<ProjPoint> rich;
        std::vector<ProjPoint> excluded;
    };
    auto scan = [&](std::size_t lo, std::size_t hi, Partial& out) {
        for (std::size_t c = lo; c < hi; ++c) {
            const ProjPoint& q = cand[c];
            bool rich = true;
            for (auto k : rest) {
                if (!index[k].covers(q)) {
                    rich = false;
                    break;
                }
            }
            if (!rich) continue;
            if (centre_of.count(q))
                out.excluded.push_back(q);
            else
                out.rich.push_back(q);
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(cand.size() / 1024 + 1)));
    std::vector<Partial> parts(threads);
    if (threads == 1) {
        scan(0, cand.size(), parts[0]);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (cand.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t lo = std::min(cand.size(), t * chunk);
            const std::size_t hi = std::min(cand.size(), lo + chunk);
            pool.emplace_back(scan, lo, hi, std::ref(parts[t]));
        }
        for (auto& th : pool) th.join();
    }

    RichPointReport report;
    report.config_label = config.label;
    report.pencil_sizes = config.sizes();
    for (auto& part : parts) {
        report.points.insert(report.points.end(), part.rich.begin(), part.rich.end());
        report.excluded_centres.insert(report.excluded_centres.end(), part.excluded.begin(), part.excluded.end());
    }
    std::sort(report.points.begin(), report.points.end());
    std::sort(report.excluded_centres.begin(), report.excluded_centres.end());
    report.count = report.points.size();
    report.infinite_count = static_cast<std::size_t>(
        std::count_if(report.points.begin(), report.points.end(), [](const ProjPoint& p) { return p.at_infinity(); }));
    return report;
}

} // namespace pencil
