#pragma once

#include <algorithm>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pencil/error.hpp"
#include "pencil/projective.hpp"

namespace pencil {

/// A centre plus distinct lines through it, kept sorted by canonical form.
class Pencil {
public:
    Pencil(ProjPoint centre, std::vector<ProjLine> lines) : centre_(std::move(centre)), lines_(std::move(lines)) {
        std::sort(lines_.begin(), lines_.end());
        for (std::size_t k = 0; k < lines_.size(); ++k) {
            if (k > 0 && lines_[k - 1] == lines_[k])
                throw Error(Errc::DuplicateElement, "pencil line repeated");
            if (!incident(centre_, lines_[k]))
                throw Error(Errc::LineMissesCentre, "pencil line does not pass through its centre");
        }
    }

    const ProjPoint& centre() const noexcept { return centre_; }
    const std::vector<ProjLine>& lines() const noexcept { return lines_; }
    std::size_t size() const noexcept { return lines_.size(); }

    bool contains(const ProjLine& l) const { return std::binary_search(lines_.begin(), lines_.end(), l); }

private:
    ProjPoint centre_;
    std::vector<ProjLine> lines_;
};

struct PencilConfig {
    std::string label;
    std::vector<Pencil> pencils;

    PencilConfig() = default;
    PencilConfig(std::string label_, std::vector<Pencil> pencils_)
        : label(std::move(label_)), pencils(std::move(pencils_)) {
        std::unordered_set<ProjPoint> centres;
        for (const auto& p : pencils)
            if (!centres.insert(p.centre()).second)
                throw Error(Errc::DuplicateCentre, "two pencils share a centre");
    }

    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> s;
        for (const auto& p : pencils) s.push_back(p.size());
        return s;
    }
};

} // namespace pencil
