#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pencil {

/// Precondition and domain failures raised by the library.
enum class Errc {
    IdenticalPoints,
    IdenticalLines,
    ZeroVector,
    SingularMatrix,
    ZeroDenominator,
    DomainTooSmall,
    Overflow,
    CentreOnPointSet,
    DuplicateCentre,
    PointIsCentre,
    TooFewPencils,
    InfiniteRichSet,
    CoincidentCentres,
    ShiftHitsB,
    DuplicateElement,
    EdgeOutOfRange,
    TooFewPoints,
    NonpositiveValue,
    ParseError,
    LineMissesCentre,
    InvalidArgument,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::IdenticalPoints: return "IdenticalPoints";
    case Errc::IdenticalLines: return "IdenticalLines";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::DomainTooSmall: return "DomainTooSmall";
    case Errc::Overflow: return "Overflow";
    case Errc::CentreOnPointSet: return "CentreOnPointSet";
    case Errc::DuplicateCentre: return "DuplicateCentre";
    case Errc::PointIsCentre: return "PointIsCentre";
    case Errc::TooFewPencils: return "TooFewPencils";
    case Errc::InfiniteRichSet: return "InfiniteRichSet";
    case Errc::CoincidentCentres: return "CoincidentCentres";
    case Errc::ShiftHitsB: return "ShiftHitsB";
    case Errc::DuplicateElement: return "DuplicateElement";
    case Errc::EdgeOutOfRange: return "EdgeOutOfRange";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::NonpositiveValue: return "NonpositiveValue";
    case Errc::ParseError: return "ParseError";
    case Errc::LineMissesCentre: return "LineMissesCentre";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace pencil
