#pragma once

#include <stdexcept>
#include <string>

namespace singclass {

enum class Errc {
    ArityMismatch,
    NonpositiveWeight,
    UnsolvableLink,
    DegenerateDenominator,
    NonIntegerMu,
    NonIntegerProduct,
    OffHyperplane,
    NotIsolatedCandidate,
    NoCatalogMatch,
    ParseError,
    DuplicateItem,
    RangeError,
    MonotonicityViolation,
    UnlabeledRational,
};

inline const char* errc_name(Errc e) {
    switch (e) {
        case Errc::ArityMismatch: return "ArityMismatch";
        case Errc::NonpositiveWeight: return "NonpositiveWeight";
        case Errc::UnsolvableLink: return "UnsolvableLink";
        case Errc::DegenerateDenominator: return "DegenerateDenominator";
        case Errc::NonIntegerMu: return "NonIntegerMu";
        case Errc::NonIntegerProduct: return "NonIntegerProduct";
        case Errc::OffHyperplane: return "OffHyperplane";
        case Errc::NotIsolatedCandidate: return "NotIsolatedCandidate";
        case Errc::NoCatalogMatch: return "NoCatalogMatch";
        case Errc::ParseError: return "ParseError";
        case Errc::DuplicateItem: return "DuplicateItem";
        case Errc::RangeError: return "RangeError";
        case Errc::MonotonicityViolation: return "MonotonicityViolation";
        case Errc::UnlabeledRational: return "UnlabeledRational";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const { return code_; }
    const char* name() const { return errc_name(code_); }

private:
    Errc code_;
};

} // namespace singclass
