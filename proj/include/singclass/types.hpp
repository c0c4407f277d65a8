#pragma once

#include "singclass/error.hpp"

#include <array>
#include <optional>
#include <string>

namespace singclass {

/// The 26 singularity families: seven surface classes (three variables) and
/// nineteen threefold types (four variables).
enum class TypeId : int {
    S1, S2, S3, S4, S5, S6, S7,
    T1, T2, T3, T4, T5, T6, T7, T8, T9, T10,
    T11, T12, T13, T14, T15, T16, T17, T18, T19,
};

constexpr int kTypeCount = 26;
constexpr int kSurfaceCount = 7;
constexpr int kThreefoldCount = 19;

inline bool is_surface(TypeId t) { return int(t) < kSurfaceCount; }
inline int arity(TypeId t) { return is_surface(t) ? 3 : 4; }

/// Ordinal within the family's own numbering (0-based).
inline int family_index(TypeId t) {
    return is_surface(t) ? int(t) : int(t) - kSurfaceCount;
}

inline const char* roman_numeral(int idx0) {
    static const char* kRoman[19] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X",
                                     "XI", "XII", "XIII", "XIV", "XV", "XVI", "XVII", "XVIII", "XIX"};
    return kRoman[idx0];
}

/// Display name: plain roman numeral for threefold types, "S-" prefix for
/// surface classes.
inline std::string type_name(TypeId t) {
    std::string n = roman_numeral(family_index(t));
    return is_surface(t) ? "S-" + n : n;
}

/// Parse "I".."XIX" (optionally "S-I".."S-VII"); `surface_mode` selects the
/// surface catalog for bare numerals.
inline std::optional<TypeId> parse_type(const std::string& text, bool surface_mode = false) {
    std::string s = text;
    bool surf = surface_mode;
    if (s.rfind("S-", 0) == 0) {
        surf = true;
        s = s.substr(2);
    }
    int limit = surf ? kSurfaceCount : kThreefoldCount;
    for (int i = 0; i < limit; ++i)
        if (s == roman_numeral(i)) return TypeId(surf ? i : i + kSurfaceCount);
    return std::nullopt;
}

inline TypeId type_at(bool surface, int idx0) {
    return TypeId(surface ? idx0 : idx0 + kSurfaceCount);
}

} // namespace singclass
