#pragma once

#include <algorithm>

#include "cdet/sim_time.hpp"

namespace cdet {

// Interval overlap as used by every detection check (ET vs TT, CN vs TT,
// FN vs RQ). Two rules are available:
//
//  Inclusive  — positive-measure intersection. For dur > 0 this also covers
//               simultaneous starts, the canonical collision shape, which the
//               strict rule misses.
//  StrictStarts — the strict double inequality
//               (EST < ST < EST+EDT) OR (ST < EST < ST+EDT);
//               false when the starts coincide. Selectable for comparison.
//
// The two rules agree on every interval pair whose starts differ.
enum class OverlapRule { Inclusive, StrictStarts };

inline bool overlaps(const Interval& a, const Interval& b) {
    return std::max(a.start, b.start) < std::min(a.end(), b.end());
}

inline bool overlaps_strict(const Interval& a, const Interval& b) {
    return (a.start < b.start && b.start < a.end()) ||
           (b.start < a.start && a.start < b.end());
}

inline bool overlaps(OverlapRule rule, const Interval& a, const Interval& b) {
    return rule == OverlapRule::Inclusive ? overlaps(a, b) : overlaps_strict(a, b);
}

}  // namespace cdet
