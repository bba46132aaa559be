#pragma once

#include <cstdint>

namespace cdet {

// One tick is one microsecond of simulated time. All protocol arithmetic is
// integer microseconds; station-local clock values may be negative once an
// offset is applied, so times are signed throughout.
using SimTime = std::int64_t;
using Duration = std::int64_t;

using NodeId = int;
inline constexpr NodeId kApId = 0;
inline constexpr NodeId kBroadcastId = -1;

// Half-open interval [start, start+dur) on some clock (global or
// station-local). Used for transmission attempts (TT) and RF energies (ET).
struct Interval {
    SimTime start = 0;
    Duration dur = 0;

    SimTime end() const { return start + dur; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace cdet
