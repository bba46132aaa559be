#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "cdet/overlap.hpp"
#include "cdet/sim_time.hpp"

namespace cdet {

// Protocol knobs shared by the stations and the AP.
struct CdetParams {
    bool enabled = true;
    int rw = 16;                              // RBP window; 1 disables padding
    OverlapRule overlap_rule = OverlapRule::Inclusive;
    Duration rq_horizon_us = 1'000'000;       // received-TT retention at the AP
};

enum class FailureCause { ChannelError, Collision };

inline const char* to_string(FailureCause c) {
    return c == FailureCause::Collision ? "collision" : "channel_error";
}

enum class DetectPath { FirstPhase, SecondPhase, FnPath };

inline const char* to_string(DetectPath p) {
    switch (p) {
        case DetectPath::FirstPhase: return "first_phase";
        case DetectPath::SecondPhase: return "second_phase";
        case DetectPath::FnPath: return "fn_path";
    }
    return "?";
}

struct FirstPhaseResult {
    bool overlapped = false;  // some TQ entry intersects the ET
    bool detected = false;    // and the energy outlasts that attempt
    std::size_t tq_index = 0;
};

// First detection phase: check a recovered ET against the station's
// transmission log. Detected when the energy strictly outlasts the unique
// overlapping attempt; an energy that matches the attempt's own duration is
// indistinguishable from a lone errored frame, so it carries no evidence.
// Two overlapping entries cannot happen for a node that transmits one frame
// at a time and defers while the medium is busy; that is a broken simulation,
// not a protocol case.
inline FirstPhaseResult first_phase_check(const Interval& et, std::span<const Interval> tq,
                                          OverlapRule rule) {
    FirstPhaseResult r;
    for (std::size_t i = 0; i < tq.size(); ++i) {
        if (!overlaps(rule, et, tq[i])) continue;
        if (r.overlapped)
            throw std::logic_error("first_phase_check: two attempts overlap one energy");
        r.overlapped = true;
        r.tq_index = i;
        r.detected = et.dur > tq[i].dur;
    }
    return r;
}

// Second phase / FN matching both reduce to "which entries overlap this
// recovered interval".
inline std::vector<std::size_t> overlapping_entries(const Interval& iv,
                                                    std::span<const Interval> entries,
                                                    OverlapRule rule) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (overlaps(rule, iv, entries[i])) out.push_back(i);
    return out;
}

inline bool second_phase_check(const Interval& cn, std::span<const Interval> tq,
                               OverlapRule rule) {
    return !overlapping_entries(cn, tq, rule).empty();
}

// Piggyback choice for the next data frame. A CN outranks an FN: the CN
// resolves another station's open question, the FN only this station's own.
enum class DataFrameKind { Data, DataWithCn, DataWithFn };

inline DataFrameKind select_piggyback(bool cdet_enabled, bool cq_nonempty, bool fq_nonempty) {
    if (cdet_enabled && cq_nonempty) return DataFrameKind::DataWithCn;
    if (cdet_enabled && fq_nonempty) return DataFrameKind::DataWithFn;
    return DataFrameKind::Data;
}

}  // namespace cdet
