#pragma once

#include <cstdint>
#include <optional>

#include "cdet/sim_time.hpp"

namespace cdet {

enum class FrameKind { Data, Ack, EtBroadcast, DataWithCn, AckWithCn, DataWithFn };

inline const char* to_string(FrameKind k) {
    switch (k) {
        case FrameKind::Data: return "data";
        case FrameKind::Ack: return "ack";
        case FrameKind::EtBroadcast: return "et";
        case FrameKind::DataWithCn: return "data_cn";
        case FrameKind::AckWithCn: return "ack_cn";
        case FrameKind::DataWithFn: return "data_fn";
    }
    return "?";
}

// Wire form of an ET: the energy start crosses the air as the distance from
// the start of the RF energy to the end of the ET frame itself, so receivers
// never need a shared clock.
struct EtWire {
    Duration est_prime = 0;
    Duration edt = 0;
};

// Wire form of a CN or FN: a start-time distance plus the duration of the
// referenced transmission attempt. The anchor point differs per use (see
// wire_time.hpp).
struct NoticeWire {
    Duration st_prime = 0;
    Duration dt = 0;
};

struct Frame {
    FrameKind kind = FrameKind::Data;
    NodeId src = 0;
    NodeId dst = 0;
    std::int64_t payload_bits = 0;
    std::int64_t pad_bits = 0;
    std::uint64_t msdu_id = 0;  // payload identity, stable across retries
    std::optional<EtWire> et;
    std::optional<NoticeWire> cn;
    std::optional<NoticeWire> fn;

    bool is_control() const {
        return kind == FrameKind::Ack || kind == FrameKind::AckWithCn ||
               kind == FrameKind::EtBroadcast;
    }
    bool is_data() const { return !is_control(); }
    bool carries_cn() const {
        return kind == FrameKind::DataWithCn || kind == FrameKind::AckWithCn;
    }
};

}  // namespace cdet
