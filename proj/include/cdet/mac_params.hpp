#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdet/frame.hpp"
#include "cdet/sim_time.hpp"

namespace cdet {

// Rates are kept in kbit/s integers so airtime stays exact integer math
// (5.5 Mbit/s = 5500). One bit at rate r occupies 1000/r microseconds.
using RateKbps = std::int64_t;

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// 802.11b DSSS long-preamble defaults; every field is overridable from the
// scenario file.
struct MacParams {
    Duration slot_us = 20;
    Duration sifs_us = 10;
    Duration difs_us = 50;  // must equal sifs + 2*slot
    int cw_min = 31;
    int cw_max = 1023;
    Duration phy_preamble_us = 192;
    std::int64_t mac_header_bits = 272;
    std::int64_t ack_bits = 112;
    std::int64_t et_frame_bits = 448;  // beacon-format body plus the (EST', EDT) pair
    std::int64_t notice_bits = 64;     // piggybacked CN/FN: two 32-bit microsecond words
    std::vector<RateKbps> rates_kbps = {1000, 2000, 5500, 11000};
    RateKbps control_rate_kbps = 1000;
    int retry_limit = 7;
    Duration ack_timeout_us = 0;  // 0 = derive sifs + t(ack) + 2*slot
    Duration t_g_us = 1;          // minimum measurable time granularity

    Duration airtime_us(std::int64_t bits, RateKbps rate) const {
        return phy_preamble_us + (bits > 0 ? ceil_div(bits * 1000, rate) : 0);
    }

    std::int64_t frame_bits(const Frame& f) const {
        switch (f.kind) {
            case FrameKind::Data:
                return mac_header_bits + f.payload_bits + f.pad_bits;
            case FrameKind::DataWithCn:
            case FrameKind::DataWithFn:
                return mac_header_bits + notice_bits + f.payload_bits + f.pad_bits;
            case FrameKind::Ack:
                return ack_bits;
            case FrameKind::AckWithCn:
                return ack_bits + notice_bits;
            case FrameKind::EtBroadcast:
                return et_frame_bits;
        }
        return 0;
    }

    Duration frame_duration_us(const Frame& f, RateKbps rate) const {
        if (rate <= 0) throw std::logic_error("frame_duration_us: rate must be positive");
        return airtime_us(frame_bits(f), rate);
    }

    Duration t_ack() const { return airtime_us(ack_bits, control_rate_kbps); }
    Duration t_ack_cn() const { return airtime_us(ack_bits + notice_bits, control_rate_kbps); }
    Duration t_et() const { return airtime_us(et_frame_bits, control_rate_kbps); }

    Duration effective_ack_timeout() const {
        return ack_timeout_us > 0 ? ack_timeout_us : sifs_us + t_ack() + 2 * slot_us;
    }

    void validate() const {
        auto fail = [](const std::string& m) { throw std::invalid_argument("mac: " + m); };
        if (slot_us <= 0 || sifs_us <= 0 || phy_preamble_us < 0) fail("durations must be positive");
        if (difs_us != sifs_us + 2 * slot_us) fail("difs must equal sifs + 2*slot");
        if (cw_min < 0 || cw_min > cw_max) fail("cw_min must be in [0, cw_max]");
        if (rates_kbps.empty()) fail("rate set is empty");
        for (std::size_t i = 0; i < rates_kbps.size(); ++i) {
            if (rates_kbps[i] <= 0) fail("rates must be positive");
            if (i > 0 && rates_kbps[i] <= rates_kbps[i - 1]) fail("rates must be strictly increasing");
        }
        if (mac_header_bits < 0 || ack_bits <= 0 || et_frame_bits <= 0 || notice_bits <= 0)
            fail("frame sizes must be positive");
        if (control_rate_kbps <= 0) fail("control rate must be positive");
        if (retry_limit < 0) fail("retry limit must be non-negative");
        if (t_g_us < 1) fail("t_g must be at least one tick");
        if (effective_ack_timeout() < sifs_us + t_ack())
            fail("ack timeout shorter than sifs + ack airtime");
    }
};

}  // namespace cdet
