#include <doctest.h>

#include "cdet/mac_params.hpp"

using namespace cdet;

namespace {
Frame data_frame(std::int64_t payload, std::int64_t pad) {
    Frame f;
    f.kind = FrameKind::Data;
    f.payload_bits = payload;
    f.pad_bits = pad;
    return f;
}
}  // namespace

TEST_CASE("header-only frame at 1 Mbit/s") {
    MacParams mac;
    CHECK(mac.frame_duration_us(data_frame(0, 0), 1000) == 464);  // 192 + 272
}

TEST_CASE("padding by rate*10 bits adds exactly 10us") {
    MacParams mac;
    for (RateKbps rate : {RateKbps{1000}, RateKbps{2000}, RateKbps{5500}, RateKbps{11000}}) {
        const std::int64_t pad = rate * 10 / 1000;  // 10us worth of bits
        for (std::int64_t payload : {0, 100, 999, 8000}) {
            const auto base = mac.frame_duration_us(data_frame(payload, 0), rate);
            const auto padded = mac.frame_duration_us(data_frame(payload, pad), rate);
            CHECK(padded - base == 10);
        }
    }
}

TEST_CASE("doubling the rate halves the non-preamble part, rounding up") {
    MacParams mac;
    for (std::int64_t payload : {0, 1, 100, 1001, 7993}) {
        const auto slow = mac.frame_duration_us(data_frame(payload, 0), 1000);
        const auto fast = mac.frame_duration_us(data_frame(payload, 0), 2000);
        const auto bits = mac.mac_header_bits + payload;
        CHECK(slow - mac.phy_preamble_us == bits);
        CHECK(fast - mac.phy_preamble_us == ceil_div(bits, 2));
    }
}

TEST_CASE("notice bits lengthen CN and FN frames") {
    MacParams mac;
    Frame plain = data_frame(1000, 0);
    Frame with_cn = plain;
    with_cn.kind = FrameKind::DataWithCn;
    Frame with_fn = plain;
    with_fn.kind = FrameKind::DataWithFn;
    CHECK(mac.frame_bits(with_cn) == mac.frame_bits(plain) + mac.notice_bits);
    CHECK(mac.frame_bits(with_fn) == mac.frame_bits(plain) + mac.notice_bits);
}

TEST_CASE("control frame airtimes") {
    MacParams mac;
    CHECK(mac.t_ack() == 192 + 112);
    CHECK(mac.t_ack_cn() == 192 + 112 + 64);
    CHECK(mac.t_et() == 192 + 448);
    CHECK(mac.effective_ack_timeout() == 10 + 304 + 40);
}

TEST_CASE("fractional rate uses exact integer ceiling") {
    MacParams mac;
    // 5.5 Mbit/s: 1000 bits take ceil(1000/5.5) = 182us.
    CHECK(mac.airtime_us(1000, 5500) == 192 + 182);
    CHECK(mac.airtime_us(11, 11000) == 192 + 1);
}

TEST_CASE("validation catches inconsistent parameter sets") {
    MacParams mac;
    CHECK_NOTHROW(mac.validate());
    MacParams bad = mac;
    bad.difs_us = 40;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = mac;
    bad.cw_min = 2000;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = mac;
    bad.rates_kbps = {2000, 1000};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = mac;
    bad.ack_timeout_us = 5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
