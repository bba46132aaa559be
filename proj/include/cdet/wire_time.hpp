#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>

#include "cdet/sim_time.hpp"

namespace cdet {

// Start times never cross the air as absolute clock readings: BSS clocks are
// unsynchronized. Instead a frame carries the distance from the event start
// to a landmark every receiver observes on its own clock (the end of the
// frame carrying the value, or of the relay that follows it). Recovery is a
// single subtraction, and every sender-side offset cancels, so the values on
// the wire are identical no matter how the clocks are skewed.

// ET frame: distance from the start of the RF energy to the end of the ET
// frame itself. est_prime = edt + sifs + t_et.
inline Duration make_wire_est(Duration edt, Duration sifs, Duration t_et_frame) {
    if (edt <= 0 || sifs <= 0 || t_et_frame <= 0)
        throw std::logic_error("make_wire_est: arguments must be positive");
    return edt + sifs + t_et_frame;
}

inline SimTime recover_est(SimTime local_et_rx_end, Duration est_prime) {
    return local_et_rx_end - est_prime;
}

// CN: distance from the collided frame's start to the end of the ACK+CN that
// relays the notice. t2 is the sender-local Data+CN transmit start, st the
// sender-local start of its collided frame. The sender assumes the ACK
// follows one SIFS after its frame; when it does, the relayed value equals
// the received one, and when the ACK is delayed (a captured frame acked only
// after the whole energy cleared) the AP re-anchors it to the true ACK end.
inline Duration make_wire_st(SimTime t2_local, SimTime st_local, Duration t_data_cn,
                             Duration sifs, Duration t_ack_cn) {
    if (t2_local < st_local) throw std::logic_error("make_wire_st: t2 before referenced start");
    return (t2_local - st_local) + t_data_cn + sifs + t_ack_cn;
}

inline SimTime recover_st_at_ack_end(SimTime local_ack_rx_end, Duration st_prime) {
    return local_ack_rx_end - st_prime;
}

// A station overhearing the Data+CN itself can recover early: the anchor is
// one SIFS and one ACK+CN airtime past the data frame's end.
inline SimTime recover_st_at_data_end(SimTime local_data_rx_end, Duration st_prime,
                                      Duration sifs, Duration t_ack_cn) {
    return local_data_rx_end - (st_prime - sifs - t_ack_cn);
}

// FN: the AP consumes it the moment the carrying Data+FN ends (it must decide
// whether to attach a CN to the ACK), so the anchor is the data frame end.
inline Duration make_wire_fn_st(SimTime t2_local, SimTime st_local, Duration t_data_fn) {
    if (t2_local < st_local) throw std::logic_error("make_wire_fn_st: t2 before referenced start");
    return (t2_local - st_local) + t_data_fn;
}

inline SimTime recover_fn_st(SimTime local_data_rx_end, Duration st_prime) {
    return local_data_rx_end - st_prime;
}

// Upper bound on the time from the earliest colliding start to first-phase
// detection: the merged energy extent plus SIFS plus the ET airtime.
inline Duration first_phase_delay_bound(std::span<const Interval> tts, Duration sifs,
                                        Duration t_et_frame) {
    if (tts.empty()) throw std::logic_error("first_phase_delay_bound: no transmissions");
    SimTime min_st = tts[0].start;
    SimTime max_end = tts[0].end();
    for (const auto& tt : tts) {
        min_st = std::min(min_st, tt.start);
        max_end = std::max(max_end, tt.end());
    }
    return (max_end - min_st) + sifs + t_et_frame;
}

}  // namespace cdet
