#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cdet/channel.hpp"
#include "cdet/detection.hpp"
#include "cdet/frame.hpp"
#include "cdet/mac_params.hpp"
#include "cdet/sim_time.hpp"

namespace cdet {

// Event tap for everything observable about a run. All times and intervals
// reported here are on the GLOBAL clock (or are wire values, which are
// clock-free); station-local readings never leave the protocol code, which is
// what makes traces byte-identical across clock-offset changes.
class SimObserver {
public:
    virtual ~SimObserver() = default;

    virtual void tx_start(SimTime, NodeId, std::uint64_t /*attempt*/, const Frame&,
                          Duration /*airtime*/, int /*retries*/, RateKbps) {}
    virtual void backoff_drawn(SimTime, NodeId, int /*cw*/, int /*slots*/) {}
    virtual void energy_end(SimTime, std::uint64_t /*energy_id*/, const EnergyInterval&,
                            const std::vector<TransmissionRecord>&, const ReceptionOutcome&) {}
    virtual void et_sent(SimTime, const EtWire&) {}
    virtual void ack_sent(SimTime, NodeId /*dst*/, FrameKind, const std::optional<NoticeWire>&) {}
    virtual void control_rx(SimTime, NodeId /*receiver*/, FrameKind, NodeId /*src*/) {}
    virtual void detection(SimTime, NodeId, std::uint64_t /*attempt*/, DetectPath) {}
    virtual void outcome(SimTime, NodeId, std::uint64_t /*attempt*/, bool /*acked*/,
                         FailureCause) {}
    virtual void cause_revised(SimTime, NodeId, std::uint64_t /*attempt*/, DetectPath) {}
    virtual void cn_enqueued(SimTime, NodeId, const Interval& /*tt_global*/) {}
    virtual void cn_sent(SimTime, NodeId, const NoticeWire&) {}
    virtual void fn_sent(SimTime, NodeId, const NoticeWire&) {}
    virtual void cn_purged(SimTime, NodeId, const Interval& /*tt_global*/) {}
    virtual void fn_enqueued(SimTime, NodeId, std::uint64_t /*about attempt*/) {}
    virtual void fn_cancelled(SimTime, NodeId, std::uint64_t /*about attempt*/) {}
    virtual void frame_dropped(SimTime, NodeId, std::uint64_t /*msdu*/, int /*retries*/) {}
    virtual void delivered(SimTime, NodeId, std::uint64_t /*msdu*/, std::int64_t /*payload_bits*/,
                           Duration /*access_delay*/) {}
    virtual void cw_changed(SimTime, NodeId, int) {}
    virtual void rate_changed(SimTime, NodeId, RateKbps) {}
};

class MultiObserver : public SimObserver {
public:
    void add(SimObserver* o) {
        if (o) sinks_.push_back(o);
    }

    void tx_start(SimTime t, NodeId n, std::uint64_t a, const Frame& f, Duration d, int r,
                  RateKbps rate) override {
        for (auto* s : sinks_) s->tx_start(t, n, a, f, d, r, rate);
    }
    void backoff_drawn(SimTime t, NodeId n, int cw, int slots) override {
        for (auto* s : sinks_) s->backoff_drawn(t, n, cw, slots);
    }
    void energy_end(SimTime t, std::uint64_t id, const EnergyInterval& e,
                    const std::vector<TransmissionRecord>& recs,
                    const ReceptionOutcome& o) override {
        for (auto* s : sinks_) s->energy_end(t, id, e, recs, o);
    }
    void et_sent(SimTime t, const EtWire& w) override {
        for (auto* s : sinks_) s->et_sent(t, w);
    }
    void ack_sent(SimTime t, NodeId d, FrameKind k, const std::optional<NoticeWire>& w) override {
        for (auto* s : sinks_) s->ack_sent(t, d, k, w);
    }
    void control_rx(SimTime t, NodeId r, FrameKind k, NodeId src) override {
        for (auto* s : sinks_) s->control_rx(t, r, k, src);
    }
    void detection(SimTime t, NodeId n, std::uint64_t a, DetectPath p) override {
        for (auto* s : sinks_) s->detection(t, n, a, p);
    }
    void outcome(SimTime t, NodeId n, std::uint64_t a, bool ok, FailureCause c) override {
        for (auto* s : sinks_) s->outcome(t, n, a, ok, c);
    }
    void cause_revised(SimTime t, NodeId n, std::uint64_t a, DetectPath p) override {
        for (auto* s : sinks_) s->cause_revised(t, n, a, p);
    }
    void cn_enqueued(SimTime t, NodeId n, const Interval& tt) override {
        for (auto* s : sinks_) s->cn_enqueued(t, n, tt);
    }
    void cn_sent(SimTime t, NodeId n, const NoticeWire& w) override {
        for (auto* s : sinks_) s->cn_sent(t, n, w);
    }
    void fn_sent(SimTime t, NodeId n, const NoticeWire& w) override {
        for (auto* s : sinks_) s->fn_sent(t, n, w);
    }
    void cn_purged(SimTime t, NodeId n, const Interval& tt) override {
        for (auto* s : sinks_) s->cn_purged(t, n, tt);
    }
    void fn_enqueued(SimTime t, NodeId n, std::uint64_t a) override {
        for (auto* s : sinks_) s->fn_enqueued(t, n, a);
    }
    void fn_cancelled(SimTime t, NodeId n, std::uint64_t a) override {
        for (auto* s : sinks_) s->fn_cancelled(t, n, a);
    }
    void frame_dropped(SimTime t, NodeId n, std::uint64_t m, int r) override {
        for (auto* s : sinks_) s->frame_dropped(t, n, m, r);
    }
    void delivered(SimTime t, NodeId n, std::uint64_t m, std::int64_t b, Duration d) override {
        for (auto* s : sinks_) s->delivered(t, n, m, b, d);
    }
    void cw_changed(SimTime t, NodeId n, int cw) override {
        for (auto* s : sinks_) s->cw_changed(t, n, cw);
    }
    void rate_changed(SimTime t, NodeId n, RateKbps r) override {
        for (auto* s : sinks_) s->rate_changed(t, n, r);
    }

private:
    std::vector<SimObserver*> sinks_;
};

}  // namespace cdet
