#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "cdet/channel.hpp"
#include "cdet/detection.hpp"
#include "cdet/event_queue.hpp"
#include "cdet/mac_params.hpp"
#include "cdet/observer.hpp"
#include "cdet/wire_time.hpp"

namespace cdet {

// Access point. Uplink-only BSS: the AP never contends, it answers each
// merged RF energy one SIFS after it ends — with an ACK when something was
// decoded, with an ET broadcast when nothing was. It also keeps RQ, the log
// of successfully received transmission intervals, to answer FN queries from
// stations whose frames lost a capture.
class Ap : public EnergyObserver {
public:
    Ap(EventQueue& queue, Channel& channel, const MacParams& mac, const CdetParams& cdet,
       SimTime clock_offset, SimObserver& obs)
        : queue_(queue), channel_(channel), mac_(mac), cdet_(cdet),
          offset_(clock_offset), obs_(obs) {}

    void energy_end(const EnergyInterval& energy, const std::vector<TransmissionRecord>& records,
                    const ReceptionOutcome& outcome) override {
        const SimTime now = queue_.now();
        const std::uint64_t id = ++energy_seq_;
        obs_.energy_end(now, id, energy, records, outcome);

        if (outcome.decoded_any()) {
            const TransmissionRecord rec = records[outcome.winner];
            rq_.push_back({{local(rec.start), rec.duration}, rec.source});
            evict_rq();
            queue_.schedule(now + mac_.sifs_us, kApId, [this, rec] { send_ack(rec); });
        } else if (cdet_.enabled) {
            queue_.schedule(now + mac_.sifs_us, kApId, [this, energy] { send_et(energy); });
        }
        // With the detection protocol off, an undecoded energy gets no reply
        // and the senders time out on their own.
    }

    std::size_t rq_size() const { return rq_.size(); }

private:
    SimTime local(SimTime global) const { return global + offset_; }

    void send_ack(const TransmissionRecord& data) {
        Frame ack;
        ack.src = kApId;
        ack.dst = data.source;
        if (data.frame.kind == FrameKind::DataWithCn && data.frame.cn) {
            // Relay the collision notice BSS-wide, re-anchored to this ACK's
            // actual end. The sender calibrated ST' assuming the ACK starts
            // one SIFS after its own frame; a captured frame's ACK waits for
            // the whole energy to clear, so the values differ exactly then.
            ack.kind = FrameKind::AckWithCn;
            const SimTime st_ap = recover_st_at_data_end(
                local(data.end()), data.frame.cn->st_prime, mac_.sifs_us, mac_.t_ack_cn());
            ack.cn = NoticeWire{local(queue_.now() + mac_.t_ack_cn()) - st_ap,
                                data.frame.cn->dt};
        } else if (data.frame.kind == FrameKind::DataWithFn && data.frame.fn) {
            if (auto cn = match_fn(data)) {
                ack.kind = FrameKind::AckWithCn;
                ack.cn = cn;
            } else {
                ack.kind = FrameKind::Ack;
            }
        } else {
            ack.kind = FrameKind::Ack;
        }
        const Duration airtime = mac_.frame_duration_us(ack, mac_.control_rate_kbps);
        obs_.ack_sent(queue_.now(), ack.dst, ack.kind, ack.cn);
        channel_.begin_transmission(kApId, std::move(ack), airtime, 0);
    }

    void send_et(const EnergyInterval& energy) {
        Frame et;
        et.kind = FrameKind::EtBroadcast;
        et.src = kApId;
        et.dst = kBroadcastId;
        const Duration t_et = mac_.t_et();
        et.et = EtWire{make_wire_est(energy.edt, mac_.sifs_us, t_et), energy.edt};
        obs_.et_sent(queue_.now(), *et.et);
        channel_.begin_transmission(kApId, std::move(et), t_et, 0);
    }

    // FN handling: recover the failed attempt on the AP clock (the FN wire
    // value is anchored to the end of the carrying data frame), look for a
    // successfully received interval that overlaps it, and if one exists
    // answer with a CN naming that interval. Receptions from the asking
    // station itself are skipped: its own frame in RQ means a lost ACK, not
    // a collision.
    std::optional<NoticeWire> match_fn(const TransmissionRecord& data) {
        if (!cdet_.enabled) return std::nullopt;
        evict_rq();
        const SimTime st_local = recover_fn_st(local(data.end()), data.frame.fn->st_prime);
        const Interval failed{st_local, data.frame.fn->dt};
        for (const RqEntry& got : rq_) {
            if (got.source == data.source) continue;
            if (!overlaps(cdet_.overlap_rule, failed, got.tt_local)) continue;
            const SimTime ack_cn_end_local = local(queue_.now() + mac_.t_ack_cn());
            return NoticeWire{ack_cn_end_local - got.tt_local.start, got.tt_local.dur};
        }
        return std::nullopt;
    }

    void evict_rq() {
        const SimTime now_local = local(queue_.now());
        while (!rq_.empty() && rq_.front().tt_local.end() < now_local - cdet_.rq_horizon_us)
            rq_.pop_front();
    }

    struct RqEntry {
        Interval tt_local;
        NodeId source = 0;
    };

    EventQueue& queue_;
    Channel& channel_;
    const MacParams& mac_;
    const CdetParams& cdet_;
    SimTime offset_;
    SimObserver& obs_;
    std::deque<RqEntry> rq_;
    std::uint64_t energy_seq_ = 0;
};

}  // namespace cdet
