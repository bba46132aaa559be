#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cdet/adaptation.hpp"
#include "cdet/channel.hpp"
#include "cdet/detection.hpp"
#include "cdet/event_queue.hpp"
#include "cdet/mac_params.hpp"
#include "cdet/observer.hpp"
#include "cdet/rbp.hpp"
#include "cdet/wire_time.hpp"

namespace cdet {

struct TrafficConfig {
    enum class Type { Saturated, Poisson };
    Type type = Type::Saturated;
    double lambda_fps = 0.0;  // Poisson arrival rate, frames per second
};

struct PayloadConfig {
    enum class Type { Fixed, Uniform };
    Type type = Type::Fixed;
    std::int64_t bits = 8000;
    std::int64_t min_bits = 0;
    std::int64_t max_bits = 0;
};

struct StationConfig {
    NodeId id = 1;
    SimTime clock_offset_us = 0;
    RateKbps initial_rate_kbps = 0;  // 0 = top of the rate set
    PolicyConfig policy;
    TrafficConfig traffic;
    PayloadConfig payload;
};

// Shared id counters so attempts and payloads are identifiable run-wide.
struct IdSource {
    std::uint64_t next_attempt = 0;
    std::uint64_t next_msdu = 0;
};

// One 802.11 DCF station with the collision-detection extensions: it logs
// every transmission attempt in TQ, interprets ET broadcasts against that
// log, queues and piggybacks CN/FN notices, and feeds failure causes to its
// adaptation policy.
//
// Outcome resolution after a transmission:
//   - an ACK addressed to this station concludes the attempt as success;
//   - a decoded ET overlapping the attempt concludes it as failure, a
//     collision when the energy outlasted the attempt;
//   - otherwise the attempt times out once the ACK timeout has passed, the
//     medium is idle, and no reply can still be pending (one SIFS past the
//     last sensed busy period). Only this silent path enqueues an FN,
//     matching "received neither ACK nor ET".
// A timeout is classified ChannelError by default and may be revised to
// Collision by late evidence (second phase or the FN reply).
class Station : public MediumListener {
public:
    Station(EventQueue& queue, Channel& channel, SeededRng& rng, const MacParams& mac,
            const CdetParams& cdet, StationConfig cfg, IdSource& ids, SimObserver& obs)
        : queue_(queue), channel_(channel), rng_(rng), mac_(mac), cdet_(cdet),
          cfg_(cfg), ids_(ids), obs_(obs),
          policy_(cfg.policy, mac,
                  cfg.initial_rate_kbps > 0 ? cfg.initial_rate_kbps : mac.rates_kbps.back()) {}

    NodeId id() const { return cfg_.id; }
    int cw() const { return policy_.cw(); }
    RateKbps rate() const { return policy_.rate(); }

    void start() {
        if (cfg_.traffic.type == TrafficConfig::Type::Saturated) {
            advance();
        } else {
            schedule_next_arrival();
        }
    }

    // MediumListener
    void medium_busy(SimTime now) override {
        medium_busy_ = true;
        busy_since_ = now;
        if (phase_ == Phase::Contend && contention_event_ != kNoEvent &&
            queue_.fire_time(contention_event_) > now) {
            queue_.cancel(contention_event_);
            contention_event_ = kNoEvent;
        }
    }

    void medium_idle(SimTime now) override {
        medium_busy_ = false;
        idle_since_ = now;
        if (phase_ == Phase::Contend && contention_event_ == kNoEvent) contention_resume(now);
        if (phase_ == Phase::Await) rearm_outcome_check(now);
    }

    void frame_received(const TransmissionRecord& rec) override {
        const Frame& f = rec.frame;
        switch (f.kind) {
            case FrameKind::Ack:
            case FrameKind::AckWithCn: {
                obs_.control_rx(queue_.now(), cfg_.id, f.kind, rec.source);
                DetectPath path = DetectPath::SecondPhase;
                if (f.dst == cfg_.id && phase_ == Phase::Await) {
                    if (f.kind == FrameKind::AckWithCn && current_kind_ == FrameKind::DataWithFn)
                        path = DetectPath::FnPath;
                    conclude_success();
                }
                if (f.cn)
                    process_cn(recover_st_at_ack_end(local(rec.end()), f.cn->st_prime),
                               f.cn->dt, path);
                break;
            }
            case FrameKind::EtBroadcast:
                obs_.control_rx(queue_.now(), cfg_.id, f.kind, rec.source);
                if (cdet_.enabled && f.et) process_et(rec);
                break;
            case FrameKind::DataWithCn:
                if (cdet_.enabled && f.cn)
                    process_cn(recover_st_at_data_end(local(rec.end()), f.cn->st_prime,
                                                      mac_.sifs_us, mac_.t_ack_cn()),
                               f.cn->dt, DetectPath::SecondPhase);
                break;
            default:
                break;  // plain data / Data+FN overheard: nothing for a bystander
        }
    }

    // Introspection for tests.
    std::size_t tq_size() const { return tq_.size(); }
    std::size_t cq_size() const { return cq_.size(); }
    std::size_t fq_size() const { return fq_.size(); }

private:
    enum class Phase { Idle, Contend, Tx, Await };

    struct Attempt {
        std::uint64_t id = 0;
        Interval local;  // station clock
        FrameKind kind = FrameKind::Data;
        bool concluded = false;
        bool acked = false;
        FailureCause cause = FailureCause::ChannelError;
    };

    struct Msdu {
        std::uint64_t id = 0;
        std::int64_t payload_bits = 0;
        SimTime acquired_at = 0;
    };

    struct FnEntry {
        Interval tt_local;
        std::uint64_t attempt_id = 0;
    };

    SimTime local(SimTime global) const { return global + cfg_.clock_offset_us; }
    SimTime global_of(SimTime local_t) const { return local_t - cfg_.clock_offset_us; }
    Interval global_iv(const Interval& local_iv) const {
        return {global_of(local_iv.start), local_iv.dur};
    }

    // --- traffic ---------------------------------------------------------

    void schedule_next_arrival() {
        const double per_us = cfg_.traffic.lambda_fps / 1e6;
        const auto gap = std::max<Duration>(
            1, static_cast<Duration>(std::llround(exponential(rng_, per_us))));
        queue_.schedule_in(gap, cfg_.id, [this] {
            arrivals_.push_back(make_msdu());
            schedule_next_arrival();
            if (phase_ == Phase::Idle) advance();
        });
    }

    Msdu make_msdu() {
        Msdu m;
        m.id = ++ids_.next_msdu;
        m.acquired_at = queue_.now();
        m.payload_bits = cfg_.payload.type == PayloadConfig::Type::Fixed
                             ? cfg_.payload.bits
                             : uniform_int(rng_, cfg_.payload.min_bits, cfg_.payload.max_bits);
        return m;
    }

    void advance() {
        if (cfg_.traffic.type == TrafficConfig::Type::Saturated) {
            current_ = make_msdu();
        } else if (!arrivals_.empty()) {
            current_ = arrivals_.front();  // acquired_at stays the arrival time
            arrivals_.pop_front();
        } else {
            current_.reset();
            phase_ = Phase::Idle;
            return;
        }
        start_contention();
    }

    // --- contention ------------------------------------------------------

    void start_contention() {
        phase_ = Phase::Contend;
        backoff_remaining_ = static_cast<int>(uniform_int(rng_, 0, policy_.cw()));
        obs_.backoff_drawn(queue_.now(), cfg_.id, policy_.cw(), backoff_remaining_);
        contention_resume(queue_.now());
    }

    SimTime idle_ref() const { return std::max(idle_since_, tx_end_); }

    void contention_resume(SimTime now) {
        if (medium_busy_) return;  // resumes on the idle edge
        const SimTime difs_end = std::max(now, idle_ref() + mac_.difs_us);
        contention_event_ = queue_.schedule(difs_end, cfg_.id, [this] { difs_done(); });
    }

    // A busy edge in the very tick an event fires cannot have been sensed in
    // time, so such events still run; anything later was cancelled.
    bool stale(SimTime now) const { return medium_busy_ && busy_since_ < now; }

    void difs_done() {
        contention_event_ = kNoEvent;
        const SimTime now = queue_.now();
        if (stale(now)) throw std::logic_error("station: stale DIFS event");
        if (backoff_remaining_ == 0) {
            transmit_now();
        } else if (!medium_busy_) {
            contention_event_ = queue_.schedule(now + mac_.slot_us, cfg_.id, [this] { slot_tick(); });
        }
    }

    void slot_tick() {
        contention_event_ = kNoEvent;
        const SimTime now = queue_.now();
        if (stale(now)) throw std::logic_error("station: stale slot event");
        --backoff_remaining_;
        if (backoff_remaining_ == 0) {
            transmit_now();
        } else if (!medium_busy_) {
            contention_event_ = queue_.schedule(now + mac_.slot_us, cfg_.id, [this] { slot_tick(); });
        }
    }

    // --- transmission ----------------------------------------------------

    void transmit_now() {
        const SimTime now = queue_.now();
        Frame f;
        f.src = cfg_.id;
        f.dst = kApId;
        f.msdu_id = current_->id;
        f.payload_bits = current_->payload_bits;
        switch (select_piggyback(cdet_.enabled, !cq_.empty(), !fq_.empty())) {
            case DataFrameKind::DataWithCn: f.kind = FrameKind::DataWithCn; break;
            case DataFrameKind::DataWithFn: f.kind = FrameKind::DataWithFn; break;
            case DataFrameKind::Data: f.kind = FrameKind::Data; break;
        }

        const RateKbps rate = policy_.rate();
        const std::int64_t unit = pad_unit_bits(mac_.t_g_us, rate);
        f.pad_bits = rbp_pad_units(rng_, cdet_.enabled ? cdet_.rw : 1,
                                   f.kind == FrameKind::DataWithCn) * unit;
        const Duration airtime = mac_.frame_duration_us(f, rate);

        if (f.kind == FrameKind::DataWithCn) {
            f.cn = NoticeWire{make_wire_st(local(now), cq_.front().start, airtime, mac_.sifs_us,
                                           mac_.t_ack_cn()),
                              cq_.front().dur};
            cq_front_in_flight_ = true;
            obs_.cn_sent(now, cfg_.id, *f.cn);
        } else if (f.kind == FrameKind::DataWithFn) {
            f.fn = NoticeWire{make_wire_fn_st(local(now), fq_.front().tt_local.start, airtime),
                              fq_.front().tt_local.dur};
            fn_front_in_flight_ = true;
            obs_.fn_sent(now, cfg_.id, *f.fn);
        }

        const std::uint64_t attempt_id = ++ids_.next_attempt;
        tq_.push_back(Attempt{attempt_id, {local(now), airtime}, f.kind, false, false,
                              FailureCause::ChannelError});
        prune_tq(now);
        current_attempt_ = attempt_id;
        current_kind_ = f.kind;

        obs_.tx_start(now, cfg_.id, attempt_id, f, airtime, retries_, rate);
        channel_.begin_transmission(cfg_.id, f, airtime, attempt_id);
        tx_end_ = now + airtime;
        phase_ = Phase::Tx;
        queue_.schedule(tx_end_, cfg_.id, [this] { tx_done(); });
    }

    void tx_done() {
        phase_ = Phase::Await;
        deadline_ = tx_end_ + mac_.effective_ack_timeout();
        arm_outcome_check(deadline_);
    }

    // --- outcome resolution ----------------------------------------------

    Attempt* find_attempt(std::uint64_t id) {
        for (auto& a : tq_)
            if (a.id == id) return &a;
        return nullptr;
    }

    Attempt& pending_attempt() { return *find_attempt(current_attempt_); }

    void arm_outcome_check(SimTime at) {
        if (outcome_event_ != kNoEvent) queue_.cancel(outcome_event_);
        outcome_event_ = queue_.schedule(at, cfg_.id, [this] { outcome_check(); });
    }

    void rearm_outcome_check(SimTime now) {
        arm_outcome_check(std::max(deadline_, now + mac_.sifs_us + 1));
    }

    void outcome_check() {
        outcome_event_ = kNoEvent;
        if (phase_ != Phase::Await) return;
        const SimTime now = queue_.now();
        if (medium_busy_) return;  // the idle edge re-arms
        const SimTime quiet_from = std::max(deadline_, idle_ref() + mac_.sifs_us + 1);
        if (now < quiet_from) {
            arm_outcome_check(quiet_from);
            return;
        }
        // Nothing decoded, nothing pending on the air: silent timeout.
        conclude_failure(pending_attempt(), /*silent=*/true);
    }

    void conclude_success() {
        Attempt& a = pending_attempt();
        a.concluded = true;
        a.acked = true;
        if (outcome_event_ != kNoEvent) { queue_.cancel(outcome_event_); outcome_event_ = kNoEvent; }
        const SimTime now = queue_.now();
        obs_.outcome(now, cfg_.id, a.id, true, a.cause);
        if (a.kind == FrameKind::DataWithCn) {
            cq_.pop_front();
            cq_front_in_flight_ = false;
        } else if (a.kind == FrameKind::DataWithFn) {
            fq_.pop_front();
            fn_front_in_flight_ = false;
        }
        obs_.delivered(now, cfg_.id, current_->id, current_->payload_bits,
                       now - current_->acquired_at);
        const bool cw_moved = policy_.on_success();
        if (cw_moved) obs_.cw_changed(now, cfg_.id, policy_.cw());
        if (policy_.rate_changed()) obs_.rate_changed(now, cfg_.id, policy_.rate());
        retries_ = 0;
        phase_ = Phase::Idle;
        advance();
    }

    // silent = timed out with neither ACK nor ET; only then is an FN queued.
    void conclude_failure(Attempt& a, bool silent) {
        a.concluded = true;
        a.acked = false;
        // The carrying frame is off the air: its piggybacked notice is fair
        // game for purging again.
        cq_front_in_flight_ = false;
        fn_front_in_flight_ = false;
        if (outcome_event_ != kNoEvent) { queue_.cancel(outcome_event_); outcome_event_ = kNoEvent; }
        const SimTime now = queue_.now();
        obs_.outcome(now, cfg_.id, a.id, false, a.cause);
        if (silent && cdet_.enabled) {
            fq_.push_back(FnEntry{a.local, a.id});
            obs_.fn_enqueued(now, cfg_.id, a.id);
        }
        const bool cw_moved = policy_.on_failure(a.cause);
        if (cw_moved) obs_.cw_changed(now, cfg_.id, policy_.cw());
        if (policy_.rate_changed()) obs_.rate_changed(now, cfg_.id, policy_.rate());
        ++retries_;
        phase_ = Phase::Idle;
        if (retries_ >= mac_.retry_limit && mac_.retry_limit > 0) {
            obs_.frame_dropped(now, cfg_.id, current_->id, retries_);
            if (policy_.on_drop()) obs_.cw_changed(now, cfg_.id, policy_.cw());
            retries_ = 0;
            advance();
        } else {
            start_contention();  // retry the same payload
        }
    }

    // --- detection -------------------------------------------------------

    std::vector<Interval> tq_intervals() const {
        std::vector<Interval> ivs;
        ivs.reserve(tq_.size());
        for (const auto& a : tq_) ivs.push_back(a.local);
        return ivs;
    }

    bool is_pending(const Attempt& a) const {
        return phase_ == Phase::Await && !a.concluded && a.id == current_attempt_;
    }

    void process_et(const TransmissionRecord& rec) {
        const Interval energy{recover_est(local(rec.end()), rec.frame.et->est_prime),
                              rec.frame.et->edt};
        const auto ivs = tq_intervals();
        const FirstPhaseResult r = first_phase_check(energy, ivs, cdet_.overlap_rule);
        if (!r.overlapped) return;
        Attempt& a = tq_[r.tq_index];
        cancel_fns_for(a.id);
        if (r.detected) {
            cq_.push_back(a.local);
            obs_.cn_enqueued(queue_.now(), cfg_.id, global_iv(a.local));
            mark_collision(a, DetectPath::FirstPhase);
        } else if (is_pending(a)) {
            // The energy is indistinguishable from this frame alone; no ACK
            // will follow an ET, so the attempt fails with its default cause.
            conclude_failure(a, /*silent=*/false);
        }
    }

    void process_cn(SimTime st_local, Duration dt, DetectPath path) {
        const Interval cn_iv{st_local, dt};
        const auto ivs = tq_intervals();
        for (std::size_t idx : overlapping_entries(cn_iv, ivs, cdet_.overlap_rule))
            mark_collision(tq_[idx], path);
        // The notice is now BSS-wide knowledge: drop queued duplicates.
        for (std::size_t i = cq_.size(); i-- > 0;) {
            if (i == 0 && cq_front_in_flight_) continue;
            if (!overlaps(cdet_.overlap_rule, cq_[i], cn_iv)) continue;
            obs_.cn_purged(queue_.now(), cfg_.id, global_iv(cq_[i]));
            cq_.erase(cq_.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    void mark_collision(Attempt& a, DetectPath path) {
        if (a.acked) return;  // a capture winner's attempt needs no cause
        const SimTime now = queue_.now();
        if (!a.concluded) {
            if (!is_pending(a)) throw std::logic_error("station: unconcluded non-pending attempt");
            a.cause = FailureCause::Collision;
            obs_.detection(now, cfg_.id, a.id, path);
            conclude_failure(a, /*silent=*/false);
        } else if (a.cause == FailureCause::ChannelError) {
            a.cause = FailureCause::Collision;
            obs_.detection(now, cfg_.id, a.id, path);
            obs_.cause_revised(now, cfg_.id, a.id, path);
            policy_.on_cause_revised(FailureCause::ChannelError, FailureCause::Collision);
            cancel_fns_for(a.id);
        }
    }

    void cancel_fns_for(std::uint64_t attempt_id) {
        for (std::size_t i = fq_.size(); i-- > 0;) {
            if (i == 0 && fn_front_in_flight_) continue;
            if (fq_[i].attempt_id != attempt_id) continue;
            obs_.fn_cancelled(queue_.now(), cfg_.id, attempt_id);
            fq_.erase(fq_.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    void prune_tq(SimTime now) {
        const SimTime horizon = local(now) - cdet_.rq_horizon_us;
        while (tq_.size() > 1 && tq_.front().concluded && tq_.front().local.end() < horizon)
            tq_.pop_front();
    }

    // --- members ---------------------------------------------------------

    EventQueue& queue_;
    Channel& channel_;
    SeededRng& rng_;
    const MacParams& mac_;
    const CdetParams& cdet_;
    StationConfig cfg_;
    IdSource& ids_;
    SimObserver& obs_;
    AdaptationState policy_;

    Phase phase_ = Phase::Idle;
    bool medium_busy_ = false;
    SimTime busy_since_ = 0;
    SimTime idle_since_ = 0;
    SimTime tx_end_ = 0;
    SimTime deadline_ = 0;
    EventId contention_event_ = kNoEvent;
    EventId outcome_event_ = kNoEvent;
    int backoff_remaining_ = 0;
    int retries_ = 0;

    std::optional<Msdu> current_;
    std::deque<Msdu> arrivals_;
    std::uint64_t current_attempt_ = 0;
    FrameKind current_kind_ = FrameKind::Data;

    std::deque<Attempt> tq_;
    std::deque<Interval> cq_;
    std::deque<FnEntry> fq_;
    bool cq_front_in_flight_ = false;
    bool fn_front_in_flight_ = false;
};

}  // namespace cdet
