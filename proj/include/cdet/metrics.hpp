#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <unordered_map>
#include <vector>

#include "cdet/observer.hpp"
#include "cdet/wire_time.hpp"

namespace cdet {

// Ground truth is available because the collector sees the channel outcome of
// every merged energy alongside the stations' own classifications.
struct AttemptRow {
    std::uint64_t id = 0;
    NodeId node = 0;
    SimTime st_global = 0;
    Duration dur = 0;
    FrameKind kind = FrameKind::Data;
    int retries = 0;
    RateKbps rate_kbps = 0;
    std::int64_t energy_id = -1;
    bool multi = false;  // its energy held two or more transmissions
    bool concluded = false;
    bool acked = false;
    FailureCause cause = FailureCause::ChannelError;
    bool det_first = false;
    bool det_second = false;
    bool det_fn = false;
    SimTime first_detect_time = -1;
};

struct EnergyRow {
    std::uint64_t id = 0;
    SimTime est = 0;
    Duration edt = 0;
    int n_records = 0;
    ReceptionOutcome::Kind outcome = ReceptionOutcome::Kind::Success;
    NodeId winner_node = -1;  // decoded source for Success/Captured
    Duration first_phase_bound = 0;
    std::vector<std::uint64_t> participants;
    bool detected = false;  // some participant ended up classified Collision
};

// Aggregate counters for one run. Field names double as the CSV column names.
struct RunMetrics {
    std::uint64_t seed = 0;
    Duration sim_duration_us = 0;
    int stations = 0;
    std::int64_t attempts = 0;
    std::int64_t successes = 0;
    std::int64_t drops = 0;
    std::int64_t true_collision_failures = 0;
    std::int64_t true_channel_error_failures = 0;
    std::int64_t tp_collision = 0;       // classified collision, was collision
    std::int64_t fp_collision = 0;       // classified collision, was channel error
    std::int64_t fn_collision = 0;       // classified channel error, was collision
    std::int64_t tn_channel_error = 0;   // classified channel error, was channel error
    double detection_rate = 0.0;         // tp / (tp + fn)
    std::int64_t collision_events = 0;
    std::int64_t detected_collision_events = 0;
    double event_detection_rate = 0.0;
    std::int64_t first_phase_detections = 0;
    std::int64_t second_phase_detections = 0;
    std::int64_t fn_path_detections = 0;
    std::int64_t cause_revisions = 0;
    std::int64_t et_frames_sent = 0;
    std::int64_t cn_piggybacks_sent = 0;
    std::int64_t fn_piggybacks_sent = 0;
    std::int64_t cn_purges = 0;
    double pad_overhead_fraction = 0.0;
    double mean_detection_latency_us = 0.0;
    double p95_detection_latency_us = 0.0;
    std::int64_t first_phase_bound_violations = 0;
    double throughput_bits_per_s = 0.0;
    double mean_access_delay_us = 0.0;
    double cw_mean = 0.0;
    int cw_max_observed = 0;
    double rate_mean_mbps = 0.0;
    double rate_min_observed_mbps = 0.0;

    static std::string csv_header() {
        return "seed,sim_duration_us,stations,attempts,successes,drops,"
               "true_collision_failures,true_channel_error_failures,"
               "tp_collision,fp_collision,fn_collision,tn_channel_error,detection_rate,"
               "collision_events,detected_collision_events,event_detection_rate,"
               "first_phase_detections,second_phase_detections,fn_path_detections,"
               "cause_revisions,et_frames_sent,cn_piggybacks_sent,fn_piggybacks_sent,"
               "cn_purges,pad_overhead_fraction,mean_detection_latency_us,"
               "p95_detection_latency_us,first_phase_bound_violations,"
               "throughput_bits_per_s,mean_access_delay_us,cw_mean,cw_max_observed,"
               "rate_mean_mbps,rate_min_observed_mbps";
    }

    std::string csv_row() const {
        char buf[1024];
        std::snprintf(
            buf, sizeof buf,
            "%llu,%lld,%d,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%.6f,"
            "%lld,%lld,%.6f,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%.6f,%.3f,%.3f,"
            "%lld,%.3f,%.3f,%.3f,%d,%.6f,%.6f",
            static_cast<unsigned long long>(seed),
            static_cast<long long>(sim_duration_us), stations,
            static_cast<long long>(attempts), static_cast<long long>(successes),
            static_cast<long long>(drops), static_cast<long long>(true_collision_failures),
            static_cast<long long>(true_channel_error_failures),
            static_cast<long long>(tp_collision), static_cast<long long>(fp_collision),
            static_cast<long long>(fn_collision), static_cast<long long>(tn_channel_error),
            detection_rate, static_cast<long long>(collision_events),
            static_cast<long long>(detected_collision_events), event_detection_rate,
            static_cast<long long>(first_phase_detections),
            static_cast<long long>(second_phase_detections),
            static_cast<long long>(fn_path_detections), static_cast<long long>(cause_revisions),
            static_cast<long long>(et_frames_sent), static_cast<long long>(cn_piggybacks_sent),
            static_cast<long long>(fn_piggybacks_sent), static_cast<long long>(cn_purges),
            pad_overhead_fraction, mean_detection_latency_us, p95_detection_latency_us,
            static_cast<long long>(first_phase_bound_violations), throughput_bits_per_s,
            mean_access_delay_us, cw_mean, cw_max_observed, rate_mean_mbps,
            rate_min_observed_mbps);
        return buf;
    }
};

class MetricsCollector : public SimObserver {
public:
    explicit MetricsCollector(const MacParams& mac) : mac_(mac) {}

    // SimObserver
    void tx_start(SimTime t, NodeId n, std::uint64_t id, const Frame& f, Duration dur,
                  int retries, RateKbps rate) override {
        index_[id] = attempts_.size();
        AttemptRow row;
        row.id = id;
        row.node = n;
        row.st_global = t;
        row.dur = dur;
        row.kind = f.kind;
        row.retries = retries;
        row.rate_kbps = rate;
        attempts_.push_back(row);
        pad_bits_ += f.pad_bits;
        data_bits_ += mac_.frame_bits(f);
        rate_sum_mbps_ += static_cast<double>(rate) / 1000.0;
        rate_min_mbps_ = std::min(rate_min_mbps_, static_cast<double>(rate) / 1000.0);
        ++rate_samples_;
    }

    void backoff_drawn(SimTime, NodeId, int cw, int) override {
        cw_sum_ += cw;
        cw_max_seen_ = std::max(cw_max_seen_, cw);
        ++cw_samples_;
    }

    void energy_end(SimTime, std::uint64_t id, const EnergyInterval& e,
                    const std::vector<TransmissionRecord>& recs,
                    const ReceptionOutcome& o) override {
        EnergyRow row;
        row.id = id;
        row.est = e.est_global;
        row.edt = e.edt;
        row.n_records = static_cast<int>(recs.size());
        row.outcome = o.kind;
        if (o.decoded_any()) row.winner_node = recs[o.winner].source;
        row.first_phase_bound = e.edt + mac_.sifs_us + mac_.t_et();
        for (const auto& r : recs) {
            row.participants.push_back(r.attempt_id);
            if (auto* a = find(r.attempt_id)) {
                a->energy_id = static_cast<std::int64_t>(id);
                a->multi = recs.size() >= 2;
            }
        }
        energy_index_[id] = energies_.size();
        energies_.push_back(std::move(row));
    }

    void et_sent(SimTime t, const EtWire& w) override {
        ++et_sent_;
        wire_log_.push_back("et t=" + std::to_string(t) +
                            " est_prime=" + std::to_string(w.est_prime) +
                            " edt=" + std::to_string(w.edt));
    }

    void cn_sent(SimTime t, NodeId n, const NoticeWire& w) override {
        ++cn_sent_;
        wire_log_.push_back("cn t=" + std::to_string(t) + " node=" + std::to_string(n) +
                            " st_prime=" + std::to_string(w.st_prime) +
                            " dt=" + std::to_string(w.dt));
    }

    void fn_sent(SimTime t, NodeId n, const NoticeWire& w) override {
        ++fn_sent_;
        wire_log_.push_back("fn t=" + std::to_string(t) + " node=" + std::to_string(n) +
                            " st_prime=" + std::to_string(w.st_prime) +
                            " dt=" + std::to_string(w.dt));
    }

    void cn_purged(SimTime, NodeId, const Interval&) override { ++cn_purged_; }

    void detection(SimTime t, NodeId, std::uint64_t id, DetectPath path) override {
        auto* a = find(id);
        if (!a) return;
        switch (path) {
            case DetectPath::FirstPhase: a->det_first = true; ++first_phase_; break;
            case DetectPath::SecondPhase: a->det_second = true; ++second_phase_; break;
            case DetectPath::FnPath: a->det_fn = true; ++fn_path_; break;
        }
        if (a->first_detect_time < 0) a->first_detect_time = t;
        if (a->energy_id >= 0) {
            auto& e = energies_[energy_index_.at(static_cast<std::uint64_t>(a->energy_id))];
            e.detected = true;
            const Duration latency = t - e.est;
            latencies_.push_back(latency);
            if (path == DetectPath::FirstPhase && latency > e.first_phase_bound)
                ++bound_violations_;
        }
    }

    void outcome(SimTime, NodeId, std::uint64_t id, bool acked, FailureCause cause) override {
        if (auto* a = find(id)) {
            a->concluded = true;
            a->acked = acked;
            a->cause = cause;
        }
    }

    void cause_revised(SimTime, NodeId, std::uint64_t id, DetectPath) override {
        ++revisions_;
        if (auto* a = find(id)) a->cause = FailureCause::Collision;
    }

    void frame_dropped(SimTime, NodeId, std::uint64_t, int) override { ++drops_; }

    void delivered(SimTime, NodeId, std::uint64_t, std::int64_t bits, Duration delay) override {
        delivered_bits_ += bits;
        delay_sum_ += static_cast<double>(delay);
        ++deliveries_;
    }

    const std::vector<AttemptRow>& attempt_rows() const { return attempts_; }
    const std::vector<EnergyRow>& energy_rows() const { return energies_; }
    const std::vector<std::string>& wire_log() const { return wire_log_; }

    RunMetrics finalize(std::uint64_t seed, Duration duration_us, int stations) const {
        RunMetrics m;
        m.seed = seed;
        m.sim_duration_us = duration_us;
        m.stations = stations;
        m.attempts = static_cast<std::int64_t>(attempts_.size());
        m.drops = drops_;
        for (const auto& a : attempts_) {
            if (!a.concluded) continue;
            if (a.acked) {
                ++m.successes;
                continue;
            }
            const bool was_collision = a.multi;
            const bool said_collision = a.cause == FailureCause::Collision;
            if (was_collision) {
                ++m.true_collision_failures;
                said_collision ? ++m.tp_collision : ++m.fn_collision;
            } else {
                ++m.true_channel_error_failures;
                said_collision ? ++m.fp_collision : ++m.tn_channel_error;
            }
        }
        const auto classified_collisions = m.tp_collision + m.fn_collision;
        m.detection_rate = classified_collisions > 0
                               ? static_cast<double>(m.tp_collision) /
                                     static_cast<double>(classified_collisions)
                               : 0.0;
        for (const auto& e : energies_) {
            if (e.n_records < 2) continue;
            ++m.collision_events;
            if (e.detected) ++m.detected_collision_events;
        }
        m.event_detection_rate =
            m.collision_events > 0 ? static_cast<double>(m.detected_collision_events) /
                                         static_cast<double>(m.collision_events)
                                   : 0.0;
        m.first_phase_detections = first_phase_;
        m.second_phase_detections = second_phase_;
        m.fn_path_detections = fn_path_;
        m.cause_revisions = revisions_;
        m.et_frames_sent = et_sent_;
        m.cn_piggybacks_sent = cn_sent_;
        m.fn_piggybacks_sent = fn_sent_;
        m.cn_purges = cn_purged_;
        m.pad_overhead_fraction =
            data_bits_ > 0 ? static_cast<double>(pad_bits_) / static_cast<double>(data_bits_) : 0.0;
        if (!latencies_.empty()) {
            double sum = 0;
            for (auto l : latencies_) sum += static_cast<double>(l);
            m.mean_detection_latency_us = sum / static_cast<double>(latencies_.size());
            std::vector<Duration> sorted = latencies_;
            std::sort(sorted.begin(), sorted.end());
            const std::size_t idx =
                (sorted.size() * 95 + 99) / 100 == 0 ? 0 : (sorted.size() * 95 + 99) / 100 - 1;
            m.p95_detection_latency_us = static_cast<double>(sorted[std::min(idx, sorted.size() - 1)]);
        }
        m.first_phase_bound_violations = bound_violations_;
        m.throughput_bits_per_s = duration_us > 0 ? static_cast<double>(delivered_bits_) * 1e6 /
                                                        static_cast<double>(duration_us)
                                                  : 0.0;
        m.mean_access_delay_us = deliveries_ > 0 ? delay_sum_ / static_cast<double>(deliveries_) : 0.0;
        m.cw_mean = cw_samples_ > 0 ? static_cast<double>(cw_sum_) / static_cast<double>(cw_samples_) : 0.0;
        m.cw_max_observed = cw_max_seen_;
        m.rate_mean_mbps = rate_samples_ > 0 ? rate_sum_mbps_ / static_cast<double>(rate_samples_) : 0.0;
        m.rate_min_observed_mbps = rate_samples_ > 0 ? rate_min_mbps_ : 0.0;
        return m;
    }

private:
    AttemptRow* find(std::uint64_t id) {
        auto it = index_.find(id);
        return it == index_.end() ? nullptr : &attempts_[it->second];
    }

    const MacParams& mac_;
    std::vector<AttemptRow> attempts_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    std::vector<EnergyRow> energies_;
    std::unordered_map<std::uint64_t, std::size_t> energy_index_;
    std::vector<std::string> wire_log_;
    std::vector<Duration> latencies_;
    std::int64_t et_sent_ = 0, cn_sent_ = 0, fn_sent_ = 0, cn_purged_ = 0;
    std::int64_t first_phase_ = 0, second_phase_ = 0, fn_path_ = 0, revisions_ = 0;
    std::int64_t drops_ = 0;
    std::int64_t pad_bits_ = 0, data_bits_ = 0, delivered_bits_ = 0;
    double delay_sum_ = 0.0;
    std::int64_t deliveries_ = 0;
    std::int64_t cw_sum_ = 0, cw_samples_ = 0;
    int cw_max_seen_ = 0;
    double rate_sum_mbps_ = 0.0;
    double rate_min_mbps_ = 1e18;
    std::int64_t rate_samples_ = 0;
    std::int64_t bound_violations_ = 0;
};

}  // namespace cdet
