#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cdet/event_queue.hpp"
#include "cdet/frame.hpp"
#include "cdet/rng.hpp"
#include "cdet/sim_time.hpp"

namespace cdet {

struct TransmissionRecord {
    NodeId source = 0;
    SimTime start = 0;      // global clock
    Duration duration = 0;  // microseconds of airtime
    double rx_power_db = 0.0;
    Frame frame;
    std::uint64_t attempt_id = 0;

    SimTime end() const { return start + duration; }
    Interval interval() const { return {start, duration}; }
};

struct EnergyInterval {
    SimTime est_global = 0;
    Duration edt = 0;
    SimTime end() const { return est_global + edt; }
};

// Union extent of a set of records that form one contiguous busy period.
// A gap of one tick or more means two separate energies, which is a caller
// error here.
inline EnergyInterval merged_energy_interval(std::span<const TransmissionRecord> records) {
    if (records.empty()) throw std::invalid_argument("merged_energy_interval: empty record set");
    std::vector<Interval> ivs;
    ivs.reserve(records.size());
    for (const auto& r : records) {
        if (r.duration <= 0) throw std::invalid_argument("merged_energy_interval: non-positive duration");
        ivs.push_back(r.interval());
    }
    std::sort(ivs.begin(), ivs.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    SimTime est = ivs.front().start;
    SimTime reach = ivs.front().end();
    for (std::size_t i = 1; i < ivs.size(); ++i) {
        if (ivs[i].start > reach)
            throw std::invalid_argument("merged_energy_interval: records are temporally disjoint");
        reach = std::max(reach, ivs[i].end());
    }
    return {est, reach - est};
}

struct CaptureConfig {
    bool enabled = false;
    double threshold_db = 6.0;
};

struct ReceptionOutcome {
    enum class Kind { Success, Captured, CollisionNoCapture, ChannelError };
    Kind kind = Kind::Success;
    std::size_t winner = 0;  // index into the record set for Success/Captured

    bool decoded_any() const { return kind == Kind::Success || kind == Kind::Captured; }
};

inline const char* to_string(ReceptionOutcome::Kind k) {
    switch (k) {
        case ReceptionOutcome::Kind::Success: return "success";
        case ReceptionOutcome::Kind::Captured: return "capture";
        case ReceptionOutcome::Kind::CollisionNoCapture: return "collision";
        case ReceptionOutcome::Kind::ChannelError: return "channel_error";
    }
    return "?";
}

// Receiver-side outcome for one merged energy. A lone frame fails with
// probability p_e; overlapping frames yield the strongest one iff capture is
// enabled and it clears the aggregate of the rest by the threshold (and then
// still passes its own p_e check).
inline ReceptionOutcome classify_reception(std::span<const TransmissionRecord> records,
                                           const CaptureConfig& capture, double p_e,
                                           SeededRng& rng) {
    if (records.empty()) throw std::invalid_argument("classify_reception: empty record set");
    if (records.size() == 1) {
        if (p_e > 0.0 && bernoulli(rng, p_e)) return {ReceptionOutcome::Kind::ChannelError, 0};
        return {ReceptionOutcome::Kind::Success, 0};
    }
    if (capture.enabled) {
        std::size_t strongest = 0;
        for (std::size_t i = 1; i < records.size(); ++i)
            if (records[i].rx_power_db > records[strongest].rx_power_db) strongest = i;
        double rest_linear = 0.0;
        for (std::size_t i = 0; i < records.size(); ++i)
            if (i != strongest) rest_linear += std::pow(10.0, records[i].rx_power_db / 10.0);
        const double margin_db =
            records[strongest].rx_power_db - 10.0 * std::log10(rest_linear);
        if (margin_db >= capture.threshold_db) {
            if (p_e > 0.0 && bernoulli(rng, p_e))
                return {ReceptionOutcome::Kind::CollisionNoCapture, 0};
            return {ReceptionOutcome::Kind::Captured, strongest};
        }
    }
    return {ReceptionOutcome::Kind::CollisionNoCapture, 0};
}

// Per-node view of the medium. Busy/idle edges drive carrier sense;
// frame_received fires only for frames the node actually decodes.
class MediumListener {
public:
    virtual ~MediumListener() = default;
    virtual void medium_busy(SimTime now) = 0;
    virtual void medium_idle(SimTime now) = 0;
    virtual void frame_received(const TransmissionRecord& rec) = 0;
};

// The AP-side energy consumer: called once per contiguous busy period seen at
// the AP, with the records that produced it and the reception outcome.
class EnergyObserver {
public:
    virtual ~EnergyObserver() = default;
    virtual void energy_end(const EnergyInterval& energy,
                            const std::vector<TransmissionRecord>& records,
                            const ReceptionOutcome& outcome) = 0;
};

struct ChannelConfig {
    double p_e = 0.0;
    CaptureConfig capture;
    bool robust_control_frames = false;
    // hears[i][j]: node i demodulates node j. Row/col 0 is the AP; the AP and
    // every station always hear each other.
    std::vector<std::vector<bool>> hears;
    std::vector<double> rx_power_db;  // indexed by node id; entry 0 unused
};

// The shared medium. Zero propagation delay: a frame occupies [start,
// start+duration) at every node that hears its source. Reception at a
// station requires that no other transmission audible to that station
// overlapped the frame; reception at the AP is classified per merged energy.
class Channel {
public:
    Channel(EventQueue& queue, SeededRng& rng, ChannelConfig cfg, int node_count)
        : queue_(queue),
          rng_(rng),
          cfg_(std::move(cfg)),
          node_count_(node_count),
          listeners_(node_count, nullptr),
          busy_count_(node_count, 0),
          active_(node_count) {}

    void attach(NodeId id, MediumListener* l) { listeners_.at(id) = l; }
    void set_energy_observer(EnergyObserver* o) { energy_observer_ = o; }

    bool busy_for(NodeId id) const { return busy_count_.at(id) > 0; }
    bool transmitting(NodeId id) const { return active_.at(id).has_value(); }

    void begin_transmission(NodeId src, Frame frame, Duration duration,
                            std::uint64_t attempt_id) {
        if (duration <= 0) throw std::logic_error("begin_transmission: non-positive duration");
        if (active_.at(src).has_value())
            throw std::logic_error("begin_transmission: source already transmitting");
        const SimTime now = queue_.now();
        ActiveTx tx;
        tx.rec = TransmissionRecord{src, now, duration,
                                    src == kApId ? 0.0 : cfg_.rx_power_db.at(src),
                                    std::move(frame), attempt_id};
        // Mutual interference bookkeeping with every transmission still on
        // the air (zero-length brushes at an exact end instant do not count).
        for (NodeId other = 0; other < node_count_; ++other) {
            auto& slot = active_[other];
            if (!slot || slot->rec.end() <= now) continue;
            slot->concurrent.push_back(src);
            tx.concurrent.push_back(other);
        }
        active_[src] = std::move(tx);

        for (NodeId i = 1; i < node_count_; ++i) {
            if (i == src || !cfg_.hears[i][src]) continue;
            if (++busy_count_[i] == 1 && listeners_[i]) listeners_[i]->medium_busy(now);
        }
        if (src != kApId) {
            if (energy_active_ == 0) energy_records_.clear();
            ++energy_active_;
            energy_records_.push_back(active_[src]->rec);
        }
        queue_.schedule(now + duration, src, [this, src] { end_transmission(src); });
    }

private:
    struct ActiveTx {
        TransmissionRecord rec;
        std::vector<NodeId> concurrent;  // sources overlapping this one in time
    };

    void end_transmission(NodeId src) {
        ActiveTx tx = std::move(*active_[src]);
        active_[src].reset();
        const SimTime now = queue_.now();

        for (NodeId i = 1; i < node_count_; ++i) {
            if (i == src || !cfg_.hears[i][src]) continue;
            if (--busy_count_[i] == 0 && listeners_[i]) listeners_[i]->medium_idle(now);
        }

        // Station deliveries, ascending id so the error-draw order is fixed.
        const bool error_free = cfg_.robust_control_frames && tx.rec.frame.is_control();
        for (NodeId i = 1; i < node_count_; ++i) {
            if (i == src || !cfg_.hears[i][src] || !listeners_[i]) continue;
            if (transmitting(i)) continue;  // half-duplex
            bool corrupted = false;
            for (NodeId other : tx.concurrent)
                if (cfg_.hears[i][other]) { corrupted = true; break; }
            if (corrupted) continue;
            if (!error_free && cfg_.p_e > 0.0 && bernoulli(rng_, cfg_.p_e)) continue;
            listeners_[i]->frame_received(tx.rec);
        }

        if (src != kApId && --energy_active_ == 0) {
            const EnergyInterval energy = merged_energy_interval(energy_records_);
            const ReceptionOutcome outcome =
                classify_reception(energy_records_, cfg_.capture, cfg_.p_e, rng_);
            if (energy_observer_) energy_observer_->energy_end(energy, energy_records_, outcome);
            energy_records_.clear();
        }
    }

    EventQueue& queue_;
    SeededRng& rng_;
    ChannelConfig cfg_;
    int node_count_;
    std::vector<MediumListener*> listeners_;
    std::vector<int> busy_count_;
    std::vector<std::optional<ActiveTx>> active_;
    EnergyObserver* energy_observer_ = nullptr;
    int energy_active_ = 0;
    std::vector<TransmissionRecord> energy_records_;
};

}  // namespace cdet
