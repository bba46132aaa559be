#pragma once

#include <algorithm>
#include <stdexcept>

#include "cdet/detection.hpp"
#include "cdet/mac_params.hpp"

namespace cdet {

// Standard doubles the contention window on every failure; Differentiated
// doubles only when the failure was classified a collision.
enum class BackoffMode { Standard, Differentiated };

// StandardArf counts every failure toward the rate-down threshold;
// DifferentiatedArf counts only channel errors, so collisions in a crowded
// cell no longer drag the bit rate down.
enum class RateMode { Off, StandardArf, DifferentiatedArf };

struct PolicyConfig {
    BackoffMode backoff = BackoffMode::Standard;
    RateMode rate = RateMode::Off;
    int fail_threshold = 2;
    int success_threshold = 10;
};

// Per-station contention-window and bit-rate state, driven by transmission
// outcomes and by late cause revisions from the detection machinery.
class AdaptationState {
public:
    AdaptationState(const PolicyConfig& cfg, const MacParams& mac, RateKbps initial_rate)
        : cfg_(cfg), mac_(&mac), cw_(mac.cw_min) {
        for (std::size_t i = 0; i < mac.rates_kbps.size(); ++i)
            if (mac.rates_kbps[i] == initial_rate) { rate_idx_ = i; return; }
        throw std::invalid_argument("initial rate not in the configured rate set");
    }

    int cw() const { return cw_; }
    RateKbps rate() const { return mac_->rates_kbps[rate_idx_]; }

    // Returns true when cw changed; rate_changed() reports the last call's
    // rate transition.
    bool on_failure(FailureCause cause) {
        rate_changed_ = false;
        const int before = cw_;
        if (cfg_.backoff == BackoffMode::Standard || cause == FailureCause::Collision)
            cw_ = std::min(2 * (cw_ + 1) - 1, mac_->cw_max);
        success_streak_ = 0;
        if (cfg_.rate == RateMode::StandardArf ||
            (cfg_.rate == RateMode::DifferentiatedArf && cause == FailureCause::ChannelError)) {
            if (++fail_streak_ >= cfg_.fail_threshold) {
                if (rate_idx_ > 0) { --rate_idx_; rate_changed_ = true; }
                fail_streak_ = 0;
                success_streak_ = 0;
            }
        }
        return cw_ != before;
    }

    bool on_success() {
        rate_changed_ = false;
        const int before = cw_;
        cw_ = mac_->cw_min;
        fail_streak_ = 0;
        if (cfg_.rate != RateMode::Off) {
            if (++success_streak_ >= cfg_.success_threshold) {
                if (rate_idx_ + 1 < mac_->rates_kbps.size()) { ++rate_idx_; rate_changed_ = true; }
                success_streak_ = 0;
                fail_streak_ = 0;
            }
        }
        return cw_ != before;
    }

    // Late evidence turned a channel error into a collision. The failure
    // counter is walked back (a collision should not have counted); a rate
    // step already taken is not retroactively undone, and an already-updated
    // contention window is left alone.
    void on_cause_revised(FailureCause from, FailureCause to) {
        rate_changed_ = false;
        if (cfg_.rate == RateMode::DifferentiatedArf && from == FailureCause::ChannelError &&
            to == FailureCause::Collision)
            fail_streak_ = std::max(0, fail_streak_ - 1);
    }

    bool on_drop() {
        rate_changed_ = false;
        const int before = cw_;
        cw_ = mac_->cw_min;
        return cw_ != before;
    }

    bool rate_changed() const { return rate_changed_; }

private:
    PolicyConfig cfg_;
    const MacParams* mac_;
    int cw_;
    std::size_t rate_idx_ = 0;
    int fail_streak_ = 0;
    int success_streak_ = 0;
    bool rate_changed_ = false;
};

}  // namespace cdet
