#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cdet/sim_time.hpp"

namespace cdet {

using EventId = std::uint64_t;
inline constexpr EventId kNoEvent = 0;

// Deterministic discrete-event core. Events fire in (fire_at, seq) order,
// seq being the insertion sequence, so equal-time events dispatch FIFO and a
// replay with the same inputs yields an identical dispatch sequence.
class EventQueue {
public:
    SimTime now() const { return now_; }

    EventId schedule(SimTime fire_at, NodeId target, std::function<void()> action) {
        if (fire_at < now_) throw std::logic_error("EventQueue: scheduling into the past");
        const EventId id = ++next_seq_;
        live_.emplace(id, Entry{fire_at, target, std::move(action)});
        heap_.push(Key{fire_at, id});
        return id;
    }

    EventId schedule_in(Duration delay, NodeId target, std::function<void()> action) {
        return schedule(now_ + delay, target, std::move(action));
    }

    // Unknown ids (already fired or cancelled) are ignored.
    void cancel(EventId id) { live_.erase(id); }

    SimTime fire_time(EventId id) const {
        auto it = live_.find(id);
        return it == live_.end() ? -1 : it->second.fire_at;
    }

    // Dispatches every event with fire_at <= t_end, then advances now to
    // t_end. Returns the number of events dispatched.
    std::size_t run_until(SimTime t_end) {
        if (t_end < now_) throw std::logic_error("EventQueue: run_until into the past");
        std::size_t dispatched = 0;
        while (!heap_.empty() && heap_.top().fire_at <= t_end) {
            const Key key = heap_.top();
            heap_.pop();
            auto it = live_.find(key.seq);
            if (it == live_.end()) continue;  // cancelled
            now_ = key.fire_at;
            auto action = std::move(it->second.action);
            live_.erase(it);
            action();
            ++dispatched;
        }
        now_ = t_end;
        return dispatched;
    }

    std::size_t pending() const { return live_.size(); }

private:
    struct Entry {
        SimTime fire_at;
        NodeId target;
        std::function<void()> action;
    };
    struct Key {
        SimTime fire_at;
        EventId seq;
        bool operator>(const Key& o) const {
            return fire_at != o.fire_at ? fire_at > o.fire_at : seq > o.seq;
        }
    };

    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap_;
    std::unordered_map<EventId, Entry> live_;
    EventId next_seq_ = kNoEvent;
    SimTime now_ = 0;
};

}  // namespace cdet
