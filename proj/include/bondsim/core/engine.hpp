#ifndef BONDSIM_CORE_ENGINE_HPP
#define BONDSIM_CORE_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <queue>
#include <vector>

#include "bondsim/core/time.hpp"

namespace bondsim {

enum class EventKind {
  MessageGeneration,
  BackoffTimer,
  TxStart,
  TxEnd,
  MobilityStep,
  MetricsSnapshot,
  Generic,
};

namespace detail {
struct EventRecord {
  SimTime fire_at = 0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::Generic;
  std::function<void()> fn;
  bool cancelled = false;
  bool fired = false;
};
}  // namespace detail

// Handle returned by Engine::schedule(). Permits cancellation, which the MAC
// uses constantly when backoff suspension invalidates pending slot timers.
class EventHandle {
 public:
  EventHandle() = default;

  // True while the event is queued and neither fired nor cancelled.
  bool pending() const { return rec_ && !rec_->fired && !rec_->cancelled; }

 private:
  friend class Engine;
  explicit EventHandle(std::shared_ptr<detail::EventRecord> rec)
      : rec_(std::move(rec)) {}
  std::shared_ptr<detail::EventRecord> rec_;
};

// Deterministic single-threaded discrete-event engine. Events fire in
// non-decreasing time order; ties break by insertion sequence (FIFO).
// One engine instance per simulation run.
class Engine {
 public:
  SimTime now() const { return now_; }

  // fire_at must be >= now(); scheduling in the past is rejected.
  EventHandle schedule(SimTime fire_at, EventKind kind, std::function<void()> fn);

  // Returns true if the event was pending and is now removed; false if it
  // already fired or was already cancelled.
  bool cancel(EventHandle& h);

  // Executes every event with fire_at <= end in order, advances the clock to
  // end, and returns the number of events executed by this call.
  std::size_t run_until(SimTime end);

 private:
  struct Later {
    bool operator()(const std::shared_ptr<detail::EventRecord>& a,
                    const std::shared_ptr<detail::EventRecord>& b) const {
      if (a->fire_at != b->fire_at) return a->fire_at > b->fire_at;
      return a->seq > b->seq;
    }
  };

  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<std::shared_ptr<detail::EventRecord>,
                      std::vector<std::shared_ptr<detail::EventRecord>>, Later>
      queue_;
};

}  // namespace bondsim

#endif
