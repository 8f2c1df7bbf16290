#include "bondsim/core/engine.hpp"

#include <stdexcept>
#include <utility>

namespace bondsim {

EventHandle Engine::schedule(SimTime fire_at, EventKind kind,
                             std::function<void()> fn) {
  if (fire_at < now_) {
    throw std::invalid_argument("Engine::schedule: fire_at is in the past");
  }
  auto rec = std::make_shared<detail::EventRecord>();
  rec->fire_at = fire_at;
  rec->seq = next_seq_++;
  rec->kind = kind;
  rec->fn = std::move(fn);
  queue_.push(rec);
  return EventHandle(rec);
}

bool Engine::cancel(EventHandle& h) {
  if (!h.rec_ || h.rec_->fired || h.rec_->cancelled) return false;
  h.rec_->cancelled = true;
  h.rec_->fn = nullptr;  // release captures early
  return true;
}

std::size_t Engine::run_until(SimTime end) {
  if (end < now_) {
    throw std::invalid_argument("Engine::run_until: end precedes current time");
  }
  std::size_t executed = 0;
  while (!queue_.empty() && queue_.top()->fire_at <= end) {
    auto rec = queue_.top();
    queue_.pop();
    if (rec->cancelled) continue;
    now_ = rec->fire_at;
    rec->fired = true;
    auto fn = std::move(rec->fn);
    rec->fn = nullptr;
    fn();
    ++executed;
  }
  now_ = end;
  return executed;
}

}  // namespace bondsim
