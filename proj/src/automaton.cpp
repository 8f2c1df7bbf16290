#include "bondsim/mac/automaton.hpp"

#include <cstring>

#include "bondsim/core/check.hpp"

namespace bondsim {

const char* access_method_name(AccessMethod m) {
  switch (m) {
    case AccessMethod::Edca: return "edca";
    case AccessMethod::BondN: return "bond_n";
    case AccessMethod::BondBd: return "bond_bd";
    case AccessMethod::BondBdFallback: return "bond_bd_fallback";
  }
  return "?";
}

bool parse_access_method(const char* name, AccessMethod& out) {
  for (int i = 0; i < kNumAccessMethods; ++i) {
    const auto m = static_cast<AccessMethod>(i);
    if (std::strcmp(name, access_method_name(m)) == 0) {
      out = m;
      return true;
    }
  }
  return false;
}

bool is_standard_cw(int cw) {
  for (int v : kStandardCwSet)
    if (v == cw) return true;
  return false;
}

const char* automaton_state_name(AutomatonState s) {
  switch (s) {
    case AutomatonState::Idle: return "idle";
    case AutomatonState::Defer: return "defer";
    case AutomatonState::Countdown: return "countdown";
    case AutomatonState::Suspended: return "suspended";
    case AutomatonState::Tx: return "tx";
    case AutomatonState::FallbackCountdown: return "fallback_countdown";
  }
  return "?";
}

AccessAutomaton::AccessAutomaton(Engine& engine, RngStream& rng,
                                 AccessMethod method, int cw, ChannelId primary,
                                 const MacTimings& timings, Hooks hooks)
    : engine_(engine),
      rng_(rng),
      method_(method),
      cw_(cw),
      primary_(primary),
      secondary_(other_channel(primary)),
      t_(timings),
      hooks_(std::move(hooks)) {
  check(cw_ >= 0, "contention window must be non-negative");
}

bool AccessAutomaton::watches_secondary() const {
  return (method_ == AccessMethod::BondBd ||
          method_ == AccessMethod::BondBdFallback) &&
         !fallen_back_;
}

bool AccessAutomaton::watch_busy() const {
  if (mirror_[channel_index(primary_)].busy) return true;
  return watches_secondary() && mirror_[channel_index(secondary_)].busy;
}

SimTime AccessAutomaton::secondary_idle_before(SimTime now) const {
  // Idle duration as of the instant just before `now`: a busy edge landing
  // exactly at `now` does not count against it.
  const ChannelMirror& s = mirror_[channel_index(secondary_)];
  if (s.busy && s.busy_since < now) return 0;
  return now - s.idle_since;
}

AutomatonState AccessAutomaton::state() const {
  if (fallen_back_ && state_ == AutomatonState::Countdown)
    return AutomatonState::FallbackCountdown;
  return state_;
}

SimTime AccessAutomaton::scheduled_tx_time() const { return ready_at_; }

TxWidth AccessAutomaton::planned_width(SimTime now) const {
  switch (method_) {
    case AccessMethod::Edca:
      return TxWidth::Mhz10;
    case AccessMethod::BondBd:
      return TxWidth::Mhz20;
    case AccessMethod::BondBdFallback:
      return fallen_back_ ? TxWidth::Mhz10 : TxWidth::Mhz20;
    case AccessMethod::BondN:
      // Secondary idle for at least PIFS at the zero instant bonds; the
      // boundary is inclusive.
      return secondary_idle_before(now) >= t_.pifs_us ? TxWidth::Mhz20
                                                      : TxWidth::Mhz10;
  }
  return TxWidth::Mhz10;
}

void AccessAutomaton::trace(SimTime now, const char* what) {
  if (hooks_.trace) hooks_.trace(now, *this, what);
}

void AccessAutomaton::enqueue(const QueuedMessage& msg) {
  queue_.push_back(msg);
  if (state_ == AutomatonState::Idle) begin_access(msg.enqueue_time);
}

void AccessAutomaton::begin_access(SimTime now) {
  check(!queue_.empty(), "begin_access with empty queue");
  access_start_ = now;
  fallen_back_ = false;  // a fallen-back automaton re-widens for the next frame
  in_progress_ = false;
  counter_ = static_cast<int>(rng_.uniform_int(0, cw_));
  trace(now, "access");

  // The watch set may have just re-widened; resync the cached state.
  const bool wb = watch_busy();
  if (wb != watch_busy_) {
    watch_busy_ = wb;
    if (wb) {
      episode_touched_secondary_ =
          watches_secondary() && mirror_[channel_index(secondary_)].busy;
      episode_had_ok_ = (last_ok_end_ == now);
    }
  }

  if (watch_busy_) {
    state_ = AutomatonState::Suspended;
    trace(now, "suspend");
  } else {
    start_wait(now, Wait::Aifs);
  }
}

void AccessAutomaton::start_wait(SimTime now, Wait w) {
  wait_end_ = now + (w == Wait::Aifs ? t_.aifs_us : t_.eifs_us);
  // If the wait will complete with a zero counter, its end is a zero-crossing.
  const int after = in_progress_ ? counter_ - 1 : counter_;
  ready_at_ = (after == 0) ? wait_end_ : -1;
  state_ = AutomatonState::Defer;
  timer_ = engine_.schedule(wait_end_, EventKind::BackoffTimer,
                            [this] { on_wait_done(engine_.now()); });
  trace(now, w == Wait::Aifs ? "defer_aifs" : "defer_eifs");
}

void AccessAutomaton::on_wait_done(SimTime now) {
  check(state_ == AutomatonState::Defer && now == wait_end_,
        "stray wait timer");
  wait_end_ = -1;
  if (in_progress_) {
    // Resuming a suspended countdown additionally decrements the counter.
    check(counter_ >= 1, "backoff counter would go negative");
    --counter_;
  }
  if (counter_ == 0) {
    become_ready(now);
    return;
  }
  if (watch_busy()) {
    // A busy edge landed at this very instant; the wait itself was satisfied
    // but no countdown can start.
    ready_at_ = -1;
    state_ = AutomatonState::Suspended;
    trace(now, "suspend");
    return;
  }
  in_progress_ = true;
  countdown_anchor_ = now;
  ready_at_ = now + static_cast<SimTime>(counter_) * t_.slot_us;
  state_ = AutomatonState::Countdown;
  timer_ = engine_.schedule(ready_at_, EventKind::BackoffTimer,
                            [this] { on_countdown_done(engine_.now()); });
  trace(now, "countdown");
}

void AccessAutomaton::on_countdown_done(SimTime now) {
  check(state_ == AutomatonState::Countdown && now == ready_at_,
        "stray countdown timer");
  counter_ = 0;
  become_ready(now);
}

void AccessAutomaton::become_ready(SimTime now) {
  ready_at_ = now;
  trace(now, "zero");
  check(static_cast<bool>(hooks_.on_tx_ready), "no tx-ready hook installed");
  hooks_.on_tx_ready(now);
}

AccessAutomaton::TxGrant AccessAutomaton::start_transmission(SimTime now) {
  check(!queue_.empty(), "start_transmission with empty queue");
  TxGrant g;
  g.msg = queue_.front();
  queue_.pop_front();
  g.width = planned_width(now);
  g.access_start = access_start_;
  engine_.cancel(timer_);
  wait_end_ = -1;
  ready_at_ = -1;
  state_ = AutomatonState::Tx;
  trace(now, "tx_start");
  return g;
}

void AccessAutomaton::lose_internal_collision(SimTime now) {
  engine_.cancel(timer_);
  wait_end_ = -1;
  ready_at_ = -1;
  counter_ = static_cast<int>(rng_.uniform_int(0, cw_));
  in_progress_ = false;
  // The sibling's transmission is occupying the radio from this instant.
  state_ = AutomatonState::Suspended;
  trace(now, "redraw");
}

void AccessAutomaton::finish_transmission(SimTime now) {
  check(state_ == AutomatonState::Tx, "finish_transmission while not in Tx");
  state_ = AutomatonState::Idle;
  access_start_ = -1;
  trace(now, "tx_done");
  if (!queue_.empty()) begin_access(now);
}

void AccessAutomaton::on_decode_ok(SimTime now) {
  last_ok_end_ = now;
  if (watch_busy_) episode_had_ok_ = true;
}

void AccessAutomaton::on_own_tx_end(SimTime now) {
  // Own frames count like decoded ones: the following wait is AIFS-class.
  last_ok_end_ = now;
  if (watch_busy_) episode_had_ok_ = true;
}

AccessAutomaton::Wait AccessAutomaton::resume_wait_class(SimTime now) const {
  if (watches_secondary()) {
    // EIFS only when the episode involved the secondary (alone or with the
    // primary) and nothing in it was decoded.
    return (!episode_touched_secondary_ || episode_had_ok_) ? Wait::Aifs
                                                            : Wait::Eifs;
  }
  // Single-channel rule: AIFS iff a successfully decoded frame (or an own
  // transmission) ended exactly when the channel went idle.
  return last_ok_end_ == now ? Wait::Aifs : Wait::Eifs;
}

void AccessAutomaton::suspend(SimTime now) {
  engine_.cancel(timer_);
  wait_end_ = -1;
  ready_at_ = -1;
  state_ = AutomatonState::Suspended;
  trace(now, "suspend");
}

void AccessAutomaton::on_channel_state(SimTime now, bool busy180, bool busy182) {
  const bool sec_was_busy = mirror_[channel_index(secondary_)].busy;
  const bool next[kNumChannels] = {busy180, busy182};
  for (int c = 0; c < kNumChannels; ++c) {
    ChannelMirror& m = mirror_[c];
    if (m.busy != next[c]) {
      if (next[c])
        m.busy_since = now;
      else
        m.idle_since = now;
      m.busy = next[c];
    }
  }

  // Fallback trigger: the secondary turns busy mid-countdown while the
  // primary stays idle. The countdown continues on the primary alone and the
  // pending frame goes out at 10 MHz; re-widening happens with the next
  // frame. An edge landing exactly on the zero boundary does not fall back:
  // the transmit decision was already made on state strictly before this
  // instant, like any same-slot collision.
  if (method_ == AccessMethod::BondBdFallback && !fallen_back_ &&
      state_ == AutomatonState::Countdown && !sec_was_busy &&
      mirror_[channel_index(secondary_)].busy &&
      !mirror_[channel_index(primary_)].busy) {
    const SimTime elapsed = (now - countdown_anchor_) / t_.slot_us;
    if (counter_ - static_cast<int>(elapsed) > 0) {
      fallen_back_ = true;
      trace(now, "fallback");
    }
  }

  const bool now_busy = watch_busy();
  if (now_busy == watch_busy_) {
    if (now_busy && watches_secondary() &&
        mirror_[channel_index(secondary_)].busy) {
      episode_touched_secondary_ = true;
    }
    return;
  }
  watch_busy_ = now_busy;

  if (now_busy) {
    // Busy edge. If it lands at the same instant as the previous idle edge,
    // one frame ended exactly as another began: the busy episode continues.
    if (last_watch_idle_edge_ != now) {
      episode_touched_secondary_ = false;
      episode_had_ok_ = false;
    }
    if (watches_secondary() && mirror_[channel_index(secondary_)].busy)
      episode_touched_secondary_ = true;

    switch (state_) {
      case AutomatonState::Defer:
        if (wait_end_ == now) {
          // The wait matured on channel state strictly before this instant;
          // leave the pending timer to fire.
        } else {
          suspend(now);
        }
        break;
      case AutomatonState::Countdown: {
        const SimTime elapsed = (now - countdown_anchor_) / t_.slot_us;
        counter_ -= static_cast<int>(elapsed);
        check(counter_ >= 0, "backoff counter went negative");
        if (counter_ == 0) {
          // The zero boundary coincides with this busy edge; the slot before
          // it was idle, so the pending timer still transmits (this is how
          // same-slot collisions happen).
        } else {
          countdown_anchor_ = -1;
          suspend(now);
        }
        break;
      }
      default:
        break;  // Idle, Suspended, Tx: nothing to interrupt
    }
  } else {
    last_watch_idle_edge_ = now;
    if (state_ == AutomatonState::Suspended) {
      start_wait(now, resume_wait_class(now));
    }
  }
}

}  // namespace bondsim
