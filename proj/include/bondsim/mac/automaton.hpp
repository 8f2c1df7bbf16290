#ifndef BONDSIM_MAC_AUTOMATON_HPP
#define BONDSIM_MAC_AUTOMATON_HPP

#include <cstdint>
#include <deque>
#include <functional>

#include "bondsim/core/engine.hpp"
#include "bondsim/core/rng.hpp"
#include "bondsim/mac/timings.hpp"
#include "bondsim/phy/frame.hpp"

namespace bondsim {

struct QueuedMessage {
  std::uint64_t msg_id = 0;
  MsgType type = MsgType::Bsm;
  int payload_bytes = 0;
  SimTime enqueue_time = 0;
};

enum class AutomatonState {
  Idle,               // no pending frame
  Defer,              // waiting AIFS/EIFS (or T) before countdown
  Countdown,          // decrementing once per idle slot
  Suspended,          // counter frozen, some watched channel busy
  Tx,                 // frame on air
  FallbackCountdown,  // BondBdFallback continuing on the primary alone
};
const char* automaton_state_name(AutomatonState s);

// Per-access-method backoff state machine. Fed with batched channel busy
// states and decode reports by its station; calls back when the counter hits
// zero so the station can arbitrate the shared radio.
//
// Countdown semantics: a fresh access on an idle channel waits AIFS and then
// counts one slot per sigma of idle time, transmitting at the boundary where
// the counter reaches zero (a zero draw transmits right after the wait). On
// resumption after a busy period the wait is AIFS or EIFS depending on
// whether the last busy period ended with a successfully decoded frame, and
// the counter additionally decrements once when that wait completes.
//
// A slot boundary or wait completion that coincides with a busy edge still
// fires: the decision uses the channel state strictly before the instant,
// which is what lets two stations draw the same slot and collide.
class AccessAutomaton {
 public:
  struct Hooks {
    // Counter reached zero; the station must respond by calling either
    // start_transmission() or lose_internal_collision() synchronously.
    std::function<void(SimTime)> on_tx_ready;
    // Optional trace sink: (time, automaton, note).
    std::function<void(SimTime, const AccessAutomaton&, const char*)> trace;
  };

  AccessAutomaton(Engine& engine, RngStream& rng, AccessMethod method, int cw,
                  ChannelId primary, const MacTimings& timings, Hooks hooks);

  // --- inputs -------------------------------------------------------------
  void enqueue(const QueuedMessage& msg);

  // Batched busy state of both channels after a medium mutation. Called only
  // when at least one channel changed.
  void on_channel_state(SimTime now, bool busy180, bool busy182);

  // A frame on the station's primary channel ended now and was decoded.
  void on_decode_ok(SimTime now);

  // Any transmission by this station's radio (either automaton) ended now.
  // Own frames resume with AIFS, like a decoded frame.
  void on_own_tx_end(SimTime now);

  // --- station responses to on_tx_ready ------------------------------------
  struct TxGrant {
    QueuedMessage msg;
    TxWidth width = TxWidth::Mhz10;
    SimTime access_start = 0;
  };
  TxGrant start_transmission(SimTime now);

  // Internal collision (both automata of one station hit zero at the same
  // slot boundary): the loser redraws its backoff from [0, CW] and waits for
  // the winner's transmission like any other busy period.
  void lose_internal_collision(SimTime now);

  // Called when this automaton's own frame leaves the air.
  void finish_transmission(SimTime now);

  // --- introspection --------------------------------------------------------
  AutomatonState state() const;
  AccessMethod method() const { return method_; }
  ChannelId primary() const { return primary_; }
  int backoff_counter() const { return counter_; }
  int cw() const { return cw_; }
  std::size_t queue_length() const { return queue_.size(); }
  bool fallen_back() const { return fallen_back_; }

  // Instant of the pending zero-crossing, or -1 when none is scheduled.
  SimTime scheduled_tx_time() const;

  // Width the automaton would use for a transmission granted at `now`
  // (BondN applies the PIFS check on the secondary here).
  TxWidth planned_width(SimTime now) const;

 private:
  struct ChannelMirror {
    bool busy = false;
    SimTime busy_since = 0;
    SimTime idle_since = 0;
  };

  enum class Wait { Aifs, Eifs };

  bool watches_secondary() const;
  bool watch_busy() const;
  SimTime secondary_idle_before(SimTime now) const;
  void begin_access(SimTime now);
  void start_wait(SimTime now, Wait w);
  void on_wait_done(SimTime now);
  void on_countdown_done(SimTime now);
  void suspend(SimTime now);
  Wait resume_wait_class(SimTime now) const;
  void become_ready(SimTime now);
  void trace(SimTime now, const char* what);

  Engine& engine_;
  RngStream& rng_;
  AccessMethod method_;
  int cw_;
  ChannelId primary_;
  ChannelId secondary_;
  MacTimings t_;
  Hooks hooks_;

  ChannelMirror mirror_[kNumChannels];
  bool watch_busy_ = false;

  AutomatonState state_ = AutomatonState::Idle;
  bool fallen_back_ = false;
  int counter_ = 0;
  bool in_progress_ = false;  // countdown begun for the current frame
  SimTime countdown_anchor_ = -1;
  SimTime wait_end_ = -1;
  SimTime ready_at_ = -1;
  EventHandle timer_;

  // AIFS/EIFS bookkeeping.
  SimTime last_ok_end_ = -1;              // decode-ok or own-tx end instant
  SimTime last_watch_idle_edge_ = -1;     // coalesces same-instant idle/busy flips
  bool episode_touched_secondary_ = false;
  bool episode_had_ok_ = false;

  std::deque<QueuedMessage> queue_;
  SimTime access_start_ = -1;
};

}  // namespace bondsim

#endif
