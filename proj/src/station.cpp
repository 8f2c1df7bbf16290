#include "bondsim/mac/station.hpp"

#include "bondsim/core/check.hpp"
#include "bondsim/phy/params.hpp"

namespace bondsim {

Station::Station(Engine& engine, Medium& medium, int id, ChannelId primary,
                 RngStream& rng, const MacTimings& timings, int cw,
                 AccessMethod service_method, bool with_service_automaton)
    : engine_(engine),
      medium_(medium),
      id_(id),
      primary_(primary),
      mcs_(medium.mcs()) {
  auto make = [&](int slot, AccessMethod m) {
    AccessAutomaton::Hooks hooks;
    hooks.on_tx_ready = [this, slot](SimTime now) { on_tx_ready(slot, now); };
    hooks.trace = [this, slot](SimTime now, const AccessAutomaton& a,
                               const char* what) {
      if (trace_) {
        (*trace_) << now << " sta " << id_ << " slot " << slot << " " << what
                  << " state=" << automaton_state_name(a.state())
                  << " counter=" << a.backoff_counter() << "\n";
      }
    };
    return std::make_unique<AccessAutomaton>(engine_, rng, m, cw, primary_,
                                             timings, std::move(hooks));
  };
  slot_[0] = make(0, AccessMethod::Edca);
  if (with_service_automaton) slot_[1] = make(1, service_method);
}

void Station::enqueue(MsgType type, int payload_bytes, std::uint64_t msg_id,
                      SimTime now) {
  const int slot = (slot_[1] && type == MsgType::Cpm) ? 1 : 0;
  slot_[slot]->enqueue(QueuedMessage{msg_id, type, payload_bytes, now});
}

void Station::on_channel_state(SimTime now, bool busy180, bool busy182) {
  slot_[0]->on_channel_state(now, busy180, busy182);
  if (slot_[1]) slot_[1]->on_channel_state(now, busy180, busy182);
}

void Station::on_decode_ok(SimTime now) {
  slot_[0]->on_decode_ok(now);
  if (slot_[1]) slot_[1]->on_decode_ok(now);
}

void Station::on_own_tx_end(SimTime now) {
  slot_[0]->on_own_tx_end(now);
  if (slot_[1]) slot_[1]->on_own_tx_end(now);
}

void Station::on_tx_complete(SimTime now) {
  check(active_tx_slot_ >= 0, "tx completion without an active transmission");
  const int slot = active_tx_slot_;
  active_tx_slot_ = -1;
  slot_[slot]->finish_transmission(now);
}

void Station::on_tx_ready(int slot, SimTime now) {
  // Internal collision handling: the service automaton wins a simultaneous
  // zero; the safety automaton redraws its backoff.
  if (slot == 0 && slot_[1] && slot_[1]->scheduled_tx_time() == now) {
    slot_[0]->lose_internal_collision(now);
    return;
  }
  if (medium_.transmitting(id_)) {
    // The sibling started its frame at this same instant.
    slot_[slot]->lose_internal_collision(now);
    return;
  }

  auto grant = slot_[slot]->start_transmission(now);
  FrameTransmission frame;
  frame.sender = id_;
  frame.msg_id = grant.msg.msg_id;
  frame.type = grant.msg.type;
  frame.primary = primary_;
  frame.width = grant.width;
  frame.start = now;
  frame.payload_bytes = grant.msg.payload_bytes;
  frame.duration = frame_duration_us(grant.msg.payload_bytes, grant.width, mcs_);
  frame.enqueue_time = grant.msg.enqueue_time;
  frame.access_start = grant.access_start;
  active_tx_slot_ = slot;
  medium_.start_frame(frame);
  if (on_frame_sent) on_frame_sent(frame);
}

}  // namespace bondsim
