#ifndef BONDSIM_MAC_STATION_HPP
#define BONDSIM_MAC_STATION_HPP

#include <functional>
#include <memory>
#include <ostream>

#include "bondsim/core/engine.hpp"
#include "bondsim/core/rng.hpp"
#include "bondsim/mac/automaton.hpp"
#include "bondsim/phy/medium.hpp"

namespace bondsim {

// One radio entity. Roadside units run a single EDCA automaton; vehicles add
// a second automaton (the access method under study) for perception traffic.
// Both automata share the half-duplex radio: whichever transmits makes the
// other see its channels busy, and when both hit zero at the same slot
// boundary the service automaton transmits while the EDCA one redraws.
class Station : public MediumListener {
 public:
  Station(Engine& engine, Medium& medium, int id, ChannelId primary,
          RngStream& rng, const MacTimings& timings,
          int cw, AccessMethod service_method, bool with_service_automaton);

  int id() const { return id_; }
  ChannelId primary() const { return primary_; }

  void enqueue(MsgType type, int payload_bytes, std::uint64_t msg_id,
               SimTime now);

  // Fired right after a frame goes on air.
  std::function<void(const FrameTransmission&)> on_frame_sent;

  // Optional per-transition trace sink.
  void set_trace(std::ostream* sink) { trace_ = sink; }

  // MediumListener
  void on_channel_state(SimTime now, bool busy180, bool busy182) override;
  void on_decode_ok(SimTime now) override;
  void on_own_tx_end(SimTime now) override;
  void on_tx_complete(SimTime now) override;

  const AccessAutomaton& edca_automaton() const { return *slot_[0]; }
  const AccessAutomaton* service_automaton() const { return slot_[1].get(); }

 private:
  void on_tx_ready(int slot, SimTime now);

  Engine& engine_;
  Medium& medium_;
  int id_;
  ChannelId primary_;
  McsConfig mcs_;
  // slot 0: EDCA (safety traffic / RSU queue); slot 1: service automaton.
  std::unique_ptr<AccessAutomaton> slot_[2];
  int active_tx_slot_ = -1;
  std::ostream* trace_ = nullptr;
};

}  // namespace bondsim

#endif
