#ifndef BONDSIM_PHY_FRAME_HPP
#define BONDSIM_PHY_FRAME_HPP

#include <cstdint>

#include "bondsim/core/time.hpp"

namespace bondsim {

// The two adjacent ITS channels retained for DSRC in the upper 5.9 GHz band.
enum class ChannelId : int {
  Ch180 = 0,  // 5.895-5.905 GHz, center 5.900 GHz
  Ch182 = 1,  // 5.905-5.915 GHz, center 5.910 GHz
};
constexpr int kNumChannels = 2;

constexpr int channel_index(ChannelId c) { return static_cast<int>(c); }
constexpr ChannelId other_channel(ChannelId c) {
  return c == ChannelId::Ch180 ? ChannelId::Ch182 : ChannelId::Ch180;
}
const char* channel_name(ChannelId c);

enum class MsgType : int { Bsm = 0, Cpm = 1, SpatMap = 2, Wsa = 3 };
constexpr int kNumMsgTypes = 4;
const char* msg_type_name(MsgType m);

enum class TxWidth : int { Mhz10 = 10, Mhz20 = 20 };

// One on-air frame. A 10 MHz frame occupies {primary}; a 20 MHz frame
// occupies both channels with the transmit power split across them.
struct FrameTransmission {
  int sender = -1;
  std::uint64_t msg_id = 0;
  MsgType type = MsgType::Bsm;
  ChannelId primary = ChannelId::Ch180;
  TxWidth width = TxWidth::Mhz10;
  SimTime start = 0;
  SimTime duration = 0;
  int payload_bytes = 0;
  SimTime enqueue_time = 0;
  SimTime access_start = 0;  // instant the frame reached the head of its queue

  SimTime end() const { return start + duration; }
  bool occupies(ChannelId c) const {
    return width == TxWidth::Mhz20 || c == primary;
  }
};

}  // namespace bondsim

#endif
