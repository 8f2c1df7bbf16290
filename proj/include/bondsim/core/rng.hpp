#ifndef BONDSIM_CORE_RNG_HPP
#define BONDSIM_CORE_RNG_HPP

#include <cstdint>
#include <random>

namespace bondsim {

// Seeded random stream. One stream per station plus one for topology, so
// adding a station never perturbs the draws of existing stations.
//
// mt19937_64 is fully specified by the standard; the uniform draws below are
// implemented here (not via std::uniform_int_distribution, whose output is
// implementation-defined) so that identical (seed, stream_id) gives identical
// sequences on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64() { return gen_(); }

  // Unbiased uniform integer in [0, bound). bound must be >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform double in [lo, hi), 53-bit resolution.
  double uniform_real(double lo, double hi);

 private:
  std::mt19937_64 gen_;
};

}  // namespace bondsim

#endif
