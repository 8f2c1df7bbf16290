#ifndef BONDSIM_CORE_CHECK_HPP
#define BONDSIM_CORE_CHECK_HPP

#include <stdexcept>

namespace bondsim {

// Internal-defect check; stays armed in release builds.
inline void check(bool cond, const char* msg) {
  if (!cond) throw std::logic_error(msg);
}

}  // namespace bondsim

#endif
