#include "relkit/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace relkit {

int effective_threads(const Config& cfg) {
  if (cfg.threads > 0) return std::min(cfg.threads, 64);
  if (const char* env = std::getenv("RELKIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(std::min(v, 64L));
  }
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(hw, 1, 8);
}

}  // namespace relkit
