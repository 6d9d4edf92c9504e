#include "fsgrid/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace fsgrid {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FSGRID_WORKERS")) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
    if (ec == std::errc{} && ptr == env + std::strlen(env) && v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace fsgrid
