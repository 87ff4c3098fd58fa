#include "duo/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace duo {

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  const char* env = std::getenv("DUO_EMBED_THREADS");
  if (!env || !*env) return hw;
  int v = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
  if (ec != std::errc() || v <= 0) return hw;
  return v;
}

}  // namespace duo
