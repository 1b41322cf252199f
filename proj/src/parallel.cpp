#include "rispace/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rispace {

std::size_t worker_count() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    const std::string_view s(env);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || n == 0) {
      throw std::invalid_argument(std::string(kWorkersEnv) + " must be a positive integer, got '" +
                                  std::string(s) + "'");
    }
    return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace rispace
