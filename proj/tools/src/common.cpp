#include "commands.hpp"

#include <cstdlib>
#include <thread>

#include "usflab/version.hpp"

namespace usflab::cli {

std::string header_text(const RunContext& ctx, std::uint64_t seed,
                        const std::vector<std::string>& extra) {
  std::string text = "usflab ";
  text += kVersion;
  text += "\ncommand: ";
  text += ctx.command_line;
  text += "\nseed: ";
  text += std::to_string(seed);
  for (const std::string& line : extra) {
    text += '\n';
    text += line;
  }
  return text;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("USFLAB_THREADS")) {
    long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return unsigned(parsed);
    return 1;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace usflab::cli
