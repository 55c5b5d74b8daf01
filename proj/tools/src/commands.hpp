#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace usflab::cli {

// Everything a command needs to echo into output headers.
struct RunContext {
  std::string command_line;  // argv joined verbatim
};

struct GenerateConfig {
  std::string family;
  std::filesystem::path out;
  bool wired = false;
  std::uint64_t seed = 0;
  int dimension = 2;
  int side = 0;
  int height = 0;
  int radius = -1;  // negative until --radius is given
  std::string k = "1";
  std::string k1 = "1";
  std::string k2 = "1";
};

struct SampleConfig {
  std::filesystem::path net;
  std::filesystem::path out;
  std::string mode;  // ust | wusf-trunc | fusf-trunc
  std::uint64_t seed = 0;
  std::uint64_t samples = 1;
};

struct StatsConfig {
  std::filesystem::path net;
  std::vector<std::filesystem::path> forests;
  std::filesystem::path out;
  std::uint64_t seed = 0;
  std::uint64_t walk_steps = 100000;
  std::uint64_t start = 0;
  std::uint64_t ends_radius = 3;
};

struct VerifyConfig {
  std::string suite;  // oracle | update | markov | mtp | all
  std::filesystem::path fixtures = "fixtures";
};

void run_generate(const RunContext& ctx, const GenerateConfig& cfg);
void run_sample(const RunContext& ctx, const SampleConfig& cfg);
void run_stats(const RunContext& ctx, const StatsConfig& cfg);
// Returns the number of failed checks; the caller turns that into exit 1.
int run_verify(const RunContext& ctx, const VerifyConfig& cfg);

// Header block for output files: tool version, exact command, seed, plus any
// extra lines the command wants to pin.
std::string header_text(const RunContext& ctx, std::uint64_t seed,
                        const std::vector<std::string>& extra = {});

// Number of worker threads: USFLAB_THREADS when set (minimum 1), otherwise
// the hardware concurrency.
unsigned worker_threads();

}  // namespace usflab::cli
