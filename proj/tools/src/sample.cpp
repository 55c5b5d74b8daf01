#include "commands.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "usflab/errors.hpp"
#include "usflab/netio.hpp"
#include "usflab/sampler.hpp"
#include "usflab/stats.hpp"

namespace usflab::cli {

namespace {

std::string sample_file_name(std::uint64_t index) {
  std::string digits = std::to_string(index);
  std::string name = "sample_";
  name.append(digits.size() < 6 ? 6 - digits.size() : 0, '0');
  name += digits;
  name += ".forest";
  return name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::bad_params, "cannot write " + path.string());
  out << text;
}

struct SampleResult {
  std::string text;        // serialized forest file
  std::uint64_t edges = 0;
  std::size_t components = 1;
};

}  // namespace

void run_sample(const RunContext& ctx, const SampleConfig& cfg) {
  if (cfg.samples < 1) raise(Errc::bad_params, "--samples must be positive");
  NetworkFile file = load_network(cfg.net);

  bool wired_mode = cfg.mode == "wusf-trunc";
  if (!wired_mode && cfg.mode != "ust" && cfg.mode != "fusf-trunc") {
    raise(Errc::bad_params, "unknown mode '" + cfg.mode + "'");
  }
  std::optional<WiredNetwork> wnet;
  if (wired_mode) {
    if (!file.wired_vertex) {
      raise(Errc::missing_wired_vertex,
            cfg.net.string() + " has no wired vertex");
    }
    wnet = make_wired_view(file.network, *file.wired_vertex);
  }
  const Network& net = wired_mode ? wnet->network : file.network;

  std::filesystem::create_directories(cfg.out);
  RngHandle master(cfg.seed);

  // Each sample runs on its own seed substream, so the batch decomposes over
  // workers with no shared state and the output does not depend on the
  // thread count.
  std::vector<SampleResult> results(cfg.samples);
  std::atomic<std::uint64_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto run_slots = [&]() {
    for (std::uint64_t i = cursor.fetch_add(1); i < cfg.samples;
         i = cursor.fetch_add(1)) {
      RngHandle rng = master.substream(i);
      std::vector<std::string> extra{"sample: " + std::to_string(i),
                                     "mode: " + cfg.mode};
      ForestFile forest;
      SampleResult& slot = results[i];
      if (wired_mode) {
        BoundaryForest sample = sample_wusf_truncation(*wnet, rng);
        forest.edges = sample.edges();
        for (VertexId v : wnet->interior) {
          forest.parents.emplace_back(v, sample.parent(v));
        }
        slot.components = forest_components(sample).count();
      } else {
        SpanningTree sample = cfg.mode == "ust"
                                  ? wilson_ust(net, rng)
                                  : sample_fusf_truncation(net, rng);
        forest.edges = sample.edges();
        slot.components = 1;
      }
      slot.edges = forest.edges.size();
      slot.text = serialize_forest(forest, header_text(ctx, cfg.seed, extra));
    }
  };
  auto worker = [&]() {
    try {
      run_slots();
    } catch (...) {
      std::scoped_lock hold(failure_lock);
      if (!failure) failure = std::current_exception();
    }
  };

  unsigned nthreads = worker_threads();
  if (nthreads > cfg.samples) nthreads = unsigned(cfg.samples);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  // Files and manifest are written in index order after the fact, so the
  // directory contents are byte-identical however the batch was scheduled.
  std::string manifest;
  std::string head = header_text(ctx, cfg.seed,
                                 {"samples: " + std::to_string(cfg.samples)});
  std::size_t pos = 0;
  while (pos <= head.size()) {
    std::size_t eol = head.find('\n', pos);
    if (eol == std::string::npos) eol = head.size();
    manifest += "# ";
    manifest.append(head, pos, eol - pos);
    manifest += '\n';
    pos = eol + 1;
  }
  manifest += "sample,file,edges,components\n";
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    std::string name = sample_file_name(i);
    write_text(cfg.out / name, results[i].text);
    manifest += std::to_string(i);
    manifest += ',';
    manifest += name;
    manifest += ',';
    manifest += std::to_string(results[i].edges);
    manifest += ',';
    manifest += std::to_string(results[i].components);
    manifest += '\n';
  }
  write_text(cfg.out / "manifest.csv", manifest);
}

}  // namespace usflab::cli
