#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "usflab/errors.hpp"
#include "usflab/version.hpp"

namespace {

// Exit contract: 0 = pass, 1 = verification failure, 2 = usage or input
// error.  Scripts branch on these.
constexpr int kExitPass = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::string join_command_line(int argc, char** argv) {
  std::string joined;
  for (int i = 0; i < argc; ++i) {
    if (i) joined += ' ';
    joined += argv[i];
  }
  return joined;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace usflab::cli;

  CLI::App app{"uniform spanning tree/forest sampling toolkit"};
  app.set_version_flag("--version", std::string("usflab ") + usflab::kVersion);
  app.require_subcommand(1);

  GenerateConfig gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "write a network file for a named family");
  generate->add_option("--family", gen.family,
                       "grid | torus | canopy | glued-canopy | tree-ball | "
                       "boosted-tree")
      ->required();
  generate->add_option("--out", gen.out, "output network file")->required();
  generate->add_flag("--wired", gen.wired, "mark/build the wired boundary");
  generate->add_option("--seed", gen.seed, "seed (used by boosted-tree)");
  generate->add_option("--d", gen.dimension, "lattice dimension");
  generate->add_option("--side", gen.side, "lattice side length");
  generate->add_option("--n", gen.height, "tree height");
  generate->add_option("--radius", gen.radius, "tree-ball radius");
  generate->add_option("--k", gen.k, "canopy conductance base, rational");
  generate->add_option("--k1", gen.k1, "first glued base, rational");
  generate->add_option("--k2", gen.k2, "second glued base, rational");

  SampleConfig smp;
  CLI::App* sample = app.add_subcommand(
      "sample", "draw tree/forest samples from a network file");
  sample->add_option("--net", smp.net, "network file")->required();
  sample->add_option("--mode", smp.mode, "ust | wusf-trunc | fusf-trunc")
      ->required();
  sample->add_option("--samples", smp.samples, "number of samples");
  sample->add_option("--seed", smp.seed, "master seed");
  sample->add_option("--out", smp.out, "output directory")->required();

  StatsConfig sts;
  CLI::App* stats = app.add_subcommand(
      "stats", "per-component statistics of sampled forests as CSV");
  stats->add_option("--net", sts.net, "network file")->required();
  stats->add_option("--forest", sts.forests, "forest files, repeatable")
      ->required()
      ->expected(-1);
  stats->add_option("--out", sts.out, "output CSV file")->required();
  stats->add_option("--seed", sts.seed, "master seed for the frequency walks");
  stats->add_option("--walk-steps", sts.walk_steps,
                    "steps of the frequency walk per sample");
  stats->add_option("--start", sts.start, "start vertex of the walks");
  stats->add_option("--ends-radius", sts.ends_radius,
                    "largest radius K for the ends_lb_r0..rK columns");

  VerifyConfig ver;
  CLI::App* verify = app.add_subcommand(
      "verify", "run exact/statistical verification suites");
  verify->add_option("--suite", ver.suite,
                     "oracle | update | markov | mtp | all")
      ->required();
  verify->add_option("--fixtures", ver.fixtures, "fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunContext ctx{join_command_line(argc, argv)};
  try {
    if (*generate) run_generate(ctx, gen);
    if (*sample) run_sample(ctx, smp);
    if (*stats) run_stats(ctx, sts);
    if (*verify) {
      return run_verify(ctx, ver) == 0 ? kExitPass : kExitVerifyFailed;
    }
  } catch (const usflab::Error& e) {
    std::cerr << "usflab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "usflab: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitPass;
}
