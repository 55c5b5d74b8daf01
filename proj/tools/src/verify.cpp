#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "usflab/errors.hpp"
#include "usflab/exact.hpp"
#include "usflab/netio.hpp"
#include "usflab/sampler.hpp"
#include "usflab/stats.hpp"
#include "usflab/update.hpp"

namespace usflab::cli {

namespace {

// The enumerable fixtures every statistical and exact check runs against.
constexpr const char* kSmallFixtures[] = {
    "triangle", "wtriangle", "k4", "parallel2", "wcycle4"};
constexpr const char* kWiredFixture = "grid2x2_wired";
constexpr const char* kExtraFixtures[] = {"canopy_2_3", "glued_canopy_1_3_4"};

// Pinned sampling parameters: the suite is deterministic end to end.
constexpr std::uint64_t kGofSamples = 20000;
constexpr std::uint64_t kGofSeedBase = 0x5eedf0f0;
constexpr double kGofMinP = 1e-3;

struct Reporter {
  int failures = 0;
  int checks = 0;

  void record(bool ok, const std::string& suite, const std::string& check,
              const std::string& subject, const std::string& detail = "") {
    ++checks;
    if (!ok) ++failures;
    std::cout << (ok ? "PASS " : "FAIL ") << suite << ' ' << check << ' '
              << subject;
    if (!detail.empty()) std::cout << " (" << detail << ')';
    std::cout << '\n';
  }
};

NetworkFile load_fixture(const std::filesystem::path& dir,
                         const std::string& name) {
  std::filesystem::path path = dir / (name + ".net");
  if (!std::filesystem::exists(path)) {
    raise(Errc::fixture_missing, "missing fixture " + path.string());
  }
  return load_network(path);
}

std::string format_p(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "p=%.6g", p);
  return buffer;
}

// --- oracle: sampler and electrical identities against enumeration ---------

void suite_oracle(Reporter& report, const std::filesystem::path& dir) {
  std::uint64_t fixture_index = 0;
  for (const char* name : kSmallFixtures) {
    Network net = load_fixture(dir, name).network;
    ExactTreeDistribution dist = enumerate_spanning_trees(net);

    // Edge marginals: Kirchhoff (conductance times effective resistance)
    // against the enumeration mass of trees containing the edge.
    bool marginals_ok = true;
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      Rational by_mass = 0;
      for (const WeightedTree& t : dist.trees()) {
        if (std::binary_search(t.edges.begin(), t.edges.end(), e)) {
          by_mass += t.weight;
        }
      }
      by_mass /= dist.total_weight();
      if (ust_edge_marginal(net, e) != by_mass) marginals_ok = false;
    }
    report.record(marginals_ok, "oracle", "marginal", name);

    // Direction law: the first tree-path edge out of a vertex carries
    // exactly the unit current through that edge.
    bool direction_ok = true;
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      OrientedEdge oe{e, true};
      auto law = direction_distribution(net, oe);
      CurrentFlow flow = unit_current_flow(net, oe);
      Rational sum = 0;
      for (const auto& [cand, prob] : law) {
        if (prob != flow.through(net, cand)) direction_ok = false;
        sum += prob;
      }
      if (sum != 1) direction_ok = false;
    }
    report.record(direction_ok, "oracle", "direction-current", name);

    // Seeded Wilson batch against the exact law.
    EmpiricalDistribution counts;
    RngHandle master(kGofSeedBase + fixture_index);
    for (std::uint64_t i = 0; i < kGofSamples; ++i) {
      RngHandle rng = master.substream(i);
      counts.add(wilson_ust(net, rng).edges());
    }
    GofResult gof = chi_square_gof(counts, dist);
    report.record(gof.p_value > kGofMinP, "oracle", "chi-square", name,
                  format_p(gof.p_value));
    ++fixture_index;
  }
}

// --- update: one-site updates leave the exact law invariant ----------------

void suite_update(Reporter& report, const std::filesystem::path& dir) {
  for (const char* name : kSmallFixtures) {
    Network net = load_fixture(dir, name).network;
    ExactTreeDistribution dist = enumerate_spanning_trees(net);
    bool ok = true;
    for (VertexId v = 0; v < net.vertex_count(); ++v) {
      if (!exact_update_pushforward(net, v).same_distribution(dist)) {
        ok = false;
      }
    }
    report.record(ok, "update", "stationary", name);
  }

  NetworkFile wired = load_fixture(dir, kWiredFixture);
  if (!wired.wired_vertex) {
    raise(Errc::fixture_missing,
          std::string(kWiredFixture) + " lacks its wired vertex");
  }
  WiredNetwork wnet = make_wired_view(wired.network, *wired.wired_vertex);
  ExactTreeDistribution wdist = enumerate_spanning_trees(wnet.network);
  bool ok = true;
  for (VertexId v : wnet.interior) {
    if (!exact_update_pushforward(wnet, v).same_distribution(wdist)) {
      ok = false;
    }
  }
  report.record(ok, "update", "stationary-wired", kWiredFixture);
}

// --- markov: conditioning = contract/delete plus an independent sample -----

// Route B of the spatial Markov check: spanning trees of (G - H)/F pushed
// back through the minor's edge map, with the required edges re-attached.
std::optional<ExactTreeDistribution> minor_route(const Network& net,
                                                 const std::vector<EdgeId>& required,
                                                 const std::vector<EdgeId>& forbidden) {
  std::optional<DerivedNetwork> minor;
  try {
    minor = graph_minor(net, forbidden, required);
  } catch (const Error&) {
    return std::nullopt;  // degenerate event; route A must agree it is null
  }
  ExactTreeDistribution quotient = enumerate_spanning_trees(minor->network);
  std::vector<WeightedTree> pushed;
  pushed.reserve(quotient.trees().size());
  for (const WeightedTree& t : quotient.trees()) {
    TreeKey key = required;
    for (EdgeId q : t.edges) key.push_back(minor->edge_origin[q]);
    std::sort(key.begin(), key.end());
    pushed.push_back({std::move(key), t.weight});
  }
  return ExactTreeDistribution{std::move(pushed)};
}

void suite_markov(Reporter& report, const std::filesystem::path& dir) {
  for (const char* name : kSmallFixtures) {
    Network net = load_fixture(dir, name).network;
    EdgeId m = EdgeId(net.edge_count());

    // Every (required, forbidden) pair with up to two pinned edges total.
    std::vector<std::pair<std::vector<EdgeId>, std::vector<EdgeId>>> events;
    events.push_back({{}, {}});
    for (EdgeId e = 0; e < m; ++e) {
      events.push_back({{e}, {}});
      events.push_back({{}, {e}});
      for (EdgeId f = 0; f < m; ++f) {
        if (f != e) events.push_back({{e}, {f}});
        if (f > e) {
          events.push_back({{e, f}, {}});
          events.push_back({{}, {e, f}});
        }
      }
    }

    bool ok = true;
    std::size_t live = 0;
    for (const auto& [required, forbidden] : events) {
      std::optional<ExactTreeDistribution> conditioned;
      try {
        conditioned = exact_conditioned_distribution(net, required, forbidden);
      } catch (const Error& e) {
        if (e.code() != Errc::null_conditioning_event) throw;
      }
      std::optional<ExactTreeDistribution> pushed =
          minor_route(net, required, forbidden);
      if (conditioned.has_value() != pushed.has_value()) {
        ok = false;  // one route thinks the event is possible, the other not
      } else if (conditioned &&
                 !conditioned->same_distribution(*pushed)) {
        ok = false;
      }
      if (conditioned) ++live;
    }
    report.record(ok, "markov", "conditioning-minor", name,
                  std::to_string(live) + " live events of " +
                      std::to_string(events.size()));
  }
}

// --- mtp: finite mass-transport identity and walk reversibility ------------

void suite_mtp(Reporter& report, const std::filesystem::path& dir) {
  std::vector<std::string> names(std::begin(kSmallFixtures),
                                 std::end(kSmallFixtures));
  names.push_back(kWiredFixture);
  names.insert(names.end(), std::begin(kExtraFixtures),
               std::end(kExtraFixtures));

  for (const std::string& name : names) {
    Network net = load_fixture(dir, name).network;

    Transport identity = [](const Network&, VertexId u, VertexId v) {
      return Rational(u == v ? 1 : 0);
    };
    Transport adjacency = [](const Network& n, VertexId u, VertexId v) {
      Rational total = 0;
      for (OrientedEdge oe : n.incident(u)) {
        if (n.head(oe) == v) total += n.edge(oe.id).conductance;
      }
      return total;
    };
    // Deliberately asymmetric: all mass goes to the lowest-id neighbor.
    Transport favorite = [](const Network& n, VertexId u, VertexId v) {
      VertexId lowest = kNoVertex;
      for (OrientedEdge oe : n.incident(u)) {
        lowest = std::min(lowest, n.head(oe));
      }
      return Rational(v == lowest ? 1 : 0);
    };

    bool ok = true;
    for (const Transport& transport : {identity, adjacency, favorite}) {
      MtpResult result = mtp_check(net, transport);
      if (result.sent != result.received) ok = false;
    }
    report.record(ok, "mtp", "transport", name);
    report.record(reversibility_check(net) == 0, "mtp", "reversibility", name);
  }
}

}  // namespace

int run_verify(const RunContext& ctx, const VerifyConfig& cfg) {
  (void)ctx;  // verification reports to stdout; nothing else to stamp
  if (!std::filesystem::is_directory(cfg.fixtures)) {
    raise(Errc::fixture_missing,
          "fixture directory " + cfg.fixtures.string() + " not found");
  }

  bool all = cfg.suite == "all";
  if (!all && cfg.suite != "oracle" && cfg.suite != "update" &&
      cfg.suite != "markov" && cfg.suite != "mtp") {
    raise(Errc::bad_params, "unknown suite '" + cfg.suite + "'");
  }

  // Suites run one after another on purpose: the report order is part of the
  // deterministic output.
  Reporter report;
  if (all || cfg.suite == "oracle") suite_oracle(report, cfg.fixtures);
  if (all || cfg.suite == "update") suite_update(report, cfg.fixtures);
  if (all || cfg.suite == "markov") suite_markov(report, cfg.fixtures);
  if (all || cfg.suite == "mtp") suite_mtp(report, cfg.fixtures);

  std::cout << "verify " << cfg.suite << ": " << report.checks << " checks, "
            << report.failures << " failures\n";
  return report.failures;
}

}  // namespace usflab::cli
