#include "usflab/netio.hpp"

#include <gtest/gtest.h>

namespace usflab {
namespace {

TEST(NetworkFormat, CanonicalRoundTripIsByteIdentical) {
  Network tri(3, {{0, 1, 1}, {1, 2, 2}, {2, 0, Rational(7, 3)}});
  std::string text = serialize_network(tri);
  EXPECT_EQ(text,
            "network 3 3\n"
            "e 0 0 1 1/1\n"
            "e 1 1 2 2/1\n"
            "e 2 2 0 7/3\n");
  NetworkFile parsed = parse_network(text);
  EXPECT_FALSE(parsed.wired_vertex.has_value());
  EXPECT_EQ(serialize_network(parsed.network), text);

  std::string wired_text = serialize_network(tri, VertexId{2});
  NetworkFile wired = parse_network(wired_text);
  ASSERT_TRUE(wired.wired_vertex.has_value());
  EXPECT_EQ(*wired.wired_vertex, 2u);
  EXPECT_EQ(serialize_network(wired.network, wired.wired_vertex), wired_text);
}

TEST(NetworkFormat, SkipsCommentsAndBlankLines) {
  std::string text =
      "# generated by hand\n"
      "\n"
      "network 2 1\n"
      "# middle comment\n"
      "e 0 0 1 3/4\n";
  NetworkFile parsed = parse_network(text);
  EXPECT_EQ(parsed.network.edge(0).conductance, Rational(3, 4));
}

TEST(NetworkFormat, HeaderLinesBecomeComments) {
  Network net(2, {{0, 1, 1}});
  std::string text = serialize_network(net, {}, "tool x\ncmd y");
  EXPECT_EQ(text.rfind("# tool x\n# cmd y\nnetwork 2 1\n", 0), 0u);
  EXPECT_EQ(serialize_network(parse_network(text).network),
            serialize_network(net));
}

TEST(NetworkFormat, RejectsMalformedInput) {
  auto expect_parse_error = [](const std::string& text) {
    try {
      parse_network(text);
      FAIL() << "accepted: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::parse_error) << text;
    }
  };
  expect_parse_error("");
  expect_parse_error("network 2\n");
  expect_parse_error("network 2 1\ne 1 0 1 1/1\n");        // id not dense
  expect_parse_error("network 2 1\ne 0 0 1 1/0\n");        // zero denominator
  expect_parse_error("network 2 1\ne 0 0 1 1/1\njunk\n");  // trailing garbage
  expect_parse_error("network 2 2\ne 0 0 1 1/1\n");        // fewer edges

  // Structural problems surface as their own codes, not parse errors.
  try {
    parse_network("network 3 1\ne 0 0 1 1/1\n");
    FAIL() << "disconnected network accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::disconnected_network);
  }
  try {
    parse_network("network 2 1\ne 0 0 1 1/1\nwired 5\n");
    FAIL() << "out-of-range wired vertex accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_vertex);
  }
}

TEST(WiredView, ValidatesWiredVertex) {
  NetworkFile file = parse_network(
      "network 3 3\ne 0 0 1 1/1\ne 1 1 2 1/1\ne 2 0 2 1/1\nwired 2\n");
  WiredNetwork w = make_wired_view(file.network, *file.wired_vertex);
  EXPECT_EQ(w.wired_vertex, 2u);
  EXPECT_EQ(w.interior, (std::vector<VertexId>{0, 1}));

  Network loop_at_2(3, {{0, 1, 1}, {1, 2, 1}, {2, 2, 1}});
  try {
    make_wired_view(loop_at_2, 2);
    FAIL() << "self-loop at wired vertex accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_edge);
  }
}

TEST(ForestFormat, RoundTripWithParents) {
  ForestFile forest;
  forest.edges = {0, 2, 5};
  forest.parents = {{0, {2, false}}, {1, {0, true}}, {3, {5, true}}};
  std::string text = serialize_forest(forest);
  EXPECT_EQ(text,
            "forest 3\n"
            "f 0\n"
            "f 2\n"
            "f 5\n"
            "p 0 2 0\n"
            "p 1 0 1\n"
            "p 3 5 1\n");
  ForestFile parsed = parse_forest(text);
  EXPECT_EQ(parsed.edges, forest.edges);
  ASSERT_EQ(parsed.parents.size(), 3u);
  EXPECT_EQ(parsed.parents[0].second, (OrientedEdge{2, false}));
  EXPECT_EQ(serialize_forest(parsed), text);
}

TEST(ForestFormat, EnforcesAscendingRows) {
  EXPECT_THROW(parse_forest("forest 2\nf 3\nf 1\n"), Error);
  EXPECT_THROW(parse_forest("forest 1\nf 0\np 2 0 1\np 1 0 1\n"), Error);
  EXPECT_THROW(parse_forest("forest 1\nf 0\np 1 0 2\n"), Error);
}

}  // namespace
}  // namespace usflab
