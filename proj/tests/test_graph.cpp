#include <doctest.h>

#include "extremal/graph.hpp"

using namespace extremal;

TEST_CASE("parsing and validation") {
  SimpleGraph k2 = parse_graph("2\n0-1");
  CHECK(k2.n() == 2);
  CHECK(k2.edges().size() == 1);

  SimpleGraph k3 = parse_graph("3\n0-1,1-2,0-2");
  CHECK(k3.edges().size() == 3);

  CHECK_THROWS_AS(parse_graph("3\n0-1"), DisconnectedError);
  CHECK_THROWS_AS(parse_graph("2\n0-0,0-1"), LoopError);
  CHECK_THROWS_AS(parse_graph("2\nxyz"), ParseError);
  CHECK_THROWS_AS(parse_graph("2\n0-5"), ParseError);

  std::vector<std::string> warnings;
  SimpleGraph g = parse_graph("2\n0-1,1-0", &warnings);
  CHECK(g.edges().size() == 1);
  CHECK(warnings.size() == 1);
}

TEST_CASE("complete graphs") {
  CHECK(complete_graph(5).edges().size() == 10);
  CHECK(complete_graph(2).edges().size() == 1);
  CHECK(complete_graph(1).edges().size() == 0);  // single vertex is connected
}

TEST_CASE("nonedges") {
  CHECK(complete_graph(5).nonedges().empty());
  SimpleGraph path = parse_graph("3\n0-1,1-2");
  CHECK(path.nonedges() == std::vector<std::pair<int, int>>{{0, 2}});
  SimpleGraph star = parse_graph("4\n0-1,0-2,0-3");
  CHECK(star.nonedges() == std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("serialize round-trip and edge counting") {
  for (const char* txt : {"2\n0-1", "4\n0-1,1-2,2-3", "5\n0-1,0-2,0-3,0-4,1-2"}) {
    SimpleGraph g = parse_graph(txt);
    SimpleGraph h = parse_graph(g.serialize());
    CHECK(g.serialize() == h.serialize());
    int n = g.n();
    CHECK(static_cast<int>(g.edges().size() + g.nonedges().size()) == n * (n - 1) / 2);
  }
}

TEST_CASE("permutation relabels edges") {
  SimpleGraph path = parse_graph("3\n0-1,1-2");
  SimpleGraph p2 = permute_graph(path, {2, 1, 0});
  CHECK(p2.adjacent(0, 1));
  CHECK(p2.adjacent(1, 2));
  CHECK(!p2.adjacent(0, 2));
}
