#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

#include "qcmap/coupling.hpp"

using namespace qcmap;

TEST_CASE("raw construction normalizes edges") {
  const CouplingGraph g(4, {{1, 0}, {0, 1}, {2, 1}, {1, 3}});
  REQUIRE(g.num_qubits() == 4);
  REQUIRE(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {1, 3}});
  REQUIRE(g.neighbors(1) == std::vector<int>{0, 2, 3});
  REQUIRE_THROWS_AS(CouplingGraph(3, {{0, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(CouplingGraph(3, {{0, 3}}), std::invalid_argument);
  REQUIRE_THROWS_AS(CouplingGraph(0, {}), std::invalid_argument);
}

TEST_CASE("distances on the star device") {
  const CouplingGraph g = CouplingGraph::t4();
  REQUIRE(g.connected());
  REQUIRE(g.dist(0, 0) == 0);
  REQUIRE(g.dist(0, 1) == 1);
  REQUIRE(g.adjacent(1, 3));
  REQUIRE(g.dist(0, 2) == 2);
  REQUIRE(g.dist(2, 3) == 2);
  REQUIRE_FALSE(g.adjacent(0, 3));
  REQUIRE_THROWS_AS(g.dist(0, 4), std::invalid_argument);
}

TEST_CASE("disconnected raw graphs report -1 distances") {
  const CouplingGraph g(4, {{0, 1}, {2, 3}});
  REQUIRE_FALSE(g.connected());
  REQUIRE(g.dist(0, 1) == 1);
  REQUIRE(g.dist(1, 2) == -1);
  REQUIRE(g.dist(0, 3) == -1);
}

TEST_CASE("from_edges insists on connectivity") {
  REQUIRE_THROWS_AS(CouplingGraph::from_edges(4, {{0, 1}, {2, 3}}), std::invalid_argument);
  REQUIRE_THROWS_AS(CouplingGraph::from_edges(3, {{0, 1}}), std::invalid_argument);
  REQUIRE_NOTHROW(CouplingGraph::from_edges(3, {{0, 1}, {1, 2}}));
}

TEST_CASE("lnn shape") {
  const CouplingGraph g = CouplingGraph::lnn(5);
  REQUIRE(g.num_qubits() == 5);
  REQUIRE(g.edges().size() == 4);
  REQUIRE(g.dist(0, 4) == 4);
  REQUIRE(g.middles(0, 2) == std::vector<int>{1});
  REQUIRE_THROWS_AS(CouplingGraph::lnn(1), std::invalid_argument);
}

TEST_CASE("grid shape and indexing") {
  const CouplingGraph g = CouplingGraph::grid(2, 3);
  REQUIRE(g.num_qubits() == 6);
  // 0 1 2 / 3 4 5: interior wire 4 touches 1, 3, 5.
  REQUIRE(g.neighbors(4) == std::vector<int>{1, 3, 5});
  REQUIRE(g.dist(0, 5) == 3);
  REQUIRE(g.middles(0, 4) == std::vector<int>{1, 3});
  REQUIRE_THROWS_AS(CouplingGraph::grid(1, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(CouplingGraph::grid(0, 3), std::invalid_argument);
}

TEST_CASE("middles lists every common neighbor ascending") {
  const CouplingGraph g = CouplingGraph::t4();
  REQUIRE(g.middles(0, 2) == std::vector<int>{1});
  REQUIRE(g.middles(2, 3) == std::vector<int>{1});
  REQUIRE(g.middles(0, 1).empty());
  REQUIRE(middles(g, 0, 3) == std::vector<int>{1});
}
