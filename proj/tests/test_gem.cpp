#include <catch2/catch_amalgamated.hpp>

#include "gemcalc/gem.hpp"
#include "gemcalc/io.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gemcalc;

namespace {

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return static_cast<int>(r);
}

}  // namespace

TEST_CASE("gem construction validates involutions") {
  Gem s3 = standard_crystallization(3);
  REQUIRE(s3.order() == 2);
  REQUIRE(s3.dimension() == 3);
  for (Colour c = 0; c <= 3; ++c) REQUIRE(s3.neighbour(c, 1) == 2);

  SECTION("loops are rejected") {
    std::vector<std::vector<Vertex>> tables = {{1, 2}, {2, 1}, {2, 1}, {2, 1}};
    REQUIRE(error_kind([&] { Gem(3, 2, tables); }) == Error::Kind::InvalidInvolution);
  }
  SECTION("non-mutual tables are rejected") {
    std::vector<std::vector<Vertex>> tables = {{2, 3, 4, 1}, {2, 1, 4, 3}, {2, 1, 4, 3}, {2, 1, 4, 3}};
    REQUIRE(error_kind([&] { Gem(3, 4, tables); }) == Error::Kind::InvalidInvolution);
  }
  SECTION("wrong table shapes are rejected") {
    std::vector<std::vector<Vertex>> tables = {{2, 1}, {2, 1}, {2, 1}};
    REQUIRE(error_kind([&] { Gem(3, 2, tables); }) == Error::Kind::BadArity);
    std::vector<std::vector<Vertex>> short_row = {{2, 1}, {2, 1}, {2, 1}, {2}};
    REQUIRE(error_kind([&] { Gem(3, 2, short_row); }) == Error::Kind::BadArity);
    REQUIRE(error_kind([&] { standard_crystallization(0); }) == Error::Kind::BadArity);
  }
  SECTION("Q4 validates by direct involution check") {
    Gem q4 = load_fixture("q4.gem");
    for (Colour c = 0; c <= 3; ++c)
      for (Vertex v = 1; v <= 4; ++v) {
        REQUIRE(q4.neighbour(c, q4.neighbour(c, v)) == v);
        REQUIRE(q4.neighbour(c, v) != v);
      }
  }
}

TEST_CASE("residues partition the vertex set") {
  Gem s3 = standard_crystallization(3);
  Gem q4 = load_fixture("q4.gem");

  REQUIRE(residues(s3, ColourSet{0, 1}).blocks == std::vector<std::vector<Vertex>>{{1, 2}});
  REQUIRE(residues(q4, ColourSet{0, 1}).blocks == std::vector<std::vector<Vertex>>{{1, 2}, {3, 4}});
  REQUIRE(residues(q4, ColourSet{0, 2}).blocks == std::vector<std::vector<Vertex>>{{1, 2, 3, 4}});
  REQUIRE(residues(q4, ColourSet{}).count() == 4);

  REQUIRE(residue_of(q4, ColourSet{0, 1}, 1) == std::vector<Vertex>{1, 2});
  REQUIRE(residue_of(q4, ColourSet{}, 3) == std::vector<Vertex>{3});
  REQUIRE(residue_of(s3, ColourSet{0, 1, 2}, 2) == std::vector<Vertex>{1, 2});

  REQUIRE(error_kind([&] { residues(q4, ColourSet{5}); }) == Error::Kind::BadColour);

  SECTION("agrees with the union-find oracle on random gems") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      int n = 2 + oracle::pick(rng, 3);
      int p = 2 * (2 + oracle::pick(rng, 5));
      Gem g = oracle::random_gem(rng, n, p);
      std::uint32_t mask = static_cast<std::uint32_t>(oracle::pick(rng, 1 << (n + 1)));
      ColourSet b = ColourSet::from_bits(mask);
      REQUIRE(residues(g, b).blocks == oracle::uf_components(g, b));
    }
  }
}

TEST_CASE("f-vector and Euler characteristic") {
  Gem s2 = standard_crystallization(2);
  REQUIRE(f_vector(s2) == std::vector<long long>{3, 3, 2});
  REQUIRE(euler_characteristic(s2) == 2);

  SECTION("standard crystallizations have binomial f-vectors") {
    for (int n = 2; n <= 4; ++n) {
      Gem s = standard_crystallization(n);
      std::vector<long long> f = f_vector(s);
      for (int i = 0; i < n; ++i) REQUIRE(f[i] == binomial(n + 1, i + 1));
      REQUIRE(f[n] == 2);
    }
  }
  SECTION("Q4's vertex count comes from its hat-residues") {
    Gem q4 = load_fixture("q4.gem");
    long long expected = 0;
    for (Colour c = 0; c <= 3; ++c)
      expected += static_cast<long long>(
          oracle::uf_components(q4, ColourSet::hat(c, 3)).size());
    REQUIRE(f_vector(q4)[0] == expected);
    REQUIRE(expected == 4);
  }
  SECTION("closed 3-manifold gems have chi zero") {
    REQUIRE(euler_characteristic(standard_crystallization(3)) == 0);
    REQUIRE(euler_characteristic(load_fixture("q4.gem")) == 0);
    REQUIRE(euler_characteristic(load_fixture("b4.gem")) == 0);
  }
  SECTION("f_n equals the order, and the 3-coloured chi identity holds") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      int n = 2 + oracle::pick(rng, 3);
      int p = 2 * (2 + oracle::pick(rng, 6));
      Gem g = oracle::random_gem(rng, n, p);
      REQUIRE(f_vector(g).back() == g.order());
      if (n == 2) {
        long long cycles = residue_count(g, ColourSet{0, 1}) + residue_count(g, ColourSet{0, 2}) +
                           residue_count(g, ColourSet{1, 2});
        REQUIRE(euler_characteristic(g) == cycles - g.order() / 2);
      }
    }
  }
}

TEST_CASE("bipartition") {
  Gem s3 = standard_crystallization(3);
  auto bip = bipartition(s3);
  REQUIRE(bip);
  REQUIRE(bip->v0 == std::vector<Vertex>{1});
  REQUIRE(bip->v1 == std::vector<Vertex>{2});

  Gem q4 = load_fixture("q4.gem");
  auto bip4 = bipartition(q4);
  REQUIRE(bip4);
  REQUIRE(bip4->v0 == std::vector<Vertex>{1, 4});
  REQUIRE(bip4->v1 == std::vector<Vertex>{2, 3});

  REQUIRE_FALSE(bipartition(load_fixture("rp2.gem")));

  SECTION("agrees with the parity union-find oracle and 2-colours every edge") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
      int n = 1 + oracle::pick(rng, 3);
      int p = 2 * (2 + oracle::pick(rng, 5));
      Gem g = oracle::random_gem(rng, n, p);
      auto b = bipartition(g);
      REQUIRE(b.has_value() == oracle::uf_bipartite(g));
      if (b)
        for (Colour c = 0; c <= n; ++c)
          for (Vertex v = 1; v <= p; ++v) REQUIRE(b->side[v] != b->side[g.neighbour(c, v)]);
    }
  }
}

TEST_CASE("contractedness") {
  for (int n = 2; n <= 4; ++n) REQUIRE(is_contracted(standard_crystallization(n)));
  // all four 3-colour residues of Q4 are connected, so Q4 is contracted
  Gem q4 = load_fixture("q4.gem");
  for (Colour c = 0; c <= 3; ++c)
    REQUIRE(oracle::uf_components(q4, ColourSet::hat(c, 3)).size() == 1);
  REQUIRE(is_contracted(q4));
  REQUIRE_FALSE(is_contracted(load_fixture("b4.gem")));
  Gem two = disjoint_union(standard_crystallization(3), standard_crystallization(3));
  REQUIRE_FALSE(is_contracted(two));
}

TEST_CASE("subgem extraction and disjoint union") {
  Gem q4 = load_fixture("q4.gem");
  SubGem sub = subgem(q4, {1, 2}, ColourSet{0, 1});
  REQUIRE(sub.gem.dimension() == 1);
  REQUIRE(sub.gem.order() == 2);
  REQUIRE(sub.old_label == std::vector<Vertex>{0, 1, 2});
  REQUIRE(sub.old_colour == std::vector<Colour>{0, 1});

  Gem two = disjoint_union(standard_crystallization(3), standard_crystallization(3));
  REQUIRE(two.order() == 4);
  REQUIRE(components(two).count() == 2);
  REQUIRE(error_kind([&] {
            disjoint_union(standard_crystallization(2), standard_crystallization(3));
          }) == Error::Kind::DimensionMismatch);
}

TEST_CASE("edge handles") {
  Gem q4 = load_fixture("q4.gem");
  Edge e{2, 0};
  REQUIRE(edge_mate(q4, e) == 1);
  REQUIRE(canonical_edge(q4, e) == Edge{1, 0});
  REQUIRE(edge_endpoints(q4, e) == std::pair<Vertex, Vertex>{1, 2});
  REQUIRE(same_edge(q4, e, Edge{1, 0}));
  REQUIRE_FALSE(same_edge(q4, e, Edge{3, 0}));
  REQUIRE(edges_of_colour(q4, 2) == std::vector<Edge>{{1, 2}, {2, 2}});
}
