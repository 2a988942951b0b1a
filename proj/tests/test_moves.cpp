#include <catch2/catch_amalgamated.hpp>

#include "gemcalc/gemcalc.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gemcalc;

namespace {

// attachment that re-inserts dipole d of g after it was cancelled: for each
// uninvolved colour the x-side neighbour, renumbered into the smaller gem
std::vector<std::pair<Colour, Vertex>> reinsertion_attachment(const Gem& g, const Dipole& d) {
  auto renumber = [&](Vertex v) { return v - (v > d.x) - (v > d.y); };
  std::vector<std::pair<Colour, Vertex>> attach;
  for (Colour i = 0; i <= g.dimension(); ++i)
    if (!d.colours.contains(i)) attach.emplace_back(i, renumber(g.neighbour(i, d.x)));
  return attach;
}

}  // namespace

TEST_CASE("dipole classification") {
  Gem q4 = load_fixture("q4.gem");
  Gem b4 = load_fixture("b4.gem");
  Gem s3 = standard_crystallization(3);

  auto d = classify_dipole(q4, 1, 2);
  REQUIRE(d);
  REQUIRE(d->colours == ColourSet{0, 1});
  REQUIRE(d->type() == 2);
  // oracle: the {2,3}-residues of 1 and 2 differ
  auto parts = oracle::uf_components(q4, ColourSet{2, 3});
  REQUIRE(parts == std::vector<std::vector<Vertex>>{{1, 3}, {2, 4}});

  REQUIRE_FALSE(classify_dipole(s3, 1, 2));  // joined by all four colours

  auto blob = classify_dipole(b4, 3, 4);
  REQUIRE(blob);
  REQUIRE(blob->colours == ColourSet{1, 2, 3});
  REQUIRE(blob->type() == 3);
}

TEST_CASE("dipole enumeration matches the exhaustive scan oracle") {
  Gem q4 = load_fixture("q4.gem");
  Gem b4 = load_fixture("b4.gem");

  SECTION("Q4 has four 2-dipoles") {
    auto found = find_dipoles(q4, 2);
    auto scanned = oracle::scan_dipoles(q4, 2);
    REQUIRE(found.size() == scanned.size());
    REQUIRE(found.size() == 4);
    for (std::size_t i = 0; i < found.size(); ++i) {
      REQUIRE(found[i].x == scanned[i].x);
      REQUIRE(found[i].y == scanned[i].y);
      REQUIRE(found[i].colours == scanned[i].colours);
    }
    REQUIRE(found[0].colours == ColourSet{0, 1});  // (1,2)
    REQUIRE(found[1].colours == ColourSet{2, 3});  // (1,3)
    REQUIRE(found[2].colours == ColourSet{2, 3});  // (2,4)
    REQUIRE(found[3].colours == ColourSet{0, 1});  // (3,4)
  }
  SECTION("B4 has two blobs and two 1-dipoles") {
    auto blobs = find_dipoles(b4, 3);
    REQUIRE(blobs.size() == 2);
    REQUIRE(blobs[0].x == 1);
    REQUIRE(blobs[0].y == 2);
    REQUIRE(blobs[1].x == 3);
    REQUIRE(blobs[1].y == 4);
    auto ones = find_dipoles(b4, 1);
    REQUIRE(ones.size() == 2);
    REQUIRE(ones[0].x == 1);
    REQUIRE(ones[0].y == 3);
    REQUIRE(ones[0].colours == ColourSet{0});
    REQUIRE(ones[1].x == 2);
    REQUIRE(ones[1].y == 4);
    REQUIRE(find_dipoles(b4, 2).empty());
  }
  SECTION("the standard crystallization has no dipoles") {
    REQUIRE(find_dipoles(standard_crystallization(3), 1).empty());
    REQUIRE(find_all_dipoles(standard_crystallization(3)).empty());
  }
  SECTION("type bounds") {
    REQUIRE(error_kind([&] { find_dipoles(q4, 0); }) == Error::Kind::BadType);
    REQUIRE(error_kind([&] { find_dipoles(q4, 4); }) == Error::Kind::BadType);
  }
  SECTION("agreement with the oracle on random gems") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
      int n = 2 + oracle::pick(rng, 3);
      Gem g = oracle::random_gem(rng, n, 2 * (2 + oracle::pick(rng, 4)));
      for (int k = 1; k <= n; ++k) {
        auto found = find_dipoles(g, k);
        auto scanned = oracle::scan_dipoles(g, k);
        REQUIRE(found.size() == scanned.size());
        for (std::size_t i = 0; i < found.size(); ++i) {
          REQUIRE(found[i].x == scanned[i].x);
          REQUIRE(found[i].y == scanned[i].y);
          REQUIRE(found[i].colours == scanned[i].colours);
        }
      }
    }
  }
}

TEST_CASE("dipole cancellation") {
  Gem q4 = load_fixture("q4.gem");
  Gem b4 = load_fixture("b4.gem");
  Gem s3 = standard_crystallization(3);

  Gem cancelled = cancel_dipole(q4, *classify_dipole(q4, 1, 2));
  REQUIRE(cancelled.order() == 2);
  REQUIRE(colour_isomorphic(cancelled, s3));

  Gem from_blob = cancel_dipole(b4, *classify_dipole(b4, 3, 4));
  REQUIRE(colour_isomorphic(from_blob, s3));

  SECTION("stale dipoles are rejected") {
    Dipole fake{1, 2, ColourSet{0, 1}};
    REQUIRE(error_kind([&] { cancel_dipole(s3, fake); }) == Error::Kind::StaleDipole);
    Dipole q4_pair = *classify_dipole(q4, 1, 2);
    Gem switched = switch_generic(q4, {1, 0}, {3, 0}, SwitchVariant::UW_VZ);
    REQUIRE(error_kind([&] { cancel_dipole(switched, q4_pair); }) == Error::Kind::StaleDipole);
  }
  SECTION("order always drops by exactly two, and residue verdicts survive") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
      Gem g = blow_up(standard_crystallization(3), rng(), 3);
      auto dipoles = find_all_dipoles(g);
      REQUIRE_FALSE(dipoles.empty());
      Gem h = cancel_dipole(g, dipoles[oracle::pick(rng, static_cast<int>(dipoles.size()))]);
      REQUIRE(g.order() - h.order() == 2);
      REQUIRE(is_gem(h).value == is_gem(g).value);
    }
  }
}

TEST_CASE("blob insertion") {
  Gem s3 = standard_crystallization(3);
  Gem b4 = load_fixture("b4.gem");

  Gem blown = add_blob(s3, {1, 0});
  REQUIRE(colour_isomorphic(blown, b4));

  SECTION("blob then cancel is the identity up to isomorphism") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
      int n = 2 + oracle::pick(rng, 3);
      Gem g = oracle::random_connected_gem(rng, n, 2 * (2 + oracle::pick(rng, 4)));
      Edge e{1 + oracle::pick(rng, g.order()), oracle::pick(rng, n + 1)};
      Gem h = add_blob(g, e);
      REQUIRE(h.order() == g.order() + 2);
      auto blob = classify_dipole(h, g.order() + 1, g.order() + 2);
      REQUIRE(blob);
      REQUIRE(blob->type() == n);
      REQUIRE(colour_isomorphic(cancel_dipole(h, *blob), g));
    }
  }
  SECTION("cycle counts: a blob adds one {i,j}-cycle for i,j away from its colour") {
    // on S(3) with a colour-0 blob: g_{i,j} gains the new digon for i,j != 0,
    // while the stretched {0,i}-cycles stay single
    for (Colour i = 1; i <= 3; ++i) {
      REQUIRE(residue_count(blown, ColourSet{0, i}) == residue_count(s3, ColourSet{0, i}));
      for (Colour j = i + 1; j <= 3; ++j)
        REQUIRE(residue_count(blown, ColourSet{i, j}) ==
                residue_count(s3, ColourSet{i, j}) + 1);
    }
  }
}

TEST_CASE("dipole insertion") {
  Gem s3 = standard_crystallization(3);
  Gem q4 = load_fixture("q4.gem");

  SECTION("re-inserting the cancelled Q4 dipole restores Q4") {
    Gem added = add_dipole(s3, ColourSet{0, 1}, {{2, 1}, {3, 1}});
    REQUIRE(colour_isomorphic(added, q4));
  }
  SECTION("a type-n insertion is a blob insertion") {
    Gem via_dipole = add_dipole(s3, ColourSet{1, 2, 3}, {{0, 1}});
    Gem via_blob = add_blob(s3, {1, 0});
    REQUIRE(via_dipole == via_blob);
  }
  SECTION("attachments must cover exactly the uninvolved colours") {
    REQUIRE(error_kind([&] { add_dipole(s3, ColourSet{0, 1}, {{2, 1}}); }) ==
            Error::Kind::InvalidAttachment);
    REQUIRE(error_kind([&] { add_dipole(s3, ColourSet{0, 1}, {{1, 1}, {2, 1}, {3, 1}}); }) ==
            Error::Kind::InvalidAttachment);
    REQUIRE(error_kind([&] { add_dipole(s3, ColourSet{0, 1, 2, 3}, {}); }) ==
            Error::Kind::InvalidAttachment);
  }
  SECTION("attachments that do not separate the new vertices are rejected") {
    // splitting the colour-2 edge at 1 and the colour-3 edge at 2 leaves the
    // new pair inside one {2,3}-cycle
    REQUIRE(error_kind([&] { add_dipole(q4, ColourSet{0, 1}, {{2, 1}, {3, 2}}); }) ==
            Error::Kind::InvalidAttachment);
  }
  SECTION("cancel then re-insert round-trips, 500 random choices") {
    std::mt19937_64 rng(43);
    int done = 0;
    while (done < 500) {
      int n = 2 + oracle::pick(rng, 2);
      Gem g = oracle::random_connected_gem(rng, n, 2 * (2 + oracle::pick(rng, 4)));
      auto dipoles = find_all_dipoles(g);
      if (dipoles.empty()) continue;
      const Dipole& d = dipoles[oracle::pick(rng, static_cast<int>(dipoles.size()))];
      auto attach = reinsertion_attachment(g, d);
      Gem cancelled = cancel_dipole(g, d);
      Gem restored = add_dipole(cancelled, d.colours, attach);
      REQUIRE(iso_equal(restored, g));
      ++done;
    }
  }
}

TEST_CASE("complete separation and fusion") {
  Gem s3 = standard_crystallization(3);
  Gem q4 = load_fixture("q4.gem");
  Gem two = disjoint_union(s3, s3);

  REQUIRE(completely_separated(two, 1, 3));
  REQUIRE_FALSE(completely_separated(s3, 1, 2));
  REQUIRE_FALSE(completely_separated(q4, 1, 4));

  REQUIRE(colour_isomorphic(fuse(two, 1, 3), s3));
  REQUIRE(error_kind([&] { fuse(s3, 1, 2); }) == Error::Kind::NotSeparated);

  SECTION("fusion parity: same class breaks bipartiteness, opposite keeps it") {
    int same_class = 0, opposite_class = 0;
    for (std::uint64_t seed = 1; seed <= 100 && (same_class < 3 || opposite_class < 3); ++seed) {
      Gem g = blow_up(s3, seed, 6 + 2 * static_cast<int>(seed % 2));
      auto bip = bipartition(g);
      REQUIRE(bip);  // dipole insertions keep sphere gems bipartite
      for (Vertex x = 1; x <= g.order(); ++x)
        for (Vertex y = x + 1; y <= g.order(); ++y) {
          if (!completely_separated(g, x, y)) continue;
          Gem fused = fuse(g, x, y);
          if (bip->side[x] == bip->side[y]) {
            REQUIRE_FALSE(is_bipartite(fused));
            ++same_class;
          } else {
            REQUIRE(is_bipartite(fused));
            ++opposite_class;
          }
        }
    }
    REQUIRE(same_class >= 3);
    REQUIRE(opposite_class >= 3);
  }
}

TEST_CASE("move traces") {
  Gem s3 = standard_crystallization(3);
  Gem q4 = load_fixture("q4.gem");

  SECTION("a 2-dipole cancellation takes Q4 to the standard crystallization") {
    MoveTrace t;
    t.push(TraceStep::cancel(1, 2));
    REQUIRE(verify_trace(q4, t, s3).ok);
  }
  SECTION("blob plus cancel is a no-op") {
    MoveTrace t = parse_trace("blob 1 0\ncancel 3 4\n");
    REQUIRE(verify_trace(s3, t, s3).ok);
  }
  SECTION("failures report the first bad step") {
    MoveTrace t;
    t.push(TraceStep::cancel(1, 2));
    TraceOutcome out = verify_trace(s3, t, s3);
    REQUIRE_FALSE(out.ok);
    REQUIRE(out.failed_step == 1);
    REQUIRE(out.reason == "(1,2) is not a dipole");

    TraceOutcome not_iso = verify_trace(q4, t, q4);
    REQUIRE_FALSE(not_iso.ok);
    REQUIRE(not_iso.reason == "final gem is not coloured-isomorphic to the expected gem");
  }
  SECTION("text form round-trips") {
    MoveTrace t;
    t.push(TraceStep::blob({1, 0}));
    t.push(TraceStep::add(ColourSet{0, 1}, {{2, 1}, {3, 3}}));
    t.push(TraceStep::switching({1, 0}, {3, 0}, SwitchVariant::UZ_VW));
    t.push(TraceStep::cancel(3, 4));
    std::string text = write_trace(t);
    REQUIRE(text == "blob 1 0\nadd 0,1 2:1 3:3\nswitch 1 0 3 0 uz-vw\ncancel 3 4\n");
    REQUIRE(parse_trace(text) == t);
    REQUIRE(error_kind([] { parse_trace("warp 1 2\n"); }) == Error::Kind::ParseError);
  }
  SECTION("apply_trace throws on a bad trace") {
    MoveTrace t;
    t.push(TraceStep::cancel(1, 2));
    REQUIRE(error_kind([&] { apply_trace(s3, t); }) == Error::Kind::PreconditionFailed);
  }
}
