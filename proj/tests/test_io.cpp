#include <catch2/catch_amalgamated.hpp>

#include "gemcalc/io.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gemcalc;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("gem files round-trip") {
  Gem q4 = load_fixture("q4.gem");
  REQUIRE(write_gem(q4) == "3 4\n2 2 3 3\n1 1 4 4\n4 4 1 1\n3 3 2 2\n");
  REQUIRE(parse_gem(write_gem(q4)) == q4);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Gem g = oracle::random_gem(rng, 1 + oracle::pick(rng, 4), 2 * (1 + oracle::pick(rng, 8)));
    REQUIRE(parse_gem(write_gem(g)) == g);
  }
}

TEST_CASE("comments and blank lines are skipped") {
  Gem g = parse_gem("# two-vertex gem\n\n3 2   # header\n2 2 2 2\n1 1 1 1  # row\n");
  REQUIRE(g == standard_crystallization(3));
}

TEST_CASE("parse errors carry line numbers") {
  auto message_of = [](const std::string& text) {
    try {
      parse_gem(text, "test.gem");
    } catch (const Error& e) {
      REQUIRE(e.kind() == Error::Kind::ParseError);
      return std::string(e.what());
    }
    FAIL("expected a parse error");
    return std::string();
  };

  REQUIRE_THAT(message_of("nonsense\n"), ContainsSubstring("test.gem:1"));
  REQUIRE_THAT(message_of("3 2\n2 2 2\n1 1 1 1\n"), ContainsSubstring("test.gem:2"));
  REQUIRE_THAT(message_of("3 2\n2 2 2 2\n1 1 1 9\n"), ContainsSubstring("test.gem:3"));
  // loop at vertex 1, reported on its row
  REQUIRE_THAT(message_of("3 2\n1 2 2 2\n2 1 1 1\n"), ContainsSubstring("test.gem:2"));
  REQUIRE_THAT(message_of("3 2\n1 2 2 2\n2 1 1 1\n"), ContainsSubstring("loop"));
  // colour 0 not an involution across rows 3 and 4
  std::string broken = "3 4\n2 2 3 3\n3 1 4 4\n4 4 1 1\n1 3 2 2\n";
  REQUIRE_THAT(message_of(broken), ContainsSubstring("involution"));
  REQUIRE_THAT(message_of("3 2\n2 2 2 2\n"), ContainsSubstring("expected 2 vertex rows"));
  REQUIRE(error_kind([] { load_gem("no-such-file.gem"); }) == Error::Kind::ParseError);
}
