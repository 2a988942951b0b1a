#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gemcalc/code.hpp"
#include "gemcalc/gem.hpp"
#include "gemcalc/moves.hpp"

namespace gemcalc {

enum class VerdictValue { Yes, No, Unknown };

inline const char* to_string(VerdictValue v) {
  switch (v) {
    case VerdictValue::Yes: return "Yes";
    case VerdictValue::No: return "No";
    case VerdictValue::Unknown: return "Unknown";
  }
  return "";
}

/// A three-valued answer.  Yes/No verdicts carry replayable evidence; the
/// sphere check in dimension >= 3 is heuristic, so Unknown is a legitimate
/// outcome there.
struct Verdict {
  VerdictValue value = VerdictValue::Unknown;
  std::string evidence;
  std::optional<MoveTrace> trace;  // for sphere Yes in dimension >= 3

  bool yes() const { return value == VerdictValue::Yes; }
  bool no() const { return value == VerdictValue::No; }
  bool unknown() const { return value == VerdictValue::Unknown; }

  static Verdict make_yes(std::string ev) { return {VerdictValue::Yes, std::move(ev), std::nullopt}; }
  static Verdict make_no(std::string ev) { return {VerdictValue::No, std::move(ev), std::nullopt}; }
  static Verdict make_unknown(std::string ev) {
    return {VerdictValue::Unknown, std::move(ev), std::nullopt};
  }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int retry_rounds = 3;       // random blow-up rounds when greedy reduction stalls
  long long max_moves = 0;    // 0 means 10 * order
};

namespace detail {

// uniform-ish pick in 1..bound; stdlib distributions are not portable across
// library versions, and seeded runs must stay reproducible
inline int pick(std::mt19937_64& rng, int bound) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)) + 1;
}

inline std::string block_to_string(const std::vector<Vertex>& block) {
  std::string s = "{";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(block[i]);
  }
  return s + "}";
}

// Cancels dipoles, highest type first and ties by (x,y), until the gem has
// two vertices, no dipole remains, or the budget runs out.
inline Gem greedy_reduce(Gem g, MoveTrace& trace, long long& budget) {
  while (g.order() > 2 && budget > 0) {
    std::vector<Dipole> dipoles = find_all_dipoles(g);
    if (dipoles.empty()) break;
    const Dipole* best = &dipoles.front();
    for (const Dipole& d : dipoles)
      if (d.type() > best->type()) best = &d;
    trace.push(TraceStep::cancel(best->x, best->y));
    g = cancel_dipole(g, *best);
    --budget;
  }
  return g;
}

}  // namespace detail

inline Verdict is_gem(const Gem& g, const VerifyOptions& opts = {});

/// Sphere recognition.  Dimension 1: every connected 2-coloured graph is a
/// cycle.  Dimension 2: decided exactly by the Euler characteristic.
/// Dimension >= 3: semi-decidable; greedy dipole reduction towards the
/// order-2 crystallization, with a seeded blow-up retry when it stalls.
inline Verdict is_sphere(const Gem& g, const VerifyOptions& opts = {}) {
  if (!is_connected(g)) fail(Error::Kind::Disconnected, "sphere check requires a connected gem");
  int m = g.dimension();
  if (m == 1) return Verdict::make_yes("connected 2-coloured graph is a cycle");
  if (m == 2) {
    long long chi = euler_characteristic(g);
    if (chi == 2) return Verdict::make_yes("chi = 2");
    return Verdict::make_no("chi = " + std::to_string(chi));
  }

  Verdict gem_verdict = is_gem(g, opts);
  if (gem_verdict.no()) return Verdict::make_no(gem_verdict.evidence);

  MoveTrace trace;
  long long budget = opts.max_moves > 0 ? opts.max_moves : 10LL * g.order();
  Gem cur = detail::greedy_reduce(g, trace, budget);
  std::mt19937_64 rng(opts.seed);
  for (int round = 1; round <= opts.retry_rounds && cur.order() > 2 && budget > 0; ++round) {
    // Random 1-dipole insertions open new cancellation routes; a plain blob
    // would be cancelled right back as the highest dipole in sight.
    for (int t = 0; t < round && budget > 0; ++t) {
      bool added = false;
      for (int attempt = 0; attempt < 10 && !added; ++attempt) {
        Colour c = detail::pick(rng, cur.colour_count()) - 1;
        std::vector<std::pair<Colour, Vertex>> attach;
        for (Colour i = 0; i <= cur.dimension(); ++i)
          if (i != c) attach.emplace_back(i, detail::pick(rng, cur.order()));
        try {
          Gem next = add_dipole(cur, ColourSet::single(c), attach);
          trace.push(TraceStep::add(ColourSet::single(c), attach));
          cur = next;
          added = true;
        } catch (const Error&) {
        }
      }
      if (!added) {
        Edge e{detail::pick(rng, cur.order()), detail::pick(rng, cur.colour_count()) - 1};
        trace.push(TraceStep::blob(e));
        cur = add_blob(cur, e);
      }
      --budget;
    }
    cur = detail::greedy_reduce(cur, trace, budget);
  }

  if (cur.order() == 2) {
    if (gem_verdict.unknown())
      return Verdict::make_unknown(
          "reduces to the standard crystallization but a residue verdict is unknown: " +
          gem_verdict.evidence);
    Verdict v = Verdict::make_yes("reduces to the standard crystallization in " +
                                  std::to_string(trace.size()) + " moves");
    v.trace = std::move(trace);
    return v;
  }
  return Verdict::make_unknown("reduction stalled at order " + std::to_string(cur.order()));
}

/// Gem criterion: every c-hat residue must represent the (n-1)-sphere.
inline Verdict is_gem(const Gem& g, const VerifyOptions& opts) {
  std::optional<Verdict> first_unknown;
  for (Colour c = 0; c <= g.dimension(); ++c) {
    ResiduePartition res = residues(g, ColourSet::hat(c, g.dimension()));
    for (const auto& block : res.blocks) {
      if (g.dimension() == 1) continue;  // 0-dimensional residues are single edges
      SubGem sub = subgem(g, block, ColourSet::hat(c, g.dimension()));
      Verdict v = is_sphere(sub.gem, opts);
      std::string where =
          "colour " + std::to_string(c) + " residue " + detail::block_to_string(block);
      if (v.no()) return Verdict::make_no(where + " is not a sphere: " + v.evidence);
      if (v.unknown() && !first_unknown)
        first_unknown = Verdict::make_unknown(where + ": " + v.evidence);
    }
  }
  if (first_unknown) return *first_unknown;
  return Verdict::make_yes("every residue verifies as a sphere");
}

inline bool is_orientable(const Gem& g, const VerifyOptions& opts = {}) {
  if (is_gem(g, opts).no()) fail(Error::Kind::NotAGem, "orientability is defined for gems only");
  return is_bipartite(g);
}

inline Verdict is_crystallization(const Gem& g, const VerifyOptions& opts = {}) {
  for (Colour c = 0; c <= g.dimension(); ++c) {
    int count = residue_count(g, ColourSet::hat(c, g.dimension()));
    if (count != 1)
      return Verdict::make_no("not contracted: colour " + std::to_string(c) + " has " +
                              std::to_string(count) + " residues");
  }
  Verdict gem_verdict = is_gem(g, opts);
  if (gem_verdict.no()) return gem_verdict;
  if (gem_verdict.unknown()) return gem_verdict;
  return Verdict::make_yes("contracted gem");
}

}  // namespace gemcalc
