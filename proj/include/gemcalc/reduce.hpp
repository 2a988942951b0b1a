#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gemcalc/gem.hpp"
#include "gemcalc/moves.hpp"
#include "gemcalc/rho.hpp"
#include "gemcalc/verify.hpp"

namespace gemcalc {

/// Contracts a gem by cancelling 1-dipoles, smallest (x,y) first.  If none
/// exists but the gem is still not contracted, the highest-type proper
/// dipole is cancelled instead and the search restarts.  Stuck is reported
/// only for a non-contracted gem with no proper dipole at all, which a
/// connected gem cannot reach.
inline Gem crystallize(const Gem& input, MoveTrace* trace = nullptr,
                       std::vector<std::string>* events = nullptr, const VerifyOptions& opts = {}) {
  if (!is_connected(input)) fail(Error::Kind::Disconnected, "crystallize requires a connected gem");
  if (is_gem(input, opts).no()) fail(Error::Kind::NotAGem, "crystallize requires a gem");
  Gem g = input;
  while (!is_contracted(g)) {
    std::vector<Dipole> ones = find_dipoles(g, 1);
    const Dipole* chosen = ones.empty() ? nullptr : &ones.front();
    std::vector<Dipole> fallback;
    if (!chosen) {
      for (int k = g.dimension(); k >= 2 && !chosen; --k) {
        fallback = find_dipoles(g, k);
        if (!fallback.empty()) chosen = &fallback.front();
      }
    }
    if (!chosen)
      fail(Error::Kind::Stuck, "gem of order " + std::to_string(g.order()) +
                                   " is not contracted and has no proper dipole");
    if (trace) trace->push(TraceStep::cancel(chosen->x, chosen->y));
    if (events)
      events->push_back("cancel " + std::to_string(chosen->type()) + "-dipole (" +
                        std::to_string(chosen->x) + "," + std::to_string(chosen->y) + ")");
    g = cancel_dipole(g, *chosen);
  }
  return g;
}

/// Outcome of the rigidity reduction: final gem, full move trace, and
/// whether the loop stopped on a gem whose only rho-pairs would change the
/// manifold (a handle summand witness).
struct ReductionReport {
  int p0 = 0;
  int p1 = 0;
  bool handle_flag = false;
  Gem output;
  MoveTrace trace;
  std::vector<std::string> events;

  std::string to_text() const {
    std::string out = "p: " + std::to_string(p0) + " -> " + std::to_string(p1) + "\n";
    out += std::string("handle: ") + (handle_flag ? "yes" : "no") + "\n";
    out += std::string("rigid: ") + (handle_flag ? "no" : "yes") + "\n";
    out += "trace:\n";
    out += write_trace(trace);
    return out;
  }
};

/// Reduces a crystallization until it is rigid, never increasing the order.
/// Each round switches the first rho_{n-1}-pair with the preferred
/// switching (which preserves the manifold), cancels the 1-dipole this
/// opens up in the direction of the non-involved colour, and re-contracts;
/// the order strictly drops, so the loop terminates.  A round that finds
/// only rho_n-pairs stops and sets handle_flag instead: switching those
/// would split off or absorb a handle summand, which is the caller's call.
inline ReductionReport rigidify(const Gem& input, const VerifyOptions& opts = {}) {
  if (input.dimension() < 3)
    fail(Error::Kind::DimensionTooLow, "rigidity reduction is defined for dimension >= 3");
  Verdict cv = is_crystallization(input, opts);
  if (cv.no()) fail(Error::Kind::NotACrystallization, cv.evidence);

  ReductionReport report{input.order(), input.order(), false, input, {}, {}};
  Gem g = input;
  for (;;) {
    std::vector<RhoPair> pairs = find_rho_pairs(g);
    if (pairs.empty()) break;
    const RhoPair* chosen = nullptr;
    for (const RhoPair& r : pairs)
      if (r.kind == RhoKind::RhoN1) {
        chosen = &r;
        break;
      }
    if (!chosen) {
      report.handle_flag = true;
      break;
    }

    int order_before = g.order();
    PreferredChoice choice = preferred_variant(g, *chosen);
    Gem switched = switch_generic(g, chosen->e, chosen->f, choice.variant);
    report.trace.push(TraceStep::switching(chosen->e, chosen->f, choice.variant));
    report.events.push_back(
        "switch rho_" + std::to_string(g.dimension() - 1) + " pair colour " +
        std::to_string(chosen->colour) + " (" + std::to_string(chosen->e.v) + "," +
        std::to_string(edge_mate(g, chosen->e)) + ")-(" + std::to_string(chosen->f.v) + "," +
        std::to_string(edge_mate(g, chosen->f)) + ") d=" + std::to_string(chosen->non_involved) +
        " rule=" + choice.rule);

    // The switch splits the d-hat residue in two while the graph stays
    // connected, so some d-coloured edge must now cross two d-hat residues;
    // such an edge is exactly a 1-dipole.  Its absence would falsify the
    // reduction argument, so it is a hard failure, not an Error.
    Colour d = chosen->non_involved;
    bool dipole_found = false;
    for (const Dipole& dd : find_dipoles(switched, 1))
      if (dd.colours.contains(d)) {
        dipole_found = true;
        break;
      }
    if (!dipole_found)
      throw std::logic_error(
          "rigidify: no 1-dipole of the non-involved colour after switching a rho_{n-1}-pair");

    g = crystallize(switched, &report.trace, &report.events, opts);
    if (g.order() >= order_before)
      throw std::logic_error("rigidify: order did not decrease over a switch round");
  }
  report.output = g;
  report.p1 = g.order();
  return report;
}

/// Seeded inverse-move generator: grows a gem by `steps` random dipole or
/// blob insertions.  Every insertion is a genuine dipole addition, so the
/// result represents the same manifold and the order grows by exactly
/// 2 * steps.
inline Gem blow_up(const Gem& input, std::uint64_t seed, int steps, MoveTrace* trace = nullptr) {
  std::mt19937_64 rng(seed);
  Gem g = input;
  for (int s = 0; s < steps; ++s) {
    int k = detail::pick(rng, g.dimension());  // dipole type 1..n
    bool done = false;
    if (k < g.dimension()) {
      for (int attempt = 0; attempt < 20 && !done; ++attempt) {
        ColourSet colours;
        while (colours.count() < k) colours = colours.with(detail::pick(rng, g.colour_count()) - 1);
        std::vector<std::pair<Colour, Vertex>> attach;
        for (Colour i = 0; i <= g.dimension(); ++i)
          if (!colours.contains(i)) attach.emplace_back(i, detail::pick(rng, g.order()));
        try {
          Gem next = add_dipole(g, colours, attach);
          if (trace) trace->push(TraceStep::add(colours, attach));
          g = next;
          done = true;
        } catch (const Error&) {
        }
      }
    }
    if (!done) {
      Edge e{detail::pick(rng, g.order()), detail::pick(rng, g.colour_count()) - 1};
      if (trace) trace->push(TraceStep::blob(e));
      g = add_blob(g, e);
    }
  }
  return g;
}

}  // namespace gemcalc
