#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gemcalc/gem.hpp"

namespace gemcalc {

/// The two ways of re-joining the four loose ends after deleting a pair of
/// equally coloured edges e = (u,v), f = (w,z), named with the canonical
/// (smaller-endpoint-first) handles: UW_VZ joins u-w and v-z, UZ_VW joins
/// u-z and v-w.  The identity re-pairing would restore the original graph.
enum class SwitchVariant { UW_VZ, UZ_VW };

inline const char* to_string(SwitchVariant v) { return v == SwitchVariant::UW_VZ ? "uw-vz" : "uz-vw"; }

inline std::optional<SwitchVariant> switch_variant_from_string(const std::string& s) {
  if (s == "uw-vz") return SwitchVariant::UW_VZ;
  if (s == "uz-vw") return SwitchVariant::UZ_VW;
  return std::nullopt;
}

enum class RhoKind { RhoN, RhoN1 };

/// A pair of c-coloured edges sharing all n of their {c,i}-bicoloured
/// cycles (RhoN) or all but exactly one (RhoN1, with the disagreeing colour
/// recorded as non_involved).
struct RhoPair {
  Edge e, f;               // canonical handles, e.v < f.v
  Colour colour = 0;       // the shared edge colour c
  RhoKind kind = RhoKind::RhoN;
  Colour non_involved = -1;  // the colour d for RhoN1 pairs; -1 otherwise
};

namespace detail {

// Walks vertex v's {c,i}-cycle and reports whether it passes through target.
inline bool same_bicoloured_cycle(const Gem& g, Colour c, Colour i, Vertex v, Vertex target) {
  Vertex cur = v;
  Colour next = c;
  do {
    if (cur == target) return true;
    cur = g.neighbour(next, cur);
    next = (next == c) ? i : c;
  } while (cur != v || next != c);
  return false;
}

}  // namespace detail

inline std::optional<RhoPair> classify_pair(const Gem& g, Edge e, Edge f) {
  if (!g.valid_vertex(e.v) || !g.valid_vertex(f.v) || !g.valid_colour(e.c) || !g.valid_colour(f.c))
    fail(Error::Kind::PreconditionFailed, "edge handle out of range");
  if (e.c != f.c)
    fail(Error::Kind::ColourMismatch, "edges have colours " + std::to_string(e.c) + " and " +
                                          std::to_string(f.c));
  if (same_edge(g, e, f)) fail(Error::Kind::PreconditionFailed, "edges must be distinct");
  Colour c = e.c;
  int disagreements = 0;
  Colour disagreeing = -1;
  for (Colour i = 0; i <= g.dimension(); ++i) {
    if (i == c) continue;
    if (!detail::same_bicoloured_cycle(g, c, i, e.v, f.v)) {
      ++disagreements;
      disagreeing = i;
      if (disagreements > 1) return std::nullopt;
    }
  }
  RhoPair pair;
  pair.e = canonical_edge(g, e);
  pair.f = canonical_edge(g, f);
  if (pair.f.v < pair.e.v) std::swap(pair.e, pair.f);
  pair.colour = c;
  if (disagreements == 0) {
    pair.kind = RhoKind::RhoN;
    pair.non_involved = -1;
  } else {
    pair.kind = RhoKind::RhoN1;
    pair.non_involved = disagreeing;
  }
  return pair;
}

/// Every rho-pair, each once, ordered by colour then canonical handles.
inline std::vector<RhoPair> find_rho_pairs(const Gem& g) {
  std::vector<RhoPair> out;
  for (Colour c = 0; c <= g.dimension(); ++c) {
    std::vector<Edge> edges = edges_of_colour(g, c);
    for (std::size_t a = 0; a < edges.size(); ++a)
      for (std::size_t b = a + 1; b < edges.size(); ++b)
        if (auto pair = classify_pair(g, edges[a], edges[b])) out.push_back(*pair);
  }
  return out;
}

inline Gem switch_generic(const Gem& g, Edge e, Edge f, SwitchVariant variant) {
  if (!g.valid_vertex(e.v) || !g.valid_vertex(f.v) || !g.valid_colour(e.c) || !g.valid_colour(f.c))
    fail(Error::Kind::PreconditionFailed, "edge handle out of range");
  if (e.c != f.c) fail(Error::Kind::ColourMismatch, "switched edges must share their colour");
  if (same_edge(g, e, f)) fail(Error::Kind::PreconditionFailed, "edges must be distinct");
  Colour c = e.c;
  auto [u, v] = edge_endpoints(g, e);
  auto [w, z] = edge_endpoints(g, f);
  std::vector<std::vector<Vertex>> tables(g.colour_count(), std::vector<Vertex>(g.order(), 0));
  for (Colour col = 0; col <= g.dimension(); ++col)
    for (Vertex x = 1; x <= g.order(); ++x) tables[col][x - 1] = g.neighbour(col, x);
  auto join = [&](Vertex a, Vertex b) {
    tables[c][a - 1] = b;
    tables[c][b - 1] = a;
  };
  if (variant == SwitchVariant::UW_VZ) {
    join(u, w);
    join(v, z);
  } else {
    join(u, z);
    join(v, w);
  }
  return Gem(g.dimension(), g.order(), tables);
}

/// Head of f under the orientation its {c,i}-cycle inherits from e, where e
/// is read as oriented from e.v to its mate.
inline Vertex induced_head(const Gem& g, Edge e, Edge f, Colour i) {
  if (!g.valid_colour(i) || i == e.c)
    fail(Error::Kind::PreconditionFailed, "colour must differ from the pair colour");
  if (e.c != f.c) fail(Error::Kind::ColourMismatch, "edges must share their colour");
  Colour c = e.c;
  Vertex tail = e.v;
  Vertex head = edge_mate(g, e);
  auto [f0, f1] = edge_endpoints(g, f);
  Vertex cur = head;
  for (int guard = 0; guard <= g.order(); ++guard) {
    Vertex a = g.neighbour(i, cur);
    if (a == tail) break;  // cycle closed without meeting f
    Vertex b = g.neighbour(c, a);
    if ((a == f0 && b == f1) || (a == f1 && b == f0)) return b;
    cur = b;
  }
  fail(Error::Kind::NotSameCycle, "edges do not share their {" + std::to_string(c) + "," +
                                      std::to_string(i) + "}-cycle");
}

namespace detail {

// 2-colours the vertices reachable from each seed using the given colours,
// smallest seed on side 0.  Returns empty on an odd cycle.
inline std::vector<int> two_colour_within(const Gem& g, const std::vector<Vertex>& seeds,
                                          ColourSet colours) {
  std::vector<int> side(g.order() + 1, -1);
  std::vector<Colour> cols = colours.to_vector();
  std::vector<Vertex> stack;
  for (Vertex s : seeds) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Colour c : cols) {
        Vertex w = g.neighbour(c, v);
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          stack.push_back(w);
        } else if (side[w] == side[v]) {
          return {};
        }
      }
    }
  }
  return side;
}

}  // namespace detail

struct PreferredChoice {
  SwitchVariant variant;
  const char* rule;  // "A", "B1" or "B2"
};

/// The canonical switching.  Case A applies when the component(s) holding
/// the pair are bipartite: orient both edges from the class of the smallest
/// component vertex and cross-join tail-to-head.  Case B1 does the same
/// inside the bipartite d-hat residue of an RhoN1 pair.  Case B2 propagates
/// the canonical orientation of e around any {c,i}-cycle, which is
/// colour-independent for n >= 3 when all proper residues are bipartite.
inline PreferredChoice preferred_variant(const Gem& g, const RhoPair& r) {
  auto fresh = classify_pair(g, r.e, r.f);
  if (!fresh || fresh->kind != r.kind || fresh->non_involved != r.non_involved)
    fail(Error::Kind::PreconditionFailed, "pair is stale: reclassification differs");
  Colour c = r.colour;
  auto [u, v] = edge_endpoints(g, r.e);
  auto [w, z] = edge_endpoints(g, r.f);

  auto variant_for = [&](Vertex e_tail, Vertex f_head) {
    Vertex partner_of_u = (e_tail == u) ? f_head : (f_head == w ? z : w);
    return partner_of_u == w ? SwitchVariant::UW_VZ : SwitchVariant::UZ_VW;
  };

  ResiduePartition comp = components(g);
  std::vector<Vertex> seeds = {comp.block_containing(u).front(), comp.block_containing(w).front()};
  std::vector<int> side = detail::two_colour_within(g, seeds, g.all_colours());
  if (!side.empty()) {
    // Case A
    Vertex e_tail = (side[u] == 0) ? u : v;
    Vertex f_head = (side[w] == 0) ? z : w;  // head = endpoint on side 1
    return {variant_for(e_tail, f_head), "A"};
  }
  if (r.kind == RhoKind::RhoN1) {
    // Case B1: orient inside the d-hat residue containing both edges.
    Colour d = r.non_involved;
    ResiduePartition res = residues(g, ColourSet::hat(d, g.dimension()));
    if (!res.same_block(u, w))
      fail(Error::Kind::PreconditionFailed, "pair does not share its d-hat residue");
    const std::vector<Vertex>& xi = res.block_containing(u);
    std::vector<int> xi_side =
        detail::two_colour_within(g, {xi.front()}, ColourSet::hat(d, g.dimension()));
    if (xi_side.empty())
      fail(Error::Kind::PreconditionFailed, "d-hat residue of the pair is not bipartite");
    Vertex e_tail = (xi_side[u] == 0) ? u : v;
    Vertex f_head = (xi_side[w] == 0) ? z : w;
    return {variant_for(e_tail, f_head), "B1"};
  }
  // RhoN pair in a non-bipartite component
  if (g.dimension() < 3)
    fail(Error::Kind::NoCanonicalSwitch,
         "no canonical switching for a rho_2-pair of a non-bipartite 3-coloured graph");
  for (Colour i = 0; i <= g.dimension(); ++i) {
    ResiduePartition res = residues(g, ColourSet::hat(i, g.dimension()));
    for (const auto& block : res.blocks) {
      if (!comp.same_block(block.front(), u)) continue;
      if (detail::two_colour_within(g, {block.front()}, ColourSet::hat(i, g.dimension())).empty())
        fail(Error::Kind::PreconditionFailed,
             "proper residue (colour " + std::to_string(i) + " deleted) is not bipartite");
    }
  }
  // Case B2: orient e from its canonical tail; any i != c gives the same head.
  Colour i = (c == 0) ? 1 : 0;
  Vertex f_head = induced_head(g, {u, c}, r.f, i);
  return {variant_for(u, f_head), "B2"};
}

inline Gem switch_preferred(const Gem& g, const RhoPair& r) {
  return switch_generic(g, r.e, r.f, preferred_variant(g, r).variant);
}

/// Rigidity by the definition: no rho-pairs at all.
inline bool is_rigid(const Gem& g) {
  if (g.dimension() < 3)
    fail(Error::Kind::DimensionTooLow, "rigidity is defined for dimension >= 3");
  return find_rho_pairs(g).empty();
}

/// Rigidity by the residue criterion: no i-hat residue, read as an
/// n-coloured graph, contains a pair of edges agreeing on all of its
/// bicoloured cycles.  Must agree with is_rigid on every gem.
inline bool is_rigid_via_residues(const Gem& g) {
  if (g.dimension() < 3)
    fail(Error::Kind::DimensionTooLow, "rigidity is defined for dimension >= 3");
  for (Colour i = 0; i <= g.dimension(); ++i) {
    ResiduePartition res = residues(g, ColourSet::hat(i, g.dimension()));
    for (const auto& block : res.blocks) {
      if (block.size() < 2) continue;
      SubGem sub = subgem(g, block, ColourSet::hat(i, g.dimension()));
      for (Colour c = 0; c <= sub.gem.dimension(); ++c) {
        std::vector<Edge> edges = edges_of_colour(sub.gem, c);
        for (std::size_t a = 0; a < edges.size(); ++a)
          for (std::size_t b = a + 1; b < edges.size(); ++b) {
            auto pair = classify_pair(sub.gem, edges[a], edges[b]);
            if (pair && pair->kind == RhoKind::RhoN) return false;
          }
      }
    }
  }
  return true;
}

}  // namespace gemcalc
