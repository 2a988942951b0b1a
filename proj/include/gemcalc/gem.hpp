#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gemcalc {

using Vertex = int;  // vertices are 1-based and contiguous
using Colour = int;  // colours are 0..n

class Error : public std::runtime_error {
 public:
  enum class Kind {
    InvalidInvolution,
    BadArity,
    BadColour,
    BadType,
    Disconnected,
    DimensionMismatch,
    DimensionTooLow,
    StaleDipole,
    InvalidAttachment,
    NotSeparated,
    ColourMismatch,
    NotSameCycle,
    NoCanonicalSwitch,
    PreconditionFailed,
    NotAGem,
    NotACrystallization,
    Stuck,
    BudgetExceeded,
    CorruptCatalogue,
    ParseError,
  };

  Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

[[noreturn]] inline void fail(Error::Kind kind, const std::string& msg) { throw Error(kind, msg); }

namespace detail {

inline bool parse_int(const std::string& tok, int& out) {
  if (tok.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoi(tok, &pos);
  } catch (...) {
    return false;
  }
  return pos == tok.size();
}

}  // namespace detail

/// A subset of the colour set {0,...,n}, n < 32.
class ColourSet {
 public:
  ColourSet() = default;
  ColourSet(std::initializer_list<Colour> cs) {
    for (Colour c : cs) bits_ |= bit(c);
  }

  static ColourSet full(int n) { return ColourSet((std::uint32_t{1} << (n + 1)) - 1); }
  static ColourSet single(Colour c) { return ColourSet(bit(c)); }
  static ColourSet hat(Colour c, int n) { return full(n).without(c); }
  static ColourSet from_bits(std::uint32_t raw) { return ColourSet(raw); }

  bool contains(Colour c) const { return (bits_ & bit(c)) != 0; }
  ColourSet with(Colour c) const { return ColourSet(bits_ | bit(c)); }
  ColourSet without(Colour c) const { return ColourSet(bits_ & ~bit(c)); }
  ColourSet complement(int n) const { return ColourSet(full(n).bits_ & ~bits_); }
  int count() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  std::uint32_t bits() const { return bits_; }

  std::vector<Colour> to_vector() const {
    std::vector<Colour> out;
    for (Colour c = 0; c < 32; ++c)
      if (contains(c)) out.push_back(c);
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (Colour c : to_vector()) {
      if (!first) s += ',';
      s += std::to_string(c);
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const ColourSet&, const ColourSet&) = default;
  friend bool operator<(const ColourSet& a, const ColourSet& b) { return a.bits_ < b.bits_; }

 private:
  explicit ColourSet(std::uint32_t b) : bits_(b) {}
  static std::uint32_t bit(Colour c) { return std::uint32_t{1} << c; }
  std::uint32_t bits_ = 0;
};

/// An (n+1)-regular, properly edge-coloured multigraph, stored as one
/// fixed-point-free involution per colour.  Immutable once constructed;
/// every operation on gems returns a fresh value.
class Gem {
 public:
  /// `tables[c][i]` is the c-coloured neighbour of vertex i+1.
  Gem(int dimension, int order, const std::vector<std::vector<Vertex>>& tables)
      : n_(dimension), p_(order) {
    if (n_ < 1) fail(Error::Kind::BadArity, "dimension must be at least 1");
    if (n_ > 30) fail(Error::Kind::BadArity, "dimension too large");
    if (p_ < 2) fail(Error::Kind::BadArity, "order must be at least 2");
    if (p_ % 2 != 0) fail(Error::Kind::BadArity, "order must be even");
    if (static_cast<int>(tables.size()) != n_ + 1)
      fail(Error::Kind::BadArity, "expected " + std::to_string(n_ + 1) + " colour tables, got " +
                                      std::to_string(tables.size()));
    adj_.assign(n_ + 1, std::vector<Vertex>(p_ + 1, 0));
    for (Colour c = 0; c <= n_; ++c) {
      if (static_cast<int>(tables[c].size()) != p_)
        fail(Error::Kind::BadArity, "colour " + std::to_string(c) + " table covers " +
                                        std::to_string(tables[c].size()) + " vertices, expected " +
                                        std::to_string(p_));
      for (Vertex v = 1; v <= p_; ++v) adj_[c][v] = tables[c][v - 1];
    }
    for (Colour c = 0; c <= n_; ++c)
      for (Vertex v = 1; v <= p_; ++v) {
        Vertex w = adj_[c][v];
        if (w < 1 || w > p_)
          fail(Error::Kind::InvalidInvolution, "colour " + std::to_string(c) + ": neighbour " +
                                                   std::to_string(w) + " of vertex " +
                                                   std::to_string(v) + " out of range");
        if (w == v)
          fail(Error::Kind::InvalidInvolution,
               "colour " + std::to_string(c) + ": loop at vertex " + std::to_string(v));
        if (adj_[c][w] != v)
          fail(Error::Kind::InvalidInvolution,
               "colour " + std::to_string(c) + ": vertices " + std::to_string(v) + " and " +
                   std::to_string(w) + " are not mutual neighbours");
      }
  }

  int dimension() const { return n_; }
  int order() const { return p_; }
  int colour_count() const { return n_ + 1; }

  Vertex neighbour(Colour c, Vertex v) const { return adj_[c][v]; }

  bool valid_vertex(Vertex v) const { return v >= 1 && v <= p_; }
  bool valid_colour(Colour c) const { return c >= 0 && c <= n_; }
  ColourSet all_colours() const { return ColourSet::full(n_); }

  /// Colours c with a c-edge joining x and y.
  ColourSet joining_colours(Vertex x, Vertex y) const {
    ColourSet s;
    for (Colour c = 0; c <= n_; ++c)
      if (adj_[c][x] == y) s = s.with(c);
    return s;
  }

  friend bool operator==(const Gem&, const Gem&) = default;

 private:
  int n_;
  int p_;
  std::vector<std::vector<Vertex>> adj_;  // [colour][vertex], slot 0 unused
};

/// A coloured edge named by one endpoint.  (v,c) and (mate,c) denote the
/// same edge; the canonical handle uses the smaller endpoint.  Where an
/// orientation matters, v is the tail.
struct Edge {
  Vertex v = 0;
  Colour c = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

inline Vertex edge_mate(const Gem& g, Edge e) { return g.neighbour(e.c, e.v); }

inline std::pair<Vertex, Vertex> edge_endpoints(const Gem& g, Edge e) {
  Vertex w = edge_mate(g, e);
  return {std::min(e.v, w), std::max(e.v, w)};
}

inline Edge canonical_edge(const Gem& g, Edge e) { return {edge_endpoints(g, e).first, e.c}; }

inline bool same_edge(const Gem& g, Edge e, Edge f) {
  return e.c == f.c && edge_endpoints(g, e) == edge_endpoints(g, f);
}

/// Canonical handles of all c-coloured edges, ascending by smaller endpoint.
inline std::vector<Edge> edges_of_colour(const Gem& g, Colour c) {
  std::vector<Edge> out;
  for (Vertex v = 1; v <= g.order(); ++v)
    if (g.neighbour(c, v) > v) out.push_back({v, c});
  return out;
}

inline void check_colour_set(const Gem& g, ColourSet b) {
  if ((b.bits() & ~g.all_colours().bits()) != 0)
    fail(Error::Kind::BadColour, "colour set " + b.to_string() + " not within 0.." +
                                     std::to_string(g.dimension()));
}

/// The connected components of (V, edges coloured in B), i.e. the B-residues.
struct ResiduePartition {
  ColourSet colours;
  std::vector<std::vector<Vertex>> blocks;  // sorted internally, ordered by smallest member
  std::vector<int> block_of;                // vertex -> index into blocks

  int count() const { return static_cast<int>(blocks.size()); }
  const std::vector<Vertex>& block_containing(Vertex v) const { return blocks[block_of[v]]; }
  bool same_block(Vertex x, Vertex y) const { return block_of[x] == block_of[y]; }
};

inline ResiduePartition residues(const Gem& g, ColourSet b) {
  check_colour_set(g, b);
  ResiduePartition part;
  part.colours = b;
  part.block_of.assign(g.order() + 1, -1);
  std::vector<Colour> cols = b.to_vector();
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= g.order(); ++s) {
    if (part.block_of[s] >= 0) continue;
    int idx = part.count();
    std::vector<Vertex> block;
    stack.push_back(s);
    part.block_of[s] = idx;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      block.push_back(v);
      for (Colour c : cols) {
        Vertex w = g.neighbour(c, v);
        if (part.block_of[w] < 0) {
          part.block_of[w] = idx;
          stack.push_back(w);
        }
      }
    }
    std::sort(block.begin(), block.end());
    part.blocks.push_back(std::move(block));
  }
  return part;
}

inline std::vector<Vertex> residue_of(const Gem& g, ColourSet b, Vertex v) {
  if (!g.valid_vertex(v)) fail(Error::Kind::PreconditionFailed, "vertex out of range");
  return residues(g, b).block_containing(v);
}

inline int residue_count(const Gem& g, ColourSet b) { return residues(g, b).count(); }

inline ResiduePartition components(const Gem& g) { return residues(g, g.all_colours()); }

inline bool is_connected(const Gem& g) { return components(g).count() == 1; }

/// Simplex counts f_0..f_n of the associated coloured complex:
/// f_s is the sum of g_B over all colour sets B of size n-s, with g_{}=p.
inline std::vector<long long> f_vector(const Gem& g) {
  int n = g.dimension();
  std::vector<long long> f(n + 1, 0);
  std::uint32_t all = ColourSet::full(n).bits();
  for (std::uint32_t mask = 0; mask != all; ++mask) {
    int size = std::popcount(mask);
    f[n - size] += residue_count(g, ColourSet::from_bits(mask));
  }
  return f;
}

inline long long euler_characteristic(const Gem& g) {
  std::vector<long long> f = f_vector(g);
  long long chi = 0;
  for (int s = 0; s <= g.dimension(); ++s) chi += (s % 2 == 0 ? 1 : -1) * f[s];
  return chi;
}

struct Bipartition {
  std::vector<int> side;  // vertex -> 0 or 1; smallest vertex of each component on side 0
  std::vector<Vertex> v0, v1;
};

inline std::optional<Bipartition> bipartition(const Gem& g) {
  Bipartition bip;
  bip.side.assign(g.order() + 1, -1);
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= g.order(); ++s) {
    if (bip.side[s] >= 0) continue;
    bip.side[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Colour c = 0; c <= g.dimension(); ++c) {
        Vertex w = g.neighbour(c, v);
        if (bip.side[w] < 0) {
          bip.side[w] = 1 - bip.side[v];
          stack.push_back(w);
        } else if (bip.side[w] == bip.side[v]) {
          return std::nullopt;  // odd cycle
        }
      }
    }
  }
  for (Vertex v = 1; v <= g.order(); ++v) (bip.side[v] == 0 ? bip.v0 : bip.v1).push_back(v);
  return bip;
}

inline bool is_bipartite(const Gem& g) { return bipartition(g).has_value(); }

/// True iff deleting any one colour leaves a connected graph (g_chat = 1 for
/// every colour c).  A contracted gem is in particular connected.
inline bool is_contracted(const Gem& g) {
  for (Colour c = 0; c <= g.dimension(); ++c)
    if (residue_count(g, ColourSet::hat(c, g.dimension())) != 1) return false;
  return true;
}

/// The order-2 crystallization of the n-sphere: two vertices joined by all
/// n+1 colours.
inline Gem standard_crystallization(int n) {
  if (n < 1) fail(Error::Kind::BadArity, "dimension must be at least 1");
  std::vector<std::vector<Vertex>> tables(n + 1, {2, 1});
  return Gem(n, 2, tables);
}

/// A residue extracted as a standalone gem: vertices renumbered ascending,
/// colours remapped ascending onto 0..|colours|-1.
struct SubGem {
  Gem gem;
  std::vector<Vertex> old_label;   // new vertex -> old vertex (index 0 unused)
  std::vector<Colour> old_colour;  // new colour -> old colour
};

inline SubGem subgem(const Gem& g, const std::vector<Vertex>& block, ColourSet colours) {
  check_colour_set(g, colours);
  std::vector<Colour> cols = colours.to_vector();
  if (cols.size() < 2) fail(Error::Kind::PreconditionFailed, "subgem needs at least two colours");
  std::vector<Vertex> verts = block;
  std::sort(verts.begin(), verts.end());
  int sub_p = static_cast<int>(verts.size());
  std::vector<Vertex> new_label(g.order() + 1, 0);
  for (int i = 0; i < sub_p; ++i) new_label[verts[i]] = i + 1;
  std::vector<std::vector<Vertex>> tables(cols.size(), std::vector<Vertex>(sub_p, 0));
  for (std::size_t ci = 0; ci < cols.size(); ++ci)
    for (int i = 0; i < sub_p; ++i) {
      Vertex w = g.neighbour(cols[ci], verts[i]);
      if (new_label[w] == 0)
        fail(Error::Kind::PreconditionFailed, "vertex set is not closed under the given colours");
      tables[ci][i] = new_label[w];
    }
  SubGem out{Gem(static_cast<int>(cols.size()) - 1, sub_p, tables), {}, cols};
  out.old_label.assign(sub_p + 1, 0);
  for (int i = 0; i < sub_p; ++i) out.old_label[i + 1] = verts[i];
  return out;
}

/// Both gems side by side, the second one's vertices shifted up by the
/// first one's order.
inline Gem disjoint_union(const Gem& a, const Gem& b) {
  if (a.dimension() != b.dimension())
    fail(Error::Kind::DimensionMismatch, "cannot unite gems of different dimension");
  int n = a.dimension();
  int p = a.order() + b.order();
  std::vector<std::vector<Vertex>> tables(n + 1, std::vector<Vertex>(p, 0));
  for (Colour c = 0; c <= n; ++c) {
    for (Vertex v = 1; v <= a.order(); ++v) tables[c][v - 1] = a.neighbour(c, v);
    for (Vertex v = 1; v <= b.order(); ++v) tables[c][a.order() + v - 1] = a.order() + b.neighbour(c, v);
  }
  return Gem(n, p, tables);
}

}  // namespace gemcalc
