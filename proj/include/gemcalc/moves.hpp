#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gemcalc/code.hpp"
#include "gemcalc/gem.hpp"
#include "gemcalc/rho.hpp"

namespace gemcalc {

/// Two vertices joined by exactly the edges coloured by `colours`, lying in
/// different residues of the complementary colours.
struct Dipole {
  Vertex x = 0, y = 0;  // x < y
  ColourSet colours;
  int type() const { return colours.count(); }
};

inline std::optional<Dipole> classify_dipole(const Gem& g, Vertex x, Vertex y) {
  if (!g.valid_vertex(x) || !g.valid_vertex(y) || x == y)
    fail(Error::Kind::PreconditionFailed, "need two distinct vertices");
  ColourSet joining = g.joining_colours(x, y);
  if (joining.empty() || joining.count() > g.dimension()) return std::nullopt;
  ColourSet rest = joining.complement(g.dimension());
  if (residues(g, rest).same_block(x, y)) return std::nullopt;
  return Dipole{std::min(x, y), std::max(x, y), joining};
}

inline std::vector<Dipole> find_dipoles(const Gem& g, int k) {
  if (k < 1 || k > g.dimension())
    fail(Error::Kind::BadType, "dipole type must lie in 1.." + std::to_string(g.dimension()));
  std::vector<Dipole> out;
  for (Vertex x = 1; x <= g.order(); ++x)
    for (Vertex y = x + 1; y <= g.order(); ++y) {
      if (g.joining_colours(x, y).count() != k) continue;
      if (auto d = classify_dipole(g, x, y)) out.push_back(*d);
    }
  return out;
}

/// All proper dipoles of any type, ordered by (x, y).
inline std::vector<Dipole> find_all_dipoles(const Gem& g) {
  std::vector<Dipole> out;
  for (Vertex x = 1; x <= g.order(); ++x)
    for (Vertex y = x + 1; y <= g.order(); ++y) {
      if (g.joining_colours(x, y).empty()) continue;
      if (auto d = classify_dipole(g, x, y)) out.push_back(*d);
    }
  return out;
}

namespace detail {

// Deletes the listed (sorted, distinct) vertices and renumbers the rest
// ascending.  `rejoin[c]` pairs up the neighbours the deleted vertices leave
// dangling in colour c; untouched adjacencies are copied.
inline Gem delete_and_rejoin(const Gem& g, const std::vector<Vertex>& deleted,
                             const std::map<Colour, std::pair<Vertex, Vertex>>& rejoin) {
  std::vector<Vertex> new_label(g.order() + 1, 0);
  int next = 1;
  std::size_t di = 0;
  for (Vertex v = 1; v <= g.order(); ++v) {
    if (di < deleted.size() && deleted[di] == v) {
      ++di;
      continue;
    }
    new_label[v] = next++;
  }
  int p = next - 1;
  std::vector<std::vector<Vertex>> tables(g.colour_count(), std::vector<Vertex>(p, 0));
  for (Colour c = 0; c <= g.dimension(); ++c)
    for (Vertex v = 1; v <= g.order(); ++v) {
      if (new_label[v] == 0) continue;
      Vertex w = g.neighbour(c, v);
      if (new_label[w] != 0) tables[c][new_label[v] - 1] = new_label[w];
    }
  for (const auto& [c, ends] : rejoin) {
    tables[c][new_label[ends.first] - 1] = new_label[ends.second];
    tables[c][new_label[ends.second] - 1] = new_label[ends.first];
  }
  return Gem(g.dimension(), p, tables);
}

}  // namespace detail

/// Removes the dipole's vertices and splices the hanging edges of each
/// uninvolved colour together.  Vertices are renumbered compactly.
inline Gem cancel_dipole(const Gem& g, const Dipole& d) {
  auto now = classify_dipole(g, d.x, d.y);
  if (!now || now->colours != d.colours)
    fail(Error::Kind::StaleDipole, "vertices " + std::to_string(d.x) + "," + std::to_string(d.y) +
                                       " no longer form the recorded dipole");
  std::map<Colour, std::pair<Vertex, Vertex>> rejoin;
  for (Colour c = 0; c <= g.dimension(); ++c) {
    if (d.colours.contains(c)) continue;
    rejoin[c] = {g.neighbour(c, d.x), g.neighbour(c, d.y)};
  }
  return detail::delete_and_rejoin(g, {std::min(d.x, d.y), std::max(d.x, d.y)}, rejoin);
}

/// Splits the edge e with a fresh n-dipole: new vertices A = p+1 and
/// B = p+2 joined by every colour except e's, with e(0)-A and B-e(1) in e's
/// colour.  Cancelling (A,B) restores the input up to isomorphism.
inline Gem add_blob(const Gem& g, Edge e) {
  if (!g.valid_vertex(e.v) || !g.valid_colour(e.c))
    fail(Error::Kind::PreconditionFailed, "edge handle out of range");
  auto [u, w] = edge_endpoints(g, e);
  Colour c = e.c;
  int p = g.order() + 2;
  Vertex a = p - 1, b = p;
  std::vector<std::vector<Vertex>> tables(g.colour_count(), std::vector<Vertex>(p, 0));
  for (Colour col = 0; col <= g.dimension(); ++col) {
    for (Vertex v = 1; v <= g.order(); ++v) tables[col][v - 1] = g.neighbour(col, v);
    if (col == c) {
      tables[col][u - 1] = a;
      tables[col][a - 1] = u;
      tables[col][b - 1] = w;
      tables[col][w - 1] = b;
    } else {
      tables[col][a - 1] = b;
      tables[col][b - 1] = a;
    }
  }
  return Gem(g.dimension(), p, tables);
}

/// Inserts a fresh dipole x = p+1, y = p+2 joined by `colours`.  For every
/// other colour i the attachment names the vertex whose i-edge is split,
/// with x landing on the named side.  The insertion must produce a genuine
/// dipole (the new vertices must end up in different residues of the
/// complementary colours), otherwise the attachment is rejected.
inline Gem add_dipole(const Gem& g, ColourSet colours,
                      const std::vector<std::pair<Colour, Vertex>>& attach) {
  check_colour_set(g, colours);
  int k = colours.count();
  if (k < 1 || k > g.dimension())
    fail(Error::Kind::InvalidAttachment, "dipole type must lie in 1.." + std::to_string(g.dimension()));
  ColourSet rest = colours.complement(g.dimension());
  ColourSet seen;
  for (const auto& [c, v] : attach) {
    if (!g.valid_colour(c) || colours.contains(c) || seen.contains(c))
      fail(Error::Kind::InvalidAttachment, "attachment colours must cover each uninvolved colour once");
    if (!g.valid_vertex(v)) fail(Error::Kind::InvalidAttachment, "attachment vertex out of range");
    seen = seen.with(c);
  }
  if (seen != rest)
    fail(Error::Kind::InvalidAttachment, "attachment covers " + seen.to_string() + ", expected " +
                                             rest.to_string());
  int p = g.order() + 2;
  Vertex x = p - 1, y = p;
  std::vector<std::vector<Vertex>> tables(g.colour_count(), std::vector<Vertex>(p, 0));
  for (Colour col = 0; col <= g.dimension(); ++col)
    for (Vertex v = 1; v <= g.order(); ++v) tables[col][v - 1] = g.neighbour(col, v);
  for (Colour col : colours.to_vector()) {
    tables[col][x - 1] = y;
    tables[col][y - 1] = x;
  }
  for (const auto& [c, u] : attach) {
    Vertex w = g.neighbour(c, u);
    tables[c][u - 1] = x;
    tables[c][x - 1] = u;
    tables[c][y - 1] = w;
    tables[c][w - 1] = y;
  }
  Gem out(g.dimension(), p, tables);
  auto d = classify_dipole(out, x, y);
  if (!d || d->colours != colours)
    fail(Error::Kind::InvalidAttachment,
         "attachment does not separate the new vertices: no dipole of colours " +
             colours.to_string() + " is created");
  return out;
}

/// True iff x and y lie in different c-hat residues for every colour c.
inline bool completely_separated(const Gem& g, Vertex x, Vertex y) {
  if (!g.valid_vertex(x) || !g.valid_vertex(y) || x == y)
    fail(Error::Kind::PreconditionFailed, "need two distinct vertices");
  for (Colour c = 0; c <= g.dimension(); ++c)
    if (residues(g, ColourSet::hat(c, g.dimension())).same_block(x, y)) return false;
  return true;
}

/// Deletes two completely separated vertices and glues the hanging edges
/// colour by colour.  Realizes a connected sum when x and y sat in the only
/// two components, and attaches a handle when they shared one.
inline Gem fuse(const Gem& g, Vertex x, Vertex y) {
  if (!completely_separated(g, x, y))
    fail(Error::Kind::NotSeparated, "vertices " + std::to_string(x) + "," + std::to_string(y) +
                                        " are not completely separated");
  std::map<Colour, std::pair<Vertex, Vertex>> rejoin;
  for (Colour c = 0; c <= g.dimension(); ++c) rejoin[c] = {g.neighbour(c, x), g.neighbour(c, y)};
  return detail::delete_and_rejoin(g, {std::min(x, y), std::max(x, y)}, rejoin);
}

// ---------------------------------------------------------------------------
// Move traces

struct TraceStep {
  enum class Op { Cancel, Blob, Add, Switch };
  Op op = Op::Cancel;
  Vertex x = 0, y = 0;                            // Cancel
  Edge edge{};                                    // Blob
  ColourSet colours;                              // Add
  std::vector<std::pair<Colour, Vertex>> attach;  // Add
  Edge e{}, f{};                                  // Switch
  SwitchVariant variant = SwitchVariant::UW_VZ;   // Switch

  static TraceStep cancel(Vertex x, Vertex y) {
    TraceStep s;
    s.op = Op::Cancel;
    s.x = x;
    s.y = y;
    return s;
  }
  static TraceStep blob(Edge e) {
    TraceStep s;
    s.op = Op::Blob;
    s.edge = e;
    return s;
  }
  static TraceStep add(ColourSet colours, std::vector<std::pair<Colour, Vertex>> attach) {
    TraceStep s;
    s.op = Op::Add;
    s.colours = colours;
    s.attach = std::move(attach);
    return s;
  }
  static TraceStep switching(Edge e, Edge f, SwitchVariant v) {
    TraceStep s;
    s.op = Op::Switch;
    s.e = e;
    s.f = f;
    s.variant = v;
    return s;
  }

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

inline std::string to_string(const TraceStep& s) {
  switch (s.op) {
    case TraceStep::Op::Cancel:
      return "cancel " + std::to_string(s.x) + " " + std::to_string(s.y);
    case TraceStep::Op::Blob:
      return "blob " + std::to_string(s.edge.v) + " " + std::to_string(s.edge.c);
    case TraceStep::Op::Add: {
      std::string out = "add ";
      bool first = true;
      for (Colour c : s.colours.to_vector()) {
        if (!first) out += ',';
        out += std::to_string(c);
        first = false;
      }
      for (const auto& [c, v] : s.attach) out += " " + std::to_string(c) + ":" + std::to_string(v);
      return out;
    }
    case TraceStep::Op::Switch:
      return "switch " + std::to_string(s.e.v) + " " + std::to_string(s.e.c) + " " +
             std::to_string(s.f.v) + " " + std::to_string(s.f.c) + " " + to_string(s.variant);
  }
  return {};
}

struct MoveTrace {
  std::vector<TraceStep> steps;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  void push(TraceStep s) { steps.push_back(std::move(s)); }
  void append(const MoveTrace& other) {
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  }

  friend bool operator==(const MoveTrace&, const MoveTrace&) = default;
};

inline std::string write_trace(const MoveTrace& t) {
  std::string out;
  for (const TraceStep& s : t.steps) out += to_string(s) + "\n";
  return out;
}

inline MoveTrace parse_trace(std::istream& in, const std::string& origin = "trace") {
  MoveTrace t;
  std::string line;
  int line_no = 0;
  auto err = [&](const std::string& msg) {
    fail(Error::Kind::ParseError, origin + ":" + std::to_string(line_no) + ": " + msg);
  };
  auto want_int = [&](const std::string& tok) {
    int v = 0;
    if (!detail::parse_int(tok, v)) err("bad integer '" + tok + "'");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string tok; ls >> tok;) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks[0] == "cancel") {
      if (toks.size() != 3) err("expected 'cancel x y'");
      t.push(TraceStep::cancel(want_int(toks[1]), want_int(toks[2])));
    } else if (toks[0] == "blob") {
      if (toks.size() != 3) err("expected 'blob v c'");
      t.push(TraceStep::blob({want_int(toks[1]), want_int(toks[2])}));
    } else if (toks[0] == "add") {
      if (toks.size() < 3) err("expected 'add colours c:v ...'");
      ColourSet colours;
      std::istringstream cs(toks[1]);
      for (std::string part; std::getline(cs, part, ',');) colours = colours.with(want_int(part));
      std::vector<std::pair<Colour, Vertex>> attach;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        std::size_t sep = toks[i].find(':');
        if (sep == std::string::npos) err("expected 'colour:vertex', got '" + toks[i] + "'");
        attach.emplace_back(want_int(toks[i].substr(0, sep)), want_int(toks[i].substr(sep + 1)));
      }
      t.push(TraceStep::add(colours, std::move(attach)));
    } else if (toks[0] == "switch") {
      if (toks.size() != 6) err("expected 'switch v1 c1 v2 c2 variant'");
      auto variant = switch_variant_from_string(toks[5]);
      if (!variant) err("unknown variant '" + toks[5] + "'");
      t.push(TraceStep::switching({want_int(toks[1]), want_int(toks[2])},
                                  {want_int(toks[3]), want_int(toks[4])}, *variant));
    } else {
      err("unknown step '" + toks[0] + "'");
    }
  }
  return t;
}

inline MoveTrace parse_trace(const std::string& text, const std::string& origin = "trace") {
  std::istringstream in(text);
  return parse_trace(in, origin);
}

struct TraceOutcome {
  bool ok = false;
  std::size_t failed_step = 0;  // 1-based; 0 when ok
  std::string reason;
  std::optional<Gem> final;

  explicit operator bool() const { return ok; }
};

/// Replays the steps, re-checking every precondition on the way.
inline TraceOutcome replay_trace(const Gem& start, const MoveTrace& t) {
  Gem g = start;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const TraceStep& s = t.steps[i];
    try {
      switch (s.op) {
        case TraceStep::Op::Cancel: {
          if (!g.valid_vertex(s.x) || !g.valid_vertex(s.y) || s.x == s.y)
            return {false, i + 1, "vertices out of range", std::nullopt};
          auto d = classify_dipole(g, s.x, s.y);
          if (!d)
            return {false, i + 1,
                    "(" + std::to_string(s.x) + "," + std::to_string(s.y) + ") is not a dipole",
                    std::nullopt};
          g = cancel_dipole(g, *d);
          break;
        }
        case TraceStep::Op::Blob:
          g = add_blob(g, s.edge);
          break;
        case TraceStep::Op::Add:
          g = add_dipole(g, s.colours, s.attach);
          break;
        case TraceStep::Op::Switch:
          g = switch_generic(g, s.e, s.f, s.variant);
          break;
      }
    } catch (const Error& e) {
      return {false, i + 1, e.what(), std::nullopt};
    }
  }
  return {true, 0, "", g};
}

/// True iff every step's precondition holds in sequence and the final gem
/// is coloured-isomorphic to `end`.
inline TraceOutcome verify_trace(const Gem& start, const MoveTrace& t, const Gem& end) {
  TraceOutcome out = replay_trace(start, t);
  if (!out.ok) return out;
  if (out.final->dimension() != end.dimension() || out.final->order() != end.order() ||
      canonical_key(*out.final) != canonical_key(end)) {
    out.ok = false;
    out.failed_step = t.steps.size();
    out.reason = "final gem is not coloured-isomorphic to the expected gem";
  }
  return out;
}

inline Gem apply_trace(const Gem& start, const MoveTrace& t) {
  TraceOutcome out = replay_trace(start, t);
  if (!out.ok)
    fail(Error::Kind::PreconditionFailed,
         "trace fails at step " + std::to_string(out.failed_step) + ": " + out.reason);
  return *out.final;
}

}  // namespace gemcalc
