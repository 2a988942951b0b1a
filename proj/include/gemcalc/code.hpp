#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gemcalc/gem.hpp"

namespace gemcalc {

/// A total, relabelling- and colour-permutation-invariant key for a
/// connected gem.  Equal codes hold exactly for coloured-isomorphic gems.
struct CanonicalCode {
  int n = 0;
  int p = 0;
  std::string text;

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend bool operator<(const CanonicalCode& a, const CanonicalCode& b) { return a.text < b.text; }
};

namespace detail {

// Rooted numbering: relabel vertices by a breadth-first traversal from
// `root`, exploring edges in permuted-colour-ascending order, then emit the
// relabelled adjacency rows in that colour order.  `colour_order[d]` is the
// original colour visited d-th.
inline void rooted_word(const Gem& g, Vertex root, const std::vector<Colour>& colour_order,
                        std::vector<int>& word, std::vector<Vertex>& relabel,
                        std::vector<Vertex>& order) {
  int p = g.order();
  relabel.assign(p + 1, 0);
  order.clear();
  order.reserve(p);
  relabel[root] = 1;
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    Vertex v = order[i];
    for (Colour c : colour_order) {
      Vertex w = g.neighbour(c, v);
      if (relabel[w] == 0) {
        relabel[w] = static_cast<Vertex>(order.size()) + 1;
        order.push_back(w);
      }
    }
  }
  word.clear();
  word.reserve(static_cast<std::size_t>(p) * (g.dimension() + 1));
  for (Vertex v : order)
    for (Colour c : colour_order) word.push_back(relabel[g.neighbour(c, v)]);
}

inline std::string render_word(int n, int p, const std::vector<int>& word) {
  std::string text = std::to_string(n) + "." + std::to_string(p) + ":";
  for (int v = 0; v < p; ++v) {
    if (v) text += ';';
    for (int d = 0; d <= n; ++d) {
      if (d) text += ',';
      text += std::to_string(word[static_cast<std::size_t>(v) * (n + 1) + d]);
    }
  }
  return text;
}

// Minimal word over all roots for one fixed colour order.  Only complete
// words are produced when the traversal covers every vertex, so callers
// must pass connected gems.
inline std::vector<int> min_word_over_roots(const Gem& g, const std::vector<Colour>& colour_order) {
  std::vector<int> best, word;
  std::vector<Vertex> relabel, order;
  for (Vertex root = 1; root <= g.order(); ++root) {
    rooted_word(g, root, colour_order, word, relabel, order);
    if (best.empty() || word < best) best = word;
  }
  return best;
}

}  // namespace detail

inline CanonicalCode canonical_code(const Gem& g) {
  if (!is_connected(g)) fail(Error::Kind::Disconnected, "canonical code requires a connected gem");
  std::vector<Colour> colour_order(g.colour_count());
  for (Colour c = 0; c <= g.dimension(); ++c) colour_order[c] = c;
  std::vector<int> best;
  do {
    std::vector<int> word = detail::min_word_over_roots(g, colour_order);
    if (best.empty() || word < best) best = word;
  } while (std::next_permutation(colour_order.begin(), colour_order.end()));
  return {g.dimension(), g.order(), detail::render_word(g.dimension(), g.order(), best)};
}

/// A total isomorphism key defined for disconnected gems as well: the
/// colour permutation is shared across components, the per-component words
/// are sorted, so two gems get equal keys exactly when some single colour
/// permutation plus per-component relabellings match them up.
inline std::string canonical_key(const Gem& g) {
  ResiduePartition comp = components(g);
  if (comp.count() == 1) return canonical_code(g).text;
  std::vector<SubGem> subs;
  subs.reserve(comp.count());
  for (const auto& block : comp.blocks) subs.push_back(subgem(g, block, g.all_colours()));
  std::vector<Colour> colour_order(g.colour_count());
  for (Colour c = 0; c <= g.dimension(); ++c) colour_order[c] = c;
  std::string best;
  do {
    std::vector<std::string> parts;
    parts.reserve(subs.size());
    for (const SubGem& s : subs) {
      std::vector<int> word = detail::min_word_over_roots(s.gem, colour_order);
      parts.push_back(detail::render_word(s.gem.dimension(), s.gem.order(), word));
    }
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (const std::string& part : parts) {
      if (!key.empty()) key += '|';
      key += part;
    }
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(colour_order.begin(), colour_order.end()));
  return best;
}

inline bool colour_isomorphic(const Gem& a, const Gem& b) {
  if (a.dimension() != b.dimension())
    fail(Error::Kind::DimensionMismatch, "gems have different dimensions");
  if (a.order() != b.order()) return false;
  return canonical_code(a) == canonical_code(b);
}

/// Keys agree for connected gems with canonical_code; this variant also
/// accepts disconnected ones.
inline bool iso_equal(const Gem& a, const Gem& b) {
  if (a.dimension() != b.dimension()) return false;
  if (a.order() != b.order()) return false;
  return canonical_key(a) == canonical_key(b);
}

/// Rebuild the (relabelled) gem a code denotes.
inline Gem decode_code(const std::string& text) {
  auto bad = [&](const std::string& why) {
    fail(Error::Kind::CorruptCatalogue, "bad code '" + text + "': " + why);
  };
  std::size_t dot = text.find('.');
  std::size_t colon = text.find(':');
  if (dot == std::string::npos || colon == std::string::npos || dot > colon) bad("missing header");
  int n = 0, p = 0;
  if (!detail::parse_int(text.substr(0, dot), n) ||
      !detail::parse_int(text.substr(dot + 1, colon - dot - 1), p))
    bad("unreadable header");
  if (n < 1 || p < 2) bad("header out of range");
  std::vector<std::vector<Vertex>> tables(n + 1, std::vector<Vertex>(p, 0));
  std::size_t pos = colon + 1;
  for (int v = 0; v < p; ++v)
    for (int d = 0; d <= n; ++d) {
      std::size_t end = pos;
      while (end < text.size() && text[end] != ',' && text[end] != ';') ++end;
      int w = 0;
      if (!detail::parse_int(text.substr(pos, end - pos), w)) bad("unreadable entry");
      tables[d][v] = w;
      pos = (end < text.size()) ? end + 1 : end;
    }
  if (pos < text.size()) bad("trailing characters");
  try {
    return Gem(n, p, tables);
  } catch (const Error& e) {
    bad(e.what());
  }
  throw std::logic_error("unreachable");
}

}  // namespace gemcalc
