#pragma once

#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gemcalc/code.hpp"
#include "gemcalc/gem.hpp"
#include "gemcalc/rho.hpp"
#include "gemcalc/verify.hpp"

namespace gemcalc {

struct CatalogueEntry {
  CanonicalCode code;
  int order = 0;
  int dimension = 0;
  bool bipartite = false;
  VerdictValue gem_verdict = VerdictValue::Unknown;  // Yes or Unknown; No is never stored
  bool rigid = true;
};

struct Catalogue {
  int dimension = 0;
  int max_order = 0;
  std::vector<CatalogueEntry> entries;
};

struct EnumerateOptions {
  bool bipartite_only = false;
  long long node_budget = 50'000'000;
  int jobs = 1;
  VerifyOptions verify{};
};

namespace detail {

// Enumerates fixed-point-free involutions on the unmatched vertices by
// always pairing the smallest open vertex first; yields via callback.
template <typename Fn>
bool extend_involution(std::vector<Vertex>& invol, int p, std::atomic<long long>& nodes_left,
                       const Fn& complete) {
  Vertex u = 0;
  for (Vertex v = 1; v <= p; ++v)
    if (invol[v] == 0) {
      u = v;
      break;
    }
  if (u == 0) return complete();
  for (Vertex w = u + 1; w <= p; ++w) {
    if (invol[w] != 0) continue;
    if (nodes_left.fetch_sub(1) <= 0) return false;
    invol[u] = w;
    invol[w] = u;
    if (!extend_involution(invol, p, nodes_left, complete)) {
      invol[u] = invol[w] = 0;
      return false;
    }
    invol[u] = invol[w] = 0;
  }
  return true;
}

inline Gem gem_from_involutions(int n, int p, const std::vector<std::vector<Vertex>>& invols) {
  std::vector<std::vector<Vertex>> tables(n + 1, std::vector<Vertex>(p, 0));
  for (Colour c = 0; c <= n; ++c)
    for (Vertex v = 1; v <= p; ++v) tables[c][v - 1] = invols[c][v];
  return Gem(n, p, tables);
}

// Partial pruning state: 2-colourability of the graph assembled so far, and
// connectivity once all colours but the last are in place.
inline bool partial_bipartite(int p, const std::vector<std::vector<Vertex>>& invols, int upto) {
  std::vector<int> side(p + 1, -1);
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= p; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (int c = 0; c <= upto; ++c) {
        Vertex w = invols[c][v];
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          stack.push_back(w);
        } else if (side[w] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

inline bool partial_connected(int p, const std::vector<std::vector<Vertex>>& invols, int upto) {
  std::vector<char> seen(p + 1, 0);
  std::vector<Vertex> stack = {1};
  seen[1] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (int c = 0; c <= upto; ++c) {
      Vertex w = invols[c][v];
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == p;
}

}  // namespace detail

/// All rigid crystallizations of dimension n with order <= max_order, up to
/// coloured isomorphism, that are not certifiably non-gems.  Backtracks over
/// per-colour involutions with colour 0 pinned to (1 2)(3 4)..., prunes on
/// partial bipartiteness and on connectivity of the first n colours, and
/// deduplicates by canonical code.  Deterministic regardless of job count.
inline std::vector<CatalogueEntry> enumerate_rigid(int n, int max_order,
                                                   const EnumerateOptions& opts = {}) {
  if (n < 3) fail(Error::Kind::DimensionTooLow, "the census is defined for dimension >= 3");
  if (max_order < 2 || max_order % 2 != 0)
    fail(Error::Kind::PreconditionFailed, "max_order must be even and at least 2");
  std::atomic<long long> nodes_left{opts.node_budget};
  std::map<std::string, CatalogueEntry> found;  // code text -> entry

  for (int p = 2; p <= max_order; p += 2) {
    // colour-1 candidates form the top-level shards
    std::vector<std::vector<Vertex>> colour1_choices;
    {
      std::vector<Vertex> invol(p + 1, 0);
      detail::extend_involution(invol, p, nodes_left, [&]() {
        colour1_choices.push_back(invol);
        return true;
      });
    }
    std::vector<Vertex> standard(p + 1, 0);
    for (Vertex v = 1; v <= p; v += 2) {
      standard[v] = v + 1;
      standard[v + 1] = v;
    }

    int jobs = std::max(1, opts.jobs);
    std::vector<std::map<std::string, CatalogueEntry>> shard_found(jobs);
    std::vector<std::thread> workers;

    auto run_shard = [&](int shard) {
      std::vector<std::vector<Vertex>> invols(n + 1, std::vector<Vertex>(p + 1, 0));
      invols[0] = standard;

      // assigns colours j..n, then filters the completed graph
      auto search = [&](auto&& self, int j) -> bool {
        if (j > n) {
          Gem g = detail::gem_from_involutions(n, p, invols);
          if (!is_contracted(g)) return true;
          if (!find_rho_pairs(g).empty()) return true;
          bool bip = is_bipartite(g);
          if (opts.bipartite_only && !bip) return true;
          Verdict gv = is_gem(g, opts.verify);
          if (gv.no()) return true;
          CanonicalCode code = canonical_code(g);
          CatalogueEntry entry{code, p, n, bip, gv.value, true};
          shard_found[shard].emplace(code.text, entry);
          return true;
        }
        return detail::extend_involution(invols[j], p, nodes_left, [&]() {
          if (opts.bipartite_only && !detail::partial_bipartite(p, invols, j)) return true;
          if (j == n - 1 && !detail::partial_connected(p, invols, j)) return true;
          return self(self, j + 1);
        });
      };

      for (std::size_t idx = shard; idx < colour1_choices.size();
           idx += static_cast<std::size_t>(jobs)) {
        invols[1] = colour1_choices[idx];
        if (opts.bipartite_only && !detail::partial_bipartite(p, invols, 1)) continue;
        if (!search(search, 2)) return;
      }
    };

    if (jobs == 1) {
      run_shard(0);
    } else {
      for (int s = 0; s < jobs; ++s) workers.emplace_back(run_shard, s);
      for (std::thread& t : workers) t.join();
    }
    for (const auto& shard : shard_found)
      for (const auto& [text, entry] : shard) found.emplace(text, entry);

    if (nodes_left.load() <= 0)
      fail(Error::Kind::BudgetExceeded,
           "search budget of " + std::to_string(opts.node_budget) + " nodes exhausted at order " +
               std::to_string(p));
  }

  std::vector<CatalogueEntry> out;
  out.reserve(found.size());
  for (const auto& [text, entry] : found) out.push_back(entry);
  std::sort(out.begin(), out.end(), [](const CatalogueEntry& a, const CatalogueEntry& b) {
    return a.order != b.order ? a.order < b.order : a.code.text < b.code.text;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Catalogue files: a header line `dim <n> max_order <k>`, then one
// `<order> <code> <flags>` line per entry, flags being
// bip|nonbip,gem-yes|gem-unknown.  Loading re-validates each entry.

inline std::string write_catalogue(const Catalogue& cat) {
  std::string out =
      "dim " + std::to_string(cat.dimension) + " max_order " + std::to_string(cat.max_order) + "\n";
  for (const CatalogueEntry& e : cat.entries) {
    out += std::to_string(e.order) + " " + e.code.text + " ";
    out += e.bipartite ? "bip" : "nonbip";
    out += e.gem_verdict == VerdictValue::Yes ? ",gem-yes" : ",gem-unknown";
    out += "\n";
  }
  return out;
}

inline void save_catalogue(const Catalogue& cat, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Error::Kind::ParseError, path + ": cannot open for writing");
  out << write_catalogue(cat);
}

inline Catalogue parse_catalogue(const std::string& text, const std::string& origin = "catalogue") {
  std::istringstream in(text);
  Catalogue cat;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::set<std::string> seen_codes;
  auto err = [&](const std::string& msg) {
    fail(Error::Kind::CorruptCatalogue, origin + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (!have_header) {
      int n = 0, max_order = 0;
      if (toks.size() != 4 || toks[0] != "dim" || toks[2] != "max_order" ||
          !detail::parse_int(toks[1], n) || !detail::parse_int(toks[3], max_order))
        err("expected header 'dim <n> max_order <k>'");
      if (n < 3 || max_order < 2 || max_order % 2 != 0) err("header values out of range");
      cat.dimension = n;
      cat.max_order = max_order;
      have_header = true;
      continue;
    }
    if (toks.size() != 3) err("expected '<order> <code> <flags>'");
    int order = 0;
    if (!detail::parse_int(toks[0], order)) err("bad order '" + toks[0] + "'");
    CatalogueEntry entry;
    entry.order = order;
    entry.dimension = cat.dimension;
    Gem g = [&]() {
      try {
        return decode_code(toks[1]);
      } catch (const Error& e) {
        err(e.what());
        throw;
      }
    }();
    if (g.order() != order) err("order field disagrees with the code header");
    if (g.dimension() != cat.dimension) err("entry dimension disagrees with the catalogue header");
    if (order > cat.max_order) err("entry order exceeds the catalogue max_order");
    CanonicalCode recoded = canonical_code(g);
    if (recoded.text != toks[1]) err("code is not canonical for the graph it denotes");
    if (!seen_codes.insert(toks[1]).second) err("duplicate code");
    if (!is_contracted(g)) err("entry is not contracted");
    if (!is_rigid(g)) err("entry is not rigid");
    entry.code = recoded;
    entry.rigid = true;
    std::size_t comma = toks[2].find(',');
    if (comma == std::string::npos) err("bad flags '" + toks[2] + "'");
    std::string bip_flag = toks[2].substr(0, comma);
    std::string gem_flag = toks[2].substr(comma + 1);
    if (bip_flag != "bip" && bip_flag != "nonbip") err("bad bipartiteness flag '" + bip_flag + "'");
    entry.bipartite = bip_flag == "bip";
    if (entry.bipartite != is_bipartite(g)) err("bipartiteness flag disagrees with the graph");
    if (gem_flag == "gem-yes")
      entry.gem_verdict = VerdictValue::Yes;
    else if (gem_flag == "gem-unknown")
      entry.gem_verdict = VerdictValue::Unknown;
    else
      err("bad gem flag '" + gem_flag + "'");
    cat.entries.push_back(std::move(entry));
  }
  if (!have_header) fail(Error::Kind::CorruptCatalogue, origin + ": missing header");
  return cat;
}

inline Catalogue load_catalogue(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Error::Kind::CorruptCatalogue, path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalogue(buf.str(), path);
}

inline Catalogue merge_catalogues(const std::vector<Catalogue>& parts) {
  if (parts.empty()) fail(Error::Kind::PreconditionFailed, "nothing to merge");
  Catalogue out;
  out.dimension = parts.front().dimension;
  std::map<std::string, CatalogueEntry> by_code;
  for (const Catalogue& part : parts) {
    if (part.dimension != out.dimension)
      fail(Error::Kind::DimensionMismatch, "catalogues have different dimensions");
    out.max_order = std::max(out.max_order, part.max_order);
    for (const CatalogueEntry& e : part.entries) {
      auto [it, inserted] = by_code.emplace(e.code.text, e);
      if (!inserted && (it->second.order != e.order || it->second.bipartite != e.bipartite ||
                        it->second.gem_verdict != e.gem_verdict))
        fail(Error::Kind::CorruptCatalogue, "conflicting entries for code " + e.code.text);
    }
  }
  for (const auto& [text, entry] : by_code) out.entries.push_back(entry);
  std::sort(out.entries.begin(), out.entries.end(),
            [](const CatalogueEntry& a, const CatalogueEntry& b) {
              return a.order != b.order ? a.order < b.order : a.code.text < b.code.text;
            });
  return out;
}

}  // namespace gemcalc
