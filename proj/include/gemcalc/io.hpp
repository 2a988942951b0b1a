#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gemcalc/gem.hpp"

namespace gemcalc {

// The .gem text format.  Line 1 holds "n p"; the following p lines hold, for
// vertex v = 1..p, the c-coloured neighbour of v for c = 0..n, space
// separated.  '#' starts a comment; blank lines are skipped.

inline Gem parse_gem(std::istream& in, const std::string& origin = "input") {
  std::string line;
  int line_no = 0;
  int n = -1, p = -1;
  std::vector<std::vector<Vertex>> rows;       // rows[v-1][c]
  std::vector<int> row_line;                   // source line per row
  auto err = [&](int at, const std::string& msg) {
    fail(Error::Kind::ParseError, origin + ":" + std::to_string(at) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (n < 0) {
      int a = 0, b = 0;
      if (toks.size() != 2 || !detail::parse_int(toks[0], a) || !detail::parse_int(toks[1], b))
        err(line_no, "expected header 'n p'");
      if (a < 1) err(line_no, "dimension must be at least 1");
      if (b < 2 || b % 2 != 0) err(line_no, "order must be even and at least 2");
      n = a;
      p = b;
      continue;
    }
    if (static_cast<int>(rows.size()) == p) err(line_no, "more than " + std::to_string(p) + " vertex rows");
    if (static_cast<int>(toks.size()) != n + 1)
      err(line_no, "expected " + std::to_string(n + 1) + " neighbours, got " +
                       std::to_string(toks.size()));
    std::vector<Vertex> row(n + 1);
    for (int c = 0; c <= n; ++c) {
      if (!detail::parse_int(toks[c], row[c])) err(line_no, "bad integer '" + toks[c] + "'");
      if (row[c] < 1 || row[c] > p)
        err(line_no, "neighbour " + std::to_string(row[c]) + " out of range 1.." + std::to_string(p));
    }
    rows.push_back(std::move(row));
    row_line.push_back(line_no);
  }
  if (n < 0) err(line_no, "missing header line");
  if (static_cast<int>(rows.size()) != p)
    err(line_no, "expected " + std::to_string(p) + " vertex rows, got " + std::to_string(rows.size()));

  // involution checks with line-precise reports
  for (Vertex v = 1; v <= p; ++v)
    for (Colour c = 0; c <= n; ++c) {
      Vertex w = rows[v - 1][c];
      if (w == v) err(row_line[v - 1], "loop at vertex " + std::to_string(v) + " in colour " + std::to_string(c));
      if (rows[w - 1][c] != v)
        err(row_line[w - 1], "colour " + std::to_string(c) + " is not an involution: vertex " +
                                 std::to_string(v) + " points to " + std::to_string(w) +
                                 " but vertex " + std::to_string(w) + " points to " +
                                 std::to_string(rows[w - 1][c]));
    }

  std::vector<std::vector<Vertex>> tables(n + 1, std::vector<Vertex>(p, 0));
  for (Colour c = 0; c <= n; ++c)
    for (Vertex v = 1; v <= p; ++v) tables[c][v - 1] = rows[v - 1][c];
  return Gem(n, p, tables);
}

inline Gem parse_gem(const std::string& text, const std::string& origin = "input") {
  std::istringstream in(text);
  return parse_gem(in, origin);
}

inline Gem load_gem(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Error::Kind::ParseError, path + ": cannot open");
  return parse_gem(in, path);
}

inline std::string write_gem(const Gem& g) {
  std::string out = std::to_string(g.dimension()) + " " + std::to_string(g.order()) + "\n";
  for (Vertex v = 1; v <= g.order(); ++v) {
    for (Colour c = 0; c <= g.dimension(); ++c) {
      if (c) out += ' ';
      out += std::to_string(g.neighbour(c, v));
    }
    out += '\n';
  }
  return out;
}

inline void save_gem(const Gem& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Error::Kind::ParseError, path + ": cannot open for writing");
  out << write_gem(g);
}

}  // namespace gemcalc
