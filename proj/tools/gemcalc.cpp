#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gemcalc/gemcalc.hpp"

namespace {

using namespace gemcalc;

std::string format_edge(const Gem& g, Edge e) {
  auto [a, b] = edge_endpoints(g, e);
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::string format_pair(const Gem& g, const RhoPair& r) {
  std::string out = "rho_" + std::to_string(r.kind == RhoKind::RhoN ? g.dimension()
                                                                    : g.dimension() - 1);
  out += " colour " + std::to_string(r.colour) + " " + format_edge(g, r.e) + "-" +
         format_edge(g, r.f);
  if (r.kind == RhoKind::RhoN1) out += " d=" + std::to_string(r.non_involved);
  return out;
}

std::string inline_trace(const MoveTrace& t) {
  std::string out;
  for (const TraceStep& s : t.steps) {
    if (!out.empty()) out += "; ";
    out += to_string(s);
  }
  return out;
}

int verdict_exit(const Verdict& v) {
  switch (v.value) {
    case VerdictValue::Yes: return 0;
    case VerdictValue::No: return 1;
    case VerdictValue::Unknown: return 3;
  }
  return 1;
}

void print_verdict(const Verdict& v) {
  if (v.yes() && v.trace && !v.trace->empty())
    std::cout << "Yes (trace: " << inline_trace(*v.trace) << ")\n";
  else
    std::cout << to_string(v.value) << " (" << v.evidence << ")\n";
}

int cmd_info(const std::string& path, const std::string& format) {
  Gem g = load_gem(path);
  bool tsv = format == "tsv";
  const char* sep = tsv ? "\t" : " ";
  std::cout << "n" << sep << g.dimension() << "\n";
  std::cout << "p" << sep << g.order() << "\n";
  std::cout << "chi" << sep << euler_characteristic(g) << "\n";
  std::cout << "f";
  for (long long f : f_vector(g)) std::cout << sep << f;
  std::cout << "\n";
  std::cout << "bipartite" << sep << (is_bipartite(g) ? "yes" : "no") << "\n";
  std::cout << "contracted" << sep << (is_contracted(g) ? "yes" : "no") << "\n";
  std::vector<std::vector<Colour>> subsets;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << g.colour_count()); ++mask)
    subsets.push_back(ColourSet::from_bits(mask).to_vector());
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& subset : subsets) {
    ColourSet b;
    for (Colour c : subset) b = b.with(c);
    std::cout << "g" << (tsv ? "\t" : " ") << b.to_string() << sep << residue_count(g, b) << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& path, const std::string& what, const VerifyOptions& opts) {
  Gem g = load_gem(path);
  if (what == "orientable") {
    bool orientable = is_orientable(g, opts);
    std::cout << (orientable ? "Yes (bipartite)" : "No (odd cycle)") << "\n";
    return orientable ? 0 : 1;
  }
  Verdict v = what == "sphere"           ? is_sphere(g, opts)
              : what == "crystallization" ? is_crystallization(g, opts)
                                          : is_gem(g, opts);
  print_verdict(v);
  return verdict_exit(v);
}

int cmd_rho(const std::string& path, const std::string& format) {
  Gem g = load_gem(path);
  std::vector<RhoPair> pairs = find_rho_pairs(g);
  if (format == "tsv") {
    for (const RhoPair& r : pairs) {
      std::cout << (r.kind == RhoKind::RhoN ? "rho_n" : "rho_n-1") << "\t" << r.colour << "\t"
                << format_edge(g, r.e) << "\t" << format_edge(g, r.f) << "\t"
                << (r.kind == RhoKind::RhoN1 ? std::to_string(r.non_involved) : "-") << "\n";
    }
    return 0;
  }
  if (pairs.empty()) {
    std::cout << "none\n";
    return 0;
  }
  for (const RhoPair& r : pairs) std::cout << format_pair(g, r) << "\n";
  return 0;
}

int cmd_switch(const std::string& path, const std::vector<int>& pair, const std::string& variant,
               const std::string& out_path) {
  Gem g = load_gem(path);
  Edge e{pair[0], pair[1]}, f{pair[2], pair[3]};
  Gem result = [&]() {
    if (!variant.empty()) {
      auto v = switch_variant_from_string(variant);
      if (!v) fail(Error::Kind::PreconditionFailed, "unknown variant '" + variant + "'");
      return switch_generic(g, e, f, *v);
    }
    auto r = classify_pair(g, e, f);
    if (!r)
      fail(Error::Kind::PreconditionFailed,
           "edges do not form a rho-pair; pass --variant for a generic switch");
    return switch_preferred(g, *r);
  }();
  if (out_path.empty())
    std::cout << write_gem(result);
  else
    save_gem(result, out_path);
  return 0;
}

int cmd_reduce(const std::string& path, const VerifyOptions& opts) {
  Gem g = load_gem(path);
  MoveTrace trace;
  std::vector<std::string> events;
  Gem contracted = crystallize(g, &trace, &events, opts);
  ReductionReport report = rigidify(contracted, opts);
  report.p0 = g.order();
  MoveTrace full = trace;
  full.append(report.trace);
  report.trace = full;
  events.insert(events.end(), report.events.begin(), report.events.end());
  report.events = events;
  std::cout << report.to_text();
  return 0;
}

int cmd_enumerate(int dim, int max_order, bool bipartite_only, long long budget, int jobs,
                  const std::string& out_path) {
  EnumerateOptions opts;
  opts.bipartite_only = bipartite_only;
  if (budget > 0) opts.node_budget = budget;
  opts.jobs = jobs;
  Catalogue cat{dim, max_order, enumerate_rigid(dim, max_order, opts)};
  if (out_path.empty()) {
    std::cout << write_catalogue(cat);
  } else {
    save_catalogue(cat, out_path);
    std::cout << "entries " << cat.entries.size() << "\n";
  }
  return 0;
}

int cmd_verify_trace(const std::string& start_path, const std::string& trace_path,
                     const std::string& end_path) {
  Gem start = load_gem(start_path);
  Gem end = load_gem(end_path);
  std::ifstream in(trace_path);
  if (!in) fail(Error::Kind::ParseError, trace_path + ": cannot open");
  MoveTrace trace = parse_trace(in, trace_path);
  TraceOutcome outcome = verify_trace(start, trace, end);
  if (outcome.ok) {
    std::cout << "ok\n";
    return 0;
  }
  std::cout << "fail at step " << outcome.failed_step << ": " << outcome.reason << "\n";
  return 1;
}

int cmd_cat_merge(const std::vector<std::string>& inputs, const std::string& out_path) {
  std::vector<Catalogue> parts;
  parts.reserve(inputs.size());
  for (const std::string& path : inputs) parts.push_back(load_catalogue(path));
  Catalogue merged = merge_catalogues(parts);
  if (out_path.empty()) {
    std::cout << write_catalogue(merged);
  } else {
    save_catalogue(merged, out_path);
    std::cout << "entries " << merged.entries.size() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gem calculus: edge-coloured graph encodings of closed PL manifolds"};
  app.require_subcommand(1);

  std::string file, out_path, format = "text", variant;
  std::string trace_path, end_path;
  std::vector<int> pair;
  std::vector<std::string> inputs;
  std::uint64_t seed = 1;
  long long budget = 0;
  int dim = 3, max_order = 2, jobs = 1;
  bool bipartite_only = false;
  bool want_sphere = false, want_gem = false, want_cryst = false, want_orient = false;

  CLI::App* info = app.add_subcommand("info", "order, residue counts, f-vector, chi");
  info->add_option("file", file)->required();
  info->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));

  CLI::App* verify = app.add_subcommand("verify", "gem / sphere / crystallization / orientability checks");
  verify->add_option("file", file)->required();
  verify->add_flag("--sphere", want_sphere);
  verify->add_flag("--gem", want_gem);
  verify->add_flag("--crystallization", want_cryst);
  verify->add_flag("--orientable", want_orient);
  verify->add_option("--seed", seed);
  verify->add_option("--budget", budget);

  CLI::App* rho = app.add_subcommand("rho", "list rho-pairs");
  rho->add_option("file", file)->required();
  rho->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));

  CLI::App* switch_cmd = app.add_subcommand("switch", "switch a pair of equally coloured edges");
  switch_cmd->add_option("file", file)->required();
  switch_cmd->add_option("--pair", pair, "v1 c1 v2 c2")->expected(4)->required();
  switch_cmd->add_option("--variant", variant)->check(CLI::IsMember({"uw-vz", "uz-vw"}));
  switch_cmd->add_option("-o,--output", out_path);

  CLI::App* reduce = app.add_subcommand("reduce", "contract and reduce to a rigid crystallization");
  reduce->add_option("file", file)->required();
  reduce->add_option("--seed", seed);
  reduce->add_option("--budget", budget);

  CLI::App* enumerate = app.add_subcommand("enumerate", "census of rigid crystallizations");
  enumerate->add_option("--dim", dim)->required();
  enumerate->add_option("--max-order", max_order)->required();
  enumerate->add_flag("--bipartite-only", bipartite_only);
  enumerate->add_option("--budget", budget, "search node budget");
  enumerate->add_option("--jobs", jobs);
  enumerate->add_option("-o,--output", out_path);

  CLI::App* vtrace = app.add_subcommand("verify-trace", "replay a move trace between two gems");
  vtrace->add_option("start", file)->required();
  vtrace->add_option("trace", trace_path)->required();
  vtrace->add_option("end", end_path)->required();

  CLI::App* merge = app.add_subcommand("cat-merge", "merge catalogue files");
  merge->add_option("inputs", inputs)->required();
  merge->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    VerifyOptions vopts;
    vopts.seed = seed;
    vopts.max_moves = budget;
    if (info->parsed()) return cmd_info(file, format);
    if (verify->parsed()) {
      std::string what = want_sphere  ? "sphere"
                         : want_cryst ? "crystallization"
                         : want_orient ? "orientable"
                                       : "gem";
      (void)want_gem;
      return cmd_verify(file, what, vopts);
    }
    if (rho->parsed()) return cmd_rho(file, format);
    if (switch_cmd->parsed()) return cmd_switch(file, pair, variant, out_path);
    if (reduce->parsed()) return cmd_reduce(file, vopts);
    if (enumerate->parsed())
      return cmd_enumerate(dim, max_order, bipartite_only, budget, jobs, out_path);
    if (vtrace->parsed()) return cmd_verify_trace(file, trace_path, end_path);
    if (merge->parsed()) return cmd_cat_merge(inputs, out_path);
  } catch (const gemcalc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    bool parse_like = e.kind() == gemcalc::Error::Kind::ParseError ||
                      e.kind() == gemcalc::Error::Kind::CorruptCatalogue;
    return parse_like ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
