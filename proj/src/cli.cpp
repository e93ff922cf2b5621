#include "av321/cli.hpp"

#include <algorithm>
#include <iostream>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "av321/acceptance.hpp"
#include "av321/bijection.hpp"
#include "av321/empirical.hpp"
#include "av321/exact.hpp"
#include "av321/montecarlo.hpp"
#include "av321/report.hpp"
#include "av321/samplers.hpp"

namespace av321 {

namespace {

struct ExperimentConfig {
  std::string command;
  std::vector<std::int64_t> n;
  std::uint64_t count = 1;
  std::optional<std::uint64_t> seed;
  unsigned streams = 1;
  std::string pattern = "321";
  std::optional<double> tolerance;
  std::string out_path;
  std::string format = "csv";

  // subcommand-specific
  std::string direction;
  std::string input;
  std::string kind = "uniform";
  std::optional<std::uint32_t> height;
  std::size_t node_cap = kDefaultNodeCap;
  std::string object = "perm";
  bool joint = false;
  std::optional<int> a;
  std::optional<int> b;
  std::string statistic = "total";
  std::string overlay_path;
  std::vector<int> criteria;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Permutation pattern_of(const std::string &name) {
  if (name == "321") return Permutation({3, 2, 1});
  if (name == "132") return Permutation({1, 3, 2});
  if (name == "213") return Permutation({2, 1, 3});
  throw UsageError("unsupported --pattern '" + name + "' (expected 321, 132 or 213)");
}

std::int64_t single_n(const ExperimentConfig &cfg) {
  if (cfg.n.size() != 1) throw UsageError(cfg.command + ": exactly one --n is required");
  return cfg.n.front();
}

std::uint64_t require_seed(const ExperimentConfig &cfg) {
  if (!cfg.seed) throw UsageError(cfg.command + ": --seed is required");
  return *cfg.seed;
}

RunMetadata metadata_for(const ExperimentConfig &cfg) {
  RunMetadata meta;
  meta.command = cfg.command;
  meta.seed = cfg.seed;
  meta.streams = cfg.streams;
  if (cfg.n.size() == 1) meta.n = cfg.n.front();
  meta.count = cfg.count;
  return meta;
}

// Routes a text body (one object per line) or its JSON rendering to the
// requested destination.
void emit_lines(const ExperimentConfig &cfg, const std::vector<std::string> &lines, std::ostream &out) {
  std::string body;
  if (cfg.format == "json") {
    nlohmann::json doc;
    doc["metadata"] = nlohmann::json::parse(metadata_json(metadata_for(cfg)));
    doc["data"] = lines;
    body = doc.dump(2) + "\n";
  } else {
    for (const auto &l : lines) body += l + "\n";
  }
  if (cfg.out_path.empty()) {
    out << body;
  } else if (cfg.format == "json") {
    std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file '" + cfg.out_path + "'");
    f << body;
    if (!f) throw std::runtime_error("failed writing output file '" + cfg.out_path + "'");
  } else {
    write_report_file(cfg.out_path, metadata_for(cfg), body);
  }
}

void emit_table(const ExperimentConfig &cfg, const CsvTable &table, std::ostream &out) {
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : table.rows) {
      nlohmann::json row;
      for (std::size_t i = 0; i < table.header.size() && i < r.size(); ++i) row[table.header[i]] = r[i];
      rows.push_back(row);
    }
    nlohmann::json doc;
    doc["metadata"] = nlohmann::json::parse(metadata_json(metadata_for(cfg)));
    doc["data"] = rows;
    const std::string body = doc.dump(2) + "\n";
    if (cfg.out_path.empty()) {
      out << body;
    } else {
      std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
      if (!f) throw std::runtime_error("cannot open output file '" + cfg.out_path + "'");
      f << body;
    }
    return;
  }
  std::ostringstream body;
  write_csv(body, table);
  if (cfg.out_path.empty()) {
    out << body.str();
  } else {
    write_report_file(cfg.out_path, metadata_for(cfg), body.str());
  }
}

int cmd_sample_perm(const ExperimentConfig &cfg, std::ostream &out) {
  const auto n = single_n(cfg);
  if (n < 1) throw UsageError("sample-perm: --n must be >= 1");
  const auto perms = parallel_draw<std::string>(cfg.count, require_seed(cfg), cfg.streams, [n](RngStream &rng) {
    return format_permutation(uniform_avoider_321(static_cast<int>(n), rng));
  });
  emit_lines(cfg, perms, out);
  return kExitOk;
}

int cmd_sample_tree(const ExperimentConfig &cfg, std::ostream &out, std::ostream &err) {
  const std::uint64_t seed = require_seed(cfg);
  std::vector<std::string> lines;
  if (cfg.kind == "uniform") {
    const auto v = single_n(cfg);
    if (v < 1) throw UsageError("sample-tree: --n (vertex count) must be >= 1");
    lines = parallel_draw<std::string>(cfg.count, seed, cfg.streams, [v](RngStream &rng) {
      return format_tree(uniform_tree(static_cast<std::size_t>(v), rng));
    });
  } else if (cfg.kind == "gw") {
    const Pmf offspring = geometric_pmf(0.5);
    const auto height = cfg.height;
    const auto cap = cfg.node_cap;
    lines = parallel_draw<std::string>(cfg.count, seed, cfg.streams, [&offspring, height, cap](RngStream &rng) {
      const GwOutcome g = gw_tree_truncated(offspring, height, rng, cap);
      return g.overflowed() ? std::string("OVERFLOW") : format_tree(*g.tree);
    });
    const auto overflows = std::count(lines.begin(), lines.end(), "OVERFLOW");
    if (overflows > 0) err << "sample-tree: " << overflows << " draw(s) exceeded node cap " << cap << "\n";
  } else if (cfg.kind == "kesten") {
    if (!cfg.height) throw UsageError("sample-tree --kind kesten requires --height");
    const std::uint32_t h = *cfg.height;
    lines = parallel_draw<std::string>(cfg.count, seed, cfg.streams,
                                       [h](RngStream &rng) { return format_tree(kesten_truncated(h, rng).tree); });
  } else {
    throw UsageError("sample-tree: unknown --kind '" + cfg.kind + "'");
  }
  emit_lines(cfg, lines, out);
  return kExitOk;
}

int cmd_sample_limit(const ExperimentConfig &cfg, std::ostream &out) {
  const auto lines = parallel_draw<std::string>(cfg.count, require_seed(cfg), cfg.streams, [](RngStream &rng) {
    const LimitProcessSample s = sample_limit_process(rng);
    return format_measure(s.front) + "|" + format_measure(s.back);
  });
  emit_lines(cfg, lines, out);
  return kExitOk;
}

int cmd_biject(const ExperimentConfig &cfg, std::istream &in, std::ostream &out) {
  std::vector<std::string> inputs;
  if (!cfg.input.empty()) {
    inputs.push_back(cfg.input);
  } else {
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) inputs.push_back(line);
    }
  }
  std::vector<std::string> lines;
  for (const auto &text : inputs) {
    try {
      if (cfg.direction == "tree-to-perm") {
        lines.push_back(format_permutation(tree_to_perm(parse_tree(text))));
      } else if (cfg.direction == "perm-to-tree") {
        lines.push_back(format_tree(perm_to_tree(parse_permutation(text))));
      } else {
        throw UsageError("biject: --direction must be tree-to-perm or perm-to-tree");
      }
    } catch (const std::invalid_argument &e) {
      throw UsageError(std::string("biject: ") + e.what());
    }
  }
  emit_lines(cfg, lines, out);
  return kExitOk;
}

int cmd_enumerate(const ExperimentConfig &cfg, std::ostream &out) {
  const auto n = single_n(cfg);
  std::vector<std::string> lines;
  try {
    if (cfg.object == "perm") {
      enumerate_avoiders(static_cast<int>(n), pattern_of(cfg.pattern),
                         [&](const Permutation &p) { lines.push_back(format_permutation(p)); });
    } else if (cfg.object == "tree") {
      if (n < 1) throw UsageError("enumerate: --n (vertex count) must be >= 1");
      enumerate_trees(static_cast<std::size_t>(n), [&](const PlaneTree &t) { lines.push_back(format_tree(t)); });
    } else {
      throw UsageError("enumerate: --object must be perm or tree");
    }
  } catch (const std::invalid_argument &e) {
    throw UsageError(std::string("enumerate: ") + e.what());
  }
  emit_lines(cfg, lines, out);
  return kExitOk;
}

int cmd_exact_dist(const ExperimentConfig &cfg, std::ostream &out) {
  const auto n = single_n(cfg);
  try {
    if (cfg.joint) {
      if (cfg.pattern != "321") throw UsageError("exact-dist --joint is defined for --pattern 321 only");
      emit_table(cfg, joint_table(exact_front_back_joint(static_cast<int>(n))), out);
    } else {
      emit_table(cfg, distribution_table(exact_fp_distribution(static_cast<int>(n), pattern_of(cfg.pattern))), out);
    }
  } catch (const std::invalid_argument &e) {
    throw UsageError(std::string("exact-dist: ") + e.what());
  }
  return kExitOk;
}

int cmd_verify(const ExperimentConfig &cfg, std::ostream &out) {
  AcceptanceOptions opt;
  opt.seed = cfg.seed.value_or(42);
  opt.streams = cfg.streams;
  opt.only = cfg.criteria;
  opt.on_result = [&out](const CriterionResult &r) { out << format_result_line(r) << std::endl; };
  const auto results = run_acceptance(opt);
  const bool all = std::all_of(results.begin(), results.end(), [](const auto &r) { return r.passed; });
  out << (all ? "all criteria passed" : "verification FAILED") << "\n";
  return all ? kExitOk : kExitVerifyFailed;
}

int cmd_convergence(const ExperimentConfig &cfg, std::ostream &out) {
  if (cfg.n.empty()) throw UsageError("convergence: at least one --n is required");
  const std::uint64_t seed = require_seed(cfg);
  const Pmf limit = cfg.statistic == "total" ? negbin_2_one_third_pmf() : geometric_pmf(2.0 / 3.0);
  if (cfg.statistic != "total" && cfg.statistic != "front" && cfg.statistic != "back") {
    throw UsageError("convergence: --statistic must be total, front or back");
  }
  std::vector<ConvergencePoint> points;
  EmpiricalDist last;
  for (std::int64_t n : cfg.n) {
    if (n < 1) throw UsageError("convergence: --n must be >= 1");
    EmpiricalDist dist;
    for (const auto &fb : sample_perm_measures(static_cast<int>(n), cfg.count, seed, cfg.streams)) {
      std::size_t value = fb.front.mass() + fb.back.mass();
      if (cfg.statistic == "front") value = fb.front.mass();
      if (cfg.statistic == "back") value = fb.back.mass();
      dist.add(static_cast<std::int64_t>(value));
    }
    points.push_back({n, tv_distance(dist, limit), tv_noise_floor(limit, cfg.count)});
    last = std::move(dist);
  }
  emit_table(cfg, convergence_table(points), out);
  if (!cfg.overlay_path.empty()) {
    std::ostringstream body;
    write_csv(body, pmf_overlay(limit, last));
    RunMetadata meta = metadata_for(cfg);
    meta.n = cfg.n.back();
    write_report_file(cfg.overlay_path, meta, body.str());
  }
  if (cfg.tolerance) {
    for (const auto &p : points) {
      if (p.tv > *cfg.tolerance) return kExitVerifyFailed;
    }
  }
  return kExitOk;
}

int cmd_midrange(const ExperimentConfig &cfg, std::ostream &out) {
  const auto n = single_n(cfg);
  if (!cfg.a) throw UsageError("midrange: --a is required");
  const int a = *cfg.a;
  const int b = cfg.b.value_or(static_cast<int>(n) - a);
  if (!(1 <= a && a <= b && b <= n)) throw UsageError("midrange: need 1 <= a <= b <= n");
  RngStream rng(require_seed(cfg), 0);
  const ProportionEstimate est = midrange_fp_probability(static_cast<int>(n), a, b, cfg.count, rng);
  CsvTable t{{"n", "a", "b", "estimate", "half_width"},
             {{std::to_string(n), std::to_string(a), std::to_string(b), format_double(est.estimate),
               format_double(est.half_width)}}};
  emit_table(cfg, t, out);
  return kExitOk;
}

} // namespace

int run_command(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
  ExperimentConfig cfg;
  CLI::App app{"Fixed points of 321-avoiding permutations: bijection, samplers, exact oracles"};
  app.set_version_flag("--version", std::string(AV321_VERSION));
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App *sub, bool random, bool sized) {
    if (sized) sub->add_option("--n", cfg.n, "size parameter")->check(CLI::NonNegativeNumber);
    if (random) {
      sub->add_option("--count", cfg.count, "number of samples")->check(CLI::PositiveNumber);
      sub->add_option("--seed", cfg.seed, "64-bit seed");
      sub->add_option("--streams", cfg.streams, "parallel RNG streams")->check(CLI::PositiveNumber);
    }
    sub->add_option("--out", cfg.out_path, "output file (stdout when omitted)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto *sample_perm = app.add_subcommand("sample-perm", "uniform 321-avoiding permutations");
  add_common(sample_perm, true, true);

  auto *sample_tree = app.add_subcommand("sample-tree", "uniform, Galton-Watson or size-biased trees");
  add_common(sample_tree, true, true);
  sample_tree->add_option("--kind", cfg.kind, "uniform, gw or kesten")->check(CLI::IsMember({"uniform", "gw", "kesten"}));
  sample_tree->add_option("--height", cfg.height, "truncation height (gw, kesten)");
  sample_tree->add_option("--node-cap", cfg.node_cap, "vertex cap for gw")->check(CLI::PositiveNumber);

  auto *sample_limit = app.add_subcommand("sample-limit", "limiting fixed-point measures");
  add_common(sample_limit, true, false);

  auto *biject = app.add_subcommand("biject", "tree <-> permutation");
  add_common(biject, false, false);
  biject->add_option("--direction", cfg.direction, "tree-to-perm or perm-to-tree")->required();
  biject->add_option("--in", cfg.input, "input object (stdin lines when omitted)");

  auto *enumerate = app.add_subcommand("enumerate", "list avoiders or plane trees");
  add_common(enumerate, false, true);
  enumerate->add_option("--pattern", cfg.pattern, "321, 132 or 213");
  enumerate->add_option("--object", cfg.object, "perm or tree (tree: --n is the vertex count)");

  auto *exact = app.add_subcommand("exact-dist", "exact fixed-point count distribution");
  add_common(exact, false, true);
  exact->add_option("--pattern", cfg.pattern, "321, 132 or 213");
  exact->add_flag("--joint", cfg.joint, "joint (front, back) law over Av_n(321)");

  auto *verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--seed", cfg.seed, "64-bit seed (default 42)");
  verify->add_option("--streams", cfg.streams, "parallel RNG streams")->check(CLI::PositiveNumber);
  verify->add_option("--criteria", cfg.criteria, "subset of criterion ids");

  auto *convergence = app.add_subcommand("convergence", "TV distance to the limit law against n");
  add_common(convergence, true, true);
  convergence->add_option("--statistic", cfg.statistic, "total, front or back");
  convergence->add_option("--tolerance", cfg.tolerance, "exit 1 if any TV exceeds this");
  convergence->add_option("--overlay", cfg.overlay_path, "write pmf overlay for the last n");

  auto *midrange = app.add_subcommand("midrange", "P(fixed point in [a, b])");
  add_common(midrange, true, true);
  midrange->add_option("--a", cfg.a, "window start")->check(CLI::PositiveNumber);
  midrange->add_option("--b", cfg.b, "window end (default n - a)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion &) {
    out << AV321_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App *sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  try {
    if (sub == sample_perm) return cmd_sample_perm(cfg, out);
    if (sub == sample_tree) return cmd_sample_tree(cfg, out, err);
    if (sub == sample_limit) return cmd_sample_limit(cfg, out);
    if (sub == biject) return cmd_biject(cfg, in, out);
    if (sub == enumerate) return cmd_enumerate(cfg, out);
    if (sub == exact) return cmd_exact_dist(cfg, out);
    if (sub == verify) return cmd_verify(cfg, out);
    if (sub == convergence) return cmd_convergence(cfg, out);
    if (sub == midrange) return cmd_midrange(cfg, out);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace av321
