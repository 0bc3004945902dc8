#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pb/catalog.hpp"
#include "pb/extension.hpp"
#include "pb/json_format.hpp"

namespace pb::cli {

// Exit codes: 0 success / affirmative verdict; 1 negative analysis
// verdict; 2 input or format error; 3 search budget exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBudget = 3;

namespace detail_cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Human-readable rendering of a report. The JSON form is the primary
// machine interface; this is a convenience view.
inline void render_text(const Json& j, std::ostream& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && !value.empty() &&
                                (value.front().is_object() || value.front().is_array()))) {
        out << pad << key << ":\n";
        render_text(value, out, indent + 1);
      } else {
        out << pad << key << ": " << value.dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const Json& item : j) {
      if (item.is_object() || item.is_array()) {
        out << pad << "-\n";
        render_text(item, out, indent + 1);
      } else {
        out << pad << "- " << item.dump() << "\n";
      }
    }
  } else {
    out << pad << j.dump() << "\n";
  }
}

inline void emit(const Json& report, const std::string& format, std::ostream& out) {
  if (format == "text")
    render_text(report, out);
  else
    out << report.dump(2) << "\n";
}

inline ProductBasis load_basis(const std::string& path, std::optional<double> tol_override) {
  ProductBasis basis = parse_basis(read_file(path));
  if (tol_override) {
    std::vector<ProductState> states = basis.states();
    return ProductBasis(basis.dims(), std::move(states), *tol_override);
  }
  return basis;
}

inline Json tri_to_json(Tri t) {
  switch (t) {
    case Tri::Yes: return Json(true);
    case Tri::No: return Json(false);
    default: return Json(nullptr);
  }
}

}  // namespace detail_cli

struct Options {
  std::string path;
  std::string operator_path;
  std::string format = "json";
  std::optional<double> tolerance;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  std::optional<std::size_t> party;
  std::optional<std::size_t> hidden;
  std::string catalog_name;
};

namespace detail_cli {

inline int cmd_check(const Options& opt, std::ostream& out) {
  const ProductBasis basis = load_basis(opt.path, opt.tolerance);
  const ValidationReport rep = validate(basis);
  Json report;
  report["command"] = "check";
  report["dims"] = basis.dims();
  report["states"] = basis.size();
  report["orthogonal"] = rep.orthogonal;
  report["complete"] = rep.complete;
  Json pairs = Json::array();
  for (const auto& [i, j] : rep.offending_pairs) pairs.push_back(Json::array({i, j}));
  report["offending_pairs"] = std::move(pairs);
  emit(report, opt.format, out);
  return rep.orthogonal ? kExitOk : kExitNegative;
}

inline int cmd_decide(const Options& opt, std::ostream& out) {
  const ProductBasis basis = load_basis(opt.path, opt.tolerance);
  const Decision d = decide(basis);
  Json report;
  report["command"] = "decide";
  report["distinguishable"] = d.distinguishable;
  report["outside_theorem_scope"] = d.outside_theorem_scope;
  if (d.distinguishable) {
    report["protocol_depth"] = protocol_depth(*d.tree);
    report["protocol"] = protocol_to_json(*d.tree);
  } else {
    report["core_size"] = d.core.size();
    report["core"] = d.core;
    Json witness = Json::array();
    for (const OrthoGraph& g : d.core_witness) witness.push_back(graph_to_json(g));
    report["connectivity_witness"] = std::move(witness);
  }
  emit(report, opt.format, out);
  return d.distinguishable ? kExitOk : kExitNegative;
}

inline int cmd_extend(const Options& opt, std::ostream& out) {
  const ProductBasis basis = load_basis(opt.path, opt.tolerance);
  const BasisClass cls = classify(basis, opt.budget);
  Json report;
  report["command"] = "extend";
  report["orthogonal"] = cls.orthogonal;
  report["complete"] = cls.complete;
  std::string status = "unextendible";
  if (!cls.orthogonal)
    status = "not_orthogonal";
  else if (cls.extendible == Tri::Yes)
    status = "extendible";
  else if (cls.extendible == Tri::Unknown)
    status = "budget_exceeded";
  report["status"] = status;
  report["assignments_tried"] = cls.assignments_tried;
  report["extendible"] = tri_to_json(cls.extendible);
  report["proper_upb"] = tri_to_json(cls.proper_upb);
  if (cls.witness) report["witness"] = state_to_json(*cls.witness);
  emit(report, opt.format, out);
  if (!cls.orthogonal) return kExitInputError;
  if (cls.extendible == Tri::Unknown) return kExitBudget;
  return cls.extendible == Tri::Yes ? kExitOk : kExitNegative;
}

inline int cmd_simulate(const Options& opt, std::ostream& out) {
  const ProductBasis basis = load_basis(opt.path, opt.tolerance);
  const Decision d = decide(basis);
  Json report;
  report["command"] = "simulate";
  report["distinguishable"] = d.distinguishable;
  if (!d.distinguishable) {
    report["core"] = d.core;
    emit(report, opt.format, out);
    return kExitNegative;
  }
  std::vector<std::size_t> targets;
  if (opt.hidden) {
    detail::require(*opt.hidden < basis.size(), "simulate: hidden index out of range");
    targets.push_back(*opt.hidden);
  } else {
    for (std::size_t i = 0; i < basis.size(); ++i) targets.push_back(i);
  }
  bool all_ok = true;
  Json results = Json::array();
  for (std::size_t hidden : targets) {
    const SimulationResult r = simulate_protocol(*d.tree, basis, hidden);
    Json jr;
    jr["hidden"] = hidden;
    jr["identified"] = r.identified;
    jr["rounds"] = r.rounds;
    jr["outcome_path"] = r.outcome_path;
    results.push_back(std::move(jr));
    all_ok = all_ok && r.identified == hidden;
  }
  report["results"] = std::move(results);
  emit(report, opt.format, out);
  return all_ok ? kExitOk : kExitInputError;
}

inline int cmd_classify(const Options& opt, std::ostream& out) {
  const ProductBasis basis = load_basis(opt.path, opt.tolerance);
  LocalOperator op = parse_local_operator(read_file(opt.operator_path));
  if (opt.party) op.party = *opt.party;
  const double tol = basis.tolerance();
  const ActionClassification cls = classify_action(op, basis, tol);
  Json report;
  report["command"] = "classify";
  report["party"] = op.party;
  switch (cls.kind) {
    case ActionClassification::Kind::Proportional:
      report["action"] = "proportional";
      report["lambda"] = cls.lambda;
      break;
    case ActionClassification::Kind::Eliminates:
      report["action"] = "eliminates";
      report["killed"] = cls.killed;
      report["rest_proportional"] = cls.rest_proportional;
      break;
    case ActionClassification::Kind::CreatesOverlap:
      report["action"] = "creates_overlap";
      report["delta"] = cls.delta;
      report["pair"] = Json::array({cls.pair.first, cls.pair.second});
      break;
  }
  try {
    const std::vector<double> post = posterior(op, basis);
    report["posterior"] = post;
    report["epsilon"] = epsilon(post);
  } catch (const std::invalid_argument&) {
    report["posterior"] = nullptr;  // measurement annihilates every state
  }
  emit(report, opt.format, out);
  return kExitOk;
}

inline int cmd_bound(const Options& opt, std::ostream& out) {
  const ProductBasis basis = load_basis(opt.path, opt.tolerance);
  const RoundOperators rounds = parse_rounds(read_file(opt.operator_path), basis.dims());
  const BoundReport rep = weak_round_bound(rounds, basis);
  Json report;
  report["command"] = "bound";
  report["status"] = rep.status == BoundStatus::Ok ? "ok" : "no_bound";
  report["delta"] = rep.delta;
  report["epsilon_observed"] = rep.epsilon_observed;
  if (rep.status == BoundStatus::Ok) {
    report["epsilon_bound"] = rep.epsilon_bound;
    report["m_n"] = rep.m_n;
    report["c_n"] = rep.c_n;
  }
  report["deficit"] = rep.deficit;
  report["info_ceiling"] = rep.info_ceiling;
  emit(report, opt.format, out);
  return rep.status == BoundStatus::Ok ? kExitOk : kExitNegative;
}

inline int cmd_catalog(const Options& opt, std::ostream& out) {
  if (opt.catalog_name.empty()) {
    Json report;
    report["command"] = "catalog";
    report["builtins"] = builtin_names();
    report["random"] = "random-<d1>x<d2>[x...] with --seed";
    emit(report, opt.format, out);
    return kExitOk;
  }
  if (opt.catalog_name.rfind("random-", 0) == 0) {
    std::vector<std::size_t> dims;
    std::stringstream ss(opt.catalog_name.substr(7));
    std::string part;
    while (std::getline(ss, part, 'x')) {
      std::size_t v = 0;
      try {
        v = static_cast<std::size_t>(std::stoul(part));
      } catch (const std::exception&) {
        throw ParseError("catalog: bad dimension list in '" + opt.catalog_name + "'");
      }
      dims.push_back(v);
    }
    if (dims.empty()) throw ParseError("catalog: bad dimension list in '" + opt.catalog_name + "'");
    const ProductBasis basis = random_distinguishable(dims, opt.seed);
    emit(basis_to_json(basis), opt.format, out);
    return kExitOk;
  }
  const CatalogEntry entry = builtin(opt.catalog_name);
  emit(basis_to_json(entry.basis), opt.format, out);
  return kExitOk;
}

// Debug view of the recursive splitting underlying decide().
inline void split_trace_rec(const ProductBasis& basis, const std::vector<std::size_t>& subset,
                            Json& trace, bool& all_singleton) {
  if (subset.size() == 1) {
    trace.push_back(Json{{"leaf", subset}});
    return;
  }
  const std::optional<SplitResult> split = find_split(basis, subset);
  if (!split) {
    trace.push_back(Json{{"irreducible", subset}});
    all_singleton = false;
    return;
  }
  Json ev;
  ev["subset"] = subset;
  ev["party"] = split->party;
  ev["components"] = split->components;
  trace.push_back(std::move(ev));
  for (const auto& comp : split->components) split_trace_rec(basis, comp, trace, all_singleton);
}

inline int cmd_split_trace(const Options& opt, std::ostream& out) {
  const ProductBasis basis = load_basis(opt.path, opt.tolerance);
  detail::require(validate(basis).orthogonal, "split-trace: basis is not orthogonal");
  Json report;
  report["command"] = "split-trace";
  Json trace = Json::array();
  bool all_singleton = true;
  std::vector<std::size_t> all(basis.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  split_trace_rec(basis, all, trace, all_singleton);
  report["trace"] = std::move(trace);
  report["all_singleton_leaves"] = all_singleton;
  emit(report, opt.format, out);
  return all_singleton ? kExitOk : kExitNegative;
}

}  // namespace detail_cli

/// Dispatch one command line (without the program name). Reports go to
/// out, diagnostics to err. Deterministic given identical inputs.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"product-basis LOCC distinguishability toolkit"};
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&](CLI::App* sub, bool needs_path) {
    if (needs_path)
      sub->add_option("path", opt.path, "basis file")->required();
    sub->add_option("--tolerance", [&](const CLI::results_t& res) {
      opt.tolerance = std::stod(res.front());
      return true;
    }, "numeric tolerance override");
    sub->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* check = app.add_subcommand("check", "validate a basis file");
  add_common(check, true);

  CLI::App* decide_cmd = app.add_subcommand("decide", "LOCC distinguishability verdict");
  add_common(decide_cmd, true);

  CLI::App* extend = app.add_subcommand("extend", "search for an orthogonal product extension");
  add_common(extend, true);
  extend->add_option("--budget", opt.budget, "assignment budget");

  CLI::App* simulate = app.add_subcommand("simulate", "run the measurement protocol");
  add_common(simulate, true);
  simulate->add_option("--hidden", [&](const CLI::results_t& res) {
    opt.hidden = static_cast<std::size_t>(std::stoull(res.front()));
    return true;
  }, "hidden state index (default: all)");

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a local operator's action");
  add_common(classify_cmd, true);
  classify_cmd->add_option("--operator", opt.operator_path, "operator file")->required();
  classify_cmd->add_option("--party", [&](const CLI::results_t& res) {
    opt.party = static_cast<std::size_t>(std::stoull(res.front()));
    return true;
  }, "party override");

  CLI::App* bound = app.add_subcommand("bound", "weak-measurement information bound");
  add_common(bound, true);
  bound->add_option("--operator", opt.operator_path, "rounds file")->required();

  CLI::App* catalog_cmd = app.add_subcommand("catalog", "emit a built-in basis");
  add_common(catalog_cmd, false);
  catalog_cmd->add_option("name", opt.catalog_name, "entry name (empty: list)");
  catalog_cmd->add_option("--seed", opt.seed, "seed for random-<dims> entries");

  CLI::App* split_trace = app.add_subcommand("split-trace", "trace the recursive splitting");
  add_common(split_trace, true);

  std::vector<const char*> argv;
  argv.push_back("pb");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pb: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (check->parsed()) return detail_cli::cmd_check(opt, out);
    if (decide_cmd->parsed()) return detail_cli::cmd_decide(opt, out);
    if (extend->parsed()) return detail_cli::cmd_extend(opt, out);
    if (simulate->parsed()) return detail_cli::cmd_simulate(opt, out);
    if (classify_cmd->parsed()) return detail_cli::cmd_classify(opt, out);
    if (bound->parsed()) return detail_cli::cmd_bound(opt, out);
    if (catalog_cmd->parsed()) return detail_cli::cmd_catalog(opt, out);
    if (split_trace->parsed()) return detail_cli::cmd_split_trace(opt, out);
  } catch (const ParseError& e) {
    err << "pb: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "pb: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "pb: " << e.what() << "\n";
    return kExitInputError;
  }
  err << "pb: no command given\n";
  return kExitInputError;
}

}  // namespace pb::cli
