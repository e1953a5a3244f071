#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "credal/corpus.hpp"
#include "credal/credal_set.hpp"
#include "credal/decide.hpp"
#include "credal/errors.hpp"
#include "credal/kbformat.hpp"
#include "credal/logic.hpp"
#include "credal/moments.hpp"

namespace credal::cli {

namespace detail {

/// 6 significant digits, matching the documented output precision.
inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string fmt_interval(double lo, double hi) {
  return "[" + fmt(lo) + ", " + fmt(hi) + "]";
}

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void print_diagnostics(std::ostream& err, const std::string& name,
                              const std::vector<Diagnostic>& diags) {
  for (const Diagnostic& d : diags) err << name << ":" << d.to_string() << "\n";
}

inline nlohmann::json diagnostics_json(const std::vector<Diagnostic>& diags) {
  nlohmann::json out = nlohmann::json::array();
  for (const Diagnostic& d : diags) {
    out.push_back({{"line", d.line},
                   {"column", d.column},
                   {"severity", d.severity == Diagnostic::Severity::error ? "error" : "warning"},
                   {"message", d.message}});
  }
  return out;
}

inline nlohmann::json thresholds_json(const Thresholds& t) {
  return {{"stake_ratio", t.stake_ratio()},
          {"p", t.p()},
          {"impossibility", t.impossibility()},
          {"e", t.e()}};
}

inline void emit(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << "\n"; }

struct LoadedKb {
  EvidentialCorpus corpus;
  std::vector<Diagnostic> warnings;
};

inline std::optional<LoadedKb> load_kb(const std::string& path, std::ostream& err) {
  auto text = read_file(path);
  if (!text) {
    err << path << ": cannot read file\n";
    return std::nullopt;
  }
  auto parsed = parse_kb(*text);
  print_diagnostics(err, path, parsed.diagnostics);
  if (!parsed.ok()) return std::nullopt;
  return LoadedKb{std::move(*parsed.value), std::move(parsed.diagnostics)};
}

inline int run_prob(const std::string& kb_path, const std::string& query_text, bool json,
                    std::ostream& out, std::ostream& err) {
  auto kb = load_kb(kb_path, err);
  if (!kb) return 2;

  auto query = parse_query(query_text);
  print_diagnostics(err, "query", query.diagnostics);
  if (!query.ok()) return 2;

  const ProbAnswer answer = prob_answer(kb->corpus, *query.value);
  if (json) {
    nlohmann::json provenance = nlohmann::json::object();
    for (const auto& [atom, refclass] : answer.provenance) {
      provenance[atom.to_string()] =
          refclass ? nlohmann::json(*refclass) : nlohmann::json(nullptr);
    }
    const char* basis = nullptr;
    switch (answer.basis) {
      case ProbAnswer::Basis::entailed: basis = "entailed"; break;
      case ProbAnswer::Basis::refuted: basis = "refuted"; break;
      case ProbAnswer::Basis::direct: basis = "direct_inference"; break;
      case ProbAnswer::Basis::bounds: basis = "sentence_bounds"; break;
    }
    emit(out, {{"query", logic::to_text(*query.value)},
               {"interval", {answer.interval.lower(), answer.interval.upper()}},
               {"basis", basis},
               {"provenance", provenance},
               {"thresholds", thresholds_json(kb->corpus.thresholds())},
               {"diagnostics", diagnostics_json(kb->warnings)}});
  } else {
    out << fmt_interval(answer.interval.lower(), answer.interval.upper()) << "\n";
  }
  return 0;
}

inline int run_corpus(const std::string& kb_path, const std::string& candidates_path, bool json,
                      std::ostream& out, std::ostream& err) {
  auto kb = load_kb(kb_path, err);
  if (!kb) return 2;

  auto text = read_file(candidates_path);
  if (!text) {
    err << candidates_path << ": cannot read file\n";
    return 2;
  }
  std::vector<logic::Sentence> candidates;
  {
    const auto lines = kbdetail::split_lines(*text);
    bool bad = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::string_view line = lines[i];
      const auto hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
      if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
      auto parsed = parse_query(line);
      for (Diagnostic d : parsed.diagnostics) {
        d.line = static_cast<int>(i) + 1;
        err << candidates_path << ":" << d.to_string() << "\n";
      }
      if (!parsed.ok()) {
        bad = true;
        continue;
      }
      candidates.push_back(std::move(*parsed.value));
    }
    if (bad) return 2;
  }

  const PracticalCorpus kp = practical_corpus(kb->corpus, candidates);
  if (json) {
    nlohmann::json accepted_list = nlohmann::json::array();
    nlohmann::json rejected_list = nlohmann::json::array();
    for (const logic::Sentence& s : candidates) {
      (kp.contains(s) ? accepted_list : rejected_list).push_back(logic::to_text(s));
    }
    emit(out, {{"accepted", accepted_list},
               {"rejected", rejected_list},
               {"thresholds", thresholds_json(kb->corpus.thresholds())},
               {"diagnostics", diagnostics_json(kb->warnings)}});
  } else {
    for (const logic::Sentence& s : candidates) {
      out << (kp.contains(s) ? "accepted " : "rejected ") << logic::to_text(s) << "\n";
    }
  }
  return 0;
}

inline int run_decide(const std::string& path, const std::string& rule,
                      std::optional<double> threshold, bool json, std::ostream& out,
                      std::ostream& err) {
  auto text = read_file(path);
  if (!text) {
    err << path << ": cannot read file\n";
    return 2;
  }
  auto parsed = parse_decision(*text);
  print_diagnostics(err, path, parsed.diagnostics);
  if (!parsed.ok()) return 2;
  const DecisionProblem& dp = *parsed.value;

  if (rule == "satisfice" && !threshold) {
    err << "the satisfice rule requires --threshold\n";
    return 2;
  }

  nlohmann::json doc{{"rule", rule}, {"diagnostics", diagnostics_json(parsed.diagnostics)}};
  auto act_eu = [&](const std::string& act) {
    const UtilityRange eu = expectation_interval(dp, act);
    if (!json) out << act << " eu " << fmt_interval(eu.lower, eu.upper) << "\n";
    return nlohmann::json{{"act", act}, {"eu", {eu.lower, eu.upper}}};
  };

  if (rule == "admissible") {
    nlohmann::json acts = nlohmann::json::array();
    for (const std::string& a : admissible(dp)) acts.push_back(act_eu(a));
    doc["acts"] = acts;
  } else if (rule == "maximin") {
    const std::string chosen = gamma_maximin(dp);
    doc["chosen"] = chosen;
    doc["acts"] = nlohmann::json::array({act_eu(chosen)});
  } else if (rule == "regret") {
    const std::string chosen = minimax_regret(dp);
    const double r = max_regret(dp, chosen);
    if (!json) out << chosen << " regret " << fmt(r) << "\n";
    doc["chosen"] = chosen;
    doc["acts"] = nlohmann::json::array({{{"act", chosen}, {"regret", r}}});
  } else {  // satisfice
    doc["threshold"] = *threshold;
    nlohmann::json acts = nlohmann::json::array();
    for (const std::string& a : satisfice(dp, *threshold)) acts.push_back(act_eu(a));
    doc["acts"] = acts;
  }
  if (json) emit(out, doc);
  return 0;
}

inline int run_witness(const std::string& path, bool json, std::ostream& out,
                       std::ostream& err) {
  auto text = read_file(path);
  if (!text) {
    err << path << ": cannot read file\n";
    return 2;
  }
  auto parsed = parse_witness(*text);
  print_diagnostics(err, path, parsed.diagnostics);
  if (!parsed.ok()) return 2;

  const WitnessProblem& wp = *parsed.value;
  const auto witness = find_bayes_witness(wp.space, wp.marginals, wp.conditionals);
  if (json) {
    nlohmann::json w = nullptr;
    if (witness) {
      w = nlohmann::json::object();
      for (std::size_t i = 0; i < wp.space.size(); ++i) {
        w[wp.space.label(i)] = witness->probabilities()[i];
      }
    }
    emit(out, {{"feasible", witness.has_value()},
               {"witness", w},
               {"diagnostics", diagnostics_json(parsed.diagnostics)}});
  } else if (witness) {
    for (std::size_t i = 0; i < wp.space.size(); ++i) {
      out << wp.space.label(i) << " " << fmt(witness->probabilities()[i]) << "\n";
    }
  } else {
    out << "infeasible\n";
  }
  return 0;
}

inline int run_bound(double m1, double m2, double t, bool json, std::ostream& out,
                     std::ostream& err) {
  (void)err;
  const double bound = tail_bound_from_moments(MomentEvidence(m1, m2), t);
  if (json) {
    emit(out, {{"m1", m1},
               {"m2", m2},
               {"t", t},
               {"bound", bound},
               {"diagnostics", nlohmann::json::array()}});
  } else {
    out << fmt(bound) << "\n";
  }
  return 0;
}

}  // namespace detail

/// Command line front end.  Exit codes: 0 success, 1 domain errors,
/// 2 usage/parse/file errors; diagnostics go to the error stream.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"interval-valued probability over convex sets of distributions"};
  app.name("credal");
  app.require_subcommand(1);

  std::string kb_path, query_text, candidates_path, file_path, rule;
  double m1 = 0.0, m2 = 0.0, t = 0.0;
  double threshold_value = 0.0;
  bool json_prob = false, json_corpus = false, json_decide = false, json_witness = false,
       json_bound = false;

  CLI::App* prob_cmd = app.add_subcommand("prob", "probability interval of a query sentence");
  prob_cmd->add_option("--kb", kb_path, "knowledge base file")->required();
  prob_cmd->add_option("--query", query_text, "sentence to evaluate")->required();
  prob_cmd->add_flag("--json", json_prob, "structured output");

  CLI::App* corpus_cmd =
      app.add_subcommand("corpus", "evaluate candidate sentences for the practical corpus");
  corpus_cmd->add_option("--kb", kb_path, "knowledge base file")->required();
  corpus_cmd->add_option("--candidates", candidates_path, "file with one sentence per line")
      ->required();
  corpus_cmd->add_flag("--json", json_corpus, "structured output");

  CLI::App* decide_cmd = app.add_subcommand("decide", "evaluate a decision problem");
  decide_cmd->add_option("--file", file_path, "decision problem file")->required();
  decide_cmd->add_option("--rule", rule, "admissible|maximin|regret|satisfice")
      ->required()
      ->check(CLI::IsMember({"admissible", "maximin", "regret", "satisfice"}));
  CLI::Option* threshold_opt =
      decide_cmd->add_option("--threshold", threshold_value, "satisficing level");
  decide_cmd->add_flag("--json", json_decide, "structured output");

  CLI::App* witness_cmd =
      app.add_subcommand("witness", "search for a distribution meeting interval constraints");
  witness_cmd->add_option("--file", file_path, "constraint file")->required();
  witness_cmd->add_flag("--json", json_witness, "structured output");

  CLI::App* bound_cmd =
      app.add_subcommand("bound", "confidence that a limit frequency stays below a threshold");
  bound_cmd->add_option("--m1", m1, "first moment")->required();
  bound_cmd->add_option("--m2", m2, "second moment")->required();
  bound_cmd->add_option("--t", t, "frequency threshold")->required();
  bound_cmd->add_flag("--json", json_bound, "structured output");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (prob_cmd->parsed()) return detail::run_prob(kb_path, query_text, json_prob, out, err);
    if (corpus_cmd->parsed()) {
      return detail::run_corpus(kb_path, candidates_path, json_corpus, out, err);
    }
    if (decide_cmd->parsed()) {
      std::optional<double> threshold;
      if (threshold_opt->count() > 0) threshold = threshold_value;
      return detail::run_decide(file_path, rule, threshold, json_decide, out, err);
    }
    if (witness_cmd->parsed()) return detail::run_witness(file_path, json_witness, out, err);
    if (bound_cmd->parsed()) return detail::run_bound(m1, m2, t, json_bound, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand given\n";
  return 2;
}

}  // namespace credal::cli
