#pragma once

#include <array>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gradarg/gradarg.hpp"

namespace gradarg::cli {

enum ExitCode : int { ok = 0, usage = 1, input = 2, computation = 3 };

struct Options {
  std::string model = "categoriser";
  std::string semantics = "preferred";
  std::size_t depth = default_propagation_depth;
  std::string format = "text";
  std::vector<std::string> operands;
};

namespace detail {

class usage_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline AttackGraph read_graph(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return parse_framework(in);
  std::ifstream file(path);
  if (!file) throw input_error("cannot open '" + path + "'");
  return parse_framework(file);
}

inline Semantics semantics_of(const Options& o) { return o.semantics == "stable" ? Semantics::stable : Semantics::preferred; }

inline LocalInstance instance_of(const std::string& model) {
  return model == "labelling" ? rooted_labelling() : categoriser();
}

inline ValuationModel model_of(const Options& o) {
  if (o.model == "tuples") return tuple_model(o.depth);
  return local_model(instance_of(o.model));
}

inline nlohmann::json names(const AttackGraph& g, const ArgSet& s) {
  nlohmann::json out = nlohmann::json::array();
  for (ArgIndex a : s) out.push_back(g.name(a));
  return out;
}

inline std::string single_input(const Options& o) {
  if (o.operands.size() > 1) throw usage_error("expected at most one input file");
  return o.operands.empty() ? std::string() : o.operands.front();
}

inline void print_json(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << '\n'; }

// --- subcommands -----------------------------------------------------------

inline void cmd_value(const Options& o, std::istream& in, std::ostream& out) {
  const AttackGraph g = read_graph(single_input(o), in);
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::string> text;
  if (o.model == "tuples") {
    const auto values = evaluate_cyclic(g, o.depth);
    for (ArgIndex a = 0; a < g.size(); ++a) {
      text.push_back(g.name(a) + " " + to_string(values[a]));
      rows.push_back({{"argument", g.name(a)}, {"value", to_string(values[a])}, {"exact", values[a].is_exact()}});
    }
  } else {
    const auto values = evaluate_local(g, instance_of(o.model));
    for (ArgIndex a = 0; a < g.size(); ++a) {
      text.push_back(g.name(a) + " " + to_string(values[a]));
      rows.push_back({{"argument", g.name(a)},
                      {"value", to_string(values[a])},
                      {"exact", !std::holds_alternative<double>(values[a])}});
    }
  }
  if (o.format == "json") {
    print_json(out, {{"command", "value"}, {"model", o.model}, {"values", rows}});
  } else {
    for (auto& line : text) out << line << '\n';
  }
}

inline void cmd_compare(const Options& o, std::istream& in, std::ostream& out) {
  ComparisonOutcome result;
  const bool literals = o.operands.size() == 2 && !o.operands[0].empty() && o.operands[0].front() == '[';
  if (literals) {
    if (o.model != "tuples") throw usage_error("tupled-value literals require --model tuples");
    result = compare(parse_tupled_value(o.operands[0]), parse_tupled_value(o.operands[1]));
  } else if (o.operands.size() == 3 || o.operands.size() == 2) {
    // [FILE] A B
    const std::string path = o.operands.size() == 3 ? o.operands[0] : std::string();
    const AttackGraph g = read_graph(path, in);
    const ArgIndex a = g.at(o.operands[o.operands.size() - 2]);
    const ArgIndex b = g.at(o.operands.back());
    if (o.model == "tuples") {
      const auto values = evaluate_cyclic(g, o.depth);
      result = compare(values[a], values[b]);
    } else {
      const auto values = evaluate_local(g, instance_of(o.model));
      const int c = compare_values(values[a], values[b]);
      result.verdict = c > 0 ? Verdict::first_better : c < 0 ? Verdict::second_better : Verdict::equivalent;
      result.exact = !std::holds_alternative<double>(values[a]);
    }
  } else {
    throw usage_error("compare expects two tupled values, or [FILE] and two argument names");
  }
  if (o.format == "json") {
    print_json(out, {{"command", "compare"}, {"verdict", to_string(result.verdict)}, {"exact", result.exact}});
  } else {
    out << to_string(result.verdict) << (result.exact ? " (exact)" : " (inexact)") << '\n';
  }
}

inline void cmd_solve(const Options& o, std::istream& in, std::ostream& out) {
  const AttackGraph g = read_graph(single_input(o), in);
  const auto exts = extensions(g, semantics_of(o));
  if (o.format == "json") {
    nlohmann::json list = nlohmann::json::array();
    for (auto& e : exts) list.push_back(names(g, e));
    print_json(out, {{"command", "solve"}, {"semantics", o.semantics}, {"extensions", list}});
  } else {
    for (auto& e : exts) out << format_set(g, e) << '\n';
  }
}

inline void cmd_classify(const Options& o, std::istream& in, std::ostream& out) {
  const AttackGraph g = read_graph(single_input(o), in);
  const auto models = standard_models(o.depth);
  const auto report = acceptability_report(g, semantics_of(o), models);
  nlohmann::json rows = nlohmann::json::array();
  for (ArgIndex a = 0; a < g.size(); ++a) {
    std::vector<std::string> wd;
    for (auto& m : models) {
      const ArgSet& s = report.well_defended.at(m.name);
      if (std::binary_search(s.begin(), s.end(), a)) wd.push_back(m.name);
    }
    if (o.format == "json") {
      rows.push_back({{"argument", g.name(a)}, {"level", to_string(report.level[a])}, {"well_defended", wd}});
    } else {
      out << g.name(a) << ' ' << to_string(report.level[a]) << " [well-defended:";
      for (std::size_t i = 0; i < wd.size(); ++i) out << (i ? "," : "") << wd[i];
      out << "]\n";
    }
  }
  if (o.format == "json") {
    nlohmann::json list = nlohmann::json::array();
    for (auto& e : report.extensions) list.push_back(names(g, e));
    print_json(out, {{"command", "classify"}, {"semantics", o.semantics}, {"extensions", list}, {"arguments", rows}});
  }
}

inline void cmd_well_defended(const Options& o, std::istream& in, std::ostream& out) {
  const AttackGraph g = read_graph(single_input(o), in);
  const ArgSet wd = well_defended(g, model_of(o).preference(g));
  if (o.format == "json") {
    print_json(out, {{"command", "well-defended"}, {"model", o.model}, {"well_defended", names(g, wd)}});
  } else {
    out << format_set(g, wd) << '\n';
  }
}

inline void cmd_export_dot(const Options& o, std::istream& in, std::ostream& out) {
  const AttackGraph g = read_graph(single_input(o), in);
  if (o.format == "json") {
    print_json(out, {{"command", "export-dot"}, {"dot", export_dot(g)}});
  } else {
    out << export_dot(g);
  }
}

}  // namespace detail

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gradual valuation and acceptability of argumentation frameworks", "gradarg"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
    void (*fn)(const Options&, std::istream&, std::ostream&);
    bool model, semantics, depth;
    const char* operands;
    int slots;
  };
  const Command commands[] = {
      {"value", "Value of every argument", detail::cmd_value, true, false, true, "[FILE]", 1},
      {"compare", "Compare two tupled values, or two arguments of a graph", detail::cmd_compare, true, false, true,
       "VALUE VALUE | [FILE] ARG ARG", 3},
      {"solve", "Preferred or stable extensions", detail::cmd_solve, false, true, false, "[FILE]", 1},
      {"classify", "Acceptability level and well-defendedness of every argument", detail::cmd_classify, false, true,
       true, "[FILE]", 1},
      {"well-defended", "Well-defended arguments for one valuation", detail::cmd_well_defended, true, false, true,
       "[FILE]", 1},
      {"export-dot", "Graphviz rendering of the attack graph", detail::cmd_export_dot, false, false, false, "[FILE]", 1},
  };

  // positional operands, filled left to right
  std::array<std::string, 3> slots;
  const char* slot_names[] = {"operand1", "operand2", "operand3"};
  for (auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    for (int i = 0; i < c.slots; ++i) sub->add_option(slot_names[i], slots[i], i == 0 ? c.operands : "");
    if (c.model) {
      sub->add_option("--model", o.model, "categoriser | labelling | tuples")
          ->check(CLI::IsMember({"categoriser", "labelling", "tuples"}))
          ->capture_default_str();
    }
    if (c.semantics) {
      sub->add_option("--semantics", o.semantics, "preferred | stable")
          ->check(CLI::IsMember({"preferred", "stable"}))
          ->capture_default_str();
    }
    if (c.depth) {
      sub->add_option("--depth", o.depth, "runs through each cycle (tuples)")->check(CLI::PositiveNumber)->capture_default_str();
    }
    sub->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::usage;
  }
  for (auto* sub : app.get_subcommands()) {
    for (int i = 0; i < 3; ++i) {
      auto* opt = sub->get_option_no_throw(slot_names[i]);
      if (opt && opt->count() > 0) o.operands.push_back(slots[i]);
    }
  }

  try {
    for (auto& c : commands) {
      if (app.got_subcommand(c.name)) c.fn(o, in, out);
    }
  } catch (const detail::usage_error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::usage;
  } catch (const unknown_argument& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::usage;
  } catch (const detail::input_error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::input;
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << '\n';
    return ExitCode::input;
  } catch (const computation_error& e) {
    err << "computation error: " << e.what() << '\n';
    return ExitCode::computation;
  }
  return ExitCode::ok;
}

}  // namespace gradarg::cli
