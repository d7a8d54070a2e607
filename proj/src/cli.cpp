#include "ltlsn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "ltlsn/checker.hpp"
#include "ltlsn/formula.hpp"
#include "ltlsn/model.hpp"
#include "ltlsn/semantics.hpp"
#include "ltlsn/translate.hpp"

namespace ltlsn::cli {

namespace {

/// Failure carrying its exit code; the message goes to stderr.
struct command_error {
  int code;
  std::string message;
};

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw command_error{usage_error, "cannot read model file '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model load_model(const std::string& path)
{
  std::string text = read_file(path);
  try {
    return parse_model(text);
  } catch (const model_validation_error& e) {
    throw command_error{invalid_model, path + ": " + e.what()};
  } catch (const model_parse_error& e) {
    throw command_error{usage_error, path + ": " + e.what()};
  }
}

Formula load_formula(const std::string& text, const Model& model)
{
  Formula f = [&] {
    try {
      return parse_formula(text);
    } catch (const syntax_error& e) {
      throw command_error{usage_error, "formula: " + std::string(e.what())};
    }
  }();
  for (const auto& name : agents_in(f))
    if (!model.network().find(name))
      throw command_error{usage_error, "formula: unknown agent '" + name + "'"};
  return f;
}

int cmd_validate(const std::string& path, std::ostream& out)
{
  Model model = [&] {
    try {
      return parse_model_unvalidated(read_file(path));
    } catch (const model_parse_error& e) {
      throw command_error{usage_error, path + ": " + e.what()};
    }
  }();
  auto violations = validate(model);

  out << "agents: " << model.agent_count() << "\n";
  out << "theta: " << to_string(model.theta()) << (model.threshold().strict ? " (>)" : " (>=)")
      << "\n";
  for (auto axiom :
       {Violation::Axiom::irreflexivity, Violation::Axiom::symmetry, Violation::Axiom::seriality}) {
    std::vector<std::string> offenders;
    for (const auto& v : violations)
      if (v.axiom == axiom)
        offenders.push_back(v.axiom == Violation::Axiom::symmetry ? "(" + v.agent + "," + v.other + ")"
                                                                  : v.agent);
    out << to_string(axiom) << ": ";
    if (offenders.empty()) {
      out << "ok\n";
    } else {
      out << "violated by ";
      for (std::size_t k = 0; k < offenders.size(); ++k)
        out << (k ? ", " : "") << offenders[k];
      out << "\n";
    }
  }
  if (violations.empty()) {
    out << "valid\n";
    return success;
  }
  out << "invalid (" << violations.size() << (violations.size() == 1 ? " violation)\n" : " violations)\n");
  return invalid_model;
}

int cmd_trace(const std::string& path, std::ostream& out)
{
  Model model = load_model(path);
  Trace t = trace(model);
  for (std::size_t i = 0; i < t.frames.size(); ++i)
    out << i << ": " << model.format(t.frames[i]) << "\n";
  out << "fixed point at i=" << t.fixed_point << "\n";
  return success;
}

int cmd_check(const std::string& path, const std::string& text, std::ostream& out)
{
  Model model = load_model(path);
  Formula f = load_formula(text, model);
  Trace t = trace(model);
  SatSet s = s_set_from_labels(check(model, t, f), f);
  bool holds = s.contains(0, t.fixed_point);
  out << "S = " << to_string(s) << "\n";
  out << "holds at 0: " << (holds ? "yes" : "no") << "\n";
  return holds ? success : does_not_hold;
}

Formula translate_formula(const Model& model, const Formula& f, const TranslateOptions& options)
{
  Formula no_until = eliminate_until(f, model.agent_count());
  return to_propositional(no_until, model.agents(), model.threshold(), options);
}

int cmd_translate(const std::string& path, const std::string& text, bool expand,
                  std::size_t limit, std::ostream& out)
{
  Model model = load_model(path);
  Formula f = load_formula(text, model);
  TranslateOptions options;
  options.expand_majority = expand;
  options.majority_limit = limit;
  try {
    out << render(translate_formula(model, f, options)) << "\n";
  } catch (const expansion_limit_error& e) {
    throw command_error{usage_error, e.what()};
  }
  return success;
}

int cmd_xcheck(const std::string& path, const std::string& text, std::ostream& out)
{
  Model model = load_model(path);
  Formula f = load_formula(text, model);
  Trace t = trace(model);

  SatSet direct = satisfaction_set(model, t, f);
  SatSet labeled = s_set_from_labels(check(model, t, f), f);

  Formula prop = translate_formula(model, f, {});
  SatSet translated;
  for (std::size_t i = 0; i <= t.fixed_point; ++i)
    if (eval_prop(prop, t.frames[i], model.network(), model.threshold()))
      translated.prefix_positions.push_back(i);
  translated.holds_at_tail =
    !translated.prefix_positions.empty() && translated.prefix_positions.back() == t.fixed_point;

  bool agree = direct == labeled && direct == translated;
  out << "semantics:   S = " << to_string(direct) << "\n";
  out << "labeling:    S = " << to_string(labeled) << "\n";
  out << "translation: S = " << to_string(translated) << "\n";
  out << "engines agree: " << (agree ? "yes" : "no") << "\n";
  if (!agree)
    return engine_disagreement;
  bool holds = direct.contains(0, t.fixed_point);
  out << "holds at 0: " << (holds ? "yes" : "no") << "\n";
  return holds ? success : does_not_hold;
}

} // namespace

CommandResult run(const std::vector<std::string>& args)
{
  CLI::App app{"Temporal logic model checking over threshold diffusion networks", "ltlsn"};
  app.require_subcommand(1);

  std::string model_path;
  std::string formula_text;
  bool expand = false;
  std::size_t limit = default_majority_limit;

  auto* validate_cmd = app.add_subcommand("validate", "Report network axiom violations");
  validate_cmd->add_option("model", model_path, "Model file")->required();

  auto* trace_cmd = app.add_subcommand("trace", "Print the diffusion path up to its fixed point");
  trace_cmd->add_option("model", model_path, "Model file")->required();

  auto* check_cmd = app.add_subcommand("check", "Label the path and print where the formula holds");
  check_cmd->add_option("model", model_path, "Model file")->required();
  check_cmd->add_option("formula", formula_text, "Formula")->required();

  auto* translate_cmd =
    app.add_subcommand("translate", "Print the propositional translation of a formula");
  translate_cmd->add_option("model", model_path, "Model file")->required();
  translate_cmd->add_option("formula", formula_text, "Formula")->required();
  translate_cmd->add_flag("--expand-majority", expand, "Expand majority atoms into explicit formulas");
  translate_cmd->add_option("--majority-limit", limit, "Largest agent count for explicit expansion")
    ->capture_default_str();

  auto* xcheck_cmd = app.add_subcommand("xcheck", "Compare all three evaluation engines");
  xcheck_cmd->add_option("model", model_path, "Model file")->required();
  xcheck_cmd->add_option("formula", formula_text, "Formula")->required();

  std::ostringstream out;
  std::ostringstream err;
  CommandResult result;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    result.exit_code = code == 0 ? success : usage_error;
    result.stdout_text = out.str();
    result.stderr_text = err.str();
    return result;
  }

  try {
    if (*validate_cmd)
      result.exit_code = cmd_validate(model_path, out);
    else if (*trace_cmd)
      result.exit_code = cmd_trace(model_path, out);
    else if (*check_cmd)
      result.exit_code = cmd_check(model_path, formula_text, out);
    else if (*translate_cmd)
      result.exit_code = cmd_translate(model_path, formula_text, expand, limit, out);
    else if (*xcheck_cmd)
      result.exit_code = cmd_xcheck(model_path, formula_text, out);
  } catch (const command_error& e) {
    result.exit_code = e.code;
    err << "error: " << e.message << "\n";
  } catch (const std::exception& e) {
    result.exit_code = usage_error;
    err << "error: " << e.what() << "\n";
  }

  result.stdout_text = out.str();
  result.stderr_text = err.str();
  return result;
}

} // namespace ltlsn::cli
