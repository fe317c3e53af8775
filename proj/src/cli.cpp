#include "qpsurf/cli.hpp"

#include "qpsurf/errors.hpp"
#include "qpsurf/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace qpsurf {

namespace {

struct Options {
  std::string input;
  int genus = -1;
  int punctures = -1;
  std::string scalars;
  int truncation = 0;
  std::string format = "json";
  std::string output;
  unsigned seed = 0;
  bool all = false;
};

Triangulation load_input(const Options& opt) {
  if (opt.input.empty())
    throw ParseError("missing --input: this verb reads a triangulation document");
  std::ifstream in(opt.input);
  if (!in) throw ParseError("cannot open input file: " + opt.input);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_triangulation(text.str());
}

int emit(const Json& report, const Options& opt, std::ostream& out, std::ostream& err,
         int code) {
  const std::string body =
      opt.format == "text" ? render_text(report) : report.dump(2) + "\n";
  if (!opt.output.empty()) {
    std::ofstream file(opt.output, std::ios::binary);
    if (!file) {
      err << "cannot open output file: " << opt.output << "\n";
      return kExitInvalidInput;
    }
    file << body;
  } else {
    out << body;
  }
  return code;
}

int run_validate(const Options& opt, std::ostream& out, std::ostream& err) {
  const Triangulation t = load_input(opt);
  const ValidationReport validation = validate(t);
  Json report;
  report["ok"] = validation.ok();
  report["problems"] = validation.problems;
  if (validation.ok()) {
    const EulerData euler = euler_data(t);
    report["genus"] = euler.genus;
    report["punctures"] = euler.punctures;
    report["arcs"] = euler.arcs;
    report["triangles"] = euler.triangles;
    const ConditionReport conditions = condition_report(t);
    report["conditions"] =
        Json{{"t3", conditions.t3}, {"t3half", conditions.t3half}, {"t4", conditions.t4}};
  }
  return emit(report, opt, out, err, validation.ok() ? kExitOk : kExitInvalidInput);
}

int run_construct(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.genus < 0 || opt.punctures < 0)
    throw ParseError("construct needs --genus and --punctures");
  const MarkedSurface surface{opt.genus, opt.punctures};
  if (!surface.triangulable())
    throw ParseError("no ideal triangulation: genus " + std::to_string(opt.genus) +
                     " with " + std::to_string(opt.punctures) + " puncture(s)");
  const Triangulation t = nice_triangulation(surface);
  const std::string body = triangulation_to_json(t) + "\n";
  if (!opt.output.empty()) {
    std::ofstream file(opt.output, std::ios::binary);
    if (!file) {
      err << "cannot open output file: " << opt.output << "\n";
      return kExitInvalidInput;
    }
    file << body;
  } else {
    out << body;
  }
  return kExitOk;
}

int run_quiver(const Options& opt, std::ostream& out, std::ostream& err) {
  const Triangulation t = load_input(opt);
  const ValidationReport validation = validate(t);
  if (!validation.ok()) {
    for (const auto& p : validation.problems) err << p << "\n";
    return kExitInvalidInput;
  }
  const Quiver q = adjacency_quiver(t);
  const std::string body = quiver_to_json(q) + "\n";
  if (!opt.output.empty()) {
    std::ofstream file(opt.output, std::ios::binary);
    if (!file) {
      err << "cannot open output file: " << opt.output << "\n";
      return kExitInvalidInput;
    }
    file << body;
  } else {
    out << body;
  }
  return kExitOk;
}

int run_dimension(const Options& opt, std::ostream& out, std::ostream& err) {
  const Triangulation t = load_input(opt);
  const ValidationReport validation = validate(t);
  if (!validation.ok()) {
    for (const auto& p : validation.problems) err << p << "\n";
    return kExitInvalidInput;
  }
  const Quiver q = adjacency_quiver(t);
  const ScalarAssignment c = opt.scalars.empty()
                                 ? ScalarAssignment::default_scalars(q)
                                 : ScalarAssignment::parse(q, opt.scalars);
  const int truncation = opt.truncation > 0 ? opt.truncation : default_truncation(q);
  if (truncation < 2) throw ParseError("--truncation must be at least 2");
  const TruncatedAlgebra a(q, c, truncation);
  Json report;
  report["truncation"] = truncation;
  report["engine"] = a.engine_used() == QuotientEngine::dense ? "dense" : "rewriting";
  report["total"] = a.dimension();
  report["by_degree"] = a.dimension_by_degree();
  report["formula"] = algebra_dimension(t);
  report["matches_formula"] = a.dimension() == algebra_dimension(t);
  return emit(report, opt, out, err, kExitOk);
}

int run_cartan(const Options& opt, std::ostream& out, std::ostream& err) {
  const Triangulation t = load_input(opt);
  const ValidationReport validation = validate(t);
  if (!validation.ok()) {
    for (const auto& p : validation.problems) err << p << "\n";
    return kExitInvalidInput;
  }
  const CartanMatrix cartan = cartan_matrix(t);
  Json report;
  report["entries"] = cartan.entries;
  report["rank"] = cartan.rank;
  report["determinant"] = cartan.determinant.str();
  report["entry_ranges_ok"] = cartan.entry_ranges_ok;
  return emit(report, opt, out, err, kExitOk);
}

int run_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const Triangulation t = load_input(opt);
  const VerifyOutcome outcome = verify_triangulation(t, opt.scalars, opt.truncation);
  return emit(outcome.report, opt, out, err, outcome.exit_code);
}

int run_report(const Options& opt, std::ostream& out, std::ostream& err) {
  const int genus_max = opt.genus >= 0 ? opt.genus : 1;
  const int punctures_max = opt.punctures >= 0 ? opt.punctures : 4;
  const Json summary = batch_verify(genus_max, punctures_max, opt.seed);
  const bool all_ok = summary["summary"]["all_verified"].get<bool>();
  return emit(summary, opt, out, err, all_ok ? kExitOk : kExitCheckFailed);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adjacency quivers with potential from surface triangulations"};
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&](CLI::App* sub, bool with_input) {
    if (with_input) sub->add_option("--input", opt.input, "triangulation JSON file");
    sub->add_option("--scalars", opt.scalars, "comma-separated scalars, one per puncture");
    sub->add_option("--truncation", opt.truncation, "truncation degree override");
    sub->add_option("--format", opt.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", opt.output, "write the report to this file");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a triangulation document");
  add_common(validate_cmd, true);
  auto* construct_cmd =
      app.add_subcommand("construct", "build the canonical triangulation of a surface");
  construct_cmd->add_option("--genus", opt.genus, "surface genus");
  construct_cmd->add_option("--punctures", opt.punctures, "number of punctures");
  add_common(construct_cmd, false);
  auto* quiver_cmd = app.add_subcommand("quiver", "emit the adjacency quiver");
  add_common(quiver_cmd, true);
  auto* dimension_cmd =
      app.add_subcommand("dimension", "dimension table of the truncated quotient");
  add_common(dimension_cmd, true);
  auto* cartan_cmd = app.add_subcommand("cartan", "Cartan matrix, rank and determinant");
  add_common(cartan_cmd, true);
  auto* verify_cmd = app.add_subcommand("verify", "run every theorem check");
  add_common(verify_cmd, true);
  verify_cmd->add_flag("--all", opt.all, "run every check (default; kept for scripts)");
  auto* report_cmd =
      app.add_subcommand("report", "verify a family of surfaces (genus/puncture ranges)");
  report_cmd->add_option("--genus", opt.genus, "largest genus");
  report_cmd->add_option("--punctures", opt.punctures, "largest puncture count");
  report_cmd->add_option("--seed", opt.seed, "0: canonical constructions; else random chains");
  add_common(report_cmd, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    if (validate_cmd->parsed()) return run_validate(opt, out, err);
    if (construct_cmd->parsed()) return run_construct(opt, out, err);
    if (quiver_cmd->parsed()) return run_quiver(opt, out, err);
    if (dimension_cmd->parsed()) return run_dimension(opt, out, err);
    if (cartan_cmd->parsed()) return run_cartan(opt, out, err);
    if (verify_cmd->parsed()) return run_verify(opt, out, err);
    if (report_cmd->parsed()) return run_report(opt, out, err);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const PreconditionError& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  err << "no verb given\n";
  return kExitInvalidInput;
}

}  // namespace qpsurf
