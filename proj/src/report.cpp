#include "qpsurf/report.hpp"

#include "qpsurf/errors.hpp"
#include "qpsurf/quiver.hpp"

#include <exception>
#include <random>
#include <sstream>
#include <vector>

namespace qpsurf {

namespace {

Json input_summary(const Triangulation& t) {
  Json input;
  input["triangles"] = t.triangles;
  const EulerData euler = euler_data(t);
  input["genus"] = euler.genus;
  input["punctures"] = euler.punctures;
  input["arcs"] = euler.arcs;
  return input;
}

Json hypotheses_json(const HypothesisReport& h) {
  Json out;
  out["star"] = h.star;
  out["diamond"] = h.diamond;
  out["scalar_product_ok"] = h.scalar_product_ok;
  out["theorems_apply"] = h.theorems_apply;
  return out;
}

Json dimension_json(const Triangulation& t, const TruncatedAlgebra& a) {
  Json dim;
  dim["formula"] = algebra_dimension(t);
  dim["oracle"] = a.dimension();
  dim["match"] = dim["formula"] == dim["oracle"];
  dim["by_degree"] = a.dimension_by_degree();
  const auto& by_degree = a.dimension_by_degree();
  const int top = static_cast<int>(by_degree.size());
  dim["stabilized"] =
      top >= 2 && by_degree[top - 1] == 0 && by_degree[top - 2] == 0;
  return dim;
}

const char* engine_name(QuotientEngine e) {
  switch (e) {
    case QuotientEngine::dense:
      return "dense";
    case QuotientEngine::rewriting:
      return "rewriting";
    default:
      return "automatic";
  }
}

}  // namespace

VerifyOutcome verify_triangulation(const Triangulation& t,
                                   const std::string& scalars_text,
                                   int truncation) {
  VerifyOutcome outcome;
  Json& report = outcome.report;

  const ValidationReport validation = validate(t);
  if (!validation.ok()) {
    report["problems"] = validation.problems;
    report["verdict"] = "invalid-input";
    outcome.exit_code = 2;
    return outcome;
  }

  report["input"] = input_summary(t);
  const Quiver q = adjacency_quiver(t);

  ScalarAssignment c = ScalarAssignment::default_scalars(q);
  if (!scalars_text.empty()) {
    try {
      c = ScalarAssignment::parse(q, scalars_text);
    } catch (const ParseError& e) {
      report["problems"] = Json::array({e.what()});
      report["verdict"] = "invalid-input";
      outcome.exit_code = 2;
      return outcome;
    }
  }
  Json scalar_list = Json::array();
  for (int o = 0; o < c.orbit_count(); ++o)
    scalar_list.push_back(rational_to_string(c.for_orbit(o)));
  report["scalars"] = scalar_list;

  const HypothesisReport hypotheses = hypothesis_report(q, c);
  report["hypotheses"] = hypotheses_json(hypotheses);

  // The theorem checks need the stable truncation bound; smaller requests
  // are raised to it, larger ones honoured.
  const int stable = default_truncation(q);
  const int used = truncation > stable ? truncation : stable;
  report["truncation"] = used;

  const TruncatedAlgebra a(q, c, used);
  report["engine"] = engine_name(a.engine_used());
  report["dimension"] = dimension_json(t, a);

  if (!hypotheses.theorems_apply) {
    report["verdict"] = "hypotheses-not-met";
    outcome.exit_code = 3;
    return outcome;
  }

  bool all_pass = report["dimension"]["match"].get<bool>() &&
                  report["dimension"]["stabilized"].get<bool>();

  try {
    const JacobianBasis basis = jacobian_basis(q, c, a);
    Json basis_json;
    basis_json["count"] = basis.count();
    basis_json["independent"] = basis.independent;
    basis_json["spans"] = basis.spans;
    basis_json["matches_dimension"] = basis.count() == a.dimension();
    report["basis"] = basis_json;
    all_pass = all_pass && basis.independent && basis.spans &&
               basis.count() == a.dimension();
  } catch (const std::logic_error& e) {
    report["basis"] = Json{{"error", e.what()}};
    all_pass = false;
  }

  {
    const CartanMatrix cartan = cartan_matrix(t);
    Json cartan_json;
    cartan_json["entries"] = cartan.entries;
    cartan_json["rank"] = cartan.rank;
    cartan_json["determinant"] = cartan.determinant.str();
    cartan_json["entry_ranges_ok"] = cartan.entry_ranges_ok;
    cartan_json["determinant_zero"] = cartan.determinant == 0;
    const bool matches = cartan_vs_algebra(t, a);
    cartan_json["matches_algebra"] = matches;
    report["cartan"] = cartan_json;
    all_pass = all_pass && cartan.entry_ranges_ok && cartan.determinant == 0 && matches;
  }

  try {
    const SymmetryCertificate symmetry = symmetry_check(q, c, a);
    Json symmetry_json;
    symmetry_json["bimodule_checks"] = symmetry.bimodule_checks;
    symmetry_json["idempotent_checks"] = symmetry.idempotent_checks;
    symmetry_json["product_spot_checks"] = symmetry.product_spot_checks;
    symmetry_json["failures"] = static_cast<int>(symmetry.failures.size());
    symmetry_json["pass"] = symmetry.pass();
    report["symmetry"] = symmetry_json;
    all_pass = all_pass && symmetry.pass();
  } catch (const std::logic_error& e) {
    report["symmetry"] = Json{{"error", e.what()}};
    all_pass = false;
  }

  try {
    const CenterDescription center = center_basis(q, c, a);
    Json center_json;
    center_json["dimension"] = center.dimension;
    center_json["expected"] = center.expected;
    center_json["spanned_by_unit_and_socles"] = center.spanned_by_unit_and_socles;
    center_json["products_vanish"] = center.products_vanish;
    center_json["pass"] = center.pass();
    report["center"] = center_json;
    all_pass = all_pass && center.pass();
  } catch (const std::logic_error& e) {
    report["center"] = Json{{"error", e.what()}};
    all_pass = false;
  }

  {
    const bool nonrigid = nonrigidity_check(q, c, a);
    report["nonrigidity"] = nonrigid;
    all_pass = all_pass && nonrigid;
  }

  report["verdict"] = all_pass ? "verified" : "failed";
  outcome.exit_code = all_pass ? 0 : 1;
  return outcome;
}

Json batch_verify(int genus_max, int punctures_max, unsigned seed) {
  Json out;
  Json cases = Json::array();
  int verified = 0, hypotheses_not_met = 0, failed = 0, invalid = 0;

  std::mt19937 rng(seed);
  for (int genus = 0; genus <= genus_max; ++genus) {
    for (int punctures = 1; punctures <= punctures_max; ++punctures) {
      const MarkedSurface surface{genus, punctures};
      if (!surface.triangulable()) continue;

      Triangulation t;
      if (seed == 0) {
        t = nice_triangulation(surface);
      } else {
        int have;
        if (genus == 0) {
          const int base = punctures < 6 ? punctures : 6;
          t = sphere_base(base);
          have = base;
        } else {
          t = once_punctured_genus(genus);
          have = 1;
        }
        for (; have < punctures; ++have)
          t = add_puncture(t, static_cast<int>(rng() % t.arc_count()));
      }

      const VerifyOutcome outcome = verify_triangulation(t, "", 0);
      Json entry;
      entry["genus"] = genus;
      entry["punctures"] = punctures;
      entry["arcs"] = t.arc_count();
      entry["verdict"] = outcome.report.contains("verdict")
                             ? outcome.report["verdict"]
                             : Json("invalid-input");
      entry["exit_code"] = outcome.exit_code;
      if (outcome.report.contains("dimension"))
        entry["dimension"] = outcome.report["dimension"]["oracle"];
      cases.push_back(entry);

      switch (outcome.exit_code) {
        case 0: ++verified; break;
        case 1: ++failed; break;
        case 2: ++invalid; break;
        default: ++hypotheses_not_met; break;
      }
    }
  }

  out["cases"] = cases;
  Json summary;
  summary["total"] = static_cast<int>(cases.size());
  summary["verified"] = verified;
  summary["hypotheses_not_met"] = hypotheses_not_met;
  summary["failed"] = failed;
  summary["invalid"] = invalid;
  summary["all_verified"] = failed == 0 && invalid == 0 && hypotheses_not_met == 0;
  out["summary"] = summary;
  return out;
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void render_verify(const Json& report, std::ostringstream& out) {
  if (report.contains("input")) {
    const auto& input = report["input"];
    out << "surface: genus " << input["genus"].get<int>() << ", "
        << input["punctures"].get<int>() << " puncture(s), "
        << input["arcs"].get<int>() << " arcs, "
        << input["triangles"].size() << " triangles\n";
  }
  if (report.contains("problems")) {
    out << "problems:\n";
    for (const auto& p : report["problems"]) out << "  - " << p.get<std::string>() << "\n";
  }
  if (report.contains("scalars")) {
    out << "scalars:";
    for (const auto& s : report["scalars"]) out << " " << s.get<std::string>();
    out << "\n";
  }
  if (report.contains("hypotheses")) {
    const auto& h = report["hypotheses"];
    out << "hypotheses: star " << yes_no(h["star"].get<bool>()) << ", diamond "
        << yes_no(h["diamond"].get<bool>()) << ", scalar product ok "
        << yes_no(h["scalar_product_ok"].get<bool>()) << " -> theorems "
        << (h["theorems_apply"].get<bool>() ? "apply" : "do not apply") << "\n";
  }
  if (report.contains("truncation")) {
    out << "truncation: " << report["truncation"].get<int>();
    if (report.contains("engine"))
      out << " (engine: " << report["engine"].get<std::string>() << ")";
    out << "\n";
  }
  if (report.contains("dimension")) {
    const auto& d = report["dimension"];
    out << "dimension: formula " << d["formula"].get<long long>() << ", oracle "
        << d["oracle"].get<long long>() << ", match "
        << yes_no(d["match"].get<bool>()) << ", stabilized "
        << yes_no(d["stabilized"].get<bool>()) << "\n";
    out << "  by degree:";
    for (const auto& n : d["by_degree"]) out << " " << n.get<long long>();
    out << "\n";
  }
  if (report.contains("basis")) {
    const auto& b = report["basis"];
    if (b.contains("error")) {
      out << "basis: error: " << b["error"].get<std::string>() << "\n";
    } else {
      out << "basis: " << b["count"].get<int>() << " elements, independent "
          << yes_no(b["independent"].get<bool>()) << ", spans "
          << yes_no(b["spans"].get<bool>()) << "\n";
    }
  }
  if (report.contains("cartan")) {
    const auto& cj = report["cartan"];
    out << "cartan: rank " << cj["rank"].get<int>() << ", determinant "
        << cj["determinant"].get<std::string>() << ", entries ok "
        << yes_no(cj["entry_ranges_ok"].get<bool>()) << ", matches algebra "
        << yes_no(cj["matches_algebra"].get<bool>()) << "\n";
  }
  if (report.contains("symmetry")) {
    const auto& s = report["symmetry"];
    if (s.contains("error")) {
      out << "symmetry: error: " << s["error"].get<std::string>() << "\n";
    } else {
      out << "symmetry: " << s["bimodule_checks"].get<int>() << " bimodule + "
          << s["idempotent_checks"].get<int>() << " idempotent + "
          << s["product_spot_checks"].get<int>() << " product checks, failures "
          << s["failures"].get<int>() << "\n";
    }
  }
  if (report.contains("center")) {
    const auto& ce = report["center"];
    if (ce.contains("error")) {
      out << "center: error: " << ce["error"].get<std::string>() << "\n";
    } else {
      out << "center: dimension " << ce["dimension"].get<int>() << " (expected "
          << ce["expected"].get<int>() << "), unit and socle cycles span "
          << yes_no(ce["spanned_by_unit_and_socles"].get<bool>())
          << ", socle products vanish "
          << yes_no(ce["products_vanish"].get<bool>()) << "\n";
    }
  }
  if (report.contains("nonrigidity"))
    out << "nonrigidity: " << yes_no(report["nonrigidity"].get<bool>()) << "\n";
  if (report.contains("verdict"))
    out << "verdict: " << report["verdict"].get<std::string>() << "\n";
}

void render_batch(const Json& report, std::ostringstream& out) {
  out << "genus  punctures  arcs  dimension  verdict\n";
  for (const auto& entry : report["cases"]) {
    std::ostringstream line;
    line << entry["genus"].get<int>();
    std::string genus = line.str();
    out << genus << std::string(7 - genus.size(), ' ');
    std::ostringstream pstream;
    pstream << entry["punctures"].get<int>();
    const std::string punctures = pstream.str();
    out << punctures << std::string(11 - punctures.size(), ' ');
    std::ostringstream astream;
    astream << entry["arcs"].get<int>();
    const std::string arcs = astream.str();
    out << arcs << std::string(6 - arcs.size(), ' ');
    std::string dim = "-";
    if (entry.contains("dimension")) {
      std::ostringstream dstream;
      dstream << entry["dimension"].get<long long>();
      dim = dstream.str();
    }
    out << dim << std::string(dim.size() < 11 ? 11 - dim.size() : 1, ' ');
    out << entry["verdict"].get<std::string>() << "\n";
  }
  const auto& summary = report["summary"];
  out << "total " << summary["total"].get<int>() << ": "
      << summary["verified"].get<int>() << " verified, "
      << summary["hypotheses_not_met"].get<int>() << " hypotheses not met, "
      << summary["failed"].get<int>() << " failed, "
      << summary["invalid"].get<int>() << " invalid\n";
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  if (report.is_object() && report.contains("cases"))
    render_batch(report, out);
  else if (report.is_object() &&
           (report.contains("verdict") || report.contains("problems")))
    render_verify(report, out);
  else
    out << report.dump(2) << "\n";
  return out.str();
}

}  // namespace qpsurf
