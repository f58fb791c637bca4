#include "akgeo/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <vector>

#include "akgeo/chart_io.hpp"
#include "akgeo/complex_frames.hpp"
#include "akgeo/diagnostics.hpp"
#include "akgeo/errors.hpp"
#include "akgeo/zoo.hpp"

namespace akgeo {

namespace {

using nlohmann::json;

double parse_number(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not a number: \"" + text + "\"");
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
    ++pos;
  if (pos != text.size())
    throw std::invalid_argument(what + ": not a number: \"" + text + "\"");
  return v;
}

std::pair<std::string, double> parse_assignment(const std::string& text,
                                                const std::string& what) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument(what + ": expected name=value, got \"" + text +
                                "\"");
  std::string name = text.substr(0, eq);
  double value = parse_number(text.substr(eq + 1), what + " " + name);
  return {std::move(name), value};
}

AlmostKahlerChart resolve_chart(const RunConfig& cfg) {
  if (cfg.chart.empty())
    throw std::invalid_argument("a chart must be named (--chart)");
  if (cfg.chart.ends_with(".json")) {
    if (!cfg.params.empty())
      throw std::invalid_argument(
          "--param applies only to catalog charts, not chart files");
    return load_chart_file(cfg.chart);
  }
  return make_zoo_chart(cfg.chart, cfg.params);
}

std::vector<double> resolve_point(const std::string& text, const Box& domain) {
  const int d = domain.dim();
  std::vector<double> p;
  if (text.empty()) {
    p.resize(d);
    for (int v = 0; v < d; ++v) p[v] = 0.5 * (domain.lo[v] + domain.hi[v]);
    return p;
  }
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ','))
    p.push_back(parse_number(piece, "--point"));
  if (int(p.size()) != d)
    throw std::invalid_argument("--point needs " + std::to_string(d) +
                                " comma-separated coordinates");
  return p;
}

void emit_json(const std::string& body, const std::string& path,
               std::ostream& out) {
  if (path == "-") {
    out << body << "\n";
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write JSON output to " + path);
  f << body << "\n";
}

std::string fmt_point(const std::vector<double>& p) {
  std::ostringstream os;
  os << std::setprecision(12) << "(";
  for (std::size_t v = 0; v < p.size(); ++v)
    os << (v ? ", " : "") << p[v];
  os << ")";
  return os.str();
}

std::string fmt_complex(const std::complex<double>& z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real()
     << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

json identity_rows_json(const IdentityReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["name"] = row.name;
    r["paper_anchor"] = row.anchor;
    r["residual"] = row.residual;
    r["pass"] = row.pass;
    rows.push_back(std::move(r));
  }
  return rows;
}

void print_identity_rows(const IdentityReport& report, std::ostream& out) {
  for (const auto& row : report.rows)
    out << "  " << std::left << std::setw(34) << row.name << std::right
        << "  residual " << std::setw(18) << row.residual << "  "
        << (row.pass ? "PASS" : "FAIL") << "\n";
  out << "curvature comparison variant: " << report.wr1_variant
      << " (statement " << report.wr1_statement << ", proof "
      << report.wr1_proof << ")\n";
}

int cmd_list(const RunConfig& cfg, std::ostream& out) {
  const auto& entries = zoo_entries();
  if (!cfg.json_path.empty()) {
    json arr = json::array();
    for (const auto& entry : entries) {
      json e;
      e["id"] = entry.id;
      e["summary"] = entry.summary;
      e["params"] = json::object();
      for (const auto& [name, value] : entry.params) e["params"][name] = value;
      e["expected_verdict"] = entry.expected_verdict;
      arr.push_back(std::move(e));
    }
    emit_json(arr.dump(2), cfg.json_path, out);
    return 0;
  }
  for (const auto& entry : entries) {
    out << entry.id << "\n  " << entry.summary << "\n  expected verdict: "
        << entry.expected_verdict << "\n  parameters:";
    if (entry.params.empty()) out << " (none)";
    for (const auto& [name, value] : entry.params)
      out << " " << name << "=" << value;
    out << "\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  AlmostKahlerChart chart = resolve_chart(cfg);
  Sampler sampler(cfg.seed);
  ValidationReport validation =
      validate_chart(chart, sampler, cfg.nsamples, cfg.tol);

  out << std::setprecision(12);
  out << "structure checks: " << chart.label << " (" << cfg.nsamples
      << " samples, seed " << cfg.seed << ")\n";
  for (const auto& check : validation.checks)
    out << "  " << std::left << std::setw(34) << check.name << std::right
        << (check.floor_check ? "  margin   " : "  residual ") << std::setw(18)
        << check.value << "  " << (check.floor_check ? ">= " : "<= ")
        << check.threshold << "  " << (check.pass ? "PASS" : "FAIL") << "\n";

  json body;
  body["schema"] = "akgeo-verify/1";
  body["chart"] = chart.label;
  body["seed"] = cfg.seed;
  body["nsamples"] = cfg.nsamples;
  json checks = json::array();
  for (const auto& check : validation.checks) {
    json c;
    c["name"] = check.name;
    c["value"] = check.value;
    c["threshold"] = check.threshold;
    c["kind"] = check.floor_check ? "floor" : "ceiling";
    c["pass"] = check.pass;
    checks.push_back(std::move(c));
  }
  body["validation"] = std::move(checks);

  if (!validation.ok()) {
    out << "structure validation FAILED; identity suite skipped\n";
    body["identities"] = json::array();
    body["pass"] = false;
    if (!cfg.json_path.empty()) emit_json(body.dump(2), cfg.json_path, out);
    return 1;
  }

  IdentityReport suite = identity_suite(chart, cfg.nsamples, cfg.seed, cfg.tol);
  out << "identity suite: " << suite.rows.size() << " rows\n";
  print_identity_rows(suite, out);
  const bool pass = suite.all_pass();
  out << "result: " << (pass ? "PASS" : "FAIL") << "\n";

  body["identities"] = identity_rows_json(suite);
  body["wr1_residuals"] = {{"statement", suite.wr1_statement},
                           {"proof", suite.wr1_proof}};
  body["wr1_variant"] = suite.wr1_variant;
  body["pass"] = pass;
  if (!cfg.json_path.empty()) emit_json(body.dump(2), cfg.json_path, out);
  return pass ? 0 : 1;
}

int cmd_diagnose(const RunConfig& cfg, std::ostream& out) {
  AlmostKahlerChart chart = resolve_chart(cfg);
  DefectReport report =
      integrability_defects(chart, cfg.nsamples, cfg.seed, cfg.tol);

  out << std::setprecision(12);
  out << "integrability defects: " << chart.label << " (" << cfg.nsamples
      << " samples + domain center, seed " << cfg.seed << ")\n";
  for (const auto& [name, defect] : report.defects)
    out << "  " << std::left << std::setw(20) << name << std::right
        << std::setw(18) << defect.value << "  at " << fmt_point(defect.point)
        << "  " << defect.detail << "\n";
  out << "verdict: " << report.verdict << "\n";
  out << "curvature comparison variant: " << report.identities.wr1_variant
      << "\n";
  const auto& rows = report.identities.rows;
  out << "identity suite: " << (report.identities.all_pass() ? "all " : "")
      << rows.size() << " rows "
      << (report.identities.all_pass() ? "pass" : "checked, some FAIL")
      << " (max residual " << report.identities.max_residual() << ")\n";

  if (!cfg.json_path.empty())
    emit_json(report_to_json(report), cfg.json_path, out);
  return 0;
}

int cmd_frame(const RunConfig& cfg, std::ostream& out) {
  if (cfg.order < 3)
    throw std::invalid_argument("frame construction needs --order >= 3");
  AlmostKahlerChart chart = resolve_chart(cfg);
  std::vector<double> point = resolve_point(cfg.point_text, chart.domain);
  ChartJets cj(chart, point, cfg.order, cfg.tol);
  GnhFrame frame = construct_gnh_frame(cj, cfg.tol, true);
  GnhVerification ver = verify_gnh_properties(cj, frame);

  out << std::setprecision(12);
  out << "frame at " << fmt_point(point) << " on " << chart.label << " (order "
      << cfg.order << ")\n";
  out << "condition residuals:\n";
  const std::pair<const char*, double> residuals[] = {
      {"conjugate frame parallel", ver.conj_parallel},
      {"holomorphic derivative", ver.holo_derivative},
      {"gram value", ver.gram_value},
      {"gram first derivative", ver.gram_derivative},
      {"second mixed derivative", ver.second_mixed},
  };
  for (const auto& [name, value] : residuals)
    out << "  " << std::left << std::setw(28) << name << std::right
        << std::setw(18) << value << "\n";
  out << "frame components (order 0):\n";
  for (int i = 0; i < frame.n; ++i) {
    out << "  Z_" << (i + 1) << " = (";
    for (int a = 0; a < frame.dim; ++a)
      out << (a ? ", " : "") << fmt_complex(frame.W[i](a));
    out << ")\n";
  }

  if (!cfg.json_path.empty()) {
    json body;
    body["schema"] = "akgeo-frame/1";
    body["chart"] = chart.label;
    body["point"] = point;
    body["order"] = cfg.order;
    body["residuals"] = {{"conj_parallel", ver.conj_parallel},
                         {"holo_derivative", ver.holo_derivative},
                         {"gram_value", ver.gram_value},
                         {"gram_derivative", ver.gram_derivative},
                         {"second_mixed", ver.second_mixed}};
    json rows = json::array();
    for (int i = 0; i < frame.n; ++i) {
      json row = json::array();
      for (int a = 0; a < frame.dim; ++a)
        row.push_back({frame.W[i](a).real(), frame.W[i](a).imag()});
      rows.push_back(std::move(row));
    }
    body["frame"] = std::move(rows);
    emit_json(body.dump(2), cfg.json_path, out);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"chart-based diagnostics for almost Kahler structures"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> raw_params, raw_tols;

  auto add_common = [&](CLI::App* sub, bool with_point) {
    sub->add_option("--chart,chart", cfg.chart,
                    "catalog chart id, or path to a chart .json file");
    sub->add_option("--param", raw_params,
                    "chart parameter override name=value (repeatable)");
    sub->add_option("--samples", cfg.nsamples, "number of sample points")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "sample point seed")
        ->envname("AKGEO_SEED");
    sub->add_option("--order", cfg.order, "jet truncation order")
        ->check(CLI::Range(1, 8));
    sub->add_option("--json", cfg.json_path,
                    "write a JSON report to this path ('-' for stdout)");
    sub->add_option("--tol", raw_tols,
                    "tolerance override name=value (repeatable)");
    if (with_point)
      sub->add_option("--point", cfg.point_text,
                      "comma-separated coordinates (default: domain center)");
  };

  CLI::App* list = app.add_subcommand("list", "list the chart catalog");
  list->add_option("--json", cfg.json_path,
                   "write the catalog as JSON to this path ('-' for stdout)");
  CLI::App* verify = app.add_subcommand(
      "verify", "validate the structure, then run the identity suite");
  add_common(verify, false);
  CLI::App* diagnose = app.add_subcommand(
      "diagnose", "measure integrability defects and classify the chart");
  add_common(diagnose, false);
  CLI::App* frame = app.add_subcommand(
      "frame", "construct a normalized frame germ at a point");
  add_common(frame, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    for (const auto& text : raw_params) {
      auto [name, value] = parse_assignment(text, "--param");
      cfg.params[name] = value;
    }
    for (const auto& text : raw_tols) {
      auto [name, value] = parse_assignment(text, "--tol");
      if (!cfg.tol.set(name, value)) {
        std::string known;
        for (const auto& n : Tolerances::names()) known += " " + n;
        throw std::invalid_argument("--tol: unknown tolerance \"" + name +
                                    "\"; known:" + known);
      }
    }
    if (app.got_subcommand(list)) {
      cfg.command = "list";
      return cmd_list(cfg, out);
    }
    if (app.got_subcommand(verify)) {
      cfg.command = "verify";
      return cmd_verify(cfg, out);
    }
    if (app.got_subcommand(diagnose)) {
      cfg.command = "diagnose";
      return cmd_diagnose(cfg, out);
    }
    cfg.command = "frame";
    return cmd_frame(cfg, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConstructionError& e) {
    err << "construction failure: " << e.what() << "\n";
    return 3;
  } catch (const StructureError& e) {
    err << "structure failure: " << e.what() << "\n";
    return 3;
  } catch (const OrderError& e) {
    err << "construction failure: " << e.what() << "\n";
    return 3;
  } catch (const SingularJetError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace akgeo
