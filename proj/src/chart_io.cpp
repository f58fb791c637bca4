#include "akgeo/chart_io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace akgeo {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("chart description: " + msg);
}

const json& need(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing key \"") + key + "\"");
  return *it;
}

int need_int(const json& obj, const char* key) {
  const json& v = need(obj, key);
  if (!v.is_number_integer())
    fail(std::string("key \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<double> need_number_array(const json& obj, const char* key,
                                      int size) {
  const json& v = need(obj, key);
  if (!v.is_array() || int(v.size()) != size)
    fail(std::string("key \"") + key + "\" must be an array of " +
         std::to_string(size) + " numbers");
  std::vector<double> out;
  out.reserve(size);
  for (const auto& e : v) {
    if (!e.is_number())
      fail(std::string("key \"") + key + "\" must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

PolyField parse_poly(const json& entry, int dim, const std::string& where) {
  const json& terms = need(entry, "terms");
  if (!terms.is_array()) fail(where + ": \"terms\" must be an array");
  PolyField pf;
  pf.nvars = dim;
  for (const auto& t : terms) {
    if (!t.is_object()) fail(where + ": each term must be an object");
    PolyField::Term term;
    const json& exps = need(t, "exps");
    if (!exps.is_array() || int(exps.size()) != dim)
      fail(where + ": \"exps\" must be an array of " + std::to_string(dim) +
           " exponents");
    for (const auto& e : exps) {
      if (!e.is_number_integer() || e.get<int>() < 0)
        fail(where + ": exponents must be non-negative integers");
      term.exps.push_back(e.get<int>());
    }
    const json& coeff = need(t, "coeff");
    if (!coeff.is_number()) fail(where + ": \"coeff\" must be a number");
    term.coeff = coeff.get<double>();
    if (!std::isfinite(term.coeff))
      fail(where + ": coefficients must be finite");
    pf.terms.push_back(std::move(term));
  }
  return pf;
}

}  // namespace

AlmostKahlerChart load_chart_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("not valid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) fail("top level must be an object");

  const json& schema = need(doc, "schema");
  if (!schema.is_string() || schema.get<std::string>() != kChartFileSchema)
    fail(std::string("\"schema\" must be \"") + kChartFileSchema + "\"");

  AlmostKahlerChart chart;

  const json& label = need(doc, "label");
  if (!label.is_string() || label.get<std::string>().empty())
    fail("\"label\" must be a non-empty string");
  chart.label = label.get<std::string>();

  chart.n = need_int(doc, "n");
  if (chart.n < 1 || chart.n > 4)
    fail("\"n\" must lie in [1, 4]");
  const int d = chart.dim();

  const json& domain = need(doc, "domain");
  if (!domain.is_object()) fail("\"domain\" must be an object");
  chart.domain.lo = need_number_array(domain, "lo", d);
  chart.domain.hi = need_number_array(domain, "hi", d);
  for (int v = 0; v < d; ++v)
    if (!(chart.domain.lo[v] < chart.domain.hi[v]))
      fail("domain must satisfy lo < hi in every coordinate");

  chart.kappa_upper.assign(std::size_t(d) * (d - 1) / 2, const_field(0.0));
  chart.jmat.assign(std::size_t(d) * d, const_field(0.0));

  if (auto it = doc.find("kappa"); it != doc.end()) {
    if (!it->is_array()) fail("\"kappa\" must be an array");
    std::set<std::pair<int, int>> seen;
    for (const auto& entry : *it) {
      if (!entry.is_object()) fail("kappa entries must be objects");
      const int a = need_int(entry, "a");
      const int b = need_int(entry, "b");
      if (a < 0 || b >= d || a >= b)
        fail("kappa entries need 0 <= a < b < " + std::to_string(d));
      if (!seen.insert({a, b}).second)
        fail("duplicate kappa entry (" + std::to_string(a) + ", " +
             std::to_string(b) + ")");
      std::ostringstream where;
      where << "kappa[" << a << "][" << b << "]";
      chart.kappa_upper[chart.pair_index(a, b)] =
          to_field(parse_poly(entry, d, where.str()));
    }
  }

  if (auto it = doc.find("J"); it != doc.end()) {
    if (!it->is_array()) fail("\"J\" must be an array");
    std::set<std::pair<int, int>> seen;
    for (const auto& entry : *it) {
      if (!entry.is_object()) fail("J entries must be objects");
      const int a = need_int(entry, "a");
      const int b = need_int(entry, "b");
      if (a < 0 || a >= d || b < 0 || b >= d)
        fail("J entries need indices in [0, " + std::to_string(d) + ")");
      if (!seen.insert({a, b}).second)
        fail("duplicate J entry (" + std::to_string(a) + ", " +
             std::to_string(b) + ")");
      std::ostringstream where;
      where << "J[" << a << "][" << b << "]";
      chart.jmat[a * d + b] = to_field(parse_poly(entry, d, where.str()));
    }
  }

  return chart;
}

AlmostKahlerChart load_chart_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read chart file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_chart_json(buf.str());
}

}  // namespace akgeo
