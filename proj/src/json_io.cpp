#include "ratl2/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ratl2/expr.hpp"

namespace ratl2 {

json complex_to_json(cplx z) { return json::array({std::real(z), std::imag(z)}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("complex value must be a 2-element array [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

namespace {

std::vector<cplx> complex_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw std::invalid_argument(field + ": array expected");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(complex_from_json(e));
  return out;
}

double number_field(const json& doc, const std::string& field) {
  if (!doc.contains(field) || !doc[field].is_number())
    throw std::invalid_argument(field + ": number required");
  return doc[field].get<double>();
}

}  // namespace

TargetFunction target_from_json(const json& doc, const Tolerances& tol) {
  if (!doc.is_object()) throw std::invalid_argument("target: object expected");

  std::optional<MeasureM> measure;
  if (doc.contains("density") && !doc["density"].is_null()) {
    double a = number_field(doc, "a");
    double b = number_field(doc, "b");
    if (!(a < b)) throw std::invalid_argument("target: a < b required");
    if (!(a > -1.0) || !(b < 1.0))
      throw std::invalid_argument("target: interval must lie inside (-1,1)");
    const json& dens = doc["density"];
    if (!dens.is_object() || !dens.contains("kind"))
      throw std::invalid_argument("target.density: object with a kind required");
    std::string kind = dens["kind"].get<std::string>();
    if (kind == "expr") {
      if (!dens.contains("expr") || !dens["expr"].is_string())
        throw std::invalid_argument("target.density.expr: string required");
      measure.emplace(a, b, compile_expr(dens["expr"].get<std::string>()));
    } else if (kind == "samples") {
      if (!dens.contains("values"))
        throw std::invalid_argument("target.density.values: required for kind samples");
      measure = MeasureM::from_samples(a, b, complex_list(dens["values"], "target.density.values"));
    } else {
      throw std::invalid_argument("target.density.kind: expected \"expr\" or \"samples\"");
    }
  }

  RationalPart rational;
  if (doc.contains("rational") && !doc["rational"].is_null()) {
    if (!doc["rational"].is_array())
      throw std::invalid_argument("target.rational: array expected");
    for (const json& pj : doc["rational"]) {
      PolePart part;
      if (!pj.is_object() || !pj.contains("pole"))
        throw std::invalid_argument("target.rational: entries need a pole");
      part.pole = complex_from_json(pj["pole"]);
      part.mult = pj.value("mult", 1);
      if (part.mult < 1) throw std::invalid_argument("target.rational.mult: at least 1");
      if (pj.contains("coeffs"))
        part.coeffs = complex_list(pj["coeffs"], "target.rational.coeffs");
      else
        part.coeffs = {cplx{1.0, 0.0}};
      if (static_cast<int>(part.coeffs.size()) != part.mult)
        throw std::invalid_argument("target.rational.coeffs: length must equal mult");
      rational.parts.push_back(std::move(part));
    }
  }

  if (!measure && rational.empty())
    throw std::invalid_argument("target: needs a density or a rational part");
  return TargetFunction(std::move(measure), std::move(rational), tol);
}

SignedMeasureSamples nu_from_json(const json& doc, double default_a, double default_b) {
  if (!doc.is_object() || !doc.contains("kind"))
    throw std::invalid_argument("nu: object with a kind required");
  std::string kind = doc["kind"].get<std::string>();
  double a = doc.contains("a") ? number_field(doc, "a") : default_a;
  double b = doc.contains("b") ? number_field(doc, "b") : default_b;
  if (kind == "two_omega") return SignedMeasureSamples::two_omega(a, b);
  if (kind == "samples") {
    if (!doc.contains("values") || !doc["values"].is_array())
      throw std::invalid_argument("nu.values: array required for kind samples");
    std::vector<double> values;
    for (const json& v : doc["values"]) values.push_back(v.get<double>());
    return SignedMeasureSamples::from_samples(a, b, std::move(values));
  }
  throw std::invalid_argument("nu.kind: expected \"two_omega\" or \"samples\"");
}

json record_to_json(const CriticalPointRecord& rec) {
  json j;
  j["degree"] = rec.degree;
  j["q_coeffs"] = json::array();
  for (cplx c : rec.q_coeffs) j["q_coeffs"].push_back(complex_to_json(c));
  j["L_coeffs"] = json::array();
  for (cplx c : rec.L_coeffs) j["L_coeffs"].push_back(complex_to_json(c));
  j["value"] = rec.value;
  j["grad_norm"] = rec.grad_norm;
  j["hessian_eigs"] = rec.hessian_eigs;
  j["morse_index"] = rec.morse_index;
  j["irreducible"] = rec.irreducible;
  j["poles"] = json::array();
  for (cplx p : rec.poles) j["poles"].push_back(complex_to_json(p));
  j["iterations"] = rec.iterations;
  j["flags"] = rec.flags;
  return j;
}

CriticalPointRecord record_from_json(const json& j) {
  CriticalPointRecord rec;
  rec.degree = j.at("degree").get<int>();
  for (const json& c : j.at("q_coeffs")) rec.q_coeffs.push_back(complex_from_json(c));
  for (const json& c : j.at("L_coeffs")) rec.L_coeffs.push_back(complex_from_json(c));
  rec.value = j.at("value").get<double>();
  rec.grad_norm = j.at("grad_norm").get<double>();
  rec.hessian_eigs = j.at("hessian_eigs").get<std::vector<double>>();
  rec.morse_index = j.at("morse_index").get<int>();
  rec.irreducible = j.at("irreducible").get<bool>();
  for (const json& p : j.at("poles")) rec.poles.push_back(complex_from_json(p));
  rec.iterations = j.at("iterations").get<int>();
  rec.flags = j.at("flags").get<std::vector<std::string>>();
  return rec;
}

json scheme_to_json(const InterpolationScheme& scheme) {
  json j;
  j["provenance"] = scheme.provenance;
  j["sets"] = json::array();
  for (const InterpolationSet& E : scheme.sets) {
    json s;
    s["points"] = json::array();
    for (cplx p : E.points) s["points"].push_back(complex_to_json(p));
    s["at_infinity"] = E.at_infinity;
    j["sets"].push_back(std::move(s));
  }
  return j;
}

InterpolationScheme scheme_from_json(const json& j) {
  InterpolationScheme scheme;
  scheme.provenance = j.value("provenance", std::string{});
  for (const json& s : j.at("sets")) {
    InterpolationSet E;
    if (s.contains("points"))
      E.points = complex_list(s["points"], "scheme.sets.points");
    E.at_infinity = s.value("at_infinity", 0);
    scheme.sets.push_back(std::move(E));
  }
  return scheme;
}

json criterion_to_json(const CriterionReport& rep) {
  return json{{"n", rep.n},
              {"min_ratio", rep.min_ratio},
              {"winding", rep.winding},
              {"passed", rep.passed},
              {"grid", rep.grid}};
}

json asymptotics_to_json(const AsymptoticsReport& rep) {
  json rows = json::array();
  for (const AsymptoticsRow& r : rep.rows)
    rows.push_back(json{{"n", r.n},
                        {"sup_error", r.sup_error},
                        {"predicted", r.predicted},
                        {"ratio_deviation", r.ratio_deviation}});
  return json{{"rows", rows}};
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config: object expected");
  ExperimentConfig cfg;
  if (!doc.contains("target"))
    throw std::invalid_argument("config.target: required");
  cfg.target_doc = doc["target"];
  target_from_json(cfg.target_doc);  // validate now, fail early

  if (!doc.contains("degrees") || !doc["degrees"].is_array() || doc["degrees"].size() != 2 ||
      !doc["degrees"][0].is_number_integer() || !doc["degrees"][1].is_number_integer())
    throw std::invalid_argument("config.degrees: two-element integer array [lo, hi] required");
  int lo = doc["degrees"][0].get<int>();
  int hi = doc["degrees"][1].get<int>();
  if (lo < 1 || hi < lo) throw std::invalid_argument("config.degrees: nonempty range with lo >= 1");
  if (hi > 64) throw std::invalid_argument("config.degrees: max degree 64");
  for (int n = lo; n <= hi; ++n) cfg.degrees.push_back(n);

  cfg.starts = doc.value("starts", 1);
  if (cfg.starts < 1) throw std::invalid_argument("config.starts: at least 1");
  cfg.seed = doc.value("seed", std::uint64_t{0});
  cfg.outputs = doc.value("outputs", std::string{"runs"});

  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) throw std::invalid_argument("config.tolerances: object expected");
    for (auto it = t.begin(); it != t.end(); ++it) {
      const std::string& key = it.key();
      if (key == "tau_zero") cfg.tol.tau_zero = it.value().get<double>();
      else if (key == "tau_margin") cfg.tol.tau_margin = it.value().get<double>();
      else if (key == "tau_series") cfg.tol.tau_series = it.value().get<double>();
      else if (key == "tau_gcd") cfg.tol.tau_gcd = it.value().get<double>();
      else if (key == "tol_crit") cfg.tol.tol_crit = it.value().get<double>();
      else if (key == "max_iterations") cfg.tol.max_iterations = it.value().get<int>();
      else if (key == "fixed_point_switch") cfg.tol.fixed_point_switch = it.value().get<double>();
      else throw std::invalid_argument("config.tolerances: unknown key " + key);
    }
  }
  return cfg;
}

std::string config_hash(const ExperimentConfig& cfg) {
  json semantic;
  semantic["target"] = cfg.target_doc;
  semantic["degrees"] = json::array({cfg.degrees.front(), cfg.degrees.back()});
  semantic["starts"] = cfg.starts;
  semantic["seed"] = cfg.seed;
  semantic["tolerances"] = json{{"tau_zero", cfg.tol.tau_zero},
                                {"tau_margin", cfg.tol.tau_margin},
                                {"tau_series", cfg.tol.tau_series},
                                {"tau_gcd", cfg.tol.tau_gcd},
                                {"tol_crit", cfg.tol.tol_crit},
                                {"max_iterations", cfg.tol.max_iterations},
                                {"fixed_point_switch", cfg.tol.fixed_point_switch}};
  std::string dump = semantic.dump();
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a 64
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::uint64_t start_seed(std::uint64_t seed, int degree, int start) {
  std::uint64_t s = seed;
  s += 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(degree + 1);
  split_mix(s);
  s += 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(start + 1);
  return split_mix(s);
}

void write_json_atomic(const std::string& path, const json& doc) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << doc.dump(2) << '\n';
  }
  fs::rename(tmp, target);
}

}  // namespace ratl2
