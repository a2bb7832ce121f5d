// Command-line front end: solve / verify / criterion / report over JSON
// experiment configs, with run records under outputs/<config-hash>.json.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "ratl2/json_io.hpp"

namespace {

using namespace ratl2;

constexpr const char* kVersion = "0.1.0";

int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("RATL2_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return static_cast<int>(hw);
}

// Index-parallel loop; the work must write only to its own slot.
void parallel_for(int count, const std::function<void(int)>& work) {
  int threads = std::min(thread_budget(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
    });
  for (std::thread& th : pool) th.join();
}

json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(std::string(what) + " not found: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string(what) + " " + path + ": " + e.what());
  }
  return doc;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Starting interval for zero seeds: the measure's support when present, else
// a band around the interior poles.
std::pair<double, double> seed_interval(const TargetFunction& F) {
  if (F.measure()) return {F.measure()->a(), F.measure()->b()};
  double lo = 0.5, hi = -0.5;
  for (const PolePart& p : F.rational().parts)
    if (std::abs(p.pole) < 1.0) {
      lo = std::min(lo, std::real(p.pole) - 0.1);
      hi = std::max(hi, std::real(p.pole) + 0.1);
    }
  if (!(lo < hi)) return {-0.5, 0.5};
  return {std::max(lo, -0.9), std::min(hi, 0.9)};
}

bool converged(const CriticalPointRecord& rec) {
  for (const std::string& f : rec.flags)
    if (f == "nonconverged") return false;
  return true;
}

// max distance between the sorted pole lists, the dedup metric
double pole_distance(const CriticalPointRecord& x, const CriticalPointRecord& y) {
  if (x.poles.size() != y.poles.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (size_t i = 0; i < x.poles.size(); ++i)
    d = std::max(d, std::abs(x.poles[i] - y.poles[i]));
  return d;
}

struct DegreeOutcome {
  int degree = 0;
  std::vector<CriticalPointRecord> records;       // distinct representatives
  std::vector<CriticalPointRecord> nonconverged;  // failed starts, kept for inspection
  std::vector<int> start_map;                     // start -> representative, -1 if failed
  std::vector<std::string> start_errors;          // thrown messages, "" otherwise
};

int cmd_solve(const std::string& cfg_path) {
  ExperimentConfig cfg = config_from_json(read_json_file(cfg_path, "config"));
  TargetFunction F = target_from_json(cfg.target_doc, cfg.tol);
  auto [sa, sb] = seed_interval(F);

  auto t0 = std::chrono::steady_clock::now();
  int n_deg = static_cast<int>(cfg.degrees.size());
  int jobs = n_deg * cfg.starts;
  std::vector<std::optional<CriticalPointRecord>> slot(static_cast<size_t>(jobs));
  std::vector<std::string> errors(static_cast<size_t>(jobs));
  parallel_for(jobs, [&](int i) {
    int degree = cfg.degrees[static_cast<size_t>(i / cfg.starts)];
    int start = i % cfg.starts;
    std::uint64_t s = start_seed(cfg.seed, degree, start);
    try {
      std::vector<cplx> zeros = starting_zeros(sa, sb, degree, s);
      slot[static_cast<size_t>(i)] = solve_critical(F, degree, zeros, cfg.tol);
    } catch (const std::exception& e) {
      errors[static_cast<size_t>(i)] = e.what();
    }
  });

  bool any_nonconverged = false;
  json degrees_json = json::array();
  for (int d = 0; d < n_deg; ++d) {
    DegreeOutcome out;
    out.degree = cfg.degrees[static_cast<size_t>(d)];
    for (int start = 0; start < cfg.starts; ++start) {
      int i = d * cfg.starts + start;
      const std::optional<CriticalPointRecord>& rec = slot[static_cast<size_t>(i)];
      out.start_errors.push_back(errors[static_cast<size_t>(i)]);
      if (!rec || !converged(*rec)) {
        any_nonconverged = true;
        out.start_map.push_back(-1);
        if (rec) out.nonconverged.push_back(*rec);
        continue;
      }
      int found = -1;
      for (size_t r = 0; r < out.records.size(); ++r)
        if (pole_distance(out.records[r], *rec) < 1e-6) {
          found = static_cast<int>(r);
          break;
        }
      if (found < 0) {
        out.records.push_back(*rec);
        found = static_cast<int>(out.records.size()) - 1;
      } else if (rec->grad_norm < out.records[static_cast<size_t>(found)].grad_norm) {
        out.records[static_cast<size_t>(found)] = *rec;  // keep the sharpest duplicate
      }
      out.start_map.push_back(found);
    }
    json dj;
    dj["degree"] = out.degree;
    dj["starts"] = cfg.starts;
    dj["start_map"] = out.start_map;
    dj["start_errors"] = out.start_errors;
    dj["records"] = json::array();
    for (const CriticalPointRecord& r : out.records) dj["records"].push_back(record_to_json(r));
    dj["nonconverged_records"] = json::array();
    for (const CriticalPointRecord& r : out.nonconverged)
      dj["nonconverged_records"].push_back(record_to_json(r));
    degrees_json.push_back(std::move(dj));
  }
  double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json run;
  run["tool_version"] = kVersion;
  run["config_hash"] = config_hash(cfg);
  run["config"] = json{{"target", cfg.target_doc},
                       {"degrees", json::array({cfg.degrees.front(), cfg.degrees.back()})},
                       {"starts", cfg.starts},
                       {"seed", cfg.seed},
                       {"outputs", cfg.outputs}};
  run["degrees"] = std::move(degrees_json);
  run["wall_time_seconds"] = wall;

  std::string path = cfg.outputs + "/" + config_hash(cfg) + ".json";
  write_json_atomic(path, run);
  std::cout << path << "\n";
  return any_nonconverged ? 2 : 0;
}

// Best (smallest-value) representative per degree, ascending in degree.
std::vector<CriticalPointRecord> best_per_degree(const json& run) {
  std::vector<CriticalPointRecord> best;
  for (const json& dj : run.at("degrees")) {
    const json& recs = dj.at("records");
    if (recs.empty()) continue;
    CriticalPointRecord pick = record_from_json(recs[0]);
    for (size_t i = 1; i < recs.size(); ++i) {
      CriticalPointRecord r = record_from_json(recs[i]);
      if (r.value < pick.value) pick = r;
    }
    best.push_back(std::move(pick));
  }
  std::sort(best.begin(), best.end(),
            [](const CriticalPointRecord& x, const CriticalPointRecord& y) {
              return x.degree < y.degree;
            });
  return best;
}

int cmd_verify(const std::string& cfg_path, const std::string& run_path, double radius) {
  ExperimentConfig cfg = config_from_json(read_json_file(cfg_path, "config"));
  json run = read_json_file(run_path, "run file");
  TargetFunction F = target_from_json(cfg.target_doc, cfg.tol);
  if (!F.measure())
    throw std::invalid_argument("verify: target has no measure part, nothing to predict");

  std::vector<CriticalPointRecord> best = best_per_degree(run);
  if (best.size() < 2) throw std::invalid_argument("verify: need >= 2 degrees in the run file");

  AsymptoticsReport rep =
      verify_strong_asymptotics(F, best, circle_contour(radius), cfg.tol);
  std::ostringstream csv;
  csv << "n,sup_error,predicted,ratio_deviation\n";
  for (const AsymptoticsRow& r : rep.rows)
    csv << r.n << "," << fmt(r.sup_error) << "," << fmt(r.predicted) << ","
        << fmt(r.ratio_deviation) << "\n";
  write_text_atomic(cfg.outputs + "/asymptotics.csv", csv.str());
  write_json_atomic(cfg.outputs + "/asymptotics.json", asymptotics_to_json(rep));

  if (best.size() >= 3) {
    PoleDiagnostics diag = pole_diagnostics(best, F.measure()->a(), F.measure()->b());
    std::ostringstream pcsv;
    pcsv << "n,sum_abs_im,max_abs_im,ks_distance\n";
    for (const PoleDiagnosticsRow& r : diag.rows)
      pcsv << r.n << "," << fmt(r.sum_abs_im) << "," << fmt(r.max_abs_im) << ","
           << fmt(r.ks_distance) << "\n";
    write_text_atomic(cfg.outputs + "/poles.csv", pcsv.str());
  } else {
    std::cerr << "verify: pole diagnostics need >= 3 degrees, poles.csv skipped\n";
  }
  std::cout << cfg.outputs << "/asymptotics.csv\n";
  return 0;
}

int cmd_criterion(const std::string& cfg_path, const std::string& run_path,
                  const std::string& nu_path, bool self_test) {
  ExperimentConfig cfg = config_from_json(read_json_file(cfg_path, "config"));
  json run = read_json_file(run_path, "run file");
  TargetFunction F = target_from_json(cfg.target_doc, cfg.tol);

  double na = -0.5, nb = 0.5;
  if (F.measure()) {
    na = F.measure()->a();
    nb = F.measure()->b();
  }
  SignedMeasureSamples nu = nu_path.empty()
                                ? SignedMeasureSamples::two_omega(na, nb)
                                : nu_from_json(read_json_file(nu_path, "nu file"), na, nb);

  std::vector<cplx> rational_poles;
  for (const PolePart& p : F.rational().parts)
    for (int l = 0; l < p.mult; ++l) rational_poles.push_back(p.pole);

  std::ostringstream csv;
  csv << "n,min_ratio,winding,passed\n";
  json rows = json::array();
  for (const CriticalPointRecord& rec : best_per_degree(run)) {
    if (!rec.irreducible) {
      csv << "# degree " << rec.degree << ": reducible record skipped\n";
      continue;
    }
    try {
      std::function<cplx(cplx)> Pi;
      if (self_test) {
        MonicPoly q = rec.denominator();
        ComplexPoly L = rec.numerator();
        Pi = [q, L](cplx z) { return L.eval(z) / q.eval(z); };
      } else {
        InterpolationSet E = build_comparison_scheme(nu, rec, rational_poles, cfg.tol);
        PadeApproximant P = build_pade(F, E, cfg.tol);
        Pi = [P](cplx z) { return P.eval(z); };
      }
      CriterionReport rep = check_comparison_criterion(F, rec, Pi, 4096, cfg.tol);
      csv << rep.n << "," << fmt(rep.min_ratio) << "," << rep.winding << ","
          << (rep.passed ? "true" : "false") << "\n";
      rows.push_back(criterion_to_json(rep));
    } catch (const std::exception& e) {
      csv << "# degree " << rec.degree << ": " << e.what() << "\n";
    }
  }
  write_text_atomic(cfg.outputs + "/criterion.csv", csv.str());
  write_json_atomic(cfg.outputs + "/criterion.json", json{{"rows", rows}});
  std::cout << cfg.outputs << "/criterion.csv\n";
  return 0;
}

int cmd_report(const std::string& run_path, const std::string& out_dir) {
  json run = read_json_file(run_path, "run file");

  std::ostringstream csv;
  csv << "degree,distinct,converged_starts,failed_starts,best_value,best_grad_norm,"
         "best_morse_index,best_irreducible\n";
  for (const json& dj : run.at("degrees")) {
    int degree = dj.at("degree").get<int>();
    const json& recs = dj.at("records");
    int conv = 0;
    for (const json& m : dj.at("start_map"))
      if (m.get<int>() >= 0) ++conv;
    int failed = dj.at("starts").get<int>() - conv;
    if (recs.empty()) {
      csv << degree << "," << 0 << "," << conv << "," << failed << ",,,,\n";
      continue;
    }
    CriticalPointRecord pick = record_from_json(recs[0]);
    for (size_t i = 1; i < recs.size(); ++i) {
      CriticalPointRecord r = record_from_json(recs[i]);
      if (r.value < pick.value) pick = r;
    }
    csv << degree << "," << recs.size() << "," << conv << "," << failed << ","
        << fmt(pick.value) << "," << fmt(pick.grad_norm) << "," << pick.morse_index << ","
        << (pick.irreducible ? "true" : "false") << "\n";
  }
  write_text_atomic(out_dir + "/summary.csv", csv.str());

  std::vector<CriticalPointRecord> best = best_per_degree(run);
  const json& cfg = run.at("config");
  bool has_measure = cfg.contains("target") && cfg["target"].contains("density") &&
                     !cfg["target"]["density"].is_null();
  if (best.size() >= 3 && has_measure) {
    double a = cfg["target"]["a"].get<double>();
    double b = cfg["target"]["b"].get<double>();
    PoleDiagnostics diag = pole_diagnostics(best, a, b);
    std::ostringstream pcsv;
    pcsv << "n,sum_abs_im,max_abs_im,ks_distance\n";
    for (const PoleDiagnosticsRow& r : diag.rows)
      pcsv << r.n << "," << fmt(r.sum_abs_im) << "," << fmt(r.max_abs_im) << ","
           << fmt(r.ks_distance) << "\n";
    write_text_atomic(out_dir + "/poles.csv", pcsv.str());
  }
  std::cout << out_dir << "/summary.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rational approximation workbench"};
  app.set_version_flag("--version", std::string("ratl2 ") + kVersion);
  app.require_subcommand(1);

  std::string cfg_path, run_path, nu_path, out_dir = "out";
  double radius = 2.0;
  bool self_test = false;

  CLI::App* solve = app.add_subcommand("solve", "locate critical points over a degree range");
  solve->add_option("-c,--config", cfg_path, "experiment config JSON")->required();

  CLI::App* verify = app.add_subcommand("verify", "error asymptotics and pole diagnostics");
  verify->add_option("-c,--config", cfg_path, "experiment config JSON")->required();
  verify->add_option("-r,--run", run_path, "run record JSON")->required();
  verify->add_option("--radius", radius, "test contour radius (default 2)");

  CLI::App* criterion = app.add_subcommand("criterion", "comparison test per degree");
  criterion->add_option("-c,--config", cfg_path, "experiment config JSON")->required();
  criterion->add_option("-r,--run", run_path, "run record JSON")->required();
  criterion->add_option("--nu", nu_path, "mass source JSON for the scheme construction");
  criterion->add_flag("--self", self_test, "debug: compare the record against itself");

  CLI::App* report = app.add_subcommand("report", "plot-ready summaries from a run record");
  report->add_option("-r,--run", run_path, "run record JSON")->required();
  report->add_option("-o,--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(cfg_path);
    if (verify->parsed()) return cmd_verify(cfg_path, run_path, radius);
    if (criterion->parsed()) return cmd_criterion(cfg_path, run_path, nu_path, self_test);
    if (report->parsed()) return cmd_report(run_path, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
