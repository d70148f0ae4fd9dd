#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "fplap/cli/config.hpp"
#include "fplap/core/csv.hpp"
#include "fplap/op/evaluator.hpp"
#include "fplap/solve/eigenpair.hpp"
#include "fplap/solve/sliding.hpp"
#include "fplap/solve/steady.hpp"
#include "fplap/verify/run.hpp"

namespace fplap {

namespace detail {

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw invalid_argument_error("cannot open for writing: " + path.string());
  os << text;
}

inline json run_header(const RunConfig& cfg, const char* command) {
  json j;
  j["command"] = command;
  j["seed"] = cfg.seed;
  j["config_hash"] = cfg.config_hash;
  j["threads"] = cfg.threads;
  return j;
}

}  // namespace detail

/// Executes one command, writing every artifact under cfg.out_dir.
/// Exit code contract: 0 = success and all non-vacuous assertions pass,
/// 1 = an assertion failed, 2 = config or runtime error (thrown; the caller
/// turns exceptions into exit 2 plus a diagnostic record).
inline int dispatch(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  fs::path out(cfg.out_dir);
  fs::create_directories(out);

  // Referenced files must exist before any work starts.
  for (const std::string& input : {cfg.eval_input, cfg.slide_input}) {
    if (!input.empty() && !fs::exists(input))
      throw invalid_argument_error("referenced file does not exist: " + input);
  }

  json manifest;
  std::vector<std::string> artifacts;

  switch (cfg.command) {
    case RunConfig::Command::eval: {
      manifest = detail::run_header(cfg, "eval");
      Field u = cfg.eval_input.empty()
                    ? cfg.build_init(cfg.grid, cfg.build_rule(), cfg.build_domain())
                    : read_field_csv(cfg.eval_input);
      Evaluator ev(u.grid(), cfg.params, cfg.quad);
      DomainSpec region = cfg.build_domain();
      bool everywhere = cfg.domain_kind == "all";
      Field lu = ev.eval_field(u, everywhere ? nullptr : &region, cfg.threads);
      write_field_csv((out / "field_eval.csv").string(), lu);
      artifacts.push_back("field_eval.csv");
      break;
    }
    case RunConfig::Command::solve: {
      manifest = detail::run_header(cfg, "solve");
      ProblemSpec problem = cfg.build_problem();
      SolveConfig sc = cfg.solve;
      sc.threads = cfg.threads;
      SolveResult res = solve_steady(problem, sc);
      write_field_csv((out / "field_final.csv").string(), res.u);
      write_pairs_csv((out / "residuals.csv").string(), "iteration", "residual",
                      res.residual_history);
      artifacts.push_back("field_final.csv");
      artifacts.push_back("residuals.csv");

      json rep = detail::run_header(cfg, "solve");
      rep["iterations"] = res.iterations;
      rep["final_residual"] = res.final_residual;
      rep["dt_used"] = res.dt_used;
      json trace = json::array();
      for (auto [it, dt] : res.dt_trace) {
        json t;
        t["iteration"] = it;
        t["dt"] = dt;
        trace.push_back(t);
      }
      rep["dt_trace"] = trace;
      rep["field"] = "field_final.csv";
      rep["residuals"] = "residuals.csv";
      json inv;
      inv["min_interior"] = res.min_interior;
      inv["max_interior"] = res.max_interior;
      inv["strictly_positive"] = res.min_interior > 1e-12;
      inv["strictly_below_mu"] = res.max_interior < problem.nl.mu - 1e-12;
      inv["residual_tail_monotone"] = res.residual_tail_monotone;
      rep["invariants"] = inv;
      detail::write_text(out / "report.json", rep.dump(2) + "\n");
      artifacts.push_back("report.json");
      break;
    }
    case RunConfig::Command::eigen: {
      manifest = detail::run_header(cfg, "eigen");
      if (!cfg.has_grid) throw invalid_argument_error("eigen needs a [grid] section");
      SolveConfig sc = cfg.solve;
      sc.threads = cfg.threads;
      EigenResult res = eigen_principal(cfg.params, cfg.grid, sc, cfg.eigen_radius, cfg.quad);
      write_field_csv((out / "field_eigen.csv").string(), res.eigenfield);
      artifacts.push_back("field_eigen.csv");
      json rep = detail::run_header(cfg, "eigen");
      rep["lambda1"] = res.lambda1;
      rep["iterations"] = res.iterations;
      rep["residual"] = res.residual;
      rep["radius"] = cfg.eigen_radius;
      rep["field"] = "field_eigen.csv";
      detail::write_text(out / "report.json", rep.dump(2) + "\n");
      artifacts.push_back("report.json");
      break;
    }
    case RunConfig::Command::slide: {
      manifest = detail::run_header(cfg, "slide");
      if (cfg.slide_input.empty())
        throw invalid_argument_error("slide needs [slide] input = <field csv>");
      Field u = read_field_csv(cfg.slide_input);
      Point dir = cfg.slide_direction;
      if (dir.empty()) {
        dir.assign(static_cast<std::size_t>(u.grid().dim), 0.0);
        dir.back() = 1.0;
      }
      double tau = cfg.slide_tau > 0.0 ? cfg.slide_tau : u.grid().h;
      SlideResult sr = slide_compare(u, tau, dir);
      write_field_csv((out / "field_wtau.csv").string(), sr.w);
      artifacts.push_back("field_wtau.csv");
      json rep = detail::run_header(cfg, "slide");
      rep["tau"] = tau;
      rep["sup_w_tau"] = sr.sup;
      rep["arg_sup_node"] = sr.arg_node;
      try {
        rep["tau_zero"] = tau_zero_estimate(u, dir, cfg.slide_tau_max, cfg.slide_tol);
      } catch (const not_slidable_error& e) {
        rep["tau_zero"] = "not slidable up to tau_max";
      }
      rep["field"] = "field_wtau.csv";
      detail::write_text(out / "report.json", rep.dump(2) + "\n");
      artifacts.push_back("report.json");
      break;
    }
    case RunConfig::Command::verify: {
      manifest = detail::run_header(cfg, "verify");
      VerifyConfig vc = cfg.build_verify();
      vc.artifact_dir = out.string();
      AggregateReport agg = run_all(vc);
      detail::write_text(out / "report.json", agg.to_json().dump(2) + "\n");
      artifacts.push_back("report.json");
      for (const auto& s : agg.suites) {
        std::printf("[%s] %s\n", s.suite.c_str(),
                    s.vacuous() ? "VACUOUS" : (s.passed() ? "PASS" : "FAIL"));
      }
      manifest["pass"] = agg.all_passed();
      manifest["artifacts"] = artifacts;
      detail::write_text(out / "run_manifest.json", manifest.dump(2) + "\n");
      return agg.all_passed() ? 0 : 1;
    }
  }

  manifest["artifacts"] = artifacts;
  detail::write_text(out / "run_manifest.json", manifest.dump(2) + "\n");
  return 0;
}

}  // namespace fplap
