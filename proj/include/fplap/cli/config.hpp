#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fplap/common/errors.hpp"
#include "fplap/common/hash.hpp"
#include "fplap/core/csv.hpp"
#include "fplap/core/domain.hpp"
#include "fplap/core/field.hpp"
#include "fplap/core/nonlinearity.hpp"
#include "fplap/core/params.hpp"
#include "fplap/op/quadrature.hpp"
#include "fplap/solve/steady.hpp"
#include "fplap/verify/run.hpp"

namespace fplap {

/// Sectioned key = value config.  Sections: [operator] [grid] [domain]
/// [exterior] [nonlinearity] [solver] [quadrature] [init] [eval] [slide]
/// [eigen] [verify] [run].  '#' and ';' start comments.  Unknown sections or
/// keys are errors, not warnings; values are validated after parsing.
struct RunConfig {
  enum class Command { eval, solve, eigen, slide, verify };
  Command command = Command::verify;

  std::string raw_text;
  std::string config_hash;

  // [run]
  int threads = 1;
  std::uint64_t seed = 42;
  std::string out_dir = "out";

  // [operator]
  OperatorParams params;

  // [grid]
  Grid grid;
  bool has_grid = false;

  // [domain]
  std::string domain_kind = "all";
  int domain_axis = 0;
  double domain_level = 0.0;
  Point domain_center;
  double domain_radius = 1.0;
  double domain_height = 1.0;

  // [exterior]
  std::string exterior_kind = "zero";
  double exterior_value = 0.0;
  int exterior_axis = 0;
  double exterior_threshold = 0.0;
  double exterior_below = 0.0;
  double exterior_above = 0.0;

  // [nonlinearity]
  std::string nl_name = "allen_cahn";

  // [solver]
  SolveConfig solve;

  // [quadrature]
  QuadratureConfig quad;

  // [init]
  std::string init_kind = "zero";
  double init_value = 0.0;

  // [eval] / [slide]
  std::string eval_input;
  std::string slide_input;
  double slide_tau = 0.0;
  Point slide_direction;
  double slide_tau_max = 1.0;
  double slide_tol = 1e-8;

  // [eigen]
  double eigen_radius = 1.0;

  // [verify]
  std::vector<std::string> verify_suites;
  double verify_r0 = 10.0;
  double verify_eps1 = 0.9;
  std::vector<double> verify_eps_levels = {0.05, 0.02, 0.01};
  int density_samples = 10000;
  int g_pairs = 100000;

  DomainSpec build_domain() const {
    if (domain_kind == "all") return DomainSpec::everything();
    if (domain_kind == "half_space") return DomainSpec::half_space(domain_axis, domain_level);
    if (domain_kind == "ball") {
      Point c = domain_center;
      if (c.empty()) c.assign(static_cast<std::size_t>(params.n), 0.0);
      return DomainSpec::ball(c, domain_radius);
    }
    if (domain_kind == "strip") return DomainSpec::strip(domain_height);
    if (domain_kind == "perforated_slabs") return DomainSpec::perforated_slabs();
    if (domain_kind == "perforated_shells") return DomainSpec::perforated_shells();
    throw invalid_argument_error("unknown domain kind: " + domain_kind);
  }

  ExteriorRule build_rule() const {
    if (exterior_kind == "zero") return ExteriorRule::zero();
    if (exterior_kind == "constant") return ExteriorRule::constant(exterior_value);
    if (exterior_kind == "axis_step")
      return ExteriorRule::axis_step(exterior_axis, exterior_threshold, exterior_below,
                                     exterior_above);
    if (exterior_kind == "periodic")
      return ExteriorRule::periodic_tangential(exterior_below, exterior_above);
    throw invalid_argument_error("unknown exterior kind: " + exterior_kind);
  }

  Nonlinearity build_nonlinearity() const {
    if (nl_name == "allen_cahn") return make_allen_cahn();
    if (nl_name == "fisher_kpp") return make_fisher_kpp();
    throw invalid_argument_error("unknown nonlinearity: " + nl_name);
  }

  Field build_init(const Grid& g, const ExteriorRule& rule, const DomainSpec& omega) const {
    Field init(g, rule, 0.0);
    if (!rule.is_periodic()) {
      for (std::size_t i = 0; i < init.size(); ++i) {
        Point x = g.node(i);
        if (!omega.contains(x)) init[i] = rule.value(x, g);
      }
    }
    if (init_kind == "zero") {
      for (std::size_t i = 0; i < init.size(); ++i) {
        if (omega.contains(g.node(i))) init[i] = 0.0;
      }
    } else if (init_kind == "constant") {
      for (std::size_t i = 0; i < init.size(); ++i) {
        if (omega.contains(g.node(i))) init[i] = init_value;
      }
    } else if (init_kind == "ramp") {
      int last = g.dim - 1;
      double lo = g.box_lo(last), hi = g.box_hi(last);
      double mu = build_nonlinearity().mu;
      for (std::size_t i = 0; i < init.size(); ++i) {
        Point x = g.node(i);
        if (omega.contains(x)) {
          double t = (x[static_cast<std::size_t>(last)] - lo) / (hi - lo);
          init[i] = std::clamp(t, 0.0, 1.0) * (mu - 1e-9);
        }
      }
    } else {
      throw invalid_argument_error("unknown init kind: " + init_kind);
    }
    return init;
  }

  ProblemSpec build_problem() const {
    if (!has_grid) throw invalid_argument_error("this command needs a [grid] section");
    DomainSpec omega = build_domain();
    ExteriorRule rule = build_rule();
    return ProblemSpec{params, grid,  omega, build_nonlinearity(),
                       rule,   build_init(grid, rule, omega), quad};
  }

  VerifyConfig build_verify() const {
    VerifyConfig vc = default_verify_config();
    if (has_grid) {
      vc.problem = build_problem();
    }
    if (!verify_suites.empty()) vc.suites = verify_suites;
    vc.solve = solve;
    vc.solve.threads = threads;
    vc.seed = seed;
    vc.config_hash = config_hash;
    vc.r0 = verify_r0;
    vc.eps1 = verify_eps1;
    vc.eps_levels = verify_eps_levels;
    vc.density_samples = density_samples;
    vc.g_pairs = g_pairs;
    return vc;
  }
};

namespace detail {

struct ConfigCursor {
  int line;
  int column;
};

inline std::vector<double> parse_double_list(const std::string& value, const ConfigCursor& at) {
  std::vector<double> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    bool ok = false;
    double v = parse_double(cur, &ok);
    if (!ok) throw config_error(at.line, at.column, "expected a number, got '" + cur + "'");
    out.push_back(v);
    cur.clear();
  };
  for (char c : value) {
    if (c == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  flush();
  if (out.empty()) throw config_error(at.line, at.column, "expected at least one number");
  return out;
}

inline std::vector<std::string> parse_name_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : value) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur), cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.raw_text = text;
  cfg.config_hash = fnv1a64_hex(text);

  static const std::map<std::string, std::set<std::string>> schema = {
      {"operator", {"n", "s", "p", "c_norm"}},
      {"grid", {"h", "origin", "counts", "r_trunc"}},
      {"domain", {"kind", "axis", "level", "center", "radius", "height"}},
      {"exterior", {"kind", "value", "axis", "threshold", "below", "above"}},
      {"nonlinearity", {"name"}},
      {"solver", {"dt", "tol", "max_iters", "damping"}},
      {"quadrature", {"delta_split", "tail_radius", "cell_rule"}},
      {"init", {"kind", "value"}},
      {"eval", {"input"}},
      {"slide", {"input", "tau", "direction", "tau_max", "tol"}},
      {"eigen", {"radius"}},
      {"verify", {"suites", "r0", "eps1", "eps_levels", "density_samples", "g_pairs"}},
      {"run", {"threads", "seed", "out"}},
  };

  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
      if (end == text.size()) break;
      continue;
    }
    int col = static_cast<int>(b) + 1;
    std::size_t e = line.find_last_not_of(" \t\r");
    std::string body = line.substr(b, e - b + 1);

    if (body.front() == '[') {
      if (body.back() != ']')
        throw config_error(line_no, col, "unterminated section header '" + body + "'");
      section = body.substr(1, body.size() - 2);
      if (!schema.count(section))
        throw config_error(line_no, col, "unknown section '" + section + "'");
      if (end == text.size()) break;
      continue;
    }

    std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw config_error(line_no, col, "expected 'key = value', got '" + body + "'");
    std::string key = body.substr(0, eq);
    std::string value = body.substr(eq + 1);
    auto trim = [](std::string& s) {
      std::size_t bb = s.find_first_not_of(" \t");
      std::size_t ee = s.find_last_not_of(" \t");
      s = bb == std::string::npos ? std::string() : s.substr(bb, ee - bb + 1);
    };
    trim(key);
    trim(value);
    if (section.empty())
      throw config_error(line_no, col, "key '" + key + "' appears before any section");
    if (!schema.at(section).count(key))
      throw config_error(line_no, col, "unknown key '" + key + "' in section [" + section + "]");
    if (value.empty()) throw config_error(line_no, col, "key '" + key + "' has no value");

    detail::ConfigCursor at{line_no, col};
    auto num = [&]() {
      bool ok = false;
      double v = parse_double(value, &ok);
      if (!ok) throw config_error(at.line, at.column, "expected a number, got '" + value + "'");
      return v;
    };
    auto integer = [&]() { return static_cast<int>(num()); };

    if (section == "operator") {
      if (key == "n") cfg.params.n = integer();
      else if (key == "s") cfg.params.s = num();
      else if (key == "p") cfg.params.p = num();
      else cfg.params.c_norm = num();
    } else if (section == "grid") {
      cfg.has_grid = true;
      if (key == "h") cfg.grid.h = num();
      else if (key == "r_trunc") cfg.grid.r_trunc = num();
      else if (key == "origin") {
        auto v = detail::parse_double_list(value, at);
        for (std::size_t a = 0; a < v.size() && a < 2; ++a) cfg.grid.origin[a] = v[a];
        cfg.grid.dim = static_cast<int>(v.size());
      } else {
        auto v = detail::parse_double_list(value, at);
        for (std::size_t a = 0; a < v.size() && a < 2; ++a)
          cfg.grid.counts[a] = static_cast<int>(v[a]);
        cfg.grid.dim = static_cast<int>(v.size());
      }
    } else if (section == "domain") {
      if (key == "kind") cfg.domain_kind = value;
      else if (key == "axis") cfg.domain_axis = integer();
      else if (key == "level") cfg.domain_level = num();
      else if (key == "center") cfg.domain_center = detail::parse_double_list(value, at);
      else if (key == "radius") cfg.domain_radius = num();
      else cfg.domain_height = num();
    } else if (section == "exterior") {
      if (key == "kind") cfg.exterior_kind = value;
      else if (key == "value") cfg.exterior_value = num();
      else if (key == "axis") cfg.exterior_axis = integer();
      else if (key == "threshold") cfg.exterior_threshold = num();
      else if (key == "below") cfg.exterior_below = num();
      else cfg.exterior_above = num();
    } else if (section == "nonlinearity") {
      cfg.nl_name = value;
    } else if (section == "solver") {
      if (key == "dt") cfg.solve.dt = num();
      else if (key == "tol") cfg.solve.tol = num();
      else if (key == "max_iters") cfg.solve.max_iters = integer();
      else cfg.solve.damping = num();
    } else if (section == "quadrature") {
      if (key == "delta_split") cfg.quad.delta_split = num();
      else if (key == "tail_radius") cfg.quad.tail_radius = num();
      else if (key == "cell_rule") {
        if (value == "midpoint") cfg.quad.cell_rule = CellRule::midpoint;
        else if (value == "gauss4") cfg.quad.cell_rule = CellRule::gauss4;
        else throw config_error(at.line, at.column, "unknown cell_rule '" + value + "'");
      }
    } else if (section == "init") {
      if (key == "kind") cfg.init_kind = value;
      else cfg.init_value = num();
    } else if (section == "eval") {
      cfg.eval_input = value;
    } else if (section == "slide") {
      if (key == "input") cfg.slide_input = value;
      else if (key == "tau") cfg.slide_tau = num();
      else if (key == "direction") cfg.slide_direction = detail::parse_double_list(value, at);
      else if (key == "tau_max") cfg.slide_tau_max = num();
      else cfg.slide_tol = num();
    } else if (section == "eigen") {
      cfg.eigen_radius = num();
    } else if (section == "verify") {
      if (key == "suites") {
        cfg.verify_suites = detail::parse_name_list(value);
        for (const auto& s : cfg.verify_suites) {
          if (!is_known_suite(s))
            throw config_error(at.line, at.column, "unknown suite name '" + s + "'");
        }
      } else if (key == "r0") cfg.verify_r0 = num();
      else if (key == "eps1") cfg.verify_eps1 = num();
      else if (key == "eps_levels") cfg.verify_eps_levels = detail::parse_double_list(value, at);
      else if (key == "density_samples") cfg.density_samples = integer();
      else cfg.g_pairs = integer();
    } else if (section == "run") {
      if (key == "threads") cfg.threads = integer();
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(num());
      else cfg.out_dir = value;
    }
    if (end == text.size()) break;
  }

  // Semantic validation happens eagerly so config mistakes surface here.
  cfg.params.validate();
  if (cfg.has_grid) cfg.grid.validate();
  cfg.solve.validate();
  if (cfg.has_grid) cfg.quad.validate(cfg.grid.h);
  return cfg;
}

}  // namespace fplap
