#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "fplap/common/errors.hpp"
#include "fplap/common/parallel.hpp"
#include "fplap/core/domain.hpp"
#include "fplap/core/field.hpp"
#include "fplap/core/params.hpp"
#include "fplap/op/gpow.hpp"
#include "fplap/op/quadrature.hpp"

namespace fplap {

/// Closed-form far-field contribution beyond radius R around x, for exterior
/// data that is a single constant there:
///   c_norm * G(u(x) - c) * sigma_n * R^(-sp) / (sp),
/// sigma_1 = 2, sigma_2 = 2*pi.  Rules without a uniform far constant are
/// integrated numerically by the evaluator instead and are rejected here.
inline double tail_integral(double u_at_x, const OperatorParams& params,
                            [[maybe_unused]] const Point& x, double R, const ExteriorRule& rule) {
  params.validate();
  if (!(R > 0.0)) throw invalid_argument_error("tail radius must be positive");
  double c;
  switch (rule.kind()) {
    case ExteriorRule::Kind::zero: c = 0.0; break;
    case ExteriorRule::Kind::constant: c = rule.constant_value(); break;
    default:
      throw invalid_argument_error("tail_integral needs a zero or constant exterior rule");
  }
  double sigma = params.n == 1 ? 2.0 : 2.0 * std::numbers::pi;
  double sp = params.sp();
  return params.c_norm * g_power(u_at_x - c, params.p) * sigma * std::pow(R, -sp) / sp;
}

/// Evaluates the operator on grid nodes.  Construction precomputes the
/// translation-invariant kernel cell weights once per (grid, params, config)
/// triple; evaluation then runs fixed-order antipodal-pair sums (the
/// principal-value treatment: the leading odd contribution of each +/- pair
/// cancels analytically, the singular center cell is omitted) plus the
/// analytic tails.  Summation order never depends on the thread count.
class Evaluator {
 public:
  Evaluator(Grid grid, OperatorParams params, QuadratureConfig config = {})
      : grid_(std::move(grid)), params_(params), config_(config) {
    grid_.validate();
    params_.validate();
    config_.validate(grid_.h);
    sp_ = params_.sp();
    if (grid_.dim == 1) {
      std::size_t cells = static_cast<std::size_t>(grid_.counts[0]);
      std::size_t trunc_cells = static_cast<std::size_t>(
          std::ceil(grid_.truncation_radius() / grid_.h + 0.5));
      // Prescribed exterior data is summed numerically out to the truncation
      // radius beyond the box, so offsets reach grid cells plus that margin.
      build_weights_1d(cells + trunc_cells);
    } else {
      double r = config_.tail_radius > 0.0 ? config_.tail_radius : grid_.diameter();
      disc_radius_ = r;
      build_weights_2d(r);
    }
  }

  const Grid& grid() const { return grid_; }
  const OperatorParams& params() const { return params_; }
  const QuadratureConfig& config() const { return config_; }

  /// Kernel mass seen from any node (cell weights plus tail), used for
  /// explicit step-size bounds.  Node independent: the weights partition the
  /// same integral no matter where the tail takes over.
  double total_kernel_mass() const {
    if (grid_.dim == 1) return (2.0 / sp_) * std::pow(0.5 * grid_.h, -sp_);
    double m = 0.0;
    for (const auto& o : offsets_2d_) m += 2.0 * o.w;
    return m + 2.0 * std::numbers::pi * std::pow(disc_radius_, -sp_) / sp_;
  }

  double eval_point(const Field& u, const Point& x) const {
    std::size_t idx = grid_.node_index_of(x);
    if (idx == Grid::npos)
      throw invalid_argument_error("eval_point: x must be a grid node inside the grid");
    check_input(u);
    if (!u.all_finite()) throw invalid_argument_error("eval_point: field has non-finite values");
    Workspace ws = make_workspace(u);
    return eval_node(u, ws, idx);
  }

  Field eval_field(const Field& u, const DomainSpec* region = nullptr, int threads = 1) const {
    check_input(u);
    if (!u.all_finite()) throw invalid_argument_error("eval_field: field has non-finite values");
    Workspace ws = make_workspace(u);
    Field out(grid_, ExteriorRule::zero(),
              region ? std::numeric_limits<double>::quiet_NaN() : 0.0);
    std::vector<std::size_t> nodes;
    if (region) {
      nodes = region->grid_nodes(grid_);
    } else {
      nodes.resize(grid_.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
    }
    parallel_for_blocks(nodes.size(), threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) out[nodes[k]] = eval_node(u, ws, nodes[k]);
    });
    return out;
  }

  /// Evaluation restricted to a fixed node list, writing into out[k] for
  /// node_list[k].  Skips the per-call allocations of eval_field; the input
  /// is assumed finite (the solver loop keeps it so).
  void eval_nodes(const Field& u, const std::vector<std::size_t>& nodes, std::vector<double>& out,
                  int threads = 1) const {
    check_input(u);
    Workspace ws = make_workspace(u);
    out.resize(nodes.size());
    parallel_for_blocks(nodes.size(), threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) out[k] = eval_node(u, ws, nodes[k]);
    });
  }

  /// Near-field part (cell centers within delta of the node) and the rest
  /// including tails; both scaled by c_norm, summing to eval_point.
  std::pair<double, double> eval_point_split(const Field& u, const Point& x, double delta) const {
    std::size_t idx = grid_.node_index_of(x);
    if (idx == Grid::npos)
      throw invalid_argument_error("eval_point_split: x must be a grid node");
    check_input(u);
    Workspace ws = make_workspace(u);
    return eval_node_split(u, ws, idx, delta);
  }

 private:
  struct Workspace {
    std::vector<double> padded;
    int margin = 0;
    int stride = 0;
  };

  void check_input(const Field& u) const {
    const Grid& g = u.grid();
    if (g.dim != grid_.dim || g.h != grid_.h || g.counts != grid_.counts || g.origin != grid_.origin)
      throw invalid_argument_error("field grid does not match the evaluator grid");
  }

  void build_weights_1d(std::size_t max_cells) {
    wts_1d_.resize(max_cells);
    double h = grid_.h;
    for (std::size_t j = 1; j <= max_cells; ++j) {
      double a = (static_cast<double>(j) - 0.5) * h;
      double b = (static_cast<double>(j) + 0.5) * h;
      if (config_.cell_rule == CellRule::midpoint) {
        wts_1d_[j - 1] = h * std::pow(static_cast<double>(j) * h, -1.0 - sp_);
      } else {
        wts_1d_[j - 1] = (std::pow(a, -sp_) - std::pow(b, -sp_)) / sp_;
      }
    }
  }

  void build_weights_2d(double radius) {
    double h = grid_.h;
    int m = static_cast<int>(std::floor(radius / h));
    margin_2d_ = m;
    double r2 = radius * radius;
    const double g = 0.5 / std::sqrt(3.0);  // 2x2 tensor Gauss abscissa, unit cell
    for (int b = 0; b <= m; ++b) {
      int a_lo = b == 0 ? 1 : -m;
      for (int a = a_lo; a <= m; ++a) {
        double cx = a * h, cy = b * h;
        if (cx * cx + cy * cy > r2) continue;
        double w;
        if (config_.cell_rule == CellRule::midpoint) {
          w = h * h * std::pow(cx * cx + cy * cy, -0.5 * (2.0 + sp_));
        } else {
          w = 0.0;
          for (int qa = -1; qa <= 1; qa += 2) {
            for (int qb = -1; qb <= 1; qb += 2) {
              double zx = cx + qa * g * h, zy = cy + qb * g * h;
              w += std::pow(zx * zx + zy * zy, -0.5 * (2.0 + sp_));
            }
          }
          w *= 0.25 * h * h;
        }
        offsets_2d_.push_back({a, b, w});
      }
    }
  }

  Workspace make_workspace(const Field& u) const {
    Workspace ws;
    if (grid_.dim == 1) {
      bool prescribed = u.rule().kind() == ExteriorRule::Kind::prescribed;
      int n = grid_.counts[0];
      int margin = prescribed
                       ? static_cast<int>(std::ceil(grid_.truncation_radius() / grid_.h + 0.5))
                       : 0;
      ws.margin = margin;
      ws.padded.resize(static_cast<std::size_t>(n + 2 * margin));
      for (int i = -margin; i < n + margin; ++i)
        ws.padded[static_cast<std::size_t>(i + margin)] = u.node_or_exterior(i);
    } else {
      int m = margin_2d_;
      int n0 = grid_.counts[0], n1 = grid_.counts[1];
      ws.margin = m;
      ws.stride = n0 + 2 * m;
      ws.padded.resize(static_cast<std::size_t>(ws.stride) * static_cast<std::size_t>(n1 + 2 * m));
      for (int i1 = -m; i1 < n1 + m; ++i1) {
        for (int i0 = -m; i0 < n0 + m; ++i0) {
          ws.padded[static_cast<std::size_t>(i1 + m) * static_cast<std::size_t>(ws.stride) +
                    static_cast<std::size_t>(i0 + m)] = u.node_or_exterior(i0, i1);
        }
      }
    }
    return ws;
  }

  template <class G>
  double eval_node_impl(const Field& u, const Workspace& ws, std::size_t idx, G gfun) const {
    if (grid_.dim == 1) {
      int n = grid_.counts[0];
      int i = static_cast<int>(idx);
      const double* p = ws.padded.data() + ws.margin;
      double ui = p[i];
      int n_left = i + ws.margin;
      int n_right = (n - 1 - i) + ws.margin;
      int both = std::min(n_left, n_right);
      double acc = 0.0;
      for (int j = 1; j <= both; ++j)
        acc += wts_1d_[static_cast<std::size_t>(j - 1)] * (gfun(ui - p[i + j]) + gfun(ui - p[i - j]));
      for (int j = both + 1; j <= n_left; ++j)
        acc += wts_1d_[static_cast<std::size_t>(j - 1)] * gfun(ui - p[i - j]);
      for (int j = both + 1; j <= n_right; ++j)
        acc += wts_1d_[static_cast<std::size_t>(j - 1)] * gfun(ui - p[i + j]);
      auto [far_lo, far_hi] = u.rule().far_values();
      double d_left = (n_left + 0.5) * grid_.h;
      double d_right = (n_right + 0.5) * grid_.h;
      acc += gfun(ui - far_lo) * std::pow(d_left, -sp_) / sp_;
      acc += gfun(ui - far_hi) * std::pow(d_right, -sp_) / sp_;
      return params_.c_norm * acc;
    }
    auto ij = grid_.unflat(idx);
    int m = ws.margin, st = ws.stride;
    const double* base = ws.padded.data() + static_cast<std::size_t>(ij[1] + m) * static_cast<std::size_t>(st) +
                         static_cast<std::size_t>(ij[0] + m);
    double ui = *base;
    double acc = 0.0;
    for (const auto& o : offsets_2d_) {
      std::ptrdiff_t off = static_cast<std::ptrdiff_t>(o.b) * st + o.a;
      acc += o.w * (gfun(ui - base[off]) + gfun(ui - base[-off]));
    }
    acc += tail_2d(u.rule(), ui, gfun);
    return params_.c_norm * acc;
  }

  template <class G>
  double tail_2d(const ExteriorRule& rule, double ui, G gfun) const {
    double mass = 2.0 * std::numbers::pi * std::pow(disc_radius_, -sp_) / sp_;
    switch (rule.kind()) {
      case ExteriorRule::Kind::zero:
        return mass * gfun(ui);
      case ExteriorRule::Kind::constant:
        return mass * gfun(ui - rule.constant_value());
      default: {
        auto [lo, hi] = rule.far_values();
        return 0.5 * mass * (gfun(ui - lo) + gfun(ui - hi));
      }
    }
  }

  double eval_node(const Field& u, const Workspace& ws, std::size_t idx) const {
    if (params_.p == 2.0) return eval_node_impl(u, ws, idx, detail::GIdentity{});
    if (params_.p == 3.0) return eval_node_impl(u, ws, idx, detail::GCubicish{});
    return eval_node_impl(u, ws, idx, detail::GGeneral{params_.p - 2.0});
  }

  std::pair<double, double> eval_node_split(const Field& u, const Workspace& ws, std::size_t idx,
                                            double delta) const {
    auto gfun = [this](double t) { return g_power(t, params_.p); };
    double near = 0.0, far = 0.0;
    if (grid_.dim == 1) {
      int n = grid_.counts[0];
      int i = static_cast<int>(idx);
      const double* p = ws.padded.data() + ws.margin;
      double ui = p[i];
      int n_left = i + ws.margin;
      int n_right = (n - 1 - i) + ws.margin;
      int cut = static_cast<int>(std::floor(delta / grid_.h));
      for (int j = 1; j <= std::max(n_left, n_right); ++j) {
        double term = 0.0;
        if (j <= n_right) term += wts_1d_[static_cast<std::size_t>(j - 1)] * gfun(ui - p[i + j]);
        if (j <= n_left) term += wts_1d_[static_cast<std::size_t>(j - 1)] * gfun(ui - p[i - j]);
        (j <= cut ? near : far) += term;
      }
      auto [far_lo, far_hi] = u.rule().far_values();
      far += gfun(ui - far_lo) * std::pow((n_left + 0.5) * grid_.h, -sp_) / sp_;
      far += gfun(ui - far_hi) * std::pow((n_right + 0.5) * grid_.h, -sp_) / sp_;
    } else {
      auto ij = grid_.unflat(idx);
      int m = ws.margin, st = ws.stride;
      const double* base = ws.padded.data() + static_cast<std::size_t>(ij[1] + m) * static_cast<std::size_t>(st) +
                           static_cast<std::size_t>(ij[0] + m);
      double ui = *base;
      double d2 = delta * delta;
      for (const auto& o : offsets_2d_) {
        std::ptrdiff_t off = static_cast<std::ptrdiff_t>(o.b) * st + o.a;
        double term = o.w * (gfun(ui - base[off]) + gfun(ui - base[-off]));
        double r2 = (o.a * o.a + o.b * o.b) * grid_.h * grid_.h;
        (r2 <= d2 ? near : far) += term;
      }
      far += tail_2d(u.rule(), ui, gfun);
    }
    return {params_.c_norm * near, params_.c_norm * far};
  }

  struct Offset2D {
    int a, b;
    double w;
  };

  Grid grid_;
  OperatorParams params_;
  QuadratureConfig config_;
  double sp_ = 1.0;
  std::vector<double> wts_1d_;
  std::vector<Offset2D> offsets_2d_;
  int margin_2d_ = 0;
  double disc_radius_ = 0.0;
};

/// |L(u + eps*bump)(x) - L(u)(x)|.  The bump must live on the same grid with
/// compact support inside it (zero exterior rule).
inline double perturbation_gap(const Evaluator& ev, const Field& u, const Field& bump, double eps,
                               const Point& x) {
  if (eps < 0.0) throw invalid_argument_error("perturbation_gap: eps must be >= 0");
  if (bump.rule().kind() != ExteriorRule::Kind::zero)
    throw invalid_argument_error("perturbation_gap: bump must carry the zero exterior rule");
  if (bump.size() != u.size())
    throw invalid_argument_error("perturbation_gap: bump grid does not match");
  Field sum(u.grid(), u.values(), u.rule());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += eps * bump[i];
  return std::abs(ev.eval_point(sum, x) - ev.eval_point(u, x));
}

}  // namespace fplap
