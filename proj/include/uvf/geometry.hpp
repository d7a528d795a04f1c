#pragma once

// Pointwise differential geometry on catalog hypersurfaces: tangent-space
// data at chart points, the shape operator as the derivative of the Gauss
// map, adapted and principal orthonormal frames, and product quadrature
// grids whose weights carry the Riemannian area element.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "uvf/common.hpp"
#include "uvf/linalg.hpp"
#include "uvf/surfaces.hpp"

namespace uvf {

/// A chart point with everything needed for pointwise work: ambient
/// position, coordinate tangent basis, oriented unit normal N, induced
/// metric g = J^T J and its area element sqrt(det g).
struct TangentPoint {
  int chart_index = 0;
  Vec params;
  Vec position;
  int m = 0;  // tangent dimension
  std::array<Vec, kMaxDim> tangent_basis;
  Vec normal;
  SquareMatrix metric;
  double sqrt_det_g = 0.0;
};

namespace detail {

// Central differences through the chart, used only when a chart carries no
// closed-form derivative. Step 1e-5 scaled by the axis extent.
inline Jacobian fd_chart_jacobian(const std::function<Vec(const Vec&)>& f,
                                  const std::vector<AxisSpec>& axes, const Vec& p) {
  const int m = static_cast<int>(axes.size());
  Vec f0 = f(p);
  Jacobian jac(f0.dim(), m);
  for (int j = 0; j < m; ++j) {
    double h = 1e-5 * std::max(1.0, axes[static_cast<std::size_t>(j)].hi - axes[static_cast<std::size_t>(j)].lo);
    Vec pp = p, pm = p;
    pp[j] += h;
    pm[j] -= h;
    Vec fp = f(pp), fm = f(pm);
    for (int r = 0; r < f0.dim(); ++r) jac(r, j) = (fp[r] - fm[r]) / (2.0 * h);
  }
  return jac;
}

}  // namespace detail

/// Evaluates chart data at the given parameters. Throws
/// ChartSingularityError when the coordinate basis degenerates.
inline TangentPoint eval_point(const Hypersurface& surface, int chart_index, const Vec& params) {
  if (chart_index < 0 || chart_index >= static_cast<int>(surface.atlas.size()))
    throw InputError("eval_point: chart index out of range");
  const Chart& chart = surface.atlas[static_cast<std::size_t>(chart_index)];
  const int m = chart.param_dim();

  TangentPoint pt;
  pt.chart_index = chart_index;
  pt.params = params;
  pt.m = m;
  pt.position = chart.position(params);
  Jacobian jac = chart.jacobian ? chart.jacobian(params)
                                : detail::fd_chart_jacobian(chart.position, chart.axes, params);
  for (int j = 0; j < m; ++j) pt.tangent_basis[static_cast<std::size_t>(j)] = jac.column(j);
  pt.normal = chart.normal(params);

  pt.metric = SquareMatrix(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      double gij = dot(pt.tangent_basis[static_cast<std::size_t>(i)], pt.tangent_basis[static_cast<std::size_t>(j)]);
      pt.metric(i, j) = gij;
      pt.metric(j, i) = gij;
    }
  double dg = det(pt.metric);
  // Scale-invariant degeneracy test: compare the basis parallelepiped volume
  // against the product of the edge lengths (Hadamard ratio). Grid nodes near
  // (but off) coordinate singularities have tiny edges with ratio ~ 1 and are
  // fine; actual linear dependence drives the ratio to zero.
  double edge_product = 1.0;
  for (int i = 0; i < m; ++i) edge_product *= norm(pt.tangent_basis[static_cast<std::size_t>(i)]);
  if (!(dg > 0.0) || !(std::sqrt(dg) > 1e-12 * edge_product))
    throw ChartSingularityError(surface.name + ": degenerate tangent basis at chart point");
  pt.sqrt_det_g = std::sqrt(dg);
  return pt;
}

/// The shape operator S_x = d(nu): tangent vectors map to the derivative of
/// the Gauss map along them. Self-adjoint with respect to the induced
/// metric; on the round sphere of radius r it is (1/r) * identity.
class ShapeOperator {
 public:
  ShapeOperator(const Hypersurface& surface, const TangentPoint& p) : m_(p.m) {
    const Chart& chart = surface.atlas[static_cast<std::size_t>(p.chart_index)];
    dnu_ = chart.normal_jacobian
               ? chart.normal_jacobian(p.params)
               : detail::fd_chart_jacobian(chart.normal, chart.axes, p.params);
    for (int j = 0; j < m_; ++j) basis_[static_cast<std::size_t>(j)] = p.tangent_basis[static_cast<std::size_t>(j)];
    metric_ = p.metric;
  }

  /// S(x) for an ambient vector x tangent to M at the base point.
  Vec apply(const Vec& x) const {
    // Solve g c = J^T x for the chart components of x, then push through dnu.
    Vec rhs(m_);
    for (int j = 0; j < m_; ++j) rhs[j] = dot(basis_[static_cast<std::size_t>(j)], x);
    Vec c = solve_metric(rhs);
    return dnu_.apply(c);
  }

  /// Matrix h with h(A, B) = <S(e_A), e_B> for an orthonormal frame e.
  SquareMatrix matrix_in_frame(const Vec* frame, int count) const {
    SquareMatrix h(count);
    for (int a = 0; a < count; ++a) {
      Vec s = apply(frame[a]);
      for (int b = 0; b < count; ++b) h(a, b) = dot(s, frame[b]);
    }
    return h;
  }

 private:
  Vec solve_metric(const Vec& rhs) const {
    // Gaussian elimination with partial pivoting on a copy; m <= 5.
    SquareMatrix a = metric_;
    Vec b = rhs;
    for (int p = 0; p < m_; ++p) {
      int piv = p;
      for (int r = p + 1; r < m_; ++r)
        if (std::abs(a(r, p)) > std::abs(a(piv, p))) piv = r;
      if (piv != p) {
        for (int c = 0; c < m_; ++c) std::swap(a(p, c), a(piv, c));
        std::swap(b[p], b[piv]);
      }
      double d = a(p, p);
      for (int r = p + 1; r < m_; ++r) {
        double f = a(r, p) / d;
        for (int c = p; c < m_; ++c) a(r, c) -= f * a(p, c);
        b[r] -= f * b[p];
      }
    }
    Vec x(m_);
    for (int r = m_ - 1; r >= 0; --r) {
      double s = b[r];
      for (int c = r + 1; c < m_; ++c) s -= a(r, c) * x[c];
      x[r] = s / a(r, r);
    }
    return x;
  }

  int m_;
  Jacobian dnu_;
  std::array<Vec, kMaxDim> basis_;
  SquareMatrix metric_;
};

/// Point plus adapted orthonormal tangent frame {e_1, ..., e_2n, v}, with the
/// curvature matrix h(A,B) = <S(e_A), e_B> and the covariant-derivative
/// matrix a(A,B) = <D_{e_B} v, e_A> (filled by the fields module; zero until
/// then).
struct PointFrame {
  TangentPoint base;
  int m = 0;
  std::array<Vec, kMaxDim> frame;  // frame[m-1] is the field direction
  SquareMatrix h;
  SquareMatrix a;
};

/// Builds the adapted frame for a unit tangent vector v at p: v becomes the
/// last frame vector and the rest comes from pivoted Gram-Schmidt over the
/// chart basis. Fills h from the shape operator; a is left zero.
inline PointFrame adapted_frame(const Hypersurface& surface, const TangentPoint& p, const Vec& v) {
  if (std::abs(norm(v) - 1.0) > 1e-8) throw InputError("adapted_frame: v is not a unit vector");
  if (std::abs(dot(v, p.normal)) > 1e-8) throw InputError("adapted_frame: v is not tangent at p");
  const int m = p.m;

  PointFrame pf;
  pf.base = p;
  pf.m = m;

  // Gram-Schmidt with v first and column pivoting over the chart basis;
  // exactly one candidate is (numerically) absorbed by the span.
  std::array<Vec, kMaxDim> work;
  work[0] = v;
  int count = 1;
  std::array<bool, kMaxDim> used{};
  while (count < m) {
    int best = -1;
    double best_norm = -1.0;
    std::array<Vec, kMaxDim> residuals;
    for (int cand = 0; cand < m; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      Vec r = p.tangent_basis[static_cast<std::size_t>(cand)];
      for (int k = 0; k < count; ++k) axpy(-dot(r, work[static_cast<std::size_t>(k)]), work[static_cast<std::size_t>(k)], r);
      // second pass for orthogonality at round-off level
      for (int k = 0; k < count; ++k) axpy(-dot(r, work[static_cast<std::size_t>(k)]), work[static_cast<std::size_t>(k)], r);
      double rn = norm(r);
      residuals[static_cast<std::size_t>(cand)] = r;
      if (rn > best_norm) {
        best_norm = rn;
        best = cand;
      }
    }
    if (best < 0 || best_norm < 1e-10)
      throw NumericalError("adapted_frame: chart basis plus v does not span the tangent space");
    used[static_cast<std::size_t>(best)] = true;
    Vec e = residuals[static_cast<std::size_t>(best)];
    e *= 1.0 / best_norm;
    work[static_cast<std::size_t>(count++)] = e;
  }
  // v last: e_1..e_{m-1} then v.
  for (int i = 0; i + 1 < m; ++i) pf.frame[static_cast<std::size_t>(i)] = work[static_cast<std::size_t>(i + 1)];
  pf.frame[static_cast<std::size_t>(m - 1)] = work[0];

  ShapeOperator s(surface, p);
  pf.h = s.matrix_in_frame(pf.frame.data(), m);
  pf.a = SquareMatrix(m);
  return pf;
}

/// Orthonormal eigenbasis of the shape operator, eigenvalues descending,
/// signs fixed so each vector's first nonzero ambient component is positive.
struct PrincipalFrame {
  TangentPoint base;
  int m = 0;
  std::array<Vec, kMaxDim> directions;
  Vec curvatures;
};

inline PrincipalFrame principal_frame(const Hypersurface& surface, const TangentPoint& p) {
  const int m = p.m;
  // Any orthonormal tangent frame works as a staging basis; build one by
  // pivoted Gram-Schmidt over the chart basis.
  std::array<Vec, kMaxDim> ortho;
  int count = 0;
  std::array<bool, kMaxDim> used{};
  while (count < m) {
    int best = -1;
    double best_norm = -1.0;
    Vec best_res;
    for (int cand = 0; cand < m; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      Vec r = p.tangent_basis[static_cast<std::size_t>(cand)];
      for (int k = 0; k < count; ++k) axpy(-dot(r, ortho[static_cast<std::size_t>(k)]), ortho[static_cast<std::size_t>(k)], r);
      for (int k = 0; k < count; ++k) axpy(-dot(r, ortho[static_cast<std::size_t>(k)]), ortho[static_cast<std::size_t>(k)], r);
      double rn = norm(r);
      if (rn > best_norm) {
        best_norm = rn;
        best = cand;
        best_res = r;
      }
    }
    if (best < 0 || best_norm < 1e-10) throw NumericalError("principal_frame: degenerate tangent basis");
    used[static_cast<std::size_t>(best)] = true;
    best_res *= 1.0 / best_norm;
    ortho[static_cast<std::size_t>(count++)] = best_res;
  }

  ShapeOperator s(surface, p);
  SquareMatrix h = s.matrix_in_frame(ortho.data(), m);
  SymmetricEigen eig = symmetric_eigen(h);

  PrincipalFrame out;
  out.base = p;
  out.m = m;
  out.curvatures = eig.values;
  for (int j = 0; j < m; ++j) {
    Vec u(p.position.dim());
    for (int i = 0; i < m; ++i) axpy(eig.vectors(i, j), ortho[static_cast<std::size_t>(i)], u);
    u = normalized(u);
    for (int c = 0; c < u.dim(); ++c) {
      if (std::abs(u[c]) > 1e-12) {
        if (u[c] < 0) u *= -1.0;
        break;
      }
    }
    out.directions[static_cast<std::size_t>(j)] = u;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

namespace detail {

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre polynomial; nodes are strictly interior.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

}  // namespace detail

/// Product quadrature over the chart atlas. Nodes are generated lazily in a
/// fixed lexicographic order (last axis fastest); each visit carries the
/// weight rule-weight x sqrt(det g) x atlas-weight. Per-axis rules:
/// Gauss-Legendre on non-periodic axes (strictly interior, no node ever hits
/// a chart singularity), midpoint-offset equal weights on periodic axes.
class QuadratureGrid {
 public:
  QuadratureGrid(const Hypersurface& surface, const std::vector<std::vector<int>>& per_chart_resolution)
      : surface_(&surface) {
    if (per_chart_resolution.size() != surface.atlas.size())
      throw InputError("build_grid: one resolution list per chart required");
    for (std::size_t ci = 0; ci < surface.atlas.size(); ++ci) {
      const Chart& chart = surface.atlas[ci];
      const std::vector<int>& res = per_chart_resolution[ci];
      if (static_cast<int>(res.size()) != chart.param_dim())
        throw InputError("build_grid: resolution entry count must match chart axes");
      ChartRule rule;
      rule.total = 1;
      for (int axis = 0; axis < chart.param_dim(); ++axis) {
        int count = res[static_cast<std::size_t>(axis)];
        if (count < 4) throw InputError("build_grid: resolution must be >= 4 per axis");
        const AxisSpec& spec = chart.axes[static_cast<std::size_t>(axis)];
        AxisRule ar;
        if (spec.periodic) {
          double h = (spec.hi - spec.lo) / count;
          for (int i = 0; i < count; ++i) {
            ar.nodes.push_back(spec.lo + (static_cast<double>(i) + 0.5) * h);
            ar.weights.push_back(h);
          }
        } else {
          std::vector<double> xs, ws;
          detail::gauss_legendre(count, xs, ws);
          double mid = 0.5 * (spec.hi + spec.lo), half = 0.5 * (spec.hi - spec.lo);
          for (int i = 0; i < count; ++i) {
            ar.nodes.push_back(mid + half * xs[static_cast<std::size_t>(i)]);
            ar.weights.push_back(half * ws[static_cast<std::size_t>(i)]);
          }
        }
        rule.total *= count;
        rule.axes.push_back(std::move(ar));
      }
      rules_.push_back(std::move(rule));
    }
  }

  const Hypersurface& surface() const { return *surface_; }

  std::int64_t node_count() const {
    std::int64_t t = 0;
    for (const ChartRule& r : rules_) t += r.total;
    return t;
  }

  std::string resolution_label() const {
    std::string s;
    for (std::size_t ci = 0; ci < rules_.size(); ++ci) {
      if (ci) s += ";";
      for (std::size_t ax = 0; ax < rules_[ci].axes.size(); ++ax) {
        if (ax) s += "x";
        s += std::to_string(rules_[ci].axes[ax].nodes.size());
      }
    }
    return s;
  }

  /// Chart parameters and the rule weight (without the area element) of the
  /// node with the given global index.
  void node_params(std::int64_t index, int& chart_index, Vec& params, double& rule_weight) const {
    for (std::size_t ci = 0; ci < rules_.size(); ++ci) {
      const ChartRule& rule = rules_[ci];
      if (index >= rule.total) {
        index -= rule.total;
        continue;
      }
      const int m = static_cast<int>(rule.axes.size());
      params = Vec(m);
      rule_weight = surface_->atlas[ci].weight;
      for (int axis = m - 1; axis >= 0; --axis) {
        const AxisRule& ar = rule.axes[static_cast<std::size_t>(axis)];
        std::int64_t count = static_cast<std::int64_t>(ar.nodes.size());
        std::int64_t pos = index % count;
        index /= count;
        params[axis] = ar.nodes[static_cast<std::size_t>(pos)];
        rule_weight *= ar.weights[static_cast<std::size_t>(pos)];
      }
      chart_index = static_cast<int>(ci);
      return;
    }
    throw InputError("node index out of range");
  }

  /// Materializes node `index`: full tangent-point data plus the quadrature
  /// weight including the Riemannian area element.
  std::pair<TangentPoint, double> node(std::int64_t index) const {
    int ci = 0;
    Vec params;
    double rw = 0.0;
    node_params(index, ci, params, rw);
    TangentPoint pt = eval_point(*surface_, ci, params);
    return {pt, rw * pt.sqrt_det_g};
  }

  /// Sum of all weights = vol(M) up to quadrature error.
  double volume() const {
    KahanSum sum;
    const std::int64_t total = node_count();
    for (std::int64_t i = 0; i < total; ++i) sum.add(node(i).second);
    return sum.value();
  }

 private:
  struct AxisRule {
    std::vector<double> nodes, weights;
  };
  struct ChartRule {
    std::vector<AxisRule> axes;
    std::int64_t total = 0;
  };

  const Hypersurface* surface_;
  std::vector<ChartRule> rules_;
};

/// Grid over a surface whose atlas is a single chart (all catalog surfaces).
inline QuadratureGrid build_grid(const Hypersurface& surface, const std::vector<int>& resolution) {
  return QuadratureGrid(surface, {resolution});
}

}  // namespace uvf
