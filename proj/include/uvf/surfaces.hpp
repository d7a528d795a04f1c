#pragma once

// Parametrized closed hypersurfaces M^(2n+1) in R^(2n+2). Each catalog
// surface carries a single closed-form chart covering M up to measure zero,
// a unit normal with a fixed orientation (outward for spheres and the
// ellipsoid, away from the core circle for the tube torus), the normal's
// chart derivative, and an ambient extension of the normal used when fields
// are differentiated by finite differences.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "uvf/common.hpp"
#include "uvf/linalg.hpp"

namespace uvf {

/// One chart coordinate axis: open interval (lo, hi), flagged periodic when
/// the chart wraps around (full-period trigonometric direction).
struct AxisSpec {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;
};

/// Ambient-dim x param-dim matrix (columns = partial derivatives).
struct Jacobian {
  int rows = 0, cols = 0;
  std::array<double, kMaxDim * kMaxDim> data{};

  Jacobian() = default;
  Jacobian(int r, int c) : rows(r), cols(c) { data.fill(0.0); }
  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r * cols + c)]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r * cols + c)]; }

  Vec column(int c) const {
    Vec v(rows);
    for (int r = 0; r < rows; ++r) v[r] = (*this)(r, c);
    return v;
  }
  Vec apply(const Vec& x) const {
    Vec v(rows);
    for (int r = 0; r < rows; ++r) {
      double s = 0.0;
      for (int c = 0; c < cols; ++c) s += (*this)(r, c) * x[c];
      v[r] = s;
    }
    return v;
  }
};

/// A smooth map from an open box into ambient space, with closed-form
/// derivatives. `normal_jacobian` may be empty, in which case the normal is
/// differentiated by central differences in chart coordinates.
struct Chart {
  std::vector<AxisSpec> axes;
  double weight = 1.0;  // atlas weight; catalog charts cover M alone
  std::function<Vec(const Vec&)> position;
  std::function<Jacobian(const Vec&)> jacobian;          // optional: empty -> finite differences
  std::function<Vec(const Vec&)> normal;                 // oriented unit normal
  std::function<Jacobian(const Vec&)> normal_jacobian;   // optional: empty -> finite differences

  int param_dim() const { return static_cast<int>(axes.size()); }
};

/// A closed hypersurface with its chart atlas and catalog metadata.
struct Hypersurface {
  std::string name;
  int n = 1;  // dimension m = 2n+1, ambient 2n+2
  bool is_round_sphere = false;
  double radius = 0.0;
  std::optional<int> expected_degree;
  std::optional<double> known_volume;
  std::vector<Chart> atlas;
  /// Unit normal field extended to a neighborhood of M in ambient space.
  std::function<Vec(const Vec&)> ambient_normal;

  int dim() const { return 2 * n + 1; }
  int ambient_dim() const { return 2 * n + 2; }
};

/// Volume of the unit sphere S^m for odd m = 2n+1: 2 pi^(n+1) / n!.
inline double unit_sphere_volume(int m) {
  if (m < 1 || m % 2 == 0) throw InputError("unit_sphere_volume: odd dimension required");
  const int n = (m - 1) / 2;
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= static_cast<double>(i);
  return 2.0 * std::pow(std::numbers::pi, static_cast<double>(n + 1)) / fact;
}

namespace detail {

// Hyperspherical chart of the unit m-sphere: m-1 polar angles in (0, pi) and
// one periodic angle in (0, 2pi).
//   x_0 = cos p_0,  x_i = sin p_0 ... sin p_{i-1} cos p_i,  x_m = sin p_0 ... sin p_{m-1}.
inline Vec unit_sphere_position(int m, const Vec& p) {
  Vec x(m + 1);
  double prod = 1.0;
  for (int i = 0; i < m; ++i) {
    x[i] = prod * std::cos(p[i]);
    prod *= std::sin(p[i]);
  }
  x[m] = prod;
  return x;
}

inline Jacobian unit_sphere_jacobian(int m, const Vec& p) {
  // d x_k / d p_j: zero for j > k; swaps one sine for a cosine (or the
  // trailing cosine for a -sine) otherwise. Dimensions are <= 5 so the
  // straightforward product loops are fine.
  Jacobian jac(m + 1, m);
  std::array<double, kMaxDim> s{}, c{};
  for (int i = 0; i < m; ++i) {
    s[static_cast<std::size_t>(i)] = std::sin(p[i]);
    c[static_cast<std::size_t>(i)] = std::cos(p[i]);
  }
  for (int k = 0; k <= m; ++k) {
    const int nfac = (k < m) ? k : m;  // number of leading sine factors in x_k
    for (int j = 0; j < m; ++j) {
      if (j > nfac || (k < m && j > k)) continue;
      double d = 1.0;
      for (int i = 0; i < nfac; ++i) d *= (i == j) ? c[static_cast<std::size_t>(i)] : s[static_cast<std::size_t>(i)];
      if (k < m) d *= (j == k) ? -s[static_cast<std::size_t>(k)] : c[static_cast<std::size_t>(k)];
      jac(k, j) = d;
    }
  }
  return jac;
}

inline std::vector<AxisSpec> sphere_axes(int m) {
  std::vector<AxisSpec> axes(static_cast<std::size_t>(m));
  for (int i = 0; i < m - 1; ++i) axes[static_cast<std::size_t>(i)] = {0.0, std::numbers::pi, false};
  axes[static_cast<std::size_t>(m - 1)] = {0.0, 2.0 * std::numbers::pi, true};
  return axes;
}

}  // namespace detail

/// Round sphere S^(2n+1)(r), outward normal. Normal degree +1.
inline Hypersurface make_sphere(int n, double r) {
  if (n < 1 || n > 3) throw InputError("sphere: n must be in {1, 2, 3}");
  if (!(r > 0.0)) throw InputError("sphere: radius must be positive");
  const int m = 2 * n + 1;

  Hypersurface surf;
  surf.name = "sphere";
  surf.n = n;
  surf.is_round_sphere = true;
  surf.radius = r;
  surf.expected_degree = 1;
  surf.known_volume = std::pow(r, static_cast<double>(m)) * unit_sphere_volume(m);
  surf.ambient_normal = [](const Vec& y) { return normalized(y); };

  Chart chart;
  chart.axes = detail::sphere_axes(m);
  chart.position = [m, r](const Vec& p) { return r * detail::unit_sphere_position(m, p); };
  chart.jacobian = [m, r](const Vec& p) {
    Jacobian j = detail::unit_sphere_jacobian(m, p);
    for (auto& v : j.data) v *= r;
    return j;
  };
  chart.normal = [m](const Vec& p) { return detail::unit_sphere_position(m, p); };
  chart.normal_jacobian = [m](const Vec& p) { return detail::unit_sphere_jacobian(m, p); };
  surf.atlas.push_back(std::move(chart));
  return surf;
}

/// Triaxial ellipsoid sum_i x_i^2 / a_i^2 = 1 in R^4 (m = 3), outward
/// normal. Diffeomorphic to the round sphere, normal degree +1.
inline Hypersurface make_ellipsoid(const std::array<double, 4>& semi_axes) {
  for (double a : semi_axes)
    if (!(a > 0.0)) throw InputError("ellipsoid: semi-axes must be positive");
  const int m = 3;

  Hypersurface surf;
  surf.name = "ellipsoid";
  surf.n = 1;
  surf.expected_degree = 1;
  std::array<double, 4> ax = semi_axes;
  surf.ambient_normal = [ax](const Vec& y) {
    Vec g(4);
    for (int i = 0; i < 4; ++i) g[i] = y[i] / (ax[static_cast<std::size_t>(i)] * ax[static_cast<std::size_t>(i)]);
    return normalized(g);
  };

  Chart chart;
  chart.axes = detail::sphere_axes(m);
  chart.position = [ax, m](const Vec& p) {
    Vec x = detail::unit_sphere_position(m, p);
    for (int i = 0; i < 4; ++i) x[i] *= ax[static_cast<std::size_t>(i)];
    return x;
  };
  chart.jacobian = [ax, m](const Vec& p) {
    Jacobian j = detail::unit_sphere_jacobian(m, p);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < m; ++c) j(r, c) *= ax[static_cast<std::size_t>(r)];
    return j;
  };
  chart.normal = [ax, m](const Vec& p) {
    Vec s = detail::unit_sphere_position(m, p);
    Vec g(4);
    for (int i = 0; i < 4; ++i) g[i] = s[i] / ax[static_cast<std::size_t>(i)];
    return normalized(g);
  };
  // dN = (I - N N^T) diag(1/a) dS / |diag(1/a) S|, with S the unit-sphere
  // position; all factors are closed-form.
  chart.normal_jacobian = [ax, m](const Vec& p) {
    Vec s = detail::unit_sphere_position(m, p);
    Jacobian js = detail::unit_sphere_jacobian(m, p);
    Vec g(4);
    for (int i = 0; i < 4; ++i) g[i] = s[i] / ax[static_cast<std::size_t>(i)];
    double gn = norm(g);
    Vec nrm = g;
    nrm *= 1.0 / gn;
    Jacobian out(4, m);
    for (int c = 0; c < m; ++c) {
      Vec dg(4);
      for (int r = 0; r < 4; ++r) dg[r] = js(r, c) / ax[static_cast<std::size_t>(r)];
      double proj = dot(nrm, dg);
      for (int r = 0; r < 4; ++r) out(r, c) = (dg[r] - proj * nrm[r]) / gn;
    }
    return out;
  };
  surf.atlas.push_back(std::move(chart));
  return surf;
}

/// Tube torus: points at distance rho from the circle of radius R in the
/// x0-x1 plane of R^4. Diffeomorphic to S^1 x S^2, normal degree 0. Chart
/// parameters (theta, alpha, beta): theta around the core circle (periodic),
/// (alpha, beta) spherical angles of the tube direction.
inline Hypersurface make_tube_torus(double big_r, double rho) {
  if (!(big_r > rho && rho > 0.0)) throw InputError("tube-torus: need R > rho > 0");

  Hypersurface surf;
  surf.name = "tube-torus";
  surf.n = 1;
  surf.expected_degree = 0;
  surf.known_volume = 8.0 * std::numbers::pi * std::numbers::pi * big_r * rho * rho;
  surf.ambient_normal = [big_r](const Vec& y) {
    double sigma = std::hypot(y[0], y[1]);
    Vec d = y;
    d[0] -= big_r * y[0] / sigma;
    d[1] -= big_r * y[1] / sigma;
    return normalized(d);
  };

  Chart chart;
  chart.axes = {{0.0, 2.0 * std::numbers::pi, true},
                {0.0, std::numbers::pi, false},
                {0.0, 2.0 * std::numbers::pi, true}};
  chart.position = [big_r, rho](const Vec& p) {
    double ct = std::cos(p[0]), st = std::sin(p[0]);
    double sa = std::sin(p[1]), ca = std::cos(p[1]);
    double cb = std::cos(p[2]), sb = std::sin(p[2]);
    double ring = big_r + rho * sa * cb;
    return Vec{ring * ct, ring * st, rho * sa * sb, rho * ca};
  };
  chart.jacobian = [big_r, rho](const Vec& p) {
    double ct = std::cos(p[0]), st = std::sin(p[0]);
    double sa = std::sin(p[1]), ca = std::cos(p[1]);
    double cb = std::cos(p[2]), sb = std::sin(p[2]);
    double ring = big_r + rho * sa * cb;
    Jacobian j(4, 3);
    j(0, 0) = -ring * st;
    j(1, 0) = ring * ct;
    j(0, 1) = rho * ca * cb * ct;
    j(1, 1) = rho * ca * cb * st;
    j(2, 1) = rho * ca * sb;
    j(3, 1) = -rho * sa;
    j(0, 2) = -rho * sa * sb * ct;
    j(1, 2) = -rho * sa * sb * st;
    j(2, 2) = rho * sa * cb;
    return j;
  };
  chart.normal = [](const Vec& p) {
    double ct = std::cos(p[0]), st = std::sin(p[0]);
    double sa = std::sin(p[1]), ca = std::cos(p[1]);
    double cb = std::cos(p[2]), sb = std::sin(p[2]);
    return Vec{sa * cb * ct, sa * cb * st, sa * sb, ca};
  };
  chart.normal_jacobian = [](const Vec& p) {
    double ct = std::cos(p[0]), st = std::sin(p[0]);
    double sa = std::sin(p[1]), ca = std::cos(p[1]);
    double cb = std::cos(p[2]), sb = std::sin(p[2]);
    Jacobian j(4, 3);
    j(0, 0) = -sa * cb * st;
    j(1, 0) = sa * cb * ct;
    j(0, 1) = ca * cb * ct;
    j(1, 1) = ca * cb * st;
    j(2, 1) = ca * sb;
    j(3, 1) = -sa;
    j(0, 2) = -sa * sb * ct;
    j(1, 2) = -sa * sb * st;
    j(2, 2) = sa * cb;
    return j;
  };
  surf.atlas.push_back(std::move(chart));
  return surf;
}

}  // namespace uvf
