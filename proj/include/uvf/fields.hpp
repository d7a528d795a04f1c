#pragma once

// Smooth global unit tangent vector fields on catalog surfaces. Every field
// is specified through an ambient extension (a unit vector field defined in
// a neighborhood of M), so covariant derivatives reduce to tangential
// projections of ambient directional derivatives. Extensions with cheap
// closed-form Jacobians provide them; the rest are differentiated by central
// differences with step 1e-5.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "uvf/common.hpp"
#include "uvf/geometry.hpp"
#include "uvf/linalg.hpp"
#include "uvf/surfaces.hpp"

namespace uvf {

/// Ambient-space Jacobian of a field extension: entry (i, j) = d v_i / d y_j.
using AmbientJacobianFn = std::function<Jacobian(const Vec&)>;

struct UnitField {
  std::string name;
  std::function<Vec(const Vec&)> ambient;  // unit tangent value near M
  AmbientJacobianFn ambient_jacobian;      // optional closed form

  Vec value(const TangentPoint& p) const { return ambient(p.position); }
};

namespace detail {

inline constexpr double kFieldFdStep = 1e-5;

/// Directional derivative of the ambient extension along direction d at y.
inline Vec ambient_derivative(const UnitField& field, const Vec& y, const Vec& d) {
  if (field.ambient_jacobian) return field.ambient_jacobian(y).apply(d);
  Vec yp = y, ym = y;
  axpy(kFieldFdStep, d, yp);
  axpy(-kFieldFdStep, d, ym);
  Vec vp = field.ambient(yp), vm = field.ambient(ym);
  Vec out(vp.dim());
  for (int i = 0; i < out.dim(); ++i) out[i] = (vp[i] - vm[i]) / (2.0 * kFieldFdStep);
  return out;
}

/// The standard complex structure pairing coordinates (0,1), (2,3), ...
inline Vec complex_structure(const Vec& y) {
  Vec out(y.dim());
  for (int i = 0; i + 1 < y.dim(); i += 2) {
    out[i] = -y[i + 1];
    out[i + 1] = y[i];
  }
  return out;
}

}  // namespace detail

/// Hopf field on a round sphere: v(x) = J x / |x|, tangent to the fibers of
/// the circle fibration. Closed-form Jacobian.
inline UnitField hopf_field(const Hypersurface& surface) {
  if (!surface.is_round_sphere) throw InputError("hopf field: surface must be a round sphere");
  UnitField f;
  f.name = "hopf";
  f.ambient = [](const Vec& y) { return normalized(detail::complex_structure(y)); };
  f.ambient_jacobian = [](const Vec& y) {
    // d/dy (J y / |y|) = J/|y| - (J y) y^T / |y|^3
    const int d = y.dim();
    double r = norm(y);
    Vec jy = detail::complex_structure(y);
    Jacobian out(d, d);
    for (int i = 0; i + 1 < d; i += 2) {
      out(i, i + 1) = -1.0 / r;
      out(i + 1, i) = 1.0 / r;
    }
    double r3 = r * r * r;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out(i, j) -= jy[i] * y[j] / r3;
    return out;
  };
  return f;
}

/// Unit field on the tube torus pointing along the core-circle direction.
inline UnitField circle_field(const Hypersurface& surface) {
  if (surface.name != "tube-torus") throw InputError("circle field: surface must be the tube torus");
  UnitField f;
  f.name = "circle";
  f.ambient = [](const Vec& y) {
    double sigma = std::hypot(y[0], y[1]);
    return Vec{-y[1] / sigma, y[0] / sigma, 0.0, 0.0};
  };
  f.ambient_jacobian = [](const Vec& y) {
    double sigma = std::hypot(y[0], y[1]);
    double s3 = sigma * sigma * sigma;
    Jacobian out(4, 4);
    out(0, 0) = y[0] * y[1] / s3;
    out(0, 1) = -1.0 / sigma + y[1] * y[1] / s3;
    out(1, 0) = 1.0 / sigma - y[0] * y[0] / s3;
    out(1, 1) = -y[0] * y[1] / s3;
    return out;
  };
  return f;
}

/// Tangential projection of J x, normalized: a smooth global unit field on
/// the ellipsoid (and on round spheres, where it coincides with the Hopf
/// field since J x is already tangent there).
inline UnitField jproj_field(const Hypersurface& surface) {
  if (!surface.is_round_sphere && surface.name != "ellipsoid")
    throw InputError("jproj field: surface must be a sphere or the ellipsoid");
  auto normal_ext = surface.ambient_normal;
  UnitField f;
  f.name = "jproj";
  f.ambient = [normal_ext](const Vec& y) {
    Vec u = detail::complex_structure(y);
    Vec nrm = normal_ext(y);
    axpy(-dot(u, nrm), nrm, u);
    return normalized(u);
  };
  return f;
}

/// Seeded smooth perturbation of a base field:
///   v' = normalize(v + amplitude * P w),
/// where w is a constant ambient direction chosen by the seed and P projects
/// onto the tangent space orthogonally to v. amplitude in [0, 1).
inline UnitField perturbed_field(const Hypersurface& surface, const UnitField& base,
                                 double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0 && amplitude < 1.0))
    throw InputError("perturbed field: amplitude must be in [0, 1)");
  SplitMix64 rng(seed);
  Vec w(surface.ambient_dim());
  for (int i = 0; i < w.dim(); ++i) w[i] = rng.uniform(-1.0, 1.0);
  w = normalized(w);

  auto normal_ext = surface.ambient_normal;
  auto base_ambient = base.ambient;
  UnitField f;
  f.name = "perturbed";
  f.ambient = [normal_ext, base_ambient, amplitude, w](const Vec& y) {
    Vec v = base_ambient(y);
    Vec nrm = normal_ext(y);
    Vec pw = w;
    axpy(-dot(w, nrm), nrm, pw);
    axpy(-dot(pw, v), v, pw);
    Vec u = v;
    axpy(amplitude, pw, u);
    return normalized(u);
  };
  return f;
}

/// The covariant-derivative matrix a(A, B) = <D_{e_B} v, e_A> in the adapted
/// frame. The last row is zero up to round-off because v is unit.
inline SquareMatrix covariant_matrix(const UnitField& field, const PointFrame& frame) {
  const int m = frame.m;
  Vec v_here = field.ambient(frame.base.position);
  if (norm(v_here - frame.frame[static_cast<std::size_t>(m - 1)]) > 1e-8)
    throw InputError("covariant_matrix: frame does not end with the field direction");
  SquareMatrix a(m);
  for (int b = 0; b < m; ++b) {
    Vec d = detail::ambient_derivative(field, frame.base.position, frame.frame[static_cast<std::size_t>(b)]);
    for (int A = 0; A < m; ++A) a(A, b) = dot(d, frame.frame[static_cast<std::size_t>(A)]);
  }
  return a;
}

/// Adapted frame at p with both curvature matrices filled.
inline PointFrame point_frame(const Hypersurface& surface, const UnitField& field, const TangentPoint& p) {
  Vec v = field.value(p);
  PointFrame pf = adapted_frame(surface, p, v);
  pf.a = covariant_matrix(field, pf);
  return pf;
}

}  // namespace uvf
