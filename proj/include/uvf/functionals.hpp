#pragma once

// Pointwise densities and global integrals of a unit field v on a closed
// hypersurface M^(2n+1):
//
//   energy          E(v)    = 1/2 int |Dv|^2 + (m/2) vol(M)
//   total bending   B(v)    = int |Dv|^2 / ((m-1) vol(S^m))
//   field volume    vol(v)  = int sqrt(det(I + a a^T))
//   k-th bending    B_k(v)  = int sum det^2(k x k minors of a)
//   eta_k           coefficients of det(h + t a); their integrals recover
//                   the Gauss-map degree: int eta_k = deg binom(n, k/2)
//                   vol(S^(2n+1)) for even k and 0 for odd k
//   sigma_2n        det of the restriction of Dv to the hyperplane normal
//                   to v (upper-left block of a in the adapted frame)
//
// plus the sup-constants of the shape operator used in the lower bounds.
// One grid pass accumulates everything with deterministic compensated
// reductions.

#include <cmath>
#include <cstdint>
#include <optional>

#include "uvf/common.hpp"
#include "uvf/fields.hpp"
#include "uvf/geometry.hpp"
#include "uvf/linalg.hpp"
#include "uvf/parallel.hpp"
#include "uvf/surfaces.hpp"

namespace uvf {

/// All pointwise densities at one quadrature node.
struct DensitySample {
  double weight = 1.0;
  int m = 0;
  double grad_sq = 0.0;     // |Dv|^2 = sum of squared entries of a
  CoefficientVector eta;    // eta[k] = t^k coefficient of det(h + t a)
  double sigma_top = 0.0;   // det of the upper-left (m-1) x (m-1) block of a
  double vol_density = 1.0; // sqrt(det(I + a a^T)), always >= 1
  std::array<double, kMaxDim> bending{};  // bending[k-1] = k-minor square sum
  double eta2_minor = 0.0;  // eta_2 recomputed through the minor expansion
  double shape_v_norm = 0.0;  // |S(v)|
  Vec principal_curvatures;   // eigenvalues of h, descending
};

/// eta_2 by double Laplace expansion: pick two rows of `a` and two columns,
/// pair the 2x2 minor with the complementary minor of `h`:
///   eta_2 = sum_{p<q} sum_{c<d} (-1)^(p+q+c+d) det(a[pq,cd]) det(h-hat)
/// where h-hat drops rows p,q and columns c,d. An independent route to the
/// same coefficient as det_poly_coeffs.
inline double eta2_minor_density(const SquareMatrix& h, const SquareMatrix& a) {
  const int m = h.dim();
  if (a.dim() != m) throw InputError("eta2_minor_density: dimension mismatch");
  if (m < 2) throw InputError("eta2_minor_density: dimension must be >= 2");
  KahanSum sum;
  std::array<int, kMaxDim> crows{}, ccols{};
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      int nr = 0;
      for (int r = 0; r < m; ++r)
        if (r != p && r != q) crows[static_cast<std::size_t>(nr++)] = r;
      for (int c = 0; c < m; ++c) {
        for (int d = c + 1; d < m; ++d) {
          double m2 = a(p, c) * a(q, d) - a(p, d) * a(q, c);
          if (m2 == 0.0) continue;
          int nc = 0;
          for (int cc = 0; cc < m; ++cc)
            if (cc != c && cc != d) ccols[static_cast<std::size_t>(nc++)] = cc;
          double comp = detail::lu_det<double>(m - 2, [&](int r, int cc) {
            return h(crows[static_cast<std::size_t>(r)], ccols[static_cast<std::size_t>(cc)]);
          });
          double sign = ((p + q + c + d) % 2 == 0) ? 1.0 : -1.0;
          sum.add(sign * m2 * comp);
        }
      }
    }
  }
  return sum.value();
}

/// Densities from the adapted-frame matrices alone. Pure; unit tests inject
/// synthetic h, a (e.g. a = 0) through this entry point.
inline DensitySample density_from(const SquareMatrix& h, const SquareMatrix& a, double weight = 1.0) {
  const int m = h.dim();
  if (a.dim() != m) throw InputError("density_from: dimension mismatch");

  DensitySample s;
  s.weight = weight;
  s.m = m;
  s.grad_sq = a.frobenius_sq();
  s.eta = det_poly_coeffs(h, a);

  s.sigma_top = detail::lu_det<double>(m - 1, [&](int r, int c) { return a(r, c); });

  // det(I + a a^T)
  SquareMatrix gram(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double v = (i == j) ? 1.0 : 0.0;
      for (int k = 0; k < m; ++k) v += a(i, k) * a(j, k);
      gram(i, j) = v;
    }
  s.vol_density = std::sqrt(std::max(det(gram), 0.0));

  for (int k = 1; k <= m; ++k) s.bending[static_cast<std::size_t>(k - 1)] = minor_square_sum(a, k);
  s.eta2_minor = eta2_minor_density(h, a);

  double sv = 0.0;
  for (int b = 0; b < m; ++b) sv += h(m - 1, b) * h(m - 1, b);
  s.shape_v_norm = std::sqrt(sv);

  s.principal_curvatures = symmetric_eigen(h).values;
  return s;
}

/// Densities at a surface point: builds the adapted frame for the field and
/// evaluates everything above.
inline DensitySample sample_density(const Hypersurface& surface, const UnitField& field,
                                    const TangentPoint& p, double weight = 1.0) {
  PointFrame pf = point_frame(surface, field, p);
  return density_from(pf.h, pf.a, weight);
}

struct EvaluateOptions {
  int threads = 0;                     // 0 = hardware concurrency
  std::int64_t chunk_size = 8192;      // fixed; reductions are chunk-ordered
  std::optional<double> script_s;      // sup |principal curvature|, enables the
                                       // pointwise eta_2n margin
};

/// Integrals plus pointwise-check margins and numerical diagnostics from one
/// pass over a grid.
struct FunctionalValues {
  int m = 0, n = 0;
  std::string resolution;
  double vol_m = 0.0;
  double dirichlet = 0.0;  // int |Dv|^2
  double energy = 0.0;
  double total_bending = 0.0;
  double volume_v = 0.0;
  std::array<double, kMaxDim> bending_k{};   // [k-1], k = 1..m
  std::array<double, kMaxDim + 1> eta{};     // [k], k = 0..m (top entry ~ 0)
  double eta2_minor = 0.0;
  double abs_sigma_integral = 0.0;  // int |sigma_2n|

  // min over nodes of (B_n density - binom(2n,n) |sigma_2n|); never negative
  // beyond round-off.
  double min_bending_margin = 0.0;
  // min over nodes of (S (vol_density - 1) - |eta_2n|); requires script_s.
  double min_eta_top_margin = 0.0;
  bool has_eta_top_margin = false;

  // diagnostics: worst deviation from the structural invariants
  double max_unit_dev = 0.0;      // | |v| - 1 |
  double max_tangency_dev = 0.0;  // |<v, N>|
  double max_normal_dev = 0.0;    // | |N| - 1 |
  double max_last_row_a = 0.0;    // |last row of a|
  double max_h_asym = 0.0;        // |h - h^T| entry
  double max_top_coeff = 0.0;     // |t^m coefficient of det(h + t a)|
};

namespace detail {

struct PassChunk {
  KahanSum vol, dirichlet, vol_v, abs_sigma, eta2_minor;
  std::array<KahanSum, kMaxDim> bending;
  std::array<KahanSum, kMaxDim + 1> eta;
  double min_bending_margin = 1e300;
  double min_eta_top_margin = 1e300;
  double max_unit_dev = 0.0, max_tangency_dev = 0.0, max_normal_dev = 0.0;
  double max_last_row_a = 0.0, max_h_asym = 0.0, max_top_coeff = 0.0;
};

}  // namespace detail

inline FunctionalValues evaluate_functionals(const Hypersurface& surface, const UnitField& field,
                                             const QuadratureGrid& grid,
                                             const EvaluateOptions& opts = {}) {
  const int m = surface.dim();
  const int n = surface.n;
  const double binom_2n_n = binomial(2 * n, n);
  const std::int64_t total = grid.node_count();

  auto chunks = parallel_chunk_map<detail::PassChunk>(
      total, opts.chunk_size, opts.threads, [&](std::int64_t begin, std::int64_t end) {
        detail::PassChunk c;
        for (std::int64_t i = begin; i < end; ++i) {
          auto [pt, w] = grid.node(i);
          PointFrame pf = point_frame(surface, field, pt);
          DensitySample s = density_from(pf.h, pf.a, w);

          c.vol.add(w);
          c.dirichlet.add(w * s.grad_sq);
          c.vol_v.add(w * s.vol_density);
          c.abs_sigma.add(w * std::abs(s.sigma_top));
          c.eta2_minor.add(w * s.eta2_minor);
          for (int k = 1; k <= m; ++k) c.bending[static_cast<std::size_t>(k - 1)].add(w * s.bending[static_cast<std::size_t>(k - 1)]);
          for (int k = 0; k <= m; ++k) c.eta[static_cast<std::size_t>(k)].add(w * s.eta[k]);

          double bn_margin = s.bending[static_cast<std::size_t>(n - 1)] - binom_2n_n * std::abs(s.sigma_top);
          c.min_bending_margin = std::min(c.min_bending_margin, bn_margin);
          if (opts.script_s) {
            double margin = *opts.script_s * (s.vol_density - 1.0) - std::abs(s.eta[m - 1]);
            c.min_eta_top_margin = std::min(c.min_eta_top_margin, margin);
          }

          Vec v = pf.frame[static_cast<std::size_t>(m - 1)];
          c.max_unit_dev = std::max(c.max_unit_dev, std::abs(norm(v) - 1.0));
          c.max_tangency_dev = std::max(c.max_tangency_dev, std::abs(dot(v, pt.normal)));
          c.max_normal_dev = std::max(c.max_normal_dev, std::abs(norm(pt.normal) - 1.0));
          for (int b = 0; b < m; ++b) c.max_last_row_a = std::max(c.max_last_row_a, std::abs(pf.a(m - 1, b)));
          for (int r = 0; r < m; ++r)
            for (int cc = r + 1; cc < m; ++cc)
              c.max_h_asym = std::max(c.max_h_asym, std::abs(pf.h(r, cc) - pf.h(cc, r)));
          c.max_top_coeff = std::max(c.max_top_coeff, std::abs(s.eta[m]));
        }
        return c;
      });

  KahanSum vol, dirichlet, vol_v, abs_sigma, eta2_minor;
  std::array<KahanSum, kMaxDim> bending;
  std::array<KahanSum, kMaxDim + 1> eta;
  FunctionalValues out;
  out.m = m;
  out.n = n;
  out.resolution = grid.resolution_label();
  out.min_bending_margin = 1e300;
  out.min_eta_top_margin = 1e300;
  for (const detail::PassChunk& c : chunks) {
    vol.add(c.vol.value());
    dirichlet.add(c.dirichlet.value());
    vol_v.add(c.vol_v.value());
    abs_sigma.add(c.abs_sigma.value());
    eta2_minor.add(c.eta2_minor.value());
    for (int k = 0; k < m; ++k) bending[static_cast<std::size_t>(k)].add(c.bending[static_cast<std::size_t>(k)].value());
    for (int k = 0; k <= m; ++k) eta[static_cast<std::size_t>(k)].add(c.eta[static_cast<std::size_t>(k)].value());
    out.min_bending_margin = std::min(out.min_bending_margin, c.min_bending_margin);
    out.min_eta_top_margin = std::min(out.min_eta_top_margin, c.min_eta_top_margin);
    out.max_unit_dev = std::max(out.max_unit_dev, c.max_unit_dev);
    out.max_tangency_dev = std::max(out.max_tangency_dev, c.max_tangency_dev);
    out.max_normal_dev = std::max(out.max_normal_dev, c.max_normal_dev);
    out.max_last_row_a = std::max(out.max_last_row_a, c.max_last_row_a);
    out.max_h_asym = std::max(out.max_h_asym, c.max_h_asym);
    out.max_top_coeff = std::max(out.max_top_coeff, c.max_top_coeff);
  }

  out.vol_m = vol.value();
  out.dirichlet = dirichlet.value();
  out.volume_v = vol_v.value();
  out.abs_sigma_integral = abs_sigma.value();
  out.eta2_minor = eta2_minor.value();
  for (int k = 1; k <= m; ++k) out.bending_k[static_cast<std::size_t>(k - 1)] = bending[static_cast<std::size_t>(k - 1)].value();
  for (int k = 0; k <= m; ++k) out.eta[static_cast<std::size_t>(k)] = eta[static_cast<std::size_t>(k)].value();

  out.energy = 0.5 * out.dirichlet + 0.5 * static_cast<double>(m) * out.vol_m;
  out.total_bending = out.dirichlet / (static_cast<double>(m - 1) * unit_sphere_volume(m));
  out.has_eta_top_margin = opts.script_s.has_value();
  return out;
}

// ---------------------------------------------------------------------------
// Single-functional entry points (each runs its own pass)
// ---------------------------------------------------------------------------

inline double energy(const Hypersurface& s, const UnitField& f, const QuadratureGrid& g) {
  return evaluate_functionals(s, f, g).energy;
}

inline double total_bending(const Hypersurface& s, const UnitField& f, const QuadratureGrid& g) {
  return evaluate_functionals(s, f, g).total_bending;
}

inline double volume_functional(const Hypersurface& s, const UnitField& f, const QuadratureGrid& g) {
  return evaluate_functionals(s, f, g).volume_v;
}

inline double bending_k(const Hypersurface& s, const UnitField& f, const QuadratureGrid& g, int k) {
  if (k < 1 || k > s.dim()) throw InputError("bending_k: order out of range");
  return evaluate_functionals(s, f, g).bending_k[static_cast<std::size_t>(k - 1)];
}

inline double eta_integral(const Hypersurface& s, const UnitField& f, const QuadratureGrid& g, int k) {
  if (k < 0 || k > s.dim()) throw InputError("eta_integral: order out of range");
  return evaluate_functionals(s, f, g).eta[static_cast<std::size_t>(k)];
}

inline double eta2_minor_form(const Hypersurface& s, const UnitField& f, const QuadratureGrid& g) {
  return evaluate_functionals(s, f, g).eta2_minor;
}

/// Rounded Gauss-map degree from int eta_0 = deg vol(S^(2n+1)); the residual
/// flags under-resolved grids when it exceeds 0.05.
struct DegreeEstimate {
  int degree = 0;
  double residual = 0.0;
  double raw = 0.0;
};

inline DegreeEstimate degree_from_eta0(double eta0_integral, int m) {
  DegreeEstimate d;
  d.raw = eta0_integral / unit_sphere_volume(m);
  d.degree = static_cast<int>(std::llround(d.raw));
  d.residual = std::abs(d.raw - static_cast<double>(d.degree));
  return d;
}

inline DegreeEstimate degree_estimate(const Hypersurface& s, const UnitField& f, const QuadratureGrid& g) {
  return degree_from_eta0(evaluate_functionals(s, f, g).eta[0], s.dim());
}

// ---------------------------------------------------------------------------
// Sup-constants of the shape operator
// ---------------------------------------------------------------------------

/// script_s = sup max |principal curvature|; s_bracket[A-1] = S^[A], the sup
/// over points and A-tuples of principal directions of the largest wedge
/// coordinate of S(u_i1) ^ ... ^ S(u_iA). Maxima over a finite grid are
/// lower estimates of the true sups; callers use grids at least twice as
/// dense per axis as the integration grid.
struct SupConstants {
  int m = 0;
  double script_s = 0.0;
  std::array<double, kMaxDim> s_bracket{};
};

inline SupConstants sup_constants(const Hypersurface& surface, const QuadratureGrid& dense_grid,
                                  int threads = 0) {
  const int m = surface.dim();
  struct Chunk {
    double script_s = 0.0;
    std::array<double, kMaxDim> s_bracket{};
  };
  auto chunks = parallel_chunk_map<Chunk>(
      dense_grid.node_count(), 8192, threads, [&](std::int64_t begin, std::int64_t end) {
        Chunk c;
        for (std::int64_t i = begin; i < end; ++i) {
          auto [pt, w] = dense_grid.node(i);
          (void)w;
          PrincipalFrame pr = principal_frame(surface, pt);
          // In the principal frame S(u_i) = lambda_i u_i, so the largest
          // wedge coordinate of any A-tuple is the product of the A largest
          // |lambda|; scanning tuples is equivalent to a sorted prefix
          // product.
          std::array<double, kMaxDim> mags{};
          for (int j = 0; j < m; ++j) mags[static_cast<std::size_t>(j)] = std::abs(pr.curvatures[j]);
          std::sort(mags.begin(), mags.begin() + m, std::greater<>());
          c.script_s = std::max(c.script_s, mags[0]);
          double prod = 1.0;
          for (int A = 1; A <= m; ++A) {
            prod *= mags[static_cast<std::size_t>(A - 1)];
            c.s_bracket[static_cast<std::size_t>(A - 1)] = std::max(c.s_bracket[static_cast<std::size_t>(A - 1)], prod);
          }
        }
        return c;
      });

  SupConstants out;
  out.m = m;
  for (const auto& c : chunks) {
    out.script_s = std::max(out.script_s, c.script_s);
    for (int A = 1; A <= m; ++A)
      out.s_bracket[static_cast<std::size_t>(A - 1)] = std::max(out.s_bracket[static_cast<std::size_t>(A - 1)], c.s_bracket[static_cast<std::size_t>(A - 1)]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Determinant identity for the sphere map x -> N(x) + t v(x)
// ---------------------------------------------------------------------------

/// Assembles the differential of x -> N + t v in the adapted frame and
/// compares det against sqrt(1 + t^2) * sum eta_k t^k. The two sides agree
/// identically; the check exercises frame, h, a, and coefficient extraction
/// together.
struct PhiTCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

inline PhiTCheck phi_t_determinant_check(const Hypersurface& surface, const UnitField& field,
                                         const TangentPoint& p, double t) {
  PointFrame pf = point_frame(surface, field, p);
  const int m = pf.m;
  const double root = std::sqrt(1.0 + t * t);

  SquareMatrix block(m);
  for (int i = 0; i + 1 < m; ++i)
    for (int j = 0; j + 1 < m; ++j) block(i, j) = pf.h(i, j) + t * pf.a(i, j);
  for (int i = 0; i + 1 < m; ++i) block(i, m - 1) = pf.h(m - 1, i) + t * pf.a(i, m - 1);
  for (int b = 0; b < m; ++b) block(m - 1, b) = root * pf.h(m - 1, b);

  PhiTCheck out;
  out.lhs = det(block);
  CoefficientVector eta = det_poly_coeffs(pf.h, pf.a);
  double poly = 0.0;
  for (int k = m - 1; k >= 0; --k) poly = poly * t + eta[k];
  out.rhs = root * poly;
  return out;
}

}  // namespace uvf
