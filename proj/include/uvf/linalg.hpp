#pragma once

// Dense kernels for small square matrices (dim <= 8): determinants, minors,
// determinant-polynomial coefficients, minor-square sums, wedge-product max
// norms, and a Jacobi eigensolver for symmetric matrices. These are the
// pointwise building blocks of every curvature invariant in the toolkit.

#include <algorithm>
#include <array>
#include <cmath>

#include "uvf/common.hpp"

namespace uvf {

/// Dense square matrix of dimension <= 8, row-major. operator()(r, c) reads
/// entry at row r, column c, zero-based.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int dim) : dim_(detail::check_dim(dim)) { data_.fill(0.0); }

  static SquareMatrix identity(int dim) {
    SquareMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }
  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * dim_ + c)]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * dim_ + c)]; }

  SquareMatrix transposed() const {
    SquareMatrix t(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  double frobenius_sq() const {
    double s = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) s += data_[static_cast<std::size_t>(i)] * data_[static_cast<std::size_t>(i)];
    return s;
  }

  double max_abs() const {
    double s = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) s = std::max(s, std::abs(data_[static_cast<std::size_t>(i)]));
    return s;
  }

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix r(a.dim_);
    for (int i = 0; i < a.dim_ * a.dim_; ++i) r.data_[static_cast<std::size_t>(i)] = a.data_[static_cast<std::size_t>(i)] + b.data_[static_cast<std::size_t>(i)];
    return r;
  }
  friend SquareMatrix operator*(double s, SquareMatrix a) {
    for (int i = 0; i < a.dim_ * a.dim_; ++i) a.data_[static_cast<std::size_t>(i)] *= s;
    return a;
  }
  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix r(a.dim_);
    for (int i = 0; i < a.dim_; ++i)
      for (int k = 0; k < a.dim_; ++k) {
        double aik = a(i, k);
        for (int j = 0; j < a.dim_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

 private:
  int dim_ = 0;
  std::array<double, kMaxDim * kMaxDim> data_{};
};

/// Selector for a k x k sub-matrix: strictly increasing row and column index
/// tuples of equal length.
struct MinorIndex {
  std::array<int, kMaxDim> rows{};
  std::array<int, kMaxDim> cols{};
  int k = 0;

  static MinorIndex of(std::initializer_list<int> r, std::initializer_list<int> c) {
    if (r.size() != c.size()) throw InputError("minor index tuples must have equal length");
    MinorIndex idx;
    idx.k = static_cast<int>(r.size());
    int i = 0;
    for (int v : r) idx.rows[static_cast<std::size_t>(i++)] = v;
    i = 0;
    for (int v : c) idx.cols[static_cast<std::size_t>(i++)] = v;
    return idx;
  }

  void validate(int dim) const {
    if (k < 0 || k > dim) throw InputError("minor order out of range");
    for (int i = 0; i < k; ++i) {
      if (rows[static_cast<std::size_t>(i)] < 0 || rows[static_cast<std::size_t>(i)] >= dim ||
          cols[static_cast<std::size_t>(i)] < 0 || cols[static_cast<std::size_t>(i)] >= dim)
        throw InputError("minor index out of range");
      if (i > 0 && (rows[static_cast<std::size_t>(i)] <= rows[static_cast<std::size_t>(i - 1)] ||
                    cols[static_cast<std::size_t>(i)] <= cols[static_cast<std::size_t>(i - 1)]))
        throw InputError("minor index tuples must be strictly increasing");
    }
  }
};

/// Coefficients of a degree <= dim polynomial; index k holds the t^k term.
struct CoefficientVector {
  std::array<double, kMaxDim + 1> coeffs{};
  int size = 0;  // = dim + 1

  double operator[](int k) const { return coeffs[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return coeffs[static_cast<std::size_t>(k)]; }

  double eval(double t) const {
    double r = 0.0;
    for (int k = size - 1; k >= 0; --k) r = r * t + coeffs[static_cast<std::size_t>(k)];
    return r;
  }
};

namespace detail {

// LU determinant with partial pivoting, generic over the scalar so the same
// code runs in double (hot path) and long double (coefficient extraction).
template <class T, class Get>
T lu_det(int k, Get&& get) {
  std::array<T, kMaxDim * kMaxDim> m{};
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) m[static_cast<std::size_t>(r * k + c)] = get(r, c);
  T det = T(1);
  for (int p = 0; p < k; ++p) {
    int piv = p;
    T best = m[static_cast<std::size_t>(p * k + p)] < T(0) ? -m[static_cast<std::size_t>(p * k + p)] : m[static_cast<std::size_t>(p * k + p)];
    for (int r = p + 1; r < k; ++r) {
      T v = m[static_cast<std::size_t>(r * k + p)] < T(0) ? -m[static_cast<std::size_t>(r * k + p)] : m[static_cast<std::size_t>(r * k + p)];
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == T(0)) return T(0);
    if (piv != p) {
      for (int c = p; c < k; ++c) std::swap(m[static_cast<std::size_t>(p * k + c)], m[static_cast<std::size_t>(piv * k + c)]);
      det = -det;
    }
    T d = m[static_cast<std::size_t>(p * k + p)];
    det *= d;
    for (int r = p + 1; r < k; ++r) {
      T f = m[static_cast<std::size_t>(r * k + p)] / d;
      for (int c = p + 1; c < k; ++c) m[static_cast<std::size_t>(r * k + c)] -= f * m[static_cast<std::size_t>(p * k + c)];
    }
  }
  return det;
}

}  // namespace detail

inline double det(const SquareMatrix& m) {
  return detail::lu_det<double>(m.dim(), [&](int r, int c) { return m(r, c); });
}

/// Determinant of the sub-matrix selected by idx; the empty minor (k = 0) is 1.
inline double minor_det(const SquareMatrix& m, const MinorIndex& idx) {
  idx.validate(m.dim());
  return detail::lu_det<double>(idx.k, [&](int r, int c) {
    return m(idx.rows[static_cast<std::size_t>(r)], idx.cols[static_cast<std::size_t>(c)]);
  });
}

/// Coefficients c_0..c_d with det(H + t*A) = sum_k c_k t^k.
///
/// det(H + t*A) is a polynomial of degree <= d, so its coefficients are
/// recovered exactly (up to conditioning) from d+1 samples at the integer
/// nodes 0, 1, -1, 2, -2, ...: evaluate the determinant at each node and
/// solve the Vandermonde system. Samples and solve run in long double; the
/// fully expanded permutation sum lives in the test suite as the oracle.
inline CoefficientVector det_poly_coeffs(const SquareMatrix& h, const SquareMatrix& a) {
  if (h.dim() != a.dim()) throw InputError("det_poly_coeffs: dimension mismatch");
  const int d = h.dim();
  const int npts = d + 1;

  std::array<long double, kMaxDim + 1> nodes{};
  for (int j = 0; j < npts; ++j) {
    int mag = (j + 1) / 2;
    nodes[static_cast<std::size_t>(j)] = (j % 2 == 1) ? static_cast<long double>(mag) : static_cast<long double>(-mag);
  }

  std::array<long double, kMaxDim + 1> values{};
  for (int j = 0; j < npts; ++j) {
    long double t = nodes[static_cast<std::size_t>(j)];
    values[static_cast<std::size_t>(j)] = detail::lu_det<long double>(d, [&](int r, int c) {
      return static_cast<long double>(h(r, c)) + t * static_cast<long double>(a(r, c));
    });
  }

  // Solve V c = values by Gaussian elimination with partial pivoting.
  std::array<long double, (kMaxDim + 1) * (kMaxDim + 2)> vm{};
  auto at = [&](int r, int c) -> long double& { return vm[static_cast<std::size_t>(r * (npts + 1) + c)]; };
  for (int r = 0; r < npts; ++r) {
    long double p = 1.0L;
    for (int c = 0; c < npts; ++c) {
      at(r, c) = p;
      p *= nodes[static_cast<std::size_t>(r)];
    }
    at(r, npts) = values[static_cast<std::size_t>(r)];
  }
  for (int p = 0; p < npts; ++p) {
    int piv = p;
    for (int r = p + 1; r < npts; ++r)
      if (std::abs(at(r, p)) > std::abs(at(piv, p))) piv = r;
    if (piv != p)
      for (int c = p; c <= npts; ++c) std::swap(at(p, c), at(piv, c));
    for (int r = p + 1; r < npts; ++r) {
      long double f = at(r, p) / at(p, p);
      for (int c = p; c <= npts; ++c) at(r, c) -= f * at(p, c);
    }
  }
  CoefficientVector out;
  out.size = npts;
  for (int r = npts - 1; r >= 0; --r) {
    long double s = at(r, npts);
    for (int c = r + 1; c < npts; ++c) s -= at(r, c) * static_cast<long double>(out[c]);
    out[r] = static_cast<double>(s / at(r, r));
  }
  return out;
}

/// Sum of the squares of all k x k minors, over every strictly increasing
/// row/column tuple pair. Deterministic lexicographic order, compensated sum.
inline double minor_square_sum(const SquareMatrix& m, int k) {
  if (k < 1 || k > m.dim()) throw InputError("minor_square_sum: order out of range");
  const int d = m.dim();
  KahanSum sum;
  for_each_combination(d, k, [&](const int* rows, int) {
    for_each_combination(d, k, [&](const int* cols, int) {
      double mv = detail::lu_det<double>(k, [&](int r, int c) { return m(rows[r], cols[c]); });
      sum.add(mv * mv);
    });
  });
  return sum.value();
}

/// Max norm on Lambda^A: the largest |A x A minor| of the matrix whose
/// columns are the given vectors, over all strictly increasing choices of A
/// coordinate axes. Vectors must be expressed in an orthonormal basis.
inline double wedge_max_norm(const Vec* vectors, int count) {
  if (count < 1) throw InputError("wedge_max_norm: empty vector list");
  const int d = vectors[0].dim();
  if (count > d) throw InputError("wedge_max_norm: more vectors than dimensions");
  for (int i = 1; i < count; ++i)
    if (vectors[i].dim() != d) throw InputError("wedge_max_norm: mixed dimensions");
  double best = 0.0;
  for_each_combination(d, count, [&](const int* axes, int) {
    double mv = detail::lu_det<double>(count, [&](int r, int c) { return vectors[c][axes[r]]; });
    best = std::max(best, std::abs(mv));
  });
  return best;
}

inline double wedge_max_norm(std::initializer_list<Vec> vectors) {
  std::array<Vec, kMaxDim> buf;
  int n = 0;
  for (const Vec& v : vectors) buf[static_cast<std::size_t>(n++)] = v;
  return wedge_max_norm(buf.data(), n);
}

/// For a 2n x 2n matrix, returns (sum of squared n x n minors,
/// binom(2n, n) * |det M|). The first is never below the second; callers
/// assert the inequality.
inline std::pair<double, double> minor_inequality_check(const SquareMatrix& m) {
  if (m.dim() % 2 != 0 || m.dim() == 0) throw InputError("minor_inequality_check: dimension must be even");
  const int n = m.dim() / 2;
  double lhs = minor_square_sum(m, n);
  double rhs = binomial(m.dim(), n) * std::abs(det(m));
  return {lhs, rhs};
}

/// k-th elementary symmetric function of the given values (e_0 = 1).
inline double elementary_symmetric(const Vec& values, int k) {
  if (k < 0 || k > values.dim()) throw InputError("elementary_symmetric: order out of range");
  KahanSum sum;
  for_each_combination(values.dim(), k, [&](const int* idx, int kk) {
    double p = 1.0;
    for (int i = 0; i < kk; ++i) p *= values[idx[i]];
    sum.add(p);
  });
  return sum.value();
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues are sorted descending; column j of `vectors` is the
/// eigenvector for values[j], sign-fixed so its first nonzero entry is
/// positive. Deterministic for identical input.
struct SymmetricEigen {
  Vec values;
  SquareMatrix vectors;
};

inline SymmetricEigen symmetric_eigen(const SquareMatrix& m_in) {
  const int d = m_in.dim();
  SquareMatrix a = m_in;
  // Work on the symmetrized matrix so tiny asymmetries cannot stall sweeps.
  for (int r = 0; r < d; ++r)
    for (int c = r + 1; c < d; ++c) {
      double s = 0.5 * (a(r, c) + a(c, r));
      a(r, c) = s;
      a(c, r) = s;
    }
  SquareMatrix v = SquareMatrix::identity(d);

  const double scale = std::max(a.max_abs(), 1e-300);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= 1e-15 * scale) break;
    if (sweep == 63) throw NumericalError("jacobi eigensolver failed to converge");
    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int i = 0; i < d; ++i) {
          double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < d; ++i) {
          double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (int i = 0; i < d; ++i) {
          double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  SymmetricEigen out;
  out.values = Vec(d);
  out.vectors = SquareMatrix(d);
  std::array<int, kMaxDim> order{};
  for (int i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.begin() + d, [&](int x, int y) {
    if (a(x, x) != a(y, y)) return a(x, x) > a(y, y);
    return x < y;
  });
  for (int j = 0; j < d; ++j) {
    int src = order[static_cast<std::size_t>(j)];
    out.values[j] = a(src, src);
    double sign = 1.0;
    for (int i = 0; i < d; ++i) {
      if (std::abs(v(i, src)) > 1e-12) {
        sign = v(i, src) > 0 ? 1.0 : -1.0;
        break;
      }
    }
    for (int i = 0; i < d; ++i) out.vectors(i, j) = sign * v(i, src);
  }
  return out;
}

}  // namespace uvf
