#pragma once

// Shared small utilities: fixed-capacity vectors, error types, compensated
// summation, a deterministic PRNG, and combinatorial helpers. Everything in
// this toolkit works with dimensions <= 8, so all containers are
// stack-allocated value types.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace uvf {

inline constexpr int kMaxDim = 8;

/// Invalid arguments, catalog misuse, or malformed configuration.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A chart was evaluated at (or numerically too close to) a coordinate
/// singularity: the tangent basis degenerated.
struct ChartSingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative numeric routine failed to converge.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
inline int check_dim(int dim, int max = kMaxDim) {
  if (dim < 0 || dim > max) {
    throw InputError("dimension " + std::to_string(dim) + " out of range [0," +
                     std::to_string(max) + "]");
  }
  return dim;
}
}  // namespace detail

/// Fixed-capacity Euclidean vector of dimension <= 8.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim) : dim_(detail::check_dim(dim)) { data_.fill(0.0); }
  Vec(std::initializer_list<double> xs) : dim_(detail::check_dim(static_cast<int>(xs.size()))) {
    data_.fill(0.0);
    int i = 0;
    for (double x : xs) data_[static_cast<std::size_t>(i++)] = x;
  }

  int dim() const { return dim_; }
  double& operator[](int i) { return data_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return data_[static_cast<std::size_t>(i)]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < dim_; ++i) data_[static_cast<std::size_t>(i)] += o[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < dim_; ++i) data_[static_cast<std::size_t>(i)] -= o[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < dim_; ++i) data_[static_cast<std::size_t>(i)] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, double s) { return a *= s; }

 private:
  int dim_ = 0;
  std::array<double, kMaxDim> data_{};
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec normalized(const Vec& a) {
  double n = norm(a);
  if (n == 0.0) throw NumericalError("cannot normalize the zero vector");
  Vec r = a;
  r *= 1.0 / n;
  return r;
}

/// a += s*b without temporaries.
inline void axpy(double s, const Vec& b, Vec& a) {
  for (int i = 0; i < a.dim(); ++i) a[i] += s * b[i];
}

/// Neumaier-compensated accumulator. All grid reductions in the toolkit go
/// through this type, always in a fixed deterministic order, so that results
/// are reproducible bit-for-bit across runs and thread counts.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// splitmix64: tiny deterministic PRNG with identical output on every
/// platform. Used for seeded perturbation directions and test sampling;
/// intentionally not std::mt19937 + distributions (those are
/// implementation-defined).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Binomial coefficient for the small arguments used here (n <= 16).
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// Calls fn(idx) for every strictly increasing k-tuple idx drawn from
/// {0, ..., n-1}, in lexicographic order. k = 0 yields a single empty tuple.
template <class Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  std::array<int, kMaxDim> idx{};
  if (k == 0) {
    fn(idx.data(), 0);
    return;
  }
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx.data(), k);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace uvf
