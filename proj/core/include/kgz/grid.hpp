#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kgz {

/// Uniform mesh x_j = a + j*h, j = 0..M, on [a, b] with M cells.
class Grid1D {
 public:
  Grid1D(double a, double b, std::size_t cells);

  /// Builds the grid whose spacing is `h`. (b - a)/h must be an integer to
  /// within 1e-9 relative, otherwise ParameterError.
  static Grid1D with_spacing(double a, double b, double h);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double h() const noexcept { return h_; }
  double length() const noexcept { return b_ - a_; }
  /// Number of cells M.
  std::size_t cells() const noexcept { return cells_; }
  /// Number of nodes M + 1.
  std::size_t size() const noexcept { return cells_ + 1; }
  /// Number of interior nodes M - 1.
  std::size_t interior_size() const noexcept { return cells_ - 1; }

  /// x_j; x_0 == a and x_M == b exactly.
  double node(std::size_t j) const;
  std::vector<double> nodes() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double a_;
  double b_;
  std::size_t cells_;
  double h_;
};

/// Node vector in X_M: length M + 1 with values[0] == values[M] == 0.
class GridFn {
 public:
  GridFn() = default;
  /// Zero function on `grid`.
  explicit GridFn(const Grid1D& grid);
  /// Takes ownership of `values`; both boundary entries must already be
  /// exactly zero (StructuralError otherwise).
  explicit GridFn(std::vector<double> values);

  /// Copies `values` and forces the two boundary entries to zero.
  static GridFn with_zero_boundary(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  std::span<const double> values() const noexcept { return values_; }
  /// Writable view of entries 1..M-1. Boundary entries are not reachable.
  std::span<double> interior() noexcept;
  std::span<const double> interior() const noexcept;

  GridFn& operator+=(const GridFn& other);
  GridFn& operator-=(const GridFn& other);
  GridFn& operator*=(double c);

  friend GridFn operator+(GridFn lhs, const GridFn& rhs) { return lhs += rhs; }
  friend GridFn operator-(GridFn lhs, const GridFn& rhs) { return lhs -= rhs; }
  friend GridFn operator*(double c, GridFn u) { return u *= c; }
  friend bool operator==(const GridFn&, const GridFn&) = default;

 private:
  std::vector<double> values_;
};

/// Discrete norms on X_M.
struct GridNorms {
  double l2 = 0.0;       ///< sqrt(h * sum_{j=1}^{M-1} u_j^2)
  double h1_semi = 0.0;  ///< sqrt(h * sum_{j=0}^{M-1} (delta_x^+ u_j)^2)
  double inf = 0.0;      ///< max_j |u_j|
};

/// Throws StructuralError unless u.size() == grid.size().
void require_on_grid(const GridFn& u, const Grid1D& grid);

/// Centered second difference at interior nodes; boundary entries are 0.
GridFn diff_second(const GridFn& u, const Grid1D& grid);

/// Forward difference (u_{j+1} - u_j)/h for j = 0..M-1.
std::vector<double> diff_forward(const GridFn& u, const Grid1D& grid);

GridNorms norms(const GridFn& u, const Grid1D& grid);

/// (u, v) = h * sum_{j=1}^{M-1} u_j v_j.
double inner(const GridFn& u, const GridFn& v, const Grid1D& grid);

/// <w1, w2> = h * sum_{j=0}^{M-1} w1_j w2_j over length-M staggered vectors.
double inner_shifted(std::span<const double> w1, std::span<const double> w2,
                     const Grid1D& grid);

/// Samples f at every node and zeroes both boundary entries.
template <class Fn>
GridFn sample(const Grid1D& grid, Fn&& f) {
  std::vector<double> v(grid.size(), 0.0);
  for (std::size_t j = 1; j < grid.cells(); ++j) v[j] = f(grid.node(j));
  return GridFn(std::move(v));
}

}  // namespace kgz
