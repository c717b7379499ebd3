#include "kgz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgz/errors.hpp"

namespace kgz {

Grid1D::Grid1D(double a, double b, std::size_t cells) : a_(a), b_(b), cells_(cells) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
    throw ParameterError("grid requires finite endpoints with a < b");
  }
  if (cells < 2) throw ParameterError("grid requires at least 2 cells");
  h_ = (b - a) / static_cast<double>(cells);
}

Grid1D Grid1D::with_spacing(double a, double b, double h) {
  if (!(h > 0.0)) throw ParameterError("mesh size h must be positive");
  const double ratio = (b - a) / h;
  const double cells = std::round(ratio);
  if (cells < 2.0 || std::abs(ratio - cells) > 1e-9 * ratio) {
    throw ParameterError("mesh size h = " + std::to_string(h) +
                         " does not divide the domain length " + std::to_string(b - a));
  }
  return Grid1D(a, b, static_cast<std::size_t>(cells));
}

double Grid1D::node(std::size_t j) const {
  if (j == cells_) return b_;
  if (j > cells_) throw StructuralError("node index out of range");
  return a_ + static_cast<double>(j) * h_;
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(size());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = node(j);
  return x;
}

GridFn::GridFn(const Grid1D& grid) : values_(grid.size(), 0.0) {}

GridFn::GridFn(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 3) throw StructuralError("grid function needs at least 3 nodes");
  if (values_.front() != 0.0 || values_.back() != 0.0) {
    throw StructuralError("grid function violates the homogeneous Dirichlet boundary");
  }
}

GridFn GridFn::with_zero_boundary(std::vector<double> values) {
  if (values.size() < 3) throw StructuralError("grid function needs at least 3 nodes");
  values.front() = 0.0;
  values.back() = 0.0;
  return GridFn(std::move(values));
}

std::span<double> GridFn::interior() noexcept {
  return std::span<double>(values_).subspan(1, values_.size() - 2);
}

std::span<const double> GridFn::interior() const noexcept {
  return std::span<const double>(values_).subspan(1, values_.size() - 2);
}

GridFn& GridFn::operator+=(const GridFn& other) {
  if (other.size() != size()) throw StructuralError("grid function length mismatch");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

GridFn& GridFn::operator-=(const GridFn& other) {
  if (other.size() != size()) throw StructuralError("grid function length mismatch");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

GridFn& GridFn::operator*=(double c) {
  for (double& v : interior()) v *= c;
  return *this;
}

void require_on_grid(const GridFn& u, const Grid1D& grid) {
  if (u.size() != grid.size()) {
    throw StructuralError("grid function has " + std::to_string(u.size()) +
                          " entries, grid has " + std::to_string(grid.size()) + " nodes");
  }
}

GridFn diff_second(const GridFn& u, const Grid1D& grid) {
  require_on_grid(u, grid);
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  std::vector<double> v(u.size(), 0.0);
  for (std::size_t j = 1; j < grid.cells(); ++j) {
    v[j] = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * inv_h2;
  }
  return GridFn(std::move(v));
}

std::vector<double> diff_forward(const GridFn& u, const Grid1D& grid) {
  require_on_grid(u, grid);
  std::vector<double> w(grid.cells());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = (u[j + 1] - u[j]) / grid.h();
  return w;
}

GridNorms norms(const GridFn& u, const Grid1D& grid) {
  require_on_grid(u, grid);
  GridNorms out;
  double sum = 0.0;
  for (double v : u.interior()) sum += v * v;
  out.l2 = std::sqrt(grid.h() * sum);

  double grad = 0.0;
  for (std::size_t j = 0; j < grid.cells(); ++j) {
    const double d = (u[j + 1] - u[j]) / grid.h();
    grad += d * d;
  }
  out.h1_semi = std::sqrt(grid.h() * grad);

  for (double v : u.values()) out.inf = std::max(out.inf, std::abs(v));
  return out;
}

double inner(const GridFn& u, const GridFn& v, const Grid1D& grid) {
  require_on_grid(u, grid);
  require_on_grid(v, grid);
  double sum = 0.0;
  for (std::size_t j = 1; j < grid.cells(); ++j) sum += u[j] * v[j];
  return grid.h() * sum;
}

double inner_shifted(std::span<const double> w1, std::span<const double> w2,
                     const Grid1D& grid) {
  if (w1.size() != grid.cells() || w2.size() != grid.cells()) {
    throw StructuralError("staggered vectors must have M entries");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < w1.size(); ++j) sum += w1[j] * w2[j];
  return grid.h() * sum;
}

}  // namespace kgz
