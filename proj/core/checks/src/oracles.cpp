#include "kgz/checks/oracles.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kgz/errors.hpp"

namespace kgz::oracle {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<double> lu_solve(const MatrixXd& a, std::span<const double> rhs) {
  VectorXd b(static_cast<Eigen::Index>(rhs.size()));
  for (std::size_t i = 0; i < rhs.size(); ++i) b(static_cast<Eigen::Index>(i)) = rhs[i];
  const VectorXd x = a.partialPivLu().solve(b);
  return {x.data(), x.data() + x.size()};
}

MatrixXd tridiagonal_matrix(std::span<const double> lower, std::span<const double> diag,
                            std::span<const double> upper) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  MatrixXd a = MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    a(i, i) = diag[k];
    if (i > 0) a(i, i - 1) = lower[k];
    if (i + 1 < n) a(i, i + 1) = upper[k];
  }
  return a;
}

GridFn embed(const std::vector<double>& interior) {
  std::vector<double> v(interior.size() + 2, 0.0);
  std::copy(interior.begin(), interior.end(), v.begin() + 1);
  return GridFn(std::move(v));
}

// Closed-form H at node j summed mode by mode with direct std::sin calls.
double mode_sum_H(const InitialLayerData& layer, std::size_t j, double t, double tau) {
  const std::size_t m = layer.grid().cells();
  const double ea = std::pow(layer.eps(), layer.alpha());
  const double eb = std::pow(layer.eps(), layer.beta());
  double sum = 0.0;
  for (std::size_t l = 1; l < m; ++l) {
    const double th = layer.theta()[l - 1];
    const double s = std::sin(th * tau / 2.0);
    const double amp = ea * layer.w0().mode(l) * std::cos(th * t) +
                       eb * layer.w1().mode(l) / th * std::sin(th * t);
    sum += 4.0 / (tau * tau * th * th) * s * s * amp *
           std::sin(static_cast<double>(j * l) * std::numbers::pi / static_cast<double>(m));
  }
  return sum;
}

}  // namespace

std::vector<double> dense_tridiagonal_solve(std::span<const double> lower,
                                            std::span<const double> diag,
                                            std::span<const double> upper,
                                            std::span<const double> rhs) {
  return lu_solve(tridiagonal_matrix(lower, diag, upper), rhs);
}

GridFn dense_poisson(const GridFn& f, const Grid1D& grid) {
  const std::size_t n = grid.interior_size();
  const double ih2 = 1.0 / (grid.h() * grid.h());
  const std::vector<double> off(n, -ih2), diag(n, 2.0 * ih2);
  return embed(lu_solve(tridiagonal_matrix(off, diag, off), f.interior()));
}

GridFn dense_second_difference(const GridFn& u, const Grid1D& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  MatrixXd d = MatrixXd::Zero(n, n);
  const double ih2 = 1.0 / (grid.h() * grid.h());
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    d(i, i - 1) = ih2;
    d(i, i) = -2.0 * ih2;
    d(i, i + 1) = ih2;
  }
  VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = u[static_cast<std::size_t>(i)];
  const VectorXd y = d * x;
  return GridFn(std::vector<double>(y.data(), y.data() + y.size()));
}

std::vector<double> naive_dst(const GridFn& u, const Grid1D& grid) {
  const std::size_t m = grid.cells();
  std::vector<double> c(m - 1, 0.0);
  for (std::size_t l = 1; l < m; ++l) {
    double s = 0.0;
    for (std::size_t j = 1; j < m; ++j) {
      s += u[j] * std::sin(static_cast<double>(j) * static_cast<double>(l) * std::numbers::pi /
                           static_cast<double>(m));
    }
    c[l - 1] = 2.0 / static_cast<double>(m) * s;
  }
  return c;
}

double layer_G(const InitialLayerData& layer, std::size_t j, double t) {
  const std::size_t m = layer.grid().cells();
  const double ea = std::pow(layer.eps(), layer.alpha());
  const double eb = std::pow(layer.eps(), layer.beta());
  double sum = 0.0;
  for (std::size_t l = 1; l < m; ++l) {
    const double th = layer.theta()[l - 1];
    const double amp = ea * layer.w0().mode(l) * std::cos(th * t) +
                       eb * layer.w1().mode(l) / th * std::sin(th * t);
    sum += amp *
           std::sin(static_cast<double>(j * l) * std::numbers::pi / static_cast<double>(m));
  }
  return sum;
}

double quadrature_H(const InitialLayerData& layer, std::size_t j, double t, double tau) {
  using boost::math::quadrature::gauss_kronrod;
  const double theta_max = layer.theta().back();
  const double periods = tau * theta_max / (2.0 * std::numbers::pi);
  const int panels = std::max(10, static_cast<int>(std::ceil(10.0 * periods)));
  const double width = 1.0 / panels;
  double total = 0.0;
  for (int side : {-1, 1}) {
    for (int p = 0; p < panels; ++p) {
      const double lo = p * width;
      const double hi = lo + width;
      auto f = [&](double s) { return (1.0 - s) * layer_G(layer, j, t + side * s * tau); };
      total += gauss_kronrod<double, 31>::integrate(f, lo, hi, 0);
    }
  }
  return total;
}

KgzState naive_step(const KgzState& state, const KgzParams& params,
                    const InitialLayerData& layer) {
  const Grid1D& grid = params.grid;
  const std::size_t n = grid.interior_size();
  const double tau = params.tau;
  const double h = grid.h();
  const double eps = params.eps;
  const double tk = static_cast<double>(state.k) * tau;
  const GridFn& Em = state.E_prev;
  const GridFn& E0 = state.E_curr;
  const GridFn& Fm = state.F_prev;
  const GridFn& F0 = state.F_curr;

  MatrixXd a = MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + 1;
    const double H = mode_sum_H(layer, j, tk, tau);
    const double c = 1.0 - E0[j] * E0[j] + F0[j] + H;
    const auto r = static_cast<Eigen::Index>(i);
    // (E+ - 2E + E-)/tau^2 = [ (E+_{j+1} - 2E+_j + E+_{j-1})/h^2 - c E+_j
    //                          + (E-_{j+1} - 2E-_j + E-_{j-1})/h^2 - c E-_j ] / 2
    a(r, r) = 1.0 / (tau * tau) + 1.0 / (h * h) + c / 2.0;
    if (i > 0) a(r, r - 1) = -1.0 / (2.0 * h * h);
    if (i + 1 < n) a(r, r + 1) = -1.0 / (2.0 * h * h);
    rhs[i] = (2.0 * E0[j] - Em[j]) / (tau * tau) +
             ((Em[j + 1] - 2.0 * Em[j] + Em[j - 1]) / (h * h) - c * Em[j]) / 2.0;
  }
  const GridFn Ep = embed(lu_solve(a, rhs));

  MatrixXd b = MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + 1;
    const auto r = static_cast<Eigen::Index>(i);
    b(r, r) = 1.0 / (tau * tau) + 1.0 / (eps * eps * h * h);
    if (i > 0) b(r, r - 1) = -1.0 / (2.0 * eps * eps * h * h);
    if (i + 1 < n) b(r, r + 1) = -1.0 / (2.0 * eps * eps * h * h);
    const double d2e = (Ep[j] * Ep[j] - 2.0 * E0[j] * E0[j] + Em[j] * Em[j]) / (tau * tau);
    rhs[i] = (2.0 * F0[j] - Fm[j]) / (tau * tau) +
             (Fm[j + 1] - 2.0 * Fm[j] + Fm[j - 1]) / (2.0 * eps * eps * h * h) + d2e;
  }
  const GridFn Fp = embed(lu_solve(b, rhs));
  return KgzState{state.k + 1, static_cast<double>(state.k + 1) * tau, E0, Ep, F0, Fp};
}

GridFn random_grid_fn(const Grid1D& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(grid.size(), 0.0);
  for (std::size_t j = 1; j < grid.cells(); ++j) v[j] = dist(rng);
  return GridFn(std::move(v));
}

SineSpectrum random_spectrum(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SineSpectrum s{std::vector<double>(n)};
  for (double& c : s.coeffs) c = dist(rng);
  return s;
}

double relative_max_diff(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw StructuralError("length mismatch");
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    diff = std::max(diff, std::abs(u[i] - v[i]));
    scale = std::max(scale, std::abs(v[i]));
  }
  return diff / std::max(scale, std::numeric_limits<double>::min());
}

}  // namespace kgz::oracle
