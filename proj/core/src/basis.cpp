#include "relaxfr/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace relaxfr {

namespace {

constexpr int kMaxNewton = 100;

// Second derivative of P_n from the Legendre ODE; valid away from x = +-1.
double legendre_second_derivative(int n, double x) {
  const auto [p, dp] = legendre_with_derivative(n, x);
  return (2.0 * x * dp - n * (n + 1.0) * p) / (1.0 - x * x);
}

// Radau polynomial vanishing at x = 1 and equal to 1 at x = -1.
// Returns (value, d/dx).
std::pair<double, double> right_radau(int m, double x) {
  const auto [pm, dpm] = legendre_with_derivative(m, x);
  const auto [pm1, dpm1] = legendre_with_derivative(m - 1, x);
  const double sign = (m % 2 == 0) ? 0.5 : -0.5;
  return {sign * (pm - pm1), sign * (dpm - dpm1)};
}

// Left correction function g_L on [-1, 1]; g_R(x) = g_L(-x).
std::pair<double, double> left_correction(int degree, NodeKind kind,
                                          double x) {
  const int k = degree + 1;
  if (kind == NodeKind::GaussLegendre) return right_radau(k, x);
  // Huynh's g2: combination of Radau polynomials of degree k and k - 1.
  const auto [r1, dr1] = right_radau(k, x);
  const auto [r0, dr0] = right_radau(k - 1, x);
  const double c1 = (k - 1.0) / (2.0 * k - 1.0);
  const double c0 = k / (2.0 * k - 1.0);
  return {c1 * r1 + c0 * r0, c1 * dr1 + c0 * dr0};
}

}  // namespace

NodeKind parse_node_kind(std::string_view name) {
  if (name == "gl" || name == "GL" || name == "gauss_legendre" ||
      name == "GaussLegendre") {
    return NodeKind::GaussLegendre;
  }
  if (name == "gll" || name == "GLL" || name == "gauss_lobatto" ||
      name == "GaussLobattoLegendre") {
    return NodeKind::GaussLobattoLegendre;
  }
  throw std::invalid_argument("unknown node kind: " + std::string(name));
}

std::string_view to_string(NodeKind kind) {
  return kind == NodeKind::GaussLegendre ? "gl" : "gll";
}

std::pair<double, double> legendre_with_derivative(int n, double x) {
  if (n == 0) return {1.0, 0.0};
  double p_prev = 1.0, p = x;
  double dp_prev = 0.0, dp = 1.0;
  for (int k = 1; k < n; ++k) {
    const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
    const double dp_next = dp_prev + (2.0 * k + 1.0) * p;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return {p, dp};
}

double legendre(int n, double x) { return legendre_with_derivative(n, x).first; }

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(
    int n_points) {
  if (n_points < 1) throw std::invalid_argument("gauss_legendre_rule: n < 1");
  std::vector<double> x(n_points), w(n_points);
  for (int i = 0; i < n_points; ++i) {
    double xi = -std::cos(std::numbers::pi * (i + 0.75) / (n_points + 0.5));
    for (int it = 0; it < kMaxNewton; ++it) {
      const auto [p, dp] = legendre_with_derivative(n_points, xi);
      const double dx = p / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n_points, xi).second;
    x[i] = xi;
    w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
  // Symmetrize so that mirrored nodes agree bit for bit.
  for (int i = 0; i < n_points / 2; ++i) {
    const int j = n_points - 1 - i;
    const double xm = 0.5 * (x[j] - x[i]);
    const double wm = 0.5 * (w[i] + w[j]);
    x[i] = -xm;
    x[j] = xm;
    w[i] = w[j] = wm;
  }
  if (n_points % 2 == 1) x[n_points / 2] = 0.0;
  return {x, w};
}

std::pair<std::vector<double>, std::vector<double>> gauss_lobatto_rule(
    int n_points) {
  if (n_points < 2) throw std::invalid_argument("gauss_lobatto_rule: n < 2");
  const int n = n_points - 1;  // interior nodes are roots of P_n'
  std::vector<double> x(n_points), w(n_points);
  x.front() = -1.0;
  x.back() = 1.0;
  for (int i = 1; i < n; ++i) {
    double xi = -std::cos(std::numbers::pi * i / n);
    for (int it = 0; it < kMaxNewton; ++it) {
      const double dp = legendre_with_derivative(n, xi).second;
      const double dx = dp / legendre_second_derivative(n, xi);
      xi -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    x[i] = xi;
  }
  for (int i = 0; i < n_points; ++i) {
    const double p = legendre(n, x[i]);
    w[i] = 2.0 / (n * (n + 1.0) * p * p);
  }
  for (int i = 0; i < n_points / 2; ++i) {
    const int j = n_points - 1 - i;
    const double xm = 0.5 * (x[j] - x[i]);
    const double wm = 0.5 * (w[i] + w[j]);
    x[i] = -xm;
    x[j] = xm;
    w[i] = w[j] = wm;
  }
  if (n_points % 2 == 1) x[n_points / 2] = 0.0;
  return {x, w};
}

std::vector<double> lagrange_values(std::span<const double> nodes, double xi) {
  const std::size_t n = nodes.size();
  std::vector<double> l(n, 1.0);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (q != p) l[p] *= (xi - nodes[q]) / (nodes[p] - nodes[q]);
    }
  }
  return l;
}

std::pair<std::vector<double>, std::vector<double>> correction_derivatives(
    int degree, NodeKind kind) {
  const BasisData basis = build_basis(degree, kind);
  return {basis.corr_deriv_left, basis.corr_deriv_right};
}

std::pair<double, double> correction_values(int degree, NodeKind kind,
                                            double xi) {
  const double x = 2.0 * xi - 1.0;
  return {left_correction(degree, kind, x).first,
          left_correction(degree, kind, -x).first};
}

Matrix legendre_table(int degree, std::span<const double> nodes) {
  Matrix table(degree + 1, nodes.size());
  for (int j = 0; j <= degree; ++j) {
    const double scale = std::sqrt(2.0 * j + 1.0);
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      table(j, q) = scale * legendre(j, 2.0 * nodes[q] - 1.0);
    }
  }
  return table;
}

BasisData build_basis(int degree, NodeKind kind) {
  if (degree < 0) throw std::invalid_argument("build_basis: degree < 0");
  if (kind == NodeKind::GaussLobattoLegendre && degree < 1) {
    throw std::invalid_argument("build_basis: GLL requires degree >= 1");
  }
  BasisData b;
  b.degree = degree;
  b.node_kind = kind;
  const int n = degree + 1;

  auto [x, w] = kind == NodeKind::GaussLegendre ? gauss_legendre_rule(n)
                                                : gauss_lobatto_rule(n);
  b.nodes.resize(n);
  b.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    b.nodes[i] = 0.5 * (1.0 + x[i]);
    b.weights[i] = 0.5 * w[i];
  }

  // Barycentric weights give the off-diagonal entries; the diagonal is the
  // negative row sum.
  std::vector<double> bary(n, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k != j) bary[j] *= b.nodes[j] - b.nodes[k];
    }
    bary[j] = 1.0 / bary[j];
  }
  b.diff_matrix = Matrix(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dij = (bary[j] / bary[i]) / (b.nodes[i] - b.nodes[j]);
      b.diff_matrix(i, j) = dij;
      diag -= dij;
    }
    b.diff_matrix(i, i) = diag;
  }

  b.corr_deriv_left.resize(n);
  b.corr_deriv_right.resize(n);
  for (int i = 0; i < n; ++i) {
    const double xi = 2.0 * b.nodes[i] - 1.0;
    // d/dxi = 2 d/dx; g_R(x) = g_L(-x) so g_R'(x) = -g_L'(-x).
    b.corr_deriv_left[i] = 2.0 * left_correction(degree, kind, xi).second;
    b.corr_deriv_right[i] = -2.0 * left_correction(degree, kind, -xi).second;
  }

  b.extrap_left = lagrange_values(b.nodes, 0.0);
  b.extrap_right = lagrange_values(b.nodes, 1.0);
  b.legendre_at_nodes = legendre_table(degree, b.nodes);
  return b;
}

}  // namespace relaxfr
