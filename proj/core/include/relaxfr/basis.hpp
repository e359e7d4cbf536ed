#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "relaxfr/matrix.hpp"

namespace relaxfr {

enum class NodeKind { GaussLegendre, GaussLobattoLegendre };

NodeKind parse_node_kind(std::string_view name);
std::string_view to_string(NodeKind kind);

/// Legendre polynomial P_n on [-1, 1] (standard normalization P_n(1) = 1).
double legendre(int n, double x);

/// P_n and its derivative evaluated together by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x);

/// One-dimensional nodal basis on the reference interval [0, 1].
///
/// All operators act on values at the solution points. The correction
/// function samples are derivatives with respect to the reference
/// coordinate, so physical derivatives divide by the element width.
struct BasisData {
  int degree = 0;
  NodeKind node_kind = NodeKind::GaussLegendre;
  std::vector<double> nodes;
  std::vector<double> weights;
  Matrix diff_matrix;  // D(i, j) = l_j'(xi_i)
  std::vector<double> corr_deriv_left;
  std::vector<double> corr_deriv_right;
  std::vector<double> extrap_left;   // l_p(0)
  std::vector<double> extrap_right;  // l_p(1)
  Matrix legendre_at_nodes;          // (j, q) = L_j(2 xi_q - 1), orthonormal

  int n_nodes() const noexcept { return degree + 1; }
};

/// Throws std::invalid_argument for a negative degree, or degree 0 with GLL.
BasisData build_basis(int degree, NodeKind kind);

/// Gauss rule with `n_points` points on [-1, 1]; returns (nodes, weights).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(
    int n_points);
/// Gauss-Lobatto rule with `n_points >= 2` points on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_lobatto_rule(
    int n_points);

/// Derivatives of the left and right FR correction functions at the solution
/// points of `build_basis(degree, kind)`: Radau for GL, g2 for GLL.
std::pair<std::vector<double>, std::vector<double>> correction_derivatives(
    int degree, NodeKind kind);

/// Values of the correction functions themselves at reference coordinate xi.
std::pair<double, double> correction_values(int degree, NodeKind kind,
                                            double xi);

/// Legendre polynomials orthonormal in L2([0, 1]) sampled at `nodes`:
/// entry (j, q) = sqrt(2j + 1) P_j(2 xi_q - 1).
Matrix legendre_table(int degree, std::span<const double> nodes);

/// Lagrange basis through `nodes` evaluated at xi.
std::vector<double> lagrange_values(std::span<const double> nodes, double xi);

}  // namespace relaxfr
