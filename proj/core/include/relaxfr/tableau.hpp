#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "relaxfr/matrix.hpp"

namespace relaxfr {

/// Paired explicit / diagonally implicit Runge-Kutta tableaux.
struct DoubleButcherTableau {
  std::string name;
  int order = 0;
  int stages = 0;
  Matrix a_exp;  // strictly lower triangular
  std::vector<double> b_exp;
  std::vector<double> c_exp;
  Matrix a_imp;  // lower triangular
  std::vector<double> b_imp;
  std::vector<double> c_imp;
};

/// Registered names: "SSP3-IMEX(4,3,3)", "BPR(3,4,3)", "ARS-111". Short
/// aliases ssp3, bpr343, ars111 are accepted. Throws std::invalid_argument.
const DoubleButcherTableau& get_tableau(std::string_view name);
std::vector<std::string> tableau_names();

struct OrderReport {
  bool structural_ok = true;
  bool passed = true;
  double max_residual = 0.0;
  std::vector<std::string> violations;
};

/// Structure (triangularity, row sums, consistency) plus classical and IMEX
/// coupling order conditions up to order p <= 3.
OrderReport verify_order(const DoubleButcherTableau& tab, int p,
                         double tol = 1e-12);

}  // namespace relaxfr
