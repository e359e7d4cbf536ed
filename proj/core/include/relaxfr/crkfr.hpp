#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "relaxfr/basis.hpp"
#include "relaxfr/equations.hpp"
#include "relaxfr/field.hpp"
#include "relaxfr/matrix.hpp"
#include "relaxfr/mesh.hpp"
#include "relaxfr/positivity.hpp"
#include "relaxfr/relaxation.hpp"
#include "relaxfr/tableau.hpp"

namespace relaxfr {

/// Derivative along `direction` of nodal values on one element:
/// out = (1/h) D f, applied line by line in 2D. Written as
/// sum_j D_ij (f_j - f_i) so constants differentiate to exactly zero.
void local_deriv(std::span<const double> nodal, const BasisData& basis,
                 double h, int dim, int direction, int n_vars,
                 std::span<double> out);

/// Time-averaged Rusanov flux for the linear relaxation system:
/// F_num = (F- + F+)/2 - a/2 (U+ - U-).
void time_avg_numflux(std::span<const double> f_minus,
                      std::span<const double> f_plus,
                      std::span<const double> u_minus,
                      std::span<const double> u_plus, double a,
                      std::span<double> out);

/// dt = cfl * min(dx / a_1, dy / a_2) / (2N + 1).
double compute_dt(const Mesh& mesh, int degree, std::array<double, 2> a,
                  double cfl);

/// Per-step accumulators of the stage loop.
struct StageWorkspace {
  NodalField time_avg_solution;  // U = sum b~_i w^(i)
  NodalField dt_source;          // dt * S, S = sum b_i s(w^(i))
  std::vector<NodalField> stages;  // filled only when keep_stages is set
};

struct StepStats {
  std::size_t limited_elements = 0;
};

/// Compact Runge-Kutta FR IMEX update for the Jin-Xin relaxation system.
///
/// Inner stages are element-local (local flux derivatives plus the
/// point-implicit source); elements couple only through one time-averaged
/// numerical flux per face in the final update.
class CrkfrScheme {
 public:
  CrkfrScheme(std::shared_ptr<const EquationSystem> eq, Mesh mesh,
              BasisData basis, DoubleButcherTableau tableau);

  const EquationSystem& equation() const noexcept { return *eq_; }
  const Mesh& mesh() const noexcept { return mesh_; }
  const BasisData& basis() const noexcept { return basis_; }
  const DoubleButcherTableau& tableau() const noexcept { return tableau_; }
  const AugmentedLayout& layout() const noexcept { return layout_; }
  int nodes_per_element() const noexcept { return npe_; }
  /// Tensor-product quadrature weights on the reference element.
  std::span<const double> weights() const noexcept { return weights_; }

  /// Physical coordinates of solution point q of element e.
  std::array<double, 2> node_coords(int e, int q) const;

  NodalField make_physical_field() const;
  NodalField make_augmented_field() const;

  /// Runs the s inner stages on every element. `eps` holds one value per
  /// element and stays frozen for the step. If `stage_limiter` is non-null
  /// the u block of each stage is limited before the source solve.
  void stage_loop(const NodalField& wn, double dt, std::array<double, 2> a,
                  std::span<const double> eps, StageWorkspace& ws,
                  bool keep_stages = false,
                  const PositivityConfig* stage_limiter = nullptr) const;

  /// Numerical flux at every face, from traces of the time-averaged solution.
  /// Layout: x-faces first ((nx + 1) * ny faces, n1d^(dim-1) points each),
  /// then y-faces in 2D (nx * (ny + 1) faces).
  void face_fluxes(const StageWorkspace& ws, std::array<double, 2> a,
                   std::vector<double>& fluxes) const;

  /// w <- w - dt d_x^FR F + dt S.
  void fr_evolve(NodalField& w, const StageWorkspace& ws,
                 const std::vector<double>& fluxes, double dt,
                 std::array<double, 2> a) const;

  /// Full update of w by dt (stages, faces, evolve).
  void step(NodalField& w, double dt, std::array<double, 2> a,
            std::span<const double> eps,
            const PositivityConfig* stage_limiter = nullptr);

  /// Scaling limiter on the u block of every element (Euler only). The
  /// floors are enforced at the solution points and at the face traces.
  StepStats apply_positivity(NodalField& w, const PositivityConfig& cfg) const;

  /// Quadrature integral over the domain of every variable.
  std::vector<double> integrate(const NodalField& w) const;

  /// Trace of an element's nodal values on one side; `line` selects the
  /// transverse node in 2D.
  void element_trace(std::span<const double> element, Side side, int line,
                     std::span<double> out) const;

 private:
  std::size_t face_offset(int direction, int face, int line) const;

  std::shared_ptr<const EquationSystem> eq_;
  Mesh mesh_;
  BasisData basis_;
  DoubleButcherTableau tableau_;
  AugmentedLayout layout_;
  int n1d_;
  int npe_;
  std::vector<double> weights_;
  Matrix trace_points_;
  StageWorkspace workspace_;
  std::vector<double> face_buffer_;
};

}  // namespace relaxfr
