#include "relaxfr/crkfr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "relaxfr/boundary.hpp"
#include "relaxfr/errors.hpp"

namespace relaxfr {

void local_deriv(std::span<const double> nodal, const BasisData& basis,
                 double h, int dim, int direction, int n_vars,
                 std::span<double> out) {
  const int n = basis.n_nodes();
  const int lines = dim == 1 ? 1 : n;
  const int stride_dir = direction == 0 ? 1 : n;
  const int stride_line = direction == 0 ? n : 1;
  const Matrix& D = basis.diff_matrix;
  const double inv_h = 1.0 / h;
  for (int line = 0; line < lines; ++line) {
    for (int i = 0; i < n; ++i) {
      const int qi = line * stride_line + i * stride_dir;
      for (int k = 0; k < n_vars; ++k) {
        const double fi = nodal[qi * n_vars + k];
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          const int qj = line * stride_line + j * stride_dir;
          acc += D(i, j) * (nodal[qj * n_vars + k] - fi);
        }
        out[qi * n_vars + k] = acc * inv_h;
      }
    }
  }
}

void time_avg_numflux(std::span<const double> f_minus,
                      std::span<const double> f_plus,
                      std::span<const double> u_minus,
                      std::span<const double> u_plus, double a,
                      std::span<double> out) {
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = 0.5 * (f_minus[k] + f_plus[k]) - 0.5 * a * (u_plus[k] - u_minus[k]);
  }
}

double compute_dt(const Mesh& mesh, int degree, std::array<double, 2> a,
                  double cfl) {
  double limit = mesh.dx() / a[0];
  if (mesh.dim() == 2) limit = std::min(limit, mesh.dy() / a[1]);
  return cfl * limit / (2.0 * degree + 1.0);
}

CrkfrScheme::CrkfrScheme(std::shared_ptr<const EquationSystem> eq, Mesh mesh,
                         BasisData basis, DoubleButcherTableau tableau)
    : eq_(std::move(eq)),
      mesh_(std::move(mesh)),
      basis_(std::move(basis)),
      tableau_(std::move(tableau)) {
  if (eq_->dim() != mesh_.dim()) {
    throw std::invalid_argument("equation and mesh dimensions differ");
  }
  layout_ = AugmentedLayout{eq_->n_vars(), eq_->dim()};
  n1d_ = basis_.n_nodes();
  npe_ = mesh_.dim() == 1 ? n1d_ : n1d_ * n1d_;
  weights_.resize(npe_);
  for (int q = 0; q < npe_; ++q) {
    weights_[q] = basis_.weights[q % n1d_];
    if (mesh_.dim() == 2) weights_[q] *= basis_.weights[q / n1d_];
  }
  // face traces as rows over the element's nodes, for the positivity limiter
  const int n_faces = 2 * mesh_.dim();
  trace_points_ = Matrix(static_cast<std::size_t>(n_faces) *
                             (mesh_.dim() == 1 ? 1 : n1d_),
                         npe_);
  std::size_t row = 0;
  for (int f = 0; f < n_faces; ++f) {
    const auto& ext = f % 2 == 0 ? basis_.extrap_left : basis_.extrap_right;
    const int lines = mesh_.dim() == 1 ? 1 : n1d_;
    for (int line = 0; line < lines; ++line, ++row) {
      for (int i = 0; i < n1d_; ++i) {
        const int q = f < 2 ? i + n1d_ * line : line + n1d_ * i;
        trace_points_(row, q) = ext[i];
      }
    }
  }
  for (int d = 0; d < mesh_.dim(); ++d) {
    for (Side s : d == 0 ? std::array{Side::Left, Side::Right}
                         : std::array{Side::Bottom, Side::Top}) {
      if (mesh_.boundary(s) == BoundaryKind::ReflectingWall &&
          !eq_->reflection_parity(d)) {
        throw std::invalid_argument("reflecting walls are not supported for " +
                                    std::string(eq_->name()));
      }
    }
  }
}

std::array<double, 2> CrkfrScheme::node_coords(int e, int q) const {
  const double x = mesh_.ref_to_phys(e, basis_.nodes[q % n1d_]);
  if (mesh_.dim() == 1) return {x, 0.0};
  return {x, mesh_.element_bottom(e) + basis_.nodes[q / n1d_] * mesh_.dy()};
}

NodalField CrkfrScheme::make_physical_field() const {
  return NodalField(mesh_.n_elements(), npe_, layout_.n_phys);
}

NodalField CrkfrScheme::make_augmented_field() const {
  return NodalField(mesh_.n_elements(), npe_, layout_.n_total());
}

void CrkfrScheme::element_trace(std::span<const double> element, Side side,
                                int line, std::span<double> out) const {
  const int nv = layout_.n_total();
  const bool along_x = side == Side::Left || side == Side::Right;
  const auto& l = (side == Side::Left || side == Side::Bottom)
                      ? basis_.extrap_left
                      : basis_.extrap_right;
  const int stride = along_x ? 1 : n1d_;
  const int base = along_x ? line * n1d_ : line;
  // v_0 + sum_p l_p (v_p - v_0) keeps constants exact.
  const double* v0 = element.data() + static_cast<std::size_t>(base) * nv;
  for (int k = 0; k < nv; ++k) {
    double acc = 0.0;
    for (int p = 1; p < n1d_; ++p) {
      acc += l[p] * (element[(base + p * stride) * nv + k] - v0[k]);
    }
    out[k] = v0[k] + acc;
  }
}

void CrkfrScheme::stage_loop(const NodalField& wn, double dt,
                             std::array<double, 2> a,
                             std::span<const double> eps, StageWorkspace& ws,
                             bool keep_stages,
                             const PositivityConfig* stage_limiter) const {
  const int s = tableau_.stages;
  const int nv = layout_.n_total();
  const int m = layout_.n_phys;
  const int dim = mesh_.dim();
  const std::size_t stride = wn.element_stride();
  const auto* euler = dynamic_cast<const CompressibleEuler*>(eq_.get());
  if (stage_limiter && !euler) {
    throw std::invalid_argument("stage limiter requires the Euler equations");
  }

  if (ws.time_avg_solution.n_elements() != wn.n_elements() ||
      ws.time_avg_solution.n_vars() != nv) {
    ws.time_avg_solution = make_augmented_field();
    ws.dt_source = make_augmented_field();
  }
  ws.time_avg_solution.time = wn.time;
  if (keep_stages) {
    ws.stages.assign(s, make_augmented_field());
  } else {
    ws.stages.clear();
  }

  // Stage j's flux derivative is only needed if a later stage uses it.
  std::vector<bool> needs_deriv(s, false);
  for (int j = 0; j < s; ++j) {
    for (int i = j + 1; i < s; ++i) {
      if (tableau_.a_exp(i, j) != 0.0) needs_deriv[j] = true;
    }
  }

  std::vector<double> deriv(static_cast<std::size_t>(s) * stride);
  std::vector<double> dts(static_cast<std::size_t>(s) * stride);
  std::vector<double> w(stride), flux(stride), tmp(stride);

  for (int e = 0; e < wn.n_elements(); ++e) {
    const auto w0 = wn.element(e);
    auto uavg = ws.time_avg_solution.element(e);
    auto savg = ws.dt_source.element(e);
    std::fill(uavg.begin(), uavg.end(), 0.0);
    std::fill(savg.begin(), savg.end(), 0.0);

    for (int i = 0; i < s; ++i) {
      std::copy(w0.begin(), w0.end(), w.begin());
      for (int j = 0; j < i; ++j) {
        const double ae = -dt * tableau_.a_exp(i, j);
        const double ai = tableau_.a_imp(i, j);
        const double* dj = deriv.data() + j * stride;
        const double* sj = dts.data() + j * stride;
        if (ae != 0.0) {
          for (std::size_t k = 0; k < stride; ++k) w[k] += ae * dj[k];
        }
        if (ai != 0.0) {
          for (std::size_t k = 0; k < stride; ++k) w[k] += ai * sj[k];
        }
      }
      if (stage_limiter) {
        limit_element(w, nv, weights_, *euler, *stage_limiter, e,
                      &trace_points_);
      }

      double* si = dts.data() + i * stride;
      for (int q = 0; q < npe_; ++q) {
        std::span<double> node(w.data() + q * nv, nv);
        const auto u = node.first(m);
        const bool finite = std::all_of(node.begin(), node.end(),
                                        [](double x) { return std::isfinite(x); });
        if (!finite) {
          throw NonFiniteError("non-finite stage state in element " +
                                   std::to_string(e) + ", stage " +
                                   std::to_string(i + 1),
                               e);
        }
        if (!eq_->admissible(u)) {
          throw AdmissibilityError("non-admissible stage state in element " +
                                       std::to_string(e) + ", stage " +
                                       std::to_string(i + 1),
                                   e, i + 1);
        }
        implicit_stage_solve(layout_, node, tableau_.a_imp(i, i), dt, eps[e],
                             *eq_, std::span<double>(si + q * nv, nv));
      }

      if (needs_deriv[i]) {
        double* di = deriv.data() + i * stride;
        std::fill(di, di + stride, 0.0);
        for (int d = 0; d < dim; ++d) {
          for (int q = 0; q < npe_; ++q) {
            augment_flux(layout_, std::span<const double>(w.data() + q * nv, nv),
                         d, a, std::span<double>(flux.data() + q * nv, nv));
          }
          local_deriv(flux, basis_, mesh_.width(d), dim, d, nv, tmp);
          for (std::size_t k = 0; k < stride; ++k) di[k] += tmp[k];
        }
      }

      const double bt = tableau_.b_exp[i];
      const double bi = tableau_.b_imp[i];
      for (std::size_t k = 0; k < stride; ++k) {
        uavg[k] += bt * (w[k] - w0[k]);
        savg[k] += bi * si[k];
      }
      if (keep_stages) {
        auto dst = ws.stages[i].element(e);
        std::copy(w.begin(), w.end(), dst.begin());
      }
    }
    for (std::size_t k = 0; k < stride; ++k) uavg[k] += w0[k];
  }
}

std::size_t CrkfrScheme::face_offset(int direction, int face, int line) const {
  const int nv = layout_.n_total();
  const int lines = mesh_.dim() == 1 ? 1 : n1d_;
  std::size_t base = 0;
  if (direction == 1) {
    base = static_cast<std::size_t>(mesh_.nx() + 1) * mesh_.ny() * lines * nv;
  }
  return base + (static_cast<std::size_t>(face) * lines + line) * nv;
}

void CrkfrScheme::face_fluxes(const StageWorkspace& ws, std::array<double, 2> a,
                              std::vector<double>& fluxes) const {
  const int nv = layout_.n_total();
  const int nx = mesh_.nx();
  const int ny = mesh_.ny();
  const int dim = mesh_.dim();
  const int lines = dim == 1 ? 1 : n1d_;
  std::size_t total = static_cast<std::size_t>(nx + 1) * ny * lines * nv;
  if (dim == 2) total += static_cast<std::size_t>(nx) * (ny + 1) * lines * nv;
  fluxes.assign(total, 0.0);

  std::vector<double> um(nv), up(nv), fm(nv), fp(nv);
  const NodalField& U = ws.time_avg_solution;

  for (int d = 0; d < dim; ++d) {
    const Side lo_side = d == 0 ? Side::Left : Side::Bottom;
    const Side hi_side = d == 0 ? Side::Right : Side::Top;
    const bool periodic = mesh_.boundary(lo_side) == BoundaryKind::Periodic;
    const int n_along = d == 0 ? nx : ny;
    const int n_across = d == 0 ? ny : nx;
    for (int t = 0; t < n_across; ++t) {
      for (int f = 0; f <= n_along; ++f) {
        auto element_at = [&](int k) {
          return d == 0 ? mesh_.element_index(k, t) : mesh_.element_index(t, k);
        };
        int e_minus = f - 1;
        int e_plus = f;
        if (periodic) {
          if (e_minus < 0) e_minus = n_along - 1;
          if (e_plus == n_along) e_plus = 0;
        }
        const int face = d == 0 ? f + (nx + 1) * t : t + nx * f;
        for (int line = 0; line < lines; ++line) {
          if (e_minus >= 0 && e_minus < n_along) {
            element_trace(U.element(element_at(e_minus)), hi_side, line, um);
          }
          if (e_plus >= 0 && e_plus < n_along) {
            element_trace(U.element(element_at(e_plus)), lo_side, line, up);
          }
          if (e_minus < 0) wall_ghost(*eq_, layout_, d, up, um);
          if (e_plus >= n_along) wall_ghost(*eq_, layout_, d, um, up);
          augment_flux(layout_, um, d, a, fm);
          augment_flux(layout_, up, d, a, fp);
          time_avg_numflux(fm, fp, um, up, a[d],
                           std::span<double>(fluxes.data() +
                                                 face_offset(d, face, line),
                                             nv));
        }
      }
    }
  }
}

void CrkfrScheme::fr_evolve(NodalField& w, const StageWorkspace& ws,
                            const std::vector<double>& fluxes, double dt,
                            std::array<double, 2> a) const {
  const int nv = layout_.n_total();
  const int dim = mesh_.dim();
  const int lines = dim == 1 ? 1 : n1d_;
  const std::size_t stride = w.element_stride();
  std::vector<double> rhs(stride), flux(stride), deriv(stride);
  std::vector<double> trace(nv), f_lo(nv), f_hi(nv);

  for (int e = 0; e < w.n_elements(); ++e) {
    const auto U = ws.time_avg_solution.element(e);
    std::fill(rhs.begin(), rhs.end(), 0.0);
    for (int d = 0; d < dim; ++d) {
      const double h = mesh_.width(d);
      for (int q = 0; q < npe_; ++q) {
        augment_flux(layout_, U.subspan(q * nv, nv), d, a,
                     std::span<double>(flux.data() + q * nv, nv));
      }
      local_deriv(flux, basis_, h, dim, d, nv, deriv);
      for (std::size_t k = 0; k < stride; ++k) rhs[k] += deriv[k];

      const Side lo_side = d == 0 ? Side::Left : Side::Bottom;
      const Side hi_side = d == 0 ? Side::Right : Side::Top;
      const int ix = mesh_.ix(e);
      const int iy = mesh_.iy(e);
      const int face_lo = d == 0 ? ix + (mesh_.nx() + 1) * iy : ix + mesh_.nx() * iy;
      const int face_hi = d == 0 ? face_lo + 1 : face_lo + mesh_.nx();
      for (int line = 0; line < lines; ++line) {
        element_trace(U, lo_side, line, trace);
        augment_flux(layout_, trace, d, a, f_lo);
        element_trace(U, hi_side, line, trace);
        augment_flux(layout_, trace, d, a, f_hi);
        const double* num_lo = fluxes.data() + face_offset(d, face_lo, line);
        const double* num_hi = fluxes.data() + face_offset(d, face_hi, line);
        for (int i = 0; i < n1d_; ++i) {
          const int q = d == 0 ? i + n1d_ * line : line + n1d_ * i;
          const double gl = basis_.corr_deriv_left[i] / h;
          const double gr = basis_.corr_deriv_right[i] / h;
          for (int k = 0; k < nv; ++k) {
            rhs[q * nv + k] +=
                (num_hi[k] - f_hi[k]) * gr + (num_lo[k] - f_lo[k]) * gl;
          }
        }
      }
    }
    auto we = w.element(e);
    const auto ds = ws.dt_source.element(e);
    for (std::size_t k = 0; k < stride; ++k) {
      we[k] = we[k] - dt * rhs[k] + ds[k];
      if (!std::isfinite(we[k])) {
        throw NonFiniteError("non-finite value after update in element " +
                                 std::to_string(e),
                             e);
      }
    }
  }
  w.time += dt;
}

void CrkfrScheme::step(NodalField& w, double dt, std::array<double, 2> a,
                       std::span<const double> eps,
                       const PositivityConfig* stage_limiter) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  if (static_cast<int>(eps.size()) != mesh_.n_elements()) {
    throw std::invalid_argument("step: need one eps per element");
  }
  stage_loop(w, dt, a, eps, workspace_, false, stage_limiter);
  face_fluxes(workspace_, a, face_buffer_);
  fr_evolve(w, workspace_, face_buffer_, dt, a);
}

StepStats CrkfrScheme::apply_positivity(NodalField& w,
                                        const PositivityConfig& cfg) const {
  StepStats stats;
  const auto* euler = dynamic_cast<const CompressibleEuler*>(eq_.get());
  if (!cfg.enabled || !euler) return stats;
  for (int e = 0; e < w.n_elements(); ++e) {
    const LimitResult r = limit_element(w.element(e), w.n_vars(), weights_,
                                        *euler, cfg, e, &trace_points_);
    if (r.limited()) ++stats.limited_elements;
  }
  return stats;
}

std::vector<double> CrkfrScheme::integrate(const NodalField& w) const {
  const double vol = mesh_.dim() == 1 ? mesh_.dx() : mesh_.dx() * mesh_.dy();
  std::vector<double> total(w.n_vars(), 0.0);
  for (int e = 0; e < w.n_elements(); ++e) {
    std::vector<double> local(w.n_vars(), 0.0);
    for (int q = 0; q < npe_; ++q) {
      const auto v = w.node(e, q);
      for (int k = 0; k < w.n_vars(); ++k) local[k] += weights_[q] * v[k];
    }
    for (int k = 0; k < w.n_vars(); ++k) total[k] += vol * local[k];
  }
  return total;
}

}  // namespace relaxfr
