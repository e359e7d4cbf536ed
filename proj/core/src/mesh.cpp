#include "relaxfr/mesh.hpp"

#include <stdexcept>
#include <string>

namespace relaxfr {

BoundaryKind parse_boundary_kind(std::string_view name) {
  if (name == "periodic") return BoundaryKind::Periodic;
  if (name == "wall" || name == "reflecting") {
    return BoundaryKind::ReflectingWall;
  }
  throw std::invalid_argument("unknown boundary kind: " + std::string(name));
}

std::string_view to_string(BoundaryKind kind) {
  return kind == BoundaryKind::Periodic ? "periodic" : "wall";
}

Mesh Mesh::line(double x_lo, double x_hi, int nx, BoundaryKind left,
                BoundaryKind right) {
  if (nx < 1) throw std::invalid_argument("Mesh: nx must be positive");
  if (!(x_hi > x_lo)) throw std::invalid_argument("Mesh: empty domain");
  if ((left == BoundaryKind::Periodic) != (right == BoundaryKind::Periodic)) {
    throw std::invalid_argument("Mesh: periodic sides must come in pairs");
  }
  Mesh m;
  m.dim_ = 1;
  m.x_lo_ = x_lo;
  m.x_hi_ = x_hi;
  m.nx_ = nx;
  m.ny_ = 1;
  m.dx_ = (x_hi - x_lo) / nx;
  m.bc_ = {left, right, BoundaryKind::Periodic, BoundaryKind::Periodic};
  return m;
}

Mesh Mesh::rectangle(double x_lo, double x_hi, double y_lo, double y_hi,
                     int nx, int ny, std::array<BoundaryKind, 4> bc) {
  if (nx < 1 || ny < 1) {
    throw std::invalid_argument("Mesh: element counts must be positive");
  }
  if (!(x_hi > x_lo) || !(y_hi > y_lo)) {
    throw std::invalid_argument("Mesh: empty domain");
  }
  const auto periodic = [&](Side s) {
    return bc[static_cast<int>(s)] == BoundaryKind::Periodic;
  };
  if (periodic(Side::Left) != periodic(Side::Right) ||
      periodic(Side::Bottom) != periodic(Side::Top)) {
    throw std::invalid_argument("Mesh: periodic sides must come in pairs");
  }
  Mesh m;
  m.dim_ = 2;
  m.x_lo_ = x_lo;
  m.x_hi_ = x_hi;
  m.y_lo_ = y_lo;
  m.y_hi_ = y_hi;
  m.nx_ = nx;
  m.ny_ = ny;
  m.dx_ = (x_hi - x_lo) / nx;
  m.dy_ = (y_hi - y_lo) / ny;
  m.bc_ = bc;
  return m;
}

void Mesh::check_element(int e) const {
  if (e < 0 || e >= n_elements()) {
    throw std::out_of_range("Mesh: element index " + std::to_string(e) +
                            " out of range");
  }
}

int Mesh::element_index(int ix, int iy) const {
  if (ix < 0 || ix >= nx_ || iy < 0 || iy >= ny_) {
    throw std::out_of_range("Mesh: element coordinates out of range");
  }
  return ix + nx_ * iy;
}

double Mesh::element_left(int e) const {
  check_element(e);
  return x_lo_ + ix(e) * dx_;
}

double Mesh::element_bottom(int e) const {
  check_element(e);
  return y_lo_ + iy(e) * dy_;
}

double Mesh::ref_to_phys(int e, double xi) const {
  return element_left(e) + xi * dx_;
}

std::array<double, 2> Mesh::ref_to_phys(int e, double xi, double eta) const {
  return {element_left(e) + xi * dx_, element_bottom(e) + eta * dy_};
}

double Mesh::phys_to_ref(int e, double x) const {
  return (x - element_left(e)) / dx_;
}

Neighbor Mesh::neighbor(int e, Side side) const {
  check_element(e);
  int i = ix(e);
  int j = iy(e);
  const bool periodic = boundary(side) == BoundaryKind::Periodic;
  switch (side) {
    case Side::Left:
      if (i == 0 && !periodic) return GhostTag{side};
      i = (i == 0) ? nx_ - 1 : i - 1;
      break;
    case Side::Right:
      if (i == nx_ - 1 && !periodic) return GhostTag{side};
      i = (i == nx_ - 1) ? 0 : i + 1;
      break;
    case Side::Bottom:
      if (dim_ == 1) throw std::invalid_argument("Mesh: no y-sides in 1D");
      if (j == 0 && !periodic) return GhostTag{side};
      j = (j == 0) ? ny_ - 1 : j - 1;
      break;
    case Side::Top:
      if (dim_ == 1) throw std::invalid_argument("Mesh: no y-sides in 1D");
      if (j == ny_ - 1 && !periodic) return GhostTag{side};
      j = (j == ny_ - 1) ? 0 : j + 1;
      break;
  }
  return i + nx_ * j;
}

}  // namespace relaxfr
