#pragma once

#include <array>
#include <string_view>
#include <variant>

namespace relaxfr {

enum class BoundaryKind { Periodic, ReflectingWall };
enum class Side { Left = 0, Right = 1, Bottom = 2, Top = 3 };

BoundaryKind parse_boundary_kind(std::string_view name);
std::string_view to_string(BoundaryKind kind);

/// Returned by Mesh::neighbor when the face lies on a wall.
struct GhostTag {
  Side side;
  bool operator==(const GhostTag&) const = default;
};

using Neighbor = std::variant<int, GhostTag>;

/// Uniform Cartesian mesh in 1D or 2D. Elements are numbered x-fastest:
/// e = ix + nx * iy.
class Mesh {
 public:
  static Mesh line(double x_lo, double x_hi, int nx, BoundaryKind left,
                   BoundaryKind right);
  static Mesh rectangle(double x_lo, double x_hi, double y_lo, double y_hi,
                        int nx, int ny, std::array<BoundaryKind, 4> bc);

  int dim() const noexcept { return dim_; }
  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  int n_elements() const noexcept { return nx_ * ny_; }
  double dx() const noexcept { return dx_; }
  double dy() const noexcept { return dy_; }
  double x_lo() const noexcept { return x_lo_; }
  double x_hi() const noexcept { return x_hi_; }
  double y_lo() const noexcept { return y_lo_; }
  double y_hi() const noexcept { return y_hi_; }
  BoundaryKind boundary(Side side) const noexcept {
    return bc_[static_cast<int>(side)];
  }
  /// Width of the element along `direction` (0 = x, 1 = y).
  double width(int direction) const noexcept {
    return direction == 0 ? dx_ : dy_;
  }

  int element_index(int ix, int iy = 0) const;
  int ix(int e) const noexcept { return e % nx_; }
  int iy(int e) const noexcept { return e / nx_; }

  double element_left(int e) const;
  double element_bottom(int e) const;

  /// x = x_{e-1/2} + xi * dx. Throws std::out_of_range for a bad element.
  double ref_to_phys(int e, double xi) const;
  std::array<double, 2> ref_to_phys(int e, double xi, double eta) const;
  double phys_to_ref(int e, double x) const;

  Neighbor neighbor(int e, Side side) const;

 private:
  void check_element(int e) const;

  int dim_ = 1;
  double x_lo_ = 0.0, x_hi_ = 1.0, y_lo_ = 0.0, y_hi_ = 1.0;
  int nx_ = 1, ny_ = 1;
  double dx_ = 1.0, dy_ = 1.0;
  std::array<BoundaryKind, 4> bc_{};
};

}  // namespace relaxfr
