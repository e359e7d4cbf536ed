#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace relaxfr {

/// Nodal values per element, per solution point, per variable. Storage is
/// element-major, then node (x-fastest in 2D), then variable.
class NodalField {
 public:
  NodalField() = default;
  NodalField(int n_elements, int nodes_per_element, int n_vars)
      : n_elements_(n_elements),
        nodes_per_element_(nodes_per_element),
        n_vars_(n_vars),
        values_(static_cast<std::size_t>(n_elements) * nodes_per_element *
                    n_vars,
                0.0) {}

  int n_elements() const noexcept { return n_elements_; }
  int nodes_per_element() const noexcept { return nodes_per_element_; }
  int n_vars() const noexcept { return n_vars_; }
  std::size_t element_stride() const noexcept {
    return static_cast<std::size_t>(nodes_per_element_) * n_vars_;
  }

  std::span<double> element(int e) {
    return {values_.data() + e * element_stride(), element_stride()};
  }
  std::span<const double> element(int e) const {
    return {values_.data() + e * element_stride(), element_stride()};
  }
  std::span<double> node(int e, int q) {
    return {values_.data() + e * element_stride() +
                static_cast<std::size_t>(q) * n_vars_,
            static_cast<std::size_t>(n_vars_)};
  }
  std::span<const double> node(int e, int q) const {
    return {values_.data() + e * element_stride() +
                static_cast<std::size_t>(q) * n_vars_,
            static_cast<std::size_t>(n_vars_)};
  }

  std::vector<double>& values() noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double time = 0.0;

 private:
  int n_elements_ = 0;
  int nodes_per_element_ = 0;
  int n_vars_ = 0;
  std::vector<double> values_;
};

}  // namespace relaxfr
