#include "relaxfr/tableau.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace relaxfr {

namespace {

std::vector<double> row_sums(const Matrix& a, bool include_diagonal) {
  std::vector<double> c(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < (include_diagonal ? i + 1 : i); ++j) {
      c[i] += a(i, j);
    }
  }
  return c;
}

// Pareschi & Russo (2005), IMEX-SSP3(4,3,3). Implicit part L-stable.
DoubleButcherTableau make_ssp3_433() {
  constexpr double alpha = 0.24169426078821;
  constexpr double beta = 0.06042356519705;
  constexpr double eta = 0.12915286960590;
  DoubleButcherTableau t;
  t.name = "SSP3-IMEX(4,3,3)";
  t.order = 3;
  t.stages = 4;
  t.a_exp = Matrix{{0.0, 0.0, 0.0, 0.0},
                   {0.0, 0.0, 0.0, 0.0},
                   {0.0, 1.0, 0.0, 0.0},
                   {0.0, 0.25, 0.25, 0.0}};
  t.b_exp = {0.0, 1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0};
  t.a_imp = Matrix{{alpha, 0.0, 0.0, 0.0},
                   {-alpha, alpha, 0.0, 0.0},
                   {0.0, 1.0 - alpha, alpha, 0.0},
                   {beta, eta, 0.5 - beta - eta - alpha, alpha}};
  t.b_imp = {0.0, 1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0};
  t.c_exp = row_sums(t.a_exp, false);
  t.c_imp = row_sums(t.a_imp, true);
  return t;
}

// Boscarino, Pareschi & Russo (2013), BPR(3,4,3). Both parts stiffly
// accurate (b equals the last row).
DoubleButcherTableau make_bpr_343() {
  DoubleButcherTableau t;
  t.name = "BPR(3,4,3)";
  t.order = 3;
  t.stages = 5;
  t.a_exp = Matrix{{0.0, 0.0, 0.0, 0.0, 0.0},
                   {1.0, 0.0, 0.0, 0.0, 0.0},
                   {4.0 / 9.0, 2.0 / 9.0, 0.0, 0.0, 0.0},
                   {0.25, 0.0, 0.75, 0.0, 0.0},
                   {0.25, 0.0, 0.75, 0.0, 0.0}};
  t.b_exp = {0.25, 0.0, 0.75, 0.0, 0.0};
  t.a_imp = Matrix{{0.0, 0.0, 0.0, 0.0, 0.0},
                   {0.5, 0.5, 0.0, 0.0, 0.0},
                   {5.0 / 18.0, -1.0 / 9.0, 0.5, 0.0, 0.0},
                   {0.5, 0.0, 0.0, 0.5, 0.0},
                   {0.25, 0.0, 0.75, -0.5, 0.5}};
  t.b_imp = {0.25, 0.0, 0.75, -0.5, 0.5};
  t.c_exp = row_sums(t.a_exp, false);
  t.c_imp = row_sums(t.a_imp, true);
  return t;
}

// Forward / backward Euler pair.
DoubleButcherTableau make_ars_111() {
  DoubleButcherTableau t;
  t.name = "ARS-111";
  t.order = 1;
  t.stages = 2;
  t.a_exp = Matrix{{0.0, 0.0}, {1.0, 0.0}};
  t.b_exp = {0.0, 1.0};
  t.a_imp = Matrix{{0.0, 0.0}, {0.0, 1.0}};
  t.b_imp = {0.0, 1.0};
  t.c_exp = row_sums(t.a_exp, false);
  t.c_imp = row_sums(t.a_imp, true);
  return t;
}

const std::map<std::string, DoubleButcherTableau, std::less<>>& registry() {
  static const auto reg = [] {
    std::map<std::string, DoubleButcherTableau, std::less<>> m;
    for (auto t : {make_ssp3_433(), make_bpr_343(), make_ars_111()}) {
      const OrderReport r = verify_order(t, t.order);
      if (!r.passed) {
        throw std::logic_error("tableau " + t.name + " fails self-check");
      }
      m.emplace(t.name, std::move(t));
    }
    return m;
  }();
  return reg;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> hadamard(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

}  // namespace

const DoubleButcherTableau& get_tableau(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> aliases = {
      {"ssp3", "SSP3-IMEX(4,3,3)"},
      {"ssp3-imex(4,3,3)", "SSP3-IMEX(4,3,3)"},
      {"bpr343", "BPR(3,4,3)"},
      {"bpr(3,4,3)", "BPR(3,4,3)"},
      {"ars111", "ARS-111"},
      {"ars-111", "ARS-111"}};
  const auto& reg = registry();
  if (auto it = reg.find(name); it != reg.end()) return it->second;
  if (auto it = aliases.find(name); it != aliases.end()) {
    return reg.find(it->second)->second;
  }
  throw std::invalid_argument("unknown tableau: " + std::string(name));
}

std::vector<std::string> tableau_names() {
  std::vector<std::string> names;
  for (const auto& [name, tab] : registry()) names.push_back(name);
  return names;
}

OrderReport verify_order(const DoubleButcherTableau& t, int p, double tol) {
  if (p < 1 || p > 3) throw std::invalid_argument("verify_order: p in 1..3");
  OrderReport report;
  const std::size_t s = static_cast<std::size_t>(t.stages);
  auto fail_structure = [&](const std::string& what) {
    report.structural_ok = false;
    report.passed = false;
    report.violations.push_back(what);
  };
  if (t.a_exp.rows() != s || t.a_exp.cols() != s || t.a_imp.rows() != s ||
      t.a_imp.cols() != s || t.b_exp.size() != s || t.b_imp.size() != s ||
      t.c_exp.size() != s || t.c_imp.size() != s) {
    fail_structure("dimension mismatch");
    return report;
  }
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i; j < s; ++j) {
      if (t.a_exp(i, j) != 0.0) {
        fail_structure("explicit matrix not strictly lower triangular");
      }
      if (j > i && t.a_imp(i, j) != 0.0) {
        fail_structure("implicit matrix not lower triangular");
      }
    }
  }
  auto check = [&](const std::string& label, double value, double expected) {
    const double r = std::abs(value - expected);
    report.max_residual = std::max(report.max_residual, r);
    if (r > tol) {
      report.passed = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s = %.17g, expected %.17g",
                    label.c_str(), value, expected);
      report.violations.emplace_back(buf);
    }
  };
  const auto c_exp_sum = row_sums(t.a_exp, false);
  const auto c_imp_sum = row_sums(t.a_imp, true);
  for (std::size_t i = 0; i < s; ++i) {
    check("c~[" + std::to_string(i) + "] - row sum", t.c_exp[i] - c_exp_sum[i],
          0.0);
    check("c[" + std::to_string(i) + "] - row sum", t.c_imp[i] - c_imp_sum[i],
          0.0);
  }
  if (!report.passed) report.structural_ok = false;

  struct Part {
    const char* tag;
    const Matrix* a;
    const std::vector<double>* b;
    const std::vector<double>* c;
  };
  const std::array<Part, 2> parts{Part{"~", &t.a_exp, &t.b_exp, &t.c_exp},
                                  Part{"", &t.a_imp, &t.b_imp, &t.c_imp}};
  const std::vector<double> ones(s, 1.0);
  for (const auto& b : parts) {
    check(std::string("sum b") + b.tag, dot(*b.b, ones), 1.0);
  }
  if (p >= 2) {
    for (const auto& b : parts) {
      for (const auto& c : parts) {
        check(std::string("b") + b.tag + ".c" + c.tag, dot(*b.b, *c.c), 0.5);
      }
    }
  }
  if (p >= 3) {
    for (const auto& b : parts) {
      for (std::size_t x = 0; x < parts.size(); ++x) {
        for (std::size_t y = x; y < parts.size(); ++y) {
          check(std::string("b") + b.tag + ".(c" + parts[x].tag + " c" +
                    parts[y].tag + ")",
                dot(*b.b, hadamard(*parts[x].c, *parts[y].c)), 1.0 / 3.0);
        }
      }
      for (const auto& a : parts) {
        for (const auto& c : parts) {
          check(std::string("b") + b.tag + ".A" + a.tag + ".c" + c.tag,
                dot(*b.b, a.a->apply(*c.c)), 1.0 / 6.0);
        }
      }
    }
  }
  return report;
}

}  // namespace relaxfr
