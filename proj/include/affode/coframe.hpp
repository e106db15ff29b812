#pragma once

#include <string>
#include <utility>
#include <vector>

#include "affode/forms.hpp"

namespace affode {

namespace detail {

// Gauss-Jordan inverse over the rational-function field. Pivots are chosen by
// lowest total degree to keep intermediate entries small.
inline std::vector<std::vector<Expr>> invert_matrix(
    std::vector<std::vector<Expr>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Expr>> inv(n, std::vector<Expr>(n, Expr::zero()));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Expr::one();

  auto complexity = [](const Expr& e) {
    return e.num().total_degree() + e.den().total_degree() +
           static_cast<int>(e.num().terms().size() + e.den().terms().size());
  };

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    int best = 0;
    for (std::size_t row = col; row < n; ++row) {
      if (m[row][col].is_zero()) continue;
      int c = complexity(m[row][col]);
      if (pivot == n || c < best) {
        pivot = row;
        best = c;
      }
    }
    if (pivot == n)
      fail(Errc::not_invertible, "coframe coefficient matrix is singular");
    std::swap(m[col], m[pivot]);
    std::swap(inv[col], inv[pivot]);
    Expr p = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] = m[col][j] / p;
      inv[col][j] = inv[col][j] / p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      Expr factor = m[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[row][j] = m[row][j] - factor * m[col][j];
        inv[row][j] = inv[row][j] - factor * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace detail

// Named basis of 1-forms spanning the cotangent space of a chart.
class CoframeBasis {
 public:
  CoframeBasis() = default;
  CoframeBasis(Chart chart, std::vector<DiffForm> forms,
               std::vector<std::string> names)
      : chart_(std::move(chart)), forms_(std::move(forms)), names_(std::move(names)) {
    if (forms_.size() != chart_.dim())
      fail(Errc::chart_mismatch, "coframe length must equal the chart dimension");
    compute_inverse();
  }

  // The coordinate coframe (dx^i) of a chart.
  static CoframeBasis coordinate(const Chart& chart) {
    std::vector<DiffForm> forms;
    std::vector<std::string> names;
    for (const auto& s : chart.coords()) {
      forms.push_back(DiffForm::d_coord(chart, s));
      names.push_back("d" + s.to_string());
    }
    return CoframeBasis(chart, std::move(forms), std::move(names));
  }

  const Chart& chart() const { return chart_; }
  const std::vector<DiffForm>& forms() const { return forms_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return forms_.size(); }

  const DiffForm& form(std::size_t i) const { return forms_[i]; }
  const std::string& name(std::size_t i) const { return names_[i]; }

  // d(coord j) expressed in the basis: row j of the inverse matrix.
  const std::vector<std::vector<Expr>>& coord_in_basis() const { return inverse_; }

 private:
  void compute_inverse() {
    const std::size_t n = chart_.dim();
    std::vector<std::vector<Expr>> m(n, std::vector<Expr>(n, Expr::zero()));
    for (std::size_t i = 0; i < n; ++i) {
      if (forms_[i].degree() != 1)
        fail(Errc::chart_mismatch, "coframe entries must be 1-forms");
      for (const auto& [idx, c] : forms_[i].terms())
        m[i][static_cast<std::size_t>(idx[0])] = c;
    }
    // basis = M d(coords); d(coords) = M^-1 basis, stored row-per-coordinate.
    auto minv = detail::invert_matrix(m);
    inverse_.assign(n, std::vector<Expr>(n, Expr::zero()));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) inverse_[j][i] = minv[j][i];
  }

  Chart chart_;
  std::vector<DiffForm> forms_;
  std::vector<std::string> names_;
  std::vector<std::vector<Expr>> inverse_;
};

// A 1- or 2-form written in coframe wedge monomials.
class ExpandedForm {
 public:
  ExpandedForm() = default;

  const std::map<IdxTuple, Expr>& coefficients() const { return coeffs_; }
  int degree() const { return degree_; }

  // Coefficient on basis_i (degree 1).
  Expr coeff(int i) const {
    auto it = coeffs_.find(IdxTuple{i});
    return it == coeffs_.end() ? Expr::zero() : it->second;
  }

  // Coefficient on basis_i ^ basis_j in either order (degree 2).
  Expr coeff(int i, int j) const {
    if (i == j) return Expr::zero();
    bool flip = i > j;
    if (flip) std::swap(i, j);
    auto it = coeffs_.find(IdxTuple{i, j});
    Expr v = it == coeffs_.end() ? Expr::zero() : it->second;
    return flip ? -v : v;
  }

  // All other coefficients after zeroing out a given list of monomials.
  bool vanishes_outside(const std::vector<IdxTuple>& allowed) const {
    for (const auto& [idx, c] : coeffs_) {
      bool ok = false;
      for (const auto& a : allowed) ok = ok || a == idx;
      if (!ok && !c.is_zero()) return false;
    }
    return true;
  }

  std::string to_string(const CoframeBasis& basis) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [idx, c] : coeffs_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")";
      for (int i : idx) out += "*" + basis.name(static_cast<std::size_t>(i));
    }
    return out;
  }

  friend ExpandedForm express_in_coframe(const DiffForm&, const CoframeBasis&);

 private:
  int degree_ = 0;
  std::map<IdxTuple, Expr> coeffs_;
};

// Rewrite a 1- or 2-form in the given coframe and verify the rewrite by
// substituting back; exactness makes the check decisive.
inline ExpandedForm express_in_coframe(const DiffForm& a, const CoframeBasis& basis) {
  if (a.degree() != 1 && a.degree() != 2)
    fail(Errc::precondition_violated, "only 1- and 2-forms are expanded");
  if (!a.is_zero() && a.chart() != basis.chart())
    fail(Errc::chart_mismatch, "form and coframe live on different charts");

  const auto& n_mat = basis.coord_in_basis();
  ExpandedForm out;
  out.degree_ = a.degree();

  auto add = [&](IdxTuple idx, const Expr& v) {
    if (v.is_zero()) return;
    auto it = out.coeffs_.find(idx);
    if (it == out.coeffs_.end()) {
      out.coeffs_.emplace(std::move(idx), v);
    } else {
      it->second = it->second + v;
      if (it->second.is_zero()) out.coeffs_.erase(it);
    }
  };

  const std::size_t n = basis.size();
  for (const auto& [idx, c] : a.terms()) {
    if (a.degree() == 1) {
      const auto& row = n_mat[static_cast<std::size_t>(idx[0])];
      for (std::size_t i = 0; i < n; ++i) add(IdxTuple{static_cast<int>(i)}, c * row[i]);
    } else {
      const auto& rj = n_mat[static_cast<std::size_t>(idx[0])];
      const auto& rk = n_mat[static_cast<std::size_t>(idx[1])];
      for (std::size_t i1 = 0; i1 < n; ++i1) {
        if (rj[i1].is_zero() && rk[i1].is_zero()) continue;
        for (std::size_t i2 = i1 + 1; i2 < n; ++i2) {
          Expr v = rj[i1] * rk[i2] - rj[i2] * rk[i1];
          add(IdxTuple{static_cast<int>(i1), static_cast<int>(i2)}, c * v);
        }
      }
    }
  }

  // Reconstruction: sum coeff * wedge monomial must reproduce the input.
  DiffForm rebuilt(basis.chart(), a.degree());
  for (const auto& [idx, c] : out.coeffs_) {
    DiffForm mono = basis.form(static_cast<std::size_t>(idx[0]));
    for (std::size_t t = 1; t < idx.size(); ++t)
      mono = mono.wedge(basis.form(static_cast<std::size_t>(idx[t])));
    rebuilt = rebuilt + mono.scaled(c);
  }
  if (!(rebuilt == a))
    fail(Errc::internal, "coframe expansion failed to reconstruct the form");
  return out;
}

}  // namespace affode
