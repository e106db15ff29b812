#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "affode/expr.hpp"

namespace affode {

// Ordered coordinate chart. The three charts in use are the base jet space
// (x, y, p) and the two structure bundles over it.
class Chart {
 public:
  Chart() = default;
  explicit Chart(std::vector<Symbol> coords) : coords_(std::move(coords)) {}

  static const Chart& base3() {
    static const Chart c({Symbol::x(), Symbol::y(), Symbol::p()});
    return c;
  }
  static const Chart& bundle6() {
    static const Chart c({Symbol::x(), Symbol::y(), Symbol::p(), Symbol::u1(),
                          Symbol::u2(), Symbol::u3()});
    return c;
  }
  static const Chart& bundle5() {
    static const Chart c(
        {Symbol::x(), Symbol::y(), Symbol::p(), Symbol::u1(), Symbol::u3()});
    return c;
  }

  const std::vector<Symbol>& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }

  int index_of(const Symbol& s) const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == s) return static_cast<int>(i);
    return -1;
  }

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

 private:
  std::vector<Symbol> coords_;
};

// Strictly increasing tuple of coordinate indices naming a wedge monomial
// d(c_{i1}) ^ ... ^ d(c_{ik}).
using IdxTuple = std::vector<int>;

// Exterior form of homogeneous degree with Expr coefficients. Only nonzero
// coefficients are stored; the zero form of any degree compares equal.
class DiffForm {
 public:
  DiffForm() : degree_(0) {}
  DiffForm(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {}

  static DiffForm scalar(const Chart& chart, Expr value) {
    DiffForm f(chart, 0);
    if (!value.is_zero()) f.terms_.emplace(IdxTuple{}, std::move(value));
    return f;
  }

  static DiffForm d_coord(const Chart& chart, const Symbol& s) {
    int i = chart.index_of(s);
    if (i < 0) fail(Errc::chart_mismatch, "coordinate not in chart: " + s.to_string());
    DiffForm f(chart, 1);
    f.terms_.emplace(IdxTuple{i}, Expr::one());
    return f;
  }

  // 1-form from a full coefficient vector against d(coords).
  static DiffForm one_form(const Chart& chart, const std::vector<Expr>& coeffs) {
    DiffForm f(chart, 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!coeffs[i].is_zero()) f.terms_.emplace(IdxTuple{static_cast<int>(i)}, coeffs[i]);
    return f;
  }

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  const std::map<IdxTuple, Expr>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Expr coefficient(const IdxTuple& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Expr::zero() : it->second;
  }

  // Degree-0 payload.
  Expr scalar_value() const {
    if (degree_ != 0) fail(Errc::internal, "scalar_value on a form of positive degree");
    return coefficient({});
  }

  friend DiffForm operator+(const DiffForm& a, const DiffForm& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    a.require_compatible(b);
    DiffForm r(a.chart_, a.degree_);
    r.terms_ = a.terms_;
    for (const auto& [idx, c] : b.terms_) {
      auto it = r.terms_.find(idx);
      if (it == r.terms_.end()) {
        r.terms_.emplace(idx, c);
      } else {
        it->second = it->second + c;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
    return r;
  }

  friend DiffForm operator-(const DiffForm& a, const DiffForm& b) {
    return a + b.scaled(Expr::integer(-1));
  }

  DiffForm scaled(const Expr& c) const {
    DiffForm r(chart_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [idx, v] : terms_) {
      Expr w = v * c;
      if (!w.is_zero()) r.terms_.emplace(idx, std::move(w));
    }
    return r;
  }

  friend DiffForm operator*(const Expr& c, const DiffForm& f) { return f.scaled(c); }

  DiffForm wedge(const DiffForm& o) const {
    if (is_zero() || o.is_zero()) return DiffForm(chart_, degree_ + o.degree_);
    require_compatible_chart(o);
    DiffForm r(chart_, degree_ + o.degree_);
    for (const auto& [ia, ca] : terms_) {
      for (const auto& [ib, cb] : o.terms_) {
        int sign = 1;
        IdxTuple merged;
        if (!merge_indices(ia, ib, merged, sign)) continue;
        Expr c = ca * cb;
        if (sign < 0) c = -c;
        auto it = r.terms_.find(merged);
        if (it == r.terms_.end()) {
          if (!c.is_zero()) r.terms_.emplace(std::move(merged), std::move(c));
        } else {
          it->second = it->second + c;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    }
    return r;
  }

  // d(c * dI) = sum_j d_j(c) dc_j ^ dI over the chart coordinates. Jets are
  // functions of (x, y, p) and pick up bumped components only along those.
  DiffForm exterior_derivative() const {
    DiffForm r(chart_, degree_ + 1);
    for (const auto& [idx, c] : terms_) {
      for (std::size_t j = 0; j < chart_.dim(); ++j) {
        Expr dc = c.partial(chart_.coords()[j]);
        if (dc.is_zero()) continue;
        int sign = 1;
        IdxTuple merged;
        if (!merge_indices({static_cast<int>(j)}, idx, merged, sign)) continue;
        Expr v = sign < 0 ? -dc : dc;
        auto it = r.terms_.find(merged);
        if (it == r.terms_.end()) {
          r.terms_.emplace(std::move(merged), std::move(v));
        } else {
          it->second = it->second + v;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    }
    return r;
  }

  // Apply a function to every coefficient (jet instantiation and the like).
  template <typename Fn>
  DiffForm map_coefficients(Fn&& fn) const {
    DiffForm r(chart_, degree_);
    for (const auto& [idx, c] : terms_) {
      Expr v = fn(c);
      if (!v.is_zero()) r.terms_.emplace(idx, std::move(v));
    }
    return r;
  }

  // Pullback under a self-map of the chart given by coordinate images:
  // coefficients are composed and d(c_i) becomes d(image_i).
  DiffForm pullback(const std::vector<Expr>& images) const {
    if (images.size() != chart_.dim())
      fail(Errc::chart_mismatch, "pullback image count does not match the chart");
    std::map<Symbol, Expr> subs;
    for (std::size_t i = 0; i < chart_.dim(); ++i)
      subs.emplace(chart_.coords()[i], images[i]);
    std::vector<DiffForm> dimg;
    dimg.reserve(chart_.dim());
    for (std::size_t i = 0; i < chart_.dim(); ++i)
      dimg.push_back(DiffForm::scalar(chart_, images[i]).exterior_derivative());
    DiffForm r(chart_, degree_);
    for (const auto& [idx, c] : terms_) {
      DiffForm term = DiffForm::scalar(chart_, c.substitute(subs));
      for (int i : idx) term = term.wedge(dimg[static_cast<std::size_t>(i)]);
      r = r + term;
    }
    return r;
  }

  // Reinterpret on a larger chart whose coordinates contain this chart's.
  DiffForm embedded(const Chart& target) const {
    std::vector<int> remap(chart_.dim());
    for (std::size_t i = 0; i < chart_.dim(); ++i) {
      int t = target.index_of(chart_.coords()[i]);
      if (t < 0) fail(Errc::chart_mismatch, "target chart misses a coordinate");
      remap[i] = t;
    }
    DiffForm r(target, degree_);
    for (const auto& [idx, c] : terms_) {
      IdxTuple mapped;
      mapped.reserve(idx.size());
      for (int i : idx) mapped.push_back(remap[static_cast<std::size_t>(i)]);
      // Chart embeddings used here preserve coordinate order.
      r.terms_.emplace(std::move(mapped), c);
    }
    return r;
  }

  // Keep only the components along the given coordinates (all tuple entries
  // must lie in the set).
  DiffForm restricted_to(const std::vector<Symbol>& coords) const {
    std::vector<int> keep;
    for (const auto& s : coords) {
      int i = chart_.index_of(s);
      if (i >= 0) keep.push_back(i);
    }
    DiffForm r(chart_, degree_);
    for (const auto& [idx, c] : terms_) {
      bool ok = true;
      for (int i : idx) {
        bool found = false;
        for (int k : keep) found = found || (k == i);
        ok = ok && found;
      }
      if (ok) r.terms_.emplace(idx, c);
    }
    return r;
  }

  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.chart_ != b.chart_ || a.degree_ != b.degree_) return false;
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const DiffForm& a, const DiffForm& b) { return !(a == b); }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& [idx, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")";
      for (int i : idx) {
        out += "*d" + chart_.coords()[static_cast<std::size_t>(i)].to_string();
      }
    }
    return out;
  }

 private:
  void require_compatible_chart(const DiffForm& o) const {
    if (chart_ != o.chart_) fail(Errc::chart_mismatch, "charts differ");
  }

  void require_compatible(const DiffForm& o) const {
    require_compatible_chart(o);
    if (degree_ != o.degree_) fail(Errc::chart_mismatch, "form degrees differ");
  }

  // Merge two strictly increasing tuples, tracking the permutation sign;
  // false when an index repeats.
  static bool merge_indices(const IdxTuple& a, const IdxTuple& b, IdxTuple& out,
                            int& sign) {
    out.clear();
    out.reserve(a.size() + b.size());
    sign = 1;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return false;
      if (a[i] < b[j]) {
        out.push_back(a[i++]);
      } else {
        // b[j] jumps over the remaining entries of a
        if ((a.size() - i) % 2 == 1) sign = -sign;
        out.push_back(b[j++]);
      }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return true;
  }

  Chart chart_;
  int degree_;
  std::map<IdxTuple, Expr> terms_;
};

// 3x3 matrix of forms of one homogeneous degree.
class MatrixForm {
 public:
  MatrixForm() = default;
  MatrixForm(const Chart& chart, int degree) {
    for (auto& row : entries_)
      for (auto& e : row) e = DiffForm(chart, degree);
  }

  DiffForm& at(int r, int c) { return entries_[r][c]; }
  const DiffForm& at(int r, int c) const { return entries_[r][c]; }

  friend MatrixForm operator+(const MatrixForm& a, const MatrixForm& b) {
    MatrixForm r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.entries_[i][j] = a.entries_[i][j] + b.entries_[i][j];
    return r;
  }

  friend MatrixForm operator-(const MatrixForm& a, const MatrixForm& b) {
    MatrixForm r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.entries_[i][j] = a.entries_[i][j] - b.entries_[i][j];
    return r;
  }

  MatrixForm exterior_derivative() const {
    MatrixForm r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.entries_[i][j] = entries_[i][j].exterior_derivative();
    return r;
  }

  // Entrywise (w ^ w)(i,j) = sum_k w(i,k) ^ w(k,j).
  MatrixForm wedge(const MatrixForm& o) const {
    MatrixForm r;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        DiffForm acc;
        for (int k = 0; k < 3; ++k) {
          DiffForm w = entries_[i][k].wedge(o.entries_[k][j]);
          acc = acc.is_zero() ? w : acc + w;
        }
        r.entries_[i][j] = acc;
      }
    }
    return r;
  }

  MatrixForm curvature() const { return exterior_derivative() + wedge(*this); }

  // Left/right multiplication by scalar (Expr) matrices.
  MatrixForm conjugated(const std::array<std::array<Expr, 3>, 3>& left,
                        const std::array<std::array<Expr, 3>, 3>& right) const {
    MatrixForm tmp;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        DiffForm acc;
        for (int k = 0; k < 3; ++k) {
          DiffForm w = entries_[k][j].scaled(left[static_cast<std::size_t>(i)]
                                                 [static_cast<std::size_t>(k)]);
          acc = acc.is_zero() ? w : acc + w;
        }
        tmp.entries_[i][j] = acc;
      }
    MatrixForm r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        DiffForm acc;
        for (int k = 0; k < 3; ++k) {
          DiffForm w = tmp.entries_[i][k].scaled(right[static_cast<std::size_t>(k)]
                                                     [static_cast<std::size_t>(j)]);
          acc = acc.is_zero() ? w : acc + w;
        }
        r.entries_[i][j] = acc;
      }
    return r;
  }

  template <typename Fn>
  MatrixForm map_coefficients(Fn&& fn) const {
    MatrixForm r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.entries_[i][j] = entries_[i][j].map_coefficients(fn);
    return r;
  }

  bool is_zero() const {
    for (const auto& row : entries_)
      for (const auto& e : row)
        if (!e.is_zero()) return false;
    return true;
  }

  friend bool operator==(const MatrixForm& a, const MatrixForm& b) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!(a.entries_[i][j] == b.entries_[i][j])) return false;
    return true;
  }

  // Special-affine shape: first row identically zero, trace-free lower block.
  bool asl_shape() const {
    return at(0, 0).is_zero() && at(0, 1).is_zero() && at(0, 2).is_zero() &&
           (at(1, 1) + at(2, 2)).is_zero();
  }

 private:
  std::array<std::array<DiffForm, 3>, 3> entries_;
};

}  // namespace affode
