#pragma once

#include "affode/expr.hpp"

namespace affode {

// Element a + b*r of the quadratic extension by a designated root r with
// r^2 = rho. Products and inverses are reduced so the r-degree stays below 2;
// the inverse uses (a + b*r)^-1 = (a - b*r)/(a^2 - b^2*rho) and is defined
// only when the norm a^2 - b^2*rho is a nonzero Expr.
class QuadExtExpr {
 public:
  QuadExtExpr() = default;
  QuadExtExpr(Expr a, Expr b, Expr rho)
      : a_(std::move(a)), b_(std::move(b)), rho_(std::move(rho)) {}

  static QuadExtExpr scalar(Expr a, Expr rho) {
    return QuadExtExpr(std::move(a), Expr::zero(), std::move(rho));
  }

  static QuadExtExpr root(Expr rho) {
    return QuadExtExpr(Expr::zero(), Expr::one(), std::move(rho));
  }

  const Expr& a() const { return a_; }
  const Expr& b() const { return b_; }
  const Expr& radicand() const { return rho_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  Expr norm() const { return a_ * a_ - b_ * b_ * rho_; }

  friend QuadExtExpr operator+(const QuadExtExpr& x, const QuadExtExpr& y) {
    return {x.a_ + y.a_, x.b_ + y.b_, x.pick_rho(y)};
  }
  friend QuadExtExpr operator-(const QuadExtExpr& x, const QuadExtExpr& y) {
    return {x.a_ - y.a_, x.b_ - y.b_, x.pick_rho(y)};
  }
  friend QuadExtExpr operator-(const QuadExtExpr& x) {
    return {-x.a_, -x.b_, x.rho_};
  }
  friend QuadExtExpr operator*(const QuadExtExpr& x, const QuadExtExpr& y) {
    Expr rho = x.pick_rho(y);
    return {x.a_ * y.a_ + x.b_ * y.b_ * rho, x.a_ * y.b_ + x.b_ * y.a_, rho};
  }

  QuadExtExpr inverse() const {
    Expr n = norm();
    if (n.is_zero())
      fail(Errc::division_by_zero, "quadratic-extension element has zero norm");
    return {a_ / n, -(b_ / n), rho_};
  }

  friend QuadExtExpr operator/(const QuadExtExpr& x, const QuadExtExpr& y) {
    return x * y.inverse();
  }

  friend bool operator==(const QuadExtExpr& x, const QuadExtExpr& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string to_string(const std::string& root_name = "r") const {
    if (is_zero()) return "0";
    std::string out;
    if (!a_.is_zero()) out = a_.to_string();
    if (!b_.is_zero()) {
      if (!out.empty()) out += " + ";
      out += "(" + b_.to_string() + ")*" + root_name;
    }
    return out;
  }

 private:
  Expr pick_rho(const QuadExtExpr& other) const {
    if (b_.is_zero() && !other.b_.is_zero()) return other.rho_;
    if (!b_.is_zero() && !other.b_.is_zero() && !(rho_ == other.rho_))
      fail(Errc::internal, "mixing quadratic extensions with different radicands");
    return rho_;
  }

  Expr a_, b_, rho_;
};

}  // namespace affode
