#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>

#include "affode/polynomial.hpp"

namespace affode {

// Exact rational function over Z in the fixed symbol universe. Canonical:
// gcd(num, den) = 1, den has positive leading coefficient and is never zero.
// Equality of canonical forms is syntactic; the zero test is num == 0.
class Expr {
 public:
  Expr() : num_(Polynomial::zero()), den_(Polynomial::one()) {}

  static Expr zero() { return Expr(); }
  static Expr one() { return integer(1); }

  static Expr integer(long v) {
    Expr e;
    e.num_ = Polynomial::constant(Int(v));
    return e;
  }

  static Expr integer(Int v) {
    Expr e;
    e.num_ = Polynomial::constant(std::move(v));
    return e;
  }

  static Expr rational(long n, long d) {
    return from_fraction(Polynomial::constant(Int(n)), Polynomial::constant(Int(d)));
  }

  static Expr variable(const Symbol& s) {
    Expr e;
    e.num_ = Polynomial::variable(s);
    return e;
  }

  static Expr from_fraction(Polynomial num, Polynomial den) {
    Expr e;
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    e.canonicalize();
    return e;
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }

  bool is_rational_constant() const {
    return num_.is_constant() && den_.is_constant();
  }

  friend bool operator==(const Expr& a, const Expr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  friend Expr operator-(const Expr& a) {
    Expr r;
    r.num_ = a.num_.negated();
    r.den_ = a.den_;
    return r;
  }

  friend Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_)
      return from_fraction(a.num_ + b.num_, a.den_);
    Polynomial g = poly_gcd(a.den_, b.den_);
    Polynomial bd = *b.den_.divided_by(g);
    Polynomial ad = *a.den_.divided_by(g);
    return from_fraction(a.num_ * bd + b.num_ * ad, a.den_ * bd);
  }

  friend Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

  friend Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    Polynomial g1 = poly_gcd(a.num_, b.den_);
    Polynomial g2 = poly_gcd(b.num_, a.den_);
    Expr r;
    r.num_ = *a.num_.divided_by(g1) * *b.num_.divided_by(g2);
    r.den_ = *a.den_.divided_by(g2) * *b.den_.divided_by(g1);
    r.normalize_sign();
    r.check_cap();
    return r;
  }

  friend Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) fail(Errc::division_by_zero, "division by zero expression");
    Expr inv;
    inv.num_ = b.den_;
    inv.den_ = b.num_;
    inv.normalize_sign();
    return a * inv;
  }

  Expr pow(long e) const {
    if (e == 0) return one();
    if (is_zero()) {
      if (e < 0) fail(Errc::division_by_zero, "zero raised to a negative power");
      return zero();
    }
    Expr base = *this;
    if (e < 0) {
      base = one() / base;
      e = -e;
    }
    Expr r;
    r.num_ = base.num_.pow(static_cast<unsigned>(e));
    r.den_ = base.den_.pow(static_cast<unsigned>(e));
    r.check_cap();
    return r;
  }

  // Partial derivative with the exact quotient rule. Jet symbols bump their
  // index under base-coordinate differentiation.
  Expr partial(const Symbol& wrt) const {
    Polynomial dn = num_.derivative(wrt);
    Polynomial dd = den_.derivative(wrt);
    if (dd.is_zero()) return from_fraction(std::move(dn), den_);
    return from_fraction(dn * den_ - num_ * dd, den_ * den_);
  }

  Rat eval(const std::map<Symbol, Rat>& point) const {
    Rat d = den_.eval(point);
    if (d == 0) fail(Errc::pole, "pole: denominator vanishes at the point");
    Rat n = num_.eval(point);
    Rat r = n / d;
    r.canonicalize();
    return r;
  }

  std::set<Symbol> symbols() const {
    std::set<Symbol> out = num_.symbols();
    auto d = den_.symbols();
    out.insert(d.begin(), d.end());
    return out;
  }

  bool contains(const Symbol& s) const {
    return num_.contains(s) || den_.contains(s);
  }

  int total_degree() const {
    return std::max(num_.total_degree(), den_.total_degree());
  }

  // Simultaneous substitution of symbols by expressions; unlisted symbols map
  // to themselves.
  Expr substitute(const std::map<Symbol, Expr>& map) const {
    Expr n = substitute_poly(num_, map);
    Expr d = substitute_poly(den_, map);
    return n / d;
  }

  // Replace every jet of f by the matching exact derivative of a concrete f.
  Expr instantiate_jets(const Expr& f_concrete) const {
    return instantiate_family(SymbolKind::fjet, AuxFunc::mu, f_concrete);
  }

  // Same mechanism for one auxiliary unknown function.
  Expr instantiate_aux(AuxFunc fn, const Expr& value) const {
    return instantiate_family(SymbolKind::aux_jet, fn, value);
  }

  std::string to_string() const {
    if (den_.is_constant() && den_.constant_value() == 1)
      return poly_to_string(num_);
    std::string n = num_.is_monomial() || num_.is_constant()
                        ? poly_to_string(num_)
                        : "(" + poly_to_string(num_) + ")";
    std::string d = den_.is_monomial() ? poly_to_string(den_)
                                       : "(" + poly_to_string(den_) + ")";
    return n + "/" + d;
  }

 private:
  void normalize_sign() {
    if (den_.lead_coeff_negative()) {
      num_ = num_.negated();
      den_ = den_.negated();
    }
  }

  void check_cap() const {
    int cap = degree_cap();
    if (cap > 0 && (num_.total_degree() > cap || den_.total_degree() > cap))
      fail(Errc::degree_cap_exceeded, "expression degree exceeds the configured cap");
  }

  void canonicalize() {
    if (den_.is_zero())
      fail(Errc::division_by_zero, "denominator canonicalizes to zero");
    if (num_.is_zero()) {
      den_ = Polynomial::one();
      return;
    }
    Polynomial g = poly_gcd(num_, den_);
    if (!(g.is_constant() && g.constant_value() == 1)) {
      num_ = *num_.divided_by(g);
      den_ = *den_.divided_by(g);
    }
    normalize_sign();
    check_cap();
  }

  static Expr substitute_poly(const Polynomial& p,
                              const std::map<Symbol, Expr>& map) {
    Expr acc = zero();
    std::map<std::pair<Symbol, int>, Expr> power_cache;
    for (const auto& t : p.terms()) {
      Expr term = integer(t.coeff);
      for (const auto& [s, e] : t.mono.parts()) {
        auto key = std::make_pair(s, e);
        auto it = power_cache.find(key);
        if (it == power_cache.end()) {
          auto sub = map.find(s);
          Expr base = sub == map.end() ? variable(s) : sub->second;
          it = power_cache.emplace(key, base.pow(e)).first;
        }
        term = term * it->second;
      }
      acc = acc + term;
    }
    return acc;
  }

  Expr instantiate_family(SymbolKind kind, AuxFunc fn, const Expr& base) const {
    std::map<Symbol, Expr> map;
    std::map<std::tuple<int, int, int>, Expr> cache;
    cache[{0, 0, 0}] = base;
    // Derivative of the concrete function for a jet index, built up one bump
    // at a time (partials commute, so the route does not matter).
    std::function<Expr(int, int, int)> value_for = [&](int i, int j, int k) {
      std::tuple<int, int, int> key{i, j, k};
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      Expr v;
      if (k > 0)
        v = value_for(i, j, k - 1).partial(Symbol::p());
      else if (j > 0)
        v = value_for(i, j - 1, 0).partial(Symbol::y());
      else
        v = value_for(i - 1, 0, 0).partial(Symbol::x());
      cache.emplace(key, v);
      return v;
    };
    for (const auto& s : symbols()) {
      if (s.kind() != kind) continue;
      if (kind == SymbolKind::aux_jet && s.aux() != fn) continue;
      map.emplace(s, value_for(s.jet_i(), s.jet_j(), s.jet_k()));
    }
    if (map.empty()) return *this;
    return substitute(map);
  }

  static std::string poly_to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
      Int c = t.coeff;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      Int a = abs(c);
      bool need_coeff = a != 1 || t.mono.is_one();
      if (need_coeff) os << a.get_str();
      bool need_star = need_coeff;
      for (const auto& [s, e] : t.mono.parts()) {
        if (need_star) os << "*";
        os << s.to_string();
        if (e > 1) os << "^" << e;
        need_star = true;
      }
    }
    return os.str();
  }

  Polynomial num_, den_;
};

inline Expr operator+(const Expr& a, long b) { return a + Expr::integer(b); }
inline Expr operator-(const Expr& a, long b) { return a - Expr::integer(b); }
inline Expr operator*(const Expr& a, long b) { return a * Expr::integer(b); }
inline Expr operator*(long a, const Expr& b) { return Expr::integer(a) * b; }
inline Expr operator/(const Expr& a, long b) { return a / Expr::integer(b); }

}  // namespace affode
