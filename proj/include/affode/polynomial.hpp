#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "affode/common.hpp"
#include "affode/symbol.hpp"

namespace affode {

// Power product of symbols with positive exponents, kept sorted by the global
// symbol order. Compared in graded lexicographic order (total degree first,
// then lex with the smaller symbol more significant).
class Monomial {
 public:
  using Part = std::pair<Symbol, int>;

  Monomial() = default;

  static Monomial one() { return Monomial(); }

  static Monomial var(const Symbol& s, int e = 1) {
    Monomial m;
    if (e != 0) m.parts_.push_back({s, e});
    return m;
  }

  const std::vector<Part>& parts() const { return parts_; }
  bool is_one() const { return parts_.empty(); }

  int total_degree() const {
    int d = 0;
    for (const auto& [s, e] : parts_) d += e;
    return d;
  }

  int degree_in(const Symbol& s) const {
    for (const auto& [t, e] : parts_)
      if (t == s) return e;
    return 0;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    r.parts_.reserve(parts_.size() + o.parts_.size());
    std::size_t i = 0, j = 0;
    while (i < parts_.size() && j < o.parts_.size()) {
      if (parts_[i].first == o.parts_[j].first) {
        r.parts_.push_back({parts_[i].first, parts_[i].second + o.parts_[j].second});
        ++i, ++j;
      } else if (parts_[i].first < o.parts_[j].first) {
        r.parts_.push_back(parts_[i++]);
      } else {
        r.parts_.push_back(o.parts_[j++]);
      }
    }
    for (; i < parts_.size(); ++i) r.parts_.push_back(parts_[i]);
    for (; j < o.parts_.size(); ++j) r.parts_.push_back(o.parts_[j]);
    return r;
  }

  // Quotient if divisible.
  std::optional<Monomial> divided_by(const Monomial& d) const {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (j < d.parts_.size()) {
      if (i >= parts_.size()) return std::nullopt;
      if (parts_[i].first == d.parts_[j].first) {
        int e = parts_[i].second - d.parts_[j].second;
        if (e < 0) return std::nullopt;
        if (e > 0) r.parts_.push_back({parts_[i].first, e});
        ++i, ++j;
      } else if (parts_[i].first < d.parts_[j].first) {
        r.parts_.push_back(parts_[i++]);
      } else {
        return std::nullopt;
      }
    }
    for (; i < parts_.size(); ++i) r.parts_.push_back(parts_[i]);
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < a.parts_.size() && j < b.parts_.size()) {
      if (a.parts_[i].first == b.parts_[j].first) {
        r.parts_.push_back(
            {a.parts_[i].first, std::min(a.parts_[i].second, b.parts_[j].second)});
        ++i, ++j;
      } else if (a.parts_[i].first < b.parts_[j].first) {
        ++i;
      } else {
        ++j;
      }
    }
    return r;
  }

  // Erase one symbol (all its powers) from the monomial.
  Monomial without(const Symbol& s) const {
    Monomial r;
    for (const auto& part : parts_)
      if (!(part.first == s)) r.parts_.push_back(part);
    return r;
  }

  // grlex, three-way. Returns <0, 0, >0.
  static int cmp(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    std::size_t i = 0, j = 0;
    while (i < a.parts_.size() && j < b.parts_.size()) {
      if (a.parts_[i].first == b.parts_[j].first) {
        if (a.parts_[i].second != b.parts_[j].second)
          return a.parts_[i].second < b.parts_[j].second ? -1 : 1;
        ++i, ++j;
      } else if (a.parts_[i].first < b.parts_[j].first) {
        return 1;  // a has positive power on an earlier symbol
      } else {
        return -1;
      }
    }
    if (i < a.parts_.size()) return 1;
    if (j < b.parts_.size()) return -1;
    return 0;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return cmp(a, b) == 0;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    return cmp(a, b) < 0;
  }

 private:
  std::vector<Part> parts_;
};

// Sparse multivariate polynomial over Z. Terms are kept sorted in descending
// grlex order with nonzero coefficients; this representation is canonical.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Int coeff;
  };

  Polynomial() = default;

  static Polynomial zero() { return Polynomial(); }

  static Polynomial constant(Int c) {
    Polynomial p;
    if (c != 0) p.terms_.push_back({Monomial::one(), std::move(c)});
    return p;
  }

  static Polynomial one() { return constant(1); }

  static Polynomial variable(const Symbol& s) {
    Polynomial p;
    p.terms_.push_back({Monomial::var(s), Int(1)});
    return p;
  }

  static Polynomial term(Monomial m, Int c) {
    Polynomial p;
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
  }

  bool is_monomial() const { return terms_.size() == 1; }

  // Constant value; only valid when is_constant().
  Int constant_value() const {
    return terms_.empty() ? Int(0) : terms_[0].coeff;
  }

  const Term& leading() const { return terms_.front(); }

  int total_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
  }

  int degree_in(const Symbol& s) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree_in(s));
    return d;
  }

  std::set<Symbol> symbols() const {
    std::set<Symbol> out;
    for (const auto& t : terms_)
      for (const auto& [s, e] : t.mono.parts()) out.insert(s);
    return out;
  }

  bool contains(const Symbol& s) const {
    for (const auto& t : terms_)
      if (t.mono.degree_in(s) > 0) return true;
    return false;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
      int c = Monomial::cmp(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j++]);
      } else {
        Int s = a.terms_[i].coeff + b.terms_[j].coeff;
        if (s != 0) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
        ++i, ++j;
      }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
    return r;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + b.negated();
  }

  Polynomial negated() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Polynomial scaled(const Int& c) const {
    if (c == 0) return zero();
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  Polynomial times_term(const Monomial& m, const Int& c) const {
    if (c == 0) return zero();
    Polynomial r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    // Multiplying every monomial by a fixed monomial preserves grlex order.
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    if (b.terms_.size() == 1)
      return a.times_term(b.terms_[0].mono, b.terms_[0].coeff);
    if (a.terms_.size() == 1)
      return b.times_term(a.terms_[0].mono, a.terms_[0].coeff);
    std::map<Monomial, Int, MonoGreater> acc;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) acc[ta.mono * tb.mono] += ta.coeff * tb.coeff;
    return from_map(acc);
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = one();
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1u) r = r * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return r;
  }

  // Exact division; nullopt if the division does not come out exactly over Z.
  std::optional<Polynomial> divided_by(const Polynomial& d) const {
    if (d.is_zero()) fail(Errc::division_by_zero, "polynomial division by zero");
    if (is_zero()) return zero();
    if (d.is_constant() && d.constant_value() == 1) return *this;
    Polynomial r = *this;
    std::vector<Term> q;
    while (!r.is_zero()) {
      auto m = r.leading().mono.divided_by(d.leading().mono);
      if (!m) return std::nullopt;
      Int c, rem;
      mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), r.leading().coeff.get_mpz_t(),
                  d.leading().coeff.get_mpz_t());
      if (rem != 0) return std::nullopt;
      q.push_back({*m, c});
      r = r - d.times_term(*m, c);
    }
    Polynomial out;
    out.terms_ = std::move(q);
    std::sort(out.terms_.begin(), out.terms_.end(), [](const Term& a, const Term& b) {
      return Monomial::cmp(a.mono, b.mono) > 0;
    });
    return out;
  }

  // gcd of the integer coefficients, positive.
  Int content() const {
    Int g = 0;
    for (const auto& t : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  Monomial monomial_content() const {
    if (is_zero()) return Monomial::one();
    Monomial g = terms_[0].mono;
    for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i)
      g = Monomial::gcd(g, terms_[i].mono);
    return g;
  }

  bool lead_coeff_negative() const {
    return !terms_.empty() && terms_[0].coeff < 0;
  }

  // Partial derivative; jets of f / auxiliary functions bump their index when
  // differentiated by a base coordinate, all other symbols are constants.
  Polynomial derivative(const Symbol& wrt) const {
    std::map<Monomial, Int, MonoGreater> acc;
    for (const auto& t : terms_) {
      for (const auto& [s, e] : t.mono.parts()) {
        if (s == wrt) {
          Monomial m = t.mono.without(s);
          if (e > 1) m = m * Monomial::var(s, e - 1);
          acc[m] += t.coeff * e;
        } else if (auto b = s.bumped(wrt)) {
          Monomial m = t.mono.without(s);
          if (e > 1) m = m * Monomial::var(s, e - 1);
          m = m * Monomial::var(*b);
          acc[m] += t.coeff * e;
        }
      }
    }
    return from_map(acc);
  }

  Rat eval(const std::map<Symbol, Rat>& point) const {
    Rat acc(0);
    for (const auto& t : terms_) {
      Rat v(t.coeff);
      for (const auto& [s, e] : t.mono.parts()) {
        auto it = point.find(s);
        if (it == point.end())
          fail(Errc::unbound_symbol, "unbound symbol " + s.to_string());
        Rat pw(1);
        Rat base = it->second;
        for (int n = 0; n < e; ++n) pw *= base;
        v *= pw;
      }
      acc += v;
    }
    acc.canonicalize();
    return acc;
  }

  // Coefficients by degree in one symbol; each coefficient is free of it.
  std::map<int, Polynomial> coefficients_in(const Symbol& s) const {
    std::map<int, Polynomial> out;
    for (const auto& t : terms_) {
      int d = t.mono.degree_in(s);
      out[d].terms_.push_back({t.mono.without(s), t.coeff});
    }
    for (auto& [d, p] : out)
      std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& a, const Term& b) {
        return Monomial::cmp(a.mono, b.mono) > 0;
      });
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
      if (!(a.terms_[i].mono == b.terms_[i].mono)) return false;
    }
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  struct MonoGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
      return Monomial::cmp(a, b) > 0;
    }
  };

  static Polynomial from_map(const std::map<Monomial, Int, MonoGreater>& acc) {
    Polynomial r;
    for (const auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back({m, c});
    return r;
  }

 private:
  std::vector<Term> terms_;
};

namespace detail {

// Pseudo-remainder of a by b viewed as univariate in v (coefficient lists
// indexed by degree, entries free of v).
inline std::vector<Polynomial> to_univariate(const Polynomial& p, const Symbol& v) {
  std::vector<Polynomial> out(static_cast<std::size_t>(p.degree_in(v)) + 1);
  for (auto& [d, c] : p.coefficients_in(v)) out[static_cast<std::size_t>(d)] = c;
  return out;
}

inline Polynomial from_univariate(const std::vector<Polynomial>& coeffs,
                                  const Symbol& v) {
  Polynomial acc;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    if (coeffs[d].is_zero()) continue;
    acc = acc + coeffs[d] * Polynomial::term(Monomial::var(v, static_cast<int>(d)),
                                             Int(1));
  }
  return acc;
}

inline int uni_degree(const std::vector<Polynomial>& c) {
  for (int d = static_cast<int>(c.size()) - 1; d >= 0; --d)
    if (!c[static_cast<std::size_t>(d)].is_zero()) return d;
  return -1;
}

}  // namespace detail

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

// Content of p with respect to v: gcd of the v-coefficients.
inline Polynomial content_wrt(const std::vector<Polynomial>& coeffs) {
  Polynomial g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : poly_gcd(g, c);
    if (g.is_constant() && g.constant_value() == 1) break;
  }
  return g;
}

}  // namespace detail

// Multivariate gcd over Z by primitive pseudo-remainder sequences, with the
// integer and monomial contents split off first. Result has positive leading
// coefficient.
inline Polynomial poly_gcd(const Polynomial& a_in, const Polynomial& b_in) {
  if (a_in.is_zero() && b_in.is_zero()) return Polynomial::zero();
  auto normalized = [](Polynomial p) {
    return p.lead_coeff_negative() ? p.negated() : p;
  };
  if (a_in.is_zero()) return normalized(b_in);
  if (b_in.is_zero()) return normalized(a_in);
  if (a_in == b_in) return normalized(a_in);

  Int ca = a_in.content(), cb = b_in.content();
  Int cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Polynomial a = *a_in.divided_by(Polynomial::constant(ca));
  Polynomial b = *b_in.divided_by(Polynomial::constant(cb));

  Monomial ma = a.monomial_content(), mb = b.monomial_content();
  Monomial mg = Monomial::gcd(ma, mb);
  a = *a.divided_by(Polynomial::term(ma, Int(1)));
  b = *b.divided_by(Polynomial::term(mb, Int(1)));

  Polynomial trivial = Polynomial::term(mg, cg);
  if (a.is_constant() || b.is_constant()) return trivial;

  // Cheap exits: one argument dividing the other is common after ring ops.
  if (a.total_degree() >= b.total_degree()) {
    if (auto q = a.divided_by(b)) {
      (void)q;
      return normalized(b).times_term(mg, cg);
    }
  } else if (auto q = b.divided_by(a)) {
    (void)q;
    return normalized(a).times_term(mg, cg);
  }

  // Main variable: a symbol occurring in both (else only the trivial part).
  std::optional<Symbol> main;
  {
    auto sa = a.symbols();
    for (const auto& s : b.symbols()) {
      if (sa.count(s)) {
        if (!main || a.degree_in(s) + b.degree_in(s) <
                         a.degree_in(*main) + b.degree_in(*main))
          main = s;
      }
    }
  }
  if (!main) return trivial;
  const Symbol v = *main;

  auto ua = detail::to_univariate(a, v);
  auto ub = detail::to_univariate(b, v);
  Polynomial cont_a = detail::content_wrt(ua);
  Polynomial cont_b = detail::content_wrt(ub);
  Polynomial cont_g = poly_gcd(cont_a, cont_b);

  auto divide_out = [](std::vector<Polynomial>& c, const Polynomial& d) {
    for (auto& q : c) {
      if (q.is_zero()) continue;
      auto r = q.divided_by(d);
      if (!r) fail(Errc::internal, "content division failed");
      q = *r;
    }
  };
  divide_out(ua, cont_a);
  divide_out(ub, cont_b);

  // Primitive PRS in v.
  std::vector<Polynomial> A = ua, B = ub;
  if (detail::uni_degree(A) < detail::uni_degree(B)) std::swap(A, B);
  while (true) {
    int db = detail::uni_degree(B);
    if (db < 0) break;
    // pseudo-remainder of A by B
    std::vector<Polynomial> R = A;
    const Polynomial lb = B[static_cast<std::size_t>(db)];
    int dr = detail::uni_degree(R);
    while (dr >= db) {
      Polynomial lr = R[static_cast<std::size_t>(dr)];
      // R <- lb*R - lr * v^(dr-db) * B
      for (auto& c : R) c = c * lb;
      for (int i = 0; i <= db; ++i) {
        std::size_t pos = static_cast<std::size_t>(i + dr - db);
        R[pos] = R[pos] - lr * B[static_cast<std::size_t>(i)];
      }
      dr = detail::uni_degree(R);
      if (dr >= 0) R.resize(static_cast<std::size_t>(dr) + 1);
    }
    A = std::move(B);
    if (dr < 0) {
      B.clear();
      break;
    }
    // primitive part of R in v
    Polynomial cr = detail::content_wrt(R);
    divide_out(R, cr);
    B = std::move(R);
  }

  Polynomial g_poly = detail::uni_degree(A) == 0
                          ? Polynomial::one()
                          : detail::from_univariate(A, v);
  // Strip contents the PRS may have accumulated.
  Int ic = g_poly.content();
  if (ic != 1) g_poly = *g_poly.divided_by(Polynomial::constant(ic));
  Polynomial result = normalized(cont_g * g_poly);
  return result.times_term(mg, cg);
}

}  // namespace affode
