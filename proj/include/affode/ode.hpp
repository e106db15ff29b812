#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>

#include "affode/expr.hpp"

namespace affode {

// A second-order ODE y'' = f(x, y, y'). Formal mode keeps f as the jet symbol
// family; concrete mode fixes a rational f in (x, y, p) and free constants.
class OdeInput {
 public:
  enum class Mode { concrete, formal };

  static OdeInput formal() { return OdeInput(Mode::formal, Expr::variable(Symbol::fjet(0, 0, 0))); }

  static OdeInput concrete(Expr f) {
    for (const auto& s : f.symbols()) {
      if (!s.is_base_coord() && s.kind() != SymbolKind::free_const)
        fail(Errc::precondition_violated,
             "concrete f may only involve x, y, y' and free constants (got " +
                 s.to_string() + ")");
    }
    return OdeInput(Mode::concrete, std::move(f));
  }

  Mode mode() const { return mode_; }
  bool is_formal() const { return mode_ == Mode::formal; }
  const Expr& f() const { return f_; }

  // d_x^i d_y^j d_p^k f: the jet symbol in formal mode, the exact derivative
  // of the concrete right-hand side otherwise.
  Expr fjet(int i, int j, int k) const {
    if (is_formal()) return Expr::variable(Symbol::fjet(i, j, k));
    auto it = jet_cache_.find({i, j, k});
    if (it != jet_cache_.end()) return it->second;
    Expr v;
    if (k > 0)
      v = fjet(i, j, k - 1).partial(Symbol::p());
    else if (j > 0)
      v = fjet(i, j - 1, 0).partial(Symbol::y());
    else if (i > 0)
      v = fjet(i - 1, 0, 0).partial(Symbol::x());
    else
      v = f_;
    jet_cache_.emplace(std::make_tuple(i, j, k), v);
    return v;
  }

  // Resolve formal jets in an expression against the concrete f. Identity in
  // formal mode or on jet-free input.
  Expr resolve(const Expr& e) const {
    if (is_formal()) return e;
    return e.instantiate_jets(f_);
  }

 private:
  OdeInput(Mode mode, Expr f) : mode_(mode), f_(std::move(f)) {}

  Mode mode_;
  Expr f_;
  mutable std::map<std::tuple<int, int, int>, Expr> jet_cache_;
};

// Total derivative along solutions: D = d_x + y' d_y + f d_p.
inline Expr total_derivative(const Expr& g, const OdeInput& ode) {
  return g.partial(Symbol::x()) +
         Expr::variable(Symbol::p()) * g.partial(Symbol::y()) +
         ode.fjet(0, 0, 0) * g.partial(Symbol::p());
}

// The relative invariant whose vanishing separates the two branches:
// I = f_y + (2/9) f_p^2 - (1/3) D(f_p).
inline Expr relative_invariant(const OdeInput& ode) {
  Expr fp = ode.fjet(0, 0, 1);
  return ode.fjet(0, 1, 0) + Expr::rational(2, 9) * fp * fp -
         Expr::rational(1, 3) * total_derivative(fp, ode);
}

// f = A p^3 + 3B p^2 + 3C p + D with A..D functions of (x, y) alone.
struct CubicCoefficients {
  Expr A, B, C, D;
};

struct NotCubic {
  std::string reason;
};

inline std::variant<CubicCoefficients, NotCubic> cubic_decompose(const OdeInput& ode) {
  if (ode.is_formal())
    fail(Errc::precondition_violated, "cubic decomposition needs a concrete f");
  const Expr& f = ode.f();
  const Symbol p = Symbol::p();
  if (f.den().contains(p)) return NotCubic{"y' appears in the denominator"};
  if (f.num().degree_in(p) > 3) return NotCubic{"degree in y' exceeds 3"};
  auto coeff = [&](int d) {
    auto parts = f.num().coefficients_in(p);
    auto it = parts.find(d);
    Polynomial num = it == parts.end() ? Polynomial::zero() : it->second;
    return Expr::from_fraction(std::move(num), f.den());
  };
  CubicCoefficients c;
  c.A = coeff(3);
  c.B = coeff(2) / 3;
  c.C = coeff(1) / 3;
  c.D = coeff(0);
  return c;
}

// Closure system residuals; linearizability is their simultaneous vanishing.
struct ClosureResiduals {
  Expr r1, r2, r3;

  bool all_zero() const { return r1.is_zero() && r2.is_zero() && r3.is_zero(); }
};

inline ClosureResiduals closure_residuals(const CubicCoefficients& c) {
  const Symbol x = Symbol::x(), y = Symbol::y();
  ClosureResiduals r;
  r.r1 = c.D.partial(y) - c.C.partial(x) - 2 * (c.B * c.D - c.C * c.C);
  r.r2 = c.C.partial(y) - c.B.partial(x) - (c.A * c.D - c.B * c.C);
  r.r3 = c.B.partial(y) - c.A.partial(x) - 2 * (c.A * c.C - c.B * c.B);
  return r;
}

struct LinearizabilityResult {
  bool verdict = false;
  std::variant<ClosureResiduals, NotCubic> detail;

  const ClosureResiduals* residuals() const {
    return std::get_if<ClosureResiduals>(&detail);
  }
  const NotCubic* not_cubic() const { return std::get_if<NotCubic>(&detail); }

  // Name of the first nonvanishing residual, empty when linearizable.
  std::string witness_name() const {
    if (auto* nc = not_cubic()) return "not-cubic: " + nc->reason;
    const auto& r = std::get<ClosureResiduals>(detail);
    if (!r.r1.is_zero()) return "r1";
    if (!r.r2.is_zero()) return "r2";
    if (!r.r3.is_zero()) return "r3";
    return "";
  }
};

inline LinearizabilityResult is_linearizable(const OdeInput& ode) {
  LinearizabilityResult out;
  auto dec = cubic_decompose(ode);
  if (auto* nc = std::get_if<NotCubic>(&dec)) {
    out.verdict = false;
    out.detail = *nc;
    return out;
  }
  ClosureResiduals r = closure_residuals(std::get<CubicCoefficients>(dec));
  out.verdict = r.all_zero();
  out.detail = std::move(r);
  return out;
}

enum class Provenance { closed_form, extracted };

// The relative invariant together with the invariants read off the prolonged
// structure equations. Closed forms are computed directly from the printed
// formulas; extracted values are filled in by the equivalence pipeline.
struct InvariantSet {
  Expr I;  // the relative invariant

  Expr I1_closed;    // -(1/3) f_py - (1/18) f_p f_pp + (1/6) D(f_pp)
  Expr I2_closed;    // -(1/6) f_pppp (section value of the printed bundle term)
  Expr I3_closed;    // (1/6) f_ppy - (1/6) D(f_ppp) - (1/9) f_p f_ppp + (1/18) f_pp^2
  Expr I3_closed_alt;  // the sign-flipped variant of the same line

  // Bundle-level coefficients from dOmega1 / dOmega2 (may involve u1, u3),
  // and their section values at u1 = 1, u3 = 0.
  std::optional<Expr> I1_extracted, I2_extracted, I3_extracted;
  std::optional<Expr> I1_section, I2_section, I3_section;

  Provenance provenance(int which) const {
    switch (which) {
      case 1: return I1_extracted ? Provenance::extracted : Provenance::closed_form;
      case 2: return I2_extracted ? Provenance::extracted : Provenance::closed_form;
      default: return I3_extracted ? Provenance::extracted : Provenance::closed_form;
    }
  }
};

inline InvariantSet closed_form_invariants(const OdeInput& ode) {
  InvariantSet s;
  s.I = relative_invariant(ode);
  Expr fp = ode.fjet(0, 0, 1);
  Expr fpp = ode.fjet(0, 0, 2);
  Expr fppp = ode.fjet(0, 0, 3);
  Expr fpy = ode.fjet(0, 1, 1);
  Expr fppy = ode.fjet(0, 1, 2);
  s.I1_closed = Expr::rational(-1, 3) * fpy - Expr::rational(1, 18) * fp * fpp +
                Expr::rational(1, 6) * total_derivative(fpp, ode);
  s.I2_closed = Expr::rational(-1, 6) * ode.fjet(0, 0, 4);
  s.I3_closed = Expr::rational(1, 6) * fppy -
                Expr::rational(1, 6) * total_derivative(fppp, ode) -
                Expr::rational(1, 9) * fp * fppp + Expr::rational(1, 18) * fpp * fpp;
  s.I3_closed_alt = -s.I3_closed;
  return s;
}

}  // namespace affode
