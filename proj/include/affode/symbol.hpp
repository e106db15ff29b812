#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>

#include "affode/common.hpp"

namespace affode {

// The fixed symbol universe: jet-space coordinates (x, y, p = y'), bundle and
// group parameters, formal jets of the ODE right-hand side f(x, y, p), formal
// jets of auxiliary unknown functions on J^1 (used by the normalization
// solver), and free named constants.
enum class SymbolKind : std::uint8_t {
  x = 0,
  y,
  p,
  u1,
  u2,
  u3,
  t1,
  v1,
  v3,
  fjet,      // d_x^i d_y^j d_p^k f, indices (i, j, k); (0,0,0) is f itself
  aux_jet,   // jets of an auxiliary unknown scalar function on J^1
  free_const,
};

enum class AuxFunc : std::uint8_t { mu = 0, delta, nu };

class Symbol {
 public:
  Symbol() : kind_(SymbolKind::x) {}

  static Symbol x() { return Symbol(SymbolKind::x); }
  static Symbol y() { return Symbol(SymbolKind::y); }
  static Symbol p() { return Symbol(SymbolKind::p); }
  static Symbol u1() { return Symbol(SymbolKind::u1); }
  static Symbol u2() { return Symbol(SymbolKind::u2); }
  static Symbol u3() { return Symbol(SymbolKind::u3); }
  static Symbol t1() { return Symbol(SymbolKind::t1); }
  static Symbol v1() { return Symbol(SymbolKind::v1); }
  static Symbol v3() { return Symbol(SymbolKind::v3); }

  static Symbol fjet(int i, int j, int k) {
    Symbol s(SymbolKind::fjet);
    s.i_ = static_cast<std::uint8_t>(i);
    s.j_ = static_cast<std::uint8_t>(j);
    s.k_ = static_cast<std::uint8_t>(k);
    return s;
  }

  static Symbol aux_jet(AuxFunc f, int i, int j, int k) {
    Symbol s(SymbolKind::aux_jet);
    s.aux_ = f;
    s.i_ = static_cast<std::uint8_t>(i);
    s.j_ = static_cast<std::uint8_t>(j);
    s.k_ = static_cast<std::uint8_t>(k);
    return s;
  }

  static Symbol free_const(std::string name) {
    Symbol s(SymbolKind::free_const);
    s.name_ = std::move(name);
    return s;
  }

  SymbolKind kind() const { return kind_; }
  AuxFunc aux() const { return aux_; }
  int jet_i() const { return i_; }
  int jet_j() const { return j_; }
  int jet_k() const { return k_; }
  const std::string& name() const { return name_; }

  bool is_base_coord() const {
    return kind_ == SymbolKind::x || kind_ == SymbolKind::y ||
           kind_ == SymbolKind::p;
  }

  bool is_jet_family() const {
    return kind_ == SymbolKind::fjet || kind_ == SymbolKind::aux_jet;
  }

  // Differentiation response. Jets of f and of the auxiliary functions are
  // functions of (x, y, p) only: differentiating one of them with respect to
  // a base coordinate bumps the matching index. Everything else is either
  // the variable itself or a constant.
  std::optional<Symbol> bumped(const Symbol& wrt) const {
    if (!is_jet_family() || !wrt.is_base_coord()) return std::nullopt;
    Symbol s = *this;
    switch (wrt.kind()) {
      case SymbolKind::x: ++s.i_; break;
      case SymbolKind::y: ++s.j_; break;
      case SymbolKind::p: ++s.k_; break;
      default: return std::nullopt;
    }
    return s;
  }

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.key() == b.key();
  }
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
  friend bool operator<(const Symbol& a, const Symbol& b) {
    return a.key() < b.key();
  }

  std::string to_string() const {
    switch (kind_) {
      case SymbolKind::x: return "x";
      case SymbolKind::y: return "y";
      case SymbolKind::p: return "y'";
      case SymbolKind::u1: return "u1";
      case SymbolKind::u2: return "u2";
      case SymbolKind::u3: return "u3";
      case SymbolKind::t1: return "t1";
      case SymbolKind::v1: return "v1";
      case SymbolKind::v3: return "v3";
      case SymbolKind::fjet: return jet_name("f");
      case SymbolKind::aux_jet: {
        switch (aux_) {
          case AuxFunc::mu: return jet_name("mu");
          case AuxFunc::delta: return jet_name("delta");
          case AuxFunc::nu: return jet_name("nu");
        }
        return jet_name("aux");
      }
      case SymbolKind::free_const: return name_;
    }
    return "?";
  }

 private:
  explicit Symbol(SymbolKind k) : kind_(k) {}

  std::tuple<std::uint8_t, std::uint8_t, std::uint8_t, std::uint8_t,
             std::uint8_t, const std::string&>
  key() const {
    return {static_cast<std::uint8_t>(kind_), static_cast<std::uint8_t>(aux_),
            i_, j_, k_, name_};
  }

  std::string jet_name(const char* base) const {
    std::string s(base);
    if (i_ + j_ + k_ == 0) return s;
    s += '_';
    for (int n = 0; n < i_; ++n) s += 'x';
    for (int n = 0; n < j_; ++n) s += 'y';
    for (int n = 0; n < k_; ++n) s += 'p';
    return s;
  }

  SymbolKind kind_;
  AuxFunc aux_ = AuxFunc::mu;
  std::uint8_t i_ = 0, j_ = 0, k_ = 0;
  std::string name_;
};

}  // namespace affode
