#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "affode/expr.hpp"
#include "affode/parser.hpp"
#include "affode/quadext.hpp"

using namespace affode;

namespace {

Expr X() { return Expr::variable(Symbol::x()); }
Expr Y() { return Expr::variable(Symbol::y()); }
Expr P() { return Expr::variable(Symbol::p()); }

// Random dense-ish polynomial in x, y, p with small integer coefficients.
Expr random_poly(std::mt19937& rng, int max_terms = 6, int max_deg = 3) {
  std::uniform_int_distribution<int> coeff(-4, 4), deg(0, max_deg), nterms(1, max_terms);
  Expr acc = Expr::zero();
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Expr term = Expr::integer(coeff(rng));
    term = term * X().pow(deg(rng)) * Y().pow(deg(rng)) * P().pow(deg(rng));
    acc = acc + term;
  }
  return acc;
}

Expr random_rational(std::mt19937& rng) {
  Expr num = random_poly(rng);
  Expr den = Expr::zero();
  while (den.is_zero()) den = random_poly(rng, 3, 2);
  return num / den;
}

}  // namespace

TEST_CASE("parser handles the grammar") {
  CHECK(parse_expr("0").is_zero());
  CHECK(parse_expr("y'^3 + 3*x*y'") == P().pow(3) + 3 * X() * P());
  CHECK(parse_expr("p^3 + 3*x*p") == P().pow(3) + 3 * X() * P());
  CHECK(parse_expr("-3*y'/(2*x)") == Expr::integer(-3) * P() / (2 * X()));
  CHECK(parse_expr("3/4") == Expr::rational(3, 4));
  CHECK(parse_expr("3/4^2") == Expr::rational(9, 16));
  CHECK(parse_expr("(x+y)*(x-y)") == X() * X() - Y() * Y());
  CHECK(parse_expr("b*y") == Expr::variable(Symbol::free_const("b")) * Y());
  CHECK(parse_expr("beta") == Expr::variable(Symbol::free_const("beta")));
  CHECK(parse_expr("u1*v1") ==
        Expr::variable(Symbol::u1()) * Expr::variable(Symbol::v1()));
  CHECK(parse_expr("x^-1") == Expr::one() / X());
}

TEST_CASE("parser reports errors with byte offsets") {
  auto offset_of = [](const std::string& text) -> std::size_t {
    try {
      parse_expr(text);
    } catch (const Error& e) {
      REQUIRE(e.code() == Errc::parse_error);
      return e.offset();
    }
    return Error::npos;
  };
  CHECK(offset_of("x + ") == 4);
  CHECK(offset_of("x + * y") == 4);
  CHECK(offset_of("(x") == 2);
  CHECK(offset_of("x y") == 2);
  CHECK(offset_of("1/0") != Error::npos);
}

TEST_CASE("arithmetic canonicalizes") {
  CHECK((X() + Y()) * (X() - Y()) == X().pow(2) - Y().pow(2));
  CHECK((X().pow(2) - Y().pow(2)) / (X() - Y()) == X() + Y());
  CHECK(P().pow(3).pow(2) == P().pow(6));
  CHECK((X() / Y() + Y() / X()) == (X() * X() + Y() * Y()) / (X() * Y()));
  CHECK_THROWS_AS(X() / Expr::zero(), Error);
  CHECK(Expr::rational(2, 4) == Expr::rational(1, 2));
  CHECK(X().pow(-2) == Expr::one() / X().pow(2));
}

TEST_CASE("canonicalization is idempotent and sign-normalized") {
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    Expr e = random_rational(rng);
    Expr again = Expr::from_fraction(e.num(), e.den());
    CHECK(again == e);
    CHECK_FALSE(e.den().lead_coeff_negative());
    CHECK(poly_gcd(e.num(), e.den()).is_constant());
  }
}

TEST_CASE("ring laws hold on randomized expressions") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    Expr a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("partial derivatives") {
  CHECK(P().pow(3).partial(Symbol::p()) == 3 * P().pow(2));
  CHECK(Expr::variable(Symbol::fjet(0, 0, 1)).partial(Symbol::y()) ==
        Expr::variable(Symbol::fjet(0, 1, 1)));
  CHECK((Expr::one() / X()).partial(Symbol::x()) == -(Expr::one() / X().pow(2)));
  CHECK(Expr::variable(Symbol::u1()).partial(Symbol::x()).is_zero());
  CHECK(Expr::variable(Symbol::fjet(1, 2, 0)).partial(Symbol::u1()).is_zero());
}

TEST_CASE("partials commute") {
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    Expr e = random_rational(rng);
    Expr f = Expr::variable(Symbol::fjet(0, 0, 1));
    e = e + f * random_poly(rng, 3, 2);
    CHECK(e.partial(Symbol::x()).partial(Symbol::y()) ==
          e.partial(Symbol::y()).partial(Symbol::x()));
    CHECK(e.partial(Symbol::x()).partial(Symbol::p()) ==
          e.partial(Symbol::p()).partial(Symbol::x()));
  }
}

TEST_CASE("jet instantiation") {
  Expr fp = Expr::variable(Symbol::fjet(0, 0, 1));
  CHECK(fp.instantiate_jets(P().pow(3)) == 3 * P().pow(2));
  Expr fy = Expr::variable(Symbol::fjet(0, 1, 0));
  CHECK(fy.instantiate_jets(Expr::integer(-3) * P() / (2 * X())).is_zero());
  CHECK((X() + Y()).instantiate_jets(P()) == X() + Y());
}

TEST_CASE("jet instantiation commutes with base partials") {
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    Expr f = random_poly(rng);
    Expr e = random_poly(rng, 4, 2) +
             Expr::variable(Symbol::fjet(0, 0, 1)) * random_poly(rng, 3, 2) +
             Expr::variable(Symbol::fjet(1, 0, 0));
    for (Symbol s : {Symbol::x(), Symbol::y(), Symbol::p()}) {
      CHECK(e.partial(s).instantiate_jets(f) == e.instantiate_jets(f).partial(s));
    }
  }
}

TEST_CASE("rational evaluation") {
  std::map<Symbol, Rat> pt{{Symbol::x(), Rat(1)}, {Symbol::y(), Rat(2)}};
  CHECK((X() + Y()).eval(pt) == Rat(3));
  CHECK_THROWS_AS((Expr::one() / X()).eval({{Symbol::x(), Rat(0)}}), Error);
  std::map<Symbol, Rat> pt2{{Symbol::x(), Rat(1)}, {Symbol::p(), Rat(2)}};
  CHECK((P().pow(3) + 3 * X() * P()).eval(pt2) == Rat(14));
  CHECK_THROWS_AS(Y().eval(pt2), Error);
}

TEST_CASE("evaluation matches central finite differences") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> num(-9, 9);
  const Rat h(1, 10000);
  const Rat tol(1, 100000);
  int done = 0;
  while (done < 20) {
    Expr e = random_poly(rng, 5, 3);
    Expr de = e.partial(Symbol::x());
    std::map<Symbol, Rat> pt{{Symbol::x(), Rat(num(rng), 7)},
                             {Symbol::y(), Rat(num(rng), 5)},
                             {Symbol::p(), Rat(num(rng), 3)}};
    auto shifted = [&](const Rat& dx) {
      auto q = pt;
      q[Symbol::x()] += dx;
      return e.eval(q);
    };
    Rat fd = (shifted(h) - shifted(Rat(-h))) / (2 * h);
    Rat exact = de.eval(pt);
    Rat err = Rat(abs(fd - exact));
    Rat scale = Rat(abs(exact));
    if (scale < 1) scale = 1;
    CHECK(err <= tol * scale);
    ++done;
  }
}

TEST_CASE("expression rendering is canonical") {
  CHECK(Expr::zero().to_string() == "0");
  CHECK(parse_expr("y'^3 + x").to_string() == "y'^3 + x");
  CHECK(parse_expr("-x").to_string() == "-x");
  CHECK(parse_expr("-3*y'/(2*x)").to_string() == "-3*y'/(2*x)");
  CHECK(Expr::rational(1, 2).to_string() == "1/2");
}

TEST_CASE("degree cap guard") {
  DegreeCapGuard guard(8);
  CHECK_THROWS_AS(X().pow(9), Error);
  CHECK(X().pow(8) == X().pow(4) * X().pow(4));
}

TEST_CASE("quadratic extension arithmetic") {
  Expr rho = X();
  QuadExtExpr r = QuadExtExpr::root(rho);
  CHECK(r * r == QuadExtExpr::scalar(X(), rho));
  QuadExtExpr z(Expr::integer(2), Expr::integer(3), rho);
  QuadExtExpr w = z * z.inverse();
  CHECK(w == QuadExtExpr::scalar(Expr::one(), rho));
  QuadExtExpr degenerate(X(), Expr::one(), X() * X());
  CHECK_THROWS_AS(degenerate.inverse(), Error);
}
