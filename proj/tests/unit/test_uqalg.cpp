#include "doctest.h"
#include "qpn/repcore.hpp"
#include "qpn/uqalg.hpp"

using namespace qpn;

namespace {

std::vector<AlgebraElement> samples(int n) {
  std::vector<AlgebraElement> s;
  for (int i = 1; i <= n; ++i) {
    s.push_back(AlgebraElement::e(n, i));
    s.push_back(AlgebraElement::f(n, i));
  }
  s.push_back(AlgebraElement::Kmu(eps(n, 1)));
  s.push_back(AlgebraElement::e(n, 1) * AlgebraElement::f(n, n) * AlgebraElement::Kmu(-alpha(n, 1)));
  s.push_back(AlgebraElement::f(n, 1) * AlgebraElement::f(n, 1) + AlgebraElement::e(n, n).scaled(ScalarK::q()));
  return s;
}

}  // namespace

TEST_CASE("coproduct formulas") {
  int n = 2;
  TensorElement de = coproduct(AlgebraElement::e(n, 1), 2);
  CHECK(de.terms().size() == 2);
  TensorElement dk = coproduct(AlgebraElement::Kmu(eps(n, 2)), 2);
  CHECK(dk.terms().size() == 1);
  CHECK(dk.terms().begin()->first[0] == dk.terms().begin()->first[1]);
  TensorElement d3 = coproduct(AlgebraElement::f(n, 1), 3);
  CHECK(d3.terms().size() == 3);
  for (const auto& x : samples(n)) {
    TensorElement d2 = coproduct(x, 2);
    CHECK(coproduct_slot(d2, 0, n) == coproduct_slot(d2, 1, n));
  }
}

TEST_CASE("Hopf axioms through module actions") {
  for (int n = 1; n <= 2; ++n) {
    std::vector<WeightModule> mods = {natural_module(n), build_findim(n, Weight::integral(n == 1 ? std::vector<int>{2, 0}
                                                                                            : std::vector<int>{1, 0, -1})),
                                      base_module(n, 3)};
    for (const auto& W : mods)
      for (const auto& x : samples(n)) {
        TensorElement d = coproduct(x, 2);
        AlgebraElement lhs, rhs;
        for (const auto& [w, c] : d.terms()) {
          lhs = lhs + (antipode(AlgebraElement::word(n, w[0])) * AlgebraElement::word(n, w[1])).scaled(c);
          rhs = rhs + (AlgebraElement::word(n, w[0]) * antipode(AlgebraElement::word(n, w[1]))).scaled(c);
        }
        for (int b = 0; b < W.dim(); ++b) {
          if (W.truncated() && W.deg[b] > W.trunc - 3) continue;
          SVec expect = scaled(unit_vector(b), counit(x));
          CHECK(act(W, lhs, unit_vector(b)) == expect);
          CHECK(act(W, rhs, unit_vector(b)) == expect);
        }
      }
  }
}

TEST_CASE("antipode, omega, sigma") {
  int n = 2;
  Weight mu = eps(n, 1) * 2 - eps(n, 3);
  CHECK(antipode(AlgebraElement::Kmu(mu)) == AlgebraElement::Kmu(-mu));
  WeightModule M = base_module(n, 4);
  WeightModule V = natural_module(n);
  for (const auto& x : samples(n)) {
    for (const auto* W : {&M, &V})
      for (int b = 0; b < W->dim(); ++b) {
        if (W->truncated() && W->deg[b] > 1) continue;
        CHECK(act(*W, omega(omega(x)), unit_vector(b)) == act(*W, x, unit_vector(b)));
        CHECK(act(*W, antipode(antipode_inv(x)), unit_vector(b)) == act(*W, x, unit_vector(b)));
        CHECK(act(*W, antipode_inv(sigma(x)), unit_vector(b)) == act(*W, omega(x), unit_vector(b)));
      }
  }
  CHECK(omega(omega(AlgebraElement::e(n, 1))) == AlgebraElement::e(n, 1));
}

TEST_CASE("compound roots") {
  int n = 2;
  ScalarK q = ScalarK::q();
  auto e1 = AlgebraElement::e(n, 1), e2 = AlgebraElement::e(n, 2);
  auto f1 = AlgebraElement::f(n, 1), f2 = AlgebraElement::f(n, 2);
  CHECK(compound_root(n, alpha(n, 1), 1) == e1);
  CHECK(compound_root(n, alpha(n, 1) + alpha(n, 2), 1) == e2 * e1 - (e1 * e2).scaled(q));
  CHECK(compound_root(n, alpha(n, 1) + alpha(n, 2), -1) == f1 * f2 - (f2 * f1).scaled(q.inv()));
  CHECK_THROWS_AS(compound_root(n, alpha(n, 1) * 2, 1), NotARoot);
  CHECK_THROWS_AS(compound_root(n, alpha(n, 1) - alpha(n, 2), 1), NotARoot);
}

TEST_CASE("element parsing") {
  int n = 2;
  auto x = parse_element(n, "e1*f2*K(-a1)");
  CHECK(x == AlgebraElement::e(n, 1) * AlgebraElement::f(n, 2) * AlgebraElement::Kmu(-alpha(n, 1)));
  auto y = parse_element(n, "e2*e1 - q*e1*e2");
  CHECK(y == compound_root(n, 1, 2, 1));
  auto z = parse_element(n, "q^-1*f1 + K(e1)");
  CHECK(z == AlgebraElement::f(n, 1).scaled(ScalarK::q().inv()) + AlgebraElement::Kmu(eps(n, 1)));
}
