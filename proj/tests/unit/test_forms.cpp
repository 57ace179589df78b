#include "doctest.h"
#include "qpn/forms.hpp"

using namespace qpn;

TEST_CASE("Shapovalov form on M") {
  int n = 1;
  WeightModule M = base_module(n, 4);
  Mat top = shapovalov_gram(M, lambda_weight(n));
  CHECK(top == Mat::identity(1));
  // direct recursion: <f 1, f 1> = <1, omega(f) f 1> = -<1, K_{-a} e f 1> = -q^{(-a, lambda)} [s]
  Mat g = shapovalov_gram(M, lambda_weight(n) - beta(n, 1));
  ScalarK s = qbracket(Exponent{0, 1, -1});
  CHECK(g(0, 0) == -(qpow(pairing(-alpha(n, 1), lambda_weight(n))) * s));
  // vanishes exactly at z = q^0 (s = 0) among z = q^k, k in -3..3
  for (int k = -3; k <= 3; ++k) {
    mpq_class q0(3, 2);
    mpq_class z0 = 1;
    for (int j = 0; j < std::abs(k); ++j) z0 = k > 0 ? mpq_class(z0 * q0) : mpq_class(z0 / q0);
    CHECK((specialize(g(0, 0), q0, z0, 1) == 0) == (k == 0));
  }
}

TEST_CASE("contravariance on modules") {
  for (int n = 1; n <= 2; ++n) {
    std::vector<WeightModule> mods = {base_module(n, 3), natural_module(n),
                                      build_findim(n, n == 1 ? Weight::integral({2, 0}) : Weight::integral({1, 0, -1}))};
    for (const auto& W : mods) {
      FormCache fc(W);
      std::vector<AlgebraElement> xs;
      for (int i = 1; i <= n; ++i) {
        xs.push_back(AlgebraElement::e(n, i));
        xs.push_back(AlgebraElement::f(n, i));
      }
      xs.push_back(AlgebraElement::f(n, 1) * AlgebraElement::e(n, n) * AlgebraElement::Kmu(eps(n, 1)));
      for (const auto& x : xs)
        for (int u = 0; u < W.dim(); ++u)
          for (int v = 0; v < W.dim(); ++v) {
            if (W.truncated() && (W.deg[u] > 1 || W.deg[v] > 1)) continue;
            CHECK(fc.form(act(W, x, unit_vector(u)), unit_vector(v)) ==
                  fc.form(unit_vector(u), act(W, omega(x), unit_vector(v))));
          }
    }
  }
}

TEST_CASE("canonical form on V (x) M") {
  int n = 1;
  WeightModule V = natural_module(n), M = base_module(n, 3);
  Weight top = eps(n, 1) + lambda_weight(n);
  CHECK(canonical_form(V, M, top) == Mat::identity(1));
  Mat g = canonical_form(V, M, top - alpha(n, 1));
  CHECK(g.rows() == 2);
  CHECK(!det(g).is_zero());
  CHECK(g(0, 1).is_zero());
  for (const auto& [w, b] : M.weight_spaces()) CHECK(!det(shapovalov_gram(M, w)).is_zero());
}
