#include "doctest.h"
#include "qpn/rootdata.hpp"

using namespace qpn;

TEST_CASE("pairings of roots and lambda") {
  CHECK(pairing(alpha(2, 1), alpha(2, 1)) == Exponent::q(2));
  CHECK(pairing(alpha(2, 1), alpha(2, 2)) == Exponent::q(-1));
  CHECK(pairing(lambda_weight(2), alpha(2, 1)) == Exponent(0, 1, -1));
  CHECK(pairing(lambda_weight(3), alpha(3, 2)) == Exponent(0, 0, 0));
  CHECK_THROWS_AS(pairing(lambda_weight(1), lambda_weight(1)), MixedSymbolicPairing);
}

TEST_CASE("rho") {
  CHECK(rho(1).c[0] == Exponent(1, 0, 0));
  CHECK(rho(1).c[1] == Exponent(-1, 0, 0));
  for (int n = 1; n <= 4; ++n)
    for (int i = 1; i <= n; ++i) CHECK(pairing(rho(n), alpha(n, i)) == Exponent::q(1));
  CHECK(pairing(rho(3), beta(3, 3)) == Exponent::q(3));
}

TEST_CASE("beta pairings agree with an epsilon expansion") {
  for (int n = 1; n <= 4; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        // beta_i = eps_1 - eps_{i+1}: (beta_i, beta_j) = 1 + [i == j]
        int expect = 1 + (i == j ? 1 : 0);
        CHECK(pairing(beta(n, i), beta(n, j)) == Exponent::q(expect));
        CHECK(pairing(beta(n, i), beta(n, j)) == pairing(beta(n, j), beta(n, i)));
        Weight sum = zero_weight(n);
        for (int k = 1; k <= i; ++k) sum = sum + alpha(n, k);
        CHECK(sum == beta(n, i));
      }
}

TEST_CASE("s-part of (xi, eps_i - eps_j)") {
  int n = 3;
  Weight xi = lambda_weight(n) - beta(n, 1) * 2 - beta(n, 3);
  for (auto [i, j] : positive_roots(n)) {
    Exponent p = pairing(xi, root(n, i, j));
    CHECK(p.b1 == (i == 1 ? 1 : 0));
    CHECK(p.b2 == -p.b1);
  }
}

TEST_CASE("weight parsing and dimensions") {
  CHECK(parse_weight(2, "e1-e3") == Weight::integral({1, 0, -1}));
  CHECK(parse_weight(2, "2e1+e2") == Weight::integral({2, 1, 0}));
  CHECK(parse_weight(2, "(1,1,0)") == Weight::integral({1, 1, 0}));
  CHECK(weyl_dimension(1, Weight::integral({1, 0})) == 2);
  CHECK(weyl_dimension(1, Weight::integral({1, 1})) == 1);
  CHECK(weyl_dimension(2, Weight::integral({1, 0, -1})) == 8);
  CHECK(weyl_dimension(2, Weight::integral({4, 2, 0})) == 27);
  long tot = 0;
  for (auto& [w, m] : gt_character({2, 1, 0})) tot += m;
  CHECK(tot == 8);
  CHECK(gt_character({1, 0}).size() == 2);
}
