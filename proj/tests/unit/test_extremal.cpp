#include "doctest.h"
#include "qpn/extremal.hpp"

using namespace qpn;

namespace {
Point at_qk(int k) {
  mpq_class q0(9, 4), z0(1);
  for (int j = 0; j < std::abs(k); ++j) z0 = k > 0 ? mpq_class(z0 * q0) : mpq_class(z0 / q0);
  return Point::make(q0, z0, 1);
}
const Exponent kS{0, 1, -1};
}  // namespace

TEST_CASE("singular profile") {
  auto p = singular_profile(natural_module(2));
  CHECK(p.ell == std::vector<int>{1, 0});
  CHECK(p.admissible.size() == 2);
  auto t = singular_profile(trivial_module(2));
  CHECK(t.ell == std::vector<int>{0, 0});
  CHECK(t.admissible.size() == 1);
}

TEST_CASE("singular vectors in V (x) M") {
  {
    int n = 1;
    WeightModule T = tensor(natural_module(n), base_module(n, 3));
    auto sv = singular_vectors(T, eps(n, 2) + lambda_weight(n));
    CHECK(sv.size() == 1);
    CHECK(sv[0].size() == 2);
  }
  {
    int n = 2;
    WeightModule V = natural_module(n);
    WeightModule T = tensor(V, base_module(n, 3));
    int count = 0;
    for (const auto& [w, b] : T.weight_spaces()) {
      auto sv = singular_vectors(T, w);
      if (!sv.empty()) {
        ++count;
        CHECK(sv.size() == 1);
      }
    }
    // degree-3 truncation adds no spurious kernels at low depth; weights come from M^+_V
    CHECK(count >= 2);
    CHECK(singular_vectors(T, eps(n, 1) + lambda_weight(n)).size() == 1);
    CHECK(singular_vectors(T, eps(n, 2) + lambda_weight(n)).size() == 1);
    CHECK(singular_vectors(T, eps(n, 3) + lambda_weight(n)).empty());
  }
}

TEST_CASE("M has no singular vectors for symbolic z") {
  int n = 1;
  WeightModule M = base_module(n, 4);
  for (int k = 1; k <= 3; ++k) CHECK(singular_vectors(M, lambda_weight(n) - beta(n, 1) * k).empty());
}

TEST_CASE("k-singular vectors and M^+_V") {
  WeightModule V = build_findim(2, Weight::integral({1, 0, -1}));
  auto ks = k_singular(V);
  // adjoint of gl3 restricted to gl1 x gl2: C, C^2, C^2, (1 + 3)
  CHECK(ks.size() == 4);
  WeightModule M = base_module(2, 4);
  auto p = singular_profile(natural_module(2));
  auto mp = mplus(M, p);
  CHECK(mp.size() == 2);
}

TEST_CASE("theta: direct and product agree up to units") {
  for (int n = 1; n <= 2; ++n) {
    std::vector<Weight> nus;
    if (n == 1) nus = {Weight::integral({0, 0}), Weight::integral({1, 0}), Weight::integral({2, 0})};
    else nus = {Weight::integral({1, 0, 0}), Weight::integral({1, 1, 0}), Weight::integral({1, 0, -1})};
    for (const auto& nu : nus) {
      auto rep = theta(build_findim(n, nu));
      for (const auto& b : rep.blocks) {
        CHECK(!b.direct.is_zero());
        CHECK((b.direct / b.product).is_unit());
        CHECK(b.direct * b.ww == b.uu);
      }
    }
  }
}

TEST_CASE("theta for n = 1 natural") {
  auto rep = theta(natural_module(1));
  REQUIRE(rep.blocks.size() == 2);
  CHECK(rep.blocks[0].direct == ScalarK(1));
  CHECK(rep.blocks[1].product == qbracket(kS + Exponent::q(1)));
  CHECK((rep.blocks[1].direct / qbracket(kS + Exponent::q(1))).is_unit());
  auto f = det_theta(rep);
  REQUIRE(f.size() == 1);
  CHECK(f[0].arg == kS + Exponent::q(1));
  CHECK(bracket_arg_str(f[0].arg) == "s+1");
  CHECK(!verdict(f, at_qk(-1)));
  for (int k : {-3, -2, 0, 1, 2}) CHECK(verdict(f, at_qk(k)));
  CHECK(det_theta(trivial_module(1)).empty());
}

TEST_CASE("l exponents follow m") {
  WeightModule M = base_module(3, 4);
  for (int b = 0; b < M.dim(); ++b) {
    if (M.deg[b] > 2) continue;
    for (auto [i, j] : positive_roots(3)) CHECK(l_exponent(M, b, i, j) == M.label[b][j - 2]);
  }
}
