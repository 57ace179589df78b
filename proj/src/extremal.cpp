#include "qpn/extremal.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace qpn {

SingularProfile singular_profile(const WeightModule& V) {
  SingularProfile p;
  p.nu = V.highest;
  int n = V.n;
  for (int i = 1; i <= n; ++i) {
    Exponent e = pairing(V.highest + rho(n), alpha(n, i));
    if (e.symbolic() || e.a2 % 2) throw NotDominant(V.highest.str());
    int ell = e.a2 / 2 - 1;
    if (ell < 0) throw NotDominant(V.highest.str());
    p.ell.push_back(ell);
  }
  std::vector<int> m(n, 0);
  while (true) {
    p.admissible.push_back(m);
    int k = 0;
    while (k < n && m[k] == p.ell[k]) m[k++] = 0;
    if (k == n) break;
    ++m[k];
  }
  return p;
}

std::vector<SVec> joint_kernel(const WeightModule& W, const std::vector<int>& basis, const std::vector<int>& gens) {
  if (basis.empty()) return {};
  std::map<std::pair<int, int>, int> rowid;  // (generator, target index) -> row
  std::vector<SVec> cols(basis.size());
  for (size_t c = 0; c < basis.size(); ++c)
    for (int g : gens)
      for (const auto& [r, x] : W.E[g - 1].column(basis[c])) rowid.emplace(std::make_pair(g, r), 0);
  int nr = 0;
  for (auto& [k, v] : rowid) v = nr++;
  Mat A(std::max(nr, 1), int(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c)
    for (int g : gens)
      for (const auto& [r, x] : W.E[g - 1].column(basis[c])) A(rowid.at({g, r}), int(c)) = x;
  std::vector<SVec> out;
  for (const auto& v : kernel(A)) {
    SVec s;
    for (size_t c = 0; c < basis.size(); ++c)
      if (!v[c].is_zero()) s.emplace(basis[c], v[c]);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SVec> singular_vectors(const WeightModule& W, const Weight& mu) {
  std::vector<int> gens(W.n);
  std::iota(gens.begin(), gens.end(), 1);
  return joint_kernel(W, W.basis_of_weight(mu), gens);
}

std::vector<SVec> k_singular(const WeightModule& V) {
  std::vector<int> gens;
  for (int i = 2; i <= V.n; ++i) gens.push_back(i);
  std::vector<SVec> out;
  for (const auto& [w, basis] : V.weight_spaces()) {
    if (gens.empty()) {
      for (int b : basis) out.push_back(unit_vector(b));
      continue;
    }
    for (auto& v : joint_kernel(V, basis, gens)) out.push_back(std::move(v));
  }
  return out;
}

std::vector<int> mplus(const WeightModule& M, const SingularProfile& p) {
  std::vector<int> r;
  for (int b = 0; b < M.dim(); ++b) {
    bool ok = true;
    for (int i = 0; i < M.n; ++i)
      if (M.label[b][i] > p.ell[i]) ok = false;
    if (ok) r.push_back(b);
  }
  return r;
}

int l_exponent(const WeightModule& M, int b, int i, int j) {
  SpMat e = root_operator(M, i, j - 1, 1);
  SVec v = unit_vector(b);
  int l = 0;
  while (true) {
    v = e.apply(v);
    if (v.empty()) return l;
    ++l;
    if (l > M.trunc + 1) throw std::logic_error("l_exponent: e_alpha not nilpotent");
  }
}

ScalarK theta_product_value(const Weight& nu, const Weight& xi, const std::map<std::pair<int, int>, int>& l) {
  int n = nu.size() - 1;
  ScalarK r(1);
  for (const auto& [ij, lk] : l) {
    Weight a = root(n, ij.first, ij.second);
    Exponent top = pairing(nu + rho(n) + xi, a);
    Exponent bot = pairing(nu + rho(n), a);
    for (int k = 1; k <= lk; ++k) r *= qbracket(top + Exponent::q(k)) / qbracket(bot - Exponent::q(k));
  }
  return r;
}

ThetaReport theta(const WeightModule& V) {
  if (V.fword.size() != size_t(V.dim())) throw std::invalid_argument("theta: module " + V.name + " has no f-words");
  ThetaReport rep;
  rep.profile = singular_profile(V);
  int n = V.n;
  int d = 0;
  for (const auto& m : rep.profile.admissible) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  WeightModule M = base_module(n, d);
  WeightModule T = tensor(M, V);  // M-leg first
  int dv = V.dim();
  FormCache fm(M);
  ProductForm pf(M, V);
  std::vector<int> gens(n);
  std::iota(gens.begin(), gens.end(), 1);
  for (const auto& m : rep.profile.admissible) {
    ThetaBlock blk;
    blk.m = m;
    int w = M.index_of_label(m);
    blk.xi = M.wt[w];
    auto ker = joint_kernel(T, T.basis_of_weight(blk.xi + V.highest), gens);
    if (ker.size() != 1)
      throw SingularVectorNotFound("expected a one-dimensional singular space, found " + std::to_string(ker.size()));
    SVec u = ker[0];
    auto it = u.find(w * dv + 0);
    if (it == u.end() || it->second.is_zero()) throw SingularVectorNotFound("singular vector has no w (x) 1_nu term");
    u = scaled(u, it->second.inv());
    blk.u = u;
    // theta(w) = sum_b antipode^{-1}(f_{word(b)}) w_b, with antipode^{-1}(f_i) = -f_i K_{alpha_i}
    SVec acc;
    for (const auto& [idx, c] : u) {
      int a = idx / dv, b = idx % dv;
      SVec x = scaled(unit_vector(a), c);
      for (int i : V.fword[b]) {
        SVec y;
        for (const auto& [k, cv] : x) y.emplace(k, cv * qpow(pairing(alpha(n, i), M.wt[k])));
        x = M.F[i - 1].apply(y);
        x = scaled(x, ScalarK(-1));
      }
      axpy(acc, ScalarK(1), x);
    }
    for (const auto& [k, c] : acc)
      if (k != w) throw std::logic_error("theta: image leaves the weight space");
    auto jt = acc.find(w);
    blk.direct = jt == acc.end() ? ScalarK() : jt->second;
    for (auto [i, j] : positive_roots(n)) blk.l[{i, j}] = l_exponent(M, w, i, j);
    blk.product = theta_product_value(V.highest, blk.xi, blk.l);
    blk.uu = pf.form(u, u);
    blk.ww = fm.pair(w, w);
    rep.blocks.push_back(std::move(blk));
  }
  return rep;
}

std::vector<DetFactor> det_theta(const ThetaReport& r) {
  std::vector<DetFactor> out;
  int n = r.profile.nu.size() - 1;
  for (const auto& blk : r.blocks)
    for (const auto& [ij, lk] : blk.l) {
      Exponent top = pairing(r.profile.nu + rho(n) + blk.xi, root(n, ij.first, ij.second));
      for (int k = 1; k <= lk; ++k) out.push_back({blk.m, ij, k, top + Exponent::q(k)});
    }
  return out;
}

std::vector<DetFactor> det_theta(const WeightModule& V) { return det_theta(theta(V)); }

bool verdict(const std::vector<DetFactor>& f, const Point& pt) {
  for (const auto& x : f)
    if (specialize(qbracket(x.arg), pt) == 0) return false;
  return true;
}

std::string bracket_arg_str(const Exponent& e) {
  std::ostringstream os;
  if (e.b1 == -e.b2) {
    if (e.b1 != 0) {
      if (e.b1 == -1) os << "-";
      else if (e.b1 != 1) os << e.b1 << "*";
      os << "s";
    }
  } else {
    os << "log(y1^" << e.b1 << "*y2^" << e.b2 << ")";
  }
  bool sym = e.b1 != 0 || e.b2 != 0;
  if (e.a2 != 0 || !sym) {
    if (sym && e.a2 > 0) os << "+";
    if (e.a2 % 2 == 0) os << e.a2 / 2;
    else os << e.a2 << "/2";
  }
  return os.str();
}

}  // namespace qpn
