#include "qpn/repcore.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace qpn {

SpMat WeightModule::K(const Weight& mu) const {
  SpMat k(dim(), dim());
  for (int b = 0; b < dim(); ++b) k.add(b, b, qpow(pairing(mu, wt[b])));
  return k;
}

std::map<Weight, std::vector<int>> WeightModule::weight_spaces() const {
  std::map<Weight, std::vector<int>> r;
  for (int b = 0; b < dim(); ++b) r[wt[b]].push_back(b);
  return r;
}

std::vector<int> WeightModule::basis_of_weight(const Weight& w) const {
  std::vector<int> r;
  for (int b = 0; b < dim(); ++b)
    if (wt[b] == w) r.push_back(b);
  return r;
}

int WeightModule::index_of_label(const std::vector<int>& m) const {
  for (int b = 0; b < int(label.size()); ++b)
    if (label[b] == m) return b;
  return -1;
}

SVec unit_vector(int b) { return SVec{{b, ScalarK(1)}}; }

namespace {

void init_empty(WeightModule& W, int dim) {
  W.E.assign(W.n, SpMat(dim, dim));
  W.F.assign(W.n, SpMat(dim, dim));
  W.deg.assign(dim, 0);
  W.overflow.assign(W.n, std::vector<char>(dim, 0));
}

}  // namespace

WeightModule trivial_module(int n) {
  WeightModule W;
  W.n = n;
  W.name = "trivial";
  W.wt = {zero_weight(n)};
  init_empty(W, 1);
  W.pres = {{0, -1, ScalarK(1)}};
  W.fword = {{}};
  W.highest = zero_weight(n);
  return W;
}

WeightModule natural_module(int n) {
  WeightModule W;
  W.n = n;
  W.name = "natural";
  int N = n + 1;
  for (int k = 1; k <= N; ++k) W.wt.push_back(eps(n, k));
  init_empty(W, N);
  for (int i = 1; i <= n; ++i) {
    W.E[i - 1].add(i - 1, i, ScalarK(1));
    W.F[i - 1].add(i, i - 1, ScalarK(1));
  }
  W.pres.push_back({0, -1, ScalarK(1)});
  W.fword.push_back({});
  for (int k = 1; k < N; ++k) {
    W.pres.push_back({k, k - 1, ScalarK(1)});
    std::vector<int> w = {k};
    w.insert(w.end(), W.fword[k - 1].begin(), W.fword[k - 1].end());
    W.fword.push_back(w);
  }
  W.highest = eps(n, 1);
  return W;
}

WeightModule dual_module(const WeightModule& V) {
  if (V.truncated()) throw std::invalid_argument("dual of a truncated module");
  WeightModule W;
  W.n = V.n;
  W.name = "dual(" + V.name + ")";
  for (const auto& w : V.wt) W.wt.push_back(-w);
  init_empty(W, V.dim());
  for (int i = 1; i <= V.n; ++i) {
    Weight a = alpha(V.n, i);
    // pi(antipode(e_i)) = -pi(e_i) K_{-a}; pi(antipode(f_i)) = -K_a pi(f_i)
    SpMat e = (V.E[i - 1] * V.K(-a)).scaled(ScalarK(-1));
    SpMat f = (V.K(a) * V.F[i - 1]).scaled(ScalarK(-1));
    for (int c = 0; c < V.dim(); ++c) {
      for (const auto& [r, x] : e.column(c)) W.E[i - 1].add(c, r, x);
      for (const auto& [r, x] : f.column(c)) W.F[i - 1].add(c, r, x);
    }
  }
  W.highest = -V.wt.back();
  return W;
}

namespace {

std::vector<std::vector<int>> multi_indices(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> m(n, 0);
  std::function<void(int, int)> rec = [&](int k, int left) {
    if (k == n) {
      out.push_back(m);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      m[k] = x;
      rec(k + 1, left - x);
    }
  };
  rec(0, d);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int sa = std::accumulate(a.begin(), a.end(), 0), sb = std::accumulate(b.begin(), b.end(), 0);
    if (sa != sb) return sa < sb;
    return a > b;
  });
  return out;
}

}  // namespace

WeightModule base_module(int n, int d) {
  WeightModule W;
  W.n = n;
  W.name = "base:trunc=" + std::to_string(d);
  W.label = multi_indices(n, d);
  int dim = int(W.label.size());
  init_empty(W, dim);
  W.trunc = d;
  std::map<std::vector<int>, int> idx;
  for (int b = 0; b < dim; ++b) idx[W.label[b]] = b;
  Weight lam = lambda_weight(n);
  W.highest = lam;
  ScalarK q = ScalarK::q();
  for (int b = 0; b < dim; ++b) {
    const auto& m = W.label[b];
    int M = std::accumulate(m.begin(), m.end(), 0);
    W.deg[b] = M;
    Weight w = lam;
    for (int k = 1; k <= n; ++k) w = w - beta(n, k) * m[k - 1];
    W.wt.push_back(w);
    // e_1: [m_1][s - |m| + 1], m_1 -> m_1 - 1
    if (m[0] > 0) {
      auto t = m;
      t[0] -= 1;
      W.E[0].add(idx.at(t), b, qbracket(m[0]) * qbracket(Exponent{2 * (1 - M), 1, -1}));
    }
    // f_1: m_1 -> m_1 + 1
    if (M < d) {
      auto t = m;
      t[0] += 1;
      W.F[0].add(idx.at(t), b, ScalarK(1));
    } else {
      W.overflow[0][b] = 1;
    }
    for (int i = 2; i <= n; ++i) {
      if (m[i - 1] > 0) {
        auto t = m;
        t[i - 2] += 1;
        t[i - 1] -= 1;
        W.E[i - 1].add(idx.at(t), b, -(q * qbracket(m[i - 1])));
      }
      if (m[i - 2] > 0) {
        auto t = m;
        t[i - 2] -= 1;
        t[i - 1] += 1;
        W.F[i - 1].add(idx.at(t), b, -(q.inv() * qbracket(m[i - 2])));
      }
    }
  }
  // presentations
  W.pres.assign(dim, {});
  W.pres[0] = {0, -1, ScalarK(1)};
  for (int b = 1; b < dim; ++b) {
    const auto& m = W.label[b];
    if (m[0] > 0) {
      auto t = m;
      t[0] -= 1;
      W.pres[b] = {1, idx.at(t), ScalarK(1)};
      continue;
    }
    int k = 2;
    while (m[k - 1] == 0) ++k;
    auto t = m;
    t[k - 2] += 1;
    t[k - 1] -= 1;
    W.pres[b] = {k, idx.at(t), -(q.inv() * qbracket(t[k - 2]))};
  }
  return W;
}

SVec base_action(const WeightModule& M, Gen g, int i, const std::vector<int>& m) {
  int b = M.index_of_label(m);
  if (b < 0) throw TruncationOverflow("multi-index outside the truncated basis");
  if (g == Gen::F && M.overflow[i - 1][b]) throw TruncationOverflow("f_" + std::to_string(i) + " leaves degree " +
                                                                  std::to_string(M.trunc));
  return (g == Gen::E ? M.E : M.F)[i - 1].column(b);
}

WeightModule build_findim(int n, const Weight& nu) {
  if (nu.size() != n + 1 || !is_dominant(n, nu)) throw NotDominant(nu.str());
  WeightModule W;
  W.n = n;
  {
    auto v = nu.ints();
    W.name = "findim:(";
    for (size_t k = 0; k < v.size(); ++k) W.name += (k ? "," : "") + std::to_string(v[k]);
    W.name += ")";
  }
  W.highest = nu;
  std::vector<std::vector<SVec>> Ec(n), Fc(n);  // columns by basis index
  std::map<Weight, std::vector<int>> byw;
  std::map<Weight, Mat> gram;
  auto add_basis = [&](const Weight& w, std::vector<int> word, WeightModule::Pres p) {
    W.wt.push_back(w);
    W.fword.push_back(std::move(word));
    W.pres.push_back(p);
    for (int i = 0; i < n; ++i) {
      Ec[i].emplace_back();
      Fc[i].emplace_back();
    }
    return int(W.wt.size()) - 1;
  };
  add_basis(nu, {}, {0, -1, ScalarK(1)});
  byw[nu] = {0};
  gram[nu] = Mat::identity(1);

  // e_j f_i b = f_i e_j b + delta_ij [(alpha_i, wt b)] b
  auto ef = [&](int j, int i, int b) {
    SVec r;
    for (const auto& [x, c] : Ec[j - 1][b]) axpy(r, c, Fc[i - 1][x]);
    if (i == j) axpy(r, qbracket(pairing(alpha(n, i), W.wt[b])), unit_vector(b));
    return r;
  };

  std::vector<Weight> level = {nu};
  while (!level.empty()) {
    std::set<Weight> next;
    for (const auto& w : level)
      for (int i = 1; i <= n; ++i) next.insert(w - alpha(n, i));
    level.clear();
    for (const auto& w2 : next) {
      if (byw.count(w2)) continue;
      std::vector<std::pair<int, int>> cand;
      for (int i = 1; i <= n; ++i) {
        auto it = byw.find(w2 + alpha(n, i));
        if (it == byw.end()) continue;
        for (int b : it->second) cand.push_back({i, b});
      }
      if (cand.empty()) continue;
      int nc = int(cand.size());
      Mat G(nc, nc);
      for (int x = 0; x < nc; ++x) {
        auto [i, b] = cand[x];
        const Weight wp = w2 + alpha(n, i);
        const auto& basis_wp = byw.at(wp);
        const Mat& Gp = gram.at(wp);
        int pb = int(std::find(basis_wp.begin(), basis_wp.end(), b) - basis_wp.begin());
        ScalarK kf = -qpow(pairing(-alpha(n, i), wp));
        for (int y = 0; y < nc; ++y) {
          auto [k, bp] = cand[y];
          SVec v = ef(i, k, bp);
          ScalarK s;
          for (const auto& [r, c] : v) {
            int pr = int(std::find(basis_wp.begin(), basis_wp.end(), r) - basis_wp.begin());
            if (pr == int(basis_wp.size())) throw std::logic_error("build_findim: weight bookkeeping");
            s += Gp(pb, pr) * c;
          }
          G(x, y) = kf * s;
        }
      }
      auto chosen = independent_columns(G);
      if (chosen.empty()) continue;
      int r = int(chosen.size());
      Mat Gs(r, r), rhs(r, nc);
      for (int a = 0; a < r; ++a) {
        for (int c = 0; c < r; ++c) Gs(a, c) = G(chosen[a], chosen[c]);
        for (int x = 0; x < nc; ++x) rhs(a, x) = G(chosen[a], x);
      }
      auto sol = solve(Gs, rhs);
      if (!sol) throw std::logic_error("build_findim: singular Gram block");
      std::vector<int> idxs;
      for (int a = 0; a < r; ++a) {
        auto [i, b] = cand[chosen[a]];
        std::vector<int> word = {i};
        word.insert(word.end(), W.fword[b].begin(), W.fword[b].end());
        idxs.push_back(add_basis(w2, word, {i, b, ScalarK(1)}));
      }
      byw[w2] = idxs;
      gram[w2] = Gs;
      for (int x = 0; x < nc; ++x) {
        auto [i, b] = cand[x];
        for (int a = 0; a < r; ++a)
          if (!(*sol)(a, x).is_zero()) Fc[i - 1][b][idxs[a]] = (*sol)(a, x);
      }
      for (int a = 0; a < r; ++a) {
        auto [i, b] = cand[chosen[a]];
        for (int j = 1; j <= n; ++j) Ec[j - 1][idxs[a]] = ef(j, i, b);
      }
      level.push_back(w2);
    }
  }
  int dim = W.dim();
  init_empty(W, dim);
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < dim; ++b) {
      W.E[i].column(b) = Ec[i][b];
      W.F[i].column(b) = Fc[i][b];
    }
  return W;
}

WeightModule tensor(const WeightModule& A, const WeightModule& B) {
  if (A.n != B.n) throw std::invalid_argument("tensor: rank mismatch");
  WeightModule W;
  W.n = A.n;
  W.name = A.name + "(x)" + B.name;
  int da = A.dim(), db = B.dim();
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) W.wt.push_back(A.wt[a] + B.wt[b]);
  init_empty(W, da * db);
  SpMat Ia = SpMat::identity(da), Ib = SpMat::identity(db);
  for (int i = 1; i <= W.n; ++i) {
    Weight al = alpha(W.n, i);
    W.E[i - 1] = kron(A.E[i - 1], B.K(al)) + kron(Ia, B.E[i - 1]);
    W.F[i - 1] = kron(A.F[i - 1], Ib) + kron(A.K(-al), B.F[i - 1]);
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < db; ++b) W.overflow[i - 1][a * db + b] = A.overflow[i - 1][a] || B.overflow[i - 1][b];
  }
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) W.deg[a * db + b] = A.deg[a] + B.deg[b];
  if (A.truncated() || B.truncated()) W.trunc = *std::max_element(W.deg.begin(), W.deg.end());
  W.highest = A.highest + B.highest;
  return W;
}

SVec act(const WeightModule& W, const AlgebraElement& x, const SVec& v, bool strict) {
  SVec out;
  for (const auto& [word, c] : x.terms()) {
    SVec cur = v;
    for (auto it = word.rbegin(); it != word.rend() && !cur.empty(); ++it) {
      const Letter& l = *it;
      if (l.kind == Letter::K) {
        SVec nx;
        for (const auto& [b, y] : cur) nx.emplace(b, y * qpow(pairing(l.mu, W.wt[b])));
        cur = std::move(nx);
      } else if (l.kind == Letter::E) {
        cur = W.E.at(l.i - 1).apply(cur);
      } else {
        if (strict)
          for (const auto& [b, y] : cur)
            if (W.overflow[l.i - 1][b]) throw TruncationOverflow(W.name + ": f_" + std::to_string(l.i));
        cur = W.F.at(l.i - 1).apply(cur);
      }
    }
    axpy(out, c, cur);
  }
  return out;
}

SpMat op(const WeightModule& W, const AlgebraElement& x, bool strict) {
  SpMat m(W.dim(), W.dim());
  for (int b = 0; b < W.dim(); ++b) m.column(b) = act(W, x, unit_vector(b), strict);
  return m;
}

SpMat root_operator(const WeightModule& W, int i, int j, int sign) {
  ScalarK q = ScalarK::q();
  if (sign > 0) {
    SpMat x = W.E[i - 1];
    for (int k = i + 1; k <= j; ++k) x = W.E[k - 1] * x - (x * W.E[k - 1]).scaled(q);
    return x;
  }
  SpMat x = W.F[i - 1];
  for (int k = i + 1; k <= j; ++k) x = x * W.F[k - 1] - (W.F[k - 1] * x).scaled(q.inv());
  return x;
}

WeightModule module_from_descriptor(int n, const std::string& d) {
  if (d == "trivial") return trivial_module(n);
  if (d == "natural") return natural_module(n);
  if (d == "dual") return dual_module(natural_module(n));
  if (d == "adjoint") return build_findim(n, eps(n, 1) - eps(n, n + 1));
  if (d.rfind("findim:", 0) == 0) return build_findim(n, parse_weight(n, d.substr(7)));
  if (d.rfind("base:trunc=", 0) == 0) return base_module(n, std::stoi(d.substr(11)));
  throw std::invalid_argument("unknown module descriptor: " + d);
}

}  // namespace qpn

namespace qpn {

RelationReport check_relations(const WeightModule& W, int guard) {
  RelationReport rep;
  int n = W.n;
  auto fail = [&](const std::string& what) {
    ++rep.violations;
    if (rep.failures.size() < 10) rep.failures.push_back(what);
  };
  for (int i = 1; i <= n; ++i)
    for (int b = 0; b < W.dim(); ++b) {
      for (const auto& [r, c] : W.E[i - 1].column(b)) {
        ++rep.checked;
        if (W.wt[r] != W.wt[b] + alpha(n, i)) fail("e" + std::to_string(i) + " weight at " + std::to_string(b));
      }
      for (const auto& [r, c] : W.F[i - 1].column(b)) {
        ++rep.checked;
        if (W.wt[r] != W.wt[b] - alpha(n, i)) fail("f" + std::to_string(i) + " weight at " + std::to_string(b));
      }
    }
  std::vector<std::pair<std::string, AlgebraElement>> rels;
  ScalarK q = ScalarK::q();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      auto ei = AlgebraElement::e(n, i), fj = AlgebraElement::f(n, j);
      AlgebraElement r = ei * fj - fj * ei;
      if (i == j) {
        // [h_i]_q = (K_{alpha_i} - K_{-alpha_i}) / (q - q^{-1})
        AlgebraElement h = (AlgebraElement::Kmu(alpha(n, i)) - AlgebraElement::Kmu(-alpha(n, i))).scaled((q - q.inv()).inv());
        r = r - h;
      }
      rels.push_back({"[e" + std::to_string(i) + ",f" + std::to_string(j) + "]", r});
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (int s : {1, -1}) {
        auto g = [&](int k) { return s > 0 ? AlgebraElement::e(n, k) : AlgebraElement::f(n, k); };
        std::string nm = std::string(s > 0 ? "e" : "f") + std::to_string(i) + std::to_string(j);
        if (std::abs(i - j) == 1) {
          AlgebraElement r = g(i) * g(i) * g(j) - (g(i) * g(j) * g(i)).scaled(qbracket(2)) + g(j) * g(i) * g(i);
          rels.push_back({"serre " + nm, r});
        } else if (i < j) {
          rels.push_back({"commute " + nm, g(i) * g(j) - g(j) * g(i)});
        }
      }
    }
  // K_mu e_i K_{-mu} = q^{(mu, alpha_i)} e_i for mu = eps_k
  for (int k = 1; k <= n + 1; ++k)
    for (int i = 1; i <= n; ++i) {
      auto Kp = AlgebraElement::Kmu(eps(n, k)), Km = AlgebraElement::Kmu(-eps(n, k));
      auto ei = AlgebraElement::e(n, i), fi = AlgebraElement::f(n, i);
      rels.push_back({"cartan e", Kp * ei * Km - ei.scaled(qpow(pairing(eps(n, k), alpha(n, i))))});
      rels.push_back({"cartan f", Kp * fi * Km - fi.scaled(qpow(-pairing(eps(n, k), alpha(n, i))))});
    }
  int limit = W.truncated() ? W.trunc - guard : INT32_MAX;
  for (int b = 0; b < W.dim(); ++b) {
    if (W.deg[b] > limit) continue;
    for (const auto& [nm, r] : rels) {
      ++rep.checked;
      SVec v = act(W, r, unit_vector(b), true);
      if (!v.empty()) fail(nm + " on basis " + std::to_string(b));
    }
  }
  return rep;
}

}  // namespace qpn
