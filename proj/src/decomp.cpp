#include "qpn/decomp.hpp"

#include <functional>
#include <random>

#include "qpn/parallel.hpp"

namespace qpn {

Vec to_local(const SVec& v, const std::vector<int>& basis) {
  Vec out(basis.size());
  size_t k = 0;
  for (const auto& [i, c] : v) {
    while (k < basis.size() && basis[k] < i) ++k;
    if (k == basis.size() || basis[k] != i) throw std::logic_error("to_local: vector leaves the weight space");
    out[k] = c;
  }
  return out;
}

Mat block_of(const SpMat& op, const std::vector<int>& from, const std::vector<int>& to) {
  Mat m(int(to.size()), int(from.size()));
  for (size_t c = 0; c < from.size(); ++c) {
    Vec col = to_local(op.column(from[c]), to);
    for (size_t r = 0; r < to.size(); ++r) m(int(r), int(c)) = col[r];
  }
  return m;
}

Mat specialize(const Mat& m, const Point& pt) {
  Mat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = ScalarK(specialize(m(i, j), pt));
  return r;
}

namespace {

// Greedy independent subset of vectors (all of one weight), against a fixed basis.
std::vector<SVec> independent(const std::vector<SVec>& vs, const std::vector<int>& basis) {
  if (vs.empty()) return {};
  Mat m(int(basis.size()), int(vs.size()));
  for (size_t c = 0; c < vs.size(); ++c) {
    Vec col = to_local(vs[c], basis);
    for (size_t r = 0; r < basis.size(); ++r) m(int(r), int(c)) = col[r];
  }
  std::vector<SVec> out;
  for (int c : independent_columns(m)) out.push_back(vs[c]);
  return out;
}

// Span of U(n_-) applied to u using the listed f-generators, keeping weights accepted by keep.
std::map<Weight, std::vector<SVec>> generate(const WeightModule& W, const SVec& u, const Weight& top,
                                             const std::vector<int>& gens,
                                             const std::function<bool(const Weight&)>& keep) {
  std::map<Weight, std::vector<SVec>> span;
  span[top] = {u};
  std::map<Weight, std::vector<SVec>> frontier = span;
  while (!frontier.empty()) {
    std::map<Weight, std::vector<SVec>> cand;
    for (const auto& [mu, vs] : frontier)
      for (int j : gens) {
        Weight nu = mu - alpha(W.n, j);
        if (!keep(nu)) continue;
        for (const auto& v : vs) {
          SVec x = W.F[j - 1].apply(v);
          if (!x.empty()) cand[nu].push_back(std::move(x));
        }
      }
    frontier.clear();
    for (auto& [nu, vs] : cand) {
      auto basis = W.basis_of_weight(nu);
      auto ind = independent(vs, basis);
      if (ind.empty()) continue;
      span[nu] = ind;
      frontier[nu] = ind;
    }
  }
  return span;
}

void enumerate_m(int n, int d, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> m(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      fn(m);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      m[i] = k;
      rec(i + 1, left - k);
    }
    m[i] = 0;
  };
  rec(0, d);
}

Weight shift_m(int n, const std::vector<int>& m) {
  Weight s = zero_weight(n);
  for (int i = 1; i <= n; ++i) s = s - beta(n, i) * m[i - 1];
  return s;
}

}  // namespace

std::vector<KComponent> branch_k(const WeightModule& V) {
  std::vector<int> gens;
  for (int i = 2; i <= V.n; ++i) gens.push_back(i);
  std::vector<KComponent> out;
  for (const auto& v : k_singular(V)) {
    KComponent c;
    c.vec = v;
    c.hw = V.wt[v.begin()->first];
    auto span = generate(V, v, c.hw, gens, [](const Weight&) { return true; });
    for (const auto& [w, vs] : span) c.dim += int(vs.size());
    out.push_back(std::move(c));
  }
  return out;
}

Character parabolic_character(int n, const std::vector<int>& x, int d) {
  Character ch;
  ch.trunc = d;
  std::vector<int> tail(x.begin() + 1, x.end());
  auto gt = gt_character(tail);
  Weight lam = lambda_weight(n);
  enumerate_m(n, d, [&](const std::vector<int>& m) {
    Weight s = shift_m(n, m) + lam;
    for (const auto& [w, k] : gt) {
      std::vector<int> full{x[0]};
      full.insert(full.end(), w.begin(), w.end());
      ch.add(Weight::integral(full) + s, k);
    }
  });
  return ch;
}

int depth(const Weight& nu, const Weight& mu) {
  return (nu.c[0].a2 - mu.c[0].a2) / 2;
}

Character restrict_depth(const Character& ch, const Weight& nu, int d) {
  Character r;
  r.trunc = d;
  for (const auto& [w, k] : ch.mult)
    if (depth(nu, w) <= d && k != 0) r.add(w, k);
  return r;
}

Decomposition decompose(const WeightModule& V, int d, const std::optional<Point>& pt) {
  if (pt && !verdict(det_theta(V), *pt)) throw NotCompletelyReducible("extremal twist degenerates at the specialization");
  Decomposition D;
  D.V = V;
  D.trunc = d;
  int n = V.n;
  D.M = base_module(n, d);
  D.T = tensor(D.V, D.M);
  const WeightModule& T = D.T;
  Weight top = V.highest + lambda_weight(n);
  auto keep = [&](const Weight& w) { return depth(top, w) <= d; };

  for (const auto& [w, b] : T.weight_spaces())
    if (keep(w)) D.ambient.add(w, long(b.size()));
  Character chV;
  for (const auto& [w, b] : V.weight_spaces()) chV.add(w, long(b.size()));
  enumerate_m(n, d, [&](const std::vector<int>& m) {
    Weight s = shift_m(n, m) + lambda_weight(n);
    for (const auto& [w, k] : chV.mult)
      if (keep(w + s)) D.product.add(w + s, k);
  });

  std::vector<std::pair<Weight, SVec>> sing;
  for (const auto& [w, b] : T.weight_spaces()) {
    if (!keep(w)) continue;
    for (auto& u : singular_vectors(T, w)) sing.emplace_back(w, std::move(u));
  }
  std::vector<int> gens(n);
  for (int i = 0; i < n; ++i) gens[i] = i + 1;
  D.comps = parallel_map<Component>(int(sing.size()), [&](int i) {
    Component c;
    c.hw = sing[i].first;
    c.singular = sing[i].second;
    c.khw = (c.hw - lambda_weight(n)).ints();
    c.span = generate(T, c.singular, c.hw, gens, keep);
    for (const auto& [w, vs] : c.span) c.ch.add(w, long(vs.size()));
    c.expected = restrict_depth(parabolic_character(n, c.khw, d), top, d);
    return c;
  });
  for (const auto& c : D.comps)
    for (const auto& [w, k] : c.ch.mult) D.total.add(w, k);
  D.branching = branch_k(V);
  D.characters_ok = D.total == D.product && D.product == D.ambient && D.comps.size() == D.branching.size();
  for (const auto& c : D.comps) D.characters_ok = D.characters_ok && c.ch == c.expected;
  return D;
}

OperatorBlock invariant_projector(const Decomposition& D, int i) {
  const Component& c = D.comps.at(i);
  ProductForm pf(D.V, D.M);
  OperatorBlock ob;
  Weight top = D.V.highest + lambda_weight(D.V.n);
  for (const auto& [w, b] : D.T.weight_spaces()) {
    if (depth(top, w) > D.trunc) continue;
    ob.basis[w] = b;
    auto it = c.span.find(w);
    if (it == c.span.end()) {
      ob.blocks[w] = Mat(int(b.size()), int(b.size()));
      continue;
    }
    Mat S(int(b.size()), int(it->second.size()));
    for (size_t k = 0; k < it->second.size(); ++k) {
      Vec col = to_local(it->second[k], b);
      for (size_t r = 0; r < b.size(); ++r) S(int(r), int(k)) = col[r];
    }
    Mat G = pf.gram(b);
    Mat StG = S.transpose() * G;
    auto inv = inverse(StG * S);
    if (!inv) throw DegenerateBlock("canonical form degenerates on component " + std::to_string(i) + " at " + w.str());
    ob.blocks[w] = S * (*inv) * StG;
  }
  return ob;
}

ProjectorCheck check_projectors(const Decomposition& D, const std::vector<OperatorBlock>& P) {
  ProjectorCheck r;
  if (P.empty()) return r;
  const auto& basis = P[0].basis;
  for (const auto& [w, b] : basis) {
    int dim = int(b.size());
    Mat sum(dim, dim);
    for (size_t i = 0; i < P.size(); ++i) {
      const Mat& Pi = P[i].blocks.at(w);
      if (Pi * Pi != Pi) r.idempotent = false;
      for (size_t j = 0; j < P.size(); ++j)
        if (i != j && !(Pi * P[j].blocks.at(w)).is_zero()) r.orthogonal = false;
      sum = sum + Pi;
      auto it = D.comps[i].span.find(w);
      int expect = it == D.comps[i].span.end() ? 0 : int(it->second.size());
      if (rank(Pi) != expect) r.image = false;
    }
    if (sum != Mat::identity(dim)) r.sum_identity = false;
  }
  int n = D.V.n;
  for (const auto& [w, b] : basis)
    for (int j = 1; j <= n; ++j)
      for (int sign : {1, -1}) {
        Weight w2 = sign > 0 ? w + alpha(n, j) : w - alpha(n, j);
        auto it = basis.find(w2);
        if (it == basis.end()) continue;
        Mat X = block_of(sign > 0 ? D.T.E[j - 1] : D.T.F[j - 1], b, it->second);
        for (const auto& Pi : P) {
          ++r.commute_checks;
          if (Pi.blocks.at(w2) * X != X * Pi.blocks.at(w)) r.commutes = false;
        }
      }
  return r;
}

std::vector<std::map<Weight, int>> projector_ranks(const std::vector<OperatorBlock>& P) {
  std::vector<std::map<Weight, int>> out;
  for (const auto& p : P) {
    std::map<Weight, int> m;
    for (const auto& [w, b] : p.blocks) m[w] = rank(b);
    out.push_back(std::move(m));
  }
  return out;
}

std::optional<std::vector<std::map<Weight, int>>> projector_ranks_at(const std::vector<OperatorBlock>& P,
                                                                     const Point& pt) {
  std::vector<std::map<Weight, int>> out;
  try {
    for (const auto& p : P) {
      std::map<Weight, int> m;
      for (const auto& [w, b] : p.blocks) m[w] = rank(specialize(b, pt));
      out.push_back(std::move(m));
    }
  } catch (const DenominatorVanishes&) {
    return std::nullopt;
  }
  return out;
}

}  // namespace qpn
