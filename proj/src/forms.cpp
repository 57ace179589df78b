#include "qpn/forms.hpp"

namespace qpn {

FormCache::FormCache(const WeightModule& W) : W_(&W) {
  if (W.pres.size() != size_t(W.dim())) throw std::invalid_argument("FormCache: module " + W.name + " has no presentation");
}

const SVec& FormCache::row(int b) {
  auto it = rows_.find(b);
  if (it != rows_.end()) return it->second;
  const auto& P = W_->pres[b];
  SVec r;
  if (P.parent < 0) {
    r.emplace(b, ScalarK(1));
    for (int y : W_->basis_of_weight(W_->wt[b]))
      if (y != b) throw std::logic_error("FormCache: highest weight space is not one-dimensional");
  } else {
    const Weight& wp = W_->wt[P.parent];
    ScalarK k = -(qpow(pairing(-alpha(W_->n, P.i), wp)) / P.c);
    SVec prow = row(P.parent);  // copy: the map may rehash below
    for (int y : W_->basis_of_weight(W_->wt[b])) {
      ScalarK s;
      for (const auto& [x, c] : W_->E[P.i - 1].column(y)) {
        auto jt = prow.find(x);
        if (jt != prow.end()) s += jt->second * c;
      }
      if (!s.is_zero()) r.emplace(y, k * s);
    }
  }
  return rows_.emplace(b, std::move(r)).first->second;
}

ScalarK FormCache::pair(int a, int b) {
  if (W_->wt[a] != W_->wt[b]) return ScalarK();
  const SVec& r = row(a);
  auto it = r.find(b);
  return it == r.end() ? ScalarK() : it->second;
}

ScalarK FormCache::form(const SVec& x, const SVec& y) {
  ScalarK s;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      ScalarK p = pair(a, b);
      if (!p.is_zero()) s += ca * cb * p;
    }
  return s;
}

Mat FormCache::gram(const Weight& mu) {
  auto basis = W_->basis_of_weight(mu);
  Mat g(int(basis.size()), int(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) g(int(i), int(j)) = pair(basis[i], basis[j]);
  return g;
}

ScalarK ProductForm::pair(int x, int y) {
  ScalarK pa = a_.pair(x / db_, y / db_);
  if (pa.is_zero()) return pa;
  return pa * b_.pair(x % db_, y % db_);
}

ScalarK ProductForm::form(const SVec& x, const SVec& y) {
  ScalarK s;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      ScalarK p = pair(a, b);
      if (!p.is_zero()) s += ca * cb * p;
    }
  return s;
}

Mat ProductForm::gram(const std::vector<int>& basis) {
  Mat g(int(basis.size()), int(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) g(int(i), int(j)) = pair(basis[i], basis[j]);
  return g;
}

Mat shapovalov_gram(const WeightModule& W, const Weight& mu) {
  FormCache fc(W);
  return fc.gram(mu);
}

Mat canonical_form(const WeightModule& V, const WeightModule& M, const Weight& mu) {
  WeightModule T = tensor(V, M);
  ProductForm pf(V, M);
  return pf.gram(T.basis_of_weight(mu));
}

OperatorBlock gram_blocks(const WeightModule& W) {
  OperatorBlock ob;
  FormCache fc(W);
  ob.basis = W.weight_spaces();
  for (const auto& [w, b] : ob.basis) ob.blocks[w] = fc.gram(w);
  return ob;
}

}  // namespace qpn
