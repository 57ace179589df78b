#pragma once
// Contravariant forms: <x u, v> = <u, omega(x) v>, <top, top> = 1.

#include <map>
#include <vector>

#include "qpn/linalg.hpp"
#include "qpn/repcore.hpp"

namespace qpn {

/// Weight-block matrices of an operator or a form.
struct OperatorBlock {
  std::map<Weight, std::vector<int>> basis;  // basis indices per weight
  std::map<Weight, Mat> blocks;
};

/// Shapovalov form of a highest-weight module with a presentation, built row
/// by row from <f_i p, y> = -<p, K_{-alpha_i} e_i y> and memoized.
class FormCache {
 public:
  explicit FormCache(const WeightModule& W);
  const WeightModule& module() const { return *W_; }
  const SVec& row(int b);  // <b, y> for basis vectors y of the same weight
  ScalarK pair(int a, int b);
  ScalarK form(const SVec& x, const SVec& y);
  Mat gram(const Weight& mu);  // in the order of basis_of_weight(mu)

 private:
  const WeightModule* W_;
  std::map<int, SVec> rows_;
};

/// Product of the Shapovalov forms of the two factors on tensor(A, B).
class ProductForm {
 public:
  ProductForm(const WeightModule& A, const WeightModule& B) : a_(A), b_(B), db_(B.dim()) {}
  ScalarK pair(int x, int y);
  ScalarK form(const SVec& x, const SVec& y);
  Mat gram(const std::vector<int>& basis);

 private:
  FormCache a_, b_;
  int db_;
};

Mat shapovalov_gram(const WeightModule& W, const Weight& mu);
/// Gram matrix of (V (x) M)[mu] for the product form, basis from tensor(V, M).
Mat canonical_form(const WeightModule& V, const WeightModule& M, const Weight& mu);
OperatorBlock gram_blocks(const WeightModule& W);

}  // namespace qpn
