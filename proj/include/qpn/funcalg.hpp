#pragma once
// Degree-bounded model of the Hopf dual T: matrix coefficients of mixed tensor powers of
// the natural module and its dual, compared by pairing against a PBW test set.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qpn/braiding.hpp"

namespace qpn {

class DegreeBudgetExceeded : public std::runtime_error {
 public:
  explicit DegreeBudgetExceeded(const std::string& w) : std::runtime_error("DegreeBudgetExceeded: " + w) {}
};
class InvariantsRankMismatch : public std::runtime_error {
 public:
  explicit InvariantsRankMismatch(const std::string& w) : std::runtime_error("InvariantsRankMismatch: " + w) {}
};

/// Matrix coefficient <e^r, x e_c> of the module named by shape: one letter per tensor
/// factor, 't' = natural, 'b' = dual. r, c are flattened multi-indices (first factor major).
struct TWord {
  std::string shape;
  int r = 0, c = 0;
  bool operator==(const TWord&) const = default;
  auto operator<=>(const TWord&) const = default;
};

class TElement {
 public:
  TElement() = default;
  TElement(int n, const ScalarK& c);  // c * 1
  static TElement t(int n, int i, int j);     // 0-based
  static TElement tbar(int n, int i, int j);  // coefficient of the dual module: gamma(t_ji)
  static TElement word(int n, const TWord& w, const ScalarK& c = ScalarK(1));

  int n = 0;
  const std::map<TWord, ScalarK>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int degree() const;

  TElement operator+(const TElement& o) const;
  TElement operator-(const TElement& o) const;
  TElement operator*(const TElement& o) const;
  TElement scaled(const ScalarK& c) const;
  void add(const TWord& w, const ScalarK& c);
  std::string str() const;

 private:
  std::map<TWord, ScalarK> t_;
};

/// Action of some element h on every module: W -> rho_W(h).
using ModuleOp = std::function<SpMat(const WeightModule&)>;
ModuleOp element_op(const AlgebraElement& h);

/// Test functional index: F-monomial, intermediate weight, E-monomial. The pairing of a
/// coefficient with F * (projector onto weight w) * E; these span the same functionals on
/// coefficients of degree <= D as the PBW monomials with K-parts.
struct TestKey {
  int f = 0;
  Weight w;
  int e = 0;
  bool operator==(const TestKey&) const = default;
  auto operator<=>(const TestKey&) const = default;
};
using Functional = std::map<TestKey, ScalarK>;

class TModel {
 public:
  /// PBW monomials in the root vectors with every exponent <= D.
  TModel(int n, int D);
  int n() const { return n_; }
  int budget() const { return D_; }
  int test_monomials() const { return int(pbw_.size()); }

  const WeightModule& shape_module(const std::string& shape) const;
  /// All coefficients of degree <= d.
  std::vector<TWord> coefficients(int d) const;

  ScalarK evaluate(const TElement& a, const AlgebraElement& u) const;
  TElement translate_left(const AlgebraElement& h, const TElement& a) const;   // a(1) (h, a(2))
  TElement translate_right(const TElement& a, const AlgebraElement& h) const;  // (a(1), h) a(2)
  TElement translate_left(const ModuleOp& h, const TElement& a) const;
  TElement translate_right(const TElement& a, const ModuleOp& h) const;

  Functional functional(const TElement& a) const;
  const Functional& functional(const TWord& w) const;
  bool equal(const TElement& a, const TElement& b) const;
  /// Dimension of the span of the given elements modulo evaluation-equality.
  int rank_of(const std::vector<TElement>& xs) const;

  /// Precompute every coefficient functional of degree <= budget (parallel over coefficients).
  void build_table(int threads = 0) const;

 private:
  void check_degree(int d) const;
  struct ShapeData {
    WeightModule W;
    std::vector<SpMat> E, F;  // per PBW monomial
  };
  const ShapeData& shape(const std::string& s) const;
  Functional compute(const TWord& w) const;

  int n_, D_;
  std::vector<std::vector<int>> pbw_;  // exponent per positive root, lexicographic
  mutable std::map<std::string, ShapeData> shapes_;
  mutable std::map<TWord, Functional> table_;
};

/// sum_{k,l} tbar_{ki} A_{kl} t_{lj} (transposed = false) or tbar_{ik} A_{kl} t_{lj}.
TElement embed_A(int n, const Mat& A_nat, int i, int j, bool transposed = false);
/// a◁b = eps(b) a for every generator K_ij of b_action.
bool b_invariant(const TModel& T, const TElement& a, const Mat& A_nat);

/// Elements of T (x) V as components along e_0..e_n.
using TV = std::vector<TElement>;
/// a (x) e_i -> sum_j a t_ij (x) e_j.
TV iota(const TV& x);
/// a (x) e_j -> sum_k a tbar_kj (x) e_k.
TV iota_bar(const TV& x);
bool tv_equal(const TModel& T, const TV& a, const TV& b);

/// Left-T-linear map iota (1 (x) P) iota_bar as a matrix over T: M = T^{-1} P T.
std::vector<std::vector<TElement>> iota_conjugate(int n, const Mat& P);
/// P^ with Q-words replaced through Q_ij -> embed_A(i, j), legs swapped.
std::vector<std::vector<TElement>> phat21(int n, const ChiContract& C, const Mat& A_nat);

struct TwoProjectorCheck {
  bool holds = false;      // M_ab = P^_ab for all a, b
  bool counit = false;     // eps of both sides equals P
  int degree = 0;
};
TwoProjectorCheck check_two_projectors(const TModel& T, const Mat& P, const ChiContract& C, const Mat& A_nat);

/// Graded dimensions (degree <= 0..budget) of (T (x) X)^B, X = row space of `rows` inside V
/// with the diagonal right action; the b_action generators give the conditions.
std::vector<long> b_invariant_dims(const TModel& T, const WeightModule& V, const Mat& rows, const Mat& A_nat);

/// Right B-module X = V P as a row basis.
Mat row_space(const Mat& P);

/// sum over irreducible V_mu occurring in degree <= d of dim V_mu * dim Hom_k(V_mu, X), X the k-type x,
/// for d = 0..D.
std::vector<long> classical_section_dims(int n, const std::vector<int>& x, int D);

}  // namespace qpn
