#pragma once
// R-matrix actions, the Q-matrix, reflection-equation matrix A, the character chi,
// the coideal generators K_ij and their invariant projectors.

#include <optional>
#include <vector>

#include "qpn/decomp.hpp"

namespace qpn {

class GuardBandTooSmall : public std::runtime_error {
 public:
  explicit GuardBandTooSmall(const std::string& w) : std::runtime_error("GuardBandTooSmall: " + w) {}
};
class ReducibilitySplitFailure : public std::runtime_error {
 public:
  explicit ReducibilitySplitFailure(const std::string& w) : std::runtime_error("ReducibilitySplitFailure: " + w) {}
};
class ExpansionNotFound : public std::runtime_error {
 public:
  explicit ExpansionNotFound(const std::string& w) : std::runtime_error("ExpansionNotFound: " + w) {}
};
class WordRelationViolation : public std::runtime_error {
 public:
  explicit WordRelationViolation(const std::string& w) : std::runtime_error("WordRelationViolation: " + w) {}
};

/// q^{(wt1, wt2)} composed with the ordered product over positive roots (lexicographic in (i, j))
/// of sum_k q^{k(k-1)/2} (q - q^{-1})^k / [k]! e_beta^k (x) f_beta^k.
SpMat r_action(const WeightModule& W1, const WeightModule& W2);
/// Flip W1 (x) W2 -> W2 (x) W1.
SpMat flip(int d1, int d2);
/// q sum E_ii (x) E_ii + sum_{i != j} E_ii (x) E_jj + (q - q^{-1}) sum_{i<j} E_ij (x) E_ji.
Mat frt_matrix(int n);
/// Yang-Baxter R12 R13 R23 = R23 R13 R12 for R on V (x) V.
bool yang_baxter(const SpMat& R, int dimV);
/// (flip R) Delta(x) = Delta(x) (flip R) for all generators, on columns of degree <= limit (all if < 0).
bool intertwines(const WeightModule& W1, const WeightModule& W2, const SpMat& R, int limit = -1);

/// Q = (pi (x) id)(R_21 R) on C^{n+1} (x) W, and its blocks Q_ij acting on W.
struct QMatrix {
  int n = 1;
  SpMat total;
  std::vector<std::vector<SpMat>> blocks;  // blocks[i][j], 0-based
};
QMatrix q_matrix(const WeightModule& W);
/// Q commutes with Delta(x) on C^{n+1} (x) W on columns with degree <= trunc - guard.
bool q_commutes(const WeightModule& W, const QMatrix& Q, int guard = 2);
/// R_21 Q_1 R_12 Q_2 = Q_2 R_21 Q_1 R_12 on C^{n+1} (x) C^{n+1} (x) W within the guard band.
bool q_reflection_equation(const WeightModule& W, const QMatrix& Q, int guard = 2);

struct REMatrix {
  int n = 1;
  ScalarK x1, x2, c, d;
  Mat A;  // ordered as displayed: A_11 = x1 + q^{-2} x2, A_{1,n+1} = c, A_{n+1,1} = d
};
/// Displayed matrix with d = -q^{-2} x1 x2 / c.
REMatrix re_matrix(int n, const ScalarK& c = ScalarK(1));
/// Same shape with a prescribed d.
REMatrix re_matrix(int n, const ScalarK& c, const ScalarK& d);
/// The displayed matrix in the basis of the natural module (index reversal J A J).
Mat natural_basis(const Mat& A);
/// R_21 A_1 R_12 A_2 = A_2 R_21 A_1 R_12, exact, with R = frt_matrix.
bool re_check(int n, const Mat& A);

using QWord = std::vector<std::pair<int, int>>;  // 0-based (i, j)
ScalarK chi(const QWord& w, const Mat& A_nat);
std::vector<QWord> q_words(int n, int degree);
/// Kernel of {Q-words of degree <= d} -> operators on the truncated M, annihilated by chi.
struct ChiConsistency {
  int words = 0, kernel_dim = 0, columns = 0;
  bool ok = false;
};
ChiConsistency chi_consistency(int n, int d, int trunc, const ScalarK& c = ScalarK(1));

/// K = (pi (x) id)(R_21) A_1 (pi (x) id)(R_12) on C^{n+1} (x) W with A in the natural basis.
struct BAction {
  int n = 1;
  SpMat total;
  std::vector<std::vector<Mat>> blocks;  // K_ij on W
};
BAction b_action(const WeightModule& W, const Mat& A_nat);

struct BSubmodules {
  std::vector<Mat> projectors;
  std::vector<ScalarK> eigenvalues;
  int commutant_dim = 0;
  std::vector<int> ranks;
};
/// Commutant of the K_ij, minimal polynomial of a random element, Kronecker/Hensel roots,
/// Lagrange idempotents.
BSubmodules b_submodules(const WeightModule& W, const Mat& A_nat, unsigned seed = 1);
bool commutes_with(const BAction& K, const Mat& P);
/// Projector ranks at a point; nullopt when a denominator vanishes there.
std::optional<std::vector<int>> ranks_at(const std::vector<Mat>& P, const Point& pt);

/// P = P^_1 chi(P^_2) from an invariant projector on V (x) M via Q-words of degree <= wdeg.
struct ChiContract {
  Mat P;
  int words = 0, columns = 0;
  std::map<std::pair<int, int>, std::map<QWord, ScalarK>> expansion;  // P^_ab = sum c_w Q_w
};
ChiContract chi_contract(const Decomposition& D, const OperatorBlock& Phat, const Mat& A_nat, int wdeg = 2);

}  // namespace qpn
