#pragma once
// Decomposition of V (x) M into parabolic Verma modules, and invariant projectors.

#include <optional>
#include <vector>

#include "qpn/extremal.hpp"
#include "qpn/forms.hpp"

namespace qpn {

class NotCompletelyReducible : public std::runtime_error {
 public:
  explicit NotCompletelyReducible(const std::string& w) : std::runtime_error("NotCompletelyReducible: " + w) {}
};
class DegenerateBlock : public std::runtime_error {
 public:
  explicit DegenerateBlock(const std::string& w) : std::runtime_error("DegenerateBlock: " + w) {}
};

struct KComponent {
  Weight hw;  // weight of the k-singular vector
  int dim = 0;
  SVec vec;
};

/// One entry per k-singular vector of V, with the dimension of the U_q(k)-module it generates.
std::vector<KComponent> branch_k(const WeightModule& V);

/// ch(M_C) ch(X) for the k-module X with integral highest weight x, degrees |m| <= d.
/// Weights are x - sum m_i beta_i + lambda.
Character parabolic_character(int n, const std::vector<int>& x, int d);

/// epsilon_1-depth of a weight of V (x) M relative to the top weight nu + lambda.
int depth(const Weight& nu, const Weight& mu);
Character restrict_depth(const Character& ch, const Weight& nu, int d);

struct Component {
  Weight hw;                  // highest weight of M_{X_lambda}
  std::vector<int> khw;       // k-highest weight of X
  SVec singular;              // in tensor(V, M) coordinates
  std::map<Weight, std::vector<SVec>> span;  // generated submodule, depth <= d
  Character ch;               // dims of span
  Character expected;         // parabolic_character, depth <= d
};

struct Decomposition {
  WeightModule V, M, T;  // T = tensor(V, M)
  int trunc = 0;
  std::vector<Component> comps;
  Character total;     // sum of component characters
  Character product;   // ch(M) ch(V), depth <= d
  Character ambient;   // dims of T weight spaces, depth <= d
  bool characters_ok = false;
  std::vector<KComponent> branching;
};

/// Singular vectors of V (x) M_{<= d}, generated submodules, character checks.
/// With a specialization, the verdict gates the computation.
Decomposition decompose(const WeightModule& V, int d, const std::optional<Point>& pt = std::nullopt);

/// Canonical-form orthogonal projector onto component i, per weight block of depth <= d.
OperatorBlock invariant_projector(const Decomposition& D, int i);

struct ProjectorCheck {
  bool idempotent = true, orthogonal = true, sum_identity = true, image = true, commutes = true;
  long commute_checks = 0;
  bool ok() const { return idempotent && orthogonal && sum_identity && image && commutes; }
};
ProjectorCheck check_projectors(const Decomposition& D, const std::vector<OperatorBlock>& P);

/// Block ranks of the projectors at a point; nullopt when a denominator vanishes.
std::optional<std::vector<std::map<Weight, int>>> projector_ranks_at(const std::vector<OperatorBlock>& P,
                                                                     const Point& pt);
std::vector<std::map<Weight, int>> projector_ranks(const std::vector<OperatorBlock>& P);

/// Local coordinates of a sparse vector in a weight-space basis.
Vec to_local(const SVec& v, const std::vector<int>& basis);
/// Dense block of an operator between two weight spaces.
Mat block_of(const SpMat& op, const std::vector<int>& from, const std::vector<int>& to);
Mat specialize(const Mat& m, const Point& pt);

}  // namespace qpn
