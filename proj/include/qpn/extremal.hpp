#pragma once
// Singular vectors, the extremal twist on M^+_V, and the complete-reducibility verdict.

#include <map>
#include <vector>

#include "qpn/forms.hpp"
#include "qpn/repcore.hpp"

namespace qpn {

class SingularVectorNotFound : public std::runtime_error {
 public:
  explicit SingularVectorNotFound(const std::string& w) : std::runtime_error("SingularVectorNotFound: " + w) {}
};

struct SingularProfile {
  Weight nu;
  std::vector<int> ell;                      // ell_i = (nu + rho, alpha_i) - 1
  std::vector<std::vector<int>> admissible;  // 0 <= m_i <= ell_i
};

SingularProfile singular_profile(const WeightModule& V);

/// Joint kernel of the given generators e_i on W[mu], as sparse vectors.
std::vector<SVec> joint_kernel(const WeightModule& W, const std::vector<int>& basis, const std::vector<int>& gens);
/// Basis of the singular vectors of W[mu] (killed by every e_i).
std::vector<SVec> singular_vectors(const WeightModule& W, const Weight& mu);
/// U_q(k)-singular weight vectors of V (killed by e_2, ..., e_n).
std::vector<SVec> k_singular(const WeightModule& V);
/// Indices of M^+_V in M: basis vectors with m_i <= ell_i.
std::vector<int> mplus(const WeightModule& M, const SingularProfile& p);

/// l_{xi, alpha}: largest l with e_alpha^l w != 0 (alpha = eps_i - eps_j, i < j).
int l_exponent(const WeightModule& M, int b, int i, int j);

struct ThetaBlock {
  std::vector<int> m;
  Weight xi;
  SVec u;             // singular vector in M (x) V, coefficient 1 on w (x) 1_nu
  ScalarK direct;     // theta eigenvalue by the definition
  ScalarK product;    // Upsilon product eigenvalue
  ScalarK uu;         // canonical form <u, u>
  ScalarK ww;         // <w, w> on M
  std::map<std::pair<int, int>, int> l;  // nilpotency exponents per positive root
};

struct ThetaReport {
  SingularProfile profile;
  std::vector<ThetaBlock> blocks;
};

/// Both routes; V must carry f-words (build_findim, natural, trivial).
ThetaReport theta(const WeightModule& V);
ScalarK theta_product_value(const Weight& nu, const Weight& xi, const std::map<std::pair<int, int>, int>& l);

struct DetFactor {
  std::vector<int> m;
  std::pair<int, int> root;  // eps_i - eps_j
  int k = 0;
  Exponent arg;  // phi = [arg]_q
};

/// Factors phi_{xi, alpha, k} = [(nu + rho + xi, alpha) + k]_q using the computed l exponents.
std::vector<DetFactor> det_theta(const ThetaReport& r);
std::vector<DetFactor> det_theta(const WeightModule& V);
/// True when no factor vanishes at the point.
bool verdict(const std::vector<DetFactor>& f, const Point& pt);
/// Text form of a bracket argument, e.g. "s+1" or "2".
std::string bracket_arg_str(const Exponent& e);

}  // namespace qpn
