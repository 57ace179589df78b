#pragma once
// Weight modules with explicit generator actions.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qpn/linalg.hpp"
#include "qpn/rootdata.hpp"
#include "qpn/uqalg.hpp"

namespace qpn {

class TruncationOverflow : public std::runtime_error {
 public:
  explicit TruncationOverflow(const std::string& w) : std::runtime_error("TruncationOverflow: " + w) {}
};

class NotDominant : public std::invalid_argument {
 public:
  explicit NotDominant(const std::string& w) : std::invalid_argument("NotDominant: " + w) {}
};

/// Finite (possibly truncated) weight module. Basis vector b has weight wt[b];
/// E[i-1], F[i-1] are the actions of e_i, f_i.
struct WeightModule {
  int n = 1;
  std::string name;
  std::vector<Weight> wt;
  std::vector<SpMat> E, F;
  std::vector<int> deg;  // filtration degree (|m| on the base module)
  int trunc = -1;        // maximal degree kept, -1 if the module is complete
  /// overflow[i-1][b]: the true f_i b has components outside the truncation.
  std::vector<std::vector<char>> overflow;

  /// Highest-weight presentation: f_{pres[b].i} pres[b].parent = pres[b].c * b.
  /// pres[0] is the highest vector (parent -1). Empty if not available.
  struct Pres {
    int i = 0;
    int parent = -1;
    ScalarK c;
  };
  std::vector<Pres> pres;
  /// b = f_{w[0]} f_{w[1]} ... f_{w[k-1]} applied to the highest vector (exact, coefficient 1).
  std::vector<std::vector<int>> fword;
  /// Multi-index labels for the base module.
  std::vector<std::vector<int>> label;
  Weight highest;

  int dim() const { return int(wt.size()); }
  bool truncated() const { return trunc >= 0; }
  SpMat K(const Weight& mu) const;
  std::map<Weight, std::vector<int>> weight_spaces() const;
  std::vector<int> basis_of_weight(const Weight& w) const;
  int index_of_label(const std::vector<int>& m) const;
};

WeightModule trivial_module(int n);
WeightModule natural_module(int n);
/// Contragredient module: x acts by pi(antipode(x))^T.
WeightModule dual_module(const WeightModule& W);
/// Base module M_{<= d}: basis f_{beta_1}^{m_1} ... f_{beta_n}^{m_n} 1_lambda, |m| <= d.
WeightModule base_module(int n, int d);
/// Irreducible module with dominant integral highest weight nu.
WeightModule build_findim(int n, const Weight& nu);
/// W1 (x) W2 via Delta; basis (a, b) -> a * dim(W2) + b.
WeightModule tensor(const WeightModule& W1, const WeightModule& W2);

/// Generator action on the base module with overflow detection.
enum class Gen { E, F };
SVec base_action(const WeightModule& M, Gen g, int i, const std::vector<int>& m);

/// Action of an algebra element (words act right to left). With strict, f-letters
/// that leave the truncation throw TruncationOverflow.
SVec act(const WeightModule& W, const AlgebraElement& x, const SVec& v, bool strict = true);
SpMat op(const WeightModule& W, const AlgebraElement& x, bool strict = false);
SVec unit_vector(int b);

/// Descriptor parser: "trivial", "natural", "dual", "findim:<weight>", "base:trunc=<d>".
WeightModule module_from_descriptor(int n, const std::string& desc);

/// Compound root operator e_alpha / f_alpha for alpha = alpha_i + ... + alpha_j.
SpMat root_operator(const WeightModule& W, int i, int j, int sign);

}  // namespace qpn

namespace qpn {

struct RelationReport {
  long checked = 0;     // (relation, basis vector) pairs evaluated
  long violations = 0;
  std::vector<std::string> failures;  // first few, for diagnostics
};

/// Chevalley, Cartan and q-Serre relations on every basis vector of degree <= trunc - guard,
/// plus weight compatibility of all action-table entries.
RelationReport check_relations(const WeightModule& W, int guard = 2);

}  // namespace qpn
