#pragma once
// Root data of gl(n+1): weights in the epsilon basis, pairings, rho, characters.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpn/scalars.hpp"

namespace qpn {

class MixedSymbolicPairing : public std::domain_error {
 public:
  MixedSymbolicPairing() : std::domain_error("MixedSymbolicPairing") {}
};

/// A weight: one Exponent per epsilon coordinate. The a2 field holds twice
/// the numeric coordinate; b1, b2 carry the base-point symbols, so that the
/// coordinate (0;1,0) means q^{(w, eps_k)} = y1.
struct Weight {
  std::vector<Exponent> c;

  Weight() = default;
  explicit Weight(int N) : c(N) {}
  static Weight integral(const std::vector<int>& v);
  static Weight halves(const std::vector<int>& twice);

  int size() const { return int(c.size()); }
  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight operator*(int k) const;
  bool operator==(const Weight&) const = default;
  auto operator<=>(const Weight&) const = default;

  bool is_integral() const;  // no y-symbols and whole-number coordinates
  bool is_symbolic() const;
  /// Numeric coordinates (requires is_integral()).
  std::vector<int> ints() const;
  std::string str() const;
};

/// Exponent of q^{(u,w)}.
Exponent pairing(const Weight& u, const Weight& w);

// Root data for gl(n+1); indices are 1-based as in the usual notation.
Weight eps(int n, int k);
Weight alpha(int n, int i);           // eps_i - eps_{i+1}
Weight beta(int n, int i);            // alpha_1 + ... + alpha_i = eps_1 - eps_{i+1}
Weight root(int n, int i, int j);     // eps_i - eps_j
Weight zero_weight(int n);
Weight lambda_weight(int n);          // ((0;1,0), (0;0,1), ..., (0;0,1))
Weight rho(int n);
/// Positive roots eps_i - eps_j (i < j), lexicographic in (i, j).
std::vector<std::pair<int, int>> positive_roots(int n);
bool is_dominant(int n, const Weight& w);

/// Parse "e1+2e2", "e1-e3", "(2,1,0)" or "2,1,0".
Weight parse_weight(int n, const std::string& s);

/// Multiplicities of weights, truncated at a degree.
struct Character {
  std::map<Weight, long> mult;
  int trunc = -1;
  void add(const Weight& w, long k = 1);
  long at(const Weight& w) const;
  Character operator+(const Character& o) const;
  bool operator==(const Character& o) const { return mult == o.mult; }
  long total() const;
};

/// Weyl dimension formula for an integral dominant weight.
long weyl_dimension(int n, const Weight& nu);

/// Weights (with multiplicity) of the gl(k) irreducible with highest weight hw,
/// by Gelfand-Tsetlin patterns. Returns integer epsilon-vectors.
std::map<std::vector<int>, long> gt_character(const std::vector<int>& hw);

}  // namespace qpn
