#pragma once
// Free words in the generators of U_q(gl(n+1)) and their Hopf structure.

#include <map>
#include <string>
#include <vector>

#include "qpn/rootdata.hpp"
#include "qpn/scalars.hpp"

namespace qpn {

class NotARoot : public std::invalid_argument {
 public:
  explicit NotARoot(const std::string& w) : std::invalid_argument("NotARoot: " + w) {}
};

struct Letter {
  enum Kind : char { E = 'e', F = 'f', K = 'K' };
  Kind kind = K;
  int i = 0;  // simple root index for e/f
  Weight mu;  // Cartan exponent for K
  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;  // product, leftmost letter acts last

/// Word product with adjacent Cartan letters merged and K_0 dropped.
Word concat(const Word& a, const Word& b);

class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(const ScalarK& c);  // NOLINT scalar multiple of 1
  static AlgebraElement e(int n, int i);
  static AlgebraElement f(int n, int i);
  static AlgebraElement Kmu(const Weight& mu);
  static AlgebraElement word(int n, const Word& w, const ScalarK& c = ScalarK(1));

  int n = 0;  // rank, 0 if not yet fixed (pure scalars)
  const std::map<Word, ScalarK>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement scaled(const ScalarK& c) const;
  bool operator==(const AlgebraElement& o) const { return t_ == o.t_; }
  std::string str() const;

 private:
  void add(const Word& w, const ScalarK& c);
  std::map<Word, ScalarK> t_;
};

/// d-fold tensor words.
class TensorElement {
 public:
  explicit TensorElement(int d) : d_(d) {}
  int degree() const { return d_; }
  void add(const std::vector<Word>& w, const ScalarK& c);
  const std::map<std::vector<Word>, ScalarK>& terms() const { return t_; }
  bool operator==(const TensorElement& o) const { return d_ == o.d_ && t_ == o.t_; }
  TensorElement operator*(const TensorElement& o) const;  // slotwise product

 private:
  int d_;
  std::map<std::vector<Word>, ScalarK> t_;
};

/// Iterated coproduct into d tensor slots (d >= 1; d = 1 is the identity).
TensorElement coproduct(const AlgebraElement& x, int d);
/// Apply Delta to slot k of a tensor element, producing d+1 slots.
TensorElement coproduct_slot(const TensorElement& x, int k, int n);

AlgebraElement antipode(const AlgebraElement& x);
AlgebraElement antipode_inv(const AlgebraElement& x);
ScalarK counit(const AlgebraElement& x);
/// sigma: e_i <-> f_i, K_mu -> K_{-mu}; algebra automorphism.
AlgebraElement sigma(const AlgebraElement& x);
/// omega = antipode^{-1} o sigma; anti-automorphism.
AlgebraElement omega(const AlgebraElement& x);
/// omega on a single generator letter, from the stored table.
AlgebraElement omega_letter(int n, const Letter& l);

/// e_alpha (sign > 0) or f_alpha (sign < 0) for alpha = alpha_i + ... + alpha_j.
AlgebraElement compound_root(int n, const Weight& alpha, int sign);
AlgebraElement compound_root(int n, int i, int j, int sign);  // alpha_i + ... + alpha_j

/// Parse e.g. "e1*f2*K(-a1)", "e2*e1 - q*e1*e2", "K(e1)".
AlgebraElement parse_element(int n, const std::string& s);

}  // namespace qpn
