#pragma once
// Exact coefficient field K = Frac(Z[v^{+-1}, y1^{+-1}, y2^{+-1}]), q = v^2.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qpn {

struct Exponent {
  int a2 = 0;  // power of v (so q^{a2/2})
  int b1 = 0;  // power of y1
  int b2 = 0;  // power of y2

  Exponent() = default;
  constexpr Exponent(int a, int b, int c) : a2(a), b1(b), b2(c) {}
  static constexpr Exponent q(int k) { return {2 * k, 0, 0}; }

  Exponent operator+(const Exponent& o) const { return {a2 + o.a2, b1 + o.b1, b2 + o.b2}; }
  Exponent operator-(const Exponent& o) const { return {a2 - o.a2, b1 - o.b1, b2 - o.b2}; }
  Exponent operator-() const { return {-a2, -b1, -b2}; }
  Exponent operator*(int k) const { return {a2 * k, b1 * k, b2 * k}; }
  bool operator==(const Exponent&) const = default;
  auto operator<=>(const Exponent&) const = default;
  bool is_zero() const { return a2 == 0 && b1 == 0 && b2 == 0; }
  bool symbolic() const { return b1 != 0 || b2 != 0; }
};

/// Sparse Laurent polynomial in v, y1, y2 with integer coefficients.
/// Monomials are packed into one int64 (21 bits per exponent, biased), so
/// key order is lexicographic in (v, y1, y2).
class LPoly {
 public:
  static constexpr int kBits = 21;
  static constexpr int64_t kBias = int64_t(1) << (kBits - 1);
  static constexpr int64_t kMask = (int64_t(1) << kBits) - 1;
  static constexpr int64_t kZeroKey = (kBias << (2 * kBits)) | (kBias << kBits) | kBias;

  struct Term {
    int64_t key;
    mpz_class c;
  };

  LPoly() = default;
  explicit LPoly(long c);
  explicit LPoly(const mpz_class& c);
  static LPoly monomial(const Exponent& e, const mpz_class& c = 1);

  static int64_t pack(int a, int b, int c) {
    return ((int64_t(a) + kBias) << (2 * kBits)) | ((int64_t(b) + kBias) << kBits) | (int64_t(c) + kBias);
  }
  static Exponent unpack(int64_t k) {
    return {int((k >> (2 * kBits)) & kMask) - int(kBias), int((k >> kBits) & kMask) - int(kBias),
            int(k & kMask) - int(kBias)};
  }

  bool is_zero() const { return t_.empty(); }
  bool is_one() const { return t_.size() == 1 && t_[0].key == kZeroKey && t_[0].c == 1; }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].key == kZeroKey); }
  bool is_monomial() const { return t_.size() == 1; }
  size_t size() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }
  const Term& lead() const { return t_.back(); }

  LPoly operator+(const LPoly& o) const;
  LPoly operator-(const LPoly& o) const;
  LPoly operator-() const;
  LPoly operator*(const LPoly& o) const;
  LPoly& operator+=(const LPoly& o) { return *this = *this + o; }
  LPoly& operator-=(const LPoly& o) { return *this = *this - o; }
  LPoly& operator*=(const LPoly& o) { return *this = *this * o; }
  LPoly mul_monomial(int64_t key, const mpz_class& c) const;
  LPoly scaled(const mpz_class& c) const;
  LPoly divexact_int(const mpz_class& c) const;
  bool operator==(const LPoly& o) const;
  bool operator!=(const LPoly& o) const { return !(*this == o); }

  mpz_class content() const;            // positive gcd of coefficients (0 for zero)
  Exponent min_exponents() const;       // componentwise minimum
  Exponent max_exponents() const;
  mpz_class max_norm() const;
  mpz_class l1_norm() const;
  /// Exact division; nullopt if not divisible in the Laurent ring.
  std::optional<LPoly> divide(const LPoly& d) const;

  std::string str() const;
  size_t hash() const;

  // construction from raw sorted terms
  static LPoly from_terms(std::vector<Term> t);

 private:
  std::vector<Term> t_;  // sorted ascending by key, no zero coefficients
};

/// Greatest common divisor in Z[v^{+-1},y1^{+-1},y2^{+-1}], normalized to be
/// free of monomial factors, with positive leading coefficient.
LPoly gcd(const LPoly& a, const LPoly& b);

class DenominatorVanishes : public std::runtime_error {
 public:
  DenominatorVanishes() : std::runtime_error("DenominatorVanishes") {}
};

class ScalarK {
 public:
  ScalarK() : num_(), den_(1) {}
  ScalarK(long c) : num_(c), den_(1) {}  // NOLINT
  explicit ScalarK(const mpq_class& r);
  explicit ScalarK(const LPoly& p) : num_(p), den_(1) {}
  ScalarK(const LPoly& n, const LPoly& d);  // canonicalizes

  static ScalarK v() { return ScalarK(LPoly::monomial({1, 0, 0})); }
  static ScalarK q() { return ScalarK(LPoly::monomial({2, 0, 0})); }
  static ScalarK y1() { return ScalarK(LPoly::monomial({0, 1, 0})); }
  static ScalarK y2() { return ScalarK(LPoly::monomial({0, 0, 1})); }

  const LPoly& num() const { return num_; }
  const LPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_unit() const;  // +- monomial

  ScalarK operator+(const ScalarK& o) const;
  ScalarK operator-(const ScalarK& o) const;
  ScalarK operator-() const;
  ScalarK operator*(const ScalarK& o) const;
  ScalarK operator/(const ScalarK& o) const;
  ScalarK& operator+=(const ScalarK& o) { return *this = *this + o; }
  ScalarK& operator-=(const ScalarK& o) { return *this = *this - o; }
  ScalarK& operator*=(const ScalarK& o) { return *this = *this * o; }
  ScalarK& operator/=(const ScalarK& o) { return *this = *this / o; }
  ScalarK inv() const;
  ScalarK pow(int k) const;
  bool operator==(const ScalarK& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const ScalarK& o) const { return !(*this == o); }

  std::string str() const;
  size_t hash() const { return num_.hash() * 1000003u ^ den_.hash(); }

 private:
  struct Raw {};
  ScalarK(Raw, LPoly n, LPoly d) : num_(std::move(n)), den_(std::move(d)) {}
  void canonicalize();
  LPoly num_, den_;
};

ScalarK qpow(const Exponent& e);
ScalarK qbracket(const Exponent& e);
inline ScalarK qbracket(int k) { return qbracket(Exponent::q(k)); }
ScalarK qfactorial(int k);

struct Point {
  mpq_class q0{1};
  std::optional<mpq_class> v0;  // square root of q0 when rational
  mpq_class y10{1}, y20{1};
  static Point make(const mpq_class& q0, const mpq_class& y10, const mpq_class& y20);
};

mpq_class specialize(const LPoly& p, const Point& pt);
mpq_class specialize(const ScalarK& x, const Point& pt);
mpq_class specialize(const ScalarK& x, const mpq_class& q0, const mpq_class& y10, const mpq_class& y20);
double specialize_double(const ScalarK& x, double q0, double y10, double y20);

/// Parse canonical text (as printed by str()) or a small expression syntax:
/// sums/products/quotients of integers, q, v, y1, y2, z, x1, x2 with integer powers.
ScalarK parse_scalar(const std::string& s);

}  // namespace qpn
