#include "qpn/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace qpn {

namespace {

using Term = LPoly::Term;

void normalize_terms(std::vector<Term>& t) {
  std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
  size_t w = 0;
  for (size_t r = 0; r < t.size();) {
    int64_t k = t[r].key;
    mpz_class c = t[r].c;
    size_t s = r + 1;
    while (s < t.size() && t[s].key == k) c += t[s++].c;
    if (c != 0) {
      t[w].key = k;
      t[w].c = std::move(c);
      ++w;
    }
    r = s;
  }
  t.resize(w);
}

int64_t key_shift(const Exponent& e) { return LPoly::pack(e.a2, e.b1, e.b2) - LPoly::kZeroKey; }

mpq_class mpq_pow(const mpq_class& b, int e) {
  if (e < 0) {
    if (b == 0) throw DenominatorVanishes();
    return mpq_pow(mpq_class(b.get_den(), b.get_num()), -e);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), b.get_num().get_mpz_t(), unsigned(e));
  mpz_pow_ui(d.get_mpz_t(), b.get_den().get_mpz_t(), unsigned(e));
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

LPoly::LPoly(long c) {
  if (c != 0) t_.push_back({kZeroKey, mpz_class(c)});
}

LPoly::LPoly(const mpz_class& c) {
  if (c != 0) t_.push_back({kZeroKey, c});
}

LPoly LPoly::monomial(const Exponent& e, const mpz_class& c) {
  LPoly p;
  if (c != 0) p.t_.push_back({pack(e.a2, e.b1, e.b2), c});
  return p;
}

LPoly LPoly::from_terms(std::vector<Term> t) {
  normalize_terms(t);
  LPoly p;
  p.t_ = std::move(t);
  return p;
}

LPoly LPoly::operator+(const LPoly& o) const {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return o;
  LPoly r;
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && t_[i].key < o.t_[j].key)) {
      r.t_.push_back(t_[i++]);
    } else if (i == t_.size() || o.t_[j].key < t_[i].key) {
      r.t_.push_back(o.t_[j++]);
    } else {
      mpz_class c = t_[i].c + o.t_[j].c;
      if (c != 0) r.t_.push_back({t_[i].key, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

LPoly LPoly::operator-() const {
  LPoly r = *this;
  for (auto& x : r.t_) x.c = -x.c;
  return r;
}

LPoly LPoly::operator-(const LPoly& o) const { return *this + (-o); }

LPoly LPoly::operator*(const LPoly& o) const {
  if (t_.empty() || o.t_.empty()) return {};
  if (o.t_.size() == 1) return mul_monomial(o.t_[0].key, o.t_[0].c);
  if (t_.size() == 1) return o.mul_monomial(t_[0].key, t_[0].c);
  std::vector<Term> out;
  out.reserve(t_.size() * o.t_.size());
  for (const auto& a : t_)
    for (const auto& b : o.t_) out.push_back({a.key + b.key - kZeroKey, a.c * b.c});
  return from_terms(std::move(out));
}

LPoly LPoly::mul_monomial(int64_t key, const mpz_class& c) const {
  if (c == 0) return {};
  LPoly r;
  r.t_.reserve(t_.size());
  int64_t sh = key - kZeroKey;
  for (const auto& x : t_) r.t_.push_back({x.key + sh, x.c * c});
  return r;
}

LPoly LPoly::scaled(const mpz_class& c) const {
  if (c == 0) return {};
  LPoly r = *this;
  for (auto& x : r.t_) x.c *= c;
  return r;
}

LPoly LPoly::divexact_int(const mpz_class& c) const {
  LPoly r = *this;
  for (auto& x : r.t_) mpz_divexact(x.c.get_mpz_t(), x.c.get_mpz_t(), c.get_mpz_t());
  return r;
}

bool LPoly::operator==(const LPoly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (t_[i].key != o.t_[i].key || t_[i].c != o.t_[i].c) return false;
  return true;
}

mpz_class LPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : t_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Exponent LPoly::min_exponents() const {
  if (t_.empty()) return {};
  Exponent m = unpack(t_[0].key);
  for (const auto& x : t_) {
    Exponent e = unpack(x.key);
    m.a2 = std::min(m.a2, e.a2);
    m.b1 = std::min(m.b1, e.b1);
    m.b2 = std::min(m.b2, e.b2);
  }
  return m;
}

Exponent LPoly::max_exponents() const {
  if (t_.empty()) return {};
  Exponent m = unpack(t_[0].key);
  for (const auto& x : t_) {
    Exponent e = unpack(x.key);
    m.a2 = std::max(m.a2, e.a2);
    m.b1 = std::max(m.b1, e.b1);
    m.b2 = std::max(m.b2, e.b2);
  }
  return m;
}

mpz_class LPoly::max_norm() const {
  mpz_class m = 0;
  for (const auto& x : t_)
    if (abs(x.c) > m) m = abs(x.c);
  return m;
}

mpz_class LPoly::l1_norm() const {
  mpz_class m = 0;
  for (const auto& x : t_) m += abs(x.c);
  return m;
}

std::optional<LPoly> LPoly::divide(const LPoly& d) const {
  if (d.is_zero()) throw DenominatorVanishes();
  if (is_zero()) return LPoly();
  if (d.t_.size() == 1) {
    LPoly r;
    r.t_.reserve(t_.size());
    int64_t sh = d.t_[0].key - kZeroKey;
    for (const auto& x : t_) {
      if (!mpz_divisible_p(x.c.get_mpz_t(), d.t_[0].c.get_mpz_t())) return std::nullopt;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), x.c.get_mpz_t(), d.t_[0].c.get_mpz_t());
      r.t_.push_back({x.key - sh, std::move(c)});
    }
    return r;
  }
  // shift both to polynomials without monomial factors
  Exponent ma = min_exponents(), md = d.min_exponents();
  LPoly a = mul_monomial(LPoly::kZeroKey - key_shift(ma), 1);
  LPoly b = d.mul_monomial(LPoly::kZeroKey - key_shift(md), 1);
  Exponent ea = a.max_exponents(), eb = b.max_exponents();
  if (ea.a2 < eb.a2 || ea.b1 < eb.b1 || ea.b2 < eb.b2) return std::nullopt;
  const Term& lb = b.lead();
  Exponent elb = unpack(lb.key);
  std::vector<Term> quot;
  LPoly r = std::move(a);
  while (!r.is_zero()) {
    const Term& lr = r.lead();
    Exponent e = unpack(lr.key) - elb;
    if (e.a2 < 0 || e.b1 < 0 || e.b2 < 0) return std::nullopt;
    if (!mpz_divisible_p(lr.c.get_mpz_t(), lb.c.get_mpz_t())) return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), lr.c.get_mpz_t(), lb.c.get_mpz_t());
    int64_t k = pack(e.a2, e.b1, e.b2);
    r = r - b.mul_monomial(k, c);
    quot.push_back({k, std::move(c)});
  }
  LPoly qp = from_terms(std::move(quot));
  return qp.mul_monomial(LPoly::kZeroKey + key_shift(ma) - key_shift(md), 1);
}

size_t LPoly::hash() const {
  size_t h = 1469598103934665603ull;
  for (const auto& x : t_) {
    h ^= std::hash<int64_t>()(x.key) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<long>()(mpz_get_si(x.c.get_mpz_t())) + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

std::string mono_str(const Exponent& e) {
  std::vector<std::string> parts;
  if (e.a2 != 0) {
    if (e.a2 % 2 == 0) {
      int k = e.a2 / 2;
      parts.push_back(k == 1 ? "q" : "q^" + std::to_string(k));
    } else {
      parts.push_back("q^(" + std::to_string(e.a2) + "/2)");
    }
  }
  if (e.b1 != 0) parts.push_back(e.b1 == 1 ? "y1" : "y1^" + std::to_string(e.b1));
  if (e.b2 != 0) parts.push_back(e.b2 == 1 ? "y2" : "y2^" + std::to_string(e.b2));
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) s += (i ? "*" : "") + parts[i];
  return s;
}

}  // namespace

std::string LPoly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (size_t idx = t_.size(); idx-- > 0;) {
    const auto& x = t_[idx];
    Exponent e = unpack(x.key);
    mpz_class c = x.c;
    bool neg = c < 0;
    if (neg) c = -c;
    std::string m = mono_str(e);
    std::string body;
    if (m.empty()) body = c.get_str();
    else if (c == 1) body = m;
    else body = c.get_str() + "*" + m;
    if (s.empty()) s = (neg ? "-" : "") + body;
    else s += (neg ? " - " : " + ") + body;
  }
  return s;
}

// ---------------------------------------------------------------- gcd

namespace {

int var_exp(const Exponent& e, int v) { return v == 0 ? e.a2 : (v == 1 ? e.b1 : e.b2); }

int64_t drop_var(int64_t key, int v) {
  Exponent e = LPoly::unpack(key);
  if (v == 0) e.a2 = 0;
  else if (v == 1) e.b1 = 0;
  else e.b2 = 0;
  return LPoly::pack(e.a2, e.b1, e.b2);
}

int64_t with_var(int64_t key, int v, int k) {
  Exponent e = LPoly::unpack(key);
  if (v == 0) e.a2 = k;
  else if (v == 1) e.b1 = k;
  else e.b2 = k;
  return LPoly::pack(e.a2, e.b1, e.b2);
}

// shift to polynomial with no monomial factor
LPoly strip_monomial(const LPoly& p) {
  if (p.is_zero()) return p;
  Exponent m = p.min_exponents();
  if (m.is_zero()) return p;
  return p.mul_monomial(LPoly::kZeroKey - key_shift(m), 1);
}

LPoly eval_var(const LPoly& p, int v, const mpz_class& xi, std::vector<mpz_class>& pw) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    int k = var_exp(LPoly::unpack(t.key), v);
    while (int(pw.size()) <= k) pw.push_back(pw.back() * xi);
    out.push_back({drop_var(t.key, v), t.c * pw[k]});
  }
  return LPoly::from_terms(std::move(out));
}

LPoly reconstruct(const LPoly& g, int v, const mpz_class& xi) {
  std::vector<Term> out;
  mpz_class half = xi / 2;
  for (const auto& t : g.terms()) {
    mpz_class c = t.c;
    int k = 0;
    while (c != 0) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (r != 0) out.push_back({with_var(t.key, v, k), r});
      c -= r;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
      ++k;
    }
  }
  return LPoly::from_terms(std::move(out));
}

bool divides(const LPoly& d, const LPoly& a) { return a.divide(d).has_value(); }

LPoly primitive(const LPoly& p) {
  if (p.is_zero()) return p;
  mpz_class c = p.content();
  LPoly r = c == 1 ? p : p.divexact_int(c);
  if (r.lead().c < 0) r = -r;
  return r;
}

int present_var(const LPoly& a) {
  Exponent mx = a.max_exponents();
  if (mx.a2 > 0) return 0;
  if (mx.b1 > 0) return 1;
  if (mx.b2 > 0) return 2;
  return -1;
}

// a, b nonzero polynomials (nonnegative exponents). Returns gcd including content, or nullopt.
std::optional<LPoly> heu(const LPoly& a, const LPoly& b, int depth) {
  mpz_class ca = a.content(), cb = b.content();
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  int va = present_var(a), vb = present_var(b);
  if (va < 0 && vb < 0) return LPoly(cg);
  if (va < 0 || vb < 0) {
    // one side constant: gcd is an integer
    return LPoly(cg);
  }
  LPoly A = a.divexact_int(ca), B = b.divexact_int(cb);
  int v = std::min(va, vb);
  {
    // choose a variable present in both if possible
    Exponent ma = A.max_exponents(), mb = B.max_exponents();
    v = -1;
    for (int k = 0; k < 3; ++k)
      if (var_exp(ma, k) > 0 && var_exp(mb, k) > 0) {
        v = k;
        break;
      }
    if (v < 0) {
      // no common variable: gcd lives in the remaining variables; fall back through evaluation of any var
      v = var_exp(ma, 0) > 0 ? 0 : (var_exp(ma, 1) > 0 ? 1 : 2);
    }
  }
  mpz_class na = A.max_norm(), nb = B.max_norm();
  mpz_class xi = 2 * std::min(na, nb) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<mpz_class> pw{1};
    LPoly ea = eval_var(A, v, xi, pw), eb = eval_var(B, v, xi, pw);
    if (!ea.is_zero() && !eb.is_zero()) {
      auto g = heu(ea, eb, depth + 1);
      if (g) {
        LPoly G = primitive(reconstruct(*g, v, xi));
        if (!G.is_zero() && divides(G, A) && divides(G, B)) return G.scaled(cg);
      }
    }
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), xi.get_mpz_t());
    mpz_sqrt(s.get_mpz_t(), s.get_mpz_t());
    xi = (xi * 73794 * s) / 27011;
  }
  return std::nullopt;
}

// ----- primitive PRS fallback

std::vector<LPoly> to_univ(const LPoly& p, int v) {
  std::vector<std::vector<Term>> c;
  for (const auto& t : p.terms()) {
    int k = var_exp(LPoly::unpack(t.key), v);
    if (int(c.size()) <= k) c.resize(k + 1);
    c[k].push_back({drop_var(t.key, v), t.c});
  }
  std::vector<LPoly> out;
  for (auto& x : c) out.push_back(LPoly::from_terms(std::move(x)));
  return out;
}

LPoly from_univ(const std::vector<LPoly>& c, int v) {
  std::vector<Term> out;
  for (int k = 0; k < int(c.size()); ++k)
    for (const auto& t : c[k].terms()) out.push_back({with_var(t.key, v, k), t.c});
  return LPoly::from_terms(std::move(out));
}

void trim(std::vector<LPoly>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

LPoly poly_gcd(const LPoly& a, const LPoly& b);

LPoly univ_content(const std::vector<LPoly>& c) {
  LPoly g;
  for (const auto& x : c) {
    if (x.is_zero()) continue;
    g = g.is_zero() ? primitive(x) : poly_gcd(g, x);
    if (g.is_one()) break;
  }
  return g;
}

std::vector<LPoly> univ_div(const std::vector<LPoly>& c, const LPoly& d) {
  std::vector<LPoly> out;
  for (const auto& x : c) out.push_back(*x.divide(d));
  return out;
}

std::vector<LPoly> prem(std::vector<LPoly> a, const std::vector<LPoly>& b) {
  int db = int(b.size()) - 1;
  const LPoly& lb = b.back();
  while (!a.empty() && int(a.size()) - 1 >= db) {
    int da = int(a.size()) - 1;
    LPoly la = a.back();
    for (auto& x : a) x = x * lb;
    for (int k = 0; k <= db; ++k) a[da - db + k] = a[da - db + k] - la * b[k];
    trim(a);
  }
  return a;
}

LPoly prs_gcd(const LPoly& a, const LPoly& b) {
  Exponent ma = a.max_exponents(), mb = b.max_exponents();
  int v = -1;
  for (int k = 0; k < 3; ++k)
    if (var_exp(ma, k) > 0 || var_exp(mb, k) > 0) {
      v = k;
      break;
    }
  if (v < 0) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    return LPoly(g);
  }
  auto A = to_univ(a, v), B = to_univ(b, v);
  LPoly cA = univ_content(A), cB = univ_content(B);
  LPoly c = poly_gcd(cA, cB);
  A = univ_div(A, cA);
  B = univ_div(B, cB);
  if (A.size() < B.size()) std::swap(A, B);
  while (B.size() > 1) {
    auto r = prem(A, B);
    A = std::move(B);
    if (r.empty()) {
      B.clear();
      break;
    }
    B = univ_div(r, univ_content(r));
  }
  if (B.size() == 1) return c;  // nonzero constant remainder: coprime
  LPoly g = from_univ(univ_div(A, univ_content(A)), v);
  return primitive(g * c);
}

// gcd of nonzero polynomials without monomial factors
LPoly poly_gcd(const LPoly& a0, const LPoly& b0) {
  LPoly a = strip_monomial(a0), b = strip_monomial(b0);
  if (a.is_constant() || b.is_constant()) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    return LPoly(g);
  }
  mpz_class ca = a.content(), cb = b.content(), cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  LPoly A = primitive(a), B = primitive(b);
  if (A == B) return A.scaled(cg);
  if (A.size() <= B.size()) {
    if (divides(A, B)) return A.scaled(cg);
  } else if (divides(B, A)) {
    return B.scaled(cg);
  }
  auto h = heu(A, B, 0);
  LPoly g = h ? primitive(*h) : primitive(prs_gcd(A, B));
  return g.scaled(cg);
}

}  // namespace

LPoly gcd(const LPoly& a, const LPoly& b) {
  if (a.is_zero() && b.is_zero()) return LPoly();
  if (a.is_zero()) return primitive(strip_monomial(b)).scaled(b.content());
  if (b.is_zero()) return primitive(strip_monomial(a)).scaled(a.content());
  LPoly g = poly_gcd(a, b);
  if (g.lead().c < 0) g = -g;
  return g;
}

// ---------------------------------------------------------------- ScalarK

ScalarK::ScalarK(const mpq_class& r) : num_(r.get_num()), den_(r.get_den()) {}

ScalarK::ScalarK(const LPoly& n, const LPoly& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw DenominatorVanishes();
  canonicalize();
}

void ScalarK::canonicalize() {
  if (num_.is_zero()) {
    den_ = LPoly(1);
    return;
  }
  if (!den_.is_constant() || !den_.is_one()) {
    if (den_.is_monomial()) {
      // move monomial into numerator, clear integer content
      const auto& t = den_.terms()[0];
      Exponent e = LPoly::unpack(t.key);
      mpz_class dc = t.c;
      num_ = num_.mul_monomial(LPoly::pack(-e.a2, -e.b1, -e.b2), 1);
      mpz_class g = num_.content();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dc.get_mpz_t());
      if (g != 1) {
        num_ = num_.divexact_int(g);
        mpz_divexact(dc.get_mpz_t(), dc.get_mpz_t(), g.get_mpz_t());
      }
      if (dc < 0) {
        dc = -dc;
        num_ = -num_;
      }
      den_ = LPoly(dc);
      return;
    }
    LPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *num_.divide(g);
      den_ = *den_.divide(g);
    }
    Exponent m = den_.min_exponents();
    if (!m.is_zero()) {
      int64_t k = LPoly::pack(-m.a2, -m.b1, -m.b2);
      den_ = den_.mul_monomial(k, 1);
      num_ = num_.mul_monomial(k, 1);
    }
    if (den_.is_monomial()) {  // den reduced to a constant
      canonicalize();
      return;
    }
    if (den_.lead().c < 0) {
      den_ = -den_;
      num_ = -num_;
    }
  }
}

bool ScalarK::is_unit() const {
  return num_.is_monomial() && den_.is_one() && abs(num_.terms()[0].c) == 1;
}

ScalarK ScalarK::operator+(const ScalarK& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_.is_one() && o.den_.is_one()) return ScalarK(Raw{}, num_ + o.num_, LPoly(1));
  if (den_ == o.den_) {
    ScalarK r(Raw{}, num_ + o.num_, den_);
    r.canonicalize();
    return r;
  }
  if (o.den_.is_one()) {
    ScalarK r(Raw{}, num_ + o.num_ * den_, den_);
    if (!r.den_.is_constant()) {
      // gcd(num + o*den, den) = gcd(num, den) = 1: already reduced
      if (r.num_.is_zero()) r.den_ = LPoly(1);
      return r;
    }
    r.canonicalize();
    return r;
  }
  if (den_.is_one()) return o + *this;
  LPoly g = gcd(den_, o.den_);
  if (g.is_one()) {
    ScalarK r(Raw{}, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    // reduced when both operands are reduced and denominators coprime
    if (r.num_.is_zero()) r.den_ = LPoly(1);
    if (r.den_.lead().c < 0) {
      r.den_ = -r.den_;
      r.num_ = -r.num_;
    }
    return r;
  }
  LPoly d1 = *den_.divide(g), d2 = *o.den_.divide(g);
  LPoly n = num_ * d2 + o.num_ * d1;
  if (n.is_zero()) return ScalarK();
  // primes of d1, d2 cannot divide n; only the common part g may cancel
  LPoly den = d1 * d2 * g;
  LPoly g2 = gcd(n, g);
  if (!g2.is_one()) {
    n = *n.divide(g2);
    den = *den.divide(g2);
  }
  ScalarK r(Raw{}, std::move(n), std::move(den));
  if (r.den_.is_monomial()) r.canonicalize();
  return r;
}

ScalarK ScalarK::operator-() const { return ScalarK(Raw{}, -num_, den_); }

ScalarK ScalarK::operator-(const ScalarK& o) const { return *this + (-o); }

ScalarK ScalarK::operator*(const ScalarK& o) const {
  if (is_zero() || o.is_zero()) return ScalarK();
  if (den_.is_one() && o.den_.is_one()) return ScalarK(Raw{}, num_ * o.num_, LPoly(1));
  LPoly a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_one()) {
    LPoly g = gcd(a, d);
    if (!g.is_one()) {
      a = *a.divide(g);
      d = *d.divide(g);
    }
  }
  if (!b.is_one()) {
    LPoly g = gcd(c, b);
    if (!g.is_one()) {
      c = *c.divide(g);
      b = *b.divide(g);
    }
  }
  ScalarK r(Raw{}, a * c, b * d);
  if (r.den_.is_monomial()) r.canonicalize();
  return r;
}

ScalarK ScalarK::inv() const {
  if (is_zero()) throw DenominatorVanishes();
  ScalarK r(Raw{}, den_, num_);
  Exponent m = r.den_.min_exponents();
  if (!m.is_zero()) {
    int64_t k = LPoly::pack(-m.a2, -m.b1, -m.b2);
    r.den_ = r.den_.mul_monomial(k, 1);
    r.num_ = r.num_.mul_monomial(k, 1);
  }
  if (r.den_.is_monomial()) {
    r.canonicalize();
    return r;
  }
  if (r.den_.lead().c < 0) {
    r.den_ = -r.den_;
    r.num_ = -r.num_;
  }
  return r;
}

ScalarK ScalarK::operator/(const ScalarK& o) const { return *this * o.inv(); }

ScalarK ScalarK::pow(int k) const {
  if (k < 0) return inv().pow(-k);
  ScalarK r(1), b = *this;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

std::string ScalarK::str() const {
  if (den_.is_one()) return num_.str();
  std::string n = num_.str(), d = den_.str();
  if (num_.size() > 1) n = "(" + n + ")";
  if (den_.size() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

ScalarK qpow(const Exponent& e) { return ScalarK(LPoly::monomial(e)); }

ScalarK qbracket(const Exponent& e) {
  if (e.is_zero()) return ScalarK();
  LPoly n = LPoly::monomial(e) - LPoly::monomial(-e);
  LPoly d = LPoly::monomial({2, 0, 0}) - LPoly::monomial({-2, 0, 0});
  return ScalarK(n, d);
}

ScalarK qfactorial(int k) {
  ScalarK r(1);
  for (int j = 1; j <= k; ++j) r *= qbracket(j);
  return r;
}

// ---------------------------------------------------------------- specialization

Point Point::make(const mpq_class& q0, const mpq_class& y10, const mpq_class& y20) {
  Point p;
  p.q0 = q0;
  p.y10 = y10;
  p.y20 = y20;
  if (q0 > 0) {
    mpz_class n = q0.get_num(), d = q0.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
      mpz_class sn, sd;
      mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
      mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
      p.v0 = mpq_class(sn, sd);
    }
  }
  return p;
}

mpq_class specialize(const LPoly& p, const Point& pt) {
  mpq_class s = 0;
  for (const auto& t : p.terms()) {
    Exponent e = LPoly::unpack(t.key);
    mpq_class val(t.c);
    if (e.a2 % 2 == 0) {
      if (e.a2) val *= mpq_pow(pt.q0, e.a2 / 2);
    } else {
      if (!pt.v0) throw std::domain_error("half-integer q-power needs a rational square root of q0");
      val *= mpq_pow(*pt.v0, e.a2);
    }
    if (e.b1) val *= mpq_pow(pt.y10, e.b1);
    if (e.b2) val *= mpq_pow(pt.y20, e.b2);
    s += val;
  }
  s.canonicalize();
  return s;
}

mpq_class specialize(const ScalarK& x, const Point& pt) {
  mpq_class d = specialize(x.den(), pt);
  if (d == 0) throw DenominatorVanishes();
  mpq_class r = specialize(x.num(), pt) / d;
  r.canonicalize();
  return r;
}

mpq_class specialize(const ScalarK& x, const mpq_class& q0, const mpq_class& y10, const mpq_class& y20) {
  return specialize(x, Point::make(q0, y10, y20));
}

double specialize_double(const ScalarK& x, double q0, double y10, double y20) {
  auto ev = [&](const LPoly& p) {
    double s = 0;
    for (const auto& t : p.terms()) {
      Exponent e = LPoly::unpack(t.key);
      s += t.c.get_d() * std::pow(q0, e.a2 / 2.0) * std::pow(y10, e.b1) * std::pow(y20, e.b2);
    }
    return s;
  };
  double d = ev(x.den());
  if (d == 0) throw DenominatorVanishes();
  return ev(x.num()) / d;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}
  ScalarK parse() {
    ScalarK r = expr();
    skip();
    if (p_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& m) {
    throw std::invalid_argument("cannot parse scalar '" + s_ + "': " + m);
  }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  ScalarK expr() {
    ScalarK r;
    bool first = true;
    for (;;) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      else if (!first && !eat('+')) break;
      else if (first) eat('+');
      ScalarK t = term();
      r = neg ? r - t : r + t;
      first = false;
      skip();
      if (p_ >= s_.size() || (s_[p_] != '+' && s_[p_] != '-')) break;
    }
    return r;
  }
  ScalarK term() {
    ScalarK r = factor();
    for (;;) {
      if (eat('*')) r = r * factor();
      else if (eat('/')) r = r / factor();
      else break;
    }
    return r;
  }
  long integer() {
    skip();
    size_t st = p_;
    if (p_ < s_.size() && (s_[p_] == '-' || s_[p_] == '+')) ++p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (st == p_ || (p_ == st + 1 && !std::isdigit(static_cast<unsigned char>(s_[st])))) fail("integer expected");
    return std::stol(s_.substr(st, p_ - st));
  }
  // exponent in units of 1/2 (returns doubled value)
  int exponent2() {
    if (eat('(')) {
      long a = integer();
      int r;
      if (eat('/')) {
        long b = integer();
        if (b != 2 && b != 1) fail("only half-integer exponents");
        r = int(b == 2 ? a : 2 * a);
      } else {
        r = int(2 * a);
      }
      if (!eat(')')) fail("')' expected");
      return r;
    }
    return int(2 * integer());
  }
  ScalarK factor() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end");
    ScalarK base;
    bool is_q = false;
    char c = s_[p_];
    if (c == '(') {
      ++p_;
      base = expr();
      if (!eat(')')) fail("')' expected");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      base = ScalarK(mpq_class(mpz_class(s_.substr(st, p_ - st))));
    } else {
      std::string id;
      while (p_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[p_]))) id += s_[p_++];
      if (id == "q") {
        base = ScalarK::q();
        is_q = true;
      } else if (id == "v") base = ScalarK::v();
      else if (id == "y1") base = ScalarK::y1();
      else if (id == "y2") base = ScalarK::y2();
      else if (id == "z") base = ScalarK::y1() / ScalarK::y2();
      else if (id == "x1") base = ScalarK::y1() * ScalarK::y1();
      else if (id == "x2") base = ScalarK::y2() * ScalarK::y2();
      else fail("unknown symbol '" + id + "'");
    }
    if (eat('^')) {
      int e2 = exponent2();
      if (is_q) return qpow({e2, 0, 0});
      if (e2 % 2) fail("half-integer exponent only allowed on q");
      return base.pow(e2 / 2);
    }
    return base;
  }
  const std::string& s_;
  size_t p_ = 0;
};

}  // namespace

ScalarK parse_scalar(const std::string& s) { return Parser(s).parse(); }

}  // namespace qpn
