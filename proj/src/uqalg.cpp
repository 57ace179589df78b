#include "qpn/uqalg.hpp"

#include <cctype>
#include <sstream>

namespace qpn {

namespace {

Letter letter_e(int i) {
  Letter l;
  l.kind = Letter::E;
  l.i = i;
  return l;
}

Letter letter_f(int i) {
  Letter l;
  l.kind = Letter::F;
  l.i = i;
  return l;
}

Letter letter_k(const Weight& mu) {
  Letter l;
  l.kind = Letter::K;
  l.mu = mu;
  return l;
}

bool is_zero_weight(const Weight& w) {
  for (const auto& x : w.c)
    if (!x.is_zero()) return false;
  return true;
}

void push_letter(Word& w, const Letter& l) {
  if (l.kind == Letter::K) {
    if (is_zero_weight(l.mu)) return;
    if (!w.empty() && w.back().kind == Letter::K) {
      w.back().mu = w.back().mu + l.mu;
      if (is_zero_weight(w.back().mu)) w.pop_back();
      return;
    }
  }
  w.push_back(l);
}

int rank_of(const AlgebraElement& a, const AlgebraElement& b) { return a.n ? a.n : b.n; }

std::string letter_str(const Letter& l) {
  if (l.kind == Letter::E) return "e" + std::to_string(l.i);
  if (l.kind == Letter::F) return "f" + std::to_string(l.i);
  std::string s = "K(";
  auto v = l.mu.ints();
  for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

}  // namespace

Word concat(const Word& a, const Word& b) {
  Word r = a;
  for (const auto& l : b) push_letter(r, l);
  return r;
}

AlgebraElement::AlgebraElement(const ScalarK& c) {
  if (!c.is_zero()) t_.emplace(Word{}, c);
}

AlgebraElement AlgebraElement::e(int n, int i) {
  AlgebraElement a = word(n, {letter_e(i)});
  return a;
}

AlgebraElement AlgebraElement::f(int n, int i) {
  AlgebraElement a = word(n, {letter_f(i)});
  return a;
}

AlgebraElement AlgebraElement::Kmu(const Weight& mu) {
  Word w;
  push_letter(w, letter_k(mu));
  AlgebraElement a = word(mu.size() - 1, w);
  return a;
}

AlgebraElement AlgebraElement::word(int n, const Word& w, const ScalarK& c) {
  AlgebraElement a;
  Word nw;
  for (const auto& l : w) push_letter(nw, l);
  a.add(nw, c);
  a.n = n;
  return a;
}

void AlgebraElement::add(const Word& w, const ScalarK& c) {
  if (c.is_zero()) return;
  auto it = t_.find(w);
  if (it == t_.end()) {
    t_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  r.n = rank_of(*this, o);
  for (const auto& [w, c] : o.t_) r.add(w, c);
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const { return *this + (-o); }

AlgebraElement AlgebraElement::operator-() const { return scaled(ScalarK(-1)); }

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  AlgebraElement r;
  r.n = rank_of(*this, o);
  for (const auto& [w1, c1] : t_)
    for (const auto& [w2, c2] : o.t_) r.add(concat(w1, w2), c1 * c2);
  return r;
}

AlgebraElement AlgebraElement::scaled(const ScalarK& c) const {
  AlgebraElement r;
  r.n = n;
  for (const auto& [w, x] : t_) r.add(w, x * c);
  return r;
}

std::string AlgebraElement::str() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : t_) {
    if (!first) s += " + ";
    first = false;
    s += "(" + c.str() + ")";
    for (const auto& l : w) s += "*" + letter_str(l);
  }
  return s;
}

// ---------------------------------------------------------------- tensors

void TensorElement::add(const std::vector<Word>& w, const ScalarK& c) {
  if (c.is_zero()) return;
  auto it = t_.find(w);
  if (it == t_.end()) {
    t_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

TensorElement TensorElement::operator*(const TensorElement& o) const {
  if (d_ != o.d_) throw std::invalid_argument("tensor degree mismatch");
  TensorElement r(d_);
  for (const auto& [w1, c1] : t_)
    for (const auto& [w2, c2] : o.t_) {
      std::vector<Word> w(d_);
      for (int k = 0; k < d_; ++k) w[k] = concat(w1[k], w2[k]);
      r.add(w, c1 * c2);
    }
  return r;
}

namespace {

// Delta on one word; letters do not carry the rank, so n is passed in.
TensorElement word_coproduct(const Word& w, int n) {
  TensorElement acc(2);
  acc.add({{}, {}}, ScalarK(1));
  for (const auto& l : w) {
    TensorElement t(2);
    if (l.kind == Letter::E) {
      t.add({{l}, {letter_k(alpha(n, l.i))}}, ScalarK(1));
      t.add({{}, {l}}, ScalarK(1));
    } else if (l.kind == Letter::F) {
      t.add({{l}, {}}, ScalarK(1));
      t.add({{letter_k(-alpha(n, l.i))}, {l}}, ScalarK(1));
    } else {
      t.add({{l}, {l}}, ScalarK(1));
    }
    acc = acc * t;
  }
  return acc;
}

}  // namespace

TensorElement coproduct_slot(const TensorElement& x, int k, int n) {
  TensorElement r(x.degree() + 1);
  for (const auto& [ws, c] : x.terms()) {
    TensorElement d = word_coproduct(ws[k], n);
    for (const auto& [pair, c2] : d.terms()) {
      std::vector<Word> nw;
      for (int j = 0; j < x.degree(); ++j) {
        if (j == k) {
          nw.push_back(pair[0]);
          nw.push_back(pair[1]);
        } else {
          nw.push_back(ws[j]);
        }
      }
      r.add(nw, c * c2);
    }
  }
  return r;
}

TensorElement coproduct(const AlgebraElement& x, int d) {
  if (d < 1) throw std::invalid_argument("coproduct degree must be >= 1");
  bool has_ef = false;
  for (const auto& [w, c] : x.terms())
    for (const auto& l : w)
      if (l.kind != Letter::K) has_ef = true;
  if (has_ef && x.n == 0) throw std::invalid_argument("coproduct: element has no rank");
  TensorElement cur(1);
  for (const auto& [w, c] : x.terms()) cur.add({w}, c);
  for (int s = 1; s < d; ++s) cur = coproduct_slot(cur, s - 1, x.n);
  return cur;
}

namespace {

AlgebraElement map_anti(const AlgebraElement& x, AlgebraElement (*f)(int, const Letter&)) {
  AlgebraElement r;
  r.n = x.n;
  for (const auto& [w, c] : x.terms()) {
    AlgebraElement p(c);
    p.n = x.n;
    for (auto it = w.rbegin(); it != w.rend(); ++it) p = p * f(x.n, *it);
    r = r + p;
  }
  return r;
}

AlgebraElement map_hom(const AlgebraElement& x, AlgebraElement (*f)(int, const Letter&)) {
  AlgebraElement r;
  r.n = x.n;
  for (const auto& [w, c] : x.terms()) {
    AlgebraElement p(c);
    p.n = x.n;
    for (const auto& l : w) p = p * f(x.n, l);
    r = r + p;
  }
  return r;
}

AlgebraElement gamma_letter(int n, const Letter& l) {
  switch (l.kind) {
    case Letter::E:
      return -(AlgebraElement::e(n, l.i) * AlgebraElement::Kmu(-alpha(n, l.i)));
    case Letter::F:
      return -(AlgebraElement::Kmu(alpha(n, l.i)) * AlgebraElement::f(n, l.i));
    default:
      return AlgebraElement::Kmu(-l.mu);
  }
}

AlgebraElement gamma_inv_letter(int n, const Letter& l) {
  switch (l.kind) {
    case Letter::E:
      return -(AlgebraElement::Kmu(-alpha(n, l.i)) * AlgebraElement::e(n, l.i));
    case Letter::F:
      return -(AlgebraElement::f(n, l.i) * AlgebraElement::Kmu(alpha(n, l.i)));
    default:
      return AlgebraElement::Kmu(-l.mu);
  }
}

AlgebraElement sigma_letter(int n, const Letter& l) {
  switch (l.kind) {
    case Letter::E:
      return AlgebraElement::f(n, l.i);
    case Letter::F:
      return AlgebraElement::e(n, l.i);
    default:
      return AlgebraElement::Kmu(-l.mu);
  }
}

}  // namespace

AlgebraElement omega_letter(int n, const Letter& l) {
  // solved once from antipode^{-1}(sigma(x)) on generators
  switch (l.kind) {
    case Letter::E:
      return -(AlgebraElement::f(n, l.i) * AlgebraElement::Kmu(alpha(n, l.i)));
    case Letter::F:
      return -(AlgebraElement::Kmu(-alpha(n, l.i)) * AlgebraElement::e(n, l.i));
    default:
      return AlgebraElement::Kmu(l.mu);
  }
}

AlgebraElement antipode(const AlgebraElement& x) { return map_anti(x, gamma_letter); }
AlgebraElement antipode_inv(const AlgebraElement& x) { return map_anti(x, gamma_inv_letter); }
AlgebraElement sigma(const AlgebraElement& x) { return map_hom(x, sigma_letter); }
AlgebraElement omega(const AlgebraElement& x) { return map_anti(x, omega_letter); }

ScalarK counit(const AlgebraElement& x) {
  ScalarK r;
  for (const auto& [w, c] : x.terms()) {
    bool cartan_only = true;
    for (const auto& l : w)
      if (l.kind != Letter::K) cartan_only = false;
    if (cartan_only) r += c;
  }
  return r;
}

AlgebraElement compound_root(int n, int i, int j, int sign) {
  if (i < 1 || j > n || i > j) throw NotARoot("alpha_" + std::to_string(i) + "..alpha_" + std::to_string(j));
  ScalarK q = ScalarK::q();
  if (sign > 0) {
    AlgebraElement x = AlgebraElement::e(n, i);
    for (int k = i + 1; k <= j; ++k) {
      AlgebraElement ek = AlgebraElement::e(n, k);
      x = ek * x - (x * ek).scaled(q);
    }
    return x;
  }
  AlgebraElement x = AlgebraElement::f(n, i);
  for (int k = i + 1; k <= j; ++k) {
    AlgebraElement fk = AlgebraElement::f(n, k);
    x = x * fk - (fk * x).scaled(q.inv());
  }
  return x;
}

AlgebraElement compound_root(int n, const Weight& a, int sign) {
  if (a.size() != n + 1 || !a.is_integral()) throw NotARoot(a.str());
  auto v = a.ints();
  int i = -1, j = -1;
  for (int k = 0; k <= n; ++k) {
    if (v[k] == 1 && i < 0) i = k;
    else if (v[k] == -1 && j < 0) j = k;
    else if (v[k] != 0) throw NotARoot(a.str());
  }
  if (i < 0 || j < 0 || i >= j) throw NotARoot(a.str());
  // eps_{i+1} - eps_{j+1} (1-based) = alpha_{i+1} + ... + alpha_j
  return compound_root(n, i + 1, j, sign);
}

// ---------------------------------------------------------------- parsing

namespace {

Weight parse_cartan_weight(int n, const std::string& s0) {
  std::string s;
  for (char c : s0)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (!s.empty() && (s.find('a') == std::string::npos && s.find('e') == std::string::npos))
    return parse_weight(n, s);
  Weight w = zero_weight(n);
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    int coef = j > i ? std::stoi(s.substr(i, j - i)) : 1;
    if (j < s.size() && s[j] == '*') ++j;
    if (j >= s.size() || (s[j] != 'a' && s[j] != 'e')) throw std::invalid_argument("bad Cartan weight: " + s0);
    char kind = s[j++];
    size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) throw std::invalid_argument("bad Cartan weight: " + s0);
    int idx = std::stoi(s.substr(j, k - j));
    if (kind == 'a' && (idx < 1 || idx > n)) throw std::invalid_argument("root index out of range: " + s0);
    if (kind == 'e' && (idx < 1 || idx > n + 1)) throw std::invalid_argument("eps index out of range: " + s0);
    w = w + (kind == 'a' ? alpha(n, idx) : eps(n, idx)) * (sign * coef);
    i = k;
  }
  return w;
}

AlgebraElement parse_factor(int n, const std::string& f) {
  if (f.size() >= 2 && (f[0] == 'e' || f[0] == 'f') &&
      f.find_first_not_of("0123456789", 1) == std::string::npos) {
    int i = std::stoi(f.substr(1));
    if (i < 1 || i > n) throw std::invalid_argument("generator index out of range: " + f);
    return f[0] == 'e' ? AlgebraElement::e(n, i) : AlgebraElement::f(n, i);
  }
  if (f.size() >= 3 && f[0] == 'K' && f[1] == '(' && f.back() == ')') {
    return AlgebraElement::Kmu(parse_cartan_weight(n, f.substr(2, f.size() - 3)));
  }
  AlgebraElement a(parse_scalar(f));
  a.n = n;
  return a;
}

std::vector<std::string> split_top(const std::string& s, char sep, bool keep_sign) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    bool split = depth == 0 && (keep_sign ? (c == '+' || c == '-') : c == sep);
    if (split && keep_sign && i > 0 && s[i - 1] == '^') split = false;
    if (split && keep_sign && cur.empty()) split = false;
    if (split) {
      out.push_back(cur);
      cur.clear();
      if (keep_sign) cur += c;
      continue;
    }
    cur += c;
  }
  out.push_back(cur);
  return out;
}

}  // namespace

AlgebraElement parse_element(int n, const std::string& s0) {
  std::string s;
  for (char c : s0)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty algebra element");
  AlgebraElement total;
  total.n = n;
  for (std::string term : split_top(s, '+', true)) {
    int sign = 1;
    while (!term.empty() && (term[0] == '+' || term[0] == '-')) {
      if (term[0] == '-') sign = -sign;
      term = term.substr(1);
    }
    if (term.empty()) throw std::invalid_argument("bad algebra element: " + s0);
    AlgebraElement p{ScalarK(sign)};
    p.n = n;
    for (const auto& f : split_top(term, '*', false)) {
      if (f.empty()) throw std::invalid_argument("bad algebra element: " + s0);
      p = p * parse_factor(n, f);
    }
    total = total + p;
  }
  return total;
}

}  // namespace qpn
