#include "qpn/rootdata.hpp"

#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

namespace qpn {

Weight Weight::integral(const std::vector<int>& v) {
  Weight w(int(v.size()));
  for (size_t i = 0; i < v.size(); ++i) w.c[i] = {2 * v[i], 0, 0};
  return w;
}

Weight Weight::halves(const std::vector<int>& twice) {
  Weight w(int(twice.size()));
  for (size_t i = 0; i < twice.size(); ++i) w.c[i] = {twice[i], 0, 0};
  return w;
}

Weight Weight::operator+(const Weight& o) const {
  Weight r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

Weight Weight::operator-(const Weight& o) const {
  Weight r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] - o.c[i];
  return r;
}

Weight Weight::operator-() const {
  Weight r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

Weight Weight::operator*(int k) const {
  Weight r = *this;
  for (auto& x : r.c) x = x * k;
  return r;
}

bool Weight::is_integral() const {
  for (const auto& x : c)
    if (x.symbolic() || x.a2 % 2 != 0) return false;
  return true;
}

bool Weight::is_symbolic() const {
  for (const auto& x : c)
    if (x.symbolic()) return true;
  return false;
}

std::vector<int> Weight::ints() const {
  if (!is_integral()) throw std::domain_error("weight is not integral: " + str());
  std::vector<int> v;
  for (const auto& x : c) v.push_back(x.a2 / 2);
  return v;
}

namespace {

std::string coord_str(const Exponent& e) {
  std::ostringstream os;
  bool any = false;
  auto sym = [&](int k, const char* name) {
    if (k == 0) return;
    if (any) os << (k > 0 ? "+" : "-");
    else if (k < 0) os << "-";
    if (std::abs(k) != 1) os << std::abs(k) << "*";
    os << name;
    any = true;
  };
  sym(e.b1, "L1");
  sym(e.b2, "L2");
  if (e.a2 != 0 || !any) {
    if (any) os << (e.a2 >= 0 ? "+" : "-");
    else if (e.a2 < 0) os << "-";
    int a = std::abs(e.a2);
    if (a % 2 == 0) os << a / 2;
    else os << a << "/2";
  }
  return os.str();
}

}  // namespace

std::string Weight::str() const {
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += coord_str(c[i]);
  }
  return s + ")";
}

Exponent pairing(const Weight& u, const Weight& w) {
  if (u.size() != w.size()) throw std::invalid_argument("pairing: rank mismatch");
  if (u.is_symbolic() && w.is_symbolic()) throw MixedSymbolicPairing();
  long a = 0, b1 = 0, b2 = 0;
  for (int i = 0; i < u.size(); ++i) {
    const Exponent& x = u.c[i];
    const Exponent& y = w.c[i];
    a += long(x.a2) * y.a2;
    b1 += long(x.a2) * y.b1 + long(y.a2) * x.b1;
    b2 += long(x.a2) * y.b2 + long(y.a2) * x.b2;
  }
  if (a % 2 || b1 % 2 || b2 % 2)
    throw std::domain_error("pairing " + u.str() + " , " + w.str() + " is not in the exponent lattice");
  return {int(a / 2), int(b1 / 2), int(b2 / 2)};
}

Weight zero_weight(int n) { return Weight(n + 1); }

Weight eps(int n, int k) {
  Weight w(n + 1);
  w.c.at(k - 1) = {2, 0, 0};
  return w;
}

Weight alpha(int n, int i) { return eps(n, i) - eps(n, i + 1); }
Weight beta(int n, int i) { return eps(n, 1) - eps(n, i + 1); }
Weight root(int n, int i, int j) { return eps(n, i) - eps(n, j); }

Weight lambda_weight(int n) {
  Weight w(n + 1);
  w.c[0] = {0, 1, 0};
  for (int k = 1; k <= n; ++k) w.c[k] = {0, 0, 1};
  return w;
}

Weight rho(int n) {
  // (rho, eps_k) = n/2 - (k-1)
  Weight w(n + 1);
  for (int k = 0; k <= n; ++k) w.c[k] = {n - 2 * k, 0, 0};
  return w;
}

std::vector<std::pair<int, int>> positive_roots(int n) {
  std::vector<std::pair<int, int>> r;
  for (int i = 1; i <= n + 1; ++i)
    for (int j = i + 1; j <= n + 1; ++j) r.push_back({i, j});
  return r;
}

bool is_dominant(int n, const Weight& w) {
  if (!w.is_integral()) return false;
  for (int i = 1; i <= n; ++i) {
    Exponent p = pairing(alpha(n, i), w);
    if (p.a2 < 0) return false;
  }
  return true;
}

Weight parse_weight(int n, const std::string& s0) {
  std::string s;
  for (char ch : s0)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty weight");
  bool tuple = s.front() == '(' || s.find('e') == std::string::npos;
  if (tuple) {
    if (s.front() == '(') {
      if (s.back() != ')') throw std::invalid_argument("bad weight tuple: " + s0);
      s = s.substr(1, s.size() - 2);
    }
    std::vector<int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      size_t pos = 0;
      int x = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("bad weight entry: " + tok);
      v.push_back(x);
    }
    if (int(v.size()) != n + 1)
      throw std::invalid_argument("weight " + s0 + " needs " + std::to_string(n + 1) + " entries");
    return Weight::integral(v);
  }
  std::vector<int> v(n + 1, 0);
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    int coef = 1;
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) coef = std::stoi(s.substr(i, j - i));
    if (j < s.size() && s[j] == '*') ++j;
    if (j >= s.size() || s[j] != 'e') throw std::invalid_argument("bad weight syntax: " + s0);
    ++j;
    size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) throw std::invalid_argument("bad weight syntax: " + s0);
    int idx = std::stoi(s.substr(j, k - j));
    if (idx < 1 || idx > n + 1) throw std::invalid_argument("weight index out of range: " + s0);
    v[idx - 1] += sign * coef;
    i = k;
  }
  return Weight::integral(v);
}

void Character::add(const Weight& w, long k) {
  if (k == 0) return;
  long& m = mult[w];
  m += k;
  if (m == 0) mult.erase(w);
}

long Character::at(const Weight& w) const {
  auto it = mult.find(w);
  return it == mult.end() ? 0 : it->second;
}

Character Character::operator+(const Character& o) const {
  Character r = *this;
  for (const auto& [w, k] : o.mult) r.add(w, k);
  return r;
}

long Character::total() const {
  long t = 0;
  for (const auto& [w, k] : mult) t += k;
  return t;
}

long weyl_dimension(int n, const Weight& nu) {
  auto v = nu.ints();
  // prod_{i<j} (nu_i - nu_j + j - i) / (j - i), exact via rationals
  mpq_class r = 1;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) r *= mpq_class(v[i] - v[j] + j - i, j - i);
  r.canonicalize();
  if (r.get_den() != 1) throw std::logic_error("weyl_dimension: non-integer result");
  return r.get_num().get_si();
}

std::map<std::vector<int>, long> gt_character(const std::vector<int>& hw) {
  std::map<std::vector<int>, long> out;
  int k = int(hw.size());
  if (k == 0) {
    out[{}] = 1;
    return out;
  }
  // rows[r] has length r+1; rows[k-1] = hw
  std::vector<std::vector<int>> rows(k);
  rows[k - 1] = hw;
  std::function<void(int)> rec = [&](int r) {
    if (r < 0) {
      std::vector<int> w(k);
      long prev = 0;
      for (int j = 0; j < k; ++j) {
        long s = std::accumulate(rows[j].begin(), rows[j].end(), 0L);
        w[j] = int(s - prev);
        prev = s;
      }
      out[w] += 1;
      return;
    }
    const auto& up = rows[r + 1];
    rows[r].assign(r + 1, 0);
    std::function<void(int)> fill = [&](int p) {
      if (p > r) {
        rec(r - 1);
        return;
      }
      for (int x = up[p + 1]; x <= up[p]; ++x) {
        rows[r][p] = x;
        fill(p + 1);
      }
    };
    fill(0);
  };
  rec(k - 2);
  return out;
}

}  // namespace qpn
