#include "qpn/braiding.hpp"

#include <algorithm>
#include <random>

namespace qpn {

namespace {

SpMat kron_sp(const SpMat& a, const SpMat& b) { return kron(a, b); }

bool equal_on(const SpMat& X, const SpMat& Y, const std::vector<int>& cols) {
  for (int c : cols) {
    SVec d = X.column(c);
    for (const auto& [r, y] : Y.column(c)) d[r] -= y;
    for (const auto& [r, x] : d)
      if (!x.is_zero()) return false;
  }
  return true;
}

// Generators as operators on a module: e_i, f_i, K_{eps_k}.
std::vector<SpMat> generators(const WeightModule& W) {
  std::vector<SpMat> g;
  for (int i = 0; i < W.n; ++i) {
    g.push_back(W.E[i]);
    g.push_back(W.F[i]);
  }
  for (int k = 1; k <= W.n + 1; ++k) g.push_back(W.K(eps(W.n, k)));
  return g;
}

// Columns (a * inner + w) of X (x) W whose W-leg has degree <= limit.
std::vector<int> guarded_cols(int outer, const WeightModule& W, int limit) {
  std::vector<int> c;
  for (int a = 0; a < outer; ++a)
    for (int w = 0; w < W.dim(); ++w)
      if (!W.truncated() || W.deg[w] <= limit) c.push_back(a * W.dim() + w);
  return c;
}

ScalarK theta_coeff(int k) {
  ScalarK q = ScalarK::q();
  return qpow(Exponent::q(k * (k - 1) / 2)) * (q - q.inv()).pow(k) / qfactorial(k);
}

}  // namespace

SpMat flip(int d1, int d2) {
  SpMat p(d1 * d2, d1 * d2);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b) p.add(b * d1 + a, a * d2 + b, ScalarK(1));
  return p;
}

SpMat r_action(const WeightModule& W1, const WeightModule& W2) {
  int n = W1.n, d1 = W1.dim(), d2 = W2.dim();
  SpMat theta = SpMat::identity(d1 * d2);
  int cap = std::max(d1, d2) + 1;
  for (auto [i, j] : positive_roots(n)) {
    SpMat e = root_operator(W1, i, j - 1, 1), f = root_operator(W2, i, j - 1, -1);
    SpMat th = SpMat::identity(d1 * d2);
    SpMat ek = SpMat::identity(d1), fk = SpMat::identity(d2);
    for (int k = 1; k <= cap; ++k) {
      ek = e * ek;
      fk = f * fk;
      if (ek.is_zero() || fk.is_zero()) break;
      th = th + kron_sp(ek, fk).scaled(theta_coeff(k));
    }
    theta = theta * th;
  }
  SpMat cartan(d1 * d2, d1 * d2);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b) cartan.add(a * d2 + b, a * d2 + b, qpow(pairing(W1.wt[a], W2.wt[b])));
  return cartan * theta;
}

Mat frt_matrix(int n) {
  int N = n + 1;
  Mat R(N * N, N * N);
  ScalarK q = ScalarK::q();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) R(i * N + j, i * N + j) = i == j ? q : ScalarK(1);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) R(i * N + j, j * N + i) = q - q.inv();  // E_ij (x) E_ji
  return R;
}

bool yang_baxter(const SpMat& R, int dV) {
  SpMat I = SpMat::identity(dV);
  SpMat R12 = kron(R, I), R23 = kron(I, R);
  SpMat P23 = kron(I, flip(dV, dV));
  SpMat R13 = P23 * R12 * P23;
  return R12 * R13 * R23 == R23 * R13 * R12;
}

bool intertwines(const WeightModule& W1, const WeightModule& W2, const SpMat& R, int limit) {
  WeightModule T12 = tensor(W1, W2), T21 = tensor(W2, W1);
  SpMat FR = flip(W1.dim(), W2.dim()) * R;
  std::vector<int> cols;
  for (int c = 0; c < T12.dim(); ++c)
    if (limit < 0 || T12.deg[c] <= limit) cols.push_back(c);
  auto g12 = generators(T12), g21 = generators(T21);
  for (size_t k = 0; k < g12.size(); ++k)
    if (!equal_on(g21[k] * FR, FR * g12[k], cols)) return false;
  return true;
}

QMatrix q_matrix(const WeightModule& W) {
  QMatrix Q;
  Q.n = W.n;
  WeightModule V = natural_module(W.n);
  int N = V.dim(), dW = W.dim();
  SpMat RVW = r_action(V, W), RWV = r_action(W, V);
  Q.total = flip(dW, N) * RWV * flip(N, dW) * RVW;
  Q.blocks.assign(N, std::vector<SpMat>(N, SpMat(dW, dW)));
  for (int j = 0; j < N; ++j)
    for (int w = 0; w < dW; ++w)
      for (const auto& [r, x] : Q.total.column(j * dW + w)) Q.blocks[r / dW][j].add(r % dW, w, x);
  return Q;
}

bool q_commutes(const WeightModule& W, const QMatrix& Q, int guard) {
  WeightModule V = natural_module(W.n);
  WeightModule T = tensor(V, W);
  auto cols = guarded_cols(V.dim(), W, W.trunc - guard);
  for (const auto& g : generators(T))
    if (!equal_on(Q.total * g, g * Q.total, cols)) return false;
  return true;
}

bool q_reflection_equation(const WeightModule& W, const QMatrix& Q, int guard) {
  int N = W.n + 1, dW = W.dim();
  SpMat IW = SpMat::identity(dW), IN = SpMat::identity(N);
  SpMat Q2 = kron(IN, Q.total);
  SpMat P12 = kron(flip(N, N), IW);
  SpMat Q1 = P12 * Q2 * P12;
  SpMat R12 = kron(SpMat::from_dense(frt_matrix(W.n)), IW);
  SpMat R21 = P12 * R12 * P12;
  auto cols = guarded_cols(N * N, W, W.trunc - guard);
  return equal_on(R21 * Q1 * R12 * Q2, Q2 * R21 * Q1 * R12, cols);
}

REMatrix re_matrix(int n, const ScalarK& c, const ScalarK& d) {
  REMatrix r;
  r.n = n;
  r.x1 = ScalarK::y1().pow(2);
  r.x2 = ScalarK::y2().pow(2);
  r.c = c;
  r.d = d;
  int N = n + 1;
  ScalarK qm2 = qpow(Exponent::q(-2));
  r.A = Mat(N, N);
  r.A(0, 0) = r.x1 + qm2 * r.x2;
  for (int i = 1; i < n; ++i) r.A(i, i) = qm2 * r.x2;
  r.A(0, n) = c;
  r.A(n, 0) = d;
  return r;
}

REMatrix re_matrix(int n, const ScalarK& c) {
  ScalarK x1 = ScalarK::y1().pow(2), x2 = ScalarK::y2().pow(2);
  return re_matrix(n, c, -(qpow(Exponent::q(-2)) * x1 * x2 / c));
}

Mat natural_basis(const Mat& A) {
  int N = A.rows();
  Mat B(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) B(i, j) = A(N - 1 - i, N - 1 - j);
  return B;
}

bool re_check(int n, const Mat& A) {
  int N = n + 1;
  SpMat R = SpMat::from_dense(frt_matrix(n));
  SpMat P = flip(N, N);
  SpMat R21 = P * R * P;
  SpMat As = SpMat::from_dense(A), I = SpMat::identity(N);
  SpMat A1 = kron(As, I), A2 = kron(I, As);
  return R21 * A1 * R * A2 == A2 * R21 * A1 * R;
}

ScalarK chi(const QWord& w, const Mat& A) {
  ScalarK r(1);
  for (auto [i, j] : w) r *= A(i, j);
  return r;
}

std::vector<QWord> q_words(int n, int degree) {
  int N = n + 1;
  std::vector<QWord> out{{}};
  std::vector<QWord> layer{{}};
  for (int L = 1; L <= degree; ++L) {
    std::vector<QWord> next;
    for (const auto& w : layer)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          QWord x = w;
          x.emplace_back(i, j);
          next.push_back(x);
        }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

namespace {

Weight word_shift(int n, const QWord& w) {
  Weight s = zero_weight(n);
  for (auto [i, j] : w) s = s + eps(n, j + 1) - eps(n, i + 1);
  return s;
}

// Operators of all words, built by prefix: word (a b ...) acts as Q_a Q_b ...
std::map<QWord, SpMat> word_operators(const QMatrix& Q, const std::vector<QWord>& words, int dim) {
  std::map<QWord, SpMat> ops;
  for (const auto& w : words) {
    if (w.empty()) {
      ops[w] = SpMat::identity(dim);
      continue;
    }
    QWord prefix(w.begin(), w.end() - 1);
    ops[w] = ops.at(prefix) * Q.blocks[w.back().first][w.back().second];
  }
  return ops;
}

// Rows: (column, row index) pairs touched by any operator; entries of a dense system.
struct SystemBuilder {
  std::map<std::pair<int, int>, int> rows;
  int row(int c, int r) { return rows.emplace(std::make_pair(c, r), int(rows.size())).first->second; }
};

}  // namespace

ChiConsistency chi_consistency(int n, int d, int trunc, const ScalarK& c) {
  ChiConsistency res;
  WeightModule M = base_module(n, trunc);
  std::vector<int> cols;
  for (int b = 0; b < M.dim(); ++b)
    if (M.deg[b] <= trunc - d) cols.push_back(b);
  if (cols.empty()) throw GuardBandTooSmall("no columns of degree <= " + std::to_string(trunc - d));
  res.columns = int(cols.size());
  QMatrix Q = q_matrix(M);
  auto words = q_words(n, d);
  res.words = int(words.size());
  auto ops = word_operators(Q, words, M.dim());
  Mat A = natural_basis(re_matrix(n, c).A);
  std::map<Weight, std::vector<int>> by_shift;
  for (size_t k = 0; k < words.size(); ++k) by_shift[word_shift(n, words[k])].push_back(int(k));
  res.ok = true;
  for (const auto& [s, idx] : by_shift) {
    SystemBuilder sb;
    std::vector<std::vector<std::pair<int, ScalarK>>> entries(idx.size());
    for (size_t u = 0; u < idx.size(); ++u)
      for (int col : cols)
        for (const auto& [r, x] : ops.at(words[idx[u]]).column(col)) entries[u].emplace_back(sb.row(col, r), x);
    Mat S(std::max<int>(1, int(sb.rows.size())), int(idx.size()));
    for (size_t u = 0; u < idx.size(); ++u)
      for (const auto& [r, x] : entries[u]) S(r, int(u)) = x;
    for (const auto& kv : kernel(S)) {
      ++res.kernel_dim;
      ScalarK tot;
      for (size_t u = 0; u < idx.size(); ++u)
        if (!kv[u].is_zero()) tot += kv[u] * chi(words[idx[u]], A);
      if (!tot.is_zero()) res.ok = false;
    }
  }
  return res;
}

BAction b_action(const WeightModule& W, const Mat& A) {
  BAction K;
  K.n = W.n;
  WeightModule V = natural_module(W.n);
  int N = V.dim(), dW = W.dim();
  SpMat RVW = r_action(V, W), RWV = r_action(W, V);
  SpMat A1 = kron(SpMat::from_dense(A), SpMat::identity(dW));
  K.total = flip(dW, N) * RWV * flip(N, dW) * A1 * RVW;
  K.blocks.assign(N, std::vector<Mat>(N, Mat(dW, dW)));
  for (int j = 0; j < N; ++j)
    for (int w = 0; w < dW; ++w)
      for (const auto& [r, x] : K.total.column(j * dW + w)) K.blocks[r / dW][j](r % dW, w) = x;
  return K;
}

bool commutes_with(const BAction& K, const Mat& P) {
  for (const auto& row : K.blocks)
    for (const auto& k : row)
      if (k * P != P * k) return false;
  return true;
}

namespace {

std::vector<Mat> commutant(const BAction& K, int dim) {
  // X k - k X = 0 for all blocks; unknown X(a, c) at a * dim + c
  std::vector<std::map<int, ScalarK>> rows;
  for (const auto& line : K.blocks)
    for (const auto& k : line)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
          std::map<int, ScalarK> r;
          for (int c = 0; c < dim; ++c) {
            if (!k(c, b).is_zero()) r[a * dim + c] += k(c, b);
            if (!k(a, c).is_zero()) r[c * dim + b] -= k(a, c);
          }
          for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
          if (!r.empty()) rows.push_back(std::move(r));
        }
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.begin()->first < y.begin()->first;
  });
  // incremental elimination keeps the system small
  std::vector<std::map<int, ScalarK>> basis;
  std::map<int, int> pivot_of;  // pivot column -> basis row
  for (auto r : rows) {
    for (const auto& [pc, bi] : pivot_of) {
      auto it = r.find(pc);
      if (it == r.end()) continue;
      ScalarK f = it->second;
      for (const auto& [c, x] : basis[bi]) {
        r[c] -= f * x;
      }
      for (auto jt = r.begin(); jt != r.end();) jt = jt->second.is_zero() ? r.erase(jt) : std::next(jt);
    }
    if (r.empty()) continue;
    int pc = r.begin()->first;
    ScalarK inv = r.begin()->second.inv();
    for (auto& [c, x] : r) x *= inv;
    // reduce existing rows by the new pivot
    for (auto& b : basis) {
      auto it = b.find(pc);
      if (it == b.end()) continue;
      ScalarK f = it->second;
      for (const auto& [c, x] : r) b[c] -= f * x;
      for (auto jt = b.begin(); jt != b.end();) jt = jt->second.is_zero() ? b.erase(jt) : std::next(jt);
    }
    pivot_of[pc] = int(basis.size());
    basis.push_back(std::move(r));
  }
  std::vector<Mat> out;
  for (int fc = 0; fc < dim * dim; ++fc) {
    if (pivot_of.count(fc)) continue;
    Mat X(dim, dim);
    X(fc / dim, fc % dim) = ScalarK(1);
    for (const auto& [pc, bi] : pivot_of) {
      auto it = basis[bi].find(fc);
      if (it != basis[bi].end()) X(pc / dim, pc % dim) = -it->second;
    }
    out.push_back(std::move(X));
  }
  return out;
}

LPoly lcm(const LPoly& a, const LPoly& b) {
  LPoly g = gcd(a, b);
  return *(a * b).divide(g);
}

Vec flatten(const Mat& m) {
  Vec v;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

// Monic minimal polynomial coefficients a_0..a_{k-1}, a_k = 1.
std::vector<ScalarK> minimal_polynomial(const Mat& Y) {
  int N = Y.rows();
  std::vector<Vec> pw;
  Mat P = Mat::identity(N);
  for (int k = 0; k <= N; ++k) {
    Vec v = flatten(P);
    if (!pw.empty()) {
      Mat S(N * N, int(pw.size())), b(N * N, 1);
      for (size_t c = 0; c < pw.size(); ++c)
        for (int r = 0; r < N * N; ++r) S(r, int(c)) = pw[c][r];
      for (int r = 0; r < N * N; ++r) b(r, 0) = v[r];
      auto x = solve(S, b);
      if (x) {
        std::vector<ScalarK> coef(k + 1);
        for (int i = 0; i < k; ++i) coef[i] = -(*x)(i, 0);
        coef[k] = ScalarK(1);
        return coef;
      }
    }
    pw.push_back(v);
    P = P * Y;
  }
  throw std::logic_error("minimal_polynomial: no dependency");
}

ScalarK horner(const std::vector<ScalarK>& p, const ScalarK& x) {
  ScalarK r;
  for (size_t k = p.size(); k-- > 0;) r = r * x + p[k];
  return r;
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class eval_mod(const std::vector<mpz_class>& P, const mpz_class& x, const mpz_class& m) {
  mpz_class r = 0;
  for (size_t k = P.size(); k-- > 0;) r = mod_pos(r * x + P[k], m);
  return r;
}

mpz_class eval_z(const std::vector<mpz_class>& P, const mpz_class& x) {
  mpz_class r = 0;
  for (size_t k = P.size(); k-- > 0;) r = r * x + P[k];
  return r;
}

// Integer roots of P with |root| <= bound, by brute force mod a small prime and Newton lifting.
std::vector<mpz_class> integer_roots(const std::vector<mpz_class>& P, const mpz_class& bound) {
  std::vector<mpz_class> dP;
  for (size_t k = 1; k < P.size(); ++k) dP.push_back(P[k] * long(k));
  int deg = int(P.size()) - 1;
  std::vector<mpz_class> best;
  for (unsigned long ell = 1009, tries = 0; tries < 40; ++ell) {
    if (!mpz_probab_prime_p(mpz_class(ell).get_mpz_t(), 25)) continue;
    ++tries;
    mpz_class L(ell);
    if (mod_pos(P.back(), L) == 0) continue;
    std::vector<mpz_class> found;
    bool clean = true;
    for (unsigned long x = 0; x < ell; ++x) {
      if (eval_mod(P, mpz_class(x), L) != 0) continue;
      if (eval_mod(dP, mpz_class(x), L) == 0) {
        clean = false;
        break;
      }
      mpz_class X(x), mod = L;
      while (mod <= 2 * bound + 1) {
        mod *= mod;
        mpz_class d = eval_mod(dP, X, mod), inv;
        if (!mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t())) {
          clean = false;
          break;
        }
        X = mod_pos(X - eval_mod(P, X, mod) * inv, mod);
      }
      if (!clean) break;
      mpz_class bal = X > mod / 2 ? mpz_class(X - mod) : X;
      if (eval_z(P, bal) == 0) found.push_back(bal);
    }
    if (!clean) continue;
    if (int(found.size()) == deg) return found;
    if (found.size() > best.size()) best = found;
  }
  return best;
}

// Balanced base-B digits of X -> Laurent polynomial with exponent boxes (wv, w1, w2).
std::optional<LPoly> decode(mpz_class X, const mpz_class& B, int wv, int w1, int w2) {
  std::vector<LPoly::Term> terms;
  long t = 0, cap = long(wv) * w1 * w2;
  mpz_class half = B / 2;
  while (X != 0) {
    if (t >= cap) return std::nullopt;
    mpz_class r = mod_pos(X, B);
    if (r > half) r -= B;
    if (r != 0) {
      int ev = int(t % wv), e1 = int((t / wv) % w1), e2 = int(t / (long(wv) * w1));
      terms.push_back({LPoly::pack(ev, e1, e2), r});
    }
    X = (X - r) / B;
    ++t;
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  return LPoly::from_terms(std::move(terms));
}

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int ceil_div(int a, int b) { return -floor_div(-a, b); }

// Roots in K of a monic polynomial with Laurent coefficients, all of them Laurent polynomials.
std::vector<ScalarK> laurent_roots(const std::vector<ScalarK>& p) {
  int k = int(p.size()) - 1;
  if (k == 1) return {-p[0]};
  for (const auto& c : p)
    if (!c.is_zero() && !c.den().is_monomial()) throw ReducibilitySplitFailure("minimal polynomial is not integral");
  // exponent boxes for roots, per variable
  int lo[3], hi[3];
  for (int v = 0; v < 3; ++v) {
    lo[v] = 0;
    hi[v] = 0;
  }
  mpz_class H = 1;
  for (int i = 0; i < k; ++i) {
    if (p[i].is_zero()) continue;
    LPoly num = p[i].num();
    Exponent dm = p[i].den().min_exponents();  // monomial denominator
    Exponent mn = num.min_exponents() - dm, mx = num.max_exponents() - dm;
    int a[3] = {mn.a2, mn.b1, mn.b2}, b[3] = {mx.a2, mx.b1, mx.b2};
    for (int v = 0; v < 3; ++v) {
      lo[v] = std::min(lo[v], floor_div(a[v], k - i));
      hi[v] = std::max(hi[v], ceil_div(b[v], k - i));
    }
    mpz_class n1 = num.l1_norm();
    mpz_class dc = abs(p[i].den().terms()[0].c);
    mpz_class q = n1 / dc + 1;
    if (q > H) H = q;
  }
  ++H;
  int wv = hi[0] - lo[0] + 1, w1 = hi[1] - lo[1] + 1, w2 = hi[2] - lo[2] + 1;
  ScalarK u(LPoly::monomial({lo[0], lo[1], lo[2]}));
  for (int attempt = 0; attempt < 4; ++attempt) {
    mpz_class B = 2 * H + 1;
    Point pt;
    pt.v0 = mpq_class(B);
    pt.q0 = mpq_class(B * B);
    mpz_class y1, y2;
    mpz_pow_ui(y1.get_mpz_t(), B.get_mpz_t(), wv);
    mpz_pow_ui(y2.get_mpz_t(), B.get_mpz_t(), long(wv) * w1);
    pt.y10 = mpq_class(y1);
    pt.y20 = mpq_class(y2);
    std::vector<mpq_class> P(k + 1);
    mpz_class den = 1;
    for (int i = 0; i <= k; ++i) {
      P[i] = specialize(p[i] * u.pow(i), pt);
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), P[i].get_den().get_mpz_t());
    }
    std::vector<mpz_class> Pz(k + 1);
    for (int i = 0; i <= k; ++i) Pz[i] = mpz_class(P[i] * den);
    mpz_class bound;
    mpz_pow_ui(bound.get_mpz_t(), B.get_mpz_t(), long(wv) * w1 * w2);
    std::vector<ScalarK> roots;
    for (const auto& X : integer_roots(Pz, bound)) {
      auto x = decode(X, B, wv, w1, w2);
      if (!x) continue;
      ScalarK r = u * ScalarK(*x);
      if (horner(p, r).is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    if (int(roots.size()) == k) return roots;
    H = H * 4;
  }
  throw ReducibilitySplitFailure("eigenvalues not found in the Laurent ring");
}

}  // namespace

BSubmodules b_submodules(const WeightModule& W, const Mat& A, unsigned seed) {
  BSubmodules res;
  int N = W.dim();
  BAction K = b_action(W, A);
  auto C = commutant(K, N);
  res.commutant_dim = int(C.size());
  if (C.size() == 1) {
    res.projectors = {Mat::identity(N)};
    res.eigenvalues = {ScalarK(1)};
    res.ranks = {N};
    return res;
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(1, 9);
  for (int attempt = 0; attempt < 5; ++attempt) {
    Mat Y(N, N);
    for (const auto& c : C) Y = Y + c.scaled(ScalarK(long(dist(rng))));
    LPoly D(1);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (!Y(i, j).is_zero()) D = lcm(D, Y(i, j).den());
    Y = Y.scaled(ScalarK(D));
    auto p = minimal_polynomial(Y);
    if (int(p.size()) - 1 != res.commutant_dim) continue;  // non-generic element
    auto roots = laurent_roots(p);
    std::vector<std::pair<std::pair<int, std::string>, std::pair<Mat, ScalarK>>> items;
    for (size_t j = 0; j < roots.size(); ++j) {
      Mat E = Mat::identity(N);
      for (size_t l = 0; l < roots.size(); ++l) {
        if (l == j) continue;
        E = E * (Y - Mat::identity(N).scaled(roots[l])).scaled((roots[j] - roots[l]).inv());
      }
      int r = rank(E);
      items.push_back({{r, roots[j].str()}, {E, roots[j]}});
    }
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& it : items) {
      res.ranks.push_back(it.first.first);
      res.projectors.push_back(std::move(it.second.first));
      res.eigenvalues.push_back(it.second.second);
    }
    return res;
  }
  throw ReducibilitySplitFailure("no generic element of the commutant found");
}

std::optional<std::vector<int>> ranks_at(const std::vector<Mat>& P, const Point& pt) {
  std::vector<int> out;
  try {
    for (const auto& p : P) out.push_back(rank(specialize(p, pt)));
  } catch (const DenominatorVanishes&) {
    return std::nullopt;
  }
  return out;
}

ChiContract chi_contract(const Decomposition& D, const OperatorBlock& Phat, const Mat& A, int wdeg) {
  ChiContract res;
  const WeightModule& V = D.V;
  const WeightModule& M = D.M;
  int n = V.n, dv = V.dim(), dm = M.dim();
  int spread = 0;
  for (int b = 0; b < dv; ++b) spread = std::max(spread, (V.highest.c[0].a2 - V.wt[b].c[0].a2) / 2);
  int limit = D.trunc - std::max(wdeg, spread);
  std::vector<int> cols;
  for (int w = 0; w < dm; ++w)
    if (M.deg[w] <= limit) cols.push_back(w);
  if (cols.empty()) throw GuardBandTooSmall("no columns of degree <= " + std::to_string(limit));
  res.columns = int(cols.size());
  // full operator from the blocks
  SpMat P(dv * dm, dv * dm);
  for (const auto& [w, basis] : Phat.basis) {
    const Mat& B = Phat.blocks.at(w);
    for (size_t c = 0; c < basis.size(); ++c)
      for (size_t r = 0; r < basis.size(); ++r)
        if (!B(int(r), int(c)).is_zero()) P.add(basis[r], basis[c], B(int(r), int(c)));
  }
  QMatrix Q = q_matrix(M);
  auto words = q_words(n, wdeg);
  res.words = int(words.size());
  auto ops = word_operators(Q, words, dm);
  std::map<Weight, std::vector<int>> by_shift;
  for (size_t k = 0; k < words.size(); ++k) by_shift[word_shift(n, words[k])].push_back(int(k));
  res.P = Mat(dv, dv);
  for (int a = 0; a < dv; ++a)
    for (int b = 0; b < dv; ++b) {
      Weight s = V.wt[b] - V.wt[a];
      SystemBuilder sb;
      std::vector<std::pair<int, ScalarK>> rhs;
      for (int col : cols)
        for (const auto& [r, x] : P.column(b * dm + col))
          if (r / dm == a) rhs.emplace_back(sb.row(col, r % dm), x);
      auto it = by_shift.find(s);
      std::vector<int> idx = it == by_shift.end() ? std::vector<int>{} : it->second;
      std::vector<std::vector<std::pair<int, ScalarK>>> entries(idx.size());
      for (size_t u = 0; u < idx.size(); ++u)
        for (int col : cols)
          for (const auto& [r, x] : ops.at(words[idx[u]]).column(col)) entries[u].emplace_back(sb.row(col, r), x);
      if (idx.empty()) {
        if (!rhs.empty()) throw ExpansionNotFound("block (" + std::to_string(a) + "," + std::to_string(b) + ")");
        continue;
      }
      int R = std::max<int>(1, int(sb.rows.size()));
      Mat S(R, int(idx.size())), rb(R, 1);
      for (size_t u = 0; u < idx.size(); ++u)
        for (const auto& [r, x] : entries[u]) S(r, int(u)) = x;
      for (const auto& [r, x] : rhs) rb(r, 0) = x;
      auto sol = solve(S, rb);
      if (!sol) throw ExpansionNotFound("block (" + std::to_string(a) + "," + std::to_string(b) + ")");
      for (const auto& kv : kernel(S)) {
        ScalarK tot;
        for (size_t u = 0; u < idx.size(); ++u)
          if (!kv[u].is_zero()) tot += kv[u] * chi(words[idx[u]], A);
        if (!tot.is_zero()) throw WordRelationViolation("expansion kernel is not annihilated by chi");
      }
      ScalarK val;
      auto& ex = res.expansion[{a, b}];
      for (size_t u = 0; u < idx.size(); ++u)
        if (!(*sol)(int(u), 0).is_zero()) {
          val += (*sol)(int(u), 0) * chi(words[idx[u]], A);
          ex[words[idx[u]]] = (*sol)(int(u), 0);
        }
      res.P(a, b) = val;
    }
  return res;
}

}  // namespace qpn
