#include "qpn/funcalg.hpp"

#include <set>
#include <sstream>

#include "qpn/parallel.hpp"

namespace qpn {

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

SpMat transpose(const SpMat& m) {
  SpMat t(m.cols(), m.rows());
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, x] : m.column(c)) t.add(c, r, x);
  return t;
}

}  // namespace

// ---- TElement ----

TElement::TElement(int n_, const ScalarK& c) : n(n_) {
  if (!c.is_zero()) t_[TWord{}] = c;
}

TElement TElement::word(int n_, const TWord& w, const ScalarK& c) {
  TElement e;
  e.n = n_;
  e.add(w, c);
  return e;
}

TElement TElement::t(int n_, int i, int j) { return word(n_, TWord{"t", i, j}); }
TElement TElement::tbar(int n_, int i, int j) { return word(n_, TWord{"b", i, j}); }

void TElement::add(const TWord& w, const ScalarK& c) {
  if (c.is_zero()) return;
  auto it = t_.find(w);
  if (it == t_.end()) {
    t_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

int TElement::degree() const {
  int d = 0;
  for (const auto& [w, c] : t_) d = std::max(d, int(w.shape.size()));
  return d;
}

TElement TElement::operator+(const TElement& o) const {
  TElement r = *this;
  if (!r.n) r.n = o.n;
  for (const auto& [w, c] : o.t_) r.add(w, c);
  return r;
}

TElement TElement::operator-(const TElement& o) const { return *this + o.scaled(ScalarK(-1)); }

TElement TElement::scaled(const ScalarK& c) const {
  TElement r;
  r.n = n;
  if (c.is_zero()) return r;
  for (const auto& [w, x] : t_) r.t_.emplace(w, x * c);
  return r;
}

TElement TElement::operator*(const TElement& o) const {
  TElement r;
  r.n = n ? n : o.n;
  int N = r.n + 1;
  for (const auto& [a, x] : t_)
    for (const auto& [b, y] : o.t_) {
      int s = ipow(N, int(b.shape.size()));
      r.add(TWord{a.shape + b.shape, a.r * s + b.r, a.c * s + b.c}, x * y);
    }
  return r;
}

std::string TElement::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*[" << (w.shape.empty() ? "1" : w.shape) << ":" << w.r << "," << w.c << "]";
  }
  return os.str();
}

ModuleOp element_op(const AlgebraElement& h) {
  return [h](const WeightModule& W) { return op(W, h); };
}

// ---- TModel ----

TModel::TModel(int n, int D) : n_(n), D_(D) {
  auto roots = positive_roots(n);
  std::vector<int> ex(roots.size(), 0);
  while (true) {
    pbw_.push_back(ex);
    size_t k = 0;
    while (k < ex.size() && ex[k] == D) ex[k++] = 0;
    if (k == ex.size()) break;
    ++ex[k];
  }
}

void TModel::check_degree(int d) const {
  if (d > D_) throw DegreeBudgetExceeded("degree " + std::to_string(d) + " > budget " + std::to_string(D_));
}

const TModel::ShapeData& TModel::shape(const std::string& s) const {
  auto it = shapes_.find(s);
  if (it != shapes_.end()) return it->second;
  check_degree(int(s.size()));
  ShapeData sd;
  if (s.empty()) {
    sd.W = trivial_module(n_);
  } else {
    WeightModule nat = natural_module(n_), dual = dual_module(nat);
    sd.W = s[0] == 't' ? nat : dual;
    for (size_t k = 1; k < s.size(); ++k) sd.W = tensor(sd.W, s[k] == 't' ? nat : dual);
  }
  auto roots = positive_roots(n_);
  std::vector<SpMat> e, f;
  for (auto [i, j] : roots) {
    e.push_back(root_operator(sd.W, i, j - 1, 1));
    f.push_back(root_operator(sd.W, i, j - 1, -1));
  }
  int d = sd.W.dim();
  for (const auto& ex : pbw_) {
    SpMat E = SpMat::identity(d), F = SpMat::identity(d);
    for (size_t k = 0; k < ex.size(); ++k)
      for (int p = 0; p < ex[k]; ++p) {
        E = E * e[k];
        F = F * f[k];
      }
    sd.E.push_back(std::move(E));
    sd.F.push_back(std::move(F));
  }
  return shapes_.emplace(s, std::move(sd)).first->second;
}

const WeightModule& TModel::shape_module(const std::string& s) const { return shape(s).W; }

std::vector<TWord> TModel::coefficients(int d) const {
  check_degree(d);
  std::vector<TWord> out;
  int N = n_ + 1;
  for (int L = 0; L <= d; ++L)
    for (int m = 0; m < (1 << L); ++m) {
      std::string s;
      for (int k = L - 1; k >= 0; --k) s += (m >> k) & 1 ? 'b' : 't';
      int dim = ipow(N, L);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) out.push_back(TWord{s, r, c});
    }
  return out;
}

Functional TModel::compute(const TWord& w) const {
  const ShapeData& sd = shapes_.at(w.shape);
  Functional out;
  for (size_t je = 0; je < sd.E.size(); ++je) {
    const SVec& v = sd.E[je].column(w.c);
    for (const auto& [m, x] : v) {
      const Weight& wt = sd.W.wt[m];
      for (size_t jf = 0; jf < sd.F.size(); ++jf) {
        ScalarK y = sd.F[jf].at(w.r, m);
        if (y.is_zero()) continue;
        ScalarK& slot = out[TestKey{int(jf), wt, int(je)}];
        slot += x * y;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

const Functional& TModel::functional(const TWord& w) const {
  auto it = table_.find(w);
  if (it != table_.end()) return it->second;
  shape(w.shape);
  return table_.emplace(w, compute(w)).first->second;
}

void TModel::build_table(int threads) const {
  auto all = coefficients(D_);
  for (const auto& w : all) shape(w.shape);
  std::vector<TWord> todo;
  for (const auto& w : all)
    if (!table_.count(w)) todo.push_back(w);
  auto res = parallel_map<Functional>(int(todo.size()), [&](int k) { return compute(todo[k]); }, threads);
  for (size_t k = 0; k < todo.size(); ++k) table_.emplace(todo[k], std::move(res[k]));
}

Functional TModel::functional(const TElement& a) const {
  Functional out;
  for (const auto& [w, c] : a.terms())
    for (const auto& [k, x] : functional(w)) out[k] += c * x;
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

bool TModel::equal(const TElement& a, const TElement& b) const {
  check_degree(std::max(a.degree(), b.degree()));
  return functional(a - b).empty();
}

int TModel::rank_of(const std::vector<TElement>& xs) const {
  std::vector<Functional> fs;
  std::map<TestKey, int> rows;
  for (const auto& x : xs) {
    fs.push_back(functional(x));
    for (const auto& [k, v] : fs.back()) rows.emplace(k, 0);
  }
  int r = 0;
  for (auto& [k, i] : rows) i = r++;
  if (rows.empty() || xs.empty()) return 0;
  Mat m(int(rows.size()), int(xs.size()));
  for (size_t j = 0; j < fs.size(); ++j)
    for (const auto& [k, v] : fs[j]) m(rows.at(k), int(j)) = v;
  return rank(m);
}

ScalarK TModel::evaluate(const TElement& a, const AlgebraElement& u) const {
  ScalarK r;
  std::map<std::string, SpMat> ops;
  for (const auto& [w, c] : a.terms()) {
    auto it = ops.find(w.shape);
    if (it == ops.end()) it = ops.emplace(w.shape, op(shape(w.shape).W, u)).first;
    r += c * it->second.at(w.r, w.c);
  }
  return r;
}

TElement TModel::translate_left(const ModuleOp& h, const TElement& a) const {
  TElement out;
  out.n = n_;
  std::map<std::string, SpMat> ops;
  for (const auto& [w, c] : a.terms()) {
    auto it = ops.find(w.shape);
    if (it == ops.end()) it = ops.emplace(w.shape, h(shape(w.shape).W)).first;
    // sum_m coef(r, m) rho(h)[m, c]
    for (const auto& [m, x] : it->second.column(w.c)) out.add(TWord{w.shape, w.r, m}, c * x);
  }
  return out;
}

TElement TModel::translate_right(const TElement& a, const ModuleOp& h) const {
  TElement out;
  out.n = n_;
  std::map<std::string, SpMat> ops;
  for (const auto& [w, c] : a.terms()) {
    auto it = ops.find(w.shape);
    if (it == ops.end()) it = ops.emplace(w.shape, transpose(h(shape(w.shape).W))).first;
    // sum_m rho(h)[r, m] coef(m, c)
    for (const auto& [m, x] : it->second.column(w.r)) out.add(TWord{w.shape, m, w.c}, c * x);
  }
  return out;
}

TElement TModel::translate_left(const AlgebraElement& h, const TElement& a) const {
  return translate_left(element_op(h), a);
}
TElement TModel::translate_right(const TElement& a, const AlgebraElement& h) const {
  return translate_right(a, element_op(h));
}

// ---- embedding and invariance ----

TElement embed_A(int n, const Mat& A, int i, int j, bool transposed) {
  int N = n + 1;
  TElement out(n, ScalarK());
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l) {
      if (A(k, l).is_zero()) continue;
      TElement tb = transposed ? TElement::tbar(n, i, k) : TElement::tbar(n, k, i);
      out = out + (tb * TElement::t(n, l, j)).scaled(A(k, l));
    }
  return out;
}

namespace {

ModuleOp k_generator(const Mat& A, int i, int j) {
  return [A, i, j](const WeightModule& W) { return SpMat::from_dense(b_action(W, A).blocks[i][j]); };
}

}  // namespace

bool b_invariant(const TModel& T, const TElement& a, const Mat& A) {
  int N = T.n() + 1;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (!T.equal(T.translate_right(a, k_generator(A, i, j)), a.scaled(A(i, j)))) return false;
  return true;
}

// ---- iota ----

TV iota(const TV& x) {
  int N = int(x.size()), n = N - 1;
  TV out(N, TElement(n, ScalarK()));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out[j] = out[j] + x[i] * TElement::t(n, i, j);
  return out;
}

TV iota_bar(const TV& x) {
  int N = int(x.size()), n = N - 1;
  TV out(N, TElement(n, ScalarK()));
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) out[k] = out[k] + x[j] * TElement::tbar(n, k, j);
  return out;
}

bool tv_equal(const TModel& T, const TV& a, const TV& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!T.equal(a[i], b[i])) return false;
  return true;
}

std::vector<std::vector<TElement>> iota_conjugate(int n, const Mat& P) {
  int N = n + 1;
  std::vector<std::vector<TElement>> M(N, std::vector<TElement>(N, TElement(n, ScalarK())));
  for (int j = 0; j < N; ++j)
    for (int m = 0; m < N; ++m)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l)
          if (!P(k, l).is_zero())
            M[j][m] = M[j][m] + (TElement::tbar(n, k, j) * TElement::t(n, l, m)).scaled(P(k, l));
  return M;
}

std::vector<std::vector<TElement>> phat21(int n, const ChiContract& C, const Mat& A) {
  int N = n + 1;
  std::vector<std::vector<TElement>> E(N, std::vector<TElement>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) E[i][j] = embed_A(n, A, i, j);
  std::vector<std::vector<TElement>> out(N, std::vector<TElement>(N, TElement(n, ScalarK())));
  for (const auto& [ab, ex] : C.expansion)
    for (const auto& [w, c] : ex) {
      TElement x(n, ScalarK(1));
      for (auto [i, j] : w) x = x * E[i][j];
      out[ab.first][ab.second] = out[ab.first][ab.second] + x.scaled(c);
    }
  return out;
}

namespace {

ScalarK counit(const TElement& a) {
  // (x, 1): identity matrix entries
  ScalarK r;
  for (const auto& [w, c] : a.terms())
    if (w.r == w.c) r += c;
  return r;
}

}  // namespace

TwoProjectorCheck check_two_projectors(const TModel& T, const Mat& P, const ChiContract& C, const Mat& A) {
  int n = T.n(), N = n + 1;
  TwoProjectorCheck res;
  auto lhs = iota_conjugate(n, P);
  auto rhs = phat21(n, C, A);
  for (const auto& row : rhs)
    for (const auto& x : row) res.degree = std::max(res.degree, x.degree());
  res.degree = std::max(res.degree, 2);
  res.holds = true;
  res.counit = true;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (counit(lhs[a][b]) != P(a, b) || counit(rhs[a][b]) != P(a, b)) res.counit = false;
      if (!T.equal(lhs[a][b], rhs[a][b])) res.holds = false;
    }
  return res;
}

// ---- invariants ----

Mat row_space(const Mat& P) {
  Mat m = P.transpose();
  auto piv = independent_columns(m);
  Mat out(int(piv.size()), P.cols());
  for (size_t k = 0; k < piv.size(); ++k)
    for (int j = 0; j < P.cols(); ++j) out(int(k), j) = P(piv[k], j);
  return out;
}

namespace {

struct KeyRows {
  std::map<std::pair<int, TestKey>, int> idx;
  int row(int tag, const TestKey& k) { return idx.emplace(std::make_pair(tag, k), int(idx.size())).first->second; }
};

}  // namespace

std::vector<long> b_invariant_dims(const TModel& T, const WeightModule& V, const Mat& X, const Mat& A) {
  int n = T.n(), N = n + 1, dv = V.dim(), s = X.rows();
  T.build_table();
  // right action matrices of K_ij on W (x) V, transposed so that rows are columns
  std::map<std::string, std::vector<SpMat>> kt;
  auto kmats = [&](const std::string& sh) -> const std::vector<SpMat>& {
    auto it = kt.find(sh);
    if (it != kt.end()) return it->second;
    BAction K = b_action(tensor(T.shape_module(sh), V), A);
    std::vector<SpMat> v;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) v.push_back(transpose(SpMat::from_dense(K.blocks[i][j])));
    return kt.emplace(sh, std::move(v)).first->second;
  };
  std::vector<long> dims;
  for (int d = 0; d <= T.budget(); ++d) {
    std::map<Weight, std::vector<TWord>> groups;
    for (const auto& w : T.coefficients(d)) groups[T.shape_module(w.shape).wt[w.c]].push_back(w);
    long total = 0;
    for (const auto& [gw, G] : groups) {
      // rank of the coefficient functionals
      KeyRows kr0;
      std::vector<std::vector<std::pair<int, ScalarK>>> cols0(G.size());
      for (size_t g = 0; g < G.size(); ++g)
        for (const auto& [k, x] : T.functional(G[g])) cols0[g].emplace_back(kr0.row(0, k), x);
      int r0 = 0;
      if (!kr0.idx.empty()) {
        Mat m(int(kr0.idx.size()), int(G.size()));
        for (size_t g = 0; g < G.size(); ++g)
          for (const auto& [r, x] : cols0[g]) m(r, int(g)) = x;
        r0 = rank(m);
      }
      // invariance conditions on unknowns (g, x_u)
      KeyRows kr;
      std::vector<std::map<int, ScalarK>> cols(G.size() * s);
      std::map<TWord, int> gindex;
      for (size_t g = 0; g < G.size(); ++g) gindex[G[g]] = int(g);
      for (size_t g = 0; g < G.size(); ++g) {
        const TWord& w = G[g];
        const auto& Km = kmats(w.shape);
        for (int u = 0; u < s; ++u) {
          auto& col = cols[g * s + u];
          for (int ij = 0; ij < N * N; ++ij) {
            // Z = (e_r (x) x_u) rho(K_ij) - A_ij (e_r (x) x_u)
            std::map<int, ScalarK> Z;
            for (int v = 0; v < dv; ++v) {
              if (X(u, v).is_zero()) continue;
              for (const auto& [rc, y] : Km[ij].column(w.r * dv + v)) Z[rc] += X(u, v) * y;
              Z[w.r * dv + v] -= X(u, v) * A(ij / N, ij % N);
            }
            for (const auto& [rc, z] : Z) {
              if (z.is_zero()) continue;
              TWord w2{w.shape, rc / dv, w.c};
              int vslot = rc % dv;
              for (const auto& [k, x] : T.functional(w2)) col[kr.row(ij * dv + vslot, k)] += z * x;
            }
          }
        }
      }
      int unknowns = int(G.size()) * s, r1 = 0;
      if (!kr.idx.empty()) {
        Mat m(int(kr.idx.size()), unknowns);
        for (int c = 0; c < unknowns; ++c)
          for (const auto& [r, x] : cols[c]) m(r, c) = x;
        r1 = rank(m);
      }
      long inv = long(unknowns - r1) - long(s) * (long(G.size()) - r0);
      if (inv < 0) throw InvariantsRankMismatch("negative invariant count in block " + gw.str());
      total += inv;
    }
    dims.push_back(total);
  }
  return dims;
}

// ---- classical oracle ----

std::vector<long> classical_section_dims(int n, const std::vector<int>& x, int D) {
  int N = n + 1;
  auto dominant = [&](const std::vector<int>& m) {
    for (int i = 0; i + 1 < N; ++i)
      if (m[i] < m[i + 1]) return false;
    return true;
  };
  auto hom = [&](const std::vector<int>& mu) -> long {
    // gl(1) on the first coordinate, gl(n) on the rest; multiplicity free
    int sm = 0, sx = 0;
    for (int i = 0; i < N; ++i) sm += mu[i];
    for (int i = 1; i < N; ++i) {
      if (mu[i - 1] < x[i] || x[i] < mu[i]) return 0;
      sx += x[i];
    }
    return sm - sx == x[0] ? 1 : 0;
  };
  std::set<std::vector<int>> S{std::vector<int>(N, 0)};
  std::vector<long> out;
  for (int d = 0; d <= D; ++d) {
    if (d > 0) {
      std::set<std::vector<int>> next = S;
      for (const auto& mu : S)
        for (int i = 0; i < N; ++i)
          for (int sg : {1, -1}) {
            auto m = mu;
            m[i] += sg;
            if (dominant(m)) next.insert(m);
          }
      S = std::move(next);
    }
    long tot = 0;
    for (const auto& mu : S) tot += weyl_dimension(n, Weight::integral(mu)) * hom(mu);
    out.push_back(tot);
  }
  return out;
}

}  // namespace qpn
