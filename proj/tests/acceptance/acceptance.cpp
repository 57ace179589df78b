// Acceptance harness: one PASS/FAIL line per criterion, details indented below.
// Usage: acceptance [path-to-qpn-binary] [golden-dir]

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "qpn/funcalg.hpp"
#include "qpn/jobs.hpp"

using namespace qpn;

namespace {

std::vector<std::string> details;
void note(const std::string& s) { details.push_back(s); }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// ---- independent oracles ----

std::vector<int> interlacing_dims(const std::vector<int>& nu) {
  int n = int(nu.size()) - 1;
  std::vector<int> out, mu(n);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(n == 1 ? 1 : int(weyl_dimension(n - 1, Weight::integral(mu))));
      return;
    }
    for (int x = nu[i + 1]; x <= nu[i]; ++x) {
      mu[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

struct Phi {
  std::vector<int> m;
  std::pair<int, int> root;
  int k;
  Exponent arg;
  auto operator<=>(const Phi&) const = default;
};

// phi_{xi, alpha, k} = [(nu + rho + xi, alpha) + k]_q, xi = lambda - sum m_i beta_i,
// 1 <= k <= m_{j-1} for alpha = eps_i - eps_j, 0 <= m_i <= nu_i - nu_{i+1}.
std::vector<Phi> phi_enumeration(int n, const std::vector<int>& nu) {
  std::vector<Phi> out;
  std::vector<int> m(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      Weight xi = lambda_weight(n);
      for (int a = 0; a < n; ++a) xi = xi - beta(n, a + 1) * m[a];
      Weight top = Weight::integral(nu) + rho(n) + xi;
      for (auto [a, b] : positive_roots(n))
        for (int k = 1; k <= m[b - 2]; ++k) out.push_back({m, {a, b}, k, pairing(top, root(n, a, b)) + Exponent::q(k)});
      return;
    }
    for (int x = 0; x <= nu[i] - nu[i + 1]; ++x) {
      m[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// x is a unit times a product of y-free polynomials: every term of numerator and
// denominator carries the same y-exponents
bool y_free_up_to_monomial(const ScalarK& x) {
  for (const LPoly* p : {&x.num(), &x.den()}) {
    const auto& t = p->terms();
    for (const auto& term : t) {
      Exponent e = LPoly::unpack(term.key), f = LPoly::unpack(t.front().key);
      if (e.b1 != f.b1 || e.b2 != f.b2) return false;
    }
  }
  return true;
}

Point at_qk(int k) {
  mpq_class q0(9, 4), z = 1;
  for (int i = 0; i < std::abs(k); ++i) z *= q0;
  if (k < 0) z = 1 / z;
  return Point::make(q0, z, 1);
}

// ---- criteria ----

bool crit1() {
  bool ok = true;
  for (int n = 1; n <= 3; ++n) {
    auto rep = check_relations(base_module(n, 5), 2);
    note("n=" + std::to_string(n) + ": " + std::to_string(rep.checked) + " checks, " + std::to_string(rep.violations) +
         " violations");
    ok = ok && rep.violations == 0 && rep.checked > 0;
  }
  return ok;
}

std::vector<std::vector<int>> sweep(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      std::vector<int> nu(n + 1, 0);
      for (int k = n - 1; k >= 0; --k) nu[k] = nu[k + 1] + a[k];
      out.push_back(nu);
      return;
    }
    for (int x = 0; x <= 2; ++x) {
      a[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::map<std::vector<int>, ThetaReport> theta_cache;
const ThetaReport& theta_of(const std::vector<int>& nu) {
  auto it = theta_cache.find(nu);
  if (it != theta_cache.end()) return it->second;
  int n = int(nu.size()) - 1;
  return theta_cache.emplace(nu, theta(build_findim(n, Weight::integral(nu)))).first->second;
}

bool crit2() {
  bool ok = true;
  for (int n = 1; n <= 2; ++n)
    for (const auto& nu : sweep(n)) {
      const auto& rep = theta_of(nu);
      bool units = true;
      ScalarK det(1);
      for (const auto& b : rep.blocks) {
        units = units && !b.product.is_zero() && (b.direct / b.product).is_unit();
        det *= b.direct;
      }
      std::vector<Phi> got;
      for (const auto& f : det_theta(rep)) got.push_back({f.m, f.root, f.k, f.arg});
      std::sort(got.begin(), got.end());
      auto want = phi_enumeration(n, nu);
      ScalarK phis(1);
      for (const auto& p : want) phis *= qbracket(p.arg);
      bool rest = y_free_up_to_monomial(det / phis);
      note("nu=(" + join(nu) + "): " + std::to_string(rep.blocks.size()) + " blocks, units " + (units ? "yes" : "no") +
           ", factors " + std::to_string(got.size()) + "/" + std::to_string(want.size()) + (got == want ? " match" : " differ") +
           ", cofactor " + (rest ? "s-free" : "depends on s"));
      ok = ok && units && got == want && rest;
    }
  return ok;
}

bool crit3() {
  long checked = 0, bad = 0;
  for (int n = 1; n <= 2; ++n)
    for (const auto& nu : sweep(n))
      for (const auto& b : theta_of(nu).blocks)
        for (auto [i, j] : positive_roots(n)) {
          ++checked;
          auto it = b.l.find({i, j});
          if (it == b.l.end() || it->second != b.m[j - 2]) ++bad;
        }
  note(std::to_string(checked) + " (xi, alpha) pairs, " + std::to_string(bad) + " exceptions");
  return checked > 0 && bad == 0;
}

bool crit4() {
  std::vector<int> nu{2, 0};
  const auto& rep = theta_of(nu);
  auto factors = det_theta(rep);
  auto phis = phi_enumeration(1, nu);
  bool ok = true;
  for (int k = -2; k <= 2; ++k) {
    Point pt = at_qk(k);
    bool phi_zero = false;
    for (const auto& p : phis) phi_zero = phi_zero || specialize(qbracket(p.arg), pt) == 0;
    bool v = verdict(factors, pt);
    bool gram_zero = false;
    std::string raw = "";
    for (const auto& b : rep.blocks) {
      try {
        gram_zero = gram_zero || specialize(b.uu / b.ww, pt) == 0;
      } catch (const DenominatorVanishes&) {
      }
      try {
        raw += (raw.empty() ? "" : ",") + specialize(b.uu, pt).get_str();
      } catch (const DenominatorVanishes&) {
        raw += (raw.empty() ? "" : ",") + std::string("pole");
      }
    }
    note("z=q^" + std::to_string(k) + ": verdict " + (v ? "true" : "false") + ", phi vanishes " + (phi_zero ? "yes" : "no") +
         ", normalized Gram vanishes " + (gram_zero ? "yes" : "no") + ", raw <u,u> per block [" + raw + "]");
    ok = ok && (v == !phi_zero) && (gram_zero == !v);
  }
  return ok;
}

bool crit5() {
  bool ok = true;
  for (int n = 1; n <= 2; ++n)
    for (const auto& [name, V] : std::vector<std::pair<std::string, WeightModule>>{
             {"natural", natural_module(n)}, {"adjoint", build_findim(n, eps(n, 1) - eps(n, n + 1))}}) {
      auto D = decompose(V, 3);
      bool each = true;
      for (const auto& c : D.comps) each = each && c.ch == c.expected;
      note("n=" + std::to_string(n) + " " + name + ": " + std::to_string(D.comps.size()) + " components, sum " +
           (D.total == D.product ? "ok" : "bad") + ", per-component " + (each ? "ok" : "bad"));
      ok = ok && D.characters_ok && each && D.total == D.product && !D.comps.empty();
    }
  return ok;
}

bool crit6() {
  bool ok = true;
  for (int n = 1; n <= 3; ++n) {
    bool h = re_check(n, natural_basis(re_matrix(n).A));
    note("n=" + std::to_string(n) + ": RE " + (h ? "holds" : "fails"));
    ok = ok && h;
  }
  std::mt19937 rng(20261014);
  std::uniform_int_distribution<int> small(1, 9);
  for (int n = 2; n <= 3; ++n) {
    int rejected = 0;
    for (int t = 0; t < 5; ++t) {
      ScalarK c(mpq_class(small(rng), small(rng)));
      ScalarK d = re_matrix(n, c).d;
      mpq_class r(small(rng) + 1, small(rng));
      if (r == 1) r = 2;
      ScalarK bad = t % 2 ? d * ScalarK(r) : d + ScalarK(r);
      if (!re_check(n, natural_basis(re_matrix(n, c, bad).A))) ++rejected;
    }
    note("n=" + std::to_string(n) + ": " + std::to_string(rejected) + "/5 violations rejected");
    ok = ok && rejected == 5;
  }
  for (int n = 1; n <= 2; ++n) {
    WeightModule M = base_module(n, 4);
    QMatrix Q = q_matrix(M);
    bool re = q_reflection_equation(M, Q, 2);
    note("n=" + std::to_string(n) + ": Q-matrix RE on M<=4 " + (re ? "holds" : "fails"));
    ok = ok && re;
  }
  return ok;
}

bool crit7() {
  bool ok = true;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(2, 9);
  for (int n = 1; n <= 2; ++n) {
    Mat A = natural_basis(re_matrix(n).A);
    for (const auto& [name, nu] : std::vector<std::pair<std::string, std::vector<int>>>{
             {"natural", n == 1 ? std::vector<int>{1, 0} : std::vector<int>{1, 0, 0}},
             {"adjoint", n == 1 ? std::vector<int>{1, -1} : std::vector<int>{1, 0, -1}}}) {
      WeightModule V = build_findim(n, Weight::integral(nu));
      auto B = b_submodules(V, A);
      auto ranks = B.ranks;
      std::sort(ranks.begin(), ranks.end());
      bool rk = ranks == interlacing_dims(nu);
      Mat sum(V.dim(), V.dim());
      for (const auto& P : B.projectors) sum = sum + P;
      bool id = sum == Mat::identity(V.dim());
      auto D = decompose(V, 4);
      int matched = 0;
      for (size_t i = 0; i < D.comps.size(); ++i) {
        Mat P = chi_contract(D, invariant_projector(D, int(i)), A).P;
        if (std::find(B.projectors.begin(), B.projectors.end(), P) != B.projectors.end()) ++matched;
      }
      bool cc = matched == int(B.projectors.size()) && D.comps.size() == B.projectors.size();
      int stable = 0;
      for (int t = 0; t < 3;) {
        mpq_class v0(pick(rng), pick(rng));
        if (v0 == 1) continue;
        Point pt = Point::make(v0 * v0, mpq_class(pick(rng), pick(rng)), mpq_class(pick(rng), pick(rng)));
        auto r = ranks_at(B.projectors, pt);
        if (!r) continue;  // not admissible
        ++t;
        if (*r == B.ranks) ++stable;
      }
      note("n=" + std::to_string(n) + " " + name + ": ranks {" + join(ranks) + "} oracle {" + join(interlacing_dims(nu)) +
           "}, chi_contract matched " + std::to_string(matched) + "/" + std::to_string(B.projectors.size()) +
           ", sum " + (id ? "= id" : "!= id") + ", stable at " + std::to_string(stable) + "/3 points");
      ok = ok && rk && id && cc && stable == 3;
    }
  }
  return ok;
}

bool crit8() {
  bool ok = true;
  for (int D = 2; D <= 3; ++D) {
    JobConfig cfg;
    cfg.n = 1;
    cfg.degree = D;
    auto r = run_job("bundle", cfg).report;
    bool inv = r.value("iota_inverse", false);
    std::string line = "D=" + std::to_string(D) + ": iota inverse " + (inv ? "yes" : "no") + " (" +
                       std::to_string(r.value("iota_samples", 0)) + " samples)";
    ok = ok && inv;
    for (const auto& c : r["components"]) {
      bool lemma = c.value("two_projectors", false), dims = c.value("dims_match", false);
      std::vector<long> q = c["invariant_dims"], cl = c["classical_dims"];
      std::vector<int> qi(q.begin(), q.end()), ci(cl.begin(), cl.end());
      line += "; fiber " + join(c["k_highest_weight"].get<std::vector<int>>()) + ": lemma " + (lemma ? "yes" : "no") +
              ", dims {" + join(qi) + "} vs {" + join(ci) + "}";
      ok = ok && lemma && dims && c.value("fiber_rank", 0) == 1;
    }
    ok = ok && r["components"].size() == 2;
    note(line);
  }
  return ok;
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
  status = pclose(p);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return {};
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

bool crit9(const std::string& cli, const std::string& golden) {
  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"selftest", "selftest"},
      {"decompose_n2_e1", "decompose --n 2 --hw e1 --trunc 3"},
      {"extremal_n1_e1_zq-1", "extremal-det --n 1 --hw e1 --spec z=q^-1"},
      {"re_check_n2", "re-check --n 2"},
      {"q_matrix_n1", "q-matrix --n 1 --trunc 4"},
      {"b_decompose_n2_adjoint", "b-decompose --n 2 --module adjoint"},
      {"bundle_n1_d3", "bundle --n 1 --degree 3"},
  };
  bool ok = true;
  for (const auto& [name, args] : jobs) {
    std::string text;
    bool same = true;
    int first_status = 0;
    if (!cli.empty()) {
      for (int threads : {1, 1, 3}) {
        int st = 0;
        std::string out = run_capture(cli + " " + args + " --threads " + std::to_string(threads), st);
        if (text.empty()) {
          text = out;
          first_status = st;
        } else if (out != text || st != first_status) {
          same = false;
        }
      }
    }
    // in-process runs with different thread counts
    std::istringstream is(args);
    std::string sub;
    is >> sub;
    JobConfig cfg;
    std::string flag;
    while (is >> flag) {
      std::string v;
      is >> v;
      if (flag == "--n") cfg.n = std::stoi(v);
      else if (flag == "--hw") cfg.hw = v;
      else if (flag == "--trunc") cfg.trunc = std::stoi(v);
      else if (flag == "--degree") cfg.degree = std::stoi(v);
      else if (flag == "--spec") cfg.spec = v;
      else if (flag == "--module") cfg.module = v;
    }
    std::string a = dump_report(run_job(sub, cfg).report);
    cfg.threads = 4;
    std::string b = dump_report(run_job(sub, cfg).report);
    same = same && a == b && (text.empty() || text == a);
    std::string gold = golden.empty() ? std::string() : read_file(golden + "/" + name + ".json");
    bool gold_ok = gold.empty() || gold == a;
    note(name + ": " + (same ? "byte-identical" : "DIFFERS") + (cli.empty() ? " (in-process only)" : "") +
         (gold.empty() ? ", no golden" : (gold_ok ? ", golden match" : ", golden MISMATCH")));
    ok = ok && same && gold_ok;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "", golden = argc > 2 ? argv[2] : "";
  struct Crit {
    int id;
    std::string title;
    std::function<bool()> fn;
  };
  std::vector<Crit> crits = {
      {1, "relations on the base module, n <= 3, trunc 5, guard 2", crit1},
      {2, "extremal twist: direct vs product, det factors vs phi enumeration", crit2},
      {3, "l-exponent law", crit3},
      {4, "complete-reducibility boundary, n = 1, nu = 2e1, z = q^k", crit4},
      {5, "character identities, n <= 2, natural and adjoint, d = 3", crit5},
      {6, "reflection equation: A, randomized violations, Q-matrix", crit6},
      {7, "coideal decomposition vs branching, chi_contract, stability", crit7},
      {8, "bundle checks, n = 1, D <= 3", crit8},
      {9, "determinism across runs and thread counts", [&] { return crit9(cli, golden); }},
  };
  int failed = 0;
  for (const auto& c : crits) {
    details.clear();
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string err;
    try {
      ok = c.fn();
    } catch (const std::exception& e) {
      err = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream ts;
    ts.precision(2);
    ts << std::fixed << secs;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << ts.str() << " s)\n";
    for (const auto& d : details) std::cout << "    " << d << "\n";
    if (!err.empty()) std::cout << "    error: " << err << "\n";
    if (!ok) ++failed;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << (9 - failed) << "/9\n";
  return failed ? 1 : 0;
}
