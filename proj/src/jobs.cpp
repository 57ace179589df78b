#include "qpn/jobs.hpp"

#include <algorithm>
#include <set>

#include "qpn/funcalg.hpp"
#include "qpn/parallel.hpp"

namespace qpn {

using nlohmann::json;

namespace {

mpq_class parse_rational(const std::string& s) {
  try {
    mpq_class r(s);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw UsageError("bad rational '" + s + "'");
  }
}

json mat_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
    rows.push_back(r);
  }
  return rows;
}

std::string bracket(const Exponent& e) { return "[" + bracket_arg_str(e) + "]_q"; }

Mat re_matrix_for(int n, const Specialization& sp) {
  ScalarK c = sp.c ? ScalarK(*sp.c) : ScalarK(1);
  return natural_basis(re_matrix(n, c).A);
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> branch_dims(const WeightModule& V) {
  std::vector<int> d;
  for (const auto& c : branch_k(V)) d.push_back(c.dim);
  return sorted(d);
}

WeightModule hw_module(const JobConfig& cfg) {
  Weight nu = parse_weight(cfg.n, cfg.hw);
  return build_findim(cfg.n, nu);
}

// ---- subcommands ----

JobResult job_decompose(const JobConfig& cfg, const Specialization& sp) {
  JobResult res;
  WeightModule V = hw_module(cfg);
  json& r = res.report;
  r["module"] = V.name;
  r["trunc"] = cfg.trunc;
  std::optional<Point> pt;
  if (sp.has_point) pt = sp.pt;
  try {
    auto D = decompose(V, cfg.trunc, pt);
    json comps = json::array();
    for (const auto& c : D.comps) {
      json x;
      x["highest_weight"] = c.hw.str();
      x["k_highest_weight"] = c.khw;
      x["character_ok"] = c.ch == c.expected;
      x["dimension_to_depth"] = c.ch.total();
      comps.push_back(x);
    }
    r["components"] = comps;
    r["count"] = D.comps.size();
    r["characters_ok"] = D.characters_ok;
    r["branching_dims"] = branch_dims(V);
    r["completely_reducible"] = true;
    res.exit_code = D.characters_ok ? 0 : 2;
  } catch (const NotCompletelyReducible& e) {
    r["completely_reducible"] = false;
    r["error"] = e.what();
    res.exit_code = 2;
  }
  return res;
}

JobResult job_extremal(const JobConfig& cfg, const Specialization& sp) {
  JobResult res;
  WeightModule V = hw_module(cfg);
  auto rep = theta(V);
  auto factors = det_theta(rep);
  json& r = res.report;
  r["module"] = V.name;
  json blocks = json::array();
  bool units = true;
  for (const auto& b : rep.blocks) {
    json x;
    x["m"] = b.m;
    x["theta_direct"] = b.direct.str();
    x["theta_product"] = b.product.str();
    bool unit = !b.product.is_zero() && (b.direct / b.product).is_unit();
    units = units && unit;
    x["ratio_is_unit"] = unit;
    blocks.push_back(x);
  }
  r["blocks"] = blocks;
  r["routes_agree"] = units;
  json fs = json::array();
  for (const auto& f : factors) {
    json x;
    x["m"] = f.m;
    x["root"] = {f.root.first, f.root.second};
    x["k"] = f.k;
    x["factor"] = bracket(f.arg);
    fs.push_back(x);
  }
  r["factors"] = fs;
  res.exit_code = units ? 0 : 2;
  if (sp.has_point) {
    std::set<std::string> vanish;
    for (const auto& f : factors)
      if (specialize(qbracket(f.arg), sp.pt) == 0) vanish.insert(bracket(f.arg));
    bool ok = verdict(factors, sp.pt);
    r["verdict"] = ok;
    r["vanishing"] = std::vector<std::string>(vanish.begin(), vanish.end());
    if (!ok) res.exit_code = 2;
  }
  return res;
}

JobResult job_re_check(const JobConfig& cfg, const Specialization& sp) {
  JobResult res;
  ScalarK c = sp.c ? ScalarK(*sp.c) : ScalarK(1);
  auto R = re_matrix(cfg.n, c);
  Mat A = natural_basis(R.A);
  bool holds = re_check(cfg.n, A);
  json& r = res.report;
  r["n"] = cfg.n;
  r["c"] = R.c.str();
  r["d"] = R.d.str();
  r["A_displayed"] = mat_json(R.A);
  r["A_natural_basis"] = mat_json(A);
  r["holds"] = holds;
  r["holds_displayed_order"] = re_check(cfg.n, R.A);
  res.exit_code = holds ? 0 : 2;
  return res;
}

JobResult job_q_matrix(const JobConfig& cfg, const Specialization&) {
  JobResult res;
  WeightModule M = base_module(cfg.n, cfg.trunc);
  QMatrix Q = q_matrix(M);
  bool comm = q_commutes(M, Q, 2), re = q_reflection_equation(M, Q, 2);
  json& r = res.report;
  r["n"] = cfg.n;
  r["trunc"] = cfg.trunc;
  r["guard"] = 2;
  r["module_dim"] = M.dim();
  json nnz = json::array();
  for (const auto& row : Q.blocks) {
    json x = json::array();
    for (const auto& b : row) x.push_back(b.nnz());
    nnz.push_back(x);
  }
  r["block_nnz"] = nnz;
  r["commutes"] = comm;
  r["reflection_equation"] = re;
  res.exit_code = comm && re ? 0 : 2;
  return res;
}

JobResult job_b_decompose(const JobConfig& cfg, const Specialization& sp) {
  JobResult res;
  WeightModule V = module_from_descriptor(cfg.n, cfg.module);
  Mat A = re_matrix_for(cfg.n, sp);
  auto B = b_submodules(V, A);
  json& r = res.report;
  r["module"] = cfg.module;
  r["commutant_dim"] = B.commutant_dim;
  r["ranks"] = B.ranks;
  json ev = json::array();
  for (const auto& e : B.eigenvalues) ev.push_back(e.str());
  r["eigenvalues"] = ev;
  auto oracle = branch_dims(V);
  r["branching_dims"] = oracle;
  bool ranks_ok = sorted(B.ranks) == oracle;
  Mat sum(V.dim(), V.dim());
  for (const auto& P : B.projectors) sum = sum + P;
  bool sum_ok = sum == Mat::identity(V.dim());
  auto D = decompose(V, std::max(cfg.trunc, 4));
  bool contract_ok = D.comps.size() == B.projectors.size();
  for (size_t i = 0; i < D.comps.size() && contract_ok; ++i) {
    Mat P = chi_contract(D, invariant_projector(D, int(i)), A).P;
    contract_ok = std::find(B.projectors.begin(), B.projectors.end(), P) != B.projectors.end();
  }
  r["ranks_match_branching"] = ranks_ok;
  r["sum_is_identity"] = sum_ok;
  r["chi_contract_agrees"] = contract_ok;
  if (sp.has_point) {
    auto ra = ranks_at(B.projectors, sp.pt);
    if (ra) r["ranks_at_point"] = *ra;
    else r["ranks_at_point"] = nullptr;
  }
  res.exit_code = ranks_ok && sum_ok && contract_ok ? 0 : 2;
  return res;
}

JobResult job_bundle(const JobConfig& cfg, const Specialization& sp) {
  JobResult res;
  int n = cfg.n;
  if (n > 2 || (n == 2 && cfg.degree > 3)) throw UsageError("bundle supports n = 1, or n = 2 with degree <= 3");
  if (cfg.degree < 2) throw UsageError("bundle needs degree >= 2");
  WeightModule V = module_from_descriptor(n, cfg.module);
  Mat A = re_matrix_for(n, sp);
  TModel T(n, cfg.degree);
  T.build_table();
  json& r = res.report;
  r["n"] = n;
  r["module"] = cfg.module;
  r["degree"] = cfg.degree;
  bool ok = true;
  // iota o iota_bar on every coefficient of degree <= degree - 2 against each basis vector
  bool natural = cfg.module == "natural";
  if (natural) {
    long samples = 0;
    bool inv_ok = true;
    for (const auto& w : T.coefficients(cfg.degree - 2))
      for (int i = 0; i <= n; ++i) {
        TV x(n + 1, TElement(n, ScalarK()));
        x[i] = TElement::word(n, w);
        inv_ok = inv_ok && tv_equal(T, iota(iota_bar(x)), x) && tv_equal(T, iota_bar(iota(x)), x);
        ++samples;
      }
    r["iota_inverse"] = inv_ok;
    r["iota_samples"] = samples;
    ok = ok && inv_ok;
  }
  auto D = decompose(V, std::max(cfg.trunc, 4));
  json comps = json::array();
  for (size_t c = 0; c < D.comps.size(); ++c) {
    if (cfg.component >= 0 && int(c) != cfg.component) continue;
    json x;
    auto C = chi_contract(D, invariant_projector(D, int(c)), A, 1);
    x["index"] = c;
    x["k_highest_weight"] = D.comps[c].khw;
    x["projector"] = mat_json(C.P);
    if (natural) {
      auto chk = check_two_projectors(T, C.P, C, A);
      x["two_projectors"] = chk.holds;
      x["two_projectors_counit"] = chk.counit;
      ok = ok && chk.holds && chk.counit;
    }
    Mat X = row_space(C.P);
    auto q = b_invariant_dims(T, V, X, A);
    auto cl = classical_section_dims(n, D.comps[c].khw, cfg.degree);
    x["fiber_rank"] = X.rows();
    x["invariant_dims"] = q;
    x["classical_dims"] = cl;
    x["dims_match"] = q == cl;
    ok = ok && q == cl;
    comps.push_back(x);
  }
  if (cfg.component >= int(D.comps.size())) throw UsageError("component index out of range");
  r["components"] = comps;
  r["ok"] = ok;
  res.exit_code = ok ? 0 : 2;
  return res;
}

JobResult job_selftest(const JobConfig&, const Specialization&) {
  JobResult res;
  json& r = res.report;
  const int n = 1;
  bool all = true;
  auto record = [&](const std::string& k, bool v) {
    r["checks"][k] = v;
    all = all && v;
  };
  record("relations_base_trunc5", check_relations(base_module(n, 5), 2).violations == 0);
  bool units = true, law = true;
  for (int a = 0; a <= 2; ++a) {
    auto rep = theta(build_findim(n, Weight::integral({a, 0})));
    for (const auto& b : rep.blocks) {
      units = units && !b.product.is_zero() && (b.direct / b.product).is_unit();
      for (const auto& [ij, l] : b.l) law = law && l == b.m[ij.second - 2];
    }
  }
  record("theta_routes_agree", units);
  record("l_exponent_law", law);
  {
    auto f = det_theta(natural_module(n));
    Point bad = Point::make(mpq_class(9, 4), mpq_class(4, 9), 1), good = Point::make(mpq_class(9, 4), 2, 1);
    record("verdict_boundary", !verdict(f, bad) && verdict(f, good));
  }
  {
    auto D = decompose(natural_module(n), 3);
    record("decompose_natural", D.comps.size() == 2 && D.characters_ok);
    auto D2 = decompose(build_findim(n, Weight::integral({2, 0})), 3);
    record("decompose_sym2", D2.comps.size() == 3 && D2.characters_ok);
  }
  Mat A = natural_basis(re_matrix(n).A);
  record("reflection_equation", re_check(n, A));
  {
    WeightModule M = base_module(n, 4);
    QMatrix Q = q_matrix(M);
    record("q_matrix_commutes", q_commutes(M, Q, 2));
    record("q_matrix_reflection_equation", q_reflection_equation(M, Q, 2));
  }
  for (const char* d : {"natural", "findim:2,0"}) {
    WeightModule V = module_from_descriptor(n, d);
    auto B = b_submodules(V, A);
    record(std::string("b_submodules_") + d, sorted(B.ranks) == branch_dims(V));
  }
  {
    JobConfig bc;
    bc.n = n;
    bc.degree = 3;
    auto b = job_bundle(bc, Specialization{});
    record("bundle_natural_degree3", b.exit_code == 0);
  }
  r["n"] = n;
  r["ok"] = all;
  res.exit_code = all ? 0 : 2;
  return res;
}

}  // namespace

Specialization parse_spec(const std::string& s) {
  Specialization sp;
  if (s.empty()) return sp;
  mpq_class q0(9, 4), y2(1);
  std::optional<mpq_class> y1;
  std::optional<std::string> z;
  bool point = false;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    std::string item = s.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bad --spec item '" + item + "'");
    std::string k = item.substr(0, eq), v = item.substr(eq + 1);
    if (k != "c") point = true;
    if (k == "q") q0 = parse_rational(v);
    else if (k == "y1") y1 = parse_rational(v);
    else if (k == "y2") y2 = parse_rational(v);
    else if (k == "z") z = v;
    else if (k == "c") sp.c = parse_rational(v);
    else throw UsageError("unknown --spec key '" + k + "'");
  }
  if (q0 == 0 || q0 == 1 || q0 == -1) throw UsageError("q must avoid 0 and +-1 (quantum integers have q - q^-1 in the denominator)");
  if (y2 == 0) throw UsageError("y2 must be nonzero");
  if (sp.c && *sp.c == 0) throw UsageError("c must be nonzero");
  if (z) {
    if (y1) throw UsageError("give either y1 or z, not both");
    mpq_class zv;
    if (z->rfind("q^", 0) == 0) {
      int k;
      try {
        k = std::stoi(z->substr(2));
      } catch (const std::exception&) {
        throw UsageError("bad exponent in z=" + *z);
      }
      zv = 1;
      for (int i = 0; i < std::abs(k); ++i) zv *= q0;
      if (k < 0) zv = 1 / zv;
    } else if (*z == "q") {
      zv = q0;
    } else {
      zv = parse_rational(*z);
    }
    y1 = zv * y2;
  }
  if (y1 && *y1 == 0) throw UsageError("y1 must be nonzero");
  sp.has_point = point;
  sp.pt = Point::make(q0, y1.value_or(mpq_class(7, 5)), y2);
  return sp;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

JobResult run_job(const std::string& sub, const JobConfig& cfg) {
  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  if (cfg.trunc < 2) throw UsageError("--trunc must be >= 2");
  if (cfg.threads < 1) throw UsageError("--threads must be >= 1");
  set_default_threads(cfg.threads);
  Specialization sp = parse_spec(cfg.spec);
  JobResult res;
  if (sub == "decompose") res = job_decompose(cfg, sp);
  else if (sub == "extremal-det") res = job_extremal(cfg, sp);
  else if (sub == "re-check") res = job_re_check(cfg, sp);
  else if (sub == "q-matrix") res = job_q_matrix(cfg, sp);
  else if (sub == "b-decompose") res = job_b_decompose(cfg, sp);
  else if (sub == "bundle") res = job_bundle(cfg, sp);
  else if (sub == "selftest") res = job_selftest(cfg, sp);
  else throw UsageError("unknown subcommand '" + sub + "'");
  res.report["schema"] = 1;
  res.report["subcommand"] = sub;
  if (!cfg.spec.empty()) res.report["spec"] = cfg.spec;
  return res;
}

}  // namespace qpn
