#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qpn/jobs.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum projective space computations"};
  app.require_subcommand(1);
  qpn::JobConfig cfg;
  std::string out;
  auto common = [&](CLI::App* s) {
    s->add_option("--n", cfg.n, "rank n of gl(n+1)");
    s->add_option("--hw", cfg.hw, "highest weight, e.g. e1+2e2 or 2,1,0");
    s->add_option("--trunc", cfg.trunc, "truncation degree of the base module");
    s->add_option("--degree", cfg.degree, "degree budget for function-algebra words");
    s->add_option("--spec", cfg.spec, "specialization q=..,y1=..,y2=..,z=..,c=..");
    s->add_option("--module", cfg.module, "module descriptor: trivial, natural, dual, adjoint, findim:<weight>");
    s->add_option("--component", cfg.component, "bundle: component index (default all)");
    s->add_option("--threads", cfg.threads, "worker threads");
    s->add_option("--out", out, "write the JSON report here instead of stdout");
  };
  const char* subs[][2] = {{"decompose", "decompose V (x) M into parabolic Verma modules"},
                           {"extremal-det", "extremal twist factors and the reducibility verdict"},
                           {"re-check", "reflection equation for A"},
                           {"q-matrix", "Q-matrix on the truncated base module"},
                           {"b-decompose", "coideal submodules of a finite-dimensional module"},
                           {"bundle", "sections of the quantum bundles (T (x) X)^B"},
                           {"selftest", "property suite at n = 1"}};
  for (auto& s : subs) common(app.add_subcommand(s[0], s[1]));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  std::string sub = app.get_subcommands().front()->get_name();
  qpn::JobResult res;
  try {
    res = qpn::run_job(sub, cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "qpn " << sub << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    res.report = {{"schema", 1}, {"subcommand", sub}, {"error", e.what()}};
    res.exit_code = 2;
  }
  std::string text = qpn::dump_report(res.report);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "qpn: cannot write " << out << "\n";
      return 1;
    }
    f << text;
  }
  return res.exit_code;
}
