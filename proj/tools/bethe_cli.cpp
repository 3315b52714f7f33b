// bethe_cli: batch front-end.
// verbs: catalog, verify, spectrum, solve, checkstate, tables
// exit codes: 0 pass, 1 verification failure, 2 usage/config error,
//             3 numerical non-convergence

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "bethe/bae.hpp"
#include "bethe/chain.hpp"
#include "bethe/io.hpp"
#include "bethe/states.hpp"
#include "bethe/ybe.hpp"

using namespace bethe;

namespace {

int thread_cap() {
  const char* env = std::getenv("BETHE_FORGE_THREADS");
  if (!env) return 0;
  int n = std::atoi(env);
  return n > 0 ? n : 0;
}

std::optional<CaseId> case_from_name(const std::string& s) {
  for (int i = 0; i <= (int)CaseId::appA_O2; ++i)
    if (s == case_name((CaseId)i)) return (CaseId)i;
  return std::nullopt;
}

BoundaryModel model_from_config(const RunConfig& cfg) {
  auto id = case_from_name(cfg.get("case"));
  if (!id) throw std::invalid_argument("unknown or missing --case");
  int N = cfg.geti("N", 0);
  if (N <= 0) throw std::invalid_argument("--N required (Dynkin rank)");
  int M = cfg.geti("M", 0);
  double c = cfg.getd("c", 0.0);
  return make_model(*id, N, M, cx(c));
}

void emit(const RunConfig& cfg, const std::string& payload) {
  std::string out = cfg.get("out");
  if (out.empty()) {
    std::cout << payload << "\n";
  } else {
    std::ofstream f(out, std::ios::binary);
    f << payload << "\n";
  }
}

int cmd_catalog(const RunConfig& cfg) {
  const bool csv = cfg.get("format", "json") == "csv";
  std::ostringstream os;
  if (csv) {
    os << "case,family,site_dim,residual_algebra,rank_preserving,free_params\n";
    for (const auto& m : catalog())
      os << case_name(m.case_id) << "," << m.family.name() << "," << m.family.n
         << "," << m.residual_algebra << "," << (m.rank_preserving ? 1 : 0) << ","
         << m.free_param_count << "\n";
    emit(cfg, os.str());
    return 0;
  }
  JsonWriter w;
  w.begin_arr();
  for (const auto& m : catalog()) {
    w.begin_obj();
    w.key("case"); w.value(case_name(m.case_id));
    w.key("family"); w.value(m.family.name());
    w.key("site_dim"); w.value(m.family.n);
    w.key("residual_algebra"); w.value(m.residual_algebra);
    w.key("rank_preserving"); w.value_bool(m.rank_preserving);
    w.key("free_params"); w.value(m.free_param_count);
    w.end_obj();
  }
  w.end_arr();
  emit(cfg, w.str());
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  BoundaryModel model = model_from_config(cfg);
  if (cfg.geti("debug-corrupt", 0)) {
    // deliberate corruption path for pipeline testing
    auto Kbad = [&](cx u) {
      Mat K = model.K(u);
      K(0, 0) *= 1.0 + 1e-6;
      return K;
    };
    auto rep = check_bybe(model.family, Kbad, cx(0.41, 0.13), cx(1.13, -0.27));
    emit(cfg, to_json(rep));
    return rep.max_relative_residual < cfg.getd("tol", 1e-10) ? 0 : 1;
  }
  double tol = cfg.getd("tol", 1e-10);
  unsigned seed = (unsigned)cfg.geti("seed", (int)kDefaultYbeSeed);

  auto ybe = ybe_annulus_report(model.family, 20, seed);
  auto bybe = bybe_annulus_report(model, 20, seed);
  MixedModel mod(model.family.n);
  auto kr = [&](cx u) { return mod.to_mixed(model.K_normalized(u)); };
  int L = cfg.geti("L", 2);
  auto rmrm = rmrm_check(mod, kr, L, cx(0.37), cx(1.72));
  auto trt = trt_check(mod, L, cx(0.37));

  std::ostringstream os;
  os << "[" << to_json(ybe) << "," << to_json(bybe) << "," << to_json(rmrm) << ","
     << to_json(trt) << "]";
  emit(cfg, os.str());
  double worst = std::max({ybe.max_relative_residual, bybe.max_relative_residual,
                           rmrm.max_relative_residual, trt.max_relative_residual});
  return worst < tol ? 0 : 1;
}

int cmd_spectrum(const RunConfig& cfg) {
  BoundaryModel model = model_from_config(cfg);
  int L = cfg.geti("L", 2);
  double theta = cfg.getd("theta", 0.63);
  SpinChain ch = make_chain(model, L);
  ChainOperator d = double_row_transfer(ch, cx(theta));
  if (!d.dense)
    throw std::invalid_argument("spectrum: dimension exceeds the dense guard");
  Spectrum s = dense_spectrum(d);
  if (cfg.get("format", "json") == "csv") {
    std::ostringstream os;
    os << "re,im\n";
    for (cx e : s.eigenvalues) os << fmt17(e.real()) << "," << fmt17(e.imag()) << "\n";
    emit(cfg, os.str());
  } else {
    JsonWriter w;
    w.begin_obj();
    w.key("case"); w.value(case_name(model.case_id));
    w.key("L"); w.value(L);
    w.key("theta"); w.value(theta);
    w.key("eigenvalues"); w.begin_arr();
    for (cx e : s.eigenvalues) w.complex_value(e);
    w.end_arr();
    w.end_obj();
    emit(cfg, w.str());
  }
  return 0;
}

std::vector<std::vector<cx>> read_seed_file(const std::string& path, int nfam) {
  // one root per line: "family re im"
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("seed file not found: " + path);
  std::vector<std::vector<cx>> seeds(nfam);
  int fam;
  double re, im;
  while (f >> fam >> re >> im) {
    if (fam < 1 || fam > nfam) throw std::invalid_argument("seed family out of range");
    seeds[fam - 1].push_back(cx(re, im));
  }
  return seeds;
}

int cmd_solve(const RunConfig& cfg) {
  BoundaryModel model = model_from_config(cfg);
  int L = cfg.geti("L", 2);
  // magnons: comma-separated per-family counts
  std::vector<int> counts;
  {
    std::istringstream is(cfg.get("magnons", "0"));
    std::string tok;
    while (std::getline(is, tok, ',')) counts.push_back(std::stoi(tok));
  }
  auto sys = build_bae(model, L, counts);
  std::vector<std::vector<cx>> seeds(sys.nfam());
  std::string sf = cfg.get("seed-file");
  if (!sf.empty()) {
    seeds = read_seed_file(sf, sys.nfam());
  } else {
    for (int f = 0; f < sys.nfam(); ++f)
      for (int i = 0; i < counts[f]; ++i)
        seeds[f].push_back(cx(0.05 * (i + 1), 0.45 + 0.5 * i));
  }
  BetheRootSet rs = solve_bae(sys, seeds, cfg.getd("tol", 1e-12));
  dedup_sort(rs.roots);
  emit(cfg, to_json(rs));
  return 0;
}

int cmd_checkstate(const RunConfig& cfg) {
  BoundaryModel model = model_from_config(cfg);
  if (model.family.n != 3)
    throw std::invalid_argument("checkstate: implemented for the O(3) chain");
  int L = cfg.geti("L", 2);
  int m = cfg.geti("magnons", 1);
  auto sys = build_bae(model, L, {m});
  std::vector<std::vector<cx>> seeds(1);
  std::string sf = cfg.get("seed-file");
  if (!sf.empty())
    seeds = read_seed_file(sf, 1);
  else
    for (int i = 0; i < m; ++i) seeds[0].push_back(cx(0.0, 0.45 + i));
  BetheRootSet rs = solve_bae(sys, seeds, cfg.getd("tol", 1e-12));

  MixedModel mod(3);
  auto kr = [&](cx u) { return mod.to_mixed(model.K_normalized(u)); };
  auto kl = [&](cx u) { return mod.to_mixed(model.K_normalized(u).transpose()); };
  cx th(cfg.getd("theta", 0.63), 0.0);
  Mat D = transfer_mixed(mod, th, L, kr, kl);
  BlockOpsCache ops(mod, L, kr);
  std::vector<cx> us;
  for (cx v : rs.roots[0]) us.push_back(v + sys.shifts[0]);
  auto [res, lam] = eigencheck_scalar(us, ops, D);

  JsonWriter w;
  w.begin_obj();
  w.key("roots"); w.begin_arr();
  for (cx v : rs.roots[0]) w.complex_value(v);
  w.end_arr();
  w.key("eigenvalue"); w.complex_value(lam);
  w.key("eigencheck_residual"); w.value(res);
  w.key("formula_eigenvalue");
  w.complex_value(eigenvalue(sys, rs, th));
  w.end_obj();
  emit(cfg, w.str());
  return res < cfg.getd("tol-state", 1e-6) ? 0 : 1;
}

int cmd_tables(const RunConfig& cfg) {
  // re-solve Tables 1-3 from the printed seeds; CSV artifacts, one per table
  struct Spec {
    int no, L, M;
    std::vector<PaperTableRow> rows;
  };
  std::vector<Spec> specs = {{1, 5, 0, table1()}, {2, 4, 1, table2()}, {3, 5, 1, table3()}};
  std::string base = cfg.get("out", "table");
  for (const auto& sp : specs) {
    auto model = make_model(CaseId::appA_MxRest, 1, sp.M);
    auto sys = build_bae(model, sp.L, {4});
    std::ostringstream os;
    os << "row,root,re,im,residual_norm\n";
    for (size_t r = 0; r < sp.rows.size(); ++r) {
      BetheRootSet rs = solve_bae(sys, {sp.rows[r].seeds()});
      dedup_sort(rs.roots);
      for (size_t i = 0; i < rs.roots[0].size(); ++i)
        os << r + 1 << "," << i + 1 << "," << fmt17(rs.roots[0][i].real()) << ","
           << fmt17(rs.roots[0][i].imag()) << "," << fmt17(rs.residual_norm) << "\n";
    }
    std::ofstream f(base + std::to_string(sp.no) + ".csv", std::ios::binary);
    f << os.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"open-chain Bethe Ansatz laboratory"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::map<std::string, std::string> cli_kv;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value config file");
    for (const char* k : {"family", "case", "N", "M", "c", "L", "magnons", "theta",
                          "seed-file", "tol", "out", "format", "seed", "tol-state",
                          "debug-corrupt"}) {
      sub->add_option_function<std::string>(
          std::string("--") + k, [&cfg, k](const std::string& v) { cfg.kv[k] = v; });
    }
  };
  for (const char* verb : {"catalog", "verify", "spectrum", "solve", "checkstate", "tables"})
    add_common(app.add_subcommand(verb));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  (void)thread_cap();  // single-threaded kernels honor the cap trivially
  std::string fmt = cfg.get("format", "json");
  if (fmt != "json" && fmt != "csv") {
    std::cerr << "unknown --format " << fmt << "\n";
    return 2;
  }

  try {
    if (!config_path.empty()) parse_config_file(config_path, cfg);
    std::string verb = app.get_subcommands().front()->get_name();
    cfg.command = verb;
    if (verb == "catalog") return cmd_catalog(cfg);
    if (verb == "verify") return cmd_verify(cfg);
    if (verb == "spectrum") return cmd_spectrum(cfg);
    if (verb == "solve") return cmd_solve(cfg);
    if (verb == "checkstate") return cmd_checkstate(cfg);
    if (verb == "tables") return cmd_tables(cfg);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    std::cerr << msg << "\n";
    return msg.find("converge") != std::string::npos ? 3 : 2;
  }
}
