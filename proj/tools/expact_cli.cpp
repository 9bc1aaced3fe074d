// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0
//
// Batch front end: computes Z = e^{tA} B for sparse negative-definite A via
// rational approximation and shifted block Krylov solvers, runs benchmark
// suites, and executes the built-in identity checks.

#include <chrono>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expact/expact.hpp"

using json = nlohmann::json;
using namespace expact;
using cplx = std::complex<double>;

namespace {

constexpr int kStatsSchemaVersion = 1;
constexpr int kOracleCap = 2000;

struct RunConfig {
  std::string matrix_path;
  std::string generator;
  json gen_args = json::object();
  std::string rhs_path;
  int p = 0;
  std::uint64_t seed = 0;
  bool rhs_random = false;
  double t = 1.0;
  int nu = 14;
  int m = 30;
  int k = 30;
  double tol = 1e-8;
  std::string mode = "psbfom";
  std::string backend = "sparse-lu";
  bool oracle = false;
  std::string out_path;
  std::string stats_path;
};

struct Problem {
  CsrMatrix csr;
  std::shared_ptr<ToeplitzOperator> toeplitz;  // set for Toeplitz generators
};

Problem build_problem(const RunConfig& cfg) {
  Problem prob;
  if (!cfg.matrix_path.empty()) {
    prob.csr = read_matrix_market_csr(cfg.matrix_path);
  } else if (cfg.generator == "poisson2d") {
    prob.csr = poisson2d(cfg.gen_args.value("k", 31));
  } else if (cfg.generator == "fde_onesided") {
    prob.csr = fde_onesided(cfg.gen_args.value("n", 200),
                            cfg.gen_args.value("beta", 1.7));
  } else if (cfg.generator == "fde_twosided") {
    const int n = cfg.gen_args.value("n", 512);
    const double beta = cfg.gen_args.value("beta", 1.8);
    const double d1 = cfg.gen_args.value("d1", 1.0);
    const double d2 = cfg.gen_args.value("d2", 3.0);
    prob.toeplitz = std::make_shared<ToeplitzOperator>(
        fde_twosided_toeplitz(n, beta, d1, d2).scaled(cfg.t));
    prob.csr = fde_twosided_csr(n, beta, d1, d2);
  } else {
    throw ParameterError("unknown generator '" + cfg.generator +
                         "' (available: poisson2d, fde_onesided, "
                         "fde_twosided)");
  }
  if (cfg.t == 0.0)
    throw ParameterError(
        "t = 0 is refused: the scaled operator would be singular");
  prob.csr = prob.csr.scaled(cfg.t);
  return prob;
}

Eigen::MatrixXd build_rhs(const RunConfig& cfg, int n) {
  if (!cfg.rhs_path.empty()) {
    Eigen::MatrixXd B = read_matrix_market_dense(cfg.rhs_path);
    if (B.rows() != n)
      throw ParameterError("rhs has " + std::to_string(B.rows()) +
                           " rows, operator has dimension " +
                           std::to_string(n));
    return B;
  }
  if (!cfg.rhs_random)
    throw ParameterError("one of --rhs or --rhs-random is required");
  if (cfg.p < 1) throw ParameterError("--rhs-random needs p >= 1");
  return randn(n, cfg.p, cfg.seed);
}

json config_to_json(const RunConfig& cfg) {
  return json{{"matrix", cfg.matrix_path},
              {"generator", cfg.generator},
              {"gen_args", cfg.gen_args},
              {"rhs", cfg.rhs_path},
              {"rhs_random", cfg.rhs_random},
              {"p", cfg.p},
              {"seed", cfg.seed},
              {"t", cfg.t},
              {"nu", cfg.nu},
              {"m", cfg.m},
              {"k", cfg.k},
              {"tol", cfg.tol},
              {"mode", cfg.mode},
              {"backend", cfg.backend},
              {"oracle", cfg.oracle}};
}

struct RunOutcome {
  bool converged = false;
  RunStats stats;
  Eigen::MatrixXd Z;
  long fft_count = 0;
  double wall_time_s = 0.0;
  double oracle_error = -1.0;  // negative: not computed
};

RunOutcome execute_run(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Problem prob = build_problem(cfg);
  const int n = prob.csr.n;
  const Eigen::MatrixXd B = build_rhs(cfg, n);
  const CfRational cf =
      cfg.nu == 14 ? cf_default14() : cf_poles_residues(cfg.nu);

  if (cfg.backend == "toeplitz-gsf" && !prob.toeplitz)
    throw ParameterError(
        "backend toeplitz-gsf requires the fde_twosided generator");
  if (cfg.oracle && n > kOracleCap)
    throw ParameterError("oracle refused: n = " + std::to_string(n) +
                         " exceeds the dense cap of " +
                         std::to_string(kOracleCap));

  RunOutcome out;
  auto record = [&](const ExpmActionResult& r, bool converged) {
    out.converged = converged;
    out.stats = r.stats;
    out.Z = r.Z;
  };
  try {
    if (cfg.mode == "psbfom") {
      if (cfg.backend == "toeplitz-gsf") {
        prob.toeplitz->compute_gsf_generators();
        ToeplitzGsfInverseOperator inv(prob.toeplitz);
        record(expm_action_psbfom(inv, B, cf, cfg.m, cfg.k, cfg.tol), true);
        out.fft_count = prob.toeplitz->fft_count();
      } else {
        InverseOperator inv = as_inverse_operator(sparse_lu(prob.csr));
        record(expm_action_psbfom(inv, B, cf, cfg.m, cfg.k, cfg.tol), true);
      }
    } else if (cfg.mode == "sbfom") {
      if (cfg.backend == "toeplitz-gsf") {
        ToeplitzMatvecOperator fwd(prob.toeplitz);
        record(expm_action_sbfom(fwd, B, cf, cfg.m, cfg.k, cfg.tol), true);
        out.fft_count = prob.toeplitz->fft_count();
      } else {
        CsrOperator A(prob.csr);
        record(expm_action_sbfom(A, B, cf, cfg.m, cfg.k, cfg.tol), true);
      }
    } else {
      throw ParameterError("mode must be sbfom or psbfom");
    }
  } catch (const ConvergenceError& e) {
    out.converged = false;
    out.stats = e.stats();
  }

  if (cfg.oracle && out.converged) {
    const Eigen::MatrixXd dense = prob.toeplitz && cfg.backend == "toeplitz-gsf"
                                      ? prob.toeplitz->to_dense()
                                      : prob.csr.to_dense();
    const Eigen::MatrixXd Zref = dense_expm(dense, 1.0) * B;
    out.oracle_error = (out.Z - Zref).norm() / Zref.norm();
  }
  out.wall_time_s = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  return out;
}

json outcome_to_json(const RunConfig& cfg, const RunOutcome& out) {
  json j{{"schema_version", kStatsSchemaVersion},
         {"config", config_to_json(cfg)},
         {"converged", out.converged},
         {"cycles", out.stats.cycles},
         {"operator_applies", out.stats.operator_applies},
         {"inverse_applies", out.stats.inverse_applies},
         {"fft_count", out.fft_count},
         {"residual_history", out.stats.residual_history},
         {"wall_time_s", out.wall_time_s}};
  if (out.oracle_error >= 0.0) j["oracle_error"] = out.oracle_error;
  return j;
}

int cmd_run(const RunConfig& cfg) {
  const RunOutcome out = execute_run(cfg);
  if (!cfg.out_path.empty() && out.converged)
    write_matrix_market(cfg.out_path, out.Z);
  const json stats = outcome_to_json(cfg, out);
  if (!cfg.stats_path.empty()) {
    std::ofstream f(cfg.stats_path);
    f << stats.dump(2) << "\n";
  } else {
    std::cout << stats.dump(2) << "\n";
  }
  if (!out.converged) {
    std::cerr << "solver did not converge within the cycle budget\n";
    return 1;
  }
  return 0;
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  cfg.matrix_path = j.value("matrix", "");
  cfg.generator = j.value("generator", "");
  cfg.gen_args = j.value("gen_args", json::object());
  cfg.rhs_path = j.value("rhs", "");
  if (j.contains("p")) {
    cfg.rhs_random = true;
    cfg.p = j["p"].get<int>();
    cfg.seed = j.value("seed", std::uint64_t{0});
  }
  cfg.t = j.value("t", 1.0);
  cfg.nu = j.value("nu", 14);
  cfg.m = j.value("m", 30);
  cfg.k = j.value("k", 30);
  cfg.tol = j.value("tol", 1e-8);
  cfg.mode = j.value("mode", "psbfom");
  cfg.backend = j.value("backend", "sparse-lu");
  cfg.oracle = j.value("oracle", false);
  return cfg;
}

int cmd_bench(const std::string& suite_path) {
  std::ifstream f(suite_path);
  if (!f) {
    std::cerr << "cannot open suite file " << suite_path << "\n";
    return 2;
  }
  json suite = json::parse(f);
  json results = json::array();
  bool all_passed = true;

  std::fprintf(stderr, "%-24s %8s %8s %12s %6s\n", "config", "cycles",
               "applies", "error", "pass");
  for (const json& entry : suite.value("runs", json::array())) {
    const std::string name = entry.value("name", "unnamed");
    json rec{{"name", name}};
    try {
      const RunConfig cfg = config_from_json(entry);
      const RunOutcome out = execute_run(cfg);
      bool pass = out.converged;
      const json expect = entry.value("expect", json::object());
      if (expect.contains("max_error"))
        pass = pass && out.oracle_error >= 0.0 &&
               out.oracle_error <= expect["max_error"].get<double>();
      if (expect.contains("max_cycles"))
        pass = pass && out.stats.cycles <= expect["max_cycles"].get<int>();
      rec["pass"] = pass;
      rec["stats"] = outcome_to_json(cfg, out);
      std::fprintf(stderr, "%-24s %8d %8ld %12.3e %6s\n", name.c_str(),
                   out.stats.cycles,
                   out.stats.operator_applies + out.stats.inverse_applies,
                   out.oracle_error, pass ? "yes" : "NO");
      all_passed = all_passed && pass;
    } catch (const std::exception& e) {
      rec["pass"] = false;
      rec["error"] = e.what();
      std::fprintf(stderr, "%-24s failed: %s\n", name.c_str(), e.what());
      all_passed = false;
    }
    results.push_back(rec);
  }

  const json report{{"schema_version", kStatsSchemaVersion},
                    {"suite", suite_path},
                    {"results", results},
                    {"all_passed", all_passed}};
  std::cout << report.dump(2) << "\n";
  return all_passed ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Built-in identity checks.

json check_cf() {
  const CfRational r = cf_poles_residues(14);
  double worst = 0.0;
  for (int j = 0; j < 2000; ++j) {
    const double x = -std::pow(10.0, -6.0 + 12.0 * j / 1999.0);
    worst = std::max(worst, std::abs(std::exp(x) - eval_cf_real(r, x)));
  }
  double table_gap = 0.0;
  const CfRational& frozen = cf_default14();
  for (int i = 0; i < 14; ++i)
    table_gap = std::max(table_gap, std::abs(r.poles[i] - frozen.poles[i]));
  const bool pass = worst <= 1e-10 && table_gap <= 1e-8;
  return json{{"name", "cf"},
              {"pass", pass},
              {"sup_error", worst},
              {"table_pole_gap", table_gap}};
}

json check_thm41() {
  const ReducedShifts red = conjugate_reduce(cf_default14());
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const int n = 60, p = 2, m = 6;
    const Eigen::MatrixXd A = -2.0 * Eigen::MatrixXd::Identity(n, n) +
                              0.3 * randn(n, n, 100 + trial);
    DenseOperator op(A);
    auto [V1, R0] = qr_block(randn(n, p, 200 + trial));
    ArnoldiState s = arnoldi_init(V1);
    arnoldi_extend(op, s, m);
    const std::vector<cplx> shifts(red.shifts.begin(), red.shifts.begin() + 4);
    std::vector<Eigen::MatrixXcd> rhat(shifts.size(), R0.cast<cplx>());
    worst = std::max(
        worst,
        check_theorem_4_1(Eigen::MatrixXd(s.Hbar), shifts, rhat)
            .max_deviation);
  }
  return json{{"name", "thm41"}, {"pass", worst <= 1e-9},
              {"max_deviation", worst}};
}

json check_thm42() {
  const ReducedShifts red = conjugate_reduce(cf_default14());
  double worst_ratio = 0.0;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    CsrMatrix A = poisson2d(10).scaled(-40.0);
    InverseOperator inv = as_inverse_operator(sparse_lu(A));
    auto [V1, R0] = qr_block(randn(A.n, 1, 300 + trial));
    ArnoldiState s = arnoldi_init(V1);
    arnoldi_extend(inv, s, 8);
    const RitzResidualCheckResult res =
        check_theorem_4_2(inv, s, red.shifts, R0.cast<cplx>());
    worst_ratio =
        std::max(worst_ratio, res.max_deviation / (1e-8 * res.cond_P));
  }
  return json{{"name", "thm42"}, {"pass", worst_ratio <= 1.0},
              {"worst_budget_fraction", worst_ratio}};
}

json check_thm43() {
  const int n = 60;
  const Eigen::MatrixXd R = randn(n, n, 400);
  const Eigen::MatrixXd A =
      R * R.transpose() / n + Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd Ainv =
      A.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd F = randn(n, n, 401);
  Eigen::JacobiSVD<Eigen::MatrixXd> sF(F), sAi(Ainv);
  F *= 1e-8 * sAi.singularValues()(0) / sF.singularValues()(0);
  const auto checks =
      check_theorem_4_3(A, F, cf_default14().poles, randn(n, 2, 402));
  bool pass = true;
  double worst = 0.0;
  int applicable = 0;
  for (const auto& c : checks) {
    if (!c.applicable) continue;
    ++applicable;
    pass = pass && c.observed <= 10.0 * c.bound;
    worst = std::max(worst, c.observed / c.bound);
  }
  pass = pass && applicable > 0;
  return json{{"name", "thm43"}, {"pass", pass},
              {"worst_observed_over_bound", worst},
              {"applicable_shifts", applicable}};
}

int cmd_verify(const std::string& target) {
  json checks = json::array();
  if (target == "cf" || target == "all") checks.push_back(check_cf());
  if (target == "thm41" || target == "all") checks.push_back(check_thm41());
  if (target == "thm42" || target == "all") checks.push_back(check_thm42());
  if (target == "thm43" || target == "all") checks.push_back(check_thm43());
  int failures = 0;
  for (const json& c : checks)
    if (!c["pass"].get<bool>()) ++failures;
  const json report{{"schema_version", kStatsSchemaVersion},
                    {"checks", checks},
                    {"all_passed", failures == 0}};
  std::cout << report.dump(2) << "\n";
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "expact: action of the matrix exponential on block vectors via "
      "rational approximation and shifted block Krylov solvers"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string gen_args_str = "{}";
  std::string rhs_random_str;

  CLI::App* run = app.add_subcommand("run", "compute Z = e^{tA} B");
  run->add_option("--matrix", cfg.matrix_path,
                  "Matrix Market file for A (before scaling by t)");
  run->add_option("--generator", cfg.generator,
                  "built-in operator: poisson2d | fde_onesided | fde_twosided");
  run->add_option("--gen-args", gen_args_str,
                  "generator parameters as JSON, e.g. '{\"k\":31}'");
  run->add_option("--rhs", cfg.rhs_path, "Matrix Market array file for B");
  run->add_option("--rhs-random", rhs_random_str,
                  "random B: 'p,SEED' (standard normal, seeded)");
  run->add_option("--t", cfg.t, "scale: the operator used is t*A");
  run->add_option("--nu", cfg.nu, "rational approximation degree");
  run->add_option("--m", cfg.m, "block Krylov steps per cycle");
  run->add_option("--k", cfg.k, "retained Ritz vectors per restart");
  run->add_option("--tol", cfg.tol, "relative residual tolerance");
  run->add_option("--mode", cfg.mode, "sbfom | psbfom")
      ->check(CLI::IsMember({"sbfom", "psbfom"}));
  run->add_option("--backend", cfg.backend, "sparse-lu | toeplitz-gsf")
      ->check(CLI::IsMember({"sparse-lu", "toeplitz-gsf"}));
  run->add_flag("--oracle", cfg.oracle,
                "compare against the dense exponential (n <= 2000)");
  run->add_option("--out", cfg.out_path, "write Z as a Matrix Market array");
  run->add_option("--stats", cfg.stats_path, "write the stats JSON here");

  std::string suite_path;
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("suite", suite_path, "suite JSON file")->required();

  std::string verify_target;
  CLI::App* verify = app.add_subcommand("verify", "built-in identity checks");
  verify->add_option("target", verify_target, "thm41|thm42|thm43|cf|all")
      ->required()
      ->check(CLI::IsMember({"thm41", "thm42", "thm43", "cf", "all"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (cfg.matrix_path.empty() == cfg.generator.empty())
        throw ParameterError("exactly one of --matrix or --generator required");
      cfg.gen_args = json::parse(gen_args_str);
      if (!rhs_random_str.empty()) {
        if (!cfg.rhs_path.empty())
          throw ParameterError("--rhs and --rhs-random are exclusive");
        const auto comma = rhs_random_str.find(',');
        if (comma == std::string::npos)
          throw ParameterError("--rhs-random expects 'p,SEED'");
        cfg.rhs_random = true;
        cfg.p = std::stoi(rhs_random_str.substr(0, comma));
        cfg.seed = std::stoull(rhs_random_str.substr(comma + 1));
      }
      return cmd_run(cfg);
    }
    if (bench->parsed()) return cmd_bench(suite_path);
    if (verify->parsed()) return cmd_verify(verify_target);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
