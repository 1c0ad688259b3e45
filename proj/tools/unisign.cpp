// Command-line harness for the unitary sign decomposition and the
// divide-and-conquer unitary eigensolver: scalar iteration-count tables,
// per-matrix benchmark runs with backward-error reports, and the built-in
// acceptance selftest.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unisign/eig.hpp"
#include "unisign/gallery.hpp"
#include "unisign/report.hpp"
#include "unisign/selftest.hpp"
#include "unisign/sign.hpp"

namespace {

using unisign::ArcAngle;
using unisign::ComplexMatrix;
using unisign::IterationConfig;
using unisign::RunReport;
using unisign::SignAlg;

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out_path);
  f << text;
}

SignAlg parse_alg(const std::string& s) {
  if (s == "zolo") return SignAlg::zolo;
  if (s == "pade") return SignAlg::pade;
  if (s == "newton") return SignAlg::newton;
  if (s == "direct") return SignAlg::direct;
  throw CLI::ValidationError("--alg", "unknown algorithm " + s);
}

ComplexMatrix build_matrix(const std::string& name, std::size_t m,
                           std::uint64_t seed, bool perturb) {
  ComplexMatrix a;
  if (name == "haar")
    a = unisign::haar_unitary(m, seed);
  else if (name == "dft")
    a = unisign::dft_matrix(m);
  else if (name == "shift")
    a = unisign::cyclic_shift(m);
  else if (name == "orthog2")
    a = unisign::orthog_minus2(m);
  else
    throw CLI::ValidationError("--matrix", "unknown matrix " + name);
  if (perturb) {
    unisign::CounterRng rng(seed ^ 0x7065727475726264ull);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        a(i, j) += unisign::kUnitRoundoff * rng.next_normal();
  }
  return a;
}

std::string render_report(const RunReport& r, const std::string& format) {
  if (format == "json") {
    nlohmann::json j = r;
    return j.dump(2) + "\n";
  }
  if (format == "csv")
    return unisign::run_report_csv_header() + "\n" + unisign::to_csv_row(r) +
           "\n";
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%s m=%llu alg=%s n=%d k=%d\n"
                "  ||A-SN|| = %.3e   ||S^2-I|| = %.3e   ||S-S*|| = %.3e\n"
                "  ||N*N-I|| = %.3e  ||N^2-A^2|| = %.3e  mu(N) = %.3e\n"
                "  wall = %.1f ms\n",
                r.matrix_name.c_str(), static_cast<unsigned long long>(r.m),
                r.algorithm.c_str(), r.n, r.iterations, r.factorization,
                r.involution, r.hermitian_defect, r.unitarity, r.square,
                r.half_plane, r.wall_time_ms);
  std::string text = buf;
  for (const std::string& w : r.warnings) text += "  warning: " + w + "\n";
  if (!r.error.empty()) text += "  error: " + r.error + "\n";
  return text;
}

int cmd_scalar_tables(double delta, const std::string& format,
                      const std::string& out_path) {
  const std::array<double, 11>& gaps = unisign::selftest::detail::kGaps;
  std::vector<std::vector<int>> zolo(8), pade(8);
  for (int n = 1; n <= 8; ++n)
    for (double g : gaps) {
      zolo[n - 1].push_back(
          unisign::zolo_table_k(n, ArcAngle::from_gap(g), delta));
      pade[n - 1].push_back(unisign::pade_table_k(
          n, ArcAngle::from_theta(unisign::kHalfPi - g), delta));
    }
  std::string text;
  if (format == "json") {
    nlohmann::json j{{"delta", delta},
                     {"gap", gaps},
                     {"zolo", zolo},
                     {"pade", pade}};
    text = j.dump(2) + "\n";
  } else if (format == "csv") {
    text = "table,n";
    for (double g : gaps) {
      char buf[24];
      std::snprintf(buf, sizeof buf, ",%.17g", g);
      text += buf;
    }
    text += "\n";
    for (const char* tname : {"zolo", "pade"}) {
      const auto& t = std::string(tname) == "zolo" ? zolo : pade;
      for (int n = 1; n <= 8; ++n) {
        text += std::string(tname) + "," + std::to_string(n);
        for (int k : t[n - 1]) text += "," + std::to_string(k);
        text += "\n";
      }
    }
  } else {
    for (const char* tname : {"zolo", "pade"}) {
      const auto& t = std::string(tname) == "zolo" ? zolo : pade;
      text += std::string(tname) + " iteration counts (rows n=1..8):\n";
      for (int n = 1; n <= 8; ++n) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "  n=%d:", n);
        text += buf;
        for (int k : t[n - 1]) {
          std::snprintf(buf, sizeof buf, " %3d", k);
          text += buf;
        }
        text += "\n";
      }
    }
  }
  emit(text, out_path);
  return 0;
}

int cmd_sign(const std::string& matrix, std::size_t m, std::uint64_t seed,
             const std::string& alg_name, int n, double delta, bool perturb,
             const std::string& format, const std::string& out_path) {
  const SignAlg alg = parse_alg(alg_name);
  const ComplexMatrix a = build_matrix(matrix, m, seed, perturb);
  RunReport r;
  r.matrix_name = matrix;
  r.m = m;
  r.seed = seed;
  r.algorithm = alg_name;
  r.n = n;
  r.delta = delta;
  IterationConfig cfg;
  cfg.n = n;
  cfg.delta = delta;
  cfg.variant = alg;
  const double t0 = now_ms();
  try {
    const unisign::SignDecomposition sd = unisign::sign_via(alg, a, cfg);
    r.iterations = sd.iterations;
    if (sd.axis_eigenvalue_warning)
      r.warnings.push_back("eigenvalue of A within 10u of +-i; sign arbitrary there");
    const unisign::BackwardErrors be =
        unisign::backward_errors(a, sd.s, sd.n_factor);
    r.factorization = be.factorization;
    r.involution = be.involution;
    r.hermitian_defect = be.hermitian_defect;
    r.unitarity = be.unitarity;
    r.square = be.square;
    r.half_plane = be.half_plane;
  } catch (const unisign::error& e) {
    // Algorithm-level failures are experiment data, not tool errors.
    r.error = e.what();
    r.warnings.push_back("algorithm failed; backward errors not available");
  }
  r.wall_time_ms = now_ms() - t0;
  emit(render_report(r, format), out_path);
  return 0;
}

int cmd_eig(const std::string& matrix, std::size_t m, std::uint64_t seed,
            const std::string& alg_name, int n, double delta, bool perturb,
            const std::string& format, const std::string& out_path) {
  const SignAlg alg = parse_alg(alg_name);
  const ComplexMatrix a = build_matrix(matrix, m, seed, perturb);
  RunReport r;
  r.matrix_name = matrix;
  r.m = m;
  r.seed = seed;
  r.algorithm = "eig+" + alg_name;
  r.n = n;
  r.delta = delta;
  IterationConfig cfg;
  cfg.n = n;
  cfg.delta = delta;
  cfg.variant = alg;
  const double t0 = now_ms();
  try {
    const unisign::UnitaryEigendecomposition e =
        unisign::divide_and_conquer(a, cfg);
    ComplexMatrix vl = e.v;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) vl(i, j) *= e.lambda[j];
    r.factorization = unisign::two_norm(a - vl * e.v.adjoint());
    ComplexMatrix vv = e.v.adjoint() * e.v;
    for (std::size_t i = 0; i < m; ++i) vv(i, i) -= 1.0;
    r.unitarity = unisign::two_norm(vv);
    r.warnings.push_back(
        "eig run: factorization = ||A-V Lambda V*||, unitarity = ||V*V-I||");
  } catch (const unisign::error& e) {
    r.error = e.what();
    r.warnings.push_back("algorithm failed; residuals not available");
  }
  r.wall_time_ms = now_ms() - t0;
  emit(render_report(r, format), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary sign decomposition via structure-preserving "
               "minimax-rational iterations, and a spectral "
               "divide-and-conquer unitary eigensolver"};
  app.require_subcommand(1);

  std::string matrix = "haar", alg = "zolo", format = "text", out_path;
  std::size_t m = 100;
  std::uint64_t seed = unisign::selftest::kBenchmarkSeed;
  int n = 1;
  double delta = 1e-16;
  bool perturb = false;

  auto add_matrix_flags = [&](CLI::App* c, const char* algflag) {
    c->add_option("--matrix", matrix, "matrix family")
        ->check(CLI::IsMember({"haar", "dft", "shift", "orthog2"}));
    c->add_option("--m", m, "dimension")->check(CLI::PositiveNumber);
    c->add_option("--seed", seed, "seed for haar / perturbation");
    c->add_option(algflag, alg, "sign algorithm")
        ->check(CLI::IsMember({"zolo", "pade", "newton", "direct"}));
    c->add_option("--n", n, "half-degree of the rational iteration")
        ->check(CLI::Range(1, 16));
    c->add_option("--delta", delta, "termination tolerance");
    c->add_flag("--perturb", perturb, "add a unit-roundoff Gaussian perturbation");
    c->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    c->add_option("--out", out_path, "write output to file instead of stdout");
  };

  CLI::App* tables =
      app.add_subcommand("scalar-tables", "iteration-count tables of the "
                                          "scalar zolo and pade iterations");
  tables->add_option("--delta", delta, "tolerance defining convergence");
  tables->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  tables->add_option("--out", out_path, "write output to file");

  CLI::App* sign =
      app.add_subcommand("sign", "compute one unitary sign decomposition and "
                                 "report its backward errors");
  add_matrix_flags(sign, "--alg");

  CLI::App* eig =
      app.add_subcommand("eig", "divide-and-conquer unitary eigendecomposition "
                                "with a selectable sign backend");
  add_matrix_flags(eig, "--sign-alg");

  app.add_subcommand("selftest",
                     "run the full acceptance suite at desk scale");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tables->parsed()) return cmd_scalar_tables(delta, format, out_path);
    if (sign->parsed())
      return cmd_sign(matrix, m, seed, alg, n, delta, perturb, format,
                      out_path);
    if (eig->parsed())
      return cmd_eig(matrix, m, seed, alg, n, delta, perturb, format,
                     out_path);
    return unisign::selftest::print_and_exit_code(
        unisign::selftest::run_all());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
