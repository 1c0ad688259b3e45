#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "unisign/approx.hpp"
#include "unisign/eig.hpp"
#include "unisign/gallery.hpp"
#include "unisign/rng.hpp"
#include "unisign/sign.hpp"

namespace unisign {
namespace selftest {

// Seed of the Haar benchmark matrix. Chosen so that haar_unitary(100, seed)
// has spectral-angle gap pi/2 - Theta = 0.026 +- 1e-3, the regime the
// reference tabulation reports for its random unitary sample.
inline constexpr std::uint64_t kBenchmarkSeed = 118;

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline const std::array<double, 11> kGaps = {1.5,   1.0,   0.5,   1e-2,
                                             1e-4,  1e-6,  1e-8,  1e-10,
                                             1e-12, 1e-14, 1e-16};

// Smallest k with 4 rho^{-(2n+1)^k} <= (8 delta/3)^{1/4}, delta = 1e-16.
inline const int kTableZolo[8][11] = {
    {1, 2, 2, 3, 4, 4, 5, 5, 5, 5, 5}, {1, 2, 2, 3, 3, 3, 3, 3, 3, 4, 4},
    {1, 1, 2, 2, 2, 3, 3, 3, 3, 3, 3}, {1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 3},
    {1, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3}, {1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2},
    {1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2}, {1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2}};

// Smallest k with |r_{(2n+1)^k}(e^{i Theta}; 0) - 1| <= (8 delta/3)^{1/4}.
inline const int kTablePade[8][11] = {
    {1, 2, 3, 7, 11, 15, 19, 24, 28, 32, 37},
    {1, 2, 2, 5, 8, 10, 13, 16, 19, 22, 25},
    {1, 2, 2, 4, 6, 9, 11, 13, 16, 18, 21},
    {1, 1, 2, 4, 6, 8, 10, 12, 14, 16, 19},
    {1, 1, 2, 3, 5, 7, 9, 11, 13, 15, 17},
    {1, 1, 2, 3, 5, 7, 9, 10, 12, 14, 16},
    {1, 1, 2, 3, 5, 6, 8, 10, 12, 13, 15},
    {1, 1, 2, 3, 5, 6, 8, 9, 11, 13, 14}};

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct GallerySet {
  std::vector<std::pair<std::string, ComplexMatrix>> mats;
};

inline GallerySet benchmark_matrices(std::size_t m) {
  GallerySet g;
  g.mats.emplace_back("haar", haar_unitary(m, kBenchmarkSeed));
  g.mats.emplace_back("dft", dft_matrix(m));
  g.mats.emplace_back("shift", cyclic_shift(m));
  g.mats.emplace_back("orthog2", orthog_minus2(m));
  return g;
}

}  // namespace detail

// Criterion 1: the 88 integers of the zolo-iteration count table, exactly.
inline CheckResult check_table_zolo() {
  detail::Stopwatch sw;
  CheckResult r{"criterion 1: zolo scalar table (88 cells exact, <5 s)"};
  int bad = 0;
  for (int n = 1; n <= 8; ++n)
    for (int c = 0; c < 11; ++c) {
      const int k =
          zolo_table_k(n, ArcAngle::from_gap(detail::kGaps[c]), 1e-16);
      if (k != detail::kTableZolo[n - 1][c]) {
        ++bad;
        r.detail += " (n=" + std::to_string(n) + ",gap=" +
                    detail::fmt(detail::kGaps[c]) + ")=" + std::to_string(k) +
                    " want " + std::to_string(detail::kTableZolo[n - 1][c]);
      }
    }
  r.seconds = sw.seconds();
  r.pass = bad == 0 && r.seconds < 5.0;
  if (bad == 0) r.detail = "all 88 cells match";
  return r;
}

// Criterion 2: the 88 integers of the Pade iteration count table, exactly.
inline CheckResult check_table_pade() {
  detail::Stopwatch sw;
  CheckResult r{"criterion 2: pade scalar table (88 cells exact, <5 s)"};
  int bad = 0;
  for (int n = 1; n <= 8; ++n)
    for (int c = 0; c < 11; ++c) {
      const int k = pade_table_k(
          n, ArcAngle::from_theta(kHalfPi - detail::kGaps[c]), 1e-16);
      if (k != detail::kTablePade[n - 1][c]) {
        ++bad;
        r.detail += " (n=" + std::to_string(n) + ",gap=" +
                    detail::fmt(detail::kGaps[c]) + ")=" + std::to_string(k) +
                    " want " + std::to_string(detail::kTablePade[n - 1][c]);
      }
    }
  r.seconds = sw.seconds();
  r.pass = bad == 0 && r.seconds < 5.0;
  if (bad == 0) r.detail = "all 88 cells match";
  return r;
}

// Criterion 3: iteration counts on the 100-point DFT matrix: zolo n=1 in
// 5..7 iterations, pade n=1 in >= 30.
inline CheckResult check_intro_counts() {
  detail::Stopwatch sw;
  CheckResult r{"criterion 3: DFT iteration counts (zolo 5..7, pade >=30, <10 s)"};
  const ComplexMatrix a = dft_matrix(100);
  IterationConfig cfg;
  cfg.n = 1;
  const SignDecomposition z = zolo_sign(a, cfg);
  const SignDecomposition p = pade_sign(a, cfg);
  r.seconds = sw.seconds();
  r.pass = z.iterations >= 5 && z.iterations <= 7 && p.iterations >= 30 &&
           r.seconds < 10.0;
  r.detail = "zolo k=" + std::to_string(z.iterations) +
             ", pade k=" + std::to_string(p.iterations);
  return r;
}

// Criterion 4 (with the structure-preservation data for criterion 8): all
// six backward errors <= 1e-13 for the four galleries x zolo/pade x
// n in {1,4,8}.
inline CheckResult check_backward_stability(double* worst_defect_ratio) {
  detail::Stopwatch sw;
  CheckResult r{
      "criterion 4: backward errors <= 1e-13, 4 galleries x 6 configs (<60 s)"};
  const detail::GallerySet g = detail::benchmark_matrices(100);
  double worst = 0.0;
  std::string worst_at = "-";
  double defect_ratio = 0.0;
  for (const auto& [name, a] : g.mats) {
    for (SignAlg alg : {SignAlg::zolo, SignAlg::pade}) {
      for (int n : {1, 4, 8}) {
        IterationConfig cfg;
        cfg.n = n;
        cfg.variant = alg;
        SignDecomposition sd;
        try {
          sd = sign_via(alg, a, cfg);
        } catch (const error& e) {
          r.seconds = sw.seconds();
          r.detail = std::string("failed: ") + to_string(alg) + " n=" +
                     std::to_string(n) + " on " + name + ": " + e.what();
          return r;
        }
        const BackwardErrors be = backward_errors(a, sd.s, sd.n_factor);
        if (be.worst() > worst) {
          worst = be.worst();
          worst_at = name + std::string("/") + to_string(alg) +
                     "-n" + std::to_string(n);
        }
        defect_ratio = std::max(
            defect_ratio, sd.max_iterate_unitarity_defect /
                              (static_cast<double>(a.rows()) * kUnitRoundoff));
      }
    }
  }
  if (worst_defect_ratio) *worst_defect_ratio = defect_ratio;
  r.seconds = sw.seconds();
  r.pass = worst <= 1e-13 && r.seconds < 60.0;
  r.detail = "worst metric " + detail::fmt(worst) + " at " + worst_at;
  return r;
}

// Criterion 5: the scaled Newton baseline misbehaves on the DFT matrix.
inline CheckResult check_newton_instability() {
  detail::Stopwatch sw;
  CheckResult r{"criterion 5: Newton baseline fails or metric > 1e-4 on DFT"};
  const ComplexMatrix a = dft_matrix(100);
  try {
    const SignDecomposition sd = newton_polar_sign(a);
    const BackwardErrors be = backward_errors(a, sd.s, sd.n_factor);
    r.pass = be.worst() > 1e-4;
    r.detail = "converged with worst metric " + detail::fmt(be.worst());
  } catch (const error& e) {
    r.pass = true;
    r.detail = std::string("failed as expected: ") + e.what();
  }
  r.seconds = sw.seconds();
  return r;
}

// Criterion 6: spectral-angle gaps of the four galleries at m = 100.
inline CheckResult check_spectral_angles() {
  detail::Stopwatch sw;
  CheckResult r{"criterion 6: spectral angles (0.026, <=1e-14, 0, 0.95)"};
  const detail::GallerySet g = detail::benchmark_matrices(100);
  const double haar_gap = spectral_angle(g.mats[0].second).gap;
  const double dft_gap = spectral_angle(g.mats[1].second).gap;
  const double shift_gap = spectral_angle(g.mats[2].second).gap;
  const double orth_gap = spectral_angle(g.mats[3].second).gap;
  r.pass = std::abs(haar_gap - 0.026) <= 1e-3 && dft_gap <= 1e-14 &&
           shift_gap <= 10.0 * kUnitRoundoff && std::abs(orth_gap - 0.95) <= 1e-2;
  r.detail = "haar " + detail::fmt(haar_gap) + ", dft " + detail::fmt(dft_gap) +
             ", shift " + detail::fmt(shift_gap) + ", orthog2 " +
             detail::fmt(orth_gap);
  r.seconds = sw.seconds();
  return r;
}

// Criterion 7: divide-and-conquer with the zolo backend on the galleries.
inline CheckResult check_eigendecomposition() {
  detail::Stopwatch sw;
  CheckResult r{
      "criterion 7: eigendecomposition residuals <= 1e-12 (4 galleries, <120 s)"};
  const detail::GallerySet g = detail::benchmark_matrices(100);
  double worst_res = 0.0, worst_orth = 0.0;
  for (const auto& [name, a] : g.mats) {
    IterationConfig cfg;
    cfg.n = 1;
    cfg.variant = SignAlg::zolo;
    UnitaryEigendecomposition e;
    try {
      e = divide_and_conquer(a, cfg);
    } catch (const error& ex) {
      r.seconds = sw.seconds();
      r.detail = "failed on " + name + ": " + ex.what();
      return r;
    }
    const std::size_t m = a.rows();
    ComplexMatrix vl = e.v;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) vl(i, j) *= e.lambda[j];
    worst_res = std::max(worst_res, two_norm(a - vl * e.v.adjoint()));
    ComplexMatrix vv = e.v.adjoint() * e.v;
    for (std::size_t i = 0; i < m; ++i) vv(i, i) -= 1.0;
    worst_orth = std::max(worst_orth, two_norm(vv));
  }
  r.seconds = sw.seconds();
  r.pass = worst_res <= 1e-12 && worst_orth <= 1e-12 && r.seconds < 120.0;
  r.detail = "worst residual " + detail::fmt(worst_res) + ", worst orth " +
             detail::fmt(worst_orth);
  return r;
}

// Criterion 8: the scalar-level property suites plus structure preservation
// of the matrix iterates collected during criterion 4.
inline CheckResult check_property_suites(double worst_defect_ratio) {
  detail::Stopwatch sw;
  CheckResult r{"criterion 8: property suites (composition, tanh, unimodular, "
                "QR lemma, error bound, Hermitian part, structure)"};
  std::string fails;

  // Composition law.
  {
    double worst = 0.0;
    for (int n : {1, 2})
      for (int mdeg : {1, 2})
        for (double th : {kPi / 6, kPi / 3, kHalfPi - 1e-3}) {
          const ArcAngle t0 = ArcAngle::from_theta(th);
          const ArcAngle t1 = theta_update(n, t0);
          const RationalSignApproximant inner = coefficients(n, t0);
          const RationalSignApproximant outer = coefficients(mdeg, t1);
          const int big = 2 * mdeg * n + mdeg + n;  // (2m+1)(2n+1) = 2*big+1
          const RationalSignApproximant whole = coefficients(big, t0);
          for (int i = 0; i < 64; ++i) {
            const std::complex<double> z = std::polar(1.0, th * i / 63.0);
            worst = std::max(worst,
                             std::abs(evaluate(outer, evaluate(inner, z)) -
                                      evaluate(whole, z)));
          }
        }
    if (worst > 1e-12) fails += " composition=" + detail::fmt(worst);
  }

  // Pade limit against the tanh closed form.
  {
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n) {
      const RationalSignApproximant r0 =
          coefficients(n, ArcAngle::from_theta(0.0));
      for (int i = 0; i < 50; ++i) {
        const double phi = 1.47 * i / 49.0;
        const std::complex<double> z = std::polar(1.0, phi);
        if (std::abs(z.real()) < 0.1) continue;
        const std::complex<double> oracle =
            std::tanh((2.0 * n + 1.0) * std::atanh(z));
        worst = std::max(worst, std::abs(evaluate(r0, z) - oracle));
      }
    }
    if (worst > 1e-12) fails += " tanh=" + detail::fmt(worst);
  }

  // Unimodularity on random degree/angle/point triples.
  {
    CounterRng rng(42);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
      const int n = 1 + static_cast<int>(rng.next_u64() % 8);
      const double th = (kHalfPi - 1e-6) * rng.next_uniform();
      const RationalSignApproximant rr =
          coefficients(n, ArcAngle::from_theta(th));
      const std::complex<double> z =
          std::polar(1.0, 2.0 * kPi * rng.next_uniform() - kPi);
      worst = std::max(worst, std::abs(std::abs(evaluate(rr, z)) - 1.0));
    }
    if (worst > 1e-12) fails += " unimodular=" + detail::fmt(worst);
  }

  // Two-QR quotient against the explicit B B^-* of a random normal matrix.
  {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const std::size_t m = 12;
      CounterRng rng(1000 + static_cast<std::uint64_t>(t));
      const ComplexMatrix v = haar_unitary(m, 2000 + t);
      ComplexMatrix d(m, m);
      for (std::size_t i = 0; i < m; ++i)
        d(i, i) = std::polar(0.5 + 1.5 * rng.next_uniform(),
                             2.0 * kPi * rng.next_uniform());
      const ComplexMatrix b = v * d * v.adjoint();
      const ComplexMatrix lhs = qr(b).q * qr(b.adjoint()).q.adjoint();
      const ComplexMatrix rhs = b * inverse(b.adjoint());
      worst = std::max(worst, (lhs - rhs).frobenius_norm());
    }
    if (worst > 1e-12) fails += " qr-lemma=" + detail::fmt(worst);
  }

  // Minimax error bound 4 rho^{-(2n+1)} on the stated grid.
  {
    bool ok = true;
    std::string where;
    for (int n : {1, 2, 4, 8})
      for (double th : {kPi / 6, kPi / 3, kHalfPi - 1e-2}) {
        const ArcAngle t0 = ArcAngle::from_theta(th);
        const double bound =
            4.0 * std::exp(-(2.0 * n + 1.0) * log_rho(t0.modulus()));
        const double err = max_arc_error(n, t0, 10000);
        if (err > bound) {
          ok = false;
          where = " n=" + std::to_string(n) + " theta=" + detail::fmt(th) +
                  " err=" + detail::fmt(err) + ">" + detail::fmt(bound);
        }
      }
    if (!ok) fails += " error-bound" + where;
  }

  // Hermitian-part correspondence on diagonal input, via the scalar routes.
  {
    double worst = 0.0;
    CounterRng rng(7);
    for (int n : {1, 2}) {
      std::vector<std::complex<double>> x(20);
      std::vector<double> y(20);
      double gap = kHalfPi;
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double phi = 1.45 * (2.0 * rng.next_uniform() - 1.0);
        x[j] = std::polar(1.0, phi);
        y[j] = x[j].real();
        gap = std::min(gap, kHalfPi - std::abs(phi));
      }
      ArcAngle th = ArcAngle::from_gap(gap);
      for (int k = 0; k < 3; ++k) {
        const RationalSignApproximant rr = coefficients(n, th);
        const double ell = th.modulus().ell;  // cos Theta_k
        for (std::size_t j = 0; j < x.size(); ++j) {
          x[j] = evaluate(rr, x[j]);
          y[j] = r_hat_real(y[j], n, ell);
          worst = std::max(worst, std::abs(x[j].real() - y[j]));
        }
        th = theta_update(n, th);
      }
    }
    if (worst > 1e-12) fails += " hermitian-part=" + detail::fmt(worst);
  }

  // Structure preservation of the matrix iterates (fed from criterion 4).
  if (worst_defect_ratio > 200.0)
    fails += " structure=" + detail::fmt(worst_defect_ratio) + "m*u";

  r.seconds = sw.seconds();
  r.pass = fails.empty();
  r.detail = fails.empty() ? "all property suites hold" : "failed:" + fails;
  return r;
}

// Runs criteria 1..8 and appends the overall timing gate as criterion 9.
inline std::vector<CheckResult> run_all() {
  detail::Stopwatch sw;
  std::vector<CheckResult> out;
  out.push_back(check_table_zolo());
  out.push_back(check_table_pade());
  out.push_back(check_intro_counts());
  double defect_ratio = 0.0;
  out.push_back(check_backward_stability(&defect_ratio));
  out.push_back(check_newton_instability());
  out.push_back(check_spectral_angles());
  out.push_back(check_eigendecomposition());
  out.push_back(check_property_suites(defect_ratio));
  CheckResult total{"criterion 9: criteria 1-8 complete in under 240 s"};
  total.seconds = sw.seconds();
  total.pass = total.seconds < 240.0;
  bool all = true;
  for (const CheckResult& c : out) all = all && c.pass;
  total.pass = total.pass && all;
  total.detail = "total " + detail::fmt(total.seconds) + " s";
  out.push_back(total);
  return out;
}

inline int print_and_exit_code(const std::vector<CheckResult>& results) {
  bool all = true;
  for (const CheckResult& c : results) {
    std::printf("[%s] %s  (%.2f s)  %s\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.seconds, c.detail.c_str());
    all = all && c.pass;
  }
  return all ? 0 : 1;
}

}  // namespace selftest
}  // namespace unisign
