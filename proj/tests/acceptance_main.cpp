// Copyright (c) 2026 the precision-atlas authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one line per criterion, each checked at its stated
// tolerance.  Two clauses are expected to fail and are marked as such in the
// output: the batched-metrology mutual information sits a constant
// ~0.40 nats below (1/2) ln(nu) (the half-log form drops the binomial
// entropy constant), and the comparison table inherits that same gap.  The
// process exits nonzero if any other check fails, or if those two stop
// failing in the analyzed way.  See notes/decisions.md in the review
// bundle for the full analysis.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "patlas/infometrics.hpp"
#include "patlas/models.hpp"
#include "patlas/protocol.hpp"
#include "patlas/spin.hpp"
#include "patlas/symmetry.hpp"
#include "patlas/version.hpp"
#include "test_oracles.hpp"

using namespace patlas;
using json = nlohmann::ordered_json;

namespace {

int unexpected_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double elapsed, bool expected_fail = false) {
  const char* tag = pass ? "[PASS]" : (expected_fail ? "[FAIL, expected]" : "[FAIL]");
  std::printf("%-16s criterion %2d: %-38s %7.2fs  %s\n", tag, id, name.c_str(), elapsed,
              detail.c_str());
  if (!pass && !expected_fail) ++unexpected_failures;
  if (pass && expected_fail) {
    std::printf("[ALERT]          criterion %2d passed but was recorded as an expected failure; "
                "re-examine the analysis\n", id);
    ++unexpected_failures;
  }
}

std::string run_cli_capture(const std::string& args, int& exit_code) {
  const std::string cmd = std::string(PATLAS_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  char buf[4096];
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return out;
  }
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

// ---------------------------------------------------------------------------

void criterion_1_saturation() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::ostringstream detail;
  for (int n = 1; n <= 8; ++n) {
    const auto ops = spin::build_collective_ops(n);
    const std::size_t count = symmetry::count_distinct_eigenvalues(spin::splitting_observable(ops));
    const std::size_t bound = spin::outcome_bound(n);
    if (count != bound) {
      pass = false;
      detail << "n=" << n << ": " << count << " != " << bound << "; ";
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 10.0) {
    pass = false;
    detail << "over the 10 s budget; ";
  }
  if (pass) detail << "distinct(J^2+eps Jz) = (n+2)^2/4 | (n+1)(n+3)/4 for n = 1..8";
  report(1, "splitting-observable saturation", pass, detail.str(), dt);
}

void criterion_2_irreducibility() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::size_t spaces = 0;
  std::ostringstream detail;
  for (int n = 2; n <= 7; ++n) {
    for (const auto& rep : symmetry::certify_irreducibility(n)) {
      ++spaces;
      if (rep.commutant_dim != 1) {
        pass = false;
        detail << "n=" << n << " (j=" << rep.j.str() << ", m=" << rep.m.str()
               << "): commutant " << rep.commutant_dim << "; ";
      }
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 60.0) {
    pass = false;
    detail << "over the 60 s budget; ";
  }
  if (pass) detail << std::to_string(spaces) + " eigenspaces, every commutant one-dimensional";
  report(2, "joint-eigenspace irreducibility", pass, detail.str(), dt);
}

void criterion_3_bound_never_exceeded() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t violations = 0;
  std::size_t draws = 0;
  for (int n : {3, 4, 5, 6}) {
    const std::size_t bound = spin::outcome_bound(n);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      ++draws;
      const auto obs = symmetry::random_invariant_observable(n, seed);
      if (symmetry::count_distinct_eigenvalues(obs) > bound) ++violations;
    }
  }
  const bool pass = violations == 0 && draws == 800;
  report(3, "random invariant observables obey the bound", pass,
         std::to_string(draws) + " seeded draws, " + std::to_string(violations) + " violations",
         seconds_since(t0));
}

void criterion_4_schur_weyl() {
  const auto t0 = std::chrono::steady_clock::now();
  // frozen from two independent oracles (stacked-nullspace SVD and the
  // pair-orbit count); equal to sum_j (2j+1)^2
  const std::size_t expected[] = {10, 20, 35, 56};
  bool pass = true;
  std::ostringstream detail;
  for (int n = 2; n <= 5; ++n) {
    std::uint64_t formula = 0;
    for (HalfInt j : spin::valid_j_values(n)) {
      const std::uint64_t d = static_cast<std::uint64_t>(j.twice()) + 1;
      formula += d * d;
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    const std::size_t got = symmetry::commutant_dimension(
        ComplexMatrix::Identity(dim, dim), symmetry::PermutationAction::adjacent(n));
    if (got != expected[n - 2] || formula != expected[n - 2]) {
      pass = false;
      detail << "n=" << n << ": nullspace " << got << ", formula " << formula << ", frozen "
             << expected[n - 2] << "; ";
    }
  }
  if (pass) detail << "full-space commutant = sum (2j+1)^2 = 10/20/35/56 for n = 2..5";
  report(4, "Schur-Weyl commutant cross-check", pass, detail.str(), seconds_since(t0));
}

void criterion_5_qpea_mutual_info() {
  const auto t0 = std::chrono::steady_clock::now();
  const double closed = std::log(256.0) - 2.0 * (1.0 - kEulerGamma);
  const double numeric = infometrics::mutual_information(models::qpea_model(8), 64);
  const double dev = std::abs(numeric - closed);
  const double dt = seconds_since(t0);
  bool pass = dev <= 0.01 && dt < 30.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "M=256: I = %.6f vs ln M - 2(1-gamma) = %.6f, |dev| = %.4f <= 0.01",
                numeric, closed, dev);
  report(5, "phase-estimation mutual information", pass, buf, dt);
}

void criterion_6_qpea_rmse() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto model = models::qpea_model(10);  // M = 1024
  const double m = 1024.0;
  const double sigma = infometrics::rmse(model, kPi - kPi / m);
  const double scaled = sigma * std::sqrt(m);
  const double target = std::sqrt(8.0 * std::log(2.0));
  bool pass = std::abs(scaled - target) <= 0.05;

  double worst_chord = 0.0;
  for (int q : {2, 4, 6, 10}) {
    const double mc = std::pow(2.0, q);
    const double chord = infometrics::chord_rmse(models::qpea_model(q), kPi + kPi / mc);
    worst_chord = std::max(worst_chord, std::abs(chord * chord - 1.0 / mc));
  }
  pass = pass && worst_chord <= 1e-12;

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "sigma*sqrt(M) = %.6f vs %.6f; chord sigma^2 - 1/M worst |dev| = %.1e <= 1e-12",
                scaled, target, worst_chord);
  report(6, "phase-estimation RMSE identities", pass, buf, seconds_since(t0));
}

void criterion_7_binomial_mutual_info() {
  const auto t0 = std::chrono::steady_clock::now();
  // The half-log reference form omits a +1 that the quadrature oracle confirms
  // (the criterion instructs confirming the correction before freezing the
  // threshold); the frozen target is therefore the corrected form, and the
  // deviation from the uncorrected form must decrease strictly in N.
  const double correction = 1.0;
  const int ns[] = {64, 256, 1024};
  double devs_uncorrected[3];
  double numeric_1024 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double numeric = infometrics::mutual_information(models::binomial_model(ns[i]), 64);
    const double halflog = 0.5 * std::log(static_cast<double>(ns[i])) -
                         0.5 * std::log(kTwoPi * std::exp(1.0));
    devs_uncorrected[i] = std::abs(numeric - halflog);
    if (ns[i] == 1024) numeric_1024 = numeric;
  }
  const double halflog_1024 = 0.5 * std::log(1024.0) - 0.5 * std::log(kTwoPi * std::exp(1.0));
  const double dev_corrected = std::abs(numeric_1024 - (halflog_1024 + correction));
  const bool monotone =
      devs_uncorrected[0] > devs_uncorrected[1] && devs_uncorrected[1] > devs_uncorrected[2];
  const bool pass = dev_corrected <= 0.05 && monotone;
  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "N=1024: I = %.6f = half-log form %+.4f; corrected-form |dev| = %.4f <= 0.05; "
                "half-log devs %.4f > %.4f > %.4f",
                numeric_1024, devs_uncorrected[2], dev_corrected, devs_uncorrected[0],
                devs_uncorrected[1], devs_uncorrected[2]);
  report(7, "binomial mutual information", pass, buf, seconds_since(t0));
}

void criterion_8_protocol() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::ostringstream detail;
  double worst_tv = 0.0;
  for (int mexp : {2, 4, 6}) {
    const Eigen::Index m = Eigen::Index{1} << mexp;
    ComplexMatrix ladder = ComplexMatrix::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k) ladder(k, k) = static_cast<double>(k);
    const auto spec = protocol::build_canonical(hilbert::HermitianObservable(std::move(ladder)));

    for (double phi : {0.0, 0.37, 1.94, 5.2}) {
      const auto r = protocol::run(spec, phi);
      double tv = 0.0;
      for (Eigen::Index k = 0; k < m; ++k) {
        tv += std::abs(r.outcome_probs[static_cast<std::size_t>(k)] -
                       oracle::qpea_prob_direct(m, k, phi));
      }
      worst_tv = std::max(worst_tv, tv / 2.0);
    }
    for (Eigen::Index k = 0; k < m; ++k) {
      const double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
      const auto r = protocol::run(spec, phi);
      if (std::abs(r.outcome_probs[static_cast<std::size_t>(k)] - 1.0) > 1e-10 ||
          std::abs(r.map_estimate - phi) > 1e-12) {
        pass = false;
        detail << "grid miss at M=" << m << " k=" << k << "; ";
      }
    }
    const auto prec = protocol::protocol_precision(spec);
    if (prec.absolute != kTwoPi / static_cast<double>(m) ||
        prec.relative != 1.0 / static_cast<double>(m)) {
      pass = false;
      detail << "precision mismatch at M=" << m << "; ";
    }
  }
  pass = pass && worst_tv <= 1e-10;
  char buf[120];
  std::snprintf(buf, sizeof(buf), "worst TV distance to the kernel = %.2e <= 1e-10%s", worst_tv,
                detail.str().empty() ? "" : ("; " + detail.str()).c_str());
  report(8, "canonical protocol equivalence", pass, buf, seconds_since(t0));
}

void criterion_9_information_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<models::EstimationModel> sweep = {
      models::single_shot_mz(),        models::deterministic_model(4),
      models::deterministic_model(16), models::binomial_model(1),
      models::binomial_model(16),      models::binomial_model(100),
      models::qpea_model(1),           models::qpea_model(3),
      models::qpea_model(6),           models::qpea_model(8),
      models::qmetrology_batch(10),    models::qmetrology_batch(100),
  };
  bool pass = true;
  std::ostringstream detail;
  for (const auto& m : sweep) {
    const auto mi = infometrics::mutual_information_with_error(m, 64);
    const double ln_m = std::log(static_cast<double>(m.outcomes.size()));
    const double inv_m = 1.0 / static_cast<double>(m.outcomes.size());
    if (mi.value > ln_m + mi.error_estimate + 1e-9 || std::exp(-mi.value) < inv_m - 1e-9) {
      pass = false;
      detail << m.label << " violates the bound; ";
    }
  }
  if (pass) detail << std::to_string(sweep.size()) + " models: I <= ln M and e^{-I} >= 1/M";
  report(9, "information bound across the model zoo", pass, detail.str(), seconds_since(t0));
}

void criterion_10_qmetrology() {
  const auto t0 = std::chrono::steady_clock::now();

  const double batch_mi = infometrics::mutual_information(models::qmetrology_batch(100), 64);
  const double additive = infometrics::qmetrology_mutual_info(100, 100, 64);
  const bool additivity_exact = std::abs(additive - 2.0 * batch_mi) <= 1e-12;

  const double rmse_d1 = infometrics::qmetrology_rmse_aggregate(1, 100);
  const double closed_rmse = 1.0 / (10.0 * std::sqrt(100.0));
  const bool rmse_exact = std::abs(rmse_d1 - 0.01) <= 1e-12 && std::abs(closed_rmse - 0.01) <= 1e-12;

  const double half_log = 0.5 * std::log(100.0);
  const double dev = std::abs(batch_mi - half_log);
  const bool batch_close = dev <= 0.1;  // fails: the true gap is the dropped constant
  const bool failing_as_analyzed = dev > 0.3 && dev < 0.5;

  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "additive MI = 2 x batch exact: %s; batch MI %.4f vs (1/2)ln(100) = %.4f "
                "(|dev| = %.3f > 0.1); d=1 RMSE = 0.01 exact: %s",
                additivity_exact ? "yes" : "NO", batch_mi, half_log, dev,
                rmse_exact ? "yes" : "NO");
  const bool pass = additivity_exact && rmse_exact && batch_close;
  report(10, "batched-metrology row", pass, buf, seconds_since(t0), /*expected_fail=*/true);
  if (!(additivity_exact && rmse_exact && failing_as_analyzed)) {
    std::printf("[ALERT]          criterion 10 failed outside the analyzed envelope\n");
    ++unexpected_failures;
  }
}

void criterion_11_table2() {
  const auto t0 = std::chrono::steady_clock::now();
  int exit_code = -1;
  const std::string out =
      run_cli_capture("table2 --qpea-qubits 8 --sql-n 1024 --nu 100 --qm-n 100", exit_code);
  bool structural = exit_code == 0;
  bool tolerances = true;
  bool qm_gap_as_analyzed = false;
  double qm_dev = 0.0;
  std::ostringstream detail;
  try {
    const json rec = json::parse(out);
    const auto& rows = rec.at("rows");
    structural = structural && rows.size() == 3;
    for (const auto& row : rows) {
      structural = structural && row.contains("rmse_closed") && row.contains("rmse_numeric") &&
                   row.contains("delta_closed") && row.contains("mutual_info_closed") &&
                   row.contains("mutual_info_numeric") && row.contains("exp_neg_i_closed");
    }
    const auto& sql = rows.at(0);
    const auto& qpea = rows.at(1);
    const auto& qm = rows.at(2);

    // QPEA row at the criterion-5/6 tolerances
    tolerances = tolerances && qpea.at("mutual_info_dev").get<double>() <= 0.01;
    const double qpea_scaled = qpea.at("rmse_numeric").get<double>() * std::sqrt(256.0);
    tolerances = tolerances && std::abs(qpea_scaled - std::sqrt(8.0 * std::log(2.0))) <= 0.05;

    // SQL row at the criterion-7 (oracle-corrected) tolerance
    const double sql_gap = sql.at("mutual_info_numeric").get<double>() -
                           sql.at("mutual_info_closed").get<double>();
    tolerances = tolerances && std::abs(sql_gap - 1.0) <= 0.05;
    tolerances = tolerances && sql.at("rmse_dev").get<double>() <= 0.01;

    // Q-Metrology row: additivity consistent, aggregation formula consistent
    const double batch = qm.at("batch_mutual_info_numeric").get<double>();
    tolerances = tolerances &&
                 std::abs(qm.at("mutual_info_numeric").get<double>() - 2.0 * batch) <= 1e-6;
    tolerances = tolerances && std::abs(qm.at("rmse_numeric").get<double>() -
                                        infometrics::qmetrology_rmse_aggregate(2, 100)) <= 1e-9;

    // inherited criterion-10 clause: batch MI vs (1/2) ln nu at 0.1 nats
    qm_dev = std::abs(batch - qm.at("batch_mutual_info_closed_halflog").get<double>());
    qm_gap_as_analyzed = qm_dev > 0.3 && qm_dev < 0.5;
    detail << "rows emitted; QPEA/SQL columns within tolerance; "
           << "Q-Metrology batch MI misses (1/2)ln(nu) by " << std::fixed << qm_dev
           << " > 0.1 (the criterion-10 gap)";
  } catch (const std::exception& e) {
    structural = false;
    detail << "table2 output unusable: " << e.what();
  }
  const bool pass = structural && tolerances && qm_dev <= 0.1;
  report(11, "comparison-table reproduction", pass, detail.str(), seconds_since(t0),
         /*expected_fail=*/true);
  if (!(structural && tolerances && qm_gap_as_analyzed)) {
    std::printf("[ALERT]          criterion 11 failed outside the analyzed envelope\n");
    ++unexpected_failures;
  }
}

}  // namespace

int main() {
  std::printf("acceptance suite, library version %s\n", patlas::version());
  std::printf("------------------------------------------------------------------------------\n");
  criterion_1_saturation();
  criterion_2_irreducibility();
  criterion_3_bound_never_exceeded();
  criterion_4_schur_weyl();
  criterion_5_qpea_mutual_info();
  criterion_6_qpea_rmse();
  criterion_7_binomial_mutual_info();
  criterion_8_protocol();
  criterion_9_information_bound();
  criterion_10_qmetrology();
  criterion_11_table2();
  std::printf("------------------------------------------------------------------------------\n");
  std::printf("expected failures (documented defects in the half-log metrology form): "
              "criteria 10 and 11\n");
  if (unexpected_failures > 0) {
    std::printf("UNEXPECTED FAILURES: %d\n", unexpected_failures);
    return 1;
  }
  std::printf("all other criteria passed at their stated tolerances\n");
  return 0;
}
