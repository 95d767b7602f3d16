// Copyright (c) 2026 the precision-atlas authors.
// SPDX-License-Identifier: Apache-2.0
//
// precision-atlas: command-line front end for the collective-measurement
// precision toolkit.  Subcommands reproduce the outcome-count bounds, the
// irreducibility certificates, the canonical-protocol runs and the
// precision/RMSE/mutual-information comparison table, emitting JSON or CSV.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "patlas/infometrics.hpp"
#include "patlas/models.hpp"
#include "patlas/protocol.hpp"
#include "patlas/spin.hpp"
#include "patlas/symmetry.hpp"
#include "patlas/version.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace patlas;

// ---------------------------------------------------------------------------
// output plumbing

// Round to 12 significant digits so the emitted numerals are the payload.
double sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) {
      os << (i ? "," : "") << csv_escape(header[i]);
    }
    os << "\r\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "") << csv_escape(row[i]);
      }
      os << "\r\n";
    }
    return os.str();
  }
};

std::string iso_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Emitter {
  std::string format = "json";
  std::string output_path;

  int write(const std::string& text) const {
    if (output_path.empty()) {
      std::cout << text;
      return 0;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output path '" << output_path << "'\n";
      return 1;
    }
    out << text;
    return out.good() ? 0 : 1;
  }

  int emit(json record, const std::optional<CsvTable>& table) const {
    if (format == "csv") {
      if (!table) {
        std::cerr << "error: this command has no CSV rendering for the requested options\n";
        return 2;
      }
      return write(table->render());
    }
    record["timestamp"] = iso_utc_now();
    return write(record.dump(2) + "\n");
  }
};

json base_record(const std::string& command) {
  json rec;
  rec["command"] = command;
  rec["version"] = PATLAS_VERSION_STRING;
  return rec;
}

// Guardrail cap: the built-in default, unless PRECISION_ATLAS_MAX_N lowers or
// raises it; --allow-large lifts the default to `large_cap`.
int effective_cap(int default_cap, int large_cap, bool allow_large) {
  int cap = allow_large ? large_cap : default_cap;
  if (const char* env = std::getenv("PRECISION_ATLAS_MAX_N")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) cap = static_cast<int>(v);
  }
  return cap;
}

int usage_error(const std::string& message) {
  std::cerr << "usage error: " << message << "\n";
  return 2;
}

// ---------------------------------------------------------------------------
// subcommand payloads

int run_bound(int n, bool identical_only, const Emitter& emitter) {
  json rec = base_record("bound");
  rec["n"] = n;
  const std::size_t bound = spin::outcome_bound(n);
  const std::size_t bound_id = spin::outcome_bound(n, true);
  rec["bound"] = bound;
  rec["bound_identical"] = bound_id;
  if (identical_only) rec["requested"] = "identical";
  // the precision floors behind the bounds, including the classical-bit rows
  json table1;
  table1["individual_qubit_delta"] = sig12(std::pow(2.0, -n));
  table1["individual_cbit_delta"] = sig12(std::pow(2.0, -n));
  table1["collective_qubit_distinguishable_delta"] = sig12(1.0 / static_cast<double>(bound));
  table1["collective_qubit_identical_delta"] = sig12(1.0 / static_cast<double>(bound_id));
  table1["collective_cbit_delta"] = sig12(1.0 / static_cast<double>(n));
  rec["table1"] = table1;

  CsvTable table;
  table.header = {"n", "bound", "bound_identical", "individual_delta",
                  "collective_qubit_delta", "collective_cbit_delta"};
  table.rows.push_back({std::to_string(n), std::to_string(bound), std::to_string(bound_id),
                        fmt12(std::pow(2.0, -n)), fmt12(1.0 / static_cast<double>(bound)),
                        fmt12(1.0 / static_cast<double>(n))});
  return emitter.emit(std::move(rec), table);
}

int run_spectrum(int n, const Emitter& emitter) {
  json rec = base_record("spectrum");
  rec["n"] = n;
  const auto ops = spin::build_collective_ops(n);
  const double eps = spin::epsilon_for(n);
  const auto obs = spin::splitting_observable(ops);
  const std::size_t distinct = symmetry::count_distinct_eigenvalues(obs);
  const std::size_t bound = spin::outcome_bound(n);
  rec["epsilon"] = sig12(eps);
  rec["distinct_count"] = distinct;
  rec["bound"] = bound;
  rec["saturated"] = distinct == bound;
  rec["tolerances"] = {{"cluster", sig12(hilbert::default_cluster_tol(obs.matrix()))}};

  CsvTable table;
  table.header = {"n", "epsilon", "distinct_count", "bound", "saturated"};
  table.rows.push_back({std::to_string(n), fmt12(eps), std::to_string(distinct),
                        std::to_string(bound), distinct == bound ? "true" : "false"});
  return emitter.emit(std::move(rec), table);
}

int run_irreducibility(int n, const Emitter& emitter) {
  json rec = base_record("irreducibility");
  rec["n"] = n;
  const auto action = symmetry::PermutationAction::adjacent(n);
  const auto spaces = symmetry::joint_eigenspaces(n);
  bool all_irreducible = true;
  json out = json::array();
  CsvTable table;
  table.header = {"n", "j", "m", "dimension", "commutant_dim", "irreducible", "residual"};
  const auto ops = spin::build_collective_ops(n);
  for (const auto& v : spaces) {
    const double jj = v.j.value() * (v.j.value() + 1.0);
    const double residual =
        std::max(hilbert::max_abs(ops.j2.matrix() * v.basis - jj * v.basis),
                 hilbert::max_abs(ops.jz.matrix() * v.basis - v.m.value() * v.basis));
    const std::size_t cdim = symmetry::commutant_dimension(v.basis, action);
    const bool irr = cdim == 1;
    all_irreducible = all_irreducible && irr;
    json row;
    row["j"] = v.j.str();
    row["m"] = v.m.str();
    row["dimension"] = v.dimension;
    row["commutant_dim"] = cdim;
    row["irreducible"] = irr;
    row["residual"] = sig12(residual);
    out.push_back(std::move(row));
    table.rows.push_back({std::to_string(n), v.j.str(), v.m.str(), std::to_string(v.dimension),
                          std::to_string(cdim), irr ? "true" : "false", fmt12(residual)});
  }
  rec["space_count"] = spaces.size();
  rec["all_irreducible"] = all_irreducible;
  rec["spaces"] = std::move(out);
  rec["tolerances"] = {{"commutant_nullspace", 1e-8}, {"eigen_residual", 1e-8}};
  return emitter.emit(std::move(rec), table);
}

json asymptotic_json(const infometrics::AsymptoticRecord& a) {
  json out;
  out["m"] = sig12(a.m);
  out["rmse"] = sig12(a.rmse);
  out["delta"] = sig12(a.delta);
  out["mutual_info_nats"] = sig12(a.mutual_info);
  out["exp_neg_i"] = sig12(a.exp_neg_i);
  out["probes"] = a.note;
  return out;
}

int run_model_metrics(const std::string& model_name, int n, int qubits, long long nu, int m_count,
                      std::optional<double> x_true, int nodes, const Emitter& emitter) {
  json rec = base_record("model-metrics");
  rec["model"] = model_name;

  models::EstimationModel model;
  std::optional<infometrics::AsymptoticRecord> closed;
  double at = 0.0;
  if (model_name == "mz") {
    model = models::single_shot_mz();
    at = x_true.value_or(kPi / 2.0);
    rec["params"] = json::object();
  } else if (model_name == "binomial") {
    model = models::binomial_model(n);
    closed = infometrics::asymptotics(infometrics::ModelKind::SQL, {.n = n});
    at = x_true.value_or(0.0);
    rec["params"] = {{"n", n}};
  } else if (model_name == "qpea") {
    model = models::qpea_model(qubits);
    closed = infometrics::asymptotics(infometrics::ModelKind::QPEA, {.qubits = qubits});
    const double m = static_cast<double>(model.outcomes.size());
    at = x_true.value_or(kPi - kPi / m);
    rec["params"] = {{"qubits", qubits}};
  } else if (model_name == "deterministic") {
    model = models::deterministic_model(m_count);
    at = x_true.value_or(0.0);
    rec["params"] = {{"m", m_count}};
  } else if (model_name == "qmetrology") {
    // composite model: per-batch metrics plus the additive totals
    const auto qm = models::qmetrology_model(n, nu);
    closed = infometrics::asymptotics(infometrics::ModelKind::QMetrology, {.n = n, .nu = nu});
    at = x_true.value_or(0.0);
    const auto batch_report = infometrics::make_report(qm.batch, at, nodes);
    rec["params"] = {{"n", n}, {"nu", nu}, {"digits", qm.digits}};
    rec["x_true"] = sig12(at);
    rec["batch"] = {{"m_outcomes", batch_report.m_outcomes},
                    {"delta", sig12(batch_report.delta)},
                    {"rmse", sig12(batch_report.rmse)},
                    {"mutual_info_nats", sig12(batch_report.mutual_info)},
                    {"quadrature_error_estimate", sig12(batch_report.quadrature_error_estimate)}};
    const double total_mi = qm.digits * batch_report.mutual_info;
    rec["mutual_info_nats"] = sig12(total_mi);
    rec["mutual_info_bits"] = sig12(total_mi / std::log(2.0));
    rec["exp_neg_i"] = sig12(std::exp(-total_mi));
    rec["rmse_aggregate"] = sig12(infometrics::qmetrology_rmse_aggregate(qm.digits, nu));
    rec["m_outcomes"] = sig12(qm.outcome_count());
    rec["asymptotic"] = asymptotic_json(*closed);
    CsvTable table;
    table.header = {"model", "n", "nu", "digits", "m_outcomes", "mutual_info_nats",
                    "rmse_aggregate", "batch_mutual_info_nats"};
    table.rows.push_back({model_name, std::to_string(n), std::to_string(nu),
                          std::to_string(qm.digits), fmt12(qm.outcome_count()), fmt12(total_mi),
                          fmt12(infometrics::qmetrology_rmse_aggregate(qm.digits, nu)),
                          fmt12(batch_report.mutual_info)});
    return emitter.emit(std::move(rec), table);
  } else {
    return usage_error("unknown model '" + model_name + "'");
  }

  const auto report = infometrics::make_report(model, at, nodes, closed);
  rec["x_true"] = sig12(at);
  rec["m_outcomes"] = report.m_outcomes;
  rec["delta"] = sig12(report.delta);
  rec["rmse"] = sig12(report.rmse);
  rec["mutual_info_nats"] = sig12(report.mutual_info);
  rec["mutual_info_bits"] = sig12(report.mutual_info / std::log(2.0));
  rec["exp_neg_i"] = sig12(report.exp_neg_i);
  rec["quadrature_error_estimate"] = sig12(report.quadrature_error_estimate);
  if (report.asymptotic) rec["asymptotic"] = asymptotic_json(*report.asymptotic);

  CsvTable table;
  table.header = {"model", "x_true", "m_outcomes", "delta", "rmse",
                  "mutual_info_nats", "mutual_info_bits", "exp_neg_i", "quad_error"};
  table.rows.push_back({model_name, fmt12(at), std::to_string(report.m_outcomes),
                        fmt12(report.delta), fmt12(report.rmse), fmt12(report.mutual_info),
                        fmt12(report.mutual_info / std::log(2.0)), fmt12(report.exp_neg_i),
                        fmt12(report.quadrature_error_estimate)});
  return emitter.emit(std::move(rec), table);
}

int run_protocol(int m_count, int spin_n, double phi, long long shots, std::uint64_t seed,
                 const Emitter& emitter) {
  json rec = base_record("protocol");
  hilbert::HermitianObservable obs = [&]() {
    if (spin_n > 0) {
      const auto ops = spin::build_collective_ops(spin_n);
      return spin::splitting_observable(ops);
    }
    ComplexMatrix d = ComplexMatrix::Zero(m_count, m_count);
    for (int k = 0; k < m_count; ++k) d(k, k) = k;
    return hilbert::HermitianObservable(std::move(d));
  }();
  if (spin_n > 0) {
    rec["source"] = "spin-splitting";
    rec["n"] = spin_n;
  } else {
    rec["source"] = "ladder";
  }

  const auto spec = protocol::build_canonical(obs);
  const auto run = protocol::run(spec, phi);
  const auto prec = protocol::protocol_precision(spec);
  rec["m"] = spec.m;
  rec["phi"] = sig12(phi);
  rec["map_estimate"] = sig12(run.map_estimate);
  rec["error"] = sig12(run.error);
  rec["precision_absolute"] = sig12(prec.absolute);
  rec["precision_relative"] = sig12(prec.relative);
  json probs = json::array();
  for (double p : run.outcome_probs) probs.push_back(sig12(p));
  rec["outcome_probs"] = std::move(probs);

  std::vector<std::uint64_t> hist;
  if (shots > 0) {
    hist = protocol::sample(spec, phi, seed, static_cast<std::uint64_t>(shots));
    rec["seed"] = seed;
    rec["shots"] = shots;
    rec["histogram"] = hist;
  }

  CsvTable table;
  table.header = {"k", "outcome_phase", "probability"};
  if (!hist.empty()) table.header.push_back("counts");
  for (std::size_t k = 0; k < run.outcome_probs.size(); ++k) {
    std::vector<std::string> row = {std::to_string(k),
                                    fmt12(kTwoPi * static_cast<double>(k) / static_cast<double>(spec.m)),
                                    fmt12(run.outcome_probs[k])};
    if (!hist.empty()) row.push_back(std::to_string(hist[k]));
    table.rows.push_back(std::move(row));
  }
  return emitter.emit(std::move(rec), table);
}

int run_table2(int qpea_qubits, int sql_n, long long qm_n, long long nu, int nodes,
               const Emitter& emitter) {
  json rec = base_record("table2");
  rec["params"] = {{"qpea_qubits", qpea_qubits}, {"sql_n", sql_n}, {"qm_n", qm_n}, {"nu", nu},
                   {"nodes", nodes}};
  json rows = json::array();
  CsvTable table;
  table.header = {"measurement", "m",
                  "rmse_closed", "rmse_numeric", "rmse_dev",
                  "delta_closed", "delta_numeric", "delta_dev",
                  "mutual_info_closed", "mutual_info_numeric", "mutual_info_dev",
                  "exp_neg_i_closed", "exp_neg_i_numeric", "probes"};

  auto push_row = [&](const std::string& name, const infometrics::AsymptoticRecord& closed,
                      double rmse_num, std::optional<double> delta_num, double mi_num) {
    json row;
    row["measurement"] = name;
    row["m"] = sig12(closed.m);
    row["rmse_closed"] = sig12(closed.rmse);
    row["rmse_numeric"] = sig12(rmse_num);
    row["rmse_dev"] = sig12(std::abs(rmse_num - closed.rmse));
    row["delta_closed"] = sig12(closed.delta);
    if (delta_num) {
      row["delta_numeric"] = sig12(*delta_num);
      row["delta_dev"] = sig12(std::abs(*delta_num - closed.delta));
    } else {
      row["delta_numeric"] = nullptr;
      row["delta_dev"] = nullptr;
    }
    row["mutual_info_closed"] = sig12(closed.mutual_info);
    row["mutual_info_numeric"] = sig12(mi_num);
    row["mutual_info_dev"] = sig12(std::abs(mi_num - closed.mutual_info));
    row["exp_neg_i_closed"] = sig12(closed.exp_neg_i);
    row["exp_neg_i_numeric"] = sig12(std::exp(-mi_num));
    row["probes"] = closed.note;
    rows.push_back(row);
    table.rows.push_back({name, fmt12(closed.m), fmt12(closed.rmse), fmt12(rmse_num),
                          fmt12(std::abs(rmse_num - closed.rmse)), fmt12(closed.delta),
                          delta_num ? fmt12(*delta_num) : "", delta_num ? fmt12(std::abs(*delta_num - closed.delta)) : "",
                          fmt12(closed.mutual_info), fmt12(mi_num),
                          fmt12(std::abs(mi_num - closed.mutual_info)), fmt12(closed.exp_neg_i),
                          fmt12(std::exp(-mi_num)), closed.note});
  };

  {
    const auto closed = infometrics::asymptotics(infometrics::ModelKind::SQL, {.n = sql_n});
    const auto model = models::binomial_model(sql_n);
    const double mi = infometrics::mutual_information(model, nodes);
    const double rm = infometrics::rmse(model, 0.0);
    push_row("SQL", closed, rm, infometrics::precision(model), mi);
  }
  {
    const auto closed = infometrics::asymptotics(infometrics::ModelKind::QPEA, {.qubits = qpea_qubits});
    const auto model = models::qpea_model(qpea_qubits);
    const double m = static_cast<double>(model.outcomes.size());
    const double mi = infometrics::mutual_information(model, nodes);
    const double rm = infometrics::rmse(model, kPi - kPi / m);
    push_row("QPEA", closed, rm, infometrics::precision(model), mi);
  }
  {
    const auto closed =
        infometrics::asymptotics(infometrics::ModelKind::QMetrology, {.n = qm_n, .nu = nu});
    const auto qm = models::qmetrology_model(qm_n, nu);
    const double batch_mi = infometrics::mutual_information(qm.batch, nodes);
    const double mi = qm.digits * batch_mi;
    const double rm = infometrics::qmetrology_rmse_aggregate(qm.digits, nu);
    push_row("Q-Metrology", closed, rm, std::nullopt, mi);
    rows.back()["batch_mutual_info_numeric"] = sig12(batch_mi);
    rows.back()["batch_mutual_info_closed_halflog"] = sig12(0.5 * std::log(static_cast<double>(nu)));
  }

  rec["rows"] = std::move(rows);
  return emitter.emit(std::move(rec), table);
}

int run_fig1(const std::string& panel, int n, int qubits, int points, const Emitter& emitter) {
  json rec = base_record("fig1");
  rec["panel"] = panel;
  json panels = json::array();
  std::optional<CsvTable> table;

  auto make_a = [&]() {
    const auto m = models::single_shot_mz();
    json p;
    p["panel"] = "a";
    json phi = json::array(), pm = json::array(), pp = json::array();
    CsvTable t;
    t.header = {"phi", "p_minus", "p_plus"};
    for (int i = 0; i < points; ++i) {
      const double x = kTwoPi * i / (points - 1.0);
      phi.push_back(sig12(x));
      pm.push_back(sig12(m.probability(0, x)));
      pp.push_back(sig12(m.probability(1, x)));
      t.rows.push_back({fmt12(x), fmt12(m.probability(0, x)), fmt12(m.probability(1, x))});
    }
    p["series"] = {{"phi", phi}, {"p_minus", pm}, {"p_plus", pp}};
    panels.push_back(p);
    return t;
  };
  auto make_grid = [&](const models::EstimationModel& m, const std::string& label,
                       const std::string& param_name, double lo, double hi) {
    json p;
    p["panel"] = label;
    json xs = json::array();
    std::vector<json> series(m.outcomes.size());
    CsvTable t;
    t.header = {param_name};
    for (std::size_t r = 0; r < m.outcomes.size(); ++r) t.header.push_back("p_" + std::to_string(r));
    for (int i = 0; i < points; ++i) {
      const double x = lo + (hi - lo) * i / (points - 1.0);
      xs.push_back(sig12(x));
      std::vector<std::string> row = {fmt12(x)};
      for (std::size_t r = 0; r < m.outcomes.size(); ++r) {
        const double v = m.probability(r, x);
        series[r].push_back(sig12(v));
        row.push_back(fmt12(v));
      }
      t.rows.push_back(std::move(row));
    }
    p["series"][param_name] = xs;
    for (std::size_t r = 0; r < series.size(); ++r) p["series"]["p_" + std::to_string(r)] = series[r];
    panels.push_back(p);
    return t;
  };

  if (panel == "a") {
    table = make_a();
  } else if (panel == "b") {
    table = make_grid(models::binomial_model(n), "b", "x", -1.0, 1.0);
  } else if (panel == "c") {
    table = make_grid(models::qpea_model(qubits), "c", "phi", 0.0, kTwoPi);
  } else if (panel == "all") {
    make_a();
    make_grid(models::binomial_model(n), "b", "x", -1.0, 1.0);
    make_grid(models::qpea_model(qubits), "c", "phi", 0.0, kTwoPi);
    table.reset();  // CSV needs a single panel
  } else {
    return usage_error("unknown fig1 panel '" + panel + "'");
  }
  rec["panels"] = std::move(panels);
  return emitter.emit(std::move(rec), table);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"precision-atlas: outcome-count bounds, irreducibility certificates and "
               "precision metrics for collective qubit measurements"};
  app.require_subcommand(1);
  app.set_version_flag("--cli-version", PATLAS_VERSION_STRING);

  Emitter emitter;
  bool allow_large = false;
  app.add_option("--format", emitter.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", emitter.output_path, "Write the record to this path instead of stdout");
  app.add_flag("--allow-large", allow_large, "Lift the desk-scale guardrail on n");

  // bound
  int bound_n = 4;
  bool bound_identical = false;
  auto* bound_cmd = app.add_subcommand("bound", "Outcome-count bound for n qubits");
  bound_cmd->add_option("--n", bound_n, "Particle count")->required()->check(CLI::PositiveNumber);
  bound_cmd->add_flag("--identical", bound_identical, "Report the identical-particle bound");

  // spectrum
  int spectrum_n = 4;
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "Distinct-eigenvalue count of the splitting observable");
  spectrum_cmd->add_option("--n", spectrum_n, "Particle count")->required()->check(CLI::PositiveNumber);

  // irreducibility
  int irr_n = 4;
  auto* irr_cmd =
      app.add_subcommand("irreducibility", "Commutant certificates for every joint eigenspace");
  irr_cmd->add_option("--n", irr_n, "Particle count")->required()->check(CLI::PositiveNumber);

  // model-metrics
  std::string mm_model = "binomial";
  int mm_n = 100;
  int mm_qubits = 6;
  long long mm_nu = 100;
  int mm_m = 8;
  int mm_nodes = 64;
  double mm_x = 0.0;
  auto* mm_cmd = app.add_subcommand("model-metrics", "Precision/RMSE/information for a model");
  mm_cmd->add_option("--model", mm_model, "mz | binomial | qpea | deterministic | qmetrology")
      ->required();
  mm_cmd->add_option("--n", mm_n, "Repetitions (binomial) or probes (qmetrology)")
      ->check(CLI::PositiveNumber);
  mm_cmd->add_option("--qubits", mm_qubits, "Register size (qpea)")->check(CLI::Range(1, 12));
  mm_cmd->add_option("--nu", mm_nu, "Batch repetitions (qmetrology)")->check(CLI::PositiveNumber);
  mm_cmd->add_option("--m", mm_m, "Outcome count (deterministic)")->check(CLI::Range(1, 65536));
  mm_cmd->add_option("--nodes", mm_nodes, "Quadrature nodes per panel")->check(CLI::Range(32, 512));
  auto* mm_x_opt = mm_cmd->add_option("--x-true", mm_x, "True parameter value (model units)");

  // protocol
  int proto_m = 0;
  int proto_spin_n = 0;
  double proto_phi = 1.0;
  long long proto_shots = 0;
  std::uint64_t proto_seed = 0;
  auto* proto_cmd = app.add_subcommand("protocol", "Run the canonical measurement protocol");
  auto* proto_m_opt = proto_cmd->add_option("--m", proto_m, "Ladder observable with M levels")
                          ->check(CLI::Range(2, 4096));
  proto_cmd->add_option("--spin-n", proto_spin_n, "Use the n-qubit splitting observable instead")
      ->excludes(proto_m_opt);
  proto_cmd->add_option("--phi", proto_phi, "True phase in [0, 2pi)")->required();
  proto_cmd->add_option("--shots", proto_shots, "Also sample this many shots")
      ->check(CLI::NonNegativeNumber);
  proto_cmd->add_option("--seed", proto_seed, "Sampling seed");

  // table2
  int t2_qubits = 10;
  int t2_sql_n = 1024;
  long long t2_qm_n = 100;
  long long t2_nu = 100;
  int t2_nodes = 64;
  auto* t2_cmd = app.add_subcommand("table2", "Numeric versus closed-form comparison rows");
  t2_cmd->add_option("--qpea-qubits", t2_qubits, "QPEA register size")->check(CLI::Range(1, 12));
  t2_cmd->add_option("--sql-n", t2_sql_n, "Binomial repetition count")->check(CLI::Range(1, 65536));
  t2_cmd->add_option("--qm-n", t2_qm_n, "Metrology probe count (power of 10)");
  t2_cmd->add_option("--nu", t2_nu, "Metrology batch repetitions");
  t2_cmd->add_option("--nodes", t2_nodes, "Quadrature nodes per panel")->check(CLI::Range(32, 512));

  // fig1
  std::string f1_panel = "all";
  int f1_n = 16;
  int f1_qubits = 4;
  int f1_points = 201;
  auto* f1_cmd = app.add_subcommand("fig1", "Probability-distribution series for the figure panels");
  f1_cmd->add_option("--panel", f1_panel, "a | b | c | all");
  f1_cmd->add_option("--n", f1_n, "Repetitions for panel b")->check(CLI::Range(1, 1024));
  f1_cmd->add_option("--qubits", f1_qubits, "Register size for panel c")->check(CLI::Range(1, 10));
  f1_cmd->add_option("--points", f1_points, "Grid points per series")->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (bound_cmd->parsed()) {
      return run_bound(bound_n, bound_identical, emitter);
    }
    if (spectrum_cmd->parsed()) {
      const int cap = effective_cap(12, 12, allow_large);
      if (spectrum_n > cap) {
        return usage_error("spectrum: n = " + std::to_string(spectrum_n) +
                           " exceeds the configured maximum " + std::to_string(cap));
      }
      return run_spectrum(spectrum_n, emitter);
    }
    if (irr_cmd->parsed()) {
      const int cap = effective_cap(7, 8, allow_large);
      if (irr_n > cap) {
        return usage_error("irreducibility: n = " + std::to_string(irr_n) +
                           " exceeds the configured maximum " + std::to_string(cap) +
                           " (raise with --allow-large or PRECISION_ATLAS_MAX_N)");
      }
      if (irr_n < 2) return usage_error("irreducibility: n must be >= 2");
      return run_irreducibility(irr_n, emitter);
    }
    if (mm_cmd->parsed()) {
      const bool x_set = mm_x_opt->count() > 0;
      return run_model_metrics(mm_model, mm_n, mm_qubits, mm_nu, mm_m,
                               x_set ? std::optional<double>(mm_x) : std::nullopt, mm_nodes,
                               emitter);
    }
    if (proto_cmd->parsed()) {
      if (proto_m <= 0 && proto_spin_n <= 0) {
        return usage_error("protocol: provide --m or --spin-n");
      }
      if (proto_spin_n > effective_cap(12, 12, allow_large)) {
        return usage_error("protocol: --spin-n exceeds the configured maximum");
      }
      return run_protocol(proto_m, proto_spin_n, proto_phi, proto_shots, proto_seed, emitter);
    }
    if (t2_cmd->parsed()) {
      return run_table2(t2_qubits, t2_sql_n, t2_qm_n, t2_nu, t2_nodes, emitter);
    }
    if (f1_cmd->parsed()) {
      return run_fig1(f1_panel, f1_n, f1_qubits, f1_points, emitter);
    }
  } catch (const std::exception& e) {
    json err = base_record(app.get_subcommands().empty() ? "unknown"
                                                         : app.get_subcommands()[0]->get_name());
    err["error"] = {{"message", e.what()}};
    err["timestamp"] = iso_utc_now();
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return usage_error("no subcommand given");
}
