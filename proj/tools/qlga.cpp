// Command-line front end: one subcommand per headline experiment, CSV/JSON
// output with deterministic bytes for a fixed seed.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlga/experiment.hpp"
#include "qlga/gauge.hpp"
#include "qlga/rng.hpp"
#include "qlga/textio.hpp"

using json = nlohmann::ordered_json;
using namespace qlga;

namespace {

struct CommonOut {
  std::string format = "csv";
  std::string out = "-";
};

void add_common(CLI::App* cmd, CommonOut& common) {
  cmd->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", common.out, "output path, - for stdout")
      ->capture_default_str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  file << text;
}

json cell_to_json(const Cell& cell) {
  if (std::holds_alternative<std::int64_t>(cell))
    return std::get<std::int64_t>(cell);
  if (std::holds_alternative<double>(cell)) return std::get<double>(cell);
  return std::get<std::string>(cell);
}

std::string table_to_json(const Table& table) {
  json doc;
  doc["rows"] = json::array();
  for (const auto& row : table.rows) {
    json obj;
    for (std::size_t i = 0; i < table.header.size(); ++i)
      obj[table.header[i]] = cell_to_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

void emit_table(const Table& table, const CommonOut& common) {
  write_text(common.out,
             common.format == "csv" ? to_csv(table) : table_to_json(table));
}

Topology parse_topology(const std::string& name, double zl, double zr) {
  if (name == "periodic") return Topology::periodic();
  if (name == "bounded") return Topology::bounded(zl, zr);
  throw CLI::ValidationError("--topology", "must be periodic or bounded");
}

int cmd_spectral_flow(const std::string& theta_str, int size, int n_delta,
                      const std::string& topology, const CommonOut& common) {
  const Lattice lattice(size, parse_topology(topology, 0.0, 0.0));
  const MassAngle theta(parse_angle(theta_str));
  const SpectralFlowResult flow = spectral_flow(lattice, theta, n_delta);

  Table table;
  table.header = {"delta", "branch_index", "omega"};
  for (int i = 0; i < flow.delta_grid.size(); ++i)
    for (int b = 0; b < flow.branches.rows(); ++b)
      table.rows.push_back({flow.delta_grid[i],
                            static_cast<std::int64_t>(b),
                            wrap_angle(flow.branches(b, i))});
  emit_table(table, common);

  if (!flow.periodic) {
    double span = 0.0;
    for (int b = 0; b < flow.branches.rows(); ++b)
      span = std::max(span, flow.branches.row(b).maxCoeff() -
                                flow.branches.row(b).minCoeff());
    std::cerr << "bounded topology: spectrum constant in delta (max branch "
                 "span "
              << format_shortest(span) << "), flow = 0\n";
  }
  return 0;
}

int cmd_detect(const std::string& theta_str, const std::string& a_str,
               const std::string& k0_str, int size, std::optional<int> x0,
               std::optional<double> sigma, int n_samples, double epsilon,
               std::uint64_t seed, const std::string& topology,
               const CommonOut& common) {
  DetectionConfig config;
  config.lattice_size = size;
  config.theta = parse_angle(theta_str);
  config.a_uniform = parse_angle(a_str);
  config.packet.k0 = parse_angle(k0_str);
  config.packet.x0 = x0.value_or(size / 2);
  config.packet.sigma = sigma.value_or(size / 8.0);
  config.packet.branch = +1;
  config.n_samples = n_samples;
  config.epsilon = epsilon;
  config.seed = seed;

  const ExperimentReport report =
      run_detection(config, parse_topology(topology, 0.0, 0.0));

  if (common.format == "json") {
    json doc;
    doc["decision"] = to_string(report.decision);
    doc["sample_mean"] = report.sample_mean;
    doc["baseline_mean"] = report.baseline_mean;
    doc["threshold"] = report.threshold;
    doc["samples_used"] = report.samples_used;
    doc["ground_truth"] = to_string(report.ground_truth);
    doc["correct"] = report.correct;
    write_text(common.out, doc.dump(2) + "\n");
  } else {
    Table table;
    table.header = {"decision",  "sample_mean",  "baseline_mean", "threshold",
                    "samples_used", "ground_truth", "correct"};
    table.rows.push_back({std::string(to_string(report.decision)),
                          report.sample_mean, report.baseline_mean,
                          report.threshold,
                          static_cast<std::int64_t>(report.samples_used),
                          std::string(to_string(report.ground_truth)),
                          std::string(report.correct ? "true" : "false")});
    emit_table(table, common);
  }
  return 0;
}

int cmd_classical(int size, int trials, std::uint64_t seed,
                  const std::string& topology, std::optional<int> start,
                  std::optional<int> direction, bool exhaustive,
                  const CommonOut& common) {
  const Lattice lattice(size, parse_topology(topology, 0.0, 0.0));
  const int cutoff = 2 * size;

  std::vector<ClassicalRun> runs;
  if (exhaustive) {
    for (int s = 0; s < size; ++s)
      for (int d : {+1, -1})
        runs.push_back(classical_baseline(lattice, s, d, cutoff));
  } else {
    CounterRng rng(seed);
    for (int t = 0; t < trials; ++t) {
      const int s = start.value_or(static_cast<int>(rng.next_below(size)));
      const int d = direction.value_or(rng.next_unit() < 0.5 ? +1 : -1);
      runs.push_back(classical_baseline(lattice, s, d, cutoff));
    }
  }

  double mean = 0.0;
  for (const auto& run : runs) mean += run.steps_to_detect;
  mean /= runs.size();

  Table table;
  table.header = {"trial", "start", "direction", "steps_to_detect",
                  "hit_cutoff", "decision"};
  for (std::size_t t = 0; t < runs.size(); ++t)
    table.rows.push_back({static_cast<std::int64_t>(t),
                          static_cast<std::int64_t>(runs[t].start_site),
                          static_cast<std::int64_t>(runs[t].direction),
                          static_cast<std::int64_t>(runs[t].steps_to_detect),
                          std::string(runs[t].hit_cutoff ? "true" : "false"),
                          std::string(to_string(runs[t].decision))});
  table.rows.push_back({std::string("mean"), std::string(""), std::string(""),
                        mean, std::string(""), std::string("")});
  emit_table(table, common);
  return 0;
}

int cmd_gauge_check(const std::string& theta_str, int size,
                    const std::string& topology, std::uint64_t seed,
                    bool inject_fault, const CommonOut& common) {
  const Lattice lattice(size, parse_topology(topology, 0.0, 0.0));
  const MassAngle theta(parse_angle(theta_str));
  CounterRng rng(seed);

  auto rand_vec = [&](double lo, double hi) {
    Eigen::VectorXd v(size);
    for (int i = 0; i < size; ++i) v[i] = rng.next_in(lo, hi);
    return v;
  };
  const FieldConfig fields{rand_vec(-kPi, kPi), rand_vec(-kPi, kPi)};
  const GaugeFunction g{rand_vec(-kPi, kPi), rand_vec(-kPi, kPi)};
  auto op = build_evolution(lattice, theta, fields);
  if (inject_fault) op.dense(2, 0) += 1e-3;

  struct Check {
    std::string name;
    double residual;
    double tolerance;
  };
  std::vector<Check> checks;

  checks.push_back({"unitarity", check_unitarity(op), 1e-12});

  const Eigen::MatrixXcd direct = transform_operator(op, g);
  const Eigen::MatrixXcd rebuilt =
      build_evolution(lattice, theta, transform_fields(fields, g, lattice))
          .dense;
  checks.push_back({"commuting_diagram",
                    (direct - rebuilt).cwiseAbs().maxCoeff(), 1e-12});

  checks.push_back({"block_formulas", verify_block_formulas(op, g), 1e-12});

  // covariance on a random state
  Eigen::VectorXcd raw(2 * size);
  for (int i = 0; i < 2 * size; ++i)
    raw[i] = Complex(rng.next_in(-1, 1), rng.next_in(-1, 1));
  WaveFunction psi{std::move(raw)};
  psi.normalize();
  const Eigen::VectorXcd lhs =
      direct * apply_site_phase(psi, g.alpha_t).data();
  const Eigen::VectorXcd rhs =
      apply_site_phase(step(op, psi), g.alpha_tplus1).data();
  checks.push_back(
      {"state_covariance", (lhs - rhs).cwiseAbs().maxCoeff(), 1e-12});

  // gauge fixing zeroes every column of A that enters the evolution
  const GaugeFunction fix = gauge_fix(fields, lattice);
  const FieldConfig fixed = transform_fields(fields, fix, lattice);
  double residual_a = 0.0;
  for (int x = 1; x < size; ++x)
    residual_a = std::max(residual_a, std::abs(fixed.a[x]));
  checks.push_back({"gauge_fix_zeroes_A", residual_a, 1e-12});

  if (lattice.topology.is_periodic()) {
    const auto loop_before = wilson_loop(fields, lattice);
    const auto loop_after =
        wilson_loop(transform_fields(fields, g, lattice), lattice);
    checks.push_back(
        {"wilson_loop_invariance",
         std::abs(loop_after.unit_complex - loop_before.unit_complex), 1e-12});
    checks.push_back({"gauge_fix_preserves_loop",
                      std::abs(std::polar(1.0, fixed.a[0]) -
                               loop_before.unit_complex),
                      1e-12});
  } else {
    // the potential is gauge-removable: the spectrum cannot move
    FieldConfig only_a = fields;
    only_a.phi.setZero();
    const Eigen::VectorXd with_a =
        spectrum(build_evolution(lattice, theta, only_a)).eigenphases;
    const Eigen::VectorXd no_a =
        spectrum(build_evolution(lattice, theta, FieldConfig::zero(size)))
            .eigenphases;
    checks.push_back({"A_gauge_removable_spectrum_match",
                      (with_a - no_a).cwiseAbs().maxCoeff(), 1e-9});
  }

  Table table;
  table.header = {"check", "residual", "tolerance", "pass"};
  bool all_pass = true;
  for (const auto& c : checks) {
    const bool pass = c.residual <= c.tolerance;
    all_pass = all_pass && pass;
    table.rows.push_back({c.name, c.residual, c.tolerance,
                          std::string(pass ? "true" : "false")});
  }
  emit_table(table, common);
  if (!all_pass) {
    std::cerr << "gauge-check: at least one residual exceeded its tolerance\n";
    return 1;
  }
  return 0;
}

int cmd_scaling(const std::vector<int>& sizes, int trials, double epsilon,
                std::uint64_t seed, const CommonOut& common) {
  if (sizes.size() < 2)
    throw CLI::ValidationError("--sizes", "need at least 2 sizes");
  ProtocolParams params;
  params.epsilon = epsilon;
  const auto rows = scaling_study(sizes, trials, seed, params);

  Table table;
  table.header = {"size", "quantum_n_samples", "quantum_error_rate",
                  "classical_mean_steps"};
  for (const auto& row : rows) {
    const double pooled =
        0.5 * (row.error_rate_periodic + row.error_rate_bounded);
    table.rows.push_back({static_cast<std::int64_t>(row.size),
                          static_cast<std::int64_t>(row.n_samples), pooled,
                          row.classical_mean_steps_enum});
  }
  emit_table(table, common);
  return 0;
}

int cmd_dispersion(const std::string& theta_str, const std::string& delta_str,
                   int size, const CommonOut& common) {
  const MassAngle theta(parse_angle(theta_str));
  const double delta = parse_angle(delta_str);
  const Lattice lattice(size, Topology::periodic());
  const FieldConfig f = FieldConfig::uniform(size, 0.0, delta / size);
  const Spectrum s = spectrum(build_evolution(lattice, theta, f));

  std::vector<double> analytic;
  for (int m = 0; m < size; ++m) {
    const auto d = dispersion(theta, kTwoPi * m / size, delta / size);
    analytic.push_back(d.omega_plus);
    analytic.push_back(wrap_angle(d.omega_minus));
  }
  std::sort(analytic.begin(), analytic.end());

  Table table;
  table.header = {"index", "omega_numeric", "omega_analytic", "abs_diff"};
  for (int j = 0; j < 2 * size; ++j)
    table.rows.push_back({static_cast<std::int64_t>(j), s.eigenphases[j],
                          analytic[j],
                          std::abs(s.eigenphases[j] - analytic[j])});
  emit_table(table, common);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-particle 1D quantum lattice gas simulator"};
  app.require_subcommand(1);

  // spectral-flow
  auto* flow = app.add_subcommand(
      "spectral-flow", "eigenphase branches over the holonomy sweep");
  int flow_size = 16, flow_ndelta = 64;
  std::string flow_theta = "0.5235987755982988";
  std::string flow_topology = "periodic";
  CommonOut flow_out;
  flow->add_option("--size", flow_size)->capture_default_str();
  flow->add_option("--theta", flow_theta, "mass angle (accepts pi literals)")
      ->capture_default_str();
  flow->add_option("--n-delta", flow_ndelta)->capture_default_str();
  flow->add_option("--topology", flow_topology)->capture_default_str();
  add_common(flow, flow_out);

  // detect
  auto* detect = app.add_subcommand(
      "detect", "quantum topology detection from frequency samples");
  int det_size = 64, det_nsamples = 25;
  std::string det_theta = "pi/6", det_a = "0.2", det_k0 = "pi/2";
  std::optional<int> det_x0;
  std::optional<double> det_sigma;
  double det_eps = 0.05;
  std::uint64_t det_seed = 0;
  std::string det_topology = "periodic";
  CommonOut det_out;
  detect->add_option("--size", det_size)->capture_default_str();
  detect->add_option("--theta", det_theta)->capture_default_str();
  detect->add_option("--A", det_a, "uniform vector potential")
      ->capture_default_str();
  detect->add_option("--k0", det_k0)->capture_default_str();
  detect->add_option("--x0", det_x0, "packet center (default size/2)");
  detect->add_option("--sigma", det_sigma, "packet width (default size/8)");
  detect->add_option("--n-samples", det_nsamples)->capture_default_str();
  detect->add_option("--epsilon", det_eps)->capture_default_str();
  detect->add_option("--seed", det_seed)->required();
  detect->add_option("--topology", det_topology, "ground truth")
      ->capture_default_str();
  add_common(detect, det_out);

  // classical
  auto* classical = app.add_subcommand(
      "classical", "deterministic streaming baseline, cutoff 2|L|");
  int cls_size = 16, cls_trials = 100;
  std::uint64_t cls_seed = 0;
  std::string cls_topology = "bounded";
  std::optional<int> cls_start, cls_direction;
  bool cls_exhaustive = false;
  CommonOut cls_out;
  classical->add_option("--size", cls_size)->capture_default_str();
  classical->add_option("--trials", cls_trials)->capture_default_str();
  classical->add_option("--seed", cls_seed)->required();
  classical->add_option("--topology", cls_topology)->capture_default_str();
  classical->add_option("--start", cls_start, "pin the start site");
  classical->add_option("--direction", cls_direction, "pin the direction");
  classical->add_flag("--exhaustive", cls_exhaustive,
                      "enumerate every (start, direction) pair");
  add_common(classical, cls_out);

  // gauge-check
  auto* gauge = app.add_subcommand(
      "gauge-check", "randomized gauge-algebra verification");
  int gc_size = 16;
  std::string gc_theta = "pi/6", gc_topology = "periodic";
  std::uint64_t gc_seed = 0;
  bool gc_fault = false;
  CommonOut gc_out;
  gauge->add_option("--size", gc_size)->capture_default_str();
  gauge->add_option("--theta", gc_theta)->capture_default_str();
  gauge->add_option("--topology", gc_topology)->capture_default_str();
  gauge->add_option("--seed", gc_seed)->required();
  gauge->add_flag("--inject-fault", gc_fault,
                  "perturb the operator to exercise the failure path");
  add_common(gauge, gc_out);

  // scaling
  auto* scaling = app.add_subcommand(
      "scaling", "constant-sample quantum protocol vs classical walker");
  std::vector<int> sc_sizes{32, 64, 128, 256};
  int sc_trials = 500;
  double sc_eps = 0.05;
  std::uint64_t sc_seed = 0;
  CommonOut sc_out;
  scaling->add_option("--sizes", sc_sizes)->delimiter(',')->capture_default_str();
  scaling->add_option("--trials", sc_trials)->capture_default_str();
  scaling->add_option("--epsilon", sc_eps)->capture_default_str();
  scaling->add_option("--seed", sc_seed)->required();
  add_common(scaling, sc_out);

  // dispersion
  auto* disp = app.add_subcommand(
      "dispersion", "numeric vs analytic eigenphases on the ring");
  int dp_size = 16;
  std::string dp_theta = "pi/6", dp_delta = "0";
  CommonOut dp_out;
  disp->add_option("--size", dp_size)->capture_default_str();
  disp->add_option("--theta", dp_theta)->capture_default_str();
  disp->add_option("--delta", dp_delta, "holonomy angle")->capture_default_str();
  add_common(disp, dp_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*flow)
      return cmd_spectral_flow(flow_theta, flow_size, flow_ndelta,
                               flow_topology, flow_out);
    if (*detect)
      return cmd_detect(det_theta, det_a, det_k0, det_size, det_x0, det_sigma,
                        det_nsamples, det_eps, det_seed, det_topology,
                        det_out);
    if (*classical)
      return cmd_classical(cls_size, cls_trials, cls_seed, cls_topology,
                           cls_start, cls_direction, cls_exhaustive, cls_out);
    if (*gauge)
      return cmd_gauge_check(gc_theta, gc_size, gc_topology, gc_seed, gc_fault,
                             gc_out);
    if (*scaling)
      return cmd_scaling(sc_sizes, sc_trials, sc_eps, sc_seed, sc_out);
    if (*disp) return cmd_dispersion(dp_theta, dp_delta, dp_size, dp_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
