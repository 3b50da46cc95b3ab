#include "qlga/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qlga/gauge.hpp"
#include "qlga/rng.hpp"

namespace qlga {

namespace {

// Acklam's rational approximation to the standard normal quantile, sharpened
// by one Halley step against erfc.  Accurate to ~1e-15 over (0, 1).
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must be in (0, 1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2 * kPi) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

// Shift every site's pair one site to the right: (T psi)(x) = psi(x - 1).
Eigen::VectorXcd translate(const Eigen::VectorXcd& v, int n) {
  Eigen::VectorXcd out(2 * n);
  for (int x = 0; x < n; ++x) {
    const int xm = (x + n - 1) % n;
    out[2 * x] = v[2 * xm];
    out[2 * x + 1] = v[2 * xm + 1];
  }
  return out;
}

// keep continued values on the +pi side of the wrap seam, matching the
// spectrum convention
double snap_seam(double omega) {
  if (omega <= -kPi) omega += kTwoPi;
  if (omega < -kPi + 1e-12) omega = kPi;
  return omega;
}

FrequencyDistribution make_distribution(std::vector<double> values,
                                        std::vector<double> probs) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return values[a] < values[b]; });
  FrequencyDistribution dist;
  std::vector<double> sup, pr;
  for (int idx : order) {
    if (!sup.empty() && values[idx] - sup.back() < 1e-8) {
      // merge collided continued values into one outcome
      pr.back() += probs[idx];
    } else {
      sup.push_back(values[idx]);
      pr.push_back(probs[idx]);
    }
  }
  dist.support = Eigen::Map<Eigen::VectorXd>(sup.data(), sup.size());
  dist.probabilities = Eigen::Map<Eigen::VectorXd>(pr.data(), pr.size());
  const double total = dist.probabilities.sum();
  if (std::abs(total - 1.0) > 1e-10)
    throw std::runtime_error("detection_distribution: probabilities do not sum to 1");
  dist.probabilities /= total;
  return dist;
}

}  // namespace

const char* to_string(Decision d) {
  return d == Decision::kPeriodic ? "periodic" : "bounded";
}

FrequencyDistribution detection_distribution(const Lattice& lattice,
                                             MassAngle theta,
                                             const PacketSpec& packet,
                                             double a_uniform) {
  const int n = lattice.size;
  const WaveFunction psi = prepare_packet(lattice, theta, packet);
  const EvolutionOperator u0 =
      build_evolution(lattice, theta, FieldConfig::zero(n));
  const EvolutionOperator ua = build_evolution(
      lattice, theta, FieldConfig::uniform(n, 0.0, a_uniform));
  const Spectrum s0 = spectrum(u0);
  const Spectrum sa = spectrum(ua);

  if (!lattice.topology.is_periodic()) {
    // The potential is gauge equivalent to zero, so no branch moves; check
    // that before reading the zero-field distribution off unchanged.
    const double drift =
        (s0.eigenphases - sa.eigenphases).cwiseAbs().maxCoeff();
    if (drift > 1e-9)
      throw std::runtime_error(
          "detection_distribution: bounded spectrum moved under A");
    return frequency_distribution(psi, s0);
  }

  // Ring: split degenerate zero-field eigenspaces by lattice momentum, then
  // continue each mode along its dispersion branch from s = 0 to s = 1.
  std::vector<double> values;
  std::vector<double> probs;
  values.reserve(2 * n);
  probs.reserve(2 * n);

  const auto groups = group_degenerate(s0.eigenphases);
  for (const auto& [first, last] : groups) {
    const int m = last - first;
    const Eigen::MatrixXcd vg = s0.eigenvectors.middleCols(first, m);
    Eigen::MatrixXcd tvg(2 * n, m);
    for (int c = 0; c < m; ++c) tvg.col(c) = translate(vg.col(c), n);
    const Eigen::MatrixXcd g = vg.adjoint() * tvg;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("detection_distribution: momentum split failed");
    // Orthonormalize the rotation in group coordinates: for a degenerate g
    // the solver may hand back nearly parallel eigenvectors, and the adapted
    // basis must stay inside the eigenspace spanned by vg.
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(es.eigenvectors());
    const Eigen::MatrixXcd rotation =
        qr.householderQ() * Eigen::MatrixXcd::Identity(m, m);
    const Eigen::MatrixXcd w = vg * rotation;

    // momenta of the adapted modes
    std::vector<double> ks(m);
    for (int c = 0; c < m; ++c) {
      const Complex t_eig = w.col(c).dot(translate(w.col(c), n));
      if (std::abs(std::abs(t_eig) - 1.0) > 1e-6)
        throw std::runtime_error(
            "detection_distribution: adapted mode is not a momentum state");
      ks[c] = -std::arg(t_eig);
    }

    std::vector<bool> done(m, false);
    for (int c = 0; c < m; ++c) {
      if (done[c]) continue;
      // a second mode with the same momentum means the whole 2-dimensional
      // k-sector is degenerate (massless band touching); the sector is
      // invariant under U^{(0,A)}, whose restriction then gives the
      // continued phases directly
      int partner = -1;
      for (int c2 = c + 1; c2 < m; ++c2)
        if (!done[c2] && std::abs(wrap_angle(ks[c2] - ks[c])) < 1e-6)
          partner = c2;
      if (partner >= 0) {
        Eigen::MatrixXcd sector(2 * n, 2);
        sector.col(0) = w.col(c);
        sector.col(1) = w.col(partner);
        const Eigen::MatrixXcd b = sector.adjoint() * (ua.dense * sector);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> bes(b);
        const Eigen::MatrixXcd adapted = sector * bes.eigenvectors();
        for (int c2 = 0; c2 < 2; ++c2) {
          values.push_back(snap_seam(-std::arg(bes.eigenvalues()[c2])));
          Eigen::VectorXcd col = adapted.col(c2).normalized();
          probs.push_back(std::norm(col.dot(psi.data())));
        }
        done[c] = done[partner] = true;
        continue;
      }
      const Dispersion at_zero = dispersion(theta, ks[c], 0.0);
      const double w0 = s0.eigenphases[first];
      const int sign =
          std::abs(wrap_angle(w0 - at_zero.omega_plus)) <
                  std::abs(wrap_angle(w0 - at_zero.omega_minus))
              ? +1
              : -1;
      if (std::abs(wrap_angle(w0 - (sign > 0 ? at_zero.omega_plus
                                             : at_zero.omega_minus))) > 1e-7)
        throw std::runtime_error(
            "detection_distribution: mode does not sit on a dispersion branch");
      const Dispersion at_a = dispersion(theta, ks[c], a_uniform);
      values.push_back(snap_seam(sign > 0 ? at_a.omega_plus : at_a.omega_minus));
      probs.push_back(std::norm(w.col(c).dot(psi.data())));
      done[c] = true;
    }
  }

  // the continued support must be exactly the U^{(0,A)} spectrum
  std::vector<double> sorted_values = values;
  std::sort(sorted_values.begin(), sorted_values.end());
  for (int j = 0; j < 2 * n; ++j)
    if (std::abs(sorted_values[j] - sa.eigenphases[j]) > 1e-9)
      throw std::runtime_error(
          "detection_distribution: branch continuation disagrees with the "
          "applied operator's spectrum");

  return make_distribution(std::move(values), std::move(probs));
}

ExperimentReport run_detection(const DetectionConfig& config,
                               const Topology& ground_truth) {
  if (config.a_uniform <= 0)
    throw std::invalid_argument("run_detection: A must be > 0");
  const double loop_angle = wrap_positive(config.a_uniform * config.lattice_size);
  if (std::min(loop_angle, kTwoPi - loop_angle) < 1e-9)
    throw std::invalid_argument(
        "run_detection: A*|L| must not be a multiple of 2*pi");
  if (config.n_samples < 1)
    throw std::invalid_argument("run_detection: n_samples must be >= 1");

  const Lattice lattice(config.lattice_size, ground_truth);
  const MassAngle theta(config.theta);
  const FrequencyDistribution dist =
      detection_distribution(lattice, theta, config.packet, config.a_uniform);
  const std::vector<double> samples =
      sample_frequencies(dist, config.n_samples, config.seed);
  const SampleSummary summary = summarize(samples);

  ExperimentReport report;
  report.baseline_mean =
      config.packet.branch > 0
          ? dispersion(theta, config.packet.k0, 0.0).omega_plus
          : dispersion(theta, config.packet.k0, 0.0).omega_minus;
  report.threshold = report.baseline_mean + config.a_uniform / 2;
  report.sample_mean = summary.mean;
  report.samples_used = config.n_samples;
  report.decision = summary.mean > report.threshold ? Decision::kPeriodic
                                                    : Decision::kBounded;
  report.ground_truth = ground_truth.is_periodic() ? Decision::kPeriodic
                                                   : Decision::kBounded;
  report.correct = report.decision == report.ground_truth;
  return report;
}

int required_samples(double sigma_omega, double shift, double epsilon) {
  if (shift <= 0) throw std::invalid_argument("required_samples: shift must be > 0");
  if (sigma_omega < 0)
    throw std::invalid_argument("required_samples: sigma must be >= 0");
  const double z = normal_quantile(1.0 - epsilon);
  const double root = 2.0 * z * sigma_omega / shift;
  return std::max(1, static_cast<int>(std::ceil(root * root)));
}

ClassicalRun classical_baseline(const Lattice& lattice, int start,
                                int direction, int cutoff) {
  const int n = lattice.size;
  if (start < 0 || start >= n)
    throw std::invalid_argument("classical_baseline: start outside lattice");
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("classical_baseline: direction must be +-1");
  if (cutoff < 2 * n)
    throw std::invalid_argument("classical_baseline: cutoff must be >= 2|L|");

  ClassicalRun run{start, direction, cutoff, true, Decision::kPeriodic};
  if (lattice.topology.is_periodic()) return run;

  // stream until arrival at the wall ahead; the velocity flips there
  int pos = start;
  for (int t = 0; t <= cutoff; ++t) {
    if ((direction > 0 && pos == n - 1) || (direction < 0 && pos == 0)) {
      run.steps_to_detect = t;
      run.hit_cutoff = false;
      run.decision = Decision::kBounded;
      return run;
    }
    pos += direction;
  }
  return run;  // unreachable for cutoff >= 2|L|, kept for safety
}

double classical_mean_steps_enumerated(int size) {
  const Lattice lattice(size, Topology::bounded(0.0, 0.0));
  long long total = 0;
  for (int s = 0; s < size; ++s)
    for (int d : {+1, -1})
      total += classical_baseline(lattice, s, d, 2 * size).steps_to_detect;
  return static_cast<double>(total) / (2.0 * size);
}

PacketSpec default_packet(int size, const ProtocolParams& params) {
  return {params.k0, size / 2, size / params.sigma_divisor, +1};
}

int calibrate_samples(int size, const ProtocolParams& params) {
  const MassAngle theta(params.theta);
  const PacketSpec packet = default_packet(size, params);
  const FrequencyDistribution dist_p = detection_distribution(
      Lattice(size, Topology::periodic()), theta, packet, params.a_uniform);
  const FrequencyDistribution dist_b =
      detection_distribution(Lattice(size, Topology::bounded(0.0, 0.0)),
                             theta, packet, params.a_uniform);
  const double mu_p = dist_p.mean();
  const double mu_b = dist_b.mean();
  const double baseline = dispersion(theta, params.k0, 0.0).omega_plus;
  const double threshold = baseline + params.a_uniform / 2;
  const double margin = std::min(mu_p - threshold, threshold - mu_b);
  if (margin <= 0)
    throw std::runtime_error("calibrate_samples: distributions not separated");

  const int n_normal = required_samples(std::max(dist_p.stddev(), dist_b.stddev()),
                                        mu_p - mu_b, params.epsilon);
  // a lone far-out sample (negative-branch contamination) must not be able
  // to drag the mean across the threshold
  double pull = 0.0;
  for (const auto& dist : {dist_p, dist_b}) {
    const double mu = dist.mean();
    for (int g = 0; g < dist.support.size(); ++g)
      if (dist.probabilities[g] > 1e-9)
        pull = std::max(pull, std::abs(dist.support[g] - mu));
  }
  const int n_robust = static_cast<int>(std::ceil(2.0 * pull / margin));
  return std::max({n_normal, n_robust, 1});
}

std::vector<ScalingRow> scaling_study(const std::vector<int>& sizes,
                                      int trials, std::uint64_t seed,
                                      const ProtocolParams& params) {
  if (sizes.size() < 1) throw std::invalid_argument("scaling_study: no sizes");
  for (int s : sizes)
    if (s < 3) throw std::invalid_argument("scaling_study: sizes must be >= 3");
  if (trials < 1) throw std::invalid_argument("scaling_study: trials must be >= 1");

  const int n_samples = calibrate_samples(sizes.front(), params);
  const MassAngle theta(params.theta);

  std::vector<ScalingRow> rows;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const int size = sizes[si];
    const PacketSpec packet = default_packet(size, params);
    const double baseline = dispersion(theta, params.k0, 0.0).omega_plus;
    const double threshold = baseline + params.a_uniform / 2;

    ScalingRow row{};
    row.size = size;
    row.n_samples = n_samples;

    for (int topo = 0; topo < 2; ++topo) {
      const bool periodic = topo == 0;
      const Lattice lattice(size, periodic ? Topology::periodic()
                                           : Topology::bounded(0.0, 0.0));
      const FrequencyDistribution dist =
          detection_distribution(lattice, theta, packet, params.a_uniform);
      int errors = 0;
      for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t stream =
            (static_cast<std::uint64_t>(si) * 2 + topo) * trials + trial;
        const auto samples =
            sample_frequencies(dist, n_samples, seed, stream);
        const bool decided_periodic = summarize(samples).mean > threshold;
        if (decided_periodic != periodic) ++errors;
      }
      const double rate = static_cast<double>(errors) / trials;
      if (periodic)
        row.error_rate_periodic = rate;
      else
        row.error_rate_bounded = rate;
    }

    row.classical_mean_steps_enum = classical_mean_steps_enumerated(size);
    const Lattice bounded(size, Topology::bounded(0.0, 0.0));
    CounterRng rng(seed, 1000000 + si);
    long long sim_total = 0;
    for (int trial = 0; trial < trials; ++trial) {
      const int start = static_cast<int>(rng.next_below(size));
      const int dir = rng.next_unit() < 0.5 ? +1 : -1;
      const ClassicalRun run = classical_baseline(bounded, start, dir, 2 * size);
      const int expected = dir > 0 ? size - 1 - start : start;
      if (run.steps_to_detect != expected)
        throw std::runtime_error("scaling_study: walker disagrees with enumeration");
      sim_total += run.steps_to_detect;
    }
    row.classical_mean_steps_sim = static_cast<double>(sim_total) / trials;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qlga
