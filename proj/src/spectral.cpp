#include "qlga/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qlga {

namespace {
constexpr double kResidualTol = 1e-9;
constexpr double kDegeneracyTol = 1e-8;
}  // namespace

namespace {

// One Cayley-transform eigensolve of a unitary matrix: rotate the pole to
// angle mu, map to the Hermitian K = i(I - U')(I + U')^{-1}, diagonalize
// with the self-adjoint solver, and map the real eigenvalues back through
// phi = 2 atan(kappa).  Returns false when the pole landed too close to an
// eigenvalue (detected through the residuals).
bool cayley_attempt(const Eigen::MatrixXcd& u, double mu, Spectrum& s) {
  const int dim = static_cast<int>(u.rows());
  const Complex rot = std::polar(1.0, -(mu + kPi));  // pole of the map at mu
  const Eigen::MatrixXcd rotated = rot * u;
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(identity + rotated);
  Eigen::MatrixXcd k = lu.solve(Complex(0.0, 1.0) * (identity - rotated));
  k = 0.5 * (k + k.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k);
  if (es.info() != Eigen::Success) return false;

  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd raw(dim);
  for (int j = 0; j < dim; ++j) {
    const double phi = 2.0 * std::atan(es.eigenvalues()[j]);
    raw[j] = wrap_angle(-(mu + kPi + phi));
    // eigenvalues within rounding of the wrap seam report as +pi
    if (raw[j] < -kPi + 1e-12) raw[j] = kPi;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return raw[a] < raw[b]; });

  s.eigenphases.resize(dim);
  s.eigenvectors.resize(dim, dim);
  s.residuals.resize(dim);
  for (int j = 0; j < dim; ++j) {
    s.eigenphases[j] = raw[order[j]];
    s.eigenvectors.col(j) = es.eigenvectors().col(order[j]);
  }
  for (int j = 0; j < dim; ++j) {
    const Complex lambda = std::polar(1.0, -s.eigenphases[j]);
    s.residuals[j] =
        (u * s.eigenvectors.col(j) - lambda * s.eigenvectors.col(j)).norm();
    // NaN-safe: a pole landing on an eigenvalue must fail this test
    if (!(s.residuals[j] <= kResidualTol)) return false;
  }
  return true;
}

}  // namespace

Spectrum spectrum(const EvolutionOperator& op) {
  if (check_unitarity(op) > 1e-12)
    throw std::invalid_argument("spectrum: operator is not unitary");

  // The Cayley map needs its pole away from the spectrum; a fixed
  // golden-angle sequence of pole positions makes the search deterministic,
  // and the per-pair residual check rejects any unlucky pole.
  Spectrum s;
  for (int attempt = 0; attempt < 12; ++attempt) {
    const double mu = wrap_angle(0.5 + attempt * 2.3999632297286533);
    if (cayley_attempt(op.dense, mu, s)) return s;
  }
  throw std::runtime_error("spectrum: eigenpair residual exceeds 1e-9");
}

std::vector<std::pair<int, int>> group_degenerate(
    const Eigen::VectorXd& phases, double tol) {
  std::vector<std::pair<int, int>> groups;
  const int n = static_cast<int>(phases.size());
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && phases[j] - phases[j - 1] < tol) ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  return groups;
}

Dispersion dispersion(MassAngle theta, double k, double a_uniform) {
  const double c = std::clamp(theta.cos() * std::cos(k + a_uniform), -1.0, 1.0);
  const double wp = std::acos(c);
  return {wp, -wp};
}

Eigen::Vector2cd branch_spinor(MassAngle theta, double q, int branch) {
  if (branch != 1 && branch != -1)
    throw std::invalid_argument("branch must be +1 or -1");
  const double c = theta.cos();
  const double s = theta.sin();
  const Complex i1(0.0, 1.0);
  const double omega =
      branch > 0 ? dispersion(theta, q, 0.0).omega_plus
                 : dispersion(theta, q, 0.0).omega_minus;
  const Complex lambda = std::polar(1.0, -omega);
  const Complex eq = std::polar(1.0, q);
  // rows of M(q) - lambda I; the null vector of row (a, b) is (b, -a)
  const Eigen::Vector2cd row0(eq * c - lambda, i1 * std::conj(eq) * s);
  const Eigen::Vector2cd row1(i1 * eq * s, std::conj(eq) * c - lambda);
  const Eigen::Vector2cd& row = row0.norm() >= row1.norm() ? row0 : row1;
  Eigen::Vector2cd chi;
  if (row.norm() < 1e-12) {
    // fully degenerate corner (theta = 0, sin q = 0)
    chi = branch > 0 ? Eigen::Vector2cd(0.0, 1.0) : Eigen::Vector2cd(1.0, 0.0);
    return chi;
  }
  chi << row[1], -row[0];
  chi.normalize();
  const int lead = std::abs(chi[1]) >= std::abs(chi[0]) ? 1 : 0;
  chi *= std::conj(chi[lead]) / std::abs(chi[lead]);
  return chi;
}

Eigen::MatrixXd track_branches(const std::vector<Eigen::VectorXd>& tables) {
  const int steps = static_cast<int>(tables.size());
  if (steps < 2) throw std::invalid_argument("track_branches: need >= 2 grid points");
  const int nb = static_cast<int>(tables[0].size());

  Eigen::MatrixXd branches(nb, steps);
  branches.col(0) = tables[0];
  Eigen::VectorXd vel = Eigen::VectorXd::Zero(nb);

  std::vector<int> order(nb);
  for (int t = 1; t < steps; ++t) {
    const Eigen::VectorXd pred = branches.col(t - 1) + vel;
    Eigen::VectorXd wrapped(nb);
    for (int j = 0; j < nb; ++j) wrapped[j] = wrap_angle(pred[j]);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return wrapped[a] < wrapped[b]; });
    // Predictions and the new sorted spectrum are both in circular order, so
    // the optimal nearest-phase matching is one of the nb cyclic rotations.
    double best_cost = std::numeric_limits<double>::infinity();
    int best_rot = 0;
    for (int rot = 0; rot < nb; ++rot) {
      double cost = 0.0;
      for (int r = 0; r < nb && cost < best_cost; ++r)
        cost += std::abs(
            wrap_angle(tables[t][(r + rot) % nb] - wrapped[order[r]]));
      if (cost < best_cost) {
        best_cost = cost;
        best_rot = rot;
      }
    }
    for (int r = 0; r < nb; ++r) {
      const int b = order[r];
      const double target = tables[t][(r + best_rot) % nb];
      // unwrap towards the prediction so each branch stays continuous
      branches(b, t) = pred[b] + wrap_angle(target - pred[b]);
    }
    vel = branches.col(t) - branches.col(t - 1);
  }

  // fineness guard: per-step motion must stay below half the smallest
  // distinct level gap of the first grid point
  double min_gap = std::numeric_limits<double>::infinity();
  const auto groups = group_degenerate(tables[0], kDegeneracyTol);
  for (std::size_t g = 1; g < groups.size(); ++g) {
    const double gap =
        tables[0][groups[g].first] - tables[0][groups[g - 1].first];
    min_gap = std::min(min_gap, gap);
  }
  if (groups.size() > 1) {
    const double wrap_gap = kTwoPi - (tables[0][groups.back().first] -
                                      tables[0][groups.front().first]);
    min_gap = std::min(min_gap, std::abs(wrap_gap));
  }
  const double max_motion =
      (branches.rightCols(steps - 1) - branches.leftCols(steps - 1))
          .cwiseAbs()
          .maxCoeff();
  if (groups.size() > 1 && max_motion >= 0.5 * min_gap)
    throw std::runtime_error(
        "track_branches: grid too coarse for unambiguous branch matching");
  return branches;
}

SpectralFlowResult spectral_flow(const Lattice& lattice, MassAngle theta,
                                 int n_delta) {
  if (n_delta < 2) throw std::invalid_argument("spectral_flow: n_delta must be >= 2");
  SpectralFlowResult result;
  result.periodic = lattice.topology.is_periodic();
  result.delta_grid.resize(n_delta);
  result.phases.reserve(n_delta);
  for (int i = 0; i < n_delta; ++i) {
    const double delta = kTwoPi * i / (n_delta - 1);
    result.delta_grid[i] = delta;
    const FieldConfig f =
        FieldConfig::uniform(lattice.size, 0.0, delta / lattice.size);
    result.phases.push_back(
        spectrum(build_evolution(lattice, theta, f)).eigenphases);
  }
  result.branches = track_branches(result.phases);
  return result;
}

int flow_count(const SpectralFlowResult& result, double level) {
  for (const auto* endpoint : {&result.phases.front(), &result.phases.back()})
    for (int j = 0; j < endpoint->size(); ++j) {
      double d = std::abs(wrap_angle((*endpoint)[j] - level));
      if (d < 1e-6)
        throw std::invalid_argument(
            "flow_count: level too close to an endpoint eigenphase");
    }
  int total = 0;
  const int steps = static_cast<int>(result.branches.cols());
  for (int b = 0; b < result.branches.rows(); ++b)
    for (int t = 1; t < steps; ++t) {
      const double f0 =
          std::floor((result.branches(b, t - 1) - level) / kTwoPi);
      const double f1 = std::floor((result.branches(b, t) - level) / kTwoPi);
      total += static_cast<int>(std::abs(f1 - f0));
    }
  return total;
}

}  // namespace qlga
