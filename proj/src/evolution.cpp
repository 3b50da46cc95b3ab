#include "qlga/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace qlga {

namespace {
const Complex kI(0.0, 1.0);

Complex phase(double arg) { return std::polar(1.0, arg); }
}  // namespace

Weights weights(MassAngle theta) {
  const double c = theta.cos();
  const double s = theta.sin();
  Weights w;
  w.w_minus << 0.0, kI * s, 0.0, c;
  w.w_plus << c, 0.0, kI * s, 0.0;
  return w;
}

Eigen::Matrix2cd boundary_block_left(double zeta) {
  Eigen::Matrix2cd b;
  b << 0.0, 0.0, kI * phase(zeta), 0.0;
  return b;
}

Eigen::Matrix2cd boundary_block_right(double zeta) {
  Eigen::Matrix2cd b;
  b << 0.0, kI * phase(zeta), 0.0, 0.0;
  return b;
}

EvolutionOperator build_evolution(const Lattice& lattice, MassAngle theta,
                                  const FieldConfig& fields) {
  const int n = lattice.size;
  if (fields.phi.size() != n || fields.a.size() != n)
    throw std::invalid_argument("build_evolution: field arrays must have length |L|");
  if (!fields.phi.allFinite() || !fields.a.allFinite())
    throw std::invalid_argument("build_evolution: non-finite field values");

  const Weights w = weights(theta);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  auto put = [&](int row, int col, const Eigen::Matrix2cd& blk) {
    u.block<2, 2>(2 * row, 2 * col) = blk;
  };

  if (lattice.topology.is_periodic()) {
    for (int x = 0; x < n; ++x) {
      const int xm = (x + n - 1) % n;
      put(xm, x, phase(-fields.phi[x] + fields.a[x]) * w.w_plus);
      put(x, xm, phase(-fields.phi[xm] - fields.a[x]) * w.w_minus);
    }
  } else {
    const Eigen::Matrix2cd left = boundary_block_left(lattice.topology.zeta_left());
    const Eigen::Matrix2cd right = boundary_block_right(lattice.topology.zeta_right());
    for (int x = 1; x < n; ++x) {
      const Eigen::Matrix2cd& up = (x == 1) ? left : w.w_plus;
      const Eigen::Matrix2cd& down = (x == n - 1) ? right : w.w_minus;
      put(x - 1, x, phase(-fields.phi[x] + fields.a[x]) * up);
      put(x, x - 1, phase(-fields.phi[x - 1] - fields.a[x]) * down);
    }
    // decoupled inward wall states, held in place with the local phase
    u(0, 0) = phase(-fields.phi[0]);
    u(2 * (n - 1) + 1, 2 * (n - 1) + 1) = phase(-fields.phi[n - 1]);
  }

  EvolutionOperator op{std::move(u), lattice, theta, fields};
  if (unitarity_residual(op.dense) > 1e-12)
    throw std::runtime_error("build_evolution: constructed operator is not unitary");
  return op;
}

WaveFunction step(const EvolutionOperator& op, const WaveFunction& psi) {
  const int n = op.lattice.size;
  if (psi.num_sites() != n) throw std::invalid_argument("step: size mismatch");

  const double c = op.theta.cos();
  const double s = op.theta.sin();
  const auto& phi = op.fields.phi;
  const auto& a = op.fields.a;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * n);

  // Contribution of the sub block in row x: the right-mover at x-1 arrives
  // at x and scatters; the super block in row x brings the left-mover from
  // x+1.
  auto from_left = [&](int x, int xm, Complex& o0, Complex& o1) {
    const Complex amp = phase(-phi[xm] - a[x]) * psi.amp(xm, 1);
    o0 += kI * s * amp;
    o1 += c * amp;
  };
  auto from_right = [&](int xp, Complex& o0, Complex& o1) {
    const Complex amp = phase(-phi[xp] + a[xp]) * psi.amp(xp, 0);
    o0 += c * amp;
    o1 += kI * s * amp;
  };

  if (op.lattice.topology.is_periodic()) {
    for (int x = 0; x < n; ++x) {
      const int xm = (x + n - 1) % n;
      const int xp = (x + 1) % n;
      from_left(x, xm, out[2 * x], out[2 * x + 1]);
      from_right(xp, out[2 * x], out[2 * x + 1]);
    }
  } else {
    const double zl = op.lattice.topology.zeta_left();
    const double zr = op.lattice.topology.zeta_right();
    for (int x = 1; x < n - 1; ++x) {
      from_left(x, x - 1, out[2 * x], out[2 * x + 1]);
      from_right(x + 1, out[2 * x], out[2 * x + 1]);
    }
    // reflections: the left-mover arriving at the left wall flips, as does
    // the right-mover arriving at the right wall
    out[1] += kI * phase(zl) * phase(-phi[1] + a[1]) * psi.amp(1, 0);
    out[2 * (n - 1)] +=
        kI * phase(zr) * phase(-phi[n - 2] - a[n - 1]) * psi.amp(n - 2, 1);
    out[0] += phase(-phi[0]) * psi.amp(0, 0);
    out[2 * (n - 1) + 1] += phase(-phi[n - 1]) * psi.amp(n - 1, 1);
  }
  return WaveFunction(std::move(out));
}

double unitarity_residual(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  const Eigen::MatrixXcd identity =
      Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return (gram - identity).cwiseAbs().maxCoeff();
}

double check_unitarity(const EvolutionOperator& op) {
  return unitarity_residual(op.dense);
}

}  // namespace qlga
