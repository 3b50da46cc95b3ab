#include "qlga/gauge.hpp"

#include <cmath>
#include <stdexcept>

namespace qlga {

namespace {
Complex phase(double arg) { return std::polar(1.0, arg); }

void check_sizes(const GaugeFunction& g, int n) {
  if (g.alpha_t.size() != n || g.alpha_tplus1.size() != n)
    throw std::invalid_argument("gauge function arrays must have length |L|");
}
}  // namespace

Eigen::MatrixXcd transform_operator(const EvolutionOperator& op,
                                    const GaugeFunction& g) {
  const int n = op.lattice.size;
  check_sizes(g, n);
  Eigen::MatrixXcd out = op.dense;
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col) {
      const Complex ph = phase(-g.alpha_tplus1[row] + g.alpha_t[col]);
      out.block<2, 2>(2 * row, 2 * col) *= ph;
    }
  return out;
}

FieldConfig transform_fields(const FieldConfig& fields, const GaugeFunction& g,
                             const Lattice& lattice) {
  const int n = lattice.size;
  if (fields.phi.size() != n || fields.a.size() != n)
    throw std::invalid_argument("transform_fields: size mismatch");
  check_sizes(g, n);
  FieldConfig out = fields;
  for (int x = 0; x < n; ++x)
    out.phi[x] += g.alpha_tplus1[x] - g.alpha_t[x];
  for (int x = 0; x < n; ++x) {
    if (x == 0 && !lattice.topology.is_periodic()) continue;  // never enters U
    const int xm = (x + n - 1) % n;
    out.a[x] += g.alpha_tplus1[x] - g.alpha_tplus1[xm];
  }
  return out;
}

GaugeFunction gauge_fix(const FieldConfig& fields, const Lattice& lattice) {
  const int n = lattice.size;
  if (fields.a.size() != n)
    throw std::invalid_argument("gauge_fix: size mismatch");
  Eigen::VectorXd alpha(n);
  double acc = 0.0;
  for (int x = 0; x < n; ++x) {
    acc -= fields.a[x];
    alpha[x] = acc;
  }
  return {Eigen::VectorXd::Zero(n), alpha};
}

WilsonLoop wilson_loop(const FieldConfig& fields, const Lattice& lattice) {
  if (!lattice.topology.is_periodic())
    throw std::invalid_argument(
        "wilson_loop: undefined on a bounded lattice (single gauge class)");
  if (fields.a.size() != lattice.size)
    throw std::invalid_argument("wilson_loop: size mismatch");
  const double total = fields.a.sum();
  return {wrap_positive(total), phase(total)};
}

double verify_block_formulas(const EvolutionOperator& op,
                             const GaugeFunction& g) {
  const int n = op.lattice.size;
  check_sizes(g, n);
  const Eigen::MatrixXcd transformed = transform_operator(op, g);
  const Weights w = weights(op.theta);
  const bool periodic = op.lattice.topology.is_periodic();
  const auto& phi = op.fields.phi;
  const auto& a = op.fields.a;
  auto dt = [&](int x) { return g.alpha_tplus1[x] - g.alpha_t[x]; };
  auto dx = [&](int x) {
    const int xm = (x + n - 1) % n;
    return g.alpha_tplus1[x] - g.alpha_tplus1[xm];
  };

  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  const int x_begin = periodic ? 0 : 1;
  for (int x = x_begin; x < n; ++x) {
    const int xm = (x + n - 1) % n;
    Eigen::Matrix2cd up = w.w_plus;
    Eigen::Matrix2cd down = w.w_minus;
    if (!periodic && x == 1) up = boundary_block_left(op.lattice.topology.zeta_left());
    if (!periodic && x == n - 1)
      down = boundary_block_right(op.lattice.topology.zeta_right());
    // superdiagonal block of column x: e^{-i Dt a(t+1,x) + i Dx a(t+1,x)}
    expected.block<2, 2>(2 * xm, 2 * x) =
        phase(-phi[x] + a[x]) * phase(-dt(x) + dx(x)) * up;
    // subdiagonal block of column x-1: e^{-i Dt a(t+1,x-1) - i Dx a(t+1,x)}
    expected.block<2, 2>(2 * x, 2 * xm) =
        phase(-phi[xm] - a[x]) * phase(-dt(xm) - dx(x)) * down;
  }
  if (!periodic) {
    expected(0, 0) = phase(-phi[0] - dt(0));
    expected(2 * (n - 1) + 1, 2 * (n - 1) + 1) = phase(-phi[n - 1] - dt(n - 1));
  }
  return (transformed - expected).cwiseAbs().maxCoeff();
}

}  // namespace qlga
