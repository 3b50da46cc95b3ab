#pragma once

#include "qlga/evolution.hpp"

namespace qlga {

// Holonomy of the vector potential around the ring: exp(i sum_x A(x)).
struct WilsonLoop {
  double delta;          // angle in [0, 2*pi)
  Complex unit_complex;  // e^{i delta}
};

// D[e^{-i alpha(t+1, x)}] U D[e^{i alpha(t, x)}] as a dense matrix.
Eigen::MatrixXcd transform_operator(const EvolutionOperator& op,
                                    const GaugeFunction& g);

// phi'(x) = phi(x) + alpha(t+1, x) - alpha(t, x)
// A'(x)   = A(x)   + alpha(t+1, x) - alpha(t+1, x-1)   (x-1 mod N on the ring;
//           A'(0) = A(0) on the interval, where it never enters U)
FieldConfig transform_fields(const FieldConfig& fields, const GaugeFunction& g,
                             const Lattice& lattice);

// Gauge function of the fixing transformation: alpha_t = 0 and
// alpha(t+1, x) = -sum_{y<=x} A(y).  Applying transform_fields zeroes A on
// every column that enters U (all of them on the interval; all but A'(0) on
// the ring, where A'(0) carries the loop angle).
GaugeFunction gauge_fix(const FieldConfig& fields, const Lattice& lattice);

// Only defined on the ring; throws on bounded topologies, where every vector
// potential is gauge-equivalent to zero.
WilsonLoop wilson_loop(const FieldConfig& fields, const Lattice& lattice);

// Compares every entry of transform_operator(op, g) against the closed-form
// difference-operator expressions for the transformed blocks (potential
// phases folded in) and returns the max deviation.
double verify_block_formulas(const EvolutionOperator& op,
                             const GaugeFunction& g);

}  // namespace qlga
