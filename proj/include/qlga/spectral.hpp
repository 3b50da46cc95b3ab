#pragma once

#include <utility>
#include <vector>

#include "qlga/evolution.hpp"

namespace qlga {

// Full eigendecomposition of a unitary evolution operator, in the convention
// lambda = e^{-i omega} with omega in (-pi, pi].  Eigenphases are sorted
// ascending and eigenvector columns are orthonormal.
//
// Solved by Cayley-transforming to a Hermitian eigenproblem (uniformly
// accurate for unitary input, unlike QR iteration, which stalls near 1e-8 on
// phased-permutation operators with equal-modulus eigenvalue fans).  The
// pole of the transform is rotated into a spectral gap, retrying along a
// fixed golden-angle sequence; every eigenpair residual
// ||U v - lambda v||_2 is computed and checked against the 1e-9 contract.
struct Spectrum {
  Eigen::VectorXd eigenphases;
  Eigen::MatrixXcd eigenvectors;  // column j pairs with eigenphases[j]
  Eigen::VectorXd residuals;
};

Spectrum spectrum(const EvolutionOperator& op);

// Degeneracy grouping: [first, last) index ranges of eigenphases closer than
// tol to their neighbour.
std::vector<std::pair<int, int>> group_degenerate(
    const Eigen::VectorXd& phases, double tol = 1e-8);

// Eigenphases of the reduced homogeneous block
//   M(q) = e^{-iq} w_minus + e^{iq} w_plus,   q = k + A,
// which satisfy cos(omega) = cos(theta) cos(q):
//   omega_plus = +arccos(cos(theta) cos(q)),  omega_minus = -omega_plus.
struct Dispersion {
  double omega_plus;
  double omega_minus;
};

Dispersion dispersion(MassAngle theta, double k, double a_uniform);

// Unit eigenvector of M(q) with eigenvalue e^{-i omega_branch}; branch is +1
// or -1.  Deterministic phase convention (largest component real positive).
// At a fully degenerate point (theta = 0, sin q = 0) falls back to the pure
// right/left mover.
Eigen::Vector2cd branch_spinor(MassAngle theta, double q, int branch);

// Eigenphase sweep over the holonomy delta in [0, 2*pi] with uniform
// A = delta/N and phi = 0.  `phases` holds the raw sorted spectrum per grid
// point; `branches` the same data rearranged into continuously tracked,
// unwrapped branches (row = branch, column = grid point).
//
// Tracking matches linearly predicted phases (previous value + previous
// velocity) to the new spectrum.  Both lists are circularly ordered, so the
// optimal nearest-phase matching is a cyclic rotation; each matched value is
// then unwrapped towards its prediction, which keeps branches continuous
// across +-pi and carries them through exact crossings.  A fineness guard
// requires the max per-step tracked motion to stay below half the smallest
// distinct level gap of the delta = 0 spectrum.
struct SpectralFlowResult {
  Eigen::VectorXd delta_grid;
  std::vector<Eigen::VectorXd> phases;
  Eigen::MatrixXd branches;
  bool periodic = true;
};

SpectralFlowResult spectral_flow(const Lattice& lattice, MassAngle theta,
                                 int n_delta);

// Number of tracked-branch crossings through the given frequency level over
// the sweep (both directions counted).  The level must be generic: farther
// than 1e-6 from every endpoint eigenphase.
int flow_count(const SpectralFlowResult& result, double level);

// Shared tracker: rearranges per-grid-point sorted phase tables into
// continuous unwrapped branches.
Eigen::MatrixXd track_branches(const std::vector<Eigen::VectorXd>& tables);

}  // namespace qlga
