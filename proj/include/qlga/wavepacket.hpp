#pragma once

#include <cstdint>
#include <vector>

#include "qlga/spectral.hpp"

namespace qlga {

// Gaussian wave packet riding carrier e^{i k0 x} on the spinor of the chosen
// dispersion branch.  sigma is the envelope width in sites.  On a bounded
// lattice the support margin min(x0, N-1-x0) >= 3 sigma is required.
struct PacketSpec {
  double k0;
  int x0;
  double sigma;
  int branch = +1;  // +1 or -1 frequency branch
};

// psi(x) = N exp(-d(x, x0)^2 / (4 sigma^2)) e^{i k0 x} chi_branch(k0), with
// ring distance on the periodic lattice and plain distance on the bounded
// one, so amplitudes at shared sites coincide across topologies.
WaveFunction prepare_packet(const Lattice& lattice, MassAngle theta,
                            const PacketSpec& spec);

// Probabilities of a projective frequency measurement: squared overlaps with
// the (degeneracy-grouped) eigenspaces of the given spectrum.
struct FrequencyDistribution {
  Eigen::VectorXd support;        // distinct eigenphases, ascending
  Eigen::VectorXd probabilities;  // same length, sums to 1

  double mean() const;
  double stddev() const;
};

FrequencyDistribution frequency_distribution(const WaveFunction& psi,
                                             const Spectrum& spec);

// n inverse-CDF draws; bit-exact function of (dist, n, seed, stream).
std::vector<double> sample_frequencies(const FrequencyDistribution& dist,
                                       int n, std::uint64_t seed,
                                       std::uint64_t stream = 0);

struct SampleSummary {
  double mean;
  double stddev;  // sample standard deviation, 0 for a single sample
};

// Requires every sample inside (-pi + 0.1, pi - 0.1); the packet designs
// used here keep far away from the wrap seam, so a violation flags a
// mis-designed experiment.
SampleSummary summarize(const std::vector<double>& samples);

}  // namespace qlga
