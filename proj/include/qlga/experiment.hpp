#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qlga/wavepacket.hpp"

namespace qlga {

// Free parameters of the topology-detection experiment.
struct DetectionConfig {
  int lattice_size;
  double theta;
  double a_uniform;  // > 0; a_uniform * N must not be a multiple of 2*pi
  PacketSpec packet;
  int n_samples;
  double epsilon;
  std::uint64_t seed;
};

enum class Decision { kPeriodic, kBounded };
const char* to_string(Decision d);

struct ExperimentReport {
  Decision decision;
  double sample_mean;
  double baseline_mean;  // analytic zero-field frequency of the carrier
  double threshold;      // baseline_mean + A/2
  int samples_used;
  Decision ground_truth;
  bool correct;
};

// Measured-frequency distribution of the protocol.
//
// The packet is prepared while the external potential is off, the potential
// is then ramped on, and the frequency measurement projects onto the
// eigenbasis of the operator actually applied, U^{(0,A)}.  The ramp carries
// each zero-field eigenmode to the U^{(0,A)} eigenmode on the same
// eigenphase branch, so outcome probabilities are the packet's overlaps with
// the U^{(0,0)} eigenmodes while outcome values are the branch-continued
// eigenphases of U^{(0,A)}.
//
// On a bounded lattice the branches do not move (the potential is gauge
// equivalent to zero), which is verified here by comparing the two sorted
// spectra.  On the ring, degenerate zero-field eigenspaces are first split
// by lattice momentum (the ramp conserves it); each mode then continues
// along omega = sign * arccos(cos(theta) cos(k + s A)), and the continued
// support is cross-checked against the directly computed U^{(0,A)} spectrum.
FrequencyDistribution detection_distribution(const Lattice& lattice,
                                             MassAngle theta,
                                             const PacketSpec& packet,
                                             double a_uniform);

// Runs one seeded detection: sample n frequencies from the distribution
// above and decide Periodic iff their mean exceeds baseline + A/2.
ExperimentReport run_detection(const DetectionConfig& config,
                               const Topology& ground_truth);

// Normal-approximation sample-count bound
//   n = max(1, ceil((2 z(1 - eps) sigma / shift)^2)).
// A heuristic; the scaling study validates the chosen count empirically.
int required_samples(double sigma_omega, double shift, double epsilon);

// Deterministic classical streaming particle.
struct ClassicalRun {
  int start_site;
  int direction;       // +1 or -1
  int steps_to_detect; // arrival step at a wall, or the cutoff
  bool hit_cutoff;
  Decision decision;
};

// On a bounded lattice the walker reaches the wall ahead after exactly
// (distance to that wall) steps and flips there; on a ring the cutoff fires.
ClassicalRun classical_baseline(const Lattice& lattice, int start,
                                int direction, int cutoff);

// Exact mean detection steps over all (start, direction) pairs on a bounded
// lattice of the given size, by enumeration.
double classical_mean_steps_enumerated(int size);

struct ProtocolParams {
  double theta = kPi / 6;
  double a_uniform = 0.2;
  double k0 = kPi / 2;
  double sigma_divisor = 8.0;  // sigma = N / sigma_divisor
  double epsilon = 0.05;
};

PacketSpec default_packet(int size, const ProtocolParams& params);

// Sample count for the protocol, fixed from the distributions at the given
// (smallest) size: the normal-approximation bound, raised so that no single
// outlying sample can move the mean across the decision threshold.
int calibrate_samples(int size, const ProtocolParams& params);

struct ScalingRow {
  int size;
  int n_samples;
  double error_rate_periodic;
  double error_rate_bounded;
  double classical_mean_steps_enum;
  double classical_mean_steps_sim;
};

// Quantum protocol with the sample count calibrated at sizes.front() versus
// the classical walker, per size.  Classical trials draw uniform random
// (start, direction); their step counts match the enumeration exactly.
std::vector<ScalingRow> scaling_study(const std::vector<int>& sizes,
                                      int trials, std::uint64_t seed,
                                      const ProtocolParams& params = {});

}  // namespace qlga
