#include "qlga/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlga/rng.hpp"

namespace qlga {

WaveFunction prepare_packet(const Lattice& lattice, MassAngle theta,
                            const PacketSpec& spec) {
  const int n = lattice.size;
  if (spec.sigma <= 0) throw std::invalid_argument("packet sigma must be > 0");
  if (spec.x0 < 0 || spec.x0 >= n)
    throw std::invalid_argument("packet center outside the lattice");
  if (!lattice.topology.is_periodic()) {
    const double margin = std::min(spec.x0, n - 1 - spec.x0);
    if (margin < 3.0 * spec.sigma)
      throw std::invalid_argument(
          "packet support margin violated: need min(x0, N-1-x0) >= 3 sigma");
  }
  const Eigen::Vector2cd chi = branch_spinor(theta, spec.k0, spec.branch);
  WaveFunction psi = zero_wavefunction(lattice);
  for (int x = 0; x < n; ++x) {
    double d = std::abs(x - spec.x0);
    if (lattice.topology.is_periodic()) d = std::min(d, n - d);
    const double env = std::exp(-d * d / (4.0 * spec.sigma * spec.sigma));
    const Complex carrier = env * std::polar(1.0, spec.k0 * x);
    psi.amp(x, 0) = carrier * chi[0];
    psi.amp(x, 1) = carrier * chi[1];
  }
  psi.normalize();
  return psi;
}

double FrequencyDistribution::mean() const {
  return (support.array() * probabilities.array()).sum();
}

double FrequencyDistribution::stddev() const {
  const double mu = mean();
  const double var =
      (probabilities.array() * (support.array() - mu).square()).sum();
  return std::sqrt(std::max(var, 0.0));
}

FrequencyDistribution frequency_distribution(const WaveFunction& psi,
                                             const Spectrum& spec) {
  if (psi.data().size() != spec.eigenvectors.rows())
    throw std::invalid_argument("frequency_distribution: size mismatch");
  const Eigen::VectorXcd overlaps = spec.eigenvectors.adjoint() * psi.data();
  const auto groups = group_degenerate(spec.eigenphases);
  FrequencyDistribution dist;
  dist.support.resize(groups.size());
  dist.probabilities.resize(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto [first, last] = groups[g];
    double p = 0.0, w = 0.0;
    for (int j = first; j < last; ++j) {
      p += std::norm(overlaps[j]);
      w += spec.eigenphases[j];
    }
    dist.support[g] = w / (last - first);
    dist.probabilities[g] = p;
  }
  const double total = dist.probabilities.sum();
  if (std::abs(total - 1.0) > 1e-10)
    throw std::runtime_error("frequency_distribution: probabilities do not sum to 1");
  dist.probabilities /= total;
  return dist;
}

std::vector<double> sample_frequencies(const FrequencyDistribution& dist,
                                       int n, std::uint64_t seed,
                                       std::uint64_t stream) {
  if (n < 1) throw std::invalid_argument("sample_frequencies: n must be >= 1");
  const int m = static_cast<int>(dist.support.size());
  std::vector<double> cdf(m);
  double acc = 0.0;
  for (int g = 0; g < m; ++g) {
    acc += dist.probabilities[g];
    cdf[g] = acc;
  }
  CounterRng rng(seed, stream);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const int g = std::min<int>(static_cast<int>(it - cdf.begin()), m - 1);
    out[i] = dist.support[g];
  }
  return out;
}

SampleSummary summarize(const std::vector<double>& samples) {
  if (samples.empty()) throw std::invalid_argument("summarize: no samples");
  for (double s : samples)
    if (!(s > -kPi + 0.1 && s < kPi - 0.1))
      throw std::invalid_argument(
          "summarize: sample outside the wraparound-safe range");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= samples.size();
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  const double std_dev =
      samples.size() > 1 ? std::sqrt(var / (samples.size() - 1)) : 0.0;
  return {mean, std_dev};
}

}  // namespace qlga
