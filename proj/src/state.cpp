#include "qlga/state.hpp"

#include <cmath>
#include <stdexcept>

#include "qlga/rng.hpp"

namespace qlga {

double wrap_angle(double a) {
  double w = std::remainder(a, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

double wrap_positive(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w;
}

Topology Topology::periodic() { return Topology(true, 0.0, 0.0); }

Topology Topology::bounded(double zeta_left, double zeta_right) {
  if (!std::isfinite(zeta_left) || !std::isfinite(zeta_right))
    throw std::invalid_argument("boundary phases must be finite");
  return Topology(false, wrap_positive(zeta_left), wrap_positive(zeta_right));
}

double Topology::zeta_left() const {
  if (periodic_) throw std::logic_error("periodic topology has no boundary phase");
  return zeta_left_;
}

double Topology::zeta_right() const {
  if (periodic_) throw std::logic_error("periodic topology has no boundary phase");
  return zeta_right_;
}

Lattice::Lattice(int size_in, Topology topology_in)
    : size(size_in), topology(topology_in) {
  if (size < 3) throw std::invalid_argument("lattice size must be >= 3");
}

MassAngle::MassAngle(double theta) : theta_(theta) {
  if (!(theta >= 0.0 && theta <= kPi / 2))
    throw std::invalid_argument("mass angle must lie in [0, pi/2]");
}

double MassAngle::cos() const { return std::cos(theta_); }
double MassAngle::sin() const { return std::sin(theta_); }

WaveFunction::WaveFunction(Eigen::VectorXcd amplitudes)
    : amps_(std::move(amplitudes)) {
  if (amps_.size() % 2 != 0 || amps_.size() < 6)
    throw std::invalid_argument("wave function needs 2 amplitudes per site, >= 3 sites");
}

void WaveFunction::normalize() {
  const double n = amps_.norm();
  if (n < 1e-300) throw std::invalid_argument("cannot normalize a zero state");
  amps_ /= n;
}

WaveFunction zero_wavefunction(const Lattice& lattice) {
  return WaveFunction(Eigen::VectorXcd::Zero(2 * lattice.size));
}

Complex inner_product(const WaveFunction& a, const WaveFunction& b) {
  if (a.data().size() != b.data().size())
    throw std::invalid_argument("inner_product: size mismatch");
  return a.data().dot(b.data());  // Eigen dot conjugates the first factor
}

WaveFunction apply_site_phase(const WaveFunction& psi,
                              const Eigen::VectorXd& alpha) {
  if (alpha.size() != psi.num_sites())
    throw std::invalid_argument("apply_site_phase: size mismatch");
  Eigen::VectorXcd out = psi.data();
  for (int x = 0; x < psi.num_sites(); ++x) {
    const Complex ph = std::polar(1.0, -alpha[x]);
    out[2 * x] *= ph;
    out[2 * x + 1] *= ph;
  }
  return WaveFunction(std::move(out));
}

FieldConfig FieldConfig::zero(int size) {
  return {Eigen::VectorXd::Zero(size), Eigen::VectorXd::Zero(size)};
}

FieldConfig FieldConfig::uniform(int size, double phi_value, double a_value) {
  return {Eigen::VectorXd::Constant(size, phi_value),
          Eigen::VectorXd::Constant(size, a_value)};
}

GaugeFunction GaugeFunction::zero(int size) {
  return {Eigen::VectorXd::Zero(size), Eigen::VectorXd::Zero(size)};
}

GaugeFunction GaugeFunction::static_slice(Eigen::VectorXd alpha) {
  return {alpha, alpha};
}

namespace {
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : base_(mix64(mix64(seed) + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

std::uint64_t CounterRng::next_u64() {
  return mix64(base_ + 0x9E3779B97F4A7C15ULL * (++counter_));
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_in(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

std::uint64_t CounterRng::next_below(std::uint64_t n) {
  return next_u64() % n;
}

}  // namespace qlga
