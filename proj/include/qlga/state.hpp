#pragma once

#include <complex>
#include <variant>

#include <Eigen/Dense>

namespace qlga {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wrap an angle into (-pi, pi].
double wrap_angle(double a);
// Wrap an angle into [0, 2*pi).
double wrap_positive(double a);

// Lattice topology: periodic ring, or an interval with one reflection phase
// per end (stored reduced mod 2*pi).
class Topology {
 public:
  static Topology periodic();
  static Topology bounded(double zeta_left, double zeta_right);

  bool is_periodic() const { return periodic_; }
  double zeta_left() const;   // bounded only
  double zeta_right() const;  // bounded only

 private:
  Topology(bool periodic, double zl, double zr)
      : periodic_(periodic), zeta_left_(zl), zeta_right_(zr) {}
  bool periodic_;
  double zeta_left_;
  double zeta_right_;
};

struct Lattice {
  Lattice(int size, Topology topology);

  int size;
  Topology topology;
};

// Mass parameter of the homogeneous weight family, restricted to the
// canonical range [0, pi/2].
class MassAngle {
 public:
  explicit MassAngle(double theta);
  double theta() const { return theta_; }
  double cos() const;
  double sin() const;

 private:
  double theta_;
};

// Two-component amplitude field.  Component 0 is the left-mover (velocity
// -1), component 1 the right-mover (velocity +1); site x occupies entries
// (2x, 2x+1) of the flat vector.
class WaveFunction {
 public:
  explicit WaveFunction(Eigen::VectorXcd amplitudes);

  int num_sites() const { return static_cast<int>(amps_.size() / 2); }
  Complex amp(int site, int comp) const { return amps_[2 * site + comp]; }
  Complex& amp(int site, int comp) { return amps_[2 * site + comp]; }

  const Eigen::VectorXcd& data() const { return amps_; }
  Eigen::VectorXcd& data() { return amps_; }

  double norm() const { return amps_.norm(); }
  void normalize();  // throws on (near-)zero norm

 private:
  Eigen::VectorXcd amps_;
};

WaveFunction zero_wavefunction(const Lattice& lattice);

// Conjugate-linear in the first argument.
Complex inner_product(const WaveFunction& a, const WaveFunction& b);

// Multiplies both components at site x by e^{-i alpha(x)}.
WaveFunction apply_site_phase(const WaveFunction& psi,
                              const Eigen::VectorXd& alpha);

// Scalar potential phi(x) and vector potential A(x) for one timestep.  A(x)
// lives on the link between sites x-1 and x; on a bounded lattice A(0) is
// stored but never read.
struct FieldConfig {
  Eigen::VectorXd phi;
  Eigen::VectorXd a;

  static FieldConfig zero(int size);
  static FieldConfig uniform(int size, double phi_value, double a_value);
};

// Two time slices of a gauge function alpha(t, x).
struct GaugeFunction {
  Eigen::VectorXd alpha_t;
  Eigen::VectorXd alpha_tplus1;

  static GaugeFunction zero(int size);
  static GaugeFunction static_slice(Eigen::VectorXd alpha);
};

}  // namespace qlga
