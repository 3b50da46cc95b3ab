#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlga/state.hpp"
#include "test_support.hpp"

using namespace qlga;

TEST_CASE("lattice validation") {
  CHECK_NOTHROW(Lattice(3, Topology::periodic()));
  CHECK_THROWS_AS(Lattice(2, Topology::periodic()), std::invalid_argument);
  CHECK_THROWS_AS(Lattice(0, Topology::bounded(0, 0)), std::invalid_argument);
}

TEST_CASE("mass angle range") {
  CHECK_NOTHROW(MassAngle(0.0));
  CHECK_NOTHROW(MassAngle(kPi / 2));
  CHECK_THROWS_AS(MassAngle(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(MassAngle(2.0), std::invalid_argument);
}

TEST_CASE("boundary phases stored mod 2pi") {
  const Topology t = Topology::bounded(-kPi / 2, 5 * kPi);
  CHECK(t.zeta_left() == doctest::Approx(3 * kPi / 2).epsilon(1e-12));
  CHECK(t.zeta_right() == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("zero_wavefunction sizing") {
  CHECK(zero_wavefunction(Lattice(3, Topology::periodic())).data().size() == 6);
  CHECK(zero_wavefunction(Lattice(16, Topology::periodic())).data().size() == 32);
  CHECK(zero_wavefunction(Lattice(16, Topology::periodic())).data().norm() == 0.0);
}

TEST_CASE("inner product basics") {
  const Lattice lat(8, Topology::periodic());
  CounterRng rng(7);
  WaveFunction a = test::random_state(rng, 8);
  CHECK(std::abs(inner_product(a, a) - 1.0) < 1e-12);

  WaveFunction site0 = zero_wavefunction(lat);
  WaveFunction site3 = zero_wavefunction(lat);
  site0.amp(0, 1) = 1.0;
  site3.amp(3, 0) = 1.0;
  CHECK(std::abs(inner_product(site0, site3)) == 0.0);

  // conjugate symmetry and linearity on random states
  for (int trial = 0; trial < 20; ++trial) {
    WaveFunction u = test::random_state(rng, 8);
    WaveFunction v = test::random_state(rng, 8);
    CHECK(std::abs(inner_product(u, v) - std::conj(inner_product(v, u))) < 1e-12);
    const Complex scale(0.3, -1.2);
    WaveFunction sv{Eigen::VectorXcd(scale * v.data())};
    CHECK(std::abs(inner_product(u, sv) - scale * inner_product(u, v)) < 1e-12);
  }

  WaveFunction small = zero_wavefunction(Lattice(4, Topology::periodic()));
  CHECK_THROWS_AS(inner_product(a, small), std::invalid_argument);
}

TEST_CASE("apply_site_phase") {
  CounterRng rng(11);
  WaveFunction psi = test::random_state(rng, 6);

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(6);
  CHECK((apply_site_phase(psi, zero).data() - psi.data()).norm() == 0.0);

  // constant alpha is a global phase: observables unchanged
  const Eigen::VectorXd constant = Eigen::VectorXd::Constant(6, 0.8);
  WaveFunction rotated = apply_site_phase(psi, constant);
  CHECK(std::abs(std::abs(inner_product(rotated, psi)) - 1.0) < 1e-12);
  CHECK((rotated.data() - std::polar(1.0, -0.8) * psi.data()).norm() < 1e-12);

  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd alpha = test::random_vector(rng, 6, -10, 10);
    CHECK(std::abs(apply_site_phase(psi, alpha).norm() - psi.norm()) < 1e-12);
  }
}

TEST_CASE("normalize") {
  WaveFunction psi = zero_wavefunction(Lattice(5, Topology::periodic()));
  psi.amp(2, 0) = Complex(3.0, 4.0);
  psi.normalize();
  CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
  WaveFunction zero = zero_wavefunction(Lattice(5, Topology::periodic()));
  CHECK_THROWS_AS(zero.normalize(), std::invalid_argument);
}

TEST_CASE("counter rng determinism and reach") {
  CounterRng a(42, 3), b(42, 3), c(42, 4);
  bool same = true, differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    same = same && (va == b.next_u64());
    differs = differs || (va != c.next_u64());
  }
  CHECK(same);
  CHECK(differs);
  CounterRng d(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = d.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
