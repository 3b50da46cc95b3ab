#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qlga/wavepacket.hpp"
#include "test_support.hpp"

using namespace qlga;

TEST_CASE("packet construction basics") {
  const Lattice ring(64, Topology::periodic());
  const MassAngle theta(kPi / 6);
  const PacketSpec spec{kPi / 2, 32, 8.0, +1};
  const WaveFunction psi = prepare_packet(ring, theta, spec);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-12);

  // pure right-mover at theta = 0
  const WaveFunction stream =
      prepare_packet(ring, MassAngle(0.0), spec);
  for (int x = 0; x < 64; ++x) CHECK(std::abs(stream.amp(x, 0)) == 0.0);

  // margin violations on the interval
  const Lattice interval(64, Topology::bounded(0, 0));
  CHECK_NOTHROW(prepare_packet(interval, theta, spec));
  CHECK_THROWS_AS(prepare_packet(interval, theta, PacketSpec{kPi / 2, 5, 8.0, +1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(prepare_packet(interval, theta, PacketSpec{kPi / 2, 32, -1.0, +1}),
                  std::invalid_argument);
}

TEST_CASE("identical preparation on both topologies") {
  // narrow packet: wherever both envelopes are appreciable the ring and
  // interval distances coincide
  const int n = 64;
  const PacketSpec spec{kPi / 2, n / 2, n / 32.0, +1};
  const MassAngle theta(kPi / 6);
  const WaveFunction on_ring =
      prepare_packet(Lattice(n, Topology::periodic()), theta, spec);
  const WaveFunction on_interval =
      prepare_packet(Lattice(n, Topology::bounded(0, 0)), theta, spec);
  for (int x = 0; x < n; ++x)
    for (int c = 0; c < 2; ++c) {
      if (std::abs(on_ring.amp(x, c)) > 1e-14 ||
          std::abs(on_interval.amp(x, c)) > 1e-14)
        CHECK(std::abs(on_ring.amp(x, c) - on_interval.amp(x, c)) < 1e-12);
    }
}

TEST_CASE("negative-band weight stays small") {
  const int n = 64;
  const Lattice ring(n, Topology::periodic());
  const MassAngle theta(kPi / 6);
  const WaveFunction psi =
      prepare_packet(ring, theta, PacketSpec{kPi / 2, n / 2, n / 8.0, +1});
  const Spectrum s =
      spectrum(build_evolution(ring, theta, FieldConfig::zero(n)));
  const FrequencyDistribution dist = frequency_distribution(psi, s);
  double neg = 0.0;
  for (int g = 0; g < dist.support.size(); ++g)
    if (dist.support[g] < 0) neg += dist.probabilities[g];
  CHECK(neg <= 0.05);
}

TEST_CASE("distribution of an eigenvector is a point mass") {
  CounterRng rng(51);
  const Lattice lat(10, Topology::periodic());
  const auto op = build_evolution(lat, MassAngle(0.9),
                                  test::random_fields(rng, 10));
  const Spectrum s = spectrum(op);
  WaveFunction ev{Eigen::VectorXcd(s.eigenvectors.col(7))};
  const FrequencyDistribution dist = frequency_distribution(ev, s);
  int support_hits = 0;
  for (int g = 0; g < dist.support.size(); ++g)
    if (dist.probabilities[g] > 1e-12) {
      ++support_hits;
      CHECK(dist.probabilities[g] == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(std::abs(dist.support[g] - s.eigenphases[7]) < 1e-8);
    }
  CHECK(support_hits == 1);
}

TEST_CASE("plane wave under uniform A measures k0 plus A") {
  const int n = 16;
  const double k0 = kTwoPi * 4 / n;  // pi/2, a lattice momentum
  const double a = 0.2;
  const Lattice ring(n, Topology::periodic());
  const auto op =
      build_evolution(ring, MassAngle(0.0), FieldConfig::uniform(n, 0.0, a));
  // sigma far beyond the lattice size: envelope flat, i.e. a plane wave
  const WaveFunction psi =
      prepare_packet(ring, MassAngle(0.0), PacketSpec{k0, n / 2, 1e9, +1});
  const FrequencyDistribution dist = frequency_distribution(psi, spectrum(op));
  const auto peak = std::max_element(
      dist.probabilities.begin(), dist.probabilities.end());
  const int g = static_cast<int>(peak - dist.probabilities.begin());
  CHECK(dist.probabilities[g] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(dist.support[g] - (k0 + a)) < 1e-9);
}

TEST_CASE("distribution is stationary under the same evolution") {
  const int n = 32;
  const Lattice ring(n, Topology::periodic());
  const MassAngle theta(kPi / 6);
  const auto op = build_evolution(ring, theta, FieldConfig::zero(n));
  const Spectrum s = spectrum(op);
  WaveFunction psi =
      prepare_packet(ring, theta, PacketSpec{kPi / 2, n / 2, 4.0, +1});
  const FrequencyDistribution before = frequency_distribution(psi, s);
  for (int t = 0; t < 100; ++t) psi = step(op, psi);
  const FrequencyDistribution after = frequency_distribution(psi, s);
  CHECK((before.probabilities - after.probabilities).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("sampling determinism and law of large numbers") {
  FrequencyDistribution dist;
  dist.support = Eigen::Vector2d(0.25, 1.0);
  dist.probabilities = Eigen::Vector2d(0.7, 0.3);

  const auto run1 = sample_frequencies(dist, 1000, 99);
  const auto run2 = sample_frequencies(dist, 1000, 99);
  CHECK(run1 == run2);  // bit-exact
  const auto other_stream = sample_frequencies(dist, 1000, 99, 1);
  CHECK(run1 != other_stream);

  const auto big = sample_frequencies(dist, 100000, 1234);
  const double frac =
      std::count(big.begin(), big.end(), 0.25) / 100000.0;
  CHECK(std::abs(frac - 0.7) < 0.01);

  FrequencyDistribution point;
  point.support = Eigen::VectorXd::Constant(1, 0.5);
  point.probabilities = Eigen::VectorXd::Constant(1, 1.0);
  for (double v : sample_frequencies(point, 10, 7)) CHECK(v == 0.5);
}

TEST_CASE("summaries") {
  CHECK(summarize({0.1, 0.3}).mean == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(summarize({0.4, 0.4, 0.4}).stddev < 1e-15);
  CHECK_THROWS_AS(summarize({}), std::invalid_argument);
  CHECK_THROWS_AS(summarize({3.14}), std::invalid_argument);  // wrap range

  FrequencyDistribution dist;
  dist.support = Eigen::Vector2d(0.25, 1.0);
  dist.probabilities = Eigen::Vector2d(0.7, 0.3);
  const auto samples = sample_frequencies(dist, 20000, 5);
  const auto summary = summarize(samples);
  CHECK(std::abs(summary.mean - dist.mean()) <
        3 * dist.stddev() / std::sqrt(20000.0));
}
