// Python bindings for the main simulator operations.  States and matrices
// cross the boundary as numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlga/experiment.hpp"
#include "qlga/gauge.hpp"
#include "qlga/textio.hpp"

namespace py = pybind11;
using namespace qlga;

namespace {

WaveFunction to_state(const Eigen::VectorXcd& amplitudes) {
  return WaveFunction(amplitudes);
}

Topology make_topology(const std::string& kind, double zeta_left,
                       double zeta_right) {
  if (kind == "periodic") return Topology::periodic();
  if (kind == "bounded") return Topology::bounded(zeta_left, zeta_right);
  throw std::invalid_argument("topology must be 'periodic' or 'bounded'");
}

}  // namespace

PYBIND11_MODULE(_qlga, m) {
  m.doc() = "one-particle 1D quantum lattice gas automaton simulator";

  py::class_<Topology>(m, "Topology")
      .def_static("periodic", &Topology::periodic)
      .def_static("bounded", &Topology::bounded, py::arg("zeta_left") = 0.0,
                  py::arg("zeta_right") = 0.0)
      .def_property_readonly("is_periodic", &Topology::is_periodic);

  py::class_<Lattice>(m, "Lattice")
      .def(py::init<int, Topology>(), py::arg("size"), py::arg("topology"))
      .def(py::init([](int size, const std::string& kind) {
             return Lattice(size, make_topology(kind, 0.0, 0.0));
           }),
           py::arg("size"), py::arg("topology"))
      .def_readonly("size", &Lattice::size)
      .def_readonly("topology", &Lattice::topology);

  py::class_<FieldConfig>(m, "FieldConfig")
      .def(py::init([](Eigen::VectorXd phi, Eigen::VectorXd a) {
             return FieldConfig{std::move(phi), std::move(a)};
           }),
           py::arg("phi"), py::arg("a"))
      .def_static("zero", &FieldConfig::zero, py::arg("size"))
      .def_static("uniform", &FieldConfig::uniform, py::arg("size"),
                  py::arg("phi"), py::arg("a"))
      .def_readwrite("phi", &FieldConfig::phi)
      .def_readwrite("a", &FieldConfig::a);

  py::class_<GaugeFunction>(m, "GaugeFunction")
      .def(py::init([](Eigen::VectorXd at, Eigen::VectorXd atp1) {
             return GaugeFunction{std::move(at), std::move(atp1)};
           }),
           py::arg("alpha_t"), py::arg("alpha_tplus1"))
      .def_readwrite("alpha_t", &GaugeFunction::alpha_t)
      .def_readwrite("alpha_tplus1", &GaugeFunction::alpha_tplus1);

  py::class_<EvolutionOperator>(m, "EvolutionOperator")
      .def_readonly("dense", &EvolutionOperator::dense)
      .def_property_readonly(
          "lattice", [](const EvolutionOperator& op) { return op.lattice; })
      .def("unitarity_residual",
           [](const EvolutionOperator& op) { return check_unitarity(op); });

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("eigenphases", &Spectrum::eigenphases)
      .def_readonly("eigenvectors", &Spectrum::eigenvectors)
      .def_readonly("residuals", &Spectrum::residuals);

  py::class_<SpectralFlowResult>(m, "SpectralFlowResult")
      .def_readonly("delta_grid", &SpectralFlowResult::delta_grid)
      .def_readonly("phases", &SpectralFlowResult::phases)
      .def_readonly("branches", &SpectralFlowResult::branches)
      .def_readonly("periodic", &SpectralFlowResult::periodic);

  py::class_<FrequencyDistribution>(m, "FrequencyDistribution")
      .def_readonly("support", &FrequencyDistribution::support)
      .def_readonly("probabilities", &FrequencyDistribution::probabilities)
      .def("mean", &FrequencyDistribution::mean)
      .def("stddev", &FrequencyDistribution::stddev);

  py::class_<WilsonLoop>(m, "WilsonLoop")
      .def_readonly("delta", &WilsonLoop::delta)
      .def_readonly("unit_complex", &WilsonLoop::unit_complex);

  py::class_<ClassicalRun>(m, "ClassicalRun")
      .def_readonly("start_site", &ClassicalRun::start_site)
      .def_readonly("direction", &ClassicalRun::direction)
      .def_readonly("steps_to_detect", &ClassicalRun::steps_to_detect)
      .def_readonly("hit_cutoff", &ClassicalRun::hit_cutoff)
      .def_property_readonly("decision", [](const ClassicalRun& r) {
        return std::string(to_string(r.decision));
      });

  m.def(
      "weights",
      [](double theta) {
        const Weights w = weights(MassAngle(theta));
        return py::make_tuple(Eigen::Matrix2cd(w.w_minus),
                              Eigen::Matrix2cd(w.w_plus));
      },
      py::arg("theta"));

  m.def(
      "build_evolution",
      [](const Lattice& lattice, double theta, const FieldConfig& fields) {
        return build_evolution(lattice, MassAngle(theta), fields);
      },
      py::arg("lattice"), py::arg("theta"), py::arg("fields"));

  m.def(
      "step",
      [](const EvolutionOperator& op, const Eigen::VectorXcd& psi) {
        return Eigen::VectorXcd(step(op, to_state(psi)).data());
      },
      py::arg("op"), py::arg("psi"));

  m.def("spectrum", &spectrum, py::arg("op"));

  m.def(
      "dispersion",
      [](double theta, double k, double a) {
        const Dispersion d = dispersion(MassAngle(theta), k, a);
        return py::make_tuple(d.omega_plus, d.omega_minus);
      },
      py::arg("theta"), py::arg("k"), py::arg("a_uniform") = 0.0);

  m.def(
      "branch_spinor",
      [](double theta, double q, int branch) {
        return Eigen::Vector2cd(branch_spinor(MassAngle(theta), q, branch));
      },
      py::arg("theta"), py::arg("q"), py::arg("branch") = 1);

  m.def(
      "spectral_flow",
      [](const Lattice& lattice, double theta, int n_delta) {
        return spectral_flow(lattice, MassAngle(theta), n_delta);
      },
      py::arg("lattice"), py::arg("theta"), py::arg("n_delta") = 64);

  m.def("flow_count", &flow_count, py::arg("result"), py::arg("level"));

  m.def(
      "prepare_packet",
      [](const Lattice& lattice, double theta, double k0, int x0, double sigma,
         int branch) {
        return Eigen::VectorXcd(prepare_packet(lattice, MassAngle(theta),
                                               PacketSpec{k0, x0, sigma, branch})
                                    .data());
      },
      py::arg("lattice"), py::arg("theta"), py::arg("k0"), py::arg("x0"),
      py::arg("sigma"), py::arg("branch") = 1);

  m.def(
      "frequency_distribution",
      [](const Eigen::VectorXcd& psi, const Spectrum& s) {
        return frequency_distribution(to_state(psi), s);
      },
      py::arg("psi"), py::arg("spectrum"));

  m.def("sample_frequencies", &sample_frequencies, py::arg("dist"),
        py::arg("n"), py::arg("seed"), py::arg("stream") = 0);

  m.def(
      "detection_distribution",
      [](const Lattice& lattice, double theta, double k0, int x0, double sigma,
         double a_uniform, int branch) {
        return detection_distribution(lattice, MassAngle(theta),
                                      PacketSpec{k0, x0, sigma, branch},
                                      a_uniform);
      },
      py::arg("lattice"), py::arg("theta"), py::arg("k0"), py::arg("x0"),
      py::arg("sigma"), py::arg("a_uniform"), py::arg("branch") = 1);

  m.def(
      "run_detection",
      [](int size, double theta, double a_uniform, double k0, int x0,
         double sigma, int n_samples, double epsilon, std::uint64_t seed,
         const Topology& ground_truth) {
        DetectionConfig config{size,    theta,   a_uniform,
                               PacketSpec{k0, x0, sigma, +1},
                               n_samples, epsilon, seed};
        const ExperimentReport r = run_detection(config, ground_truth);
        py::dict out;
        out["decision"] = std::string(to_string(r.decision));
        out["sample_mean"] = r.sample_mean;
        out["baseline_mean"] = r.baseline_mean;
        out["threshold"] = r.threshold;
        out["samples_used"] = r.samples_used;
        out["ground_truth"] = std::string(to_string(r.ground_truth));
        out["correct"] = r.correct;
        return out;
      },
      py::arg("size"), py::arg("theta"), py::arg("a_uniform"), py::arg("k0"),
      py::arg("x0"), py::arg("sigma"), py::arg("n_samples"),
      py::arg("epsilon"), py::arg("seed"), py::arg("ground_truth"));

  m.def("required_samples", &required_samples, py::arg("sigma_omega"),
        py::arg("shift"), py::arg("epsilon"));

  m.def("classical_baseline", &classical_baseline, py::arg("lattice"),
        py::arg("start"), py::arg("direction"), py::arg("cutoff"));
  m.def("classical_mean_steps_enumerated", &classical_mean_steps_enumerated,
        py::arg("size"));

  m.def("transform_operator", &transform_operator, py::arg("op"),
        py::arg("gauge"));
  m.def("transform_fields", &transform_fields, py::arg("fields"),
        py::arg("gauge"), py::arg("lattice"));
  m.def("gauge_fix", &gauge_fix, py::arg("fields"), py::arg("lattice"));
  m.def("wilson_loop", &wilson_loop, py::arg("fields"), py::arg("lattice"));
  m.def("verify_block_formulas", &verify_block_formulas, py::arg("op"),
        py::arg("gauge"));

  m.def("wrap_angle", &wrap_angle, py::arg("angle"));
  m.def("parse_angle", &parse_angle, py::arg("text"));
}
