import math

import numpy as np
import pytest

import qlga


def test_build_and_unitarity():
    for topology in (qlga.Topology.periodic(), qlga.Topology.bounded(0.7, 1.9)):
        lattice = qlga.Lattice(12, topology)
        fields = qlga.FieldConfig.uniform(12, 0.3, -0.8)
        op = qlga.build_evolution(lattice, math.pi / 5, fields)
        assert op.dense.shape == (24, 24)
        assert op.unitarity_residual() < 1e-12


def test_step_matches_dense():
    lattice = qlga.Lattice(10, "periodic")
    op = qlga.build_evolution(lattice, 0.4, qlga.FieldConfig.zero(10))
    rng = np.random.default_rng(0)
    psi = rng.normal(size=20) + 1j * rng.normal(size=20)
    psi /= np.linalg.norm(psi)
    fast = qlga.step(op, psi)
    assert np.max(np.abs(fast - op.dense @ psi)) < 1e-13


def test_dispersion_against_numpy():
    theta = math.pi / 6
    for q in np.linspace(-3, 3, 13):
        c, s = math.cos(theta), math.sin(theta)
        m = np.array(
            [
                [np.exp(1j * q) * c, 1j * np.exp(-1j * q) * s],
                [1j * np.exp(1j * q) * s, np.exp(-1j * q) * c],
            ]
        )
        expected = np.sort(-np.angle(np.linalg.eigvals(m)))
        wp, wm = qlga.dispersion(theta, q)
        assert abs(expected[1] - wp) < 1e-12
        assert abs(expected[0] - wm) < 1e-12


def test_spectrum_contract():
    lattice = qlga.Lattice(8, "periodic")
    op = qlga.build_evolution(lattice, 0.9, qlga.FieldConfig.uniform(8, 0, 0.2))
    spec = qlga.spectrum(op)
    assert spec.eigenphases.shape == (16,)
    assert spec.residuals.max() < 1e-9
    assert np.all(np.diff(spec.eigenphases) >= 0)


def test_flow_count_massless():
    flow = qlga.spectral_flow(qlga.Lattice(16, "periodic"), 0.0, 64)
    assert qlga.flow_count(flow, 0.4321) == 2
    frozen = qlga.spectral_flow(qlga.Lattice(16, "bounded"), 0.0, 16)
    assert qlga.flow_count(frozen, 0.4321) == 0


def test_detection_roundtrip():
    report = qlga.run_detection(
        size=32,
        theta=math.pi / 6,
        a_uniform=0.2,
        k0=math.pi / 2,
        x0=16,
        sigma=4.0,
        n_samples=50,
        epsilon=0.05,
        seed=11,
        ground_truth=qlga.Topology.bounded(),
    )
    assert report["decision"] == "bounded"
    assert report["correct"]

    again = qlga.run_detection(
        size=32,
        theta=math.pi / 6,
        a_uniform=0.2,
        k0=math.pi / 2,
        x0=16,
        sigma=4.0,
        n_samples=50,
        epsilon=0.05,
        seed=11,
        ground_truth=qlga.Topology.bounded(),
    )
    assert report == again


def test_wilson_loop_and_gauge_fix():
    lattice = qlga.Lattice(16, "periodic")
    fields = qlga.FieldConfig.uniform(16, 0.0, 0.35)
    loop = qlga.wilson_loop(fields, lattice)
    assert abs(loop.unit_complex - np.exp(1j * 16 * 0.35)) < 1e-12
    fix = qlga.gauge_fix(fields, lattice)
    fixed = qlga.transform_fields(fields, fix, lattice)
    assert np.max(np.abs(fixed.a[1:])) < 1e-12
    with pytest.raises(ValueError):
        qlga.wilson_loop(fields, qlga.Lattice(16, "bounded"))


def test_classical_walker():
    lattice = qlga.Lattice(16, "bounded")
    run = qlga.classical_baseline(lattice, 0, 1, 32)
    assert run.steps_to_detect == 15
    assert run.decision == "bounded"
    assert qlga.classical_mean_steps_enumerated(16) == pytest.approx(7.5)


def test_sampling_determinism():
    lattice = qlga.Lattice(32, "periodic")
    dist = qlga.detection_distribution(lattice, math.pi / 6, math.pi / 2, 16, 4.0, 0.2)
    a = qlga.sample_frequencies(dist, 100, 7)
    b = qlga.sample_frequencies(dist, 100, 7)
    assert a == b
    assert abs(np.mean(a) - dist.mean()) < 5 * dist.stddev() / math.sqrt(100)
