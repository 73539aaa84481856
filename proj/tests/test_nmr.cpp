// Copyright 2026 The qsdlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "qsd/nmr.hpp"

using namespace qsd;
using namespace qsd::nmr;

namespace {

const double kX = 0.0;
const double kY = kPi / 2.0;
const double kMinusY = 3.0 * kPi / 2.0;

AncillaProgramme programme_for(double alpha_deg, double tt1, double eps) {
    Ket2 psi1 = make_data_state({tt1, eps, StateLabel::Psi1});
    return solve_ancilla(alpha_deg, psi1[0], psi1[1]);
}

DeviationDensityMatrix evolve_all(const SpinSystem& sys, DeviationDensityMatrix rho,
                                  const std::vector<PulseEvent>& events) {
    for (const PulseEvent& ev : events) rho = evolve(sys, rho, ev);
    return rho;
}

}  // namespace

TEST_CASE("rf_unitary: zero flip is the identity") {
    CHECK(max_abs_diff(rf_unitary(0.0, 1.234), Mat2::identity()) == 0.0);
}

TEST_CASE("rf_unitary: (alpha)_-y is u1 and (alpha)_y is u2") {
    for (double alpha : {30.0, 45.0, 90.0, 120.0}) {
        CHECK(max_abs_diff(rf_unitary(deg2rad(alpha), kMinusY), u1_gate(alpha)) < 1e-15);
        CHECK(max_abs_diff(rf_unitary(deg2rad(alpha), kY), u2_gate(alpha)) < 1e-15);
    }
}

TEST_CASE("rf_unitary prepares the Bloch state from |0>") {
    double eta = deg2rad(25.0), phi = deg2rad(40.0);
    Ket2 out = apply(rf_unitary(2.0 * eta, kPi / 2.0 + phi), Ket2{{1.0, 0.0}});
    CHECK(std::abs(out[0] - Complex(std::cos(eta))) < 1e-15);
    CHECK(std::abs(out[1] - std::exp(Complex(0.0, phi)) * std::sin(eta)) < 1e-15);
    CHECK(is_unitary(rf_unitary(2.0 * eta, kPi / 2.0 + phi), 1e-12));
}

TEST_CASE("j_evolution phases") {
    SpinSystem sys;
    CHECK(max_abs_diff(j_evolution(sys, 0.0), Mat4::identity()) == 0.0);

    Mat4 half = j_evolution(sys, 1.0 / (2.0 * sys.j_coupling_hz));
    Complex m = std::exp(Complex(0.0, -kPi / 4.0));
    Complex p = std::exp(Complex(0.0, kPi / 4.0));
    CHECK(std::abs(half.at(0, 0) - m) < 1e-15);
    CHECK(std::abs(half.at(1, 1) - p) < 1e-15);
    CHECK(std::abs(half.at(2, 2) - p) < 1e-15);
    CHECK(std::abs(half.at(3, 3) - m) < 1e-15);

    Mat4 full = j_evolution(sys, 1.0 / sys.j_coupling_hz);
    CHECK(std::abs(full.at(0, 0) - std::exp(Complex(0.0, -kPi / 2.0))) < 1e-15);
    CHECK(std::abs(full.at(1, 1) - std::exp(Complex(0.0, kPi / 2.0))) < 1e-15);
}

TEST_CASE("gradient_crush keeps longitudinal and zz order only") {
    DeviationDensityMatrix i1z{one_spin_op(Spin::Data, Axis::Z)};
    CHECK(max_abs_diff(gradient_crush(i1z).m, i1z.m) == 0.0);

    DeviationDensityMatrix i1y{one_spin_op(Spin::Data, Axis::Y)};
    CHECK(max_abs_diff(gradient_crush(i1y).m, Mat4::zero()) == 0.0);

    DeviationDensityMatrix mixed{
        add(add(one_spin_op(Spin::Data, Axis::Z), one_spin_op(Spin::Data, Axis::X)),
            two_spin_op(Axis::X, Axis::Z))};
    CHECK(max_abs_diff(gradient_crush(mixed).m, i1z.m) < 1e-15);
}

TEST_CASE("equilibrium is 4 I1z + I2z") {
    DeviationDensityMatrix eq = equilibrium();
    CHECK(std::abs(po_coefficient(eq, one_spin_op(Spin::Data, Axis::Z)) - 4.0) < 1e-15);
    CHECK(std::abs(po_coefficient(eq, one_spin_op(Spin::Ancilla, Axis::Z)) - 1.0) < 1e-15);
    CHECK(eq.trace_defect() < 1e-15);
    CHECK(eq.hermiticity_defect() < 1e-15);
}

TEST_CASE("prepare_pseudopure reaches I1z + I2z + 2I1zI2z") {
    SpinSystem sys;
    DeviationDensityMatrix rho = prepare_pseudopure(sys);
    CHECK(std::abs(po_coefficient(rho, one_spin_op(Spin::Data, Axis::Z)) - 1.0) < 1e-9);
    CHECK(std::abs(po_coefficient(rho, one_spin_op(Spin::Ancilla, Axis::Z)) - 1.0) < 1e-9);
    CHECK(std::abs(po_coefficient(rho, two_spin_op(Axis::Z, Axis::Z)) - 1.0) < 1e-9);

    // Pure excess on |00>: diagonal pattern c (3, -1, -1, -1)/4 with c = 2.
    CHECK(std::abs(rho.m.at(0, 0) - Complex(1.5)) < 1e-9);
    for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(rho.m.at(i, i) - Complex(-0.5)) < 1e-9);
}

TEST_CASE("pseudopure read spectra: carbon doubled, proton halved") {
    SpinSystem sys;
    DeviationDensityMatrix eq = equilibrium();
    DeviationDensityMatrix pp = prepare_pseudopure(sys);
    PulseEvent read_data = PulseEvent::rf(Spin::Data, kPi / 2.0, kMinusY);
    PulseEvent read_anc = PulseEvent::rf(Spin::Ancilla, kPi / 2.0, kMinusY);

    Spectrum eq_d = spectrum(evolve(sys, eq, read_data));
    Spectrum pp_d = spectrum(evolve(sys, pp, read_data));
    // Equilibrium proton: both data lines at 4; pseudopure: a single line at 2,
    // i.e. half the equilibrium line intensity.
    CHECK(std::abs(eq_d[Transition::D_00_10] - 4.0) < 1e-9);
    CHECK(std::abs(eq_d[Transition::D_01_11] - 4.0) < 1e-9);
    CHECK(std::abs(pp_d[Transition::D_00_10] - 2.0) < 1e-9);
    CHECK(std::abs(pp_d[Transition::D_01_11]) < 1e-9);

    Spectrum eq_a = spectrum(evolve(sys, eq, read_anc));
    Spectrum pp_a = spectrum(evolve(sys, pp, read_anc));
    // Equilibrium carbon: both lines at 1; pseudopure: a single line at 2.
    CHECK(std::abs(eq_a[Transition::A_00_01] - 1.0) < 1e-9);
    CHECK(std::abs(eq_a[Transition::A_10_11] - 1.0) < 1e-9);
    CHECK(std::abs(pp_a[Transition::A_00_01] - 2.0) < 1e-9);
    CHECK(std::abs(pp_a[Transition::A_10_11]) < 1e-9);
}

TEST_CASE("spectrum: equilibrium with both read pulses, 4:1 gamma ratio") {
    SpinSystem sys;
    DeviationDensityMatrix rho = evolve(sys, equilibrium(),
                                        PulseEvent::rf(Spin::Both, kPi / 2.0, kMinusY));
    Spectrum sp = spectrum(rho);
    for (double a : sp.amplitude) CHECK(a > 0.0);
    CHECK(std::abs(sp[Transition::D_00_10] / sp[Transition::A_00_01] - 4.0) < 1e-9);
}

TEST_CASE("spectrum: pure zz order has no single-quantum lines") {
    Spectrum sp = spectrum(DeviationDensityMatrix{two_spin_op(Axis::Z, Axis::Z)});
    for (double a : sp.amplitude) CHECK(a == 0.0);
}

TEST_CASE("CNOT pulse sequence equals the gate up to global phase") {
    SpinSystem sys;
    for (bool expanded : {true, false}) {
        CompileOptions opts;
        opts.expanded = expanded;
        Mat4 u = program_unitary(sys, cnot_pulse_sequence(sys, opts));
        CHECK(global_phase_equal(u, cnot_gate(), 1e-10));
        CHECK(is_unitary(u, 1e-10));
    }
}

TEST_CASE("composite z sequences equal exact z rotations up to global phase") {
    SpinSystem sys;
    std::vector<PulseEvent> plus_z = {PulseEvent::rf(Spin::Data, kPi / 2.0, kY),
                                      PulseEvent::rf(Spin::Data, kPi / 2.0, kX),
                                      PulseEvent::rf(Spin::Data, kPi / 2.0, kMinusY)};
    CHECK(global_phase_equal(program_unitary(sys, plus_z),
                             z_rotation(Spin::Data, kPi / 2.0), 1e-10));

    std::vector<PulseEvent> minus_z = {PulseEvent::rf(Spin::Data, kPi / 2.0, kY),
                                       PulseEvent::rf(Spin::Data, kPi / 2.0, kPi),
                                       PulseEvent::rf(Spin::Data, kPi / 2.0, kMinusY)};
    CHECK(global_phase_equal(program_unitary(sys, minus_z),
                             z_rotation(Spin::Data, -kPi / 2.0), 1e-10));
}

TEST_CASE("sigma_z_c tail toggles exactly one z pair plus a delay") {
    SpinSystem sys;
    QubitStateSpec spec{90.0, 0.0, StateLabel::Psi1};
    AncillaProgramme prog = programme_for(90.0, 90.0, 0.0);
    auto without = compile_protocol(sys, spec, prog, 90.0, false);
    auto with = compile_protocol(sys, spec, prog, 90.0, true);
    CHECK(with.size() == without.size() + 7);  // 2 x 3 composite pulses + delay
    for (std::size_t i = 0; i < without.size(); ++i) {
        CHECK(with[i].kind == without[i].kind);
        CHECK(with[i].flip == without[i].flip);
        CHECK(with[i].phase == without[i].phase);
    }
    CHECK(with.back().kind == PulseEvent::Kind::JDelay);

    CompileOptions exact;
    exact.expanded = false;
    auto with_exact = compile_protocol(sys, spec, prog, 90.0, true, exact);
    auto without_exact = compile_protocol(sys, spec, prog, 90.0, false, exact);
    CHECK(with_exact.size() == without_exact.size() + 3);  // 2 zrot + delay
}

TEST_CASE("sigma_z_c pulse implementation equals the gate up to global phase") {
    SpinSystem sys;
    std::vector<PulseEvent> tail;
    for (Spin s : {Spin::Data, Spin::Ancilla}) {
        tail.push_back(PulseEvent::rf(s, kPi / 2.0, kY));
        tail.push_back(PulseEvent::rf(s, kPi / 2.0, kPi));
        tail.push_back(PulseEvent::rf(s, kPi / 2.0, kMinusY));
    }
    tail.push_back(PulseEvent::jdelay(1.0 / (2.0 * sys.j_coupling_hz)));
    CHECK(global_phase_equal(program_unitary(sys, tail), sigma_z_c(), 1e-10));
}

TEST_CASE("compiled program applied to |00> matches the gate-engine state") {
    SpinSystem sys;
    for (double alpha : {45.0, 60.0, 90.0}) {
        for (double eps : {0.0, 30.0}) {
            for (StateLabel which : {StateLabel::Psi1, StateLabel::Psi2}) {
                QubitStateSpec spec{90.0, eps, which};
                AncillaProgramme prog = programme_for(alpha, 90.0, eps);
                Mat4 u = program_unitary(sys,
                                         compile_protocol(sys, spec, prog, alpha, false));
                Ket4 pulse_state = apply(u, Ket4{{1.0, 0.0, 0.0, 0.0}});

                Ket2 data = make_data_state(spec);
                Ket4 gate_state = apply(build_U(alpha),
                                        kron(data, Ket2{{prog.a2, prog.b2}}));
                CHECK(global_phase_equal(pulse_state, gate_state, 1e-10));
            }
        }
    }
}

TEST_CASE("composed pulse-program unitary stays unitary") {
    SpinSystem sys;
    QubitStateSpec spec{120.0, 15.0, StateLabel::Psi2};
    AncillaProgramme prog = programme_for(45.0, 120.0, 15.0);
    for (bool szc : {false, true}) {
        Mat4 u = program_unitary(sys, compile_protocol(sys, spec, prog, 45.0, szc));
        CHECK(is_unitary(u, 1e-10));
    }
}

TEST_CASE("deviation matrix stays Hermitian and traceless through a protocol") {
    SpinSystem sys;
    QubitStateSpec spec{60.0, 15.0, StateLabel::Psi1};
    AncillaProgramme prog = programme_for(60.0, 60.0, 15.0);
    DeviationDensityMatrix rho = prepare_pseudopure(sys);
    for (const PulseEvent& ev : compile_protocol(sys, spec, prog, 60.0, true)) {
        rho = evolve(sys, rho, ev);
        CHECK(rho.hermiticity_defect() < 1e-10);
        CHECK(rho.trace_defect() < 1e-10);
    }
}

TEST_CASE("run_pulse_protocol anchor and sign convention") {
    SpinSystem sys;
    AncillaProgramme prog = programme_for(90.0, 90.0, 0.0);
    ProtocolResult r1 = run_pulse_protocol(sys, {90.0, 0.0, StateLabel::Psi1}, prog, 90.0);
    CHECK(r1.verdict == Verdict::Psi1);
    CHECK(std::abs(r1.probability - 0.5) < 1e-9);

    ProtocolResult r2 = run_pulse_protocol(sys, {90.0, 0.0, StateLabel::Psi2}, prog, 90.0);
    CHECK(r2.verdict == Verdict::Psi2);
    CHECK(std::abs(r2.probability - 0.5) < 1e-9);
    CHECK(r2.line_00_10 < 0.0);
}

TEST_CASE("pulse engine matches the gate engine across engines' grid") {
    SpinSystem sys;
    for (double alpha : {30.0, 60.0, 90.0}) {
        for (double tt1 : {20.0, 90.0, 160.0}) {
            for (double eps : {0.0, 30.0}) {
                for (StateLabel which : {StateLabel::Psi1, StateLabel::Psi2}) {
                    QubitStateSpec spec{tt1, eps, which};
                    AncillaProgramme prog = programme_for(alpha, tt1, eps);
                    ProtocolResult g = run_protocol(spec, prog, alpha);
                    ProtocolResult p = run_pulse_protocol(sys, spec, prog, alpha);
                    CHECK(std::abs(g.probability - p.probability) < 1e-9);
                    CHECK(std::abs(p.line_01_11) < 1e-9);
                    CHECK(g.verdict == p.verdict);
                }
            }
        }
    }
}

TEST_CASE("exact-z compile mode agrees with expanded mode") {
    SpinSystem sys;
    CompileOptions exact;
    exact.expanded = false;
    QubitStateSpec spec{90.0, 15.0, StateLabel::Psi1};
    AncillaProgramme prog = programme_for(60.0, 90.0, 15.0);
    ProtocolResult a = run_pulse_protocol(sys, spec, prog, 60.0);
    ProtocolResult b = run_pulse_protocol(sys, spec, prog, 60.0, exact);
    CHECK(std::abs(a.probability - b.probability) < 1e-10);
    CHECK(a.verdict == b.verdict);
}

TEST_CASE("pulse program serialization golden trace") {
    SpinSystem sys;
    QubitStateSpec spec{90.0, 0.0, StateLabel::Psi1};
    AncillaProgramme prog = programme_for(90.0, 90.0, 0.0);
    CompileOptions exact;
    exact.expanded = false;
    std::string trace = serialize_events(compile_protocol(sys, spec, prog, 90.0, false, exact));
    CHECK(trace ==
          "rf data 90.000000000 90.000000000 0.000000000000\n"
          "rf ancilla 90.000000000 270.000000000 0.000000000000\n"
          "rf data 180.000000000 0.000000000 0.000000000000\n"
          "zrot data 90.000000000 0.000000000 0.000000000000\n"
          "rf ancilla 90.000000000 90.000000000 0.000000000000\n"
          "jdelay - 0.000000000 0.000000000 0.002392344498\n"
          "rf ancilla 90.000000000 0.000000000 0.000000000000\n"
          "zrot ancilla -90.000000000 0.000000000 0.000000000000\n"
          "rf ancilla 90.000000000 270.000000000 0.000000000000\n"
          "zrot data 90.000000000 0.000000000 0.000000000000\n"
          "rf ancilla 90.000000000 90.000000000 0.000000000000\n"
          "jdelay - 0.000000000 0.000000000 0.002392344498\n"
          "rf ancilla 90.000000000 0.000000000 0.000000000000\n"
          "zrot ancilla -90.000000000 0.000000000 0.000000000000\n"
          "rf ancilla 90.000000000 90.000000000 0.000000000000\n"
          "rf data 180.000000000 0.000000000 0.000000000000\n");
}

TEST_CASE("serialization of crush and expanded events") {
    auto evs = std::vector<PulseEvent>{PulseEvent::crush(),
                                       PulseEvent::rf(Spin::Both, kPi / 2.0, kMinusY)};
    CHECK(serialize_events(evs) ==
          "crush - 0.000000000 0.000000000 0.000000000000\n"
          "rf both 90.000000000 270.000000000 0.000000000000\n");
}
