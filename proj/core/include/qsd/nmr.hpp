// Copyright 2026 The qsdlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QSD_NMR_HPP
#define QSD_NMR_HPP

#include <string>
#include <vector>

#include "qsd/discriminator.hpp"

// Pulse-level spectrometer engine. The register is a weakly coupled
// proton-carbon pair: spin 1 = proton = data qubit, spin 2 = carbon = ancilla.
// All pulses are on resonance (chemical shifts refocused), so the only free
// evolution is under the J coupling. RF pulses are instantaneous.

namespace qsd::nmr {

enum class Spin { Data, Ancilla, Both };

struct SpinSystem {
    double j_coupling_hz = 209.0;
    double omega1 = 0.0;  // rotating-frame offsets, fixed at resonance
    double omega2 = 0.0;
};

struct CheckpointMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One spectrometer event. Angles in radians.
struct PulseEvent {
    enum class Kind { Rf, JDelay, GradientCrush, ZRotation };

    Kind kind = Kind::Rf;
    Spin targets = Spin::Data;
    double flip = 0.0;      // Rf flip angle or ZRotation angle
    double phase = 0.0;     // Rf phase
    double duration = 0.0;  // JDelay only, seconds

    static PulseEvent rf(Spin s, double flip, double phase);
    static PulseEvent jdelay(double seconds);
    static PulseEvent crush();
    static PulseEvent zrot(Spin s, double angle);
};

/// Hermitian traceless 4x4 deviation density matrix.
struct DeviationDensityMatrix {
    Mat4 m;

    double hermiticity_defect() const;
    double trace_defect() const;
};

enum class Transition { D_00_10 = 0, D_01_11 = 1, A_00_01 = 2, A_10_11 = 3 };

/// Signed amplitudes of the four single-quantum lines, indexed by Transition.
struct Spectrum {
    std::array<double, 4> amplitude{};

    double operator[](Transition t) const { return amplitude[static_cast<std::size_t>(t)]; }
};

/// Hard-pulse unitary of an (alpha)_phi RF pulse:
/// [[cos(f/2), -e^{-i phi1} sin(f/2)], [e^{i phi1} sin(f/2), cos(f/2)]],
/// phi1 = phase - pi/2. Phase 0/90/180/270 deg = x/y/-x/-y.
Mat2 rf_unitary(double flip, double phase);

/// Embeds a single-spin unitary into the two-spin space.
Mat4 on_spin(const Mat2& u, Spin s);

/// Free evolution under 2 pi J Iz1 Iz2 for time t.
Mat4 j_evolution(const SpinSystem& sys, double t);

/// Exact z rotation e^{-i angle Iz} on the given spin(s).
Mat4 z_rotation(Spin s, double angle);

/// Unitary of a single event; GradientCrush has none (handled in evolve).
Mat4 event_unitary(const SpinSystem& sys, const PulseEvent& ev);

/// Product of the unitary events of a program in time order. Crush events are
/// rejected (the composed operator would not be unitary).
Mat4 program_unitary(const SpinSystem& sys, const std::vector<PulseEvent>& events);

/// Applies one event to a deviation density matrix.
DeviationDensityMatrix evolve(const SpinSystem& sys, const DeviationDensityMatrix& rho,
                              const PulseEvent& ev);

/// Zeroes every coherence (all off-diagonal elements, including the
/// zero-quantum pair); diagonal and zz order pass through exactly. Valid here
/// because the sequences provably create no zero-quantum order at crush points.
DeviationDensityMatrix gradient_crush(const DeviationDensityMatrix& rho);

// Normalized product-operator basis terms (unit Frobenius norm):
// one_spin_op(s, axis) = I_{s,axis} x E, zz-type two_spin_op = 2 I_{1a} I_{2b}.
enum class Axis { X, Y, Z };
Mat4 one_spin_op(Spin s, Axis a);
Mat4 two_spin_op(Axis a1, Axis a2);

/// Tr(rho . op); real for Hermitian inputs.
double po_coefficient(const DeviationDensityMatrix& rho, const Mat4& op);

/// Thermal equilibrium deviation 4 I1z + I2z (gamma_H ~= 4 gamma_C).
DeviationDensityMatrix equilibrium();

/// Spatial-averaging pseudopure preparation:
/// (pi/3)_x^1 - crush - (pi/4)_x^1 - 1/2J - (pi/4)_{-y}^1 - crush.
/// Verifies every intermediate product-operator checkpoint to 1e-9
/// (CheckpointMismatch) and returns I1z + I2z + 2 I1z I2z, i.e.
/// 2(|00><00| - I/4).
DeviationDensityMatrix prepare_pseudopure(const SpinSystem& sys);

struct CompileOptions {
    /// Expanded mode emits every composite-z pulse as transverse pulses, as run
    /// on the spectrometer; exact mode emits ZRotation events instead.
    bool expanded = true;
    /// Test hook: added to the phase of the CNOT (pi/2)_y carbon pulse.
    double cnot_phase_perturbation = 0.0;
};

/// Pulse program for one experiment of the discrimination protocol:
/// data prep (2 eta)_{pi/2+phi} (psi2: phase shifted by pi), ancilla prep from
/// the programme, then NOT - CNOT - u1 - CNOT - u2 - NOT, optionally followed
/// by the controlled-sigma_z realization ((pi/2)_{-z} on both spins + 1/2J).
std::vector<PulseEvent> compile_protocol(const SpinSystem& sys, const QubitStateSpec& spec,
                                         const AncillaProgramme& prog, double alpha_deg,
                                         bool with_sigma_zc,
                                         const CompileOptions& options = {});

/// The CNOT pulse sub-sequence alone (for fidelity checks).
std::vector<PulseEvent> cnot_pulse_sequence(const SpinSystem& sys,
                                            const CompileOptions& options = {});

/// Line amplitudes -2 Re(rho[i,j]) of the four single-quantum transitions.
/// The sign convention makes equilibrium followed by a (pi/2)_{-y} read pulse
/// positive on every line.
Spectrum spectrum(const DeviationDensityMatrix& rho);

/// Full pulse-level protocol starting from the pseudopure state: runs the
/// compiled program with and without the controlled-sigma_z, sums spectra, and
/// scales by the single-point calibration anchored at
/// (alpha=90, 2theta1=90, eps=0, psi1) -> 0.5.
ProtocolResult run_pulse_protocol(const SpinSystem& sys, const QubitStateSpec& spec,
                                  const AncillaProgramme& prog, double alpha_deg,
                                  const CompileOptions& options = {});

/// One event per line: kind, targets, angle-degrees, phase-degrees,
/// duration-seconds.
std::string serialize_events(const std::vector<PulseEvent>& events);

}  // namespace qsd::nmr

#endif  // QSD_NMR_HPP
