// Copyright 2026 The qsdlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QSD_DISCRIMINATOR_HPP
#define QSD_DISCRIMINATOR_HPP

#include <optional>
#include <stdexcept>

#include "qsd/algebra.hpp"

// Gate-level engine for unambiguous discrimination of a pair of data-qubit
// states symmetric about |0>. The device is programmed once per pair through
// the ancilla qubit; the verdict is read off the sign of the data-qubit
// 00<->10 line summed over the two experiments (with and without the
// controlled-sigma_z).

namespace qsd {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

enum class StateLabel { Psi1, Psi2 };
enum class Verdict { Psi1, Psi2, Inconclusive };

struct DegenerateAlpha : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataStateAtPole : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ProgrammeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DecompositionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One member of a symmetric pair of (possibly elliptically polarized)
/// data-qubit states. Angles are in degrees; tan(ellipticity) = y/x with
/// x^2 + y^2 = 1.
struct QubitStateSpec {
    double two_theta1_deg = 0.0;   // separation of psi1, psi2 about |0>
    double ellipticity_deg = 0.0;  // 0 = linear, 45 = circular (excluded)
    StateLabel which = StateLabel::Psi1;

    /// Throws std::invalid_argument if outside 0<=2theta1<=180, 0<=eps<45.
    void validate() const;
};

/// Polar decomposition a1 = e^{i phi1} cos(eta), b1 = e^{i phi2} sin(eta).
struct PolarForm {
    double eta = 0.0;   // radians, in [0, pi/2]
    double phi = 0.0;   // phi2 - phi1 reduced to (-pi, pi]
    double phi1 = 0.0;
    double phi2 = 0.0;
};

/// Programme state of the ancilla plus the RF pulse that prepares it from |0>.
struct AncillaProgramme {
    Complex a2;
    Complex b2;
    double prep_angle_2eta = 0.0;  // radians, flip angle
    double prep_phase = 0.0;       // radians

    /// Signed 2*theta2 in degrees when the programme is real (linear
    /// polarization); empty for genuinely complex programmes.
    std::optional<double> signed_two_theta2_deg(double tol = 1e-9) const;
};

struct ProtocolResult {
    Verdict verdict = Verdict::Inconclusive;
    double probability = 0.0;  // |summed line_00_10|
    double line_00_10 = 0.0;   // summed over the two experiments, halved
    double line_01_11 = 0.0;
};

/// Amplitudes a1, b1 of the requested pair member:
/// a1 = x cos(theta1) + i y sin(theta1), b1 = x sin(theta1) - i y cos(theta1),
/// the psi2 member negates b1). Always normalized.
Ket2 make_data_state(const QubitStateSpec& spec);

PolarForm polar_form(Complex a1, Complex b1);

/// Solves the programming condition a1 a2 cos(alpha) - a1 b2 sin(alpha) = b1 a2
/// for a normalized ancilla state, a2 real positive. Throws DegenerateAlpha
/// when sin(alpha) = 0 and DataStateAtPole when a1 = 0.
AncillaProgramme solve_ancilla(double alpha_deg, Complex a1, Complex b1);

/// The fixed discriminator unitary: a rotation by alpha in the
/// {|0_D 0_A>, |0_D 1_A>} subspace, identity on the data=1 block.
Mat4 build_U(double alpha_deg);

/// Same unitary as the ordered gate product
/// (X x I) . CNOT . (I x u1) . CNOT . (I x u2) . (X x I)   (time order),
/// with u1/u2 the +-alpha/2 real rotations. Self-checks against build_U and
/// throws DecompositionMismatch beyond 1e-12.
Mat4 build_U_decomposed(double alpha_deg);

Mat2 not_gate();
Mat2 u1_gate(double alpha_deg);
Mat2 u2_gate(double alpha_deg);
Mat4 cnot_gate();
Mat4 sigma_z_c();

/// Runs both experiments (U, then sigma_z_c . U) on psi_D x psi_A and sums the
/// data-qubit line amplitudes. The programme must satisfy the programming
/// condition for the psi1 member of spec within 1e-9 (ProgrammeMismatch).
ProtocolResult run_protocol(const QubitStateSpec& spec, const AncillaProgramme& prog,
                            double alpha_deg);

/// Closed form 2 |b1|^2 |a2|^2 evaluated from the psi1 amplitudes of spec.
double closed_form_probability(const QubitStateSpec& spec, const AncillaProgramme& prog);

}  // namespace qsd

#endif  // QSD_DISCRIMINATOR_HPP
