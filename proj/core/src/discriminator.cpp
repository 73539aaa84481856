// Copyright 2026 The qsdlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "qsd/discriminator.hpp"

#include <cmath>
#include <string>

namespace qsd {

namespace {

// Reduce an angle to (-pi, pi].
double wrap_pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

double residual(const AncillaProgramme& prog, double alpha, Complex a1, Complex b1) {
    return std::abs(a1 * prog.a2 * std::cos(alpha) - a1 * prog.b2 * std::sin(alpha) -
                    b1 * prog.a2);
}

}  // namespace

void QubitStateSpec::validate() const {
    if (!(two_theta1_deg >= 0.0 && two_theta1_deg <= 180.0))
        throw std::invalid_argument("two_theta1_deg must be in [0, 180], got " +
                                    std::to_string(two_theta1_deg));
    if (!(ellipticity_deg >= 0.0 && ellipticity_deg < 45.0))
        throw std::invalid_argument("ellipticity_deg must be in [0, 45), got " +
                                    std::to_string(ellipticity_deg));
}

std::optional<double> AncillaProgramme::signed_two_theta2_deg(double tol) const {
    if (std::abs(a2.imag()) > tol || std::abs(b2.imag()) > tol) return std::nullopt;
    return rad2deg(2.0 * std::atan2(b2.real(), a2.real()));
}

Ket2 make_data_state(const QubitStateSpec& spec) {
    spec.validate();
    double theta1 = deg2rad(spec.two_theta1_deg) / 2.0;
    double eps = deg2rad(spec.ellipticity_deg);
    double x = std::cos(eps);
    double y = std::sin(eps);
    Complex a1{x * std::cos(theta1), y * std::sin(theta1)};
    Complex b1{x * std::sin(theta1), -y * std::cos(theta1)};
    if (spec.which == StateLabel::Psi2) b1 = -b1;
    return Ket2{{a1, b1}};
}

PolarForm polar_form(Complex a1, Complex b1) {
    PolarForm p;
    p.eta = std::atan2(std::abs(b1), std::abs(a1));
    p.phi1 = std::abs(a1) > 0.0 ? std::arg(a1) : 0.0;
    p.phi2 = std::abs(b1) > 0.0 ? std::arg(b1) : 0.0;
    p.phi = wrap_pi(p.phi2 - p.phi1);
    return p;
}

AncillaProgramme solve_ancilla(double alpha_deg, Complex a1, Complex b1) {
    double alpha = deg2rad(alpha_deg);
    if (std::abs(std::sin(alpha)) < 1e-12)
        throw DegenerateAlpha("sin(alpha) = 0: programming condition degenerates at alpha = " +
                              std::to_string(alpha_deg) + " deg");
    if (std::abs(a1) < 1e-12)
        throw DataStateAtPole("a1 = 0: programme collapses to a2 = 0 and P = 0");

    Complex ratio = (a1 * std::cos(alpha) - b1) / (a1 * std::sin(alpha));
    AncillaProgramme prog;
    prog.a2 = 1.0 / std::sqrt(1.0 + std::norm(ratio));
    prog.b2 = ratio * prog.a2;
    prog.prep_angle_2eta = 2.0 * std::atan2(std::abs(prog.b2), std::abs(prog.a2));
    double rel = std::abs(prog.b2) > 0.0 ? std::arg(prog.b2) - std::arg(prog.a2) : 0.0;
    prog.prep_phase = kPi / 2.0 + rel;
    return prog;
}

Mat4 build_U(double alpha_deg) {
    double alpha = deg2rad(alpha_deg);
    Mat4 u = Mat4::identity();
    u.at(0, 0) = std::cos(alpha);
    u.at(0, 1) = -std::sin(alpha);
    u.at(1, 0) = std::sin(alpha);
    u.at(1, 1) = std::cos(alpha);
    return u;
}

Mat2 not_gate() {
    Mat2 x;
    x.at(0, 1) = 1.0;
    x.at(1, 0) = 1.0;
    return x;
}

Mat2 u1_gate(double alpha_deg) {
    double h = deg2rad(alpha_deg) / 2.0;
    Mat2 m;
    m.at(0, 0) = std::cos(h);
    m.at(0, 1) = std::sin(h);
    m.at(1, 0) = -std::sin(h);
    m.at(1, 1) = std::cos(h);
    return m;
}

Mat2 u2_gate(double alpha_deg) {
    double h = deg2rad(alpha_deg) / 2.0;
    Mat2 m;
    m.at(0, 0) = std::cos(h);
    m.at(0, 1) = -std::sin(h);
    m.at(1, 0) = std::sin(h);
    m.at(1, 1) = std::cos(h);
    return m;
}

Mat4 cnot_gate() {
    Mat4 m;
    m.at(0, 0) = 1.0;
    m.at(1, 1) = 1.0;
    m.at(2, 3) = 1.0;
    m.at(3, 2) = 1.0;
    return m;
}

Mat4 sigma_z_c() {
    Mat4 m = Mat4::identity();
    m.at(3, 3) = -1.0;
    return m;
}

Mat4 build_U_decomposed(double alpha_deg) {
    Mat2 i2 = Mat2::identity();
    Mat4 xi = kron(not_gate(), i2);
    Mat4 cn = cnot_gate();
    Mat4 iu1 = kron(i2, u1_gate(alpha_deg));
    Mat4 iu2 = kron(i2, u2_gate(alpha_deg));

    // Time order: (X x I), CNOT, (I x u1), CNOT, (I x u2), (X x I).
    Mat4 prod = xi;
    prod = matmul(cn, prod);
    prod = matmul(iu1, prod);
    prod = matmul(cn, prod);
    prod = matmul(iu2, prod);
    prod = matmul(xi, prod);

    double dev = max_abs_diff(prod, build_U(alpha_deg));
    if (dev > 1e-12)
        throw DecompositionMismatch("gate product deviates from the discriminator unitary by " +
                                    std::to_string(dev));
    return prod;
}

ProtocolResult run_protocol(const QubitStateSpec& spec, const AncillaProgramme& prog,
                            double alpha_deg) {
    QubitStateSpec psi1_spec = spec;
    psi1_spec.which = StateLabel::Psi1;
    Ket2 psi1 = make_data_state(psi1_spec);
    double res = residual(prog, deg2rad(alpha_deg), psi1[0], psi1[1]);
    if (res > 1e-9)
        throw ProgrammeMismatch("programming condition residual " + std::to_string(res) +
                                " exceeds 1e-9; discrimination would not be unambiguous");

    Ket2 data = make_data_state(spec);
    Ket4 joint = kron(data, Ket2{{prog.a2, prog.b2}});
    Ket4 exp1 = apply(build_U(alpha_deg), joint);
    Ket4 exp2 = apply(sigma_z_c(), exp1);

    auto line = [](const Ket4& k, std::size_t i, std::size_t j) {
        return 2.0 * (k[i] * std::conj(k[j])).real();
    };
    ProtocolResult r;
    r.line_00_10 = 0.5 * (line(exp1, 0, 2) + line(exp2, 0, 2));
    r.line_01_11 = 0.5 * (line(exp1, 1, 3) + line(exp2, 1, 3));
    r.probability = std::abs(r.line_00_10);
    if (r.line_00_10 > 1e-12)
        r.verdict = Verdict::Psi1;
    else if (r.line_00_10 < -1e-12)
        r.verdict = Verdict::Psi2;
    else
        r.verdict = Verdict::Inconclusive;
    return r;
}

double closed_form_probability(const QubitStateSpec& spec, const AncillaProgramme& prog) {
    QubitStateSpec psi1_spec = spec;
    psi1_spec.which = StateLabel::Psi1;
    Ket2 psi1 = make_data_state(psi1_spec);
    return 2.0 * std::norm(psi1[1]) * std::norm(prog.a2);
}

}  // namespace qsd
