// Copyright 2026 The qsdlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "qsd/nmr.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace qsd::nmr {

namespace {

constexpr double kEvolveTol = 1e-10;

Mat2 pauli(Axis a) {
    Mat2 m;
    switch (a) {
        case Axis::X:
            m.at(0, 1) = 1.0;
            m.at(1, 0) = 1.0;
            break;
        case Axis::Y:
            m.at(0, 1) = Complex(0.0, -1.0);
            m.at(1, 0) = Complex(0.0, 1.0);
            break;
        case Axis::Z:
            m.at(0, 0) = 1.0;
            m.at(1, 1) = -1.0;
            break;
    }
    return m;
}

// I_axis = sigma_axis / 2 for spin 1/2.
Mat2 spin_half(Axis a) { return scale(0.5, pauli(a)); }

struct Checkpoint {
    const char* label;
    std::vector<std::pair<Mat4, double>> expected;  // (basis op, coefficient)
};

std::vector<Mat4> po_basis() {
    std::vector<Mat4> ops;
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        ops.push_back(one_spin_op(Spin::Data, a));
        ops.push_back(one_spin_op(Spin::Ancilla, a));
    }
    for (Axis a : {Axis::X, Axis::Y, Axis::Z})
        for (Axis b : {Axis::X, Axis::Y, Axis::Z}) ops.push_back(two_spin_op(a, b));
    return ops;
}

void verify_checkpoint(const DeviationDensityMatrix& rho, const Checkpoint& cp) {
    static const std::vector<Mat4> basis = po_basis();
    for (const Mat4& op : basis) {
        double expected = 0.0;
        for (const auto& [eop, coeff] : cp.expected) {
            if (max_abs_diff(eop, op) < 1e-15) expected = coeff;
        }
        double got = po_coefficient(rho, op);
        if (std::abs(got - expected) > 1e-9)
            throw CheckpointMismatch(std::string("pseudopure checkpoint '") + cp.label +
                                     "' off by " + std::to_string(std::abs(got - expected)));
    }
}

void assert_no_zero_quantum(const DeviationDensityMatrix& rho, const char* where) {
    if (std::abs(rho.m.at(1, 2)) > 1e-9)
        throw CheckpointMismatch(std::string("zero-quantum coherence present before crush at ") +
                                 where);
}

const char* spin_name(Spin s) {
    switch (s) {
        case Spin::Data:
            return "data";
        case Spin::Ancilla:
            return "ancilla";
        case Spin::Both:
            return "both";
    }
    return "?";
}

}  // namespace

PulseEvent PulseEvent::rf(Spin s, double flip, double phase) {
    PulseEvent e;
    e.kind = Kind::Rf;
    e.targets = s;
    e.flip = flip;
    e.phase = phase;
    return e;
}

PulseEvent PulseEvent::jdelay(double seconds) {
    PulseEvent e;
    e.kind = Kind::JDelay;
    e.duration = seconds;
    return e;
}

PulseEvent PulseEvent::crush() {
    PulseEvent e;
    e.kind = Kind::GradientCrush;
    return e;
}

PulseEvent PulseEvent::zrot(Spin s, double angle) {
    PulseEvent e;
    e.kind = Kind::ZRotation;
    e.targets = s;
    e.flip = angle;
    return e;
}

double DeviationDensityMatrix::hermiticity_defect() const {
    return max_abs_diff(m, conjugate_transpose(m));
}

double DeviationDensityMatrix::trace_defect() const { return std::abs(trace(m)); }

Mat2 rf_unitary(double flip, double phase) {
    double phi1 = phase - kPi / 2.0;
    double c = std::cos(flip / 2.0);
    double s = std::sin(flip / 2.0);
    Mat2 m;
    m.at(0, 0) = c;
    m.at(0, 1) = -std::exp(Complex(0.0, -phi1)) * s;
    m.at(1, 0) = std::exp(Complex(0.0, phi1)) * s;
    m.at(1, 1) = c;
    return m;
}

Mat4 on_spin(const Mat2& u, Spin s) {
    Mat2 i2 = Mat2::identity();
    switch (s) {
        case Spin::Data:
            return kron(u, i2);
        case Spin::Ancilla:
            return kron(i2, u);
        case Spin::Both:
            return kron(u, u);
    }
    return Mat4::identity();
}

Mat4 j_evolution(const SpinSystem& sys, double t) {
    double ph = 2.0 * kPi * sys.j_coupling_hz * t / 4.0;
    Mat4 m;
    m.at(0, 0) = std::exp(Complex(0.0, -ph));
    m.at(1, 1) = std::exp(Complex(0.0, ph));
    m.at(2, 2) = std::exp(Complex(0.0, ph));
    m.at(3, 3) = std::exp(Complex(0.0, -ph));
    return m;
}

Mat4 z_rotation(Spin s, double angle) {
    Mat2 rz;
    rz.at(0, 0) = std::exp(Complex(0.0, -angle / 2.0));
    rz.at(1, 1) = std::exp(Complex(0.0, angle / 2.0));
    return on_spin(rz, s);
}

Mat4 event_unitary(const SpinSystem& sys, const PulseEvent& ev) {
    switch (ev.kind) {
        case PulseEvent::Kind::Rf:
            return on_spin(rf_unitary(ev.flip, ev.phase), ev.targets);
        case PulseEvent::Kind::JDelay:
            return j_evolution(sys, ev.duration);
        case PulseEvent::Kind::ZRotation:
            return z_rotation(ev.targets, ev.flip);
        case PulseEvent::Kind::GradientCrush:
            throw std::invalid_argument("gradient crush has no unitary");
    }
    return Mat4::identity();
}

Mat4 program_unitary(const SpinSystem& sys, const std::vector<PulseEvent>& events) {
    Mat4 u = Mat4::identity();
    for (const PulseEvent& ev : events) u = matmul(event_unitary(sys, ev), u);
    return u;
}

DeviationDensityMatrix evolve(const SpinSystem& sys, const DeviationDensityMatrix& rho,
                              const PulseEvent& ev) {
    if (ev.kind == PulseEvent::Kind::GradientCrush) return gradient_crush(rho);
    return DeviationDensityMatrix{conjugate(event_unitary(sys, ev), rho.m)};
}

DeviationDensityMatrix gradient_crush(const DeviationDensityMatrix& rho) {
    DeviationDensityMatrix out;
    for (std::size_t i = 0; i < 4; ++i) out.m.at(i, i) = rho.m.at(i, i);
    return out;
}

Mat4 one_spin_op(Spin s, Axis a) { return on_spin(spin_half(a), s); }

Mat4 two_spin_op(Axis a1, Axis a2) {
    return scale(2.0, kron(spin_half(a1), spin_half(a2)));
}

double po_coefficient(const DeviationDensityMatrix& rho, const Mat4& op) {
    return trace(matmul(rho.m, op)).real();
}

DeviationDensityMatrix equilibrium() {
    return DeviationDensityMatrix{
        add(scale(4.0, one_spin_op(Spin::Data, Axis::Z)), one_spin_op(Spin::Ancilla, Axis::Z))};
}

DeviationDensityMatrix prepare_pseudopure(const SpinSystem& sys) {
    const double s3 = std::sqrt(3.0);
    const double s2 = std::sqrt(2.0);
    const double half_j = 1.0 / (2.0 * sys.j_coupling_hz);
    const Mat4 i1z = one_spin_op(Spin::Data, Axis::Z);
    const Mat4 i1y = one_spin_op(Spin::Data, Axis::Y);
    const Mat4 i1x = one_spin_op(Spin::Data, Axis::X);
    const Mat4 i2z = one_spin_op(Spin::Ancilla, Axis::Z);
    const Mat4 zz = two_spin_op(Axis::Z, Axis::Z);
    const Mat4 xz = two_spin_op(Axis::X, Axis::Z);

    DeviationDensityMatrix rho = equilibrium();

    rho = evolve(sys, rho, PulseEvent::rf(Spin::Data, kPi / 3.0, 0.0));
    verify_checkpoint(rho, {"after (pi/3)_x", {{i1z, 2.0}, {i1y, -2.0 * s3}, {i2z, 1.0}}});

    assert_no_zero_quantum(rho, "first crush");
    rho = gradient_crush(rho);
    verify_checkpoint(rho, {"after first crush", {{i1z, 2.0}, {i2z, 1.0}}});

    rho = evolve(sys, rho, PulseEvent::rf(Spin::Data, kPi / 4.0, 0.0));
    verify_checkpoint(rho, {"after (pi/4)_x", {{i1z, s2}, {i1y, -s2}, {i2z, 1.0}}});

    rho = evolve(sys, rho, PulseEvent::jdelay(half_j));
    verify_checkpoint(rho, {"after 1/2J", {{i1z, s2}, {xz, s2}, {i2z, 1.0}}});

    rho = evolve(sys, rho, PulseEvent::rf(Spin::Data, kPi / 4.0, 3.0 * kPi / 2.0));
    verify_checkpoint(rho, {"after (pi/4)_-y",
                            {{i1z, 1.0}, {i1x, -1.0}, {xz, 1.0}, {zz, 1.0}, {i2z, 1.0}}});

    assert_no_zero_quantum(rho, "final crush");
    rho = gradient_crush(rho);
    verify_checkpoint(rho, {"final pseudopure", {{i1z, 1.0}, {i2z, 1.0}, {zz, 1.0}}});
    return rho;
}

std::vector<PulseEvent> cnot_pulse_sequence(const SpinSystem& sys,
                                            const CompileOptions& options) {
    const double p2 = kPi / 2.0;
    const double x = 0.0, y = p2, my = 3.0 * p2;
    const double half_j = 1.0 / (2.0 * sys.j_coupling_hz);
    std::vector<PulseEvent> seq;
    if (options.expanded) {
        // Composite (pi/2)_z on the data spin: (pi/2)_y - (pi/2)_x - (pi/2)_-y.
        seq.push_back(PulseEvent::rf(Spin::Data, p2, y));
        seq.push_back(PulseEvent::rf(Spin::Data, p2, x));
        seq.push_back(PulseEvent::rf(Spin::Data, p2, my));
    } else {
        seq.push_back(PulseEvent::zrot(Spin::Data, p2));
    }
    seq.push_back(PulseEvent::rf(Spin::Ancilla, p2, y + options.cnot_phase_perturbation));
    seq.push_back(PulseEvent::jdelay(half_j));
    if (options.expanded) {
        // (pi/2)_x followed by the composite (pi/2)_-z; the leading (pi/2)_-x of
        // the composite cancels it, leaving (pi/2)_-y - (pi/2)_x.
        seq.push_back(PulseEvent::rf(Spin::Ancilla, p2, my));
        seq.push_back(PulseEvent::rf(Spin::Ancilla, p2, x));
    } else {
        seq.push_back(PulseEvent::rf(Spin::Ancilla, p2, x));
        seq.push_back(PulseEvent::zrot(Spin::Ancilla, -p2));
    }
    return seq;
}

std::vector<PulseEvent> compile_protocol(const SpinSystem& sys, const QubitStateSpec& spec,
                                         const AncillaProgramme& prog, double alpha_deg,
                                         bool with_sigma_zc, const CompileOptions& options) {
    const double p2 = kPi / 2.0;
    const double x = 0.0, y = p2, my = 3.0 * p2, mx = kPi;
    const double alpha = deg2rad(alpha_deg);
    const double half_j = 1.0 / (2.0 * sys.j_coupling_hz);

    QubitStateSpec psi1_spec = spec;
    psi1_spec.which = StateLabel::Psi1;
    Ket2 psi1 = make_data_state(psi1_spec);
    PolarForm pf = polar_form(psi1[0], psi1[1]);

    std::vector<PulseEvent> seq;

    // Initial-state preparation. The psi2 member needs the b amplitude negated,
    // i.e. the prep phase shifted by pi (equivalently a negative flip angle);
    // at eps = 0 this is the (2 theta1)_{-y} pulse.
    double data_phase = p2 + pf.phi + (spec.which == StateLabel::Psi2 ? kPi : 0.0);
    seq.push_back(PulseEvent::rf(Spin::Data, 2.0 * pf.eta, data_phase));
    seq.push_back(PulseEvent::rf(Spin::Ancilla, prog.prep_angle_2eta, prog.prep_phase));

    // Discriminator unitary: NOT - CNOT - u1 - CNOT - u2 - NOT.
    seq.push_back(PulseEvent::rf(Spin::Data, kPi, x));
    auto cnot = cnot_pulse_sequence(sys, options);
    seq.insert(seq.end(), cnot.begin(), cnot.end());
    seq.push_back(PulseEvent::rf(Spin::Ancilla, alpha, my));  // u1 = (alpha)_-y
    seq.insert(seq.end(), cnot.begin(), cnot.end());
    seq.push_back(PulseEvent::rf(Spin::Ancilla, alpha, y));  // u2 = (alpha)_y
    seq.push_back(PulseEvent::rf(Spin::Data, kPi, x));

    if (with_sigma_zc) {
        // (pi/2)_{-z} on both spins + 1/2J equals the controlled-sigma_z up to a
        // global phase; the -z composite is (pi/2)_y - (pi/2)_-x - (pi/2)_-y.
        if (options.expanded) {
            for (Spin s : {Spin::Data, Spin::Ancilla}) {
                seq.push_back(PulseEvent::rf(s, p2, y));
                seq.push_back(PulseEvent::rf(s, p2, mx));
                seq.push_back(PulseEvent::rf(s, p2, my));
            }
        } else {
            seq.push_back(PulseEvent::zrot(Spin::Data, -p2));
            seq.push_back(PulseEvent::zrot(Spin::Ancilla, -p2));
        }
        seq.push_back(PulseEvent::jdelay(half_j));
    }
    return seq;
}

Spectrum spectrum(const DeviationDensityMatrix& rho) {
    auto line = [&rho](std::size_t i, std::size_t j) { return -2.0 * rho.m.at(i, j).real(); };
    Spectrum sp;
    sp.amplitude = {line(0, 2), line(1, 3), line(0, 1), line(2, 3)};
    return sp;
}

namespace {

// Summed-and-halved data-qubit lines of the two experiments, uncalibrated.
std::pair<double, double> raw_summed_lines(const SpinSystem& sys, const QubitStateSpec& spec,
                                           const AncillaProgramme& prog, double alpha_deg,
                                           const CompileOptions& options) {
    DeviationDensityMatrix rho0 = prepare_pseudopure(sys);
    double d00 = 0.0, d01 = 0.0;
    for (bool with_szc : {false, true}) {
        DeviationDensityMatrix rho = rho0;
        for (const PulseEvent& ev : compile_protocol(sys, spec, prog, alpha_deg, with_szc,
                                                     options)) {
            rho = evolve(sys, rho, ev);
            if (rho.hermiticity_defect() > kEvolveTol || rho.trace_defect() > kEvolveTol)
                throw std::logic_error("deviation density matrix lost Hermitian/traceless form");
        }
        Spectrum sp = spectrum(rho);
        d00 += sp[Transition::D_00_10];
        d01 += sp[Transition::D_01_11];
    }
    return {d00 / 2.0, d01 / 2.0};
}

double calibration_scale(const SpinSystem& sys, const CompileOptions& options) {
    QubitStateSpec anchor{90.0, 0.0, StateLabel::Psi1};
    Ket2 psi1 = make_data_state(anchor);
    AncillaProgramme prog = solve_ancilla(90.0, psi1[0], psi1[1]);
    auto [d00, d01] = raw_summed_lines(sys, anchor, prog, 90.0, options);
    (void)d01;
    return 0.5 / d00;
}

}  // namespace

ProtocolResult run_pulse_protocol(const SpinSystem& sys, const QubitStateSpec& spec,
                                  const AncillaProgramme& prog, double alpha_deg,
                                  const CompileOptions& options) {
    QubitStateSpec psi1_spec = spec;
    psi1_spec.which = StateLabel::Psi1;
    Ket2 psi1 = make_data_state(psi1_spec);
    double alpha = deg2rad(alpha_deg);
    double res = std::abs(psi1[0] * prog.a2 * std::cos(alpha) -
                          psi1[0] * prog.b2 * std::sin(alpha) - psi1[1] * prog.a2);
    if (res > 1e-9)
        throw ProgrammeMismatch("programming condition residual " + std::to_string(res) +
                                " exceeds 1e-9; discrimination would not be unambiguous");

    double scale = calibration_scale(sys, options);
    auto [d00, d01] = raw_summed_lines(sys, spec, prog, alpha_deg, options);

    ProtocolResult r;
    r.line_00_10 = scale * d00;
    r.line_01_11 = scale * d01;
    r.probability = std::abs(r.line_00_10);
    if (r.line_00_10 > 1e-12)
        r.verdict = Verdict::Psi1;
    else if (r.line_00_10 < -1e-12)
        r.verdict = Verdict::Psi2;
    else
        r.verdict = Verdict::Inconclusive;
    return r;
}

std::string serialize_events(const std::vector<PulseEvent>& events) {
    std::string out;
    char buf[160];
    for (const PulseEvent& ev : events) {
        const char* kind = "";
        switch (ev.kind) {
            case PulseEvent::Kind::Rf:
                kind = "rf";
                break;
            case PulseEvent::Kind::JDelay:
                kind = "jdelay";
                break;
            case PulseEvent::Kind::GradientCrush:
                kind = "crush";
                break;
            case PulseEvent::Kind::ZRotation:
                kind = "zrot";
                break;
        }
        const char* tgt = ev.kind == PulseEvent::Kind::JDelay ||
                                  ev.kind == PulseEvent::Kind::GradientCrush
                              ? "-"
                              : spin_name(ev.targets);
        std::snprintf(buf, sizeof(buf), "%s %s %.9f %.9f %.12f\n", kind, tgt,
                      rad2deg(ev.flip), rad2deg(ev.phase), ev.duration);
        out += buf;
    }
    return out;
}

}  // namespace qsd::nmr
