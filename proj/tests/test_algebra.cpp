// Copyright 2026 The qsdlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "qsd/algebra.hpp"
#include "qsd/discriminator.hpp"

using namespace qsd;

namespace {

Ket2 random_ket(std::mt19937& rng) {
    std::normal_distribution<double> dist;
    Ket2 k{{Complex(dist(rng), dist(rng)), Complex(dist(rng), dist(rng))}};
    return normalized(k);
}

// Independent entrywise 4x4 product oracle, indexing from first principles.
Mat4 kron_oracle(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (std::size_t row = 0; row < 4; ++row)
        for (std::size_t col = 0; col < 4; ++col)
            r.at(row, col) = a.at(row / 2, col / 2) * b.at(row % 2, col % 2);
    return r;
}

}  // namespace

TEST_CASE("kron of identities is the 4x4 identity") {
    CHECK(max_abs_diff(kron(Mat2::identity(), Mat2::identity()), Mat4::identity()) == 0.0);
}

TEST_CASE("kron(X, I) permutes the data-qubit blocks") {
    Mat4 m = kron(not_gate(), Mat2::identity());
    Mat4 expected;
    expected.at(0, 2) = 1.0;
    expected.at(1, 3) = 1.0;
    expected.at(2, 0) = 1.0;
    expected.at(3, 1) = 1.0;
    CHECK(max_abs_diff(m, expected) == 0.0);
}

TEST_CASE("kron(u1, u2) at alpha=90 matches the entrywise oracle") {
    Mat2 u1 = u1_gate(90.0);
    Mat2 u2 = u2_gate(90.0);
    CHECK(max_abs_diff(kron(u1, u2), kron_oracle(u1, u2)) == 0.0);
}

TEST_CASE("apply: identity, CNOT on |1_D 0_A>, U(90) on |0_D 0_A>") {
    Ket4 k{{Complex(0.1, 0.2), Complex(0.3, -0.1), Complex(0.5, 0.0), Complex(0.2, 0.7)}};
    CHECK(max_abs_diff(apply(Mat4::identity(), k), k) == 0.0);

    Ket4 in10{{0.0, 0.0, 1.0, 0.0}};
    Ket4 out = apply(cnot_gate(), in10);
    CHECK(std::abs(out[3] - 1.0) == 0.0);
    CHECK(std::abs(out[0]) + std::abs(out[1]) + std::abs(out[2]) == 0.0);

    Ket4 in00{{1.0, 0.0, 0.0, 0.0}};
    Ket4 rot = apply(build_U(90.0), in00);
    CHECK(std::abs(rot[1] - 1.0) < 1e-15);
    CHECK(std::abs(rot[0]) < 1e-15);
}

TEST_CASE("unitary application preserves norm") {
    std::mt19937 rng(12345);
    for (int i = 0; i < 50; ++i) {
        Ket4 k = kron(random_ket(rng), random_ket(rng));
        Ket4 out = apply(build_U(37.0), k);
        CHECK(std::abs(norm(out) - 1.0) < 1e-12);
    }
}

TEST_CASE("U(alpha) is unitary on a 1-degree grid") {
    for (int a = 0; a < 360; ++a) CHECK(is_unitary(build_U(a), 1e-12));
}

TEST_CASE("global_phase_equal") {
    Mat4 u = build_U(37.0);
    CHECK(global_phase_equal(u, scale(-1.0, u)));
    CHECK(global_phase_equal(u, scale(Complex(0.0, 1.0), u)));
    CHECK_FALSE(global_phase_equal(cnot_gate(), sigma_z_c()));
    CHECK_FALSE(global_phase_equal(u, scale(0.5, u)));
}

TEST_CASE("conjugate_transpose is an involution") {
    Mat4 m;
    std::mt19937 rng(99);
    std::normal_distribution<double> dist;
    for (auto& e : m.e) e = Complex(dist(rng), dist(rng));
    CHECK(max_abs_diff(conjugate_transpose(conjugate_transpose(m)), m) == 0.0);
}

TEST_CASE("kron is compatible with per-factor application") {
    std::mt19937 rng(777);
    for (int i = 0; i < 50; ++i) {
        Ket2 a = random_ket(rng);
        Ket2 b = random_ket(rng);
        Mat2 ua = u1_gate(33.0);
        Mat2 ub = u2_gate(121.0);
        Ket4 via_kron = apply(kron(ua, ub), kron(a, b));
        Ket4 via_factors = kron(apply(ua, a), apply(ub, b));
        CHECK(max_abs_diff(via_kron, via_factors) < 1e-12);
    }
}

TEST_CASE("finiteness predicate") {
    Ket2 good{{1.0, 0.0}};
    CHECK(all_finite(good));
    Ket2 bad{{Complex(std::nan(""), 0.0), 0.0}};
    CHECK_FALSE(all_finite(bad));
    Mat4 inf_mat;
    inf_mat.at(2, 2) = Complex(0.0, INFINITY);
    CHECK_FALSE(all_finite(inf_mat));
}

TEST_CASE("trace and hermiticity") {
    Mat4 m = sigma_z_c();
    CHECK(std::abs(trace(m) - Complex(2.0, 0.0)) == 0.0);
    CHECK(is_hermitian(m));
    CHECK_FALSE(is_hermitian(build_U(10.0)));
}
