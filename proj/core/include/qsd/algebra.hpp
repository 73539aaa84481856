// Copyright 2026 The qsdlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QSD_ALGEBRA_HPP
#define QSD_ALGEBRA_HPP

#include <array>
#include <complex>
#include <cstddef>

// Exact small-dimension complex linear algebra for a two-qubit register.
// Dimensions are fixed at 2 and 4; the basis order is
// |0_D 0_A>, |0_D 1_A>, |1_D 0_A>, |1_D 1_A>  (data qubit = most significant).

namespace qsd {

using Complex = std::complex<double>;

inline constexpr double kStructuralTol = 1e-12;

/// Two-dimensional complex state vector.
struct Ket2 {
    std::array<Complex, 2> c{};

    Complex& operator[](std::size_t i) { return c[i]; }
    const Complex& operator[](std::size_t i) const { return c[i]; }
};

/// Four-dimensional complex state vector (two-qubit register).
struct Ket4 {
    std::array<Complex, 4> c{};

    Complex& operator[](std::size_t i) { return c[i]; }
    const Complex& operator[](std::size_t i) const { return c[i]; }
};

/// 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<Complex, 4> e{};

    Complex& at(std::size_t r, std::size_t col) { return e[2 * r + col]; }
    const Complex& at(std::size_t r, std::size_t col) const { return e[2 * r + col]; }

    static Mat2 identity();
    static Mat2 zero() { return Mat2{}; }
};

/// 4x4 complex matrix, row-major.
struct Mat4 {
    std::array<Complex, 16> e{};

    Complex& at(std::size_t r, std::size_t col) { return e[4 * r + col]; }
    const Complex& at(std::size_t r, std::size_t col) const { return e[4 * r + col]; }

    static Mat4 identity();
    static Mat4 zero() { return Mat4{}; }
};

/// True iff every stored component is finite (no NaN/Inf).
bool all_finite(const Ket2& k);
bool all_finite(const Ket4& k);
bool all_finite(const Mat2& m);
bool all_finite(const Mat4& m);

// Tensor products. The data qubit is always the left factor.
Mat4 kron(const Mat2& a, const Mat2& b);
Ket4 kron(const Ket2& a, const Ket2& b);

Ket2 apply(const Mat2& m, const Ket2& k);
Ket4 apply(const Mat4& m, const Ket4& k);

Mat2 matmul(const Mat2& a, const Mat2& b);
Mat4 matmul(const Mat4& a, const Mat4& b);

Mat2 conjugate_transpose(const Mat2& m);
Mat4 conjugate_transpose(const Mat4& m);

Complex trace(const Mat2& m);
Complex trace(const Mat4& m);

Mat2 add(const Mat2& a, const Mat2& b);
Mat4 add(const Mat4& a, const Mat4& b);
Mat2 scale(Complex s, const Mat2& m);
Mat4 scale(Complex s, const Mat4& m);

/// rho -> U rho U^dagger.
Mat4 conjugate(const Mat4& u, const Mat4& rho);

double norm(const Ket2& k);
double norm(const Ket4& k);
Ket2 normalized(const Ket2& k);
Ket4 normalized(const Ket4& k);

double max_abs_diff(const Mat2& a, const Mat2& b);
double max_abs_diff(const Mat4& a, const Mat4& b);
double max_abs_diff(const Ket4& a, const Ket4& b);

bool is_unitary(const Mat2& m, double tol = kStructuralTol);
bool is_unitary(const Mat4& m, double tol = kStructuralTol);
bool is_hermitian(const Mat4& m, double tol = kStructuralTol);

/// True iff m1 = e^{i gamma} m2 for some real gamma, entrywise within tol.
bool global_phase_equal(const Mat2& m1, const Mat2& m2, double tol = kStructuralTol);
bool global_phase_equal(const Mat4& m1, const Mat4& m2, double tol = kStructuralTol);
bool global_phase_equal(const Ket4& k1, const Ket4& k2, double tol = kStructuralTol);

}  // namespace qsd

#endif  // QSD_ALGEBRA_HPP
