// Copyright 2026 The qsdlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "qsd/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace qsd {

namespace {

bool finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <typename T>
bool range_finite(const T& xs) {
    return std::all_of(xs.begin(), xs.end(), [](const Complex& z) { return finite(z); });
}

// Picks the phase from the largest entry of b, then compares a against phase*b.
template <typename T>
bool phase_equal(const T& a, const T& b, std::size_t n, double tol) {
    std::size_t imax = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m = std::abs(b[i]);
        if (m > best) {
            best = m;
            imax = i;
        }
    }
    if (best < tol) {
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(a[i]) > tol) return false;
        }
        return true;
    }
    Complex phase = a[imax] / b[imax];
    if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(a[i] - phase * b[i]) > tol) return false;
    }
    return true;
}

}  // namespace

Mat2 Mat2::identity() {
    Mat2 m;
    m.at(0, 0) = 1.0;
    m.at(1, 1) = 1.0;
    return m;
}

Mat4 Mat4::identity() {
    Mat4 m;
    for (std::size_t i = 0; i < 4; ++i) m.at(i, i) = 1.0;
    return m;
}

bool all_finite(const Ket2& k) { return range_finite(k.c); }
bool all_finite(const Ket4& k) { return range_finite(k.c); }
bool all_finite(const Mat2& m) { return range_finite(m.e); }
bool all_finite(const Mat4& m) { return range_finite(m.e); }

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    r.at(2 * i + j, 2 * k + l) = a.at(i, k) * b.at(j, l);
    return r;
}

Ket4 kron(const Ket2& a, const Ket2& b) {
    Ket4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r[2 * i + j] = a[i] * b[j];
    return r;
}

Ket2 apply(const Mat2& m, const Ket2& k) {
    Ket2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r[i] += m.at(i, j) * k[j];
    return r;
}

Ket4 apply(const Mat4& m, const Ket4& k) {
    Ket4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r[i] += m.at(i, j) * k[j];
    return r;
}

Mat2 matmul(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) r.at(i, j) += a.at(i, k) * b.at(k, j);
    return r;
}

Mat4 matmul(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) r.at(i, j) += a.at(i, k) * b.at(k, j);
    return r;
}

Mat2 conjugate_transpose(const Mat2& m) {
    Mat2 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r.at(i, j) = std::conj(m.at(j, i));
    return r;
}

Mat4 conjugate_transpose(const Mat4& m) {
    Mat4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r.at(i, j) = std::conj(m.at(j, i));
    return r;
}

Complex trace(const Mat2& m) { return m.at(0, 0) + m.at(1, 1); }

Complex trace(const Mat4& m) {
    Complex t = 0.0;
    for (std::size_t i = 0; i < 4; ++i) t += m.at(i, i);
    return t;
}

Mat2 add(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (std::size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

Mat4 add(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

Mat2 scale(Complex s, const Mat2& m) {
    Mat2 r;
    for (std::size_t i = 0; i < 4; ++i) r.e[i] = s * m.e[i];
    return r;
}

Mat4 scale(Complex s, const Mat4& m) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = s * m.e[i];
    return r;
}

Mat4 conjugate(const Mat4& u, const Mat4& rho) {
    return matmul(matmul(u, rho), conjugate_transpose(u));
}

double norm(const Ket2& k) { return std::sqrt(std::norm(k[0]) + std::norm(k[1])); }

double norm(const Ket4& k) {
    double s = 0.0;
    for (const auto& z : k.c) s += std::norm(z);
    return std::sqrt(s);
}

Ket2 normalized(const Ket2& k) {
    double n = norm(k);
    return Ket2{{k[0] / n, k[1] / n}};
}

Ket4 normalized(const Ket4& k) {
    double n = norm(k);
    Ket4 r = k;
    for (auto& z : r.c) z /= n;
    return r;
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a.e[i] - b.e[i]));
    return d;
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < 16; ++i) d = std::max(d, std::abs(a.e[i] - b.e[i]));
    return d;
}

double max_abs_diff(const Ket4& a, const Ket4& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

bool is_unitary(const Mat2& m, double tol) {
    return max_abs_diff(matmul(m, conjugate_transpose(m)), Mat2::identity()) <= tol;
}

bool is_unitary(const Mat4& m, double tol) {
    return max_abs_diff(matmul(m, conjugate_transpose(m)), Mat4::identity()) <= tol;
}

bool is_hermitian(const Mat4& m, double tol) {
    return max_abs_diff(m, conjugate_transpose(m)) <= tol;
}

bool global_phase_equal(const Mat2& m1, const Mat2& m2, double tol) {
    return phase_equal(m1.e, m2.e, 4, tol);
}

bool global_phase_equal(const Mat4& m1, const Mat4& m2, double tol) {
    return phase_equal(m1.e, m2.e, 16, tol);
}

bool global_phase_equal(const Ket4& k1, const Ket4& k2, double tol) {
    return phase_equal(k1.c, k2.c, 4, tol);
}

}  // namespace qsd
