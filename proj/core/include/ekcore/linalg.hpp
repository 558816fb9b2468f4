#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

// Small fixed-size vectors/matrices and the handful of dense kernels the
// schemes need: 2x2 complex eigenvalues, symmetric 3x3 eigenvalues,
// Gauss-Legendre rules.

namespace ek {

using cplx = std::complex<double>;

template <int N>
struct Vec {
    std::array<double, N> a{};

    double& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return a[static_cast<std::size_t>(i)]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < N; ++i) a[i] += o.a[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < N; ++i) a[i] -= o.a[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (double& x : a) x *= s;
        return *this;
    }

    friend Vec operator+(Vec x, const Vec& y) { return x += y; }
    friend Vec operator-(Vec x, const Vec& y) { return x -= y; }
    friend Vec operator*(double s, Vec x) { return x *= s; }
    friend Vec operator*(Vec x, double s) { return x *= s; }

    double dot(const Vec& o) const {
        double s = 0;
        for (int i = 0; i < N; ++i) s += a[i] * o.a[i];
        return s;
    }
    double norm() const { return std::sqrt(dot(*this)); }
    double norm_inf() const {
        double m = 0;
        for (double x : a) m = std::max(m, std::abs(x));
        return m;
    }
};

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

template <int N>
struct Mat {
    std::array<double, N * N> a{};

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i * N + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i * N + j)]; }

    static Mat identity() {
        Mat m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    Mat& operator+=(const Mat& o) {
        for (int i = 0; i < N * N; ++i) a[i] += o.a[i];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (int i = 0; i < N * N; ++i) a[i] -= o.a[i];
        return *this;
    }
    Mat& operator*=(double s) {
        for (double& x : a) x *= s;
        return *this;
    }
    friend Mat operator+(Mat x, const Mat& y) { return x += y; }
    friend Mat operator-(Mat x, const Mat& y) { return x -= y; }
    friend Mat operator*(double s, Mat x) { return x *= s; }

    Vec<N> operator*(const Vec<N>& v) const {
        Vec<N> r;
        for (int i = 0; i < N; ++i) {
            double s = 0;
            for (int j = 0; j < N; ++j) s += (*this)(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }
    Mat operator*(const Mat& o) const {
        Mat r;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const double x = (*this)(i, k);
                for (int j = 0; j < N; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }

    Mat transposed() const {
        Mat r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (double x : a) m = std::max(m, std::abs(x));
        return m;
    }
};

using Mat2 = Mat<2>;
using Mat3 = Mat<3>;

// 2x2 complex matrix, row-major.
struct Mat2c {
    std::array<cplx, 4> a{};

    cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(2 * i + j)]; }
    cplx operator()(int i, int j) const { return a[static_cast<std::size_t>(2 * i + j)]; }

    Mat2c& operator+=(const Mat2c& o) {
        for (int i = 0; i < 4; ++i) a[i] += o.a[i];
        return *this;
    }
    friend Mat2c operator+(Mat2c x, const Mat2c& y) { return x += y; }
    friend Mat2c operator*(cplx s, Mat2c x) {
        for (auto& v : x.a) v *= s;
        return x;
    }
};

Mat2c to_complex(const Mat2& m);

// Eigenvalues of a 2x2 complex matrix via the characteristic polynomial,
// with the usual cancellation-safe root pairing.
std::pair<cplx, cplx> eigenvalues(const Mat2c& m);

// Eigenvalues of a symmetric 3x3 matrix (cyclic Jacobi), ascending order.
// Only the symmetric part of the input is seen.
Vec3 sym_eigenvalues(const Mat3& m);

inline double spectral_norm_sym(const Mat3& m) {
    const Vec3 ev = sym_eigenvalues(m);
    return std::max(std::abs(ev[0]), std::abs(ev[2]));
}

inline double min_eigenvalue_sym(const Mat3& m) { return sym_eigenvalues(m)[0]; }

struct Quadrature {
    std::vector<double> points;
    std::vector<double> weights;
};

// Gauss-Legendre rule with n points on [a, b]. Nodes are generated by Newton
// iteration on the Legendre polynomial and cached per order.
Quadrature gauss_legendre(int n, double a, double b);

}  // namespace ek
