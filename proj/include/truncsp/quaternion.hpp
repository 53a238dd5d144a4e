#pragma once

// Real quaternion scalars and matrices, plus the 2x2-block complex
// representation used everywhere downstream.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace truncsp {

using Complex = std::complex<double>;
using ComplexMat = Eigen::MatrixXcd;

// q = a + b e1 + c e2 + d e3, with e1^2 = e2^2 = e3^2 = e1 e2 e3 = -1.
struct Quaternion {
    double a{0.0}, b{0.0}, c{0.0}, d{0.0};

    constexpr Quaternion() = default;
    constexpr Quaternion(double a_, double b_, double c_, double d_)
        : a(a_), b(b_), c(c_), d(d_) {}
    // embeds a real scalar
    explicit constexpr Quaternion(double s) : a(s) {}

    constexpr bool operator==(const Quaternion&) const = default;

    constexpr Quaternion operator+(const Quaternion& o) const {
        return {a + o.a, b + o.b, c + o.c, d + o.d};
    }
    constexpr Quaternion operator-(const Quaternion& o) const {
        return {a - o.a, b - o.b, c - o.c, d - o.d};
    }
    constexpr Quaternion operator-() const { return {-a, -b, -c, -d}; }

    constexpr Quaternion operator*(double s) const {
        return {a * s, b * s, c * s, d * s};
    }

    // quaternion conjugate (= Hermitian conjugate for real quaternions)
    constexpr Quaternion conj() const { return {a, -b, -c, -d}; }

    constexpr double norm2() const { return a * a + b * b + c * c + d * d; }
    double norm() const { return std::sqrt(norm2()); }

    bool is_scalar(double tol) const {
        return std::abs(b) <= tol && std::abs(c) <= tol && std::abs(d) <= tol;
    }

    // 2x2 complex representation [[a+ib, c+id], [-c+id, a-ib]]
    void rep(Complex& m00, Complex& m01, Complex& m10, Complex& m11) const {
        m00 = Complex(a, b);
        m01 = Complex(c, d);
        m10 = Complex(-c, d);
        m11 = Complex(a, -b);
    }
};

constexpr Quaternion quat_mul(const Quaternion& p, const Quaternion& q) {
    return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return quat_mul(p, q);
}

// Dense matrix of real quaternions, row-major.
class QuaternionMatrix {
public:
    QuaternionMatrix() = default;
    QuaternionMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("QuaternionMatrix: negative dims");
    }

    static QuaternionMatrix identity(int n) {
        QuaternionMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = Quaternion(1.0);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Quaternion& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Quaternion& operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    QuaternionMatrix operator*(const QuaternionMatrix& o) const;

    // Hermitian conjugate: (Q^dagger)_{ij} = conj(q_{ji})
    QuaternionMatrix dagger() const;
    // dual: (Q^R)_{ij} = bar(q_{ji}); for real quaternions bar == dagger entrywise
    QuaternionMatrix dual() const { return dagger(); }

    // largest |component| over all entries
    double max_abs_component() const;

private:
    int rows_{0}, cols_{0};
    std::vector<Quaternion> data_;
};

// Theta: 2rows x 2cols complex matrix of 2x2 blocks.
ComplexMat to_complex_rep(const QuaternionMatrix& q);

// Inverse of to_complex_rep. Throws if A is not (close to) quaternion-real
// structured; the block structure is symmetrised.
QuaternionMatrix from_complex_rep(const ComplexMat& a, double tol);

// Z = e2 (x) I: block-diagonal matrix of [[0,1],[-1,0]] blocks, dim 2n.
ComplexMat symplectic_unit(int two_n);

// max-norm of A^dagger + Z A^T Z; zero iff A represents a quaternion-real matrix.
double quaternion_real_residual(const ComplexMat& a);

// true iff ||A^dagger + Z A^T Z||_max <= tol. Throws on odd dimension.
bool is_quaternion_real_rep(const ComplexMat& a, double tol);

}  // namespace truncsp
