#include "truncsp/quaternion.hpp"

namespace truncsp {

QuaternionMatrix QuaternionMatrix::operator*(const QuaternionMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("QuaternionMatrix: dim mismatch in product");
    QuaternionMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const Quaternion& left = (*this)(i, k);
            if (left == Quaternion{}) continue;
            for (int j = 0; j < o.cols_; ++j) {
                r(i, j) = r(i, j) + left * o(k, j);
            }
        }
    }
    return r;
}

QuaternionMatrix QuaternionMatrix::dagger() const {
    QuaternionMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conj();
    return r;
}

double QuaternionMatrix::max_abs_component() const {
    double m = 0.0;
    for (const auto& q : data_) {
        m = std::max({m, std::abs(q.a), std::abs(q.b), std::abs(q.c), std::abs(q.d)});
    }
    return m;
}

ComplexMat to_complex_rep(const QuaternionMatrix& q) {
    ComplexMat a(2 * q.rows(), 2 * q.cols());
    for (int i = 0; i < q.rows(); ++i) {
        for (int j = 0; j < q.cols(); ++j) {
            Complex m00, m01, m10, m11;
            q(i, j).rep(m00, m01, m10, m11);
            a(2 * i, 2 * j) = m00;
            a(2 * i, 2 * j + 1) = m01;
            a(2 * i + 1, 2 * j) = m10;
            a(2 * i + 1, 2 * j + 1) = m11;
        }
    }
    return a;
}

QuaternionMatrix from_complex_rep(const ComplexMat& a, double tol) {
    if (a.rows() % 2 != 0 || a.cols() % 2 != 0)
        throw std::invalid_argument("from_complex_rep: dimensions must be even");
    const int rows = static_cast<int>(a.rows()) / 2;
    const int cols = static_cast<int>(a.cols()) / 2;
    QuaternionMatrix q(rows, cols);
    double worst = 0.0;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const Complex m00 = a(2 * i, 2 * j);
            const Complex m01 = a(2 * i, 2 * j + 1);
            const Complex m10 = a(2 * i + 1, 2 * j);
            const Complex m11 = a(2 * i + 1, 2 * j + 1);
            // block must be [[a+ib, c+id], [-c+id, a-ib]]
            worst = std::max(worst, std::abs(m00 - std::conj(m11)));
            worst = std::max(worst, std::abs(m01 + std::conj(m10)));
            q(i, j) = Quaternion(0.5 * (m00.real() + m11.real()), 0.5 * (m00.imag() - m11.imag()),
                                 0.5 * (m01.real() - m10.real()), 0.5 * (m01.imag() + m10.imag()));
        }
    }
    if (worst > tol)
        throw std::invalid_argument("from_complex_rep: matrix is not quaternion-real structured");
    return q;
}

ComplexMat symplectic_unit(int two_n) {
    if (two_n % 2 != 0) throw std::invalid_argument("symplectic_unit: dimension must be even");
    ComplexMat z = ComplexMat::Zero(two_n, two_n);
    for (int i = 0; i < two_n / 2; ++i) {
        z(2 * i, 2 * i + 1) = 1.0;
        z(2 * i + 1, 2 * i) = -1.0;
    }
    return z;
}

double quaternion_real_residual(const ComplexMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("quaternion_real_residual: matrix must be square");
    if (a.rows() % 2 != 0) throw std::invalid_argument("quaternion_real_residual: dimension must be even");
    const ComplexMat z = symplectic_unit(static_cast<int>(a.rows()));
    const ComplexMat res = a.adjoint() + z * a.transpose() * z;
    return res.cwiseAbs().maxCoeff();
}

bool is_quaternion_real_rep(const ComplexMat& a, double tol) {
    return quaternion_real_residual(a) <= tol;
}

}  // namespace truncsp
