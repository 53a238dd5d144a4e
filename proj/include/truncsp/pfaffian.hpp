#pragma once

// Pfaffian of complex skew-symmetric matrices via Parlett-Reid elimination
// with partial pivoting and sign tracking. Satisfies Pf(A)^2 = det(A).

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "truncsp/quaternion.hpp"

namespace truncsp {

// Skew-symmetric matrix of even dimension; only the strict upper triangle is
// stored, so A + A^T = 0 holds exactly by construction.
class SkewSymmetricMat {
public:
    explicit SkewSymmetricMat(int dim) : dim_(dim) {
        if (dim < 0 || dim % 2 != 0)
            throw std::invalid_argument("SkewSymmetricMat: dimension must be even and nonnegative");
        upper_.resize(static_cast<std::size_t>(dim) * (dim - 1) / 2);
    }

    int dim() const { return dim_; }

    // entry (i, j) with i < j
    Complex& upper(int i, int j) { return upper_[index(i, j)]; }
    Complex upper(int i, int j) const { return upper_[index(i, j)]; }

    Complex operator()(int i, int j) const {
        if (i == j) return 0.0;
        return i < j ? upper_[index(i, j)] : -upper_[index(j, i)];
    }

    ComplexMat dense() const {
        ComplexMat a = ComplexMat::Zero(dim_, dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j) {
                a(i, j) = upper(i, j);
                a(j, i) = -upper(i, j);
            }
        return a;
    }

private:
    std::size_t index(int i, int j) const {
        // row-major strict upper triangle
        return static_cast<std::size_t>(i) * (2 * dim_ - i - 1) / 2 + (j - i - 1);
    }

    int dim_{0};
    std::vector<Complex> upper_;
};

Complex pfaffian(const SkewSymmetricMat& a);

// In-place Parlett-Reid on a dense working copy; dimension must be even.
Complex pfaffian_dense(ComplexMat a);

}  // namespace truncsp
