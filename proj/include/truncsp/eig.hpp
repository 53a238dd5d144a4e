#pragma once

// Dense nonsymmetric complex eigensolver (LAPACK zgeev behind the scenes).
// BLAS threading is pinned to one thread on first use so draws stay
// bit-reproducible and workers do not oversubscribe.

#include <vector>

#include "truncsp/quaternion.hpp"

namespace truncsp {

std::vector<Complex> complex_eigenvalues(const ComplexMat& a);

}  // namespace truncsp
