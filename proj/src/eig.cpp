#include "truncsp/eig.hpp"

#include <cstdlib>
#include <mutex>
#include <stdexcept>

#include <lapacke.h>

namespace truncsp {

namespace {

// must run before the BLAS backend spins up its thread pool
void pin_blas_threads() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        setenv("OPENBLAS_NUM_THREADS", "1", /*overwrite=*/0);
        setenv("OMP_NUM_THREADS", "1", /*overwrite=*/0);
    });
}

struct BlasPin {
    BlasPin() { pin_blas_threads(); }
};
const BlasPin pin_at_load;

}  // namespace

std::vector<Complex> complex_eigenvalues(const ComplexMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("complex_eigenvalues: matrix must be square");
    pin_blas_threads();
    const lapack_int n = static_cast<lapack_int>(a.rows());
    ComplexMat work = a;  // column-major, matches LAPACK
    std::vector<Complex> evs(static_cast<std::size_t>(n));
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', 'N', n, reinterpret_cast<lapack_complex_double*>(work.data()), n,
        reinterpret_cast<lapack_complex_double*>(evs.data()), nullptr, 1, nullptr, 1);
    if (info != 0) throw std::runtime_error("complex_eigenvalues: zgeev failed to converge");
    return evs;
}

}  // namespace truncsp
