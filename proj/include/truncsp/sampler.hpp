#pragma once

// Haar sampling on U(N, H) by quaternion Gram-Schmidt of a quaternion
// Ginibre draw, truncation to the top-left block, and extraction of the
// conjugate-paired spectrum.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "truncsp/params.hpp"
#include "truncsp/quaternion.hpp"
#include "truncsp/rng.hpp"

namespace truncsp {

// One draw: the N upper-half-plane eigenvalue representatives of the
// truncated block, sorted by (Re, Im).
struct SpectrumSample {
    std::vector<Complex> eigenvalues;
    double pairing_residual{0.0};
    std::uint64_t seed_tag{0};
};

struct PairingError : std::runtime_error {
    explicit PairingError(double res)
        : std::runtime_error("eigenvalue pairing failed; residual above tolerance"),
          residual(res) {}
    double residual;
};

// dim x dim matrix of independent standard-normal quaternion components.
QuaternionMatrix sample_quaternion_ginibre(int dim, CounterRng& rng);

// Haar-distributed U with U^dagger U = I in quaternion arithmetic.
// Gram-Schmidt with one re-orthogonalisation pass; resamples internally on a
// numerically singular draw (bounded retries).
QuaternionMatrix haar_unitary_quaternion(int dim, CounterRng& rng);

// top-left 2*n_keep x 2*n_keep block of Theta(U).
ComplexMat truncate_topleft(const QuaternionMatrix& u, int n_keep);

double default_pairing_tol(const ComplexMat& a);

// Eigenvalues of the complex representation, greedily matched into conjugate
// pairs; returns the upper-half representatives (real eigenvalues have even
// multiplicity and are halved in count). Throws PairingError if some
// eigenvalue has no partner within tol.
SpectrumSample eigenvalues_paired(const ComplexMat& a, double tol);

// full pipeline: Ginibre -> Haar -> truncate -> paired spectrum.
SpectrumSample draw_spectrum(const TruncationParams& params, RngStream stream);

}  // namespace truncsp
