#include "truncsp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "truncsp/eig.hpp"

namespace truncsp {

QuaternionMatrix sample_quaternion_ginibre(int dim, CounterRng& rng) {
    if (dim < 1) throw std::invalid_argument("sample_quaternion_ginibre: dim must be >= 1");
    QuaternionMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const double a = rng.normal();
            const double b = rng.normal();
            const double c = rng.normal();
            const double d = rng.normal();
            g(i, j) = Quaternion(a, b, c, d);
        }
    }
    return g;
}

namespace {

// <u, v> = sum_i conj(u_i) v_i over column entries (right-module convention)
Quaternion column_inner(const QuaternionMatrix& m, int col_u, int col_v) {
    Quaternion acc;
    for (int i = 0; i < m.rows(); ++i) acc = acc + m(i, col_u).conj() * m(i, col_v);
    return acc;
}

}  // namespace

QuaternionMatrix haar_unitary_quaternion(int dim, CounterRng& rng) {
    if (dim < 1) throw std::invalid_argument("haar_unitary_quaternion: dim must be >= 1");
    constexpr int kMaxRetries = 4;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        QuaternionMatrix u = sample_quaternion_ginibre(dim, rng);
        bool ok = true;
        for (int j = 0; j < dim && ok; ++j) {
            // modified Gram-Schmidt, one re-orthogonalisation pass
            for (int pass = 0; pass < 2; ++pass) {
                for (int l = 0; l < j; ++l) {
                    const Quaternion c = column_inner(u, l, j);
                    for (int i = 0; i < dim; ++i) u(i, j) = u(i, j) - u(i, l) * c;
                }
            }
            double nrm2 = 0.0;
            for (int i = 0; i < dim; ++i) nrm2 += u(i, j).norm2();
            if (!(nrm2 > 1e-280)) {
                ok = false;
                break;
            }
            const double inv = 1.0 / std::sqrt(nrm2);
            for (int i = 0; i < dim; ++i) u(i, j) = u(i, j) * inv;
        }
        if (ok) return u;
    }
    throw std::runtime_error("haar_unitary_quaternion: repeated singular Ginibre draws");
}

ComplexMat truncate_topleft(const QuaternionMatrix& u, int n_keep) {
    if (n_keep < 1 || n_keep > u.rows() || u.rows() != u.cols())
        throw std::invalid_argument("truncate_topleft: need 1 <= n_keep <= dim of a square matrix");
    ComplexMat a(2 * n_keep, 2 * n_keep);
    for (int i = 0; i < n_keep; ++i) {
        for (int j = 0; j < n_keep; ++j) {
            Complex m00, m01, m10, m11;
            u(i, j).rep(m00, m01, m10, m11);
            a(2 * i, 2 * j) = m00;
            a(2 * i, 2 * j + 1) = m01;
            a(2 * i + 1, 2 * j) = m10;
            a(2 * i + 1, 2 * j + 1) = m11;
        }
    }
    return a;
}

double default_pairing_tol(const ComplexMat& a) {
    return 1e-8 * (1.0 + a.cwiseAbs().maxCoeff());
}

SpectrumSample eigenvalues_paired(const ComplexMat& a, double tol) {
    if (!is_quaternion_real_rep(a, tol))
        throw std::invalid_argument("eigenvalues_paired: input is not a quaternion-real representation");

    const std::vector<Complex> spectrum = complex_eigenvalues(a);

    std::vector<Complex> pos, neg;
    std::vector<double> reals;
    for (const Complex ev : spectrum) {
        if (std::abs(ev.imag()) < tol) {
            reals.push_back(ev.real());
        } else if (ev.imag() > 0.0) {
            pos.push_back(ev);
        } else {
            neg.push_back(ev);
        }
    }

    double residual = 0.0;
    SpectrumSample out;

    if (pos.size() != neg.size()) throw PairingError(std::numeric_limits<double>::infinity());

    // sort by imaginary part, then greedily take the nearest conjugate
    std::sort(pos.begin(), pos.end(),
              [](Complex x, Complex y) { return x.imag() > y.imag(); });
    std::vector<bool> used(neg.size(), false);
    for (const Complex& p : pos) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < neg.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(p - std::conj(neg[j]));
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(j);
            }
        }
        if (best < 0 || best_d > tol) throw PairingError(best_d);
        used[static_cast<std::size_t>(best)] = true;
        residual = std::max(residual, best_d);
        out.eigenvalues.push_back(p);
    }

    // real eigenvalues have even multiplicity: pair consecutive, halve the count
    if (reals.size() % 2 != 0) throw PairingError(std::numeric_limits<double>::infinity());
    std::sort(reals.begin(), reals.end());
    for (std::size_t i = 0; i + 1 < reals.size(); i += 2) {
        const double d = std::abs(reals[i] - reals[i + 1]);
        if (d > tol) throw PairingError(d);
        residual = std::max(residual, d);
        out.eigenvalues.push_back(Complex(0.5 * (reals[i] + reals[i + 1]), 0.0));
    }

    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    out.pairing_residual = residual;
    return out;
}

SpectrumSample draw_spectrum(const TruncationParams& params, RngStream stream) {
    CounterRng rng(stream);
    const QuaternionMatrix u = haar_unitary_quaternion(params.k_total(), rng);
    const ComplexMat a = truncate_topleft(u, params.n_keep);
    SpectrumSample s = eigenvalues_paired(a, default_pairing_tol(a));
    s.seed_tag = stream.stream_index;
    return s;
}

}  // namespace truncsp
