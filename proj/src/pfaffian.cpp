#include "truncsp/pfaffian.hpp"

namespace truncsp {

Complex pfaffian_dense(ComplexMat a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("pfaffian: matrix must be square");
    const int n = static_cast<int>(a.rows());
    if (n % 2 != 0) throw std::invalid_argument("pfaffian: dimension must be even");
    if (n == 0) return 1.0;

    Complex pf = 1.0;
    for (int k = 0; k + 1 < n; k += 2) {
        // pivot: largest |a(j, k)| for j > k
        int piv = k + 1;
        double best = std::abs(a(k + 1, k));
        for (int j = k + 2; j < n; ++j) {
            const double v = std::abs(a(j, k));
            if (v > best) {
                best = v;
                piv = j;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != k + 1) {
            a.row(k + 1).swap(a.row(piv));
            a.col(k + 1).swap(a.col(piv));
            pf = -pf;
        }
        pf *= a(k, k + 1);
        if (k + 2 < n) {
            const int m = n - k - 2;
            // Gauss vector tau eliminates column k below row k+1;
            // rank-two skew update of the trailing block
            Eigen::VectorXcd tau =
                a.block(k + 2, k, m, 1) / a(k + 1, k);
            Eigen::VectorXcd row_next = a.block(k + 2, k + 1, m, 1);
            a.block(k + 2, k + 2, m, m) +=
                tau * row_next.transpose() - row_next * tau.transpose();
        }
    }
    return pf;
}

Complex pfaffian(const SkewSymmetricMat& a) { return pfaffian_dense(a.dense()); }

}  // namespace truncsp
