#pragma once

#include <stdexcept>

namespace truncsp {

// (N, M): kept quaternion dimension and removed quaternion rows/columns.
struct TruncationParams {
    int n_keep{1};
    int m_removed{1};

    TruncationParams() = default;
    TruncationParams(int n, int m) : n_keep(n), m_removed(m) {
        if (n < 1 || m < 1)
            throw std::invalid_argument("TruncationParams: need n_keep >= 1 and m_removed >= 1");
    }

    int k_total() const { return n_keep + m_removed; }
};

}  // namespace truncsp
