#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace gframe {

// Doubles are derived from the raw mt19937_64 stream so that the sequence is
// pinned by the standard, not by the library's distribution implementation.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::complex<double> random_complex(std::mt19937_64& rng) {
    return {2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
}

inline Eigen::VectorXcd random_vector(int dim, std::mt19937_64& rng) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = random_complex(rng);
    return v;
}

inline Eigen::VectorXcd random_vector(int dim, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_vector(dim, rng);
}

inline Eigen::MatrixXcd random_matrix(int rows, int cols, std::mt19937_64& rng) {
    Eigen::MatrixXcd m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = random_complex(rng);
    return m;
}

}  // namespace gframe
