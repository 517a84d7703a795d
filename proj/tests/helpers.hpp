#pragma once

#include <doctest.h>

#include "ginv/numkit.hpp"
#include "ginv/verify.hpp"

namespace helpers {

using ginv::ComplexMatrix;

inline void check_close(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    CHECK(ginv::numkit::max_abs_diff(a, b) <= tol);
}

inline ComplexMatrix random(std::size_t r, std::size_t c, std::uint64_t seed) {
    return ginv::verify::random_gaussian(r, c, seed);
}

// Product of random r x k and k x c factors: rank k almost surely.
inline ComplexMatrix random_rank(std::size_t r, std::size_t c, std::size_t k, std::uint64_t seed) {
    return random(r, k, seed) * random(k, c, seed + 1);
}

inline ComplexMatrix unitary_residual(const ComplexMatrix& u) {
    return ginv::numkit::conj_transpose(u) * u - ComplexMatrix::identity(u.cols());
}

}  // namespace helpers
