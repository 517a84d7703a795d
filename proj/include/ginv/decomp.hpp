#pragma once

#include <cstddef>

#include "ginv/matrix.hpp"
#include "ginv/numkit.hpp"

namespace ginv::decomp {

using numkit::Tolerance;

/// A = U [[T, S], [0, N]] U* with T (t x t) nonsingular and N nilpotent of
/// index k. For k = 0 the S and N blocks are empty; for t = 0 so are T and S.
struct CoreEpDecomposition {
    ComplexMatrix u;
    ComplexMatrix t_block;
    ComplexMatrix s_block;
    ComplexMatrix n_block;
    std::size_t t_size = 0;
    unsigned index = 0;
    /// 2-norm condition number of T (1 when T is empty).
    double t_condition = 1.0;

    std::size_t n() const noexcept { return u.rows(); }
};

/// A = U [[Sigma K, Sigma L], [0, 0]] U* with K K* + L L* = I_r.
struct HsDecomposition {
    ComplexMatrix u;
    ComplexMatrix sigma;  // r x r diagonal, positive, nonincreasing
    ComplexMatrix k_block;
    ComplexMatrix l_block;
    std::size_t r_size = 0;
};

/// Smallest k >= 0 with rank(A^k) = rank(A^(k+1)).
unsigned matrix_index(const ComplexMatrix& a, const Tolerance& tol = {});

/// Rank decisions on powers A^j are measured against max(||A||_2, norm_ref)^j.
/// norm_ref matters when A is a block of a larger matrix whose rounding it
/// inherits.
CoreEpDecomposition core_ep(const ComplexMatrix& a, const Tolerance& tol = {},
                            double norm_ref = 0.0);

/// U [[x11, x12], [x21, x22]] U* in the coordinates of `d`.
ComplexMatrix from_blocks(const CoreEpDecomposition& d, const ComplexMatrix& x11,
                          const ComplexMatrix& x12, const ComplexMatrix& x21,
                          const ComplexMatrix& x22);

/// U [[x11, x12], [0, 0]] U*.
ComplexMatrix from_top_blocks(const CoreEpDecomposition& d, const ComplexMatrix& x11,
                              const ComplexMatrix& x12);

/// U* x U partitioned as [[x11, x12], [x21, x22]] at t.
struct Blocks {
    ComplexMatrix x11, x12, x21, x22;
};
Blocks to_blocks(const CoreEpDecomposition& d, const ComplexMatrix& x);

ComplexMatrix reconstruct(const CoreEpDecomposition& d);

/// sum_{i=0}^{ell-1} T^i S N^(ell-1-i), the upper-right block of U* A^ell U.
ComplexMatrix t_tilde(const CoreEpDecomposition& d, unsigned ell);

/// (A^ell)^dagger assembled from the block formula with
/// Delta = (T^ell (T^ell)* + Omega Omega*)^-1 and Omega = T~_ell (I - Q_{N^ell}).
ComplexMatrix pinv_power_blockwise(const CoreEpDecomposition& d, unsigned ell,
                                   const Tolerance& tol = {});

/// N^ell, taken as exactly zero for ell >= index (N is nilpotent of that index).
ComplexMatrix n_power(const CoreEpDecomposition& d, unsigned ell);

/// P_{N^ell}, zero for ell >= index. ell >= 1.
ComplexMatrix n_projector(const CoreEpDecomposition& d, unsigned ell, const Tolerance& tol = {});

/// (A^ell)^dagger with the rank cutoff measured against ||A||_2^ell, so that a
/// power which vanishes in exact arithmetic yields zero rather than the
/// inverse of its rounding noise.
ComplexMatrix pinv_power(const ComplexMatrix& a, unsigned ell, const Tolerance& tol = {},
                         double norm_ref = 0.0);

/// P_{A^ell} = A^ell (A^ell)^dagger, ell >= 1.
ComplexMatrix projector_power(const ComplexMatrix& a, unsigned ell, const Tolerance& tol = {},
                              double norm_ref = 0.0);

/// Q_{A^ell} = (A^ell)^dagger A^ell, ell >= 1.
ComplexMatrix range_star_projector_power(const ComplexMatrix& a, unsigned ell,
                                         const Tolerance& tol = {});

/// Built from the SVD A = W S V*: U = W, Sigma the leading r x r block of S,
/// and [K | L] the first r rows of V* W. Throws PreconditionError for rank 0.
HsDecomposition hs_decompose(const ComplexMatrix& a, const Tolerance& tol = {});

ComplexMatrix reconstruct(const HsDecomposition& d);

}  // namespace ginv::decomp
