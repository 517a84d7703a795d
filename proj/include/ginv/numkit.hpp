#pragma once

#include <cstddef>
#include <vector>

#include "ginv/errors.hpp"
#include "ginv/matrix.hpp"

/// Dense complex linear-algebra substrate. Every factorization used by the
/// rest of the library lives here so that the tolerance policy is applied in
/// one place.
namespace ginv::numkit {

/// Numeric policy threaded through every rank decision and identity check.
struct Tolerance {
    /// Singular values (or Schur diagonal moduli) at or below
    /// rank_rel * scale are treated as zero.
    double rank_rel = 1e-10;
    /// Absolute part of the identity threshold, max-entry norm.
    double eq_abs = 1e-9;
    /// Relative part, scaled by the larger operand's max-entry norm.
    double eq_rel = 1e-8;

    /// Throws std::invalid_argument if any field is negative or not finite.
    void validate() const;
};

struct Svd {
    ComplexMatrix u;             // m x m unitary
    std::vector<double> sigma;   // min(m, n), nonincreasing
    ComplexMatrix v;             // n x n unitary
};

struct OrderedSchur {
    ComplexMatrix u;  // unitary
    ComplexMatrix r;  // upper triangular, a = u r u*
    std::size_t split = 0;
};

struct Qr {
    ComplexMatrix q;  // m x m unitary
    ComplexMatrix r;  // m x n upper trapezoidal
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix conj_transpose(const ComplexMatrix& a);

/// Max-absolute-entry norm (0 for empty matrices).
double max_abs(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);

/// true iff ||a-b||_max <= eq_abs + eq_rel * max(||a||_max, ||b||_max).
bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol);

/// ||a-b||_max; throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// One-sided Jacobi SVD. Throws NumericError if the sweeps do not converge.
Svd svd(const ComplexMatrix& a, const Tolerance& tol = {});

std::vector<double> singular_values(const ComplexMatrix& a, const Tolerance& tol = {});

/// Number of singular values above rank_rel * max(sigma_max, scale). A
/// positive scale lets a product whose exact value is zero (a power of a
/// nilpotent matrix, say) be measured against the size of its factors.
std::size_t rank(const ComplexMatrix& a, const Tolerance& tol = {}, double scale = 0.0);

/// Moore-Penrose inverse through the SVD, inverting singular values above the
/// rank cutoff.
ComplexMatrix pinv(const ComplexMatrix& a, const Tolerance& tol = {}, double scale = 0.0);

/// Householder QR with a complete unitary factor.
Qr qr(const ComplexMatrix& a);

/// Complex Schur form with the diagonal reordered so that entries whose
/// modulus exceeds rank_rel * ||a||_F come first; split counts them.
OrderedSchur ordered_schur(const ComplexMatrix& a, const Tolerance& tol = {});

/// Complex Schur form with the `leading` eigenvalues of largest modulus moved
/// to the top-left corner; split = leading.
OrderedSchur ordered_schur_leading(const ComplexMatrix& a, std::size_t leading,
                                   const Tolerance& tol = {});

/// Inverse of a square matrix by LU with partial pivoting. A pivot at or below
/// rank_rel * ||t||_max raises NumericError reporting its magnitude.
ComplexMatrix inverse(const ComplexMatrix& t, const Tolerance& tol = {});

/// Solves r x = b for upper triangular r by back substitution.
ComplexMatrix solve_upper_triangular(const ComplexMatrix& r, const ComplexMatrix& b,
                                     const Tolerance& tol = {});

/// a^p by repeated squaring; a^0 = I.
ComplexMatrix mat_pow(const ComplexMatrix& a, unsigned p);

/// 2-norm condition number from the singular values (inf if singular).
double condition_number(const ComplexMatrix& a, const Tolerance& tol = {});

}  // namespace ginv::numkit
