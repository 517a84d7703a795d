#include "ginv/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ginv::decomp {

using numkit::conj_transpose;
using numkit::mat_pow;
using numkit::max_abs;
using numkit::pinv;

namespace {

struct IndexInfo {
    unsigned index = 0;
    std::size_t core_rank = 0;  // rank(A^index)
};

IndexInfo index_and_core_rank(const ComplexMatrix& a, const Tolerance& tol, double norm_ref) {
    if (!a.is_square())
        throw DimensionError("matrix index needs a square matrix, got " + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()));
    const std::size_t n = a.rows();
    const double norm =
        std::max(n == 0 ? 0.0 : numkit::singular_values(a, tol).front(), norm_ref);
    std::size_t prev = n;  // rank(A^0)
    ComplexMatrix power = ComplexMatrix::identity(n);
    for (unsigned k = 0; k <= n; ++k) {
        power = power * a;
        const std::size_t r = numkit::rank(power, tol, std::pow(norm, k + 1));
        if (r >= prev) return {k, prev};
        prev = r;
    }
    return {static_cast<unsigned>(n), prev};
}

void require_positive(unsigned ell, const char* what) {
    if (ell == 0) throw std::invalid_argument(std::string(what) + ": ell must be >= 1");
}

// ||a||_2^ell, the size against which rounding in a^ell is judged.
double power_scale(const ComplexMatrix& a, unsigned ell, const Tolerance& tol) {
    if (a.empty()) return 0.0;
    return std::pow(numkit::singular_values(a, tol).front(), ell);
}

}  // namespace

unsigned matrix_index(const ComplexMatrix& a, const Tolerance& tol) {
    return index_and_core_rank(a, tol, 0.0).index;
}

CoreEpDecomposition core_ep(const ComplexMatrix& a, const Tolerance& tol, double norm_ref) {
    const IndexInfo info = index_and_core_rank(a, tol, norm_ref);
    const std::size_t n = a.rows();
    const std::size_t t = info.core_rank;

    CoreEpDecomposition d;
    d.t_size = t;
    d.index = info.index;
    if (t == n || t == 0) {
        // Already in block form with U = I: A = T, or A = N.
        d.u = ComplexMatrix::identity(n);
        d.t_block = t == n ? a : ComplexMatrix(0, 0);
        d.s_block = ComplexMatrix(t, n - t);
        d.n_block = t == n ? ComplexMatrix(0, 0) : a;
    } else {
        // The t eigenvalues of largest modulus are the nonzero ones; the zero
        // cluster is perturbed by roughly eps^(1/k), so it is located by count
        // rather than by an absolute cutoff.
        numkit::OrderedSchur s = numkit::ordered_schur_leading(a, t, tol);
        d.u = std::move(s.u);
        d.t_block = s.r.block(0, 0, t, t);
        d.s_block = s.r.block(0, t, t, n - t);
        d.n_block = s.r.block(t, t, n - t, n - t);
    }

    if (t > 0) {
        if (numkit::rank(d.t_block, tol) != t)
            throw NumericError("core-EP decomposition: leading block is singular to tolerance");
        d.t_condition = numkit::condition_number(d.t_block, tol);
    }
    if (t < n && d.index > 0) {
        const double scale =
            std::pow(std::max({numkit::frobenius_norm(a), norm_ref, 1.0}), d.index);
        const double residual = max_abs(mat_pow(d.n_block, d.index));
        if (residual > tol.eq_abs + tol.eq_rel * scale) {
            std::ostringstream msg;
            msg << "core-EP decomposition: N^" << d.index << " has entries of size " << residual
                << "; the eigenvalue split disagrees with rank(A^k) = " << t;
            throw NumericError(msg.str());
        }
    }
    return d;
}

ComplexMatrix from_blocks(const CoreEpDecomposition& d, const ComplexMatrix& x11,
                          const ComplexMatrix& x12, const ComplexMatrix& x21,
                          const ComplexMatrix& x22) {
    return d.u * ComplexMatrix::from_blocks(x11, x12, x21, x22) * conj_transpose(d.u);
}

ComplexMatrix from_top_blocks(const CoreEpDecomposition& d, const ComplexMatrix& x11,
                              const ComplexMatrix& x12) {
    const std::size_t t = d.t_size;
    const std::size_t rest = d.n() - t;
    return from_blocks(d, x11, x12, ComplexMatrix(rest, t), ComplexMatrix(rest, rest));
}

Blocks to_blocks(const CoreEpDecomposition& d, const ComplexMatrix& x) {
    const ComplexMatrix y = conj_transpose(d.u) * x * d.u;
    const std::size_t t = d.t_size;
    const std::size_t rest = d.n() - t;
    return {y.block(0, 0, t, t), y.block(0, t, t, rest), y.block(t, 0, rest, t),
            y.block(t, t, rest, rest)};
}

ComplexMatrix reconstruct(const CoreEpDecomposition& d) {
    return from_blocks(d, d.t_block, d.s_block, ComplexMatrix(d.n() - d.t_size, d.t_size),
                       d.n_block);
}

ComplexMatrix t_tilde(const CoreEpDecomposition& d, unsigned ell) {
    require_positive(ell, "t_tilde");
    // T~_{j+1} = T T~_j + S N^j
    ComplexMatrix acc = d.s_block;
    ComplexMatrix n_pow = d.n_block;
    for (unsigned j = 1; j < ell; ++j) {
        acc = d.t_block * acc + d.s_block * n_pow;
        if (j + 1 < ell) n_pow = n_pow * d.n_block;
    }
    return acc;
}

ComplexMatrix pinv_power_blockwise(const CoreEpDecomposition& d, unsigned ell,
                                   const Tolerance& tol) {
    require_positive(ell, "pinv_power_blockwise");
    const std::size_t rest = d.n() - d.t_size;
    const ComplexMatrix t_pow = mat_pow(d.t_block, ell);
    const ComplexMatrix t_pow_h = conj_transpose(t_pow);
    const ComplexMatrix tt = t_tilde(d, ell);
    const ComplexMatrix n_pow = n_power(d, ell);
    const ComplexMatrix n_pinv = pinv(n_pow, tol, power_scale(d.n_block, ell, tol));
    const ComplexMatrix omega = tt * (ComplexMatrix::identity(rest) - n_pinv * n_pow);
    const ComplexMatrix omega_h = conj_transpose(omega);

    ComplexMatrix delta;
    try {
        delta = numkit::inverse(t_pow * t_pow_h + omega * omega_h, tol);
    } catch (const NumericError& e) {
        throw NumericError(std::string("blockwise (A^ell)^dagger: Delta is not invertible: ") +
                           e.what());
    }
    const ComplexMatrix tt_np = tt * n_pinv;
    return from_blocks(d, t_pow_h * delta, -(t_pow_h * delta * tt_np), omega_h * delta,
                       n_pinv - omega_h * delta * tt_np);
}

ComplexMatrix n_power(const CoreEpDecomposition& d, unsigned ell) {
    const std::size_t rest = d.n() - d.t_size;
    if (ell >= d.index && ell > 0) return ComplexMatrix(rest, rest);
    return mat_pow(d.n_block, ell);
}

ComplexMatrix n_projector(const CoreEpDecomposition& d, unsigned ell, const Tolerance& tol) {
    require_positive(ell, "n_projector");
    const ComplexMatrix p = n_power(d, ell);
    return p * pinv(p, tol, power_scale(d.n_block, ell, tol));
}

ComplexMatrix pinv_power(const ComplexMatrix& a, unsigned ell, const Tolerance& tol,
                         double norm_ref) {
    if (!a.is_square()) throw DimensionError("pinv_power needs a square matrix");
    const double scale = std::max(power_scale(a, ell, tol), std::pow(norm_ref, ell));
    return pinv(mat_pow(a, ell), tol, scale);
}

ComplexMatrix projector_power(const ComplexMatrix& a, unsigned ell, const Tolerance& tol,
                              double norm_ref) {
    require_positive(ell, "projector_power");
    return mat_pow(a, ell) * pinv_power(a, ell, tol, norm_ref);
}

ComplexMatrix range_star_projector_power(const ComplexMatrix& a, unsigned ell,
                                         const Tolerance& tol) {
    require_positive(ell, "range_star_projector_power");
    return pinv_power(a, ell, tol) * mat_pow(a, ell);
}

HsDecomposition hs_decompose(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square())
        throw DimensionError("HS decomposition needs a square matrix");
    const numkit::Svd s = numkit::svd(a, tol);
    const std::size_t n = a.rows();
    std::size_t r = 0;
    if (n > 0) {
        const double cutoff = tol.rank_rel * s.sigma.front();
        while (r < n && s.sigma[r] > cutoff) ++r;
    }
    if (r == 0) throw PreconditionError("HS undefined for rank 0");

    HsDecomposition d;
    d.u = s.u;
    d.r_size = r;
    d.sigma = ComplexMatrix(r, r);
    for (std::size_t i = 0; i < r; ++i) d.sigma(i, i) = s.sigma[i];
    const ComplexMatrix vw = conj_transpose(s.v) * s.u;
    d.k_block = vw.block(0, 0, r, r);
    d.l_block = vw.block(0, r, r, n - r);
    return d;
}

ComplexMatrix reconstruct(const HsDecomposition& d) {
    const std::size_t r = d.r_size;
    const std::size_t rest = d.u.rows() - r;
    const ComplexMatrix inner = ComplexMatrix::from_blocks(
        d.sigma * d.k_block, d.sigma * d.l_block, ComplexMatrix(rest, r), ComplexMatrix(rest, rest));
    return d.u * inner * conj_transpose(d.u);
}

}  // namespace ginv::decomp
