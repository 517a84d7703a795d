#include "ginv/inverses.hpp"

#include <sstream>
#include <stdexcept>

namespace ginv::inverses {

using decomp::CoreEpDecomposition;
using numkit::inverse;
using numkit::mat_pow;
using numkit::pinv;

namespace {

void require_square(const ComplexMatrix& a) {
    if (!a.is_square())
        throw DimensionError("generalized inverses here need a square matrix, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

void require_m(unsigned m) {
    if (m == 0) throw std::invalid_argument("m must be a positive integer");
}

void require_index_at_most_one(unsigned k, const char* message) {
    if (k > 1) throw PreconditionError(std::string(message) + " (index is " + std::to_string(k) + ")");
}

// Cached pieces of a core-EP decomposition shared by the block forms.
class CanonicalParts {
public:
    CanonicalParts(const CoreEpDecomposition& d, const Tolerance& tol)
        : d_(d), tol_(tol), t_inv_(inverse(d.t_block, tol)) {}

    std::size_t rest() const { return d_.n() - d_.t_size; }
    ComplexMatrix t_inv_pow(unsigned p) const { return mat_pow(t_inv_, p); }
    ComplexMatrix p_n_pow(unsigned p) const {
        return decomp::n_projector(d_, p, tol_);
    }
    ComplexMatrix top(const ComplexMatrix& x12) const {
        return decomp::from_top_blocks(d_, t_inv_, x12);
    }
    ComplexMatrix zero_top_right() const { return ComplexMatrix(d_.t_size, rest()); }

private:
    const CoreEpDecomposition& d_;
    const Tolerance& tol_;
    ComplexMatrix t_inv_;
};

ComplexMatrix route_error(Route route, const char* kind) {
    throw PreconditionError("route " + to_string(route) + " is not available for the " + kind +
                            " inverse");
}

// --- product formulas ------------------------------------------------------

ComplexMatrix drazin_def(const ComplexMatrix& a, unsigned k, const Tolerance& tol) {
    const ComplexMatrix ak = mat_pow(a, k);
    return ak * decomp::pinv_power(a, 2 * k + 1, tol) * ak;
}

ComplexMatrix core_ep_def(const ComplexMatrix& a, unsigned k, const Tolerance& tol) {
    const ComplexMatrix ad = drazin_def(a, k, tol);
    if (k == 0) return ad;
    return ad * decomp::projector_power(a, k, tol);
}

ComplexMatrix m_weak_group_def(const ComplexMatrix& a, unsigned k, unsigned m,
                               const Tolerance& tol) {
    return mat_pow(core_ep_def(a, k, tol), m + 1) * mat_pow(a, m);
}

// --- Hartwig-Spindelbock ---------------------------------------------------

template <typename Leading>
ComplexMatrix hs_route(const ComplexMatrix& a, const Tolerance& tol, Leading leading) {
    const decomp::HsDecomposition hs = decomp::hs_decompose(a, tol);
    const std::size_t r = hs.r_size;
    const std::size_t rest = a.rows() - r;
    // SK carries the rounding of A, so its rank decisions are scaled by ||A||.
    const ComplexMatrix x11 = leading(hs.sigma * hs.k_block, std::real(hs.sigma(0, 0)));
    const ComplexMatrix inner = ComplexMatrix::from_blocks(
        x11, ComplexMatrix(r, rest), ComplexMatrix(rest, r), ComplexMatrix(rest, rest));
    return hs.u * inner * numkit::conj_transpose(hs.u);
}

ComplexMatrix m_weak_core_hs(const ComplexMatrix& a, unsigned m, const Tolerance& tol) {
    return hs_route(a, tol, [&](const ComplexMatrix& sk, double norm) {
        const ComplexMatrix w = canonical::m_weak_group(decomp::core_ep(sk, tol, norm), m, tol);
        if (m == 1) return w;  // P_{(SK)^0} = I
        return w * decomp::projector_power(sk, m - 1, tol, norm);
    });
}

}  // namespace

void InverseKind::validate() const {
    if (has_parameter() && m == 0)
        throw std::invalid_argument(to_string(*this) + " requires m >= 1");
}

std::string to_string(const InverseKind& kind) {
    switch (kind.kind) {
        case Kind::MoorePenrose: return "mp";
        case Kind::Group: return "group";
        case Kind::Drazin: return "drazin";
        case Kind::Core: return "core";
        case Kind::CoreEp: return "core-ep";
        case Kind::Dmp: return "dmp";
        case Kind::Wg: return "wg";
        case Kind::MWeakGroup: return "mwg(m=" + std::to_string(kind.m) + ")";
        case Kind::Wc: return "wc";
        case Kind::MWeakCore: return "mwc(m=" + std::to_string(kind.m) + ")";
    }
    return "unknown";
}

std::string to_string(Route route) {
    switch (route) {
        case Route::Definitional: return "definitional";
        case Route::CoreEpCanonical: return "canonical";
        case Route::HartwigSpindelbock: return "hs";
    }
    return "unknown";
}

bool supports(Route route, Kind kind) noexcept {
    if (route != Route::HartwigSpindelbock) return true;
    return kind == Kind::MWeakCore || kind == Kind::Wc || kind == Kind::CoreEp;
}

namespace canonical {

ComplexMatrix moore_penrose(const CoreEpDecomposition& d, const Tolerance& tol) {
    return decomp::pinv_power_blockwise(d, 1, tol);
}

ComplexMatrix drazin(const CoreEpDecomposition& d, const Tolerance& tol) {
    const CanonicalParts p(d, tol);
    if (d.index == 0) return p.top(p.zero_top_right());
    return p.top(p.t_inv_pow(d.index + 1) * decomp::t_tilde(d, d.index));
}

ComplexMatrix core_ep_inverse(const CoreEpDecomposition& d, const Tolerance& tol) {
    const CanonicalParts p(d, tol);
    return p.top(p.zero_top_right());
}

ComplexMatrix dmp_inverse(const CoreEpDecomposition& d, const Tolerance& tol) {
    const CanonicalParts p(d, tol);
    if (d.index == 0) return p.top(p.zero_top_right());
    return p.top(p.t_inv_pow(d.index + 1) * decomp::t_tilde(d, d.index) * p.p_n_pow(1));
}

ComplexMatrix m_weak_group(const CoreEpDecomposition& d, unsigned m, const Tolerance& tol) {
    require_m(m);
    const CanonicalParts p(d, tol);
    return p.top(p.t_inv_pow(m + 1) * decomp::t_tilde(d, m));
}

ComplexMatrix wc_inverse(const CoreEpDecomposition& d, const Tolerance& tol) {
    const CanonicalParts p(d, tol);
    return p.top(p.t_inv_pow(2) * d.s_block * p.p_n_pow(1));
}

ComplexMatrix m_weak_core(const CoreEpDecomposition& d, unsigned m, const Tolerance& tol) {
    require_m(m);
    const CanonicalParts p(d, tol);
    return p.top(p.t_inv_pow(m + 1) * decomp::t_tilde(d, m) * p.p_n_pow(m));
}

}  // namespace canonical

ComplexMatrix moore_penrose(const ComplexMatrix& a, const Tolerance& tol, Route route) {
    require_square(a);
    switch (route) {
        case Route::Definitional: return decomp::pinv_power(a, 1, tol);
        case Route::CoreEpCanonical: return canonical::moore_penrose(decomp::core_ep(a, tol), tol);
        default: return route_error(route, "Moore-Penrose");
    }
}

ComplexMatrix drazin(const ComplexMatrix& a, const Tolerance& tol, Route route) {
    require_square(a);
    switch (route) {
        case Route::Definitional: return drazin_def(a, decomp::matrix_index(a, tol), tol);
        case Route::CoreEpCanonical: return canonical::drazin(decomp::core_ep(a, tol), tol);
        default: return route_error(route, "Drazin");
    }
}

ComplexMatrix group_inverse(const ComplexMatrix& a, const Tolerance& tol, Route route) {
    require_square(a);
    if (route == Route::HartwigSpindelbock) return route_error(route, "group");
    const unsigned k = decomp::matrix_index(a, tol);
    require_index_at_most_one(k, "group inverse requires index <= 1");
    return drazin(a, tol, route);
}

ComplexMatrix core_ep_inverse(const ComplexMatrix& a, const Tolerance& tol, Route route) {
    require_square(a);
    switch (route) {
        case Route::Definitional: return core_ep_def(a, decomp::matrix_index(a, tol), tol);
        case Route::CoreEpCanonical:
            return canonical::core_ep_inverse(decomp::core_ep(a, tol), tol);
        case Route::HartwigSpindelbock:
            return hs_route(a, tol, [&](const ComplexMatrix& sk, double norm) {
                return canonical::core_ep_inverse(decomp::core_ep(sk, tol, norm), tol);
            });
    }
    return route_error(route, "core-EP");
}

ComplexMatrix core_inverse(const ComplexMatrix& a, const Tolerance& tol, Route route) {
    require_square(a);
    const unsigned k = decomp::matrix_index(a, tol);
    require_index_at_most_one(k, "core inverse exists iff Ind(A) <= 1");
    switch (route) {
        case Route::Definitional: return drazin_def(a, k, tol) * a * decomp::pinv_power(a, 1, tol);
        case Route::CoreEpCanonical:
            return canonical::core_ep_inverse(decomp::core_ep(a, tol), tol);
        default: return route_error(route, "core");
    }
}

ComplexMatrix dmp_inverse(const ComplexMatrix& a, const Tolerance& tol, Route route) {
    require_square(a);
    switch (route) {
        case Route::Definitional:
            return drazin_def(a, decomp::matrix_index(a, tol), tol) * a * decomp::pinv_power(a, 1, tol);
        case Route::CoreEpCanonical: return canonical::dmp_inverse(decomp::core_ep(a, tol), tol);
        default: return route_error(route, "DMP");
    }
}

ComplexMatrix wg_inverse(const ComplexMatrix& a, const Tolerance& tol, Route route) {
    return m_weak_group(a, 1, tol, route);
}

ComplexMatrix m_weak_group(const ComplexMatrix& a, unsigned m, const Tolerance& tol, Route route) {
    require_square(a);
    require_m(m);
    switch (route) {
        case Route::Definitional:
            return m_weak_group_def(a, decomp::matrix_index(a, tol), m, tol);
        case Route::CoreEpCanonical:
            return canonical::m_weak_group(decomp::core_ep(a, tol), m, tol);
        default: return route_error(route, "m-weak group");
    }
}

ComplexMatrix wc_inverse(const ComplexMatrix& a, const Tolerance& tol, Route route) {
    require_square(a);
    switch (route) {
        case Route::Definitional:
            return m_weak_group_def(a, decomp::matrix_index(a, tol), 1, tol) *
                   decomp::projector_power(a, 1, tol);
        case Route::CoreEpCanonical: return canonical::wc_inverse(decomp::core_ep(a, tol), tol);
        case Route::HartwigSpindelbock: return m_weak_core_hs(a, 1, tol);
    }
    return route_error(route, "WC");
}

ComplexMatrix m_weak_core(const ComplexMatrix& a, unsigned m, const Tolerance& tol, Route route) {
    require_square(a);
    require_m(m);
    switch (route) {
        case Route::Definitional:
            return m_weak_group_def(a, decomp::matrix_index(a, tol), m, tol) *
                   decomp::projector_power(a, m, tol);
        case Route::CoreEpCanonical:
            return canonical::m_weak_core(decomp::core_ep(a, tol), m, tol);
        case Route::HartwigSpindelbock: return m_weak_core_hs(a, m, tol);
    }
    return route_error(route, "m-weak core");
}

ComplexMatrix compute(const ComplexMatrix& a, const InverseKind& kind, const Tolerance& tol,
                      Route route) {
    kind.validate();
    if (!supports(route, kind.kind))
        throw PreconditionError("route " + to_string(route) + " is valid only for mwc, wc and core-ep");
    switch (kind.kind) {
        case Kind::MoorePenrose: return moore_penrose(a, tol, route);
        case Kind::Group: return group_inverse(a, tol, route);
        case Kind::Drazin: return drazin(a, tol, route);
        case Kind::Core: return core_inverse(a, tol, route);
        case Kind::CoreEp: return core_ep_inverse(a, tol, route);
        case Kind::Dmp: return dmp_inverse(a, tol, route);
        case Kind::Wg: return wg_inverse(a, tol, route);
        case Kind::MWeakGroup: return m_weak_group(a, kind.m, tol, route);
        case Kind::Wc: return wc_inverse(a, tol, route);
        case Kind::MWeakCore: return m_weak_core(a, kind.m, tol, route);
    }
    throw std::invalid_argument("unknown inverse kind");
}

InverseResult compute_detailed(const ComplexMatrix& a, const InverseKind& kind,
                               const Tolerance& tol, Route route) {
    InverseResult result{compute(a, kind, tol, route), {}};
    if (route == Route::CoreEpCanonical && kind.kind != Kind::MoorePenrose) {
        const decomp::CoreEpDecomposition d = decomp::core_ep(a, tol);
        if (d.t_condition > kNearSingularCondition) {
            std::ostringstream msg;
            msg << "T block is nearly singular (condition number " << d.t_condition
                << "); the result may be inaccurate";
            result.warnings.push_back(msg.str());
        }
    }
    return result;
}

}  // namespace ginv::inverses
