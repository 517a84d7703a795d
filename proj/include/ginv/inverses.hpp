#pragma once

#include <string>
#include <vector>

#include "ginv/decomp.hpp"
#include "ginv/matrix.hpp"
#include "ginv/numkit.hpp"

/// The family of generalized inverses around the m-weak core inverse.
///
/// Every inverse is available through at least two routes: the defining
/// product formula (built from pseudoinverses and matrix powers) and the
/// block form in core-EP coordinates. The m-weak core, WC and core-EP
/// inverses also have a Hartwig-Spindelbock route.
namespace ginv::inverses {

using numkit::Tolerance;

enum class Kind { MoorePenrose, Group, Drazin, Core, CoreEp, Dmp, Wg, MWeakGroup, Wc, MWeakCore };

struct InverseKind {
    Kind kind = Kind::MoorePenrose;
    unsigned m = 0;  // only meaningful for MWeakGroup and MWeakCore, must be >= 1 there

    static InverseKind moore_penrose() { return {Kind::MoorePenrose, 0}; }
    static InverseKind group() { return {Kind::Group, 0}; }
    static InverseKind drazin() { return {Kind::Drazin, 0}; }
    static InverseKind core() { return {Kind::Core, 0}; }
    static InverseKind core_ep() { return {Kind::CoreEp, 0}; }
    static InverseKind dmp() { return {Kind::Dmp, 0}; }
    static InverseKind wg() { return {Kind::Wg, 0}; }
    static InverseKind m_weak_group(unsigned m) { return {Kind::MWeakGroup, m}; }
    static InverseKind wc() { return {Kind::Wc, 0}; }
    static InverseKind m_weak_core(unsigned m) { return {Kind::MWeakCore, m}; }

    bool has_parameter() const noexcept {
        return kind == Kind::MWeakGroup || kind == Kind::MWeakCore;
    }
    /// Throws std::invalid_argument when m is required but zero.
    void validate() const;
};

std::string to_string(const InverseKind& kind);

enum class Route { Definitional, CoreEpCanonical, HartwigSpindelbock };

std::string to_string(Route route);

/// true for the kinds that have a Hartwig-Spindelbock representation.
bool supports(Route route, Kind kind) noexcept;

ComplexMatrix moore_penrose(const ComplexMatrix& a, const Tolerance& tol = {},
                            Route route = Route::CoreEpCanonical);
ComplexMatrix drazin(const ComplexMatrix& a, const Tolerance& tol = {},
                     Route route = Route::CoreEpCanonical);
/// Throws PreconditionError unless Ind(a) <= 1.
ComplexMatrix group_inverse(const ComplexMatrix& a, const Tolerance& tol = {},
                            Route route = Route::CoreEpCanonical);
ComplexMatrix core_ep_inverse(const ComplexMatrix& a, const Tolerance& tol = {},
                              Route route = Route::CoreEpCanonical);
/// Throws PreconditionError unless Ind(a) <= 1.
ComplexMatrix core_inverse(const ComplexMatrix& a, const Tolerance& tol = {},
                           Route route = Route::CoreEpCanonical);
ComplexMatrix dmp_inverse(const ComplexMatrix& a, const Tolerance& tol = {},
                          Route route = Route::CoreEpCanonical);
ComplexMatrix wg_inverse(const ComplexMatrix& a, const Tolerance& tol = {},
                         Route route = Route::CoreEpCanonical);
ComplexMatrix m_weak_group(const ComplexMatrix& a, unsigned m, const Tolerance& tol = {},
                           Route route = Route::CoreEpCanonical);
ComplexMatrix wc_inverse(const ComplexMatrix& a, const Tolerance& tol = {},
                         Route route = Route::CoreEpCanonical);
ComplexMatrix m_weak_core(const ComplexMatrix& a, unsigned m, const Tolerance& tol = {},
                          Route route = Route::CoreEpCanonical);

ComplexMatrix compute(const ComplexMatrix& a, const InverseKind& kind, const Tolerance& tol = {},
                      Route route = Route::CoreEpCanonical);

struct InverseResult {
    ComplexMatrix value;
    /// Non-fatal diagnostics, e.g. an ill-conditioned T block.
    std::vector<std::string> warnings;
};

/// Like compute(), but also reports when cond(T) exceeds kNearSingularCondition.
InverseResult compute_detailed(const ComplexMatrix& a, const InverseKind& kind,
                               const Tolerance& tol = {}, Route route = Route::CoreEpCanonical);

inline constexpr double kNearSingularCondition = 1e8;

/// Block forms on an existing core-EP decomposition. These are what the
/// CoreEpCanonical route evaluates; they let callers reuse one decomposition
/// for many inverses.
namespace canonical {

ComplexMatrix moore_penrose(const decomp::CoreEpDecomposition& d, const Tolerance& tol = {});
ComplexMatrix drazin(const decomp::CoreEpDecomposition& d, const Tolerance& tol = {});
ComplexMatrix core_ep_inverse(const decomp::CoreEpDecomposition& d, const Tolerance& tol = {});
ComplexMatrix dmp_inverse(const decomp::CoreEpDecomposition& d, const Tolerance& tol = {});
ComplexMatrix m_weak_group(const decomp::CoreEpDecomposition& d, unsigned m,
                           const Tolerance& tol = {});
ComplexMatrix wc_inverse(const decomp::CoreEpDecomposition& d, const Tolerance& tol = {});
ComplexMatrix m_weak_core(const decomp::CoreEpDecomposition& d, unsigned m,
                          const Tolerance& tol = {});

}  // namespace canonical

}  // namespace ginv::inverses
