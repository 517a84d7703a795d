#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ginv/decomp.hpp"
#include "ginv/matrix.hpp"
#include "ginv/numkit.hpp"

/// Random instances with prescribed index, matrix-class predicates, and the
/// named identity checks run against the m-weak core inverse.
namespace ginv::verify {

using numkit::Tolerance;

struct InstanceSpec {
    std::size_t n = 1;
    std::size_t t = 1;   // rank(A^k)
    unsigned index = 0;  // k; 0 forces t = n, otherwise 1 <= k <= n - t
    std::uint64_t seed = 0;
    double condition_cap = 100.0;  // bound on cond(T)

    /// Throws PreconditionError for infeasible combinations.
    void validate() const;
};

/// Structure forced into the decomposition blocks before conjugation.
enum class Plant {
    None,
    ZeroS,               // S = 0
    ZeroN,               // N = 0 (needs index <= 1)
    ZeroSAndN,           // S = 0 and N = 0
    SAnnihilatesNPower,  // S (I - P_{N^m}) = S, so T~_m N^m = 0
    SInRangeNPower,      // S P_{N^m} = S
    EpTripotent,         // S = 0, N = 0, T^2 = I
    EpPartialIsometry,   // S = 0, N = 0, T unitary
    Idempotent,          // T = I, N = 0
};

struct GeneratedInstance {
    ComplexMatrix a;
    ComplexMatrix u;
    ComplexMatrix t;
    ComplexMatrix s;
    ComplexMatrix n;
};

/// A = U [[T, S], [0, N]] U* with random unitary U. Deterministic in the spec.
/// Retries with derived seeds (at most 8 attempts) if the achieved index or
/// rank(A^k) disagrees with the spec, then throws NumericError.
GeneratedInstance generate_instance(const InstanceSpec& spec, Plant plant = Plant::None,
                                    unsigned plant_m = 1, const Tolerance& tol = {});

ComplexMatrix generate(const InstanceSpec& spec, const Tolerance& tol = {});

/// Random complex matrix with independent standard normal parts.
ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed);

bool is_ep(const ComplexMatrix& a, const Tolerance& tol = {});
bool is_tripotent(const ComplexMatrix& a, const Tolerance& tol = {});
bool is_partial_isometry(const ComplexMatrix& a, const Tolerance& tol = {});
bool is_idempotent(const ComplexMatrix& a, const Tolerance& tol = {});

struct CheckReport {
    std::string name;
    bool passed = true;
    /// Largest violation. For identities this is a max-entry norm; for
    /// boolean-agreement and rank checks it is 0 or the size of the mismatch.
    double residual = 0.0;
    double threshold = 0.0;
    std::string detail;
    std::optional<ComplexMatrix> witness;
};

/// Characterization system 1 for a candidate X:
/// XAX = X, AX = (A^⊕)^m A^m P_{A^m}, XA = (A^⊕)^{m+1} A^m P_{A^m} A.
CheckReport check_system1(const ComplexMatrix& a, const ComplexMatrix& x, unsigned m,
                          const Tolerance& tol = {});

/// Characterization system 2 for a candidate X:
/// AX = (A^⊕)^m A^m P_{A^m} and R(X) ⊆ R(A^k).
CheckReport check_system2(const ComplexMatrix& a, const ComplexMatrix& x, unsigned m,
                          const Tolerance& tol = {});

/// The six "A^{⊕_m} = Y iff block condition" items. Each report passes iff
/// the inverse-side and block-side booleans agree.
std::vector<CheckReport> check_equality_conditions(const ComplexMatrix& a, unsigned m,
                                                   const Tolerance& tol = {});

/// A^{⊕_m} against 0, A, A* and P_A, each paired with its matrix-class condition.
std::vector<CheckReport> check_special_matrices(const ComplexMatrix& a, unsigned m,
                                                const Tolerance& tol = {});

/// G = A^{Ⓦ_m} + Z(I - P_{A^m}), H = (A^m)^† + (I - Q_{A^m})W; checks
/// H ∈ A^m{1}, G A^m H = A^{⊕_m}, and the derived conditions on G and H.
CheckReport check_maximal_classes(const ComplexMatrix& a, unsigned m, const ComplexMatrix& z,
                                  const ComplexMatrix& w, const Tolerance& tol = {});

/// Same conclusion G A^m H = A^{⊕_m} with G and H assembled from free blocks
/// in core-EP coordinates: z12 (t x n-t), z22, h21 (n-t x t), h22.
CheckReport check_maximal_blocks(const ComplexMatrix& a, unsigned m, const ComplexMatrix& z12,
                                 const ComplexMatrix& z22, const ComplexMatrix& h21,
                                 const ComplexMatrix& h22, const Tolerance& tol = {});

enum class Suite { All, Props, Equalities, Special, Maximal };

/// Debug hooks that corrupt the inverse under test.
enum class Mutation {
    None,
    SubstituteDmp,  // system-1 check receives A^{d,†} in place of A^{⊕_m}
    PerturbEntry,   // A^{⊕_m}(0,0) += 1e-3 everywhere it is used
};

struct SuiteOptions {
    Suite suite = Suite::All;
    Mutation mutation = Mutation::None;
    std::uint64_t seed = 0x5eed;  // drives the random Z, W and perturbations
};

/// One report per named check and value of m, in a fixed order.
std::vector<CheckReport> run_suite(const ComplexMatrix& a, const std::vector<unsigned>& m_values,
                                   const Tolerance& tol = {}, const SuiteOptions& options = {});

bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace ginv::verify
