#pragma once

#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ginv/decomp.hpp"
#include "ginv/verify.hpp"

namespace ginv::verify::detail {

// Lazily computed quantities shared by the checks on one matrix. Lives for a
// single run_suite or check_* call.
class Context {
public:
    Context(const ComplexMatrix& a, const Tolerance& tol);

    const ComplexMatrix& a() const { return a_; }
    const Tolerance& tol() const { return tol_; }
    std::size_t n() const { return a_.rows(); }
    unsigned k() const { return k_; }

    const decomp::CoreEpDecomposition& dec();
    const ComplexMatrix& identity() const { return identity_; }
    ComplexMatrix zeros() const { return ComplexMatrix(n(), n()); }

    const ComplexMatrix& pow(unsigned j);
    const ComplexMatrix& pinv_pow(unsigned j);  // (A^j)^†
    const ComplexMatrix& proj(unsigned j);      // P_{A^j}, I for j = 0
    const ComplexMatrix& qproj(unsigned j);     // Q_{A^j}, I for j = 0
    const ComplexMatrix& mp() { return pinv_pow(1); }
    double norm();                              // ||A||_2
    /// ||A||_2^j, the scale for rank decisions on products of j factors of A.
    double scale(unsigned j) { return std::pow(norm(), static_cast<double>(j)); }
    std::size_t rank_pow(unsigned j) { return numkit::rank(pow(j), tol_, scale(j)); }

    const ComplexMatrix& core_ep();             // A^⊕, canonical
    const ComplexMatrix& core_ep_pow(unsigned j);
    const ComplexMatrix& drazin();              // canonical
    const ComplexMatrix& drazin_pow(unsigned j);
    /// (A^⊕)^{m+1} A^m; m = 0 gives A^⊕.
    const ComplexMatrix& mwg(unsigned m);

    /// The m-weak core inverse under test (canonical route, plus any mutation).
    const ComplexMatrix& x(unsigned m);
    void set_perturbation(double delta) { perturb_ = delta; }

private:
    const ComplexMatrix& a_;
    const Tolerance& tol_;
    unsigned k_;
    ComplexMatrix identity_;
    double perturb_ = 0.0;
    std::optional<double> norm_;
    std::optional<decomp::CoreEpDecomposition> dec_;
    std::optional<ComplexMatrix> core_ep_;
    std::optional<ComplexMatrix> drazin_;
    std::deque<ComplexMatrix> pow_;  // references must survive growth
    std::map<unsigned, ComplexMatrix> pinv_pow_, proj_, qproj_, core_ep_pow_, drazin_pow_, mwg_,
        x_;
};

// Accumulates the sub-identities of one named check into a single report.
// The reported residual and threshold belong to the sub-identity closest to
// (or furthest past) its own threshold.
class Collector {
public:
    Collector(std::string name, const Tolerance& tol);

    /// lhs ≈ rhs under approx_eq.
    void eq(const std::string& label, const ComplexMatrix& lhs, const ComplexMatrix& rhs);
    /// A discrete condition (rank equality and the like).
    void holds(const std::string& label, bool ok, double residual, const std::string& detail = {});

    CheckReport done();

private:
    void note(const std::string& label, double residual, double threshold, bool ok);

    CheckReport report_;
    const Tolerance& tol_;
    double worst_ratio_ = -1.0;
    std::vector<std::string> failed_;
};

CheckReport vacuous(std::string name, const std::string& why);

/// Passes iff the two sides agree; residual 1 on disagreement.
CheckReport iff(std::string name, bool lhs, bool rhs, const std::string& lhs_text,
                const std::string& rhs_text);

std::string with_m(const std::string& name, unsigned m);

CheckReport system1(Context& c, const ComplexMatrix& x, unsigned m, const std::string& name);
CheckReport system2(Context& c, const ComplexMatrix& x, unsigned m, const std::string& name);
std::vector<CheckReport> equality_conditions(Context& c, unsigned m);
std::vector<CheckReport> special_matrices(Context& c, unsigned m);
CheckReport maximal_classes(Context& c, unsigned m, const ComplexMatrix& z, const ComplexMatrix& w,
                            const std::string& name);
CheckReport maximal_blocks(Context& c, unsigned m, const ComplexMatrix& z12,
                           const ComplexMatrix& z22, const ComplexMatrix& h21,
                           const ComplexMatrix& h22, const std::string& name);

}  // namespace ginv::verify::detail
