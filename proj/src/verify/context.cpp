#include "context.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ginv/inverses.hpp"

namespace ginv::verify::detail {

using numkit::mat_pow;

Context::Context(const ComplexMatrix& a, const Tolerance& tol)
    : a_(a), tol_(tol), k_(decomp::matrix_index(a, tol)), identity_(ComplexMatrix::identity(a.rows())) {
    pow_.push_back(identity_);
}

const decomp::CoreEpDecomposition& Context::dec() {
    if (!dec_) dec_ = decomp::core_ep(a_, tol_);
    return *dec_;
}

const ComplexMatrix& Context::pow(unsigned j) {
    while (pow_.size() <= j) pow_.push_back(pow_.back() * a_);
    return pow_[j];
}

double Context::norm() {
    if (!norm_) norm_ = n() == 0 ? 0.0 : numkit::singular_values(a_, tol_).front();
    return *norm_;
}

const ComplexMatrix& Context::pinv_pow(unsigned j) {
    auto it = pinv_pow_.find(j);
    if (it == pinv_pow_.end()) it = pinv_pow_.emplace(j, decomp::pinv_power(a_, j, tol_)).first;
    return it->second;
}

const ComplexMatrix& Context::proj(unsigned j) {
    if (j == 0) return identity_;
    auto it = proj_.find(j);
    if (it == proj_.end()) it = proj_.emplace(j, pow(j) * pinv_pow(j)).first;
    return it->second;
}

const ComplexMatrix& Context::qproj(unsigned j) {
    if (j == 0) return identity_;
    auto it = qproj_.find(j);
    if (it == qproj_.end()) it = qproj_.emplace(j, pinv_pow(j) * pow(j)).first;
    return it->second;
}

const ComplexMatrix& Context::core_ep() {
    if (!core_ep_) core_ep_ = inverses::canonical::core_ep_inverse(dec(), tol_);
    return *core_ep_;
}

const ComplexMatrix& Context::core_ep_pow(unsigned j) {
    auto it = core_ep_pow_.find(j);
    if (it == core_ep_pow_.end()) it = core_ep_pow_.emplace(j, mat_pow(core_ep(), j)).first;
    return it->second;
}

const ComplexMatrix& Context::drazin() {
    if (!drazin_) drazin_ = inverses::canonical::drazin(dec(), tol_);
    return *drazin_;
}

const ComplexMatrix& Context::drazin_pow(unsigned j) {
    auto it = drazin_pow_.find(j);
    if (it == drazin_pow_.end()) it = drazin_pow_.emplace(j, mat_pow(drazin(), j)).first;
    return it->second;
}

const ComplexMatrix& Context::mwg(unsigned m) {
    auto it = mwg_.find(m);
    if (it == mwg_.end()) it = mwg_.emplace(m, core_ep_pow(m + 1) * pow(m)).first;
    return it->second;
}

const ComplexMatrix& Context::x(unsigned m) {
    auto it = x_.find(m);
    if (it == x_.end()) {
        ComplexMatrix value = inverses::canonical::m_weak_core(dec(), m, tol_);
        if (perturb_ != 0.0 && !value.empty()) value(0, 0) += perturb_;
        it = x_.emplace(m, std::move(value)).first;
    }
    return it->second;
}

Collector::Collector(std::string name, const Tolerance& tol) : tol_(tol) {
    report_.name = std::move(name);
}

void Collector::note(const std::string& label, double residual, double threshold, bool ok) {
    double ratio;
    if (threshold > 0.0)
        ratio = residual / threshold;
    else
        ratio = residual > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    if (!ok) failed_.push_back(label);
    if (ratio > worst_ratio_ || (!ok && report_.passed)) {
        worst_ratio_ = ratio;
        report_.residual = residual;
        report_.threshold = threshold;
    }
    if (!ok) report_.passed = false;
}

void Collector::eq(const std::string& label, const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    const double residual = numkit::max_abs_diff(lhs, rhs);
    const double threshold =
        tol_.eq_abs + tol_.eq_rel * std::max(numkit::max_abs(lhs), numkit::max_abs(rhs));
    const bool ok = residual <= threshold;
    if (!ok && !report_.witness) report_.witness = lhs - rhs;
    note(label, residual, threshold, ok);
}

void Collector::holds(const std::string& label, bool ok, double residual,
                      const std::string& detail) {
    note(label, ok ? 0.0 : residual, 0.0, ok);
    if (!ok && !detail.empty()) failed_.back() += " (" + detail + ")";
}

CheckReport Collector::done() {
    if (!failed_.empty()) {
        std::string text = "failed:";
        for (const std::string& f : failed_) text += " " + f;
        report_.detail = text;
    }
    return std::move(report_);
}

CheckReport vacuous(std::string name, const std::string& why) {
    CheckReport r;
    r.name = std::move(name);
    r.detail = "vacuous: " + why;
    return r;
}

CheckReport iff(std::string name, bool lhs, bool rhs, const std::string& lhs_text,
                const std::string& rhs_text) {
    CheckReport r;
    r.name = std::move(name);
    r.passed = lhs == rhs;
    r.residual = r.passed ? 0.0 : 1.0;
    std::ostringstream d;
    d << lhs_text << " is " << (lhs ? "true" : "false") << ", " << rhs_text << " is "
      << (rhs ? "true" : "false");
    r.detail = d.str();
    return r;
}

std::string with_m(const std::string& name, unsigned m) {
    return name + "[m=" + std::to_string(m) + "]";
}

}  // namespace ginv::verify::detail
