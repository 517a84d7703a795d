#include <sstream>

#include "context.hpp"
#include "ginv/inverses.hpp"

namespace ginv::verify {

namespace detail {

using numkit::approx_eq;
using numkit::conj_transpose;
using numkit::mat_pow;

namespace {

// T^p for any integer p (T nonsingular).
ComplexMatrix t_power(const ComplexMatrix& t, long p, const Tolerance& tol) {
    if (p >= 0) return mat_pow(t, static_cast<unsigned>(p));
    return mat_pow(numkit::inverse(t, tol), static_cast<unsigned>(-p));
}

bool near_zero(const ComplexMatrix& m, const Tolerance& tol) {
    return approx_eq(m, ComplexMatrix(m.rows(), m.cols()), tol);
}

}  // namespace

CheckReport system1(Context& c, const ComplexMatrix& x, unsigned m, const std::string& name) {
    const ComplexMatrix& a = c.a();
    Collector col(name, c.tol());
    const ComplexMatrix ax_rhs = c.core_ep_pow(m) * c.pow(m) * c.proj(m);
    col.eq("XAX=X", x * a * x, x);
    col.eq("AX=(A^⊕)^m A^m P_{A^m}", a * x, ax_rhs);
    col.eq("XA=(A^⊕)^{m+1} A^m P_{A^m} A", x * a, c.core_ep_pow(m + 1) * c.pow(m) * c.proj(m) * a);
    return col.done();
}

CheckReport system2(Context& c, const ComplexMatrix& x, unsigned m, const std::string& name) {
    Collector col(name, c.tol());
    col.eq("AX=(A^⊕)^m A^m P_{A^m}", c.a() * x, c.core_ep_pow(m) * c.pow(m) * c.proj(m));
    col.eq("P_{A^k}X=X", c.proj(c.k()) * x, x);
    return col.done();
}

std::vector<CheckReport> equality_conditions(Context& c, unsigned m) {
    using inverses::Route;
    const Tolerance& tol = c.tol();
    const ComplexMatrix& a = c.a();
    const ComplexMatrix& x = c.x(m);
    const decomp::CoreEpDecomposition& d = c.dec();
    const std::size_t rest = d.n() - d.t_size;
    const unsigned k = d.index;

    // Block side. Every block condition is vacuous when S and N are absent.
    bool cond_a = true, cond_b = true, cond_c = true, cond_d = true, cond_e = true, cond_f = true;
    if (rest > 0 && d.t_size > 0) {
        const ComplexMatrix tm = decomp::t_tilde(d, m);
        const ComplexMatrix p_nm = decomp::n_projector(d, m, tol);
        const ComplexMatrix p_n = decomp::n_projector(d, 1, tol);
        const ComplexMatrix tm_p = tm * p_nm;
        const ComplexMatrix drazin_side = t_power(d.t_block, long(m) - long(k), tol) * decomp::t_tilde(d, k);
        cond_b = approx_eq(tm_p, drazin_side, tol);
        cond_c = near_zero(tm * decomp::n_power(d, m), tol);
        cond_d = approx_eq(tm_p, drazin_side * p_n, tol);
        cond_e = approx_eq(tm_p, t_power(d.t_block, long(m) - 1, tol) * d.s_block * p_n, tol);
        cond_f = near_zero(tm * (ComplexMatrix::identity(rest) - p_nm), tol);
    }
    if (rest > 0) cond_a = near_zero(d.s_block, tol) && near_zero(d.n_block, tol);

    const auto side = [&](const ComplexMatrix& y) { return approx_eq(x, y, tol); };
    std::vector<CheckReport> out;
    out.push_back(iff(with_m("equality.a", m), side(c.mp()), cond_a,
                      "X = A^†", "S = 0 and N = 0"));
    out.push_back(iff(with_m("equality.b", m), side(inverses::drazin(a, tol, Route::Definitional)),
                      cond_b, "X = A^d", "T~_m P_{N^m} = T^{m-k} T~_k"));
    out.push_back(iff(with_m("equality.c", m),
                      side(inverses::core_ep_inverse(a, tol, Route::Definitional)), cond_c,
                      "X = A^⊕", "T~_m N^m = 0"));
    out.push_back(iff(with_m("equality.d", m),
                      side(inverses::dmp_inverse(a, tol, Route::Definitional)), cond_d,
                      "X = A^{d,†}", "T~_m P_{N^m} = T^{m-k} T~_k P_N"));
    out.push_back(iff(with_m("equality.e", m),
                      side(inverses::wc_inverse(a, tol, Route::Definitional)), cond_e,
                      "X = A^{Ⓦ,†}", "T~_m P_{N^m} = T^{m-1} S P_N"));
    out.push_back(iff(with_m("equality.f", m),
                      side(inverses::m_weak_group(a, m, tol, Route::Definitional)), cond_f,
                      "X = A^{Ⓦ_m}", "T~_m (I - P_{N^m}) = 0"));
    return out;
}

std::vector<CheckReport> special_matrices(Context& c, unsigned m) {
    const Tolerance& tol = c.tol();
    const ComplexMatrix& a = c.a();
    const ComplexMatrix& x = c.x(m);
    const bool ep = is_ep(a, tol);
    std::vector<CheckReport> out;
    out.push_back(iff(with_m("special.a", m), near_zero(x, tol), near_zero(c.pow(c.k()), tol),
                      "X = 0", "A^k = 0"));
    out.push_back(iff(with_m("special.b", m), approx_eq(x, a, tol), ep && is_tripotent(a, tol),
                      "X = A", "A is EP and tripotent"));
    out.push_back(iff(with_m("special.c", m), approx_eq(x, conj_transpose(a), tol),
                      ep && is_partial_isometry(a, tol), "X = A*", "A is an EP partial isometry"));
    out.push_back(iff(with_m("special.d", m), approx_eq(x, c.proj(1), tol), is_idempotent(a, tol),
                      "X = P_A", "A is idempotent"));
    return out;
}

CheckReport maximal_classes(Context& c, unsigned m, const ComplexMatrix& z, const ComplexMatrix& w,
                            const std::string& name) {
    const ComplexMatrix& i = c.identity();
    const ComplexMatrix& am = c.pow(m);
    const ComplexMatrix& mwg = c.mwg(m);
    const ComplexMatrix g = mwg + z * (i - c.proj(m));
    const ComplexMatrix h = c.pinv_pow(m) + (i - c.qproj(m)) * w;
    const ComplexMatrix gam = g * am;
    const ComplexMatrix mwg_am_h = mwg * am * h;

    Collector col(name, c.tol());
    col.eq("A^m H A^m=A^m", am * h * am, am);
    col.eq("G A^m H=X", gam * h, c.x(m));
    col.eq("G A^m=A^{Ⓦ_m} A^m", gam, mwg * am);
    col.eq("A^{Ⓦ_m} A^m H=A^{Ⓦ_m} P_{A^m}", mwg_am_h, mwg * c.proj(m));
    col.eq("P_{A^k} G A^m=G A^m", c.proj(c.k()) * gam, gam);
    col.eq("A^{Ⓦ_m} A^m H (I-P_{A^m})=0", mwg_am_h * (i - c.proj(m)), c.zeros());
    col.eq("A^m G A^m=A^⊕ A^{2m}", am * gam, c.core_ep() * c.pow(2 * m));
    return col.done();
}

CheckReport maximal_blocks(Context& c, unsigned m, const ComplexMatrix& z12,
                           const ComplexMatrix& z22, const ComplexMatrix& h21,
                           const ComplexMatrix& h22, const std::string& name) {
    const Tolerance& tol = c.tol();
    const decomp::CoreEpDecomposition& d = c.dec();
    const std::size_t t = d.t_size;
    const std::size_t rest = d.n() - t;
    if (z12.rows() != t || z12.cols() != rest || z22.rows() != rest || z22.cols() != rest ||
        h21.rows() != rest || h21.cols() != t || h22.rows() != rest || h22.cols() != rest)
        throw DimensionError("free blocks do not match the core-EP partition t = " +
                             std::to_string(t));

    const ComplexMatrix t_inv = numkit::inverse(d.t_block, tol);
    const ComplexMatrix t_inv_m = mat_pow(t_inv, m);
    const ComplexMatrix tm = decomp::t_tilde(d, m);
    const ComplexMatrix nm = decomp::n_power(d, m);
    const ComplexMatrix p_nm = decomp::n_projector(d, m, tol);
    const ComplexMatrix q_nm = ComplexMatrix::identity(rest) - p_nm;
    const ComplexMatrix tm_p = tm * p_nm;
    const ComplexMatrix big_m = tm + t_inv_m * tm * nm;

    const ComplexMatrix g = decomp::from_blocks(
        d, t_inv, t_inv_m * t_inv * tm_p + z12 * q_nm, ComplexMatrix(rest, t), z22 * q_nm);
    const ComplexMatrix h = decomp::from_blocks(
        d, t_inv_m * (ComplexMatrix::identity(t) - big_m * h21),
        t_inv_m * (t_inv_m * tm_p - big_m * h22), h21, h22);

    const ComplexMatrix& am = c.pow(m);
    Collector col(name, tol);
    col.eq("G A^m H=X", g * am * h, c.x(m));
    col.eq("G A^m=A^{Ⓦ_m} A^m", g * am, c.mwg(m) * am);
    col.eq("A^{Ⓦ_m} A^m H=A^{Ⓦ_m} P_{A^m}", c.mwg(m) * am * h, c.mwg(m) * c.proj(m));
    return col.done();
}

}  // namespace detail

CheckReport check_system1(const ComplexMatrix& a, const ComplexMatrix& x, unsigned m,
                          const Tolerance& tol) {
    detail::Context c(a, tol);
    return detail::system1(c, x, m, detail::with_m("system1", m));
}

CheckReport check_system2(const ComplexMatrix& a, const ComplexMatrix& x, unsigned m,
                          const Tolerance& tol) {
    detail::Context c(a, tol);
    return detail::system2(c, x, m, detail::with_m("system2", m));
}

std::vector<CheckReport> check_equality_conditions(const ComplexMatrix& a, unsigned m,
                                                   const Tolerance& tol) {
    detail::Context c(a, tol);
    return detail::equality_conditions(c, m);
}

std::vector<CheckReport> check_special_matrices(const ComplexMatrix& a, unsigned m,
                                                const Tolerance& tol) {
    detail::Context c(a, tol);
    return detail::special_matrices(c, m);
}

CheckReport check_maximal_classes(const ComplexMatrix& a, unsigned m, const ComplexMatrix& z,
                                  const ComplexMatrix& w, const Tolerance& tol) {
    detail::Context c(a, tol);
    return detail::maximal_classes(c, m, z, w, detail::with_m("maximal.c", m));
}

CheckReport check_maximal_blocks(const ComplexMatrix& a, unsigned m, const ComplexMatrix& z12,
                                 const ComplexMatrix& z22, const ComplexMatrix& h21,
                                 const ComplexMatrix& h22, const Tolerance& tol) {
    detail::Context c(a, tol);
    return detail::maximal_blocks(c, m, z12, z22, h21, h22, detail::with_m("maximal.d", m));
}

bool all_passed(const std::vector<CheckReport>& reports) {
    for (const CheckReport& r : reports)
        if (!r.passed) return false;
    return true;
}

}  // namespace ginv::verify
