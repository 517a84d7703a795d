#include <algorithm>
#include <set>

#include "context.hpp"
#include "ginv/inverses.hpp"

namespace ginv::verify {

namespace {

using detail::Collector;
using detail::Context;
using detail::with_m;
using inverses::Route;
using numkit::conj_transpose;
using numkit::mat_pow;

constexpr double kPerturbation = 1e-3;

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
    return seed ^ (salt * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
}

class Runner {
public:
    Runner(const ComplexMatrix& a, const Tolerance& tol, const SuiteOptions& options)
        : c_(a, tol), tol_(tol), opt_(options) {
        if (options.mutation == Mutation::PerturbEntry) c_.set_perturbation(kPerturbation);
    }

    std::vector<CheckReport> run(const std::vector<unsigned>& m_values) {
        const bool props = opt_.suite == Suite::All || opt_.suite == Suite::Props;
        if (props) matrix_level();
        for (unsigned m : m_values) {
            if (props) per_m(m);
            if (opt_.suite == Suite::All || opt_.suite == Suite::Equalities)
                for (CheckReport& r : detail::equality_conditions(c_, m)) out_.push_back(std::move(r));
            if (opt_.suite == Suite::All || opt_.suite == Suite::Special)
                for (CheckReport& r : detail::special_matrices(c_, m)) out_.push_back(std::move(r));
            if (opt_.suite == Suite::All || opt_.suite == Suite::Maximal) maximal(m);
        }
        return std::move(out_);
    }

private:
    const ComplexMatrix& a() const { return c_.a(); }
    unsigned k() const { return c_.k(); }

    void add(CheckReport r) { out_.push_back(std::move(r)); }

    void agree(Collector& col, const std::string& label, const std::vector<ComplexMatrix>& xs) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j)
                col.eq(label + " " + std::to_string(i) + "~" + std::to_string(j), xs[i], xs[j]);
    }

    void route_check(const std::string& name, const inverses::InverseKind& kind) {
        Collector col(name, tol_);
        std::vector<ComplexMatrix> xs;
        for (Route r : {Route::Definitional, Route::CoreEpCanonical, Route::HartwigSpindelbock}) {
            if (!inverses::supports(r, kind.kind)) continue;
            if (r == Route::HartwigSpindelbock && numkit::rank(a(), tol_) == 0) continue;
            xs.push_back(inverses::compute(a(), kind, tol_, r));
        }
        agree(col, "routes", xs);
        add(col.done());
    }

    void matrix_level() {
        const Tolerance& tol = tol_;
        const ComplexMatrix& A = a();
        const ComplexMatrix& I = c_.identity();
        const decomp::CoreEpDecomposition& d = c_.dec();
        const unsigned kk = k();

        {
            Collector col("decomp.core_ep", tol);
            col.eq("U [[T,S],[0,N]] U* = A", decomp::reconstruct(d), A);
            col.eq("U*U = I", conj_transpose(d.u) * d.u, I);
            col.holds("index agrees", d.index == kk, 1.0);
            col.holds("t = rank(A^k)", d.t_size == c_.rank_pow(kk), 1.0);
            if (d.n_block.rows() > 0 && kk > 0) {
                col.eq("N^k = 0", mat_pow(d.n_block, kk), ComplexMatrix(d.n_block.rows(), d.n_block.cols()));
                if (kk > 1)
                    col.holds("N^{k-1} != 0",
                              !numkit::approx_eq(mat_pow(d.n_block, kk - 1),
                                                 ComplexMatrix(d.n_block.rows(), d.n_block.cols()), tol),
                              1.0);
            }
            add(col.done());
        }
        if (numkit::rank(A, tol) == 0) {
            add(detail::vacuous("decomp.hs", "rank 0"));
        } else {
            const decomp::HsDecomposition hs = decomp::hs_decompose(A, tol);
            Collector col("decomp.hs", tol);
            col.eq("U [[ΣK,ΣL],[0,0]] U* = A", decomp::reconstruct(hs), A);
            col.eq("KK*+LL* = I", hs.k_block * conj_transpose(hs.k_block) + hs.l_block * conj_transpose(hs.l_block),
                   ComplexMatrix::identity(hs.r_size));
            add(col.done());
        }
        {
            Collector col("decomp.pinv_blockwise", tol);
            for (unsigned l = 1; l <= kk + 2; ++l)
                col.eq("l=" + std::to_string(l), decomp::pinv_power_blockwise(d, l, tol), c_.pinv_pow(l));
            add(col.done());
        }
        {
            Collector col("decomp.projectors", tol);
            for (unsigned l = 1; l <= 2 * kk + 2; ++l) {
                const ComplexMatrix& p = c_.proj(l);
                const std::string tag = "l=" + std::to_string(l);
                col.eq(tag + " hermitian", p, conj_transpose(p));
                col.eq(tag + " idempotent", p * p, p);
                if (kk > 0 && l >= kk) col.eq(tag + " P_{A^l}=P_{A^k}", p, c_.proj(kk));
            }
            add(col.done());
        }

        route_check("routes.mp", inverses::InverseKind::moore_penrose());
        route_check("routes.drazin", inverses::InverseKind::drazin());
        route_check("routes.core_ep", inverses::InverseKind::core_ep());
        route_check("routes.dmp", inverses::InverseKind::dmp());
        route_check("routes.wg", inverses::InverseKind::wg());
        route_check("routes.wc", inverses::InverseKind::wc());
        if (kk <= 1) {
            route_check("routes.group", inverses::InverseKind::group());
            route_check("routes.core", inverses::InverseKind::core());
        } else {
            add(detail::vacuous("routes.group", "index > 1"));
            add(detail::vacuous("routes.core", "index > 1"));
        }

        {
            const ComplexMatrix x = inverses::canonical::moore_penrose(d, tol);
            Collector col("defining.penrose", tol);
            col.eq("AXA=A", A * x * A, A);
            col.eq("XAX=X", x * A * x, x);
            col.eq("(AX)*=AX", conj_transpose(A * x), A * x);
            col.eq("(XA)*=XA", conj_transpose(x * A), x * A);
            add(col.done());
        }
        {
            const ComplexMatrix& x = c_.drazin();
            Collector col("defining.drazin", tol);
            col.eq("XAX=X", x * A * x, x);
            col.eq("AX=XA", A * x, x * A);
            col.eq("XA^{k+1}=A^k", x * c_.pow(kk + 1), c_.pow(kk));
            add(col.done());
            Collector cline("defining.cline", tol);
            cline.eq("A^d=A^k (A^{2k+1})^† A^k", x, c_.pow(kk) * c_.pinv_pow(2 * kk + 1) * c_.pow(kk));
            add(cline.done());
        }
        {
            const ComplexMatrix& x = c_.core_ep();
            Collector col("defining.core_ep", tol);
            col.eq("XAX=X", x * A * x, x);
            col.eq("P_{A^k}X=X", c_.proj(kk) * x, x);
            col.eq("X P_{A^k}=X", x * c_.proj(kk), x);
            col.holds("rank X = rank A^k", numkit::rank(x, tol) == c_.rank_pow(kk), 1.0);
            col.eq("X=A^d P_{A^k}", x, c_.drazin() * c_.proj(kk));
            add(col.done());
        }
        {
            const ComplexMatrix x = inverses::canonical::dmp_inverse(d, tol);
            Collector col("defining.dmp", tol);
            col.eq("XAX=X", x * A * x, x);
            col.eq("XA=A^d A", x * A, c_.drazin() * A);
            col.eq("A^k X=A^k A^†", c_.pow(kk) * x, c_.pow(kk) * c_.mp());
            add(col.done());
        }
        {
            const ComplexMatrix x = inverses::canonical::m_weak_group(d, 1, tol);
            Collector col("defining.wg", tol);
            col.eq("AX^2=X", A * x * x, x);
            col.eq("AX=A^⊕ A", A * x, c_.core_ep() * A);
            add(col.done());
        }
        {
            const ComplexMatrix x = inverses::canonical::wc_inverse(d, tol);
            Collector col("defining.wc", tol);
            col.eq("X=A^Ⓦ P_A", x, c_.mwg(1) * c_.proj(1));
            add(col.done());
        }
        if (kk <= 1) {
            const ComplexMatrix& x = c_.drazin();
            Collector group("defining.group", tol);
            group.eq("AXA=A", A * x * A, A);
            group.eq("XAX=X", x * A * x, x);
            group.eq("AX=XA", A * x, x * A);
            add(group.done());
            const ComplexMatrix core = inverses::canonical::core_ep_inverse(d, tol);
            Collector col("defining.core", tol);
            col.eq("AX=P_A", A * core, c_.proj(1));
            col.eq("P_A X=X", c_.proj(1) * core, core);
            col.eq("X=A^# A A^†", core, x * A * c_.mp());
            add(col.done());
        } else {
            add(detail::vacuous("defining.group", "index > 1"));
            add(detail::vacuous("defining.core", "index > 1"));
        }
        {
            Collector col("coincide.gg", tol);
            col.eq("A^{Ⓦ_2}=(A^⊕)^3 A^2", inverses::canonical::m_weak_group(d, 2, tol),
                   c_.core_ep_pow(3) * c_.pow(2));
            add(col.done());
        }
    }

    void per_m(unsigned m) {
        const Tolerance& tol = tol_;
        const ComplexMatrix& A = a();
        const ComplexMatrix& x = c_.x(m);
        const unsigned kk = k();
        const ComplexMatrix& pm = c_.proj(m);
        const ComplexMatrix& am = c_.pow(m);
        const auto name = [m](const char* base) { return with_m(base, m); };

        route_check(name("routes.mwc"), inverses::InverseKind::m_weak_core(m));
        route_check(name("routes.mwg"), inverses::InverseKind::m_weak_group(m));
        {
            const ComplexMatrix& w = c_.mwg(m);
            Collector col(name("defining.mwg"), tol);
            col.eq("AX^2=X", A * w * w, w);
            col.eq("AX=(A^⊕)^m A^m", A * w, c_.core_ep_pow(m) * am);
            col.eq("XA^{k+1}=A^k", w * c_.pow(kk + 1), c_.pow(kk));
            col.eq("canonical", inverses::canonical::m_weak_group(c_.dec(), m, tol), w);
            add(col.done());
        }

        // Basic properties.
        {
            Collector col(name("basic.a"), tol);
            col.eq("X=(A^⊕)^{m+1} A^m P_{A^m}", x, c_.core_ep_pow(m + 1) * am * pm);
            col.eq("X=A^{Ⓦ_m} P_{A^m}", x, c_.mwg(m) * pm);
            add(col.done());
        }
        {
            Collector col(name("basic.b"), tol);
            col.eq("X=(A^Ⓦ)^m A^{m-1} P_{A^m}", x, mat_pow(c_.mwg(1), m) * c_.pow(m - 1) * pm);
            add(col.done());
        }
        {
            Collector col(name("basic.c"), tol);
            col.eq("AX=(A^⊕)^m A^m P_{A^m}", A * x, c_.core_ep_pow(m) * am * pm);
            col.eq("AX=A^{Ⓦ_{m-1}} A P_{A^m}", A * x, c_.mwg(m - 1) * A * pm);
            add(col.done());
        }
        {
            Collector col(name("basic.d"), tol);
            col.eq("XA=(A^⊕)^{m+1} A^m P_{A^m} A", x * A, c_.core_ep_pow(m + 1) * am * pm * A);
            add(col.done());
        }
        {
            Collector col(name("basic.e"), tol);
            col.eq("XA^m=A^{Ⓦ_m} A^m", x * am, c_.mwg(m) * am);
            col.eq("XA^m=(A^⊕)^{m+1} A^{2m}", x * am, c_.core_ep_pow(m + 1) * c_.pow(2 * m));
            add(col.done());
        }
        {
            Collector col(name("basic.f"), tol);
            const std::pair<const char*, const ComplexMatrix*> ys[] = {
                {"A^d", &c_.drazin()}, {"A^⊕", &c_.core_ep()}, {"A^{Ⓦ_m}", &c_.mwg(m)}};
            for (const auto& [label, y] : ys) {
                col.eq(std::string("YAY=Y, Y=") + label, *y * A * *y, *y);
                col.eq(std::string("X=YAX, Y=") + label, x, *y * A * x);
            }
            add(col.done());
        }

        // Properties derived from the canonical form.
        {
            Collector col(name("props.a"), tol);
            col.eq("XAX=X", x * A * x, x);
            add(col.done());
        }
        {
            const ComplexMatrix a1 = A * c_.core_ep() * A;
            Collector col(name("props.b"), tol);
            col.eq("A1 X A1=A1", a1 * x * a1, a1);
            col.eq("X A1 X=X", x * a1 * x, x);
            add(col.done());
        }
        {
            Collector col(name("props.c"), tol);
            col.eq("AX^2=X", A * x * x, x);
            add(col.done());
        }
        {
            Collector col(name("props.d"), tol);
            for (unsigned l = kk; l <= kk + 2; ++l)
                col.eq("XA^{l+1}=A^l, l=" + std::to_string(l), x * c_.pow(l + 1), c_.pow(l));
            add(col.done());
        }
        {
            Collector col(name("props.e"), tol);
            for (unsigned l = kk; l <= kk + 2; ++l)
                col.eq("X=(A^d)^{m+1} P_{A^l} A^m P_{A^m}, l=" + std::to_string(l), x,
                       c_.drazin_pow(m + 1) * c_.proj(l) * am * pm);
            add(col.done());
        }
        {
            Collector col(name("props.f"), tol);
            for (unsigned l = kk; l <= kk + 2; ++l)
                col.eq("X=A^l (A^{l+m+1})^† A^m P_{A^m}, l=" + std::to_string(l), x,
                       c_.pow(l) * c_.pinv_pow(l + m + 1) * am * pm);
            add(col.done());
        }
        const std::size_t rank_x = numkit::rank(x, tol);
        const std::size_t rank_ak = c_.rank_pow(kk);
        const double rank_gap = std::abs(double(rank_x) - double(rank_ak));
        {
            Collector col(name("props.g"), tol);
            col.holds("rank X = rank A^k", rank_x == rank_ak, rank_gap);
            add(col.done());
        }
        {
            Collector col(name("props.h"), tol);
            col.eq("P_{A^k}X=X", c_.proj(kk) * x, x);
            col.holds("rank X = rank A^k", rank_x == rank_ak, rank_gap);
            add(col.done());
        }
        {
            const ComplexMatrix b = conj_transpose(c_.pow(kk)) * am * pm;
            const ComplexMatrix qb = numkit::pinv(b, tol, c_.scale(kk + m)) * b;
            const ComplexMatrix qx = numkit::pinv(x, tol) * x;
            Collector col(name("props.i"), tol);
            col.eq("N(B) ⊆ N(X): X Q_B=X", x * qb, x);
            col.eq("N(X) ⊆ N(B): B Q_X=B", b * qx, b);
            add(col.done());
        }
        {
            Collector col(name("props.j"), tol);
            col.eq("XA^{m+1}=(A^⊕)^{m+1} A^{2m+1}", x * c_.pow(m + 1),
                   c_.core_ep_pow(m + 1) * c_.pow(2 * m + 1));
            add(col.done());
        }

        // Characterizations.
        const ComplexMatrix& x_sys1 =
            opt_.mutation == Mutation::SubstituteDmp ? dmp() : x;
        add(detail::system1(c_, x_sys1, m, name("system1")));
        {
            Collector col(name("system1.alt"), tol);
            col.eq("AX=A^{Ⓦ_{m-1}} A P_{A^m}", A * x, c_.mwg(m - 1) * A * pm);
            col.eq("XA=A^{Ⓦ_m} P_{A^m} A", x * A, c_.mwg(m) * pm * A);
            add(col.done());
        }
        add(detail::system2(c_, x, m, name("system2")));
        {
            const ComplexMatrix rhs = c_.core_ep_pow(m) * am * pm;
            Collector b(name("equivalent.b"), tol);
            b.eq("AX=(A^⊕)^m A^m P_{A^m}", A * x, rhs);
            b.eq("P_{A^k}X=X", c_.proj(kk) * x, x);
            b.holds("rank X = rank A^k", rank_x == rank_ak, rank_gap);
            add(b.done());
            Collector cc(name("equivalent.c"), tol);
            cc.eq("AX=(A^⊕)^m A^m P_{A^m}", A * x, rhs);
            cc.eq("AX^2=X", A * x * x, x);
            add(cc.done());
        }
        uniqueness(m);
        {
            const double residual = numkit::max_abs_diff(A * x * A, A);
            const double threshold = tol.eq_abs + tol.eq_rel * std::max(numkit::max_abs(A * x * A), numkit::max_abs(A));
            CheckReport r = detail::iff(name("inner_inverse_iff"), residual <= threshold, kk <= 1,
                                        "AXA = A", "Ind(A) <= 1");
            r.detail += " (residual " + std::to_string(residual) + ")";
            add(std::move(r));
        }

        // More properties.
        {
            Collector col(name("more.a"), tol);
            col.eq("AXA=A^{Ⓦ_{m-1}} A^{m+1} (A^m)^† A", A * x * A,
                   c_.mwg(m - 1) * c_.pow(m + 1) * c_.pinv_pow(m) * A);
            add(col.done());
        }
        {
            Collector col(name("more.b"), tol);
            col.eq("AXA^{m+1}=A^{Ⓦ_{m-1}} A^{m+2}", A * x * c_.pow(m + 1), c_.mwg(m - 1) * c_.pow(m + 2));
            add(col.done());
        }
        {
            Collector col(name("more.c"), tol);
            col.eq("XA^m=A^{Ⓦ_m} A^m", x * am, c_.mwg(m) * am);
            add(col.done());
        }
        if (kk < 2 * m) {
            Collector col(name("more.d"), tol);
            col.eq("XA^m=A^d A^m", x * am, c_.drazin() * am);
            add(col.done());
        } else {
            add(detail::vacuous(name("more.d"), "k >= 2m"));
        }
        {
            Collector col(name("more.e"), tol);
            col.eq("A^m X=A^⊕ A^m P_{A^m}", am * x, c_.core_ep() * am * pm);
            add(col.done());
        }
        const bool am_ep = numkit::approx_eq(pm, c_.qproj(m), tol);
        if (am_ep) {
            Collector col(name("more.f"), tol);
            col.eq("A^m X=A^⊕ A^m", am * x, c_.core_ep() * am);
            add(col.done());
        } else {
            add(detail::vacuous(name("more.f"), "A^m is not EP"));
        }
        {
            Collector col(name("more.g"), tol);
            col.eq("A^m X A^m=A^⊕ A^{2m}", am * x * am, c_.core_ep() * c_.pow(2 * m));
            add(col.done());
        }
        {
            Collector col(name("more.h"), tol);
            for (unsigned l = kk; l <= kk + 2; ++l)
                col.eq("A^{m+1} X A^m=P_{A^l} A^{2m}, l=" + std::to_string(l), c_.pow(m + 1) * x * am,
                       c_.proj(l) * c_.pow(2 * m));
            add(col.done());
        }
        if (kk < 2 * m) {
            Collector col(name("more.i"), tol);
            col.eq("A^{m+1} X A^m=A^{2m}", c_.pow(m + 1) * x * am, c_.pow(2 * m));
            add(col.done());
        } else {
            add(detail::vacuous(name("more.i"), "k >= 2m"));
        }

        // Coincidences.
        if (m == 1) {
            Collector col(name("coincide.wc"), tol);
            col.eq("X=A^{Ⓦ,†}", x, inverses::canonical::wc_inverse(c_.dec(), tol));
            col.eq("A^{Ⓦ_1}=A^Ⓦ", c_.mwg(1), inverses::canonical::m_weak_group(c_.dec(), 1, tol));
            add(col.done());
        } else {
            add(detail::vacuous(name("coincide.wc"), "m != 1"));
        }
        if (m >= kk) {
            Collector col(name("coincide.core_ep"), tol);
            col.eq("X=A^⊕", x, c_.core_ep());
            col.eq("A^{Ⓦ_m}=A^d", c_.mwg(m), c_.drazin());
            add(col.done());
        } else {
            add(detail::vacuous(name("coincide.core_ep"), "m < k"));
        }
        if (kk <= 1) {
            Collector col(name("coincide.core"), tol);
            col.eq("X=A^{#○}", x, inverses::core_inverse(A, tol, Route::Definitional));
            add(col.done());
        } else {
            add(detail::vacuous(name("coincide.core"), "index > 1"));
        }
        if (am_ep) {
            Collector col(name("coincide.ep_power"), tol);
            col.eq("X=A^{Ⓦ_m}", x, c_.mwg(m));
            add(col.done());
        } else {
            add(detail::vacuous(name("coincide.ep_power"), "A^m is not EP"));
        }
    }

    void uniqueness(unsigned m) {
        const std::string nm = with_m("uniqueness.system2", m);
        const std::size_t t = c_.dec().t_size;
        if (t == 0) {
            add(detail::vacuous(nm, "R(A^k) = {0}"));
            return;
        }
        const ComplexMatrix& x = c_.x(m);
        ComplexMatrix e = c_.proj(k()) * random_gaussian(c_.n(), c_.n(), mix(opt_.seed, 1000 + m));
        e *= 1e-2 * std::max(1.0, numkit::max_abs(x)) / numkit::max_abs(e);
        const CheckReport perturbed = detail::system2(c_, x + e, m, nm);
        CheckReport r;
        r.name = nm;
        r.passed = !perturbed.passed;
        r.residual = r.passed ? 0.0 : 1.0;
        r.detail = "perturbed candidate " + std::string(perturbed.passed ? "still solves" : "violates") +
                   " system 2 (residual " + std::to_string(perturbed.residual) + ")";
        add(std::move(r));
    }

    void maximal(unsigned m) {
        const std::size_t n = c_.n();
        const ComplexMatrix z = random_gaussian(n, n, mix(opt_.seed, 2000 + m));
        const ComplexMatrix w = random_gaussian(n, n, mix(opt_.seed, 3000 + m));
        add(detail::maximal_classes(c_, m, c_.zeros(), c_.zeros(), with_m("maximal.c.base", m)));
        add(detail::maximal_classes(c_, m, z, w, with_m("maximal.c", m)));

        const std::size_t t = c_.dec().t_size;
        const std::size_t rest = n - t;
        add(detail::maximal_blocks(c_, m, ComplexMatrix(t, rest), ComplexMatrix(rest, rest),
                                   ComplexMatrix(rest, t), ComplexMatrix(rest, rest),
                                   with_m("maximal.d.base", m)));
        add(detail::maximal_blocks(c_, m, random_gaussian(t, rest, mix(opt_.seed, 4000 + m)),
                                   random_gaussian(rest, rest, mix(opt_.seed, 5000 + m)),
                                   random_gaussian(rest, t, mix(opt_.seed, 6000 + m)),
                                   random_gaussian(rest, rest, mix(opt_.seed, 7000 + m)),
                                   with_m("maximal.d", m)));
    }

    const ComplexMatrix& dmp() {
        if (!dmp_) dmp_ = inverses::canonical::dmp_inverse(c_.dec(), tol_);
        return *dmp_;
    }

    Context c_;
    const Tolerance& tol_;
    const SuiteOptions& opt_;
    std::optional<ComplexMatrix> dmp_;
    std::vector<CheckReport> out_;
};

}  // namespace

std::vector<CheckReport> run_suite(const ComplexMatrix& a, const std::vector<unsigned>& m_values,
                                   const Tolerance& tol, const SuiteOptions& options) {
    if (!a.is_square())
        throw DimensionError("verification needs a square matrix, got " + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()));
    for (unsigned m : m_values)
        if (m == 0) throw std::invalid_argument("m values must be >= 1");
    Runner runner(a, tol, options);
    return runner.run(m_values);
}

}  // namespace ginv::verify
