// Complex Schur decomposition: Householder reduction to Hessenberg form,
// single-shift QR iteration with Wilkinson shifts, and diagonal reordering by
// adjacent Givens swaps.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ginv/numkit.hpp"

namespace ginv::numkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kIterationsPerRow = 100;

// Plane rotation [[c, s], [-conj(s), c]] with c real, mapping (f, g) to (r, 0).
struct Givens {
    double c = 1.0;
    Complex s{};
};

Givens make_givens(Complex f, Complex g, Complex* r = nullptr) {
    Givens rot;
    if (g == Complex{}) {
        if (r) *r = f;
        return rot;
    }
    if (f == Complex{}) {
        rot.c = 0.0;
        rot.s = std::conj(g) / std::abs(g);
        if (r) *r = std::abs(g);
        return rot;
    }
    const double fa = std::abs(f);
    const double d = std::hypot(fa, std::abs(g));
    const Complex fphase = f / fa;
    rot.c = fa / d;
    rot.s = fphase * std::conj(g) / d;
    if (r) *r = fphase * d;
    return rot;
}

// Rows i, i+1 of h, columns [c0, h.cols()), multiplied from the left by G.
void rotate_rows(ComplexMatrix& h, std::size_t i, std::size_t c0, const Givens& g) {
    for (std::size_t j = c0; j < h.cols(); ++j) {
        const Complex x = h(i, j);
        const Complex y = h(i + 1, j);
        h(i, j) = g.c * x + g.s * y;
        h(i + 1, j) = g.c * y - std::conj(g.s) * x;
    }
}

// Columns i, i+1 of m, rows [0, r_end), multiplied from the right by G*.
void rotate_cols(ComplexMatrix& m, std::size_t i, std::size_t r_end, const Givens& g) {
    for (std::size_t r = 0; r < r_end; ++r) {
        const Complex x = m(r, i);
        const Complex y = m(r, i + 1);
        m(r, i) = g.c * x + std::conj(g.s) * y;
        m(r, i + 1) = g.c * y - g.s * x;
    }
}

void to_hessenberg(ComplexMatrix& h, ComplexMatrix& u) {
    const std::size_t n = h.rows();
    std::vector<Complex> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double tail2 = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) tail2 += std::norm(h(i, k));
        if (tail2 == 0.0) continue;
        const Complex x0 = h(k + 1, k);
        const double xnorm = std::sqrt(tail2 + std::norm(x0));
        const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0};
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = h(i, k) + (i == k + 1 ? phase * xnorm : Complex{});
            vnorm2 += std::norm(v[i]);
        }
        const double beta = 2.0 / vnorm2;
        for (std::size_t j = 0; j < n; ++j) {
            Complex dot{};
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
            dot *= beta;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * dot;
        }
        for (ComplexMatrix* m : {&h, &u}) {
            for (std::size_t r = 0; r < n; ++r) {
                Complex dot{};
                for (std::size_t l = k + 1; l < n; ++l) dot += (*m)(r, l) * v[l];
                dot *= beta;
                for (std::size_t l = k + 1; l < n; ++l) (*m)(r, l) -= dot * std::conj(v[l]);
            }
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

Complex wilkinson_shift(const ComplexMatrix& h, std::size_t iu, std::size_t iter) {
    if ((iter == 10 || iter == 20) && iu >= 2)
        return std::abs(h(iu, iu - 1).real()) + std::abs(h(iu - 1, iu - 2).real());

    Complex t00 = h(iu - 1, iu - 1), t01 = h(iu - 1, iu), t10 = h(iu, iu - 1), t11 = h(iu, iu);
    const double scale = std::abs(t00) + std::abs(t01) + std::abs(t10) + std::abs(t11);
    if (scale == 0.0) return 0.0;
    t00 /= scale;
    t01 /= scale;
    t10 /= scale;
    t11 /= scale;
    const Complex b = t01 * t10;
    const Complex c = t00 - t11;
    const Complex disc = std::sqrt(c * c + 4.0 * b);
    const Complex det = t00 * t11 - b;
    const Complex trace = t00 + t11;
    Complex e1 = (trace + disc) / 2.0;
    Complex e2 = (trace - disc) / 2.0;
    const double n1 = std::abs(e1.real()) + std::abs(e1.imag());
    const double n2 = std::abs(e2.real()) + std::abs(e2.imag());
    if (n1 > n2)
        e2 = det / e1;
    else if (n2 != 0.0)
        e1 = det / e2;
    return scale * (std::abs(e1 - t11) < std::abs(e2 - t11) ? e1 : e2);
}

// Reduces h (Hessenberg) to upper triangular form, accumulating into u.
void hessenberg_qr(ComplexMatrix& h, ComplexMatrix& u, double scale) {
    const std::size_t n = h.rows();
    if (n < 2) return;
    const std::size_t max_iter = kIterationsPerRow * n;

    auto negligible = [&](std::size_t i) {
        const double sd = std::abs(h(i + 1, i));
        return sd <= kEps * (std::abs(h(i, i)) + std::abs(h(i + 1, i + 1))) || sd <= kEps * scale;
    };

    std::size_t iu = n - 1;
    std::size_t iter = 0;
    std::size_t total = 0;
    while (true) {
        while (iu > 0) {
            if (!negligible(iu - 1)) break;
            h(iu, iu - 1) = 0.0;
            iter = 0;
            --iu;
        }
        if (iu == 0) break;
        ++iter;
        if (++total > max_iter)
            throw NumericError("Schur: QR iteration did not converge after " +
                               std::to_string(total - 1) + " iterations");
        std::size_t il = iu - 1;
        while (il > 0 && !negligible(il - 1)) --il;
        if (il > 0) h(il, il - 1) = 0.0;

        const Complex shift = wilkinson_shift(h, iu, iter);
        Givens rot = make_givens(h(il, il) - shift, h(il + 1, il));
        rotate_rows(h, il, il, rot);
        rotate_cols(h, il, std::min(il + 2, iu) + 1, rot);
        rotate_cols(u, il, n, rot);
        for (std::size_t i = il + 1; i < iu; ++i) {
            Complex r;
            rot = make_givens(h(i, i - 1), h(i + 1, i - 1), &r);
            h(i, i - 1) = r;
            h(i + 1, i - 1) = 0.0;
            rotate_rows(h, i, i, rot);
            rotate_cols(h, i, std::min(i + 2, iu) + 1, rot);
            rotate_cols(u, i, n, rot);
        }
    }
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) h(i, j) = 0.0;
}

// Swaps diagonal entries k and k+1 of the triangular factor.
void swap_adjacent(ComplexMatrix& r, ComplexMatrix& u, std::size_t k) {
    const std::size_t n = r.rows();
    const Complex t11 = r(k, k);
    const Complex t22 = r(k + 1, k + 1);
    const Givens g = make_givens(r(k, k + 1), t22 - t11);
    rotate_rows(r, k, k + 2, g);
    rotate_cols(r, k, k, g);
    r(k, k) = t22;
    r(k + 1, k + 1) = t11;
    rotate_cols(u, k, n, g);
}

// Moves the selected diagonal entries to the top, preserving relative order.
std::size_t reorder(ComplexMatrix& r, ComplexMatrix& u, std::vector<bool> select) {
    std::size_t dest = 0;
    for (std::size_t i = 0; i < select.size(); ++i) {
        if (!select[i]) continue;
        for (std::size_t k = i; k > dest; --k) {
            swap_adjacent(r, u, k - 1);
            std::swap(select[k - 1], select[k]);
        }
        ++dest;
    }
    return dest;
}

OrderedSchur schur(const ComplexMatrix& a) {
    if (!a.is_square())
        throw DimensionError("Schur decomposition needs a square matrix, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    OrderedSchur s{ComplexMatrix::identity(a.rows()), a, 0};
    to_hessenberg(s.r, s.u);
    hessenberg_qr(s.r, s.u, frobenius_norm(a));
    return s;
}

}  // namespace

OrderedSchur ordered_schur(const ComplexMatrix& a, const Tolerance& tol) {
    OrderedSchur s = schur(a);
    const double cutoff = tol.rank_rel * frobenius_norm(a);
    std::vector<bool> select(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) select[i] = std::abs(s.r(i, i)) > cutoff;
    s.split = reorder(s.r, s.u, std::move(select));
    return s;
}

OrderedSchur ordered_schur_leading(const ComplexMatrix& a, std::size_t leading, const Tolerance&) {
    OrderedSchur s = schur(a);
    const std::size_t n = a.rows();
    if (leading > n)
        throw DimensionError("cannot lead with " + std::to_string(leading) + " of " +
                             std::to_string(n) + " eigenvalues");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(s.r(x, x)) > std::abs(s.r(y, y));
    });
    std::vector<bool> select(n, false);
    for (std::size_t i = 0; i < leading; ++i) select[order[i]] = true;
    s.split = reorder(s.r, s.u, std::move(select));
    return s;
}

}  // namespace ginv::numkit
