#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ginv/numkit.hpp"

namespace ginv::numkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxJacobiSweeps = 80;

std::string shape(const ComplexMatrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void require_square(const ComplexMatrix& a, const char* what) {
    if (!a.is_square()) throw DimensionError(std::string(what) + " needs a square matrix, got " + shape(a));
}

// Complete the first `keep` orthonormal columns of u (m x m) to a unitary
// matrix; columns keep..m-1 are overwritten.
void complete_orthonormal(ComplexMatrix& u, std::size_t keep) {
    const std::size_t m = u.rows();
    if (keep >= m) return;
    const ComplexMatrix q = qr(u.block(0, 0, m, keep)).q;
    for (std::size_t j = keep; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) u(i, j) = q(i, j);
}

// Jacobi SVD of a tall (m >= n) matrix.
Svd jacobi_svd_tall(const ComplexMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    ComplexMatrix w = a;
    ComplexMatrix v = ComplexMatrix::identity(n);
    // Columns below this squared norm are numerically zero and left alone.
    const double negligible2 = std::pow(kEps * frobenius_norm(a), 2);

    int sweep = 0;
    for (;; ++sweep) {
        if (sweep >= kMaxJacobiSweeps)
            throw NumericError("SVD: Jacobi sweeps did not converge after " +
                               std::to_string(sweep) + " iterations");
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                Complex gamma{};
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += std::norm(w(i, p));
                    beta += std::norm(w(i, q));
                    gamma += std::conj(w(i, p)) * w(i, q);
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= kEps * std::sqrt(alpha * beta)) continue;
                if (std::min(alpha, beta) <= negligible2) continue;
                rotated = true;

                const Complex phase = std::conj(gamma / g);
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const Complex xp = w(i, p);
                    const Complex xq = w(i, q) * phase;
                    w(i, p) = c * xp - s * xq;
                    w(i, q) = s * xp + c * xq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex xp = v(i, p);
                    const Complex xq = v(i, q) * phase;
                    v(i, p) = c * xp - s * xq;
                    v(i, q) = s * xp + c * xq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(w(i, j));
        norms[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    Svd out;
    out.sigma.resize(n);
    out.u = ComplexMatrix(m, m);
    out.v = ComplexMatrix(n, n);
    const double floor = (norms.empty() ? 0.0 : norms[order[0]]) * kEps * static_cast<double>(m);
    std::size_t defined = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.sigma[j] = norms[src];
        for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
        if (norms[src] > floor && norms[src] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) out.u(i, j) = w(i, src) / norms[src];
            defined = j + 1;
        }
    }
    complete_orthonormal(out.u, defined);
    return out;
}

}  // namespace

void Tolerance::validate() const {
    for (double x : {rank_rel, eq_abs, eq_rel})
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("tolerance fields must be finite and nonnegative");
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b; }

ComplexMatrix conj_transpose(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const Complex& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("cannot compare " + shape(a) + " with " + shape(b));
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol) {
    const double diff = max_abs_diff(a, b);
    return diff <= tol.eq_abs + tol.eq_rel * std::max(max_abs(a), max_abs(b));
}

Svd svd(const ComplexMatrix& a, const Tolerance&) {
    if (a.rows() >= a.cols()) return jacobi_svd_tall(a);
    Svd t = jacobi_svd_tall(conj_transpose(a));
    return Svd{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

std::vector<double> singular_values(const ComplexMatrix& a, const Tolerance& tol) {
    return svd(a, tol).sigma;
}

std::size_t rank(const ComplexMatrix& a, const Tolerance& tol, double scale) {
    if (a.empty()) return 0;
    const std::vector<double> s = singular_values(a, tol);
    const double cutoff = tol.rank_rel * std::max(s.front(), scale);
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [&](double x) { return x > cutoff; }));
}

ComplexMatrix pinv(const ComplexMatrix& a, const Tolerance& tol, double scale) {
    ComplexMatrix x(a.cols(), a.rows());
    if (a.empty()) return x;
    const Svd d = svd(a, tol);
    const double cutoff = tol.rank_rel * std::max(d.sigma.front(), scale);
    for (std::size_t k = 0; k < d.sigma.size(); ++k) {
        if (!(d.sigma[k] > cutoff)) break;
        const double inv = 1.0 / d.sigma[k];
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const Complex vik = d.v(i, k) * inv;
            for (std::size_t j = 0; j < a.rows(); ++j) x(i, j) += vik * std::conj(d.u(j, k));
        }
    }
    return x;
}

Qr qr(const ComplexMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    ComplexMatrix r = a;
    ComplexMatrix q = ComplexMatrix::identity(m);
    std::vector<Complex> v(m);

    const std::size_t steps = std::min(m == 0 ? 0 : m - 1, n);
    for (std::size_t k = 0; k < steps; ++k) {
        double tail2 = 0.0;
        for (std::size_t i = k + 1; i < m; ++i) tail2 += std::norm(r(i, k));
        if (tail2 == 0.0) continue;
        const double norm2 = tail2 + std::norm(r(k, k));
        const double xnorm = std::sqrt(norm2);
        const Complex x0 = r(k, k);
        const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0};
        const Complex alpha = -phase * xnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) {
            v[i] = r(i, k) - (i == k ? alpha : Complex{});
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        // r <- (I - 2 v v*/v*v) r
        for (std::size_t j = k; j < n; ++j) {
            Complex dot{};
            for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i]) * r(i, j);
            dot *= 2.0 / vnorm2;
            for (std::size_t i = k; i < m; ++i) r(i, j) -= v[i] * dot;
        }
        // q <- q (I - 2 v v*/v*v)
        for (std::size_t i = 0; i < m; ++i) {
            Complex dot{};
            for (std::size_t l = k; l < m; ++l) dot += q(i, l) * v[l];
            dot *= 2.0 / vnorm2;
            for (std::size_t l = k; l < m; ++l) q(i, l) -= dot * std::conj(v[l]);
        }
        for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
    }

    // Unique factor: real nonnegative diagonal of r.
    for (std::size_t k = 0; k < std::min(m, n); ++k) {
        const double mag = std::abs(r(k, k));
        if (mag == 0.0) continue;
        const Complex d = r(k, k) / mag;
        for (std::size_t i = 0; i < m; ++i) q(i, k) *= d;
        for (std::size_t j = 0; j < n; ++j) r(k, j) *= std::conj(d);
    }
    return Qr{std::move(q), std::move(r)};
}

ComplexMatrix inverse(const ComplexMatrix& t, const Tolerance& tol) {
    require_square(t, "inverse");
    const std::size_t n = t.rows();
    ComplexMatrix lu = t;
    ComplexMatrix x = ComplexMatrix::identity(n);
    const double threshold = tol.rank_rel * max_abs(t);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
        const double mag = std::abs(lu(piv, k));
        if (!(mag > threshold) || mag == 0.0) {
            std::ostringstream msg;
            msg << "matrix is singular to tolerance: pivot magnitude " << mag << " at column " << k
                << " (threshold " << threshold << ")";
            throw NumericError(msg.str());
        }
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(k, j), lu(piv, j));
                std::swap(x(k, j), x(piv, j));
            }
        const Complex inv = 1.0 / lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = lu(i, k) * inv;
            if (f == Complex{}) continue;
            lu(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (std::size_t j = 0; j < n; ++j) x(i, j) -= f * x(k, j);
        }
    }
    for (std::size_t kk = n; kk-- > 0;) {
        const Complex inv = 1.0 / lu(kk, kk);
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = x(kk, j);
            for (std::size_t l = kk + 1; l < n; ++l) s -= lu(kk, l) * x(l, j);
            x(kk, j) = s * inv;
        }
    }
    return x;
}

ComplexMatrix solve_upper_triangular(const ComplexMatrix& r, const ComplexMatrix& b,
                                     const Tolerance& tol) {
    require_square(r, "solve_upper_triangular");
    if (b.rows() != r.rows())
        throw DimensionError("right-hand side " + shape(b) + " does not match " + shape(r));
    const std::size_t n = r.rows();
    const double threshold = tol.rank_rel * max_abs(r);
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = std::abs(r(i, i));
        if (!(mag > threshold) || mag == 0.0) {
            std::ostringstream msg;
            msg << "triangular matrix is singular to tolerance: pivot magnitude " << mag
                << " at row " << i << " (threshold " << threshold << ")";
            throw NumericError(msg.str());
        }
    }
    ComplexMatrix x = b;
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t i = n; i-- > 0;) {
            Complex s = x(i, j);
            for (std::size_t l = i + 1; l < n; ++l) s -= r(i, l) * x(l, j);
            x(i, j) = s / r(i, i);
        }
    return x;
}

ComplexMatrix mat_pow(const ComplexMatrix& a, unsigned p) {
    require_square(a, "mat_pow");
    ComplexMatrix result = ComplexMatrix::identity(a.rows());
    if (p == 0) return result;
    ComplexMatrix base = a;
    bool first = true;
    while (p > 0) {
        if (p & 1u) {
            result = first ? base : result * base;
            first = false;
        }
        p >>= 1u;
        if (p > 0) base = base * base;
    }
    return result;
}

double condition_number(const ComplexMatrix& a, const Tolerance& tol) {
    if (a.empty()) return 1.0;
    const std::vector<double> s = singular_values(a, tol);
    if (s.back() == 0.0) return std::numeric_limits<double>::infinity();
    return s.front() / s.back();
}

}  // namespace ginv::numkit
