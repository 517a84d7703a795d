#pragma once

// Reference computations used by the tests. Nothing here calls the library
// routine it is compared against: products are triple loops, pseudoinverses
// come from Eigen or from exact rational arithmetic.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ginv/matrix.hpp"

namespace oracle {

__extension__ typedef __int128 Wide;

using ginv::Complex;
using ginv::ComplexMatrix;

inline ComplexMatrix product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s = 0.0;
            for (std::size_t l = 0; l < a.cols(); ++l) s += a(i, l) * b(l, j);
            c(i, j) = s;
        }
    return c;
}

// a^p by p sequential products.
inline ComplexMatrix power(const ComplexMatrix& a, unsigned p) {
    ComplexMatrix r = ComplexMatrix::identity(a.rows());
    for (unsigned i = 0; i < p; ++i) r = product(r, a);
    return r;
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
    Eigen::MatrixXcd e(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) e(i, j) = a(i, j);
    return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
    ComplexMatrix a(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) a(i, j) = e(i, j);
    return a;
}

// Pseudoinverse keeping exactly the r largest singular values.
inline ComplexMatrix pinv_rank(const ComplexMatrix& a, std::size_t r) {
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(a.cols(), a.rows());
    for (std::size_t i = 0; i < r; ++i)
        x += svd.matrixV().col(i) * (1.0 / svd.singularValues()(i)) * svd.matrixU().col(i).adjoint();
    return from_eigen(x);
}

// Pseudoinverse with singular values below rel * scale dropped.
inline ComplexMatrix pinv_cut(const ComplexMatrix& a, double rel, double scale) {
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
    std::size_t r = 0;
    const auto& s = svd.singularValues();
    const double cut = rel * std::max(scale, s.size() > 0 ? s(0) : 0.0);
    while (r < static_cast<std::size_t>(s.size()) && s(r) > cut) ++r;
    return pinv_rank(a, r);
}

inline double spectral_norm(const ComplexMatrix& a) {
    if (a.empty()) return 0.0;
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(to_eigen(a)).singularValues()(0);
}

// Cline: A^d = A^k (A^{2k+1})^† A^k, where rank(A^{2k+1}) = t.
inline ComplexMatrix drazin_cline(const ComplexMatrix& a, unsigned k, std::size_t t) {
    const ComplexMatrix ak = power(a, k);
    return product(product(ak, pinv_rank(power(a, 2 * k + 1), t)), ak);
}

// A^⊕ = A^d A^k (A^k)^†.
inline ComplexMatrix core_ep(const ComplexMatrix& a, unsigned k, std::size_t t) {
    const ComplexMatrix ak = power(a, k);
    return product(product(drazin_cline(a, k, t), ak), pinv_rank(ak, t));
}

// A^{⊕_m} = (A^⊕)^{m+1} A^m P_{A^m}; rank(A^m) is decided against ||A||^m.
inline ComplexMatrix m_weak_core(const ComplexMatrix& a, unsigned k, std::size_t t, unsigned m) {
    const ComplexMatrix am = power(a, m);
    const ComplexMatrix p = product(am, pinv_cut(am, 1e-10, std::pow(spectral_norm(a), m)));
    return product(product(power(core_ep(a, k, t), m + 1), am), p);
}

// --- exact rational arithmetic ------------------------------------------

class Fraction {
public:
    Fraction(std::int64_t n = 0, std::int64_t d = 1) : n_(n), d_(d) {
        if (d_ == 0) throw std::domain_error("zero denominator");
        normalize();
    }
    std::int64_t num() const { return n_; }
    std::int64_t den() const { return d_; }
    bool is_zero() const { return n_ == 0; }
    double to_double() const { return static_cast<double>(n_) / static_cast<double>(d_); }

    friend Fraction operator+(Fraction a, Fraction b) {
        return make(static_cast<Wide>(a.n_) * b.d_ + static_cast<Wide>(b.n_) * a.d_,
                    static_cast<Wide>(a.d_) * b.d_);
    }
    friend Fraction operator-(Fraction a, Fraction b) { return a + Fraction(-b.n_, b.d_); }
    friend Fraction operator*(Fraction a, Fraction b) {
        return make(static_cast<Wide>(a.n_) * b.n_, static_cast<Wide>(a.d_) * b.d_);
    }
    friend Fraction operator/(Fraction a, Fraction b) {
        if (b.n_ == 0) throw std::domain_error("division by zero");
        return make(static_cast<Wide>(a.n_) * b.d_, static_cast<Wide>(a.d_) * b.n_);
    }
    friend bool operator==(Fraction a, Fraction b) { return a.n_ == b.n_ && a.d_ == b.d_; }

private:
    static Fraction make(Wide n, Wide d) {
        if (d < 0) n = -n, d = -d;
        Wide g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) n /= g, d /= g;
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw std::overflow_error("fraction overflow");
        return Fraction(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }
    static Wide gcd128(Wide a, Wide b) {
        while (b != 0) {
            const Wide r = a % b;
            a = b;
            b = r;
        }
        return a;
    }
    void normalize() {
        if (d_ < 0) n_ = -n_, d_ = -d_;
        const std::int64_t g = std::gcd(n_, d_);
        if (g > 1) n_ /= g, d_ /= g;
    }

    std::int64_t n_, d_;
};

// Real rational matrix, row-major.
struct Rational {
    std::size_t rows = 0, cols = 0;
    std::vector<Fraction> e;

    Rational(std::size_t r, std::size_t c) : rows(r), cols(c), e(r * c) {}
    Rational(std::initializer_list<std::initializer_list<std::int64_t>> init)
        : rows(init.size()), cols(init.begin()->size()) {
        for (const auto& row : init)
            for (std::int64_t v : row) e.emplace_back(v);
    }
    static Rational identity(std::size_t n) {
        Rational r(n, n);
        for (std::size_t i = 0; i < n; ++i) r(i, i) = 1;
        return r;
    }
    Fraction& operator()(std::size_t i, std::size_t j) { return e[i * cols + j]; }
    Fraction operator()(std::size_t i, std::size_t j) const { return e[i * cols + j]; }

    Rational transpose() const {
        Rational t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    ComplexMatrix to_complex() const {
        ComplexMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(i, j).to_double();
        return m;
    }
};

inline Rational operator*(const Rational& a, const Rational& b) {
    Rational c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            Fraction s;
            for (std::size_t l = 0; l < a.cols; ++l) s = s + a(i, l) * b(l, j);
            c(i, j) = s;
        }
    return c;
}

inline Rational operator-(const Rational& a, const Rational& b) {
    Rational c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.e.size(); ++i) c.e[i] = a.e[i] - b.e[i];
    return c;
}

inline Rational power(const Rational& a, unsigned p) {
    Rational r = Rational::identity(a.rows);
    for (unsigned i = 0; i < p; ++i) r = r * a;
    return r;
}

// Rank by fraction-exact Gaussian elimination.
inline std::size_t rank(Rational a) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
        std::size_t p = r;
        while (p < a.rows && a(p, c).is_zero()) ++p;
        if (p == a.rows) continue;
        for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(r, j), a(p, j));
        for (std::size_t i = r + 1; i < a.rows; ++i) {
            const Fraction f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols; ++j) a(i, j) = a(i, j) - f * a(r, j);
        }
        ++r;
    }
    return r;
}

inline unsigned index(const Rational& a) {
    std::size_t prev = a.rows;
    Rational p = Rational::identity(a.rows);
    for (unsigned k = 0;; ++k) {
        p = p * a;
        const std::size_t r = rank(p);
        if (r == prev) return k;
        prev = r;
    }
}

// Greville's column-recursive pseudoinverse, exact.
inline Rational pinv(const Rational& a) {
    const auto column = [&](std::size_t j) {
        Rational c(a.rows, 1);
        for (std::size_t i = 0; i < a.rows; ++i) c(i, 0) = a(i, j);
        return c;
    };
    const auto dot = [](const Rational& u, const Rational& v) {
        Fraction s;
        for (std::size_t i = 0; i < u.e.size(); ++i) s = s + u.e[i] * v.e[i];
        return s;
    };
    const auto scaled = [](Rational m, Fraction f) {
        for (Fraction& x : m.e) x = x * f;
        return m;
    };

    Rational ak = column(0);
    const Fraction n0 = dot(ak, ak);
    Rational x = n0.is_zero() ? Rational(1, a.rows) : scaled(ak.transpose(), Fraction(1) / n0);
    for (std::size_t j = 1; j < a.cols; ++j) {
        const Rational aj = column(j);
        const Rational d = x * aj;
        const Rational c = aj - ak * d;
        const Fraction cc = dot(c, c);
        Rational b(1, a.rows);
        if (!cc.is_zero())
            b = scaled(c.transpose(), Fraction(1) / cc);
        else
            b = scaled(d.transpose() * x, Fraction(1) / (Fraction(1) + dot(d, d)));
        const Rational top = x - d * b;
        Rational next(j + 1, a.rows);
        for (std::size_t i = 0; i < j; ++i)
            for (std::size_t l = 0; l < a.rows; ++l) next(i, l) = top(i, l);
        for (std::size_t l = 0; l < a.rows; ++l) next(j, l) = b(0, l);
        x = next;
        Rational grown(a.rows, j + 1);
        for (std::size_t i = 0; i < a.rows; ++i) {
            for (std::size_t l = 0; l < j; ++l) grown(i, l) = ak(i, l);
            grown(i, j) = aj(i, 0);
        }
        ak = grown;
    }
    return x;
}

}  // namespace oracle
