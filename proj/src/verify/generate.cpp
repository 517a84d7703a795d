#include <cmath>
#include <random>
#include <sstream>

#include "ginv/verify.hpp"

namespace ginv::verify {

namespace {

constexpr int kMaxAttempts = 8;
constexpr std::uint64_t kSeedMix = 0x9E3779B97F4A7C15ULL;

using Rng = std::mt19937_64;

ComplexMatrix gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal;
    ComplexMatrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const double re = normal(rng);
            g(i, j) = Complex{re, normal(rng)};
        }
    return g;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    return numkit::qr(gaussian(n, n, rng)).q;
}

Complex random_phase(Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
    return std::polar(1.0, angle(rng));
}

ComplexMatrix strictly_upper(ComplexMatrix m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j <= i && j < m.cols(); ++j) m(i, j) = 0.0;
    return m;
}

ComplexMatrix random_core_block(std::size_t t, double cap, Rng& rng) {
    if (t == 0) return ComplexMatrix(0, 0);
    std::uniform_real_distribution<double> modulus(1.0, std::min(2.0, cap));
    ComplexMatrix d(t, t);
    for (std::size_t i = 0; i < t; ++i) d(i, i) = modulus(rng) * random_phase(rng);
    const ComplexMatrix w = random_unitary(t, rng);
    ComplexMatrix r = strictly_upper(gaussian(t, t, rng)) * 0.3;
    const ComplexMatrix wh = numkit::conj_transpose(w);
    for (;;) {
        ComplexMatrix tb = w * (d + r) * wh;
        if (numkit::condition_number(tb) <= cap) return tb;
        r *= 0.5;
    }
}

// Nilpotent block of size `size` and index exactly k, similar to a Jordan form
// through a mild unit upper-triangular change of basis.
ComplexMatrix random_nilpotent(std::size_t size, unsigned k, Rng& rng) {
    if (size == 0) return ComplexMatrix(0, 0);
    std::uniform_real_distribution<double> link(0.5, 1.5);
    ComplexMatrix j(size, size);
    std::size_t start = 0;
    std::size_t block = k;
    while (start < size) {
        for (std::size_t i = start; i + 1 < start + block; ++i) j(i, i + 1) = link(rng);
        start += block;
        const std::size_t rest = size - start;
        if (rest > 0) {
            std::uniform_int_distribution<std::size_t> pick(1, std::min<std::size_t>(k, rest));
            block = pick(rng);
        }
    }
    const ComplexMatrix r = ComplexMatrix::identity(size) + strictly_upper(gaussian(size, size, rng)) * 0.3;
    return r * j * numkit::inverse(r);
}

GeneratedInstance build(const InstanceSpec& spec, Plant plant, unsigned plant_m, Rng& rng,
                        const Tolerance& tol) {
    const std::size_t n = spec.n;
    const std::size_t t = spec.t;
    const std::size_t rest = n - t;

    GeneratedInstance g;
    g.u = random_unitary(n, rng);
    g.t = random_core_block(t, spec.condition_cap, rng);
    g.s = gaussian(t, rest, rng) * 0.5;
    g.n = random_nilpotent(rest, spec.index, rng);

    switch (plant) {
        case Plant::None: break;
        case Plant::ZeroS: g.s = ComplexMatrix(t, rest); break;
        case Plant::ZeroN: g.n = ComplexMatrix(rest, rest); break;
        case Plant::ZeroSAndN:
            g.s = ComplexMatrix(t, rest);
            g.n = ComplexMatrix(rest, rest);
            break;
        case Plant::SAnnihilatesNPower: {
            if (plant_m < spec.index) {
                const ComplexMatrix p = decomp::projector_power(g.n, plant_m, tol);
                g.s = g.s * (ComplexMatrix::identity(rest) - p);
            }
            break;
        }
        case Plant::SInRangeNPower:
            if (plant_m < spec.index)
                g.s = g.s * decomp::projector_power(g.n, plant_m, tol);
            else
                g.s = ComplexMatrix(t, rest);
            break;
        case Plant::EpTripotent: {
            std::bernoulli_distribution sign;
            ComplexMatrix d(t, t);
            for (std::size_t i = 0; i < t; ++i) d(i, i) = sign(rng) ? 1.0 : -1.0;
            const ComplexMatrix w = random_unitary(t, rng);
            g.t = w * d * numkit::conj_transpose(w);
            g.s = ComplexMatrix(t, rest);
            g.n = ComplexMatrix(rest, rest);
            break;
        }
        case Plant::EpPartialIsometry:
            g.t = random_unitary(t, rng);
            g.s = ComplexMatrix(t, rest);
            g.n = ComplexMatrix(rest, rest);
            break;
        case Plant::Idempotent:
            g.t = ComplexMatrix::identity(t);
            g.n = ComplexMatrix(rest, rest);
            break;
    }

    const ComplexMatrix inner =
        ComplexMatrix::from_blocks(g.t, g.s, ComplexMatrix(rest, t), g.n);
    g.a = g.u * inner * numkit::conj_transpose(g.u);
    return g;
}

}  // namespace

void InstanceSpec::validate() const {
    std::ostringstream why;
    if (n < 1 || n > 16)
        why << "n must be in 1..16, got " << n;
    else if (t > n)
        why << "t = " << t << " exceeds n = " << n;
    else if (index == 0 && t != n)
        why << "index 0 requires t = n";
    else if (index > 0 && t == n)
        why << "t = n forces index 0, got " << index;
    else if (index > n - t)
        why << "index " << index << " exceeds n - t = " << n - t;
    else if (!(condition_cap >= 1.0) || !std::isfinite(condition_cap))
        why << "condition cap must be a finite number >= 1";
    const std::string message = why.str();
    if (!message.empty()) throw PreconditionError("infeasible instance spec: " + message);
}

GeneratedInstance generate_instance(const InstanceSpec& spec, Plant plant, unsigned plant_m,
                                    const Tolerance& tol) {
    spec.validate();
    const bool kills_n = plant == Plant::ZeroN || plant == Plant::ZeroSAndN ||
                         plant == Plant::EpTripotent || plant == Plant::EpPartialIsometry ||
                         plant == Plant::Idempotent;
    if (kills_n && spec.index > 1)
        throw PreconditionError("N = 0 forces index <= 1, spec asks for " +
                                std::to_string(spec.index));
    if ((plant == Plant::SAnnihilatesNPower || plant == Plant::SInRangeNPower) && plant_m == 0)
        throw std::invalid_argument("planted power m must be >= 1");

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Rng rng(spec.seed ^ (static_cast<std::uint64_t>(attempt) * kSeedMix));
        GeneratedInstance g = build(spec, plant, plant_m, rng, tol);
        const unsigned k = decomp::matrix_index(g.a, tol);
        if (k != spec.index) continue;
        const double scale =
            std::pow(numkit::singular_values(g.a, tol).front(), static_cast<double>(k));
        if (numkit::rank(numkit::mat_pow(g.a, k), tol, scale) == spec.t) return g;
    }
    throw NumericError("generator missed index " + std::to_string(spec.index) + " / rank " +
                       std::to_string(spec.t) + " after " + std::to_string(kMaxAttempts) +
                       " attempts");
}

ComplexMatrix generate(const InstanceSpec& spec, const Tolerance& tol) {
    return generate_instance(spec, Plant::None, 1, tol).a;
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    return gaussian(rows, cols, rng);
}

bool is_ep(const ComplexMatrix& a, const Tolerance& tol) {
    return numkit::approx_eq(decomp::projector_power(a, 1, tol),
                             decomp::range_star_projector_power(a, 1, tol), tol);
}

bool is_tripotent(const ComplexMatrix& a, const Tolerance& tol) {
    return numkit::approx_eq(numkit::mat_pow(a, 3), a, tol);
}

bool is_partial_isometry(const ComplexMatrix& a, const Tolerance& tol) {
    return numkit::approx_eq(a * numkit::conj_transpose(a) * a, a, tol);
}

bool is_idempotent(const ComplexMatrix& a, const Tolerance& tol) {
    return numkit::approx_eq(a * a, a, tol);
}

}  // namespace ginv::verify
