// Runs the eight acceptance criteria and prints one PASS/FAIL line for each.

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ginv/decomp.hpp"
#include "ginv/inverses.hpp"
#include "ginv/matrix_file.hpp"
#include "ginv/verify.hpp"
#include "oracles.hpp"

namespace {

using namespace ginv;
using inverses::Route;
using numkit::max_abs_diff;
using verify::Plant;

struct Outcome {
    bool passed = true;
    std::string summary;
};

struct Instance {
    fixtures::Case c;
    verify::GeneratedInstance g;
};

const std::vector<Instance>& instances() {
    static const std::vector<Instance> all = [] {
        std::vector<Instance> out;
        for (const fixtures::Case& c : fixtures::standard_cases())
            out.push_back({c, verify::generate_instance(c.spec)});
        return out;
    }();
    return all;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome reference_fixture() {
    const auto t0 = std::chrono::steady_clock::now();
    const ComplexMatrix a = fixtures::example();
    const ComplexMatrix expected = fixtures::example_mwc1();
    const unsigned k = decomp::matrix_index(a);
    const double e_mwg = max_abs_diff(inverses::m_weak_group(a, 1), expected);
    const double e_mwc = max_abs_diff(inverses::m_weak_core(a, 1), expected);
    const bool ep = verify::is_ep(a);
    const double took = seconds_since(t0);
    std::ostringstream s;
    s << "Ind(A) = " << k << ", |mwg - expected| = " << e_mwg << ", |mwc - expected| = " << e_mwc
      << ", is_ep = " << (ep ? "true" : "false") << ", " << took << " s";
    return {k == 4 && e_mwg <= 1e-10 && e_mwc <= 1e-10 && !ep && took < 1.0, s.str()};
}

Outcome route_agreement() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::size_t pairs = 0;
    std::string where;
    for (const Instance& in : instances())
        for (unsigned m : in.c.ms) {
            const ComplexMatrix& a = in.g.a;
            const ComplexMatrix x[3] = {inverses::m_weak_core(a, m, {}, Route::Definitional),
                                        inverses::m_weak_core(a, m, {}, Route::CoreEpCanonical),
                                        inverses::m_weak_core(a, m, {}, Route::HartwigSpindelbock)};
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    ++pairs;
                    const double d = max_abs_diff(x[i], x[j]);
                    if (d > worst) {
                        worst = d;
                        where = "seed " + std::to_string(in.c.spec.seed) + ", m = " + std::to_string(m);
                    }
                }
        }
    const double took = seconds_since(t0);
    std::ostringstream s;
    s << pairs << " route pairs, worst max-entry difference " << worst << " (" << where << "), "
      << took << " s";
    return {worst <= 1e-8 && took < 30.0, s.str()};
}

Outcome penrose_and_cline() {
    std::size_t penrose_fail = 0;
    double worst_cline = 0.0;
    for (const Instance& in : instances()) {
        const ComplexMatrix& a = in.g.a;
        const ComplexMatrix x = inverses::moore_penrose(a);
        const ComplexMatrix ax = a * x, xa = x * a;
        const bool ok = numkit::approx_eq(ax * a, a, {}) && numkit::approx_eq(xa * x, x, {}) &&
                        numkit::approx_eq(numkit::conj_transpose(ax), ax, {}) &&
                        numkit::approx_eq(numkit::conj_transpose(xa), xa, {});
        if (!ok) ++penrose_fail;
        const ComplexMatrix cline = oracle::drazin_cline(a, in.c.spec.index, in.c.spec.t);
        worst_cline = std::max(worst_cline, max_abs_diff(inverses::drazin(a), cline));
    }
    std::ostringstream s;
    s << penrose_fail << " instances failing a Penrose equation, worst |A^d - Cline| = "
      << worst_cline;
    return {penrose_fail == 0 && worst_cline <= 1e-8, s.str()};
}

Outcome identity_suites() {
    std::size_t reports = 0, failed = 0;
    std::string first;
    for (const Instance& in : instances()) {
        for (const verify::CheckReport& r : verify::run_suite(in.g.a, in.c.ms)) {
            ++reports;
            if (!r.passed) {
                if (failed++ == 0) first = " (first: seed " + std::to_string(in.c.spec.seed) + " " + r.name + ")";
            }
        }
    }
    std::ostringstream s;
    s << reports << " reports on " << instances().size() << " instances, " << failed << " failed"
      << first;
    return {failed == 0, s.str()};
}

// --- planted iff instances ---------------------------------------------

struct Draw {
    verify::InstanceSpec spec;
    Plant plant = Plant::None;
    unsigned m = 1;  // both the planted power and the m under test
};

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// n in [2, 10], index in [1, min(max_k, n - 1)], t in [1, n - k], m in [1, k + 2].
Draw singular(std::mt19937_64& rng, std::uint64_t seed, Plant plant, unsigned max_k = 4) {
    Draw d;
    const std::size_t n = pick(rng, 2, 10);
    const unsigned k = static_cast<unsigned>(pick(rng, 1, std::min<std::size_t>(max_k, n - 1)));
    const std::size_t t = pick(rng, 1, n - k);
    d.spec = {n, t, k, seed, 100.0};
    d.plant = plant;
    d.m = static_cast<unsigned>(pick(rng, 1, k + 2));
    return d;
}

// Index 0 or 1 with N = 0, for the EP and idempotent classes.
Draw index_at_most_one(std::mt19937_64& rng, std::uint64_t seed, Plant plant) {
    Draw d;
    const std::size_t n = pick(rng, 1, 10);
    const std::size_t t = pick(rng, 1, n);
    d.spec = {n, t, t == n ? 0u : 1u, seed, 100.0};
    d.plant = plant;
    d.m = static_cast<unsigned>(pick(rng, 1, 3));
    return d;
}

struct Item {
    std::string name;
    bool special;  // check_special_matrices rather than check_equality_conditions
    std::function<Draw(std::mt19937_64&, std::uint64_t)> draw;
};

std::vector<Item> iff_items() {
    return {
        {"equality.a", false, [](auto& rng, auto seed) { return singular(rng, seed, Plant::ZeroSAndN, 1); }},
        {"equality.b", false, [](auto& rng, auto seed) { return singular(rng, seed, Plant::ZeroS); }},
        {"equality.c", false, [](auto& rng, auto seed) { return singular(rng, seed, Plant::SAnnihilatesNPower); }},
        {"equality.d", false, [](auto& rng, auto seed) { return singular(rng, seed, Plant::ZeroS); }},
        {"equality.e", false, [](auto& rng, auto seed) {
             Draw d = singular(rng, seed, Plant::None);
             d.m = 1;
             return d;
         }},
        {"equality.f", false, [](auto& rng, auto seed) {
             Draw d = singular(rng, seed, Plant::SInRangeNPower);
             d.m = 1;
             return d;
         }},
        {"special.a", true, [](auto& rng, auto seed) {
             Draw d;
             const std::size_t n = pick(rng, 1, 10);
             const unsigned k = static_cast<unsigned>(pick(rng, 1, std::min<std::size_t>(4, n)));
             d.spec = {n, 0, k, seed, 100.0};
             d.m = static_cast<unsigned>(pick(rng, 1, k + 2));
             return d;
         }},
        {"special.b", true, [](auto& rng, auto seed) { return index_at_most_one(rng, seed, Plant::EpTripotent); }},
        {"special.c", true, [](auto& rng, auto seed) { return index_at_most_one(rng, seed, Plant::EpPartialIsometry); }},
        {"special.d", true, [](auto& rng, auto seed) { return index_at_most_one(rng, seed, Plant::Idempotent); }},
    };
}

std::vector<verify::CheckReport> iff_reports(const ComplexMatrix& a, unsigned m, bool special) {
    return special ? verify::check_special_matrices(a, m) : verify::check_equality_conditions(a, m);
}

bool both_true(const verify::CheckReport& r) {
    // "<lhs> is true, <rhs> is true"
    std::size_t count = 0;
    for (std::size_t p = r.detail.find("is true"); p != std::string::npos; p = r.detail.find("is true", p + 1))
        ++count;
    return count == 2;
}

Outcome iff_agreement() {
    constexpr int kPerItem = 50;
    std::size_t cases = 0, disagreements = 0;
    std::ostringstream planted;
    std::mt19937_64 rng(0x1ff);
    std::uint64_t seed = 50000;
    std::string first;
    for (const Item& item : iff_items()) {
        int true_both = 0;
        for (int i = 0; i < kPerItem; ++i) {
            const Draw d = item.draw(rng, ++seed);
            const ComplexMatrix a = verify::generate_instance(d.spec, d.plant, d.m).a;
            const std::string name = item.name + "[m=" + std::to_string(d.m) + "]";
            for (const verify::CheckReport& r : iff_reports(a, d.m, item.special)) {
                if (r.name != name) continue;
                ++cases;
                if (both_true(r)) ++true_both;
                if (!r.passed && disagreements++ == 0) first = " (first: " + r.name + ", " + r.detail + ")";
            }
        }
        planted << ' ' << item.name << ' ' << true_both << '/' << kPerItem;
    }
    for (int i = 0; i < kPerItem; ++i) {
        const Draw d = singular(rng, ++seed, Plant::None);
        const ComplexMatrix a = verify::generate_instance(d.spec).a;
        for (bool special : {false, true})
            for (const verify::CheckReport& r : iff_reports(a, d.m, special)) {
                ++cases;
                if (!r.passed && disagreements++ == 0) first = " (first: " + r.name + ", " + r.detail + ")";
            }
    }
    std::ostringstream s;
    s << cases << " iff evaluations, " << disagreements << " disagreements" << first
      << "; planted cases with both sides true:" << planted.str();
    return {disagreements == 0, s.str()};
}

Outcome inner_inverse_dichotomy() {
    double worst_low = 0.0;      // index <= 1: should stay small
    double best_high = 1e300;    // index >= 2: should stay large
    for (const Instance& in : instances())
        for (unsigned m : in.c.ms) {
            const ComplexMatrix& a = in.g.a;
            const double r = numkit::max_abs(a * inverses::m_weak_core(a, m) * a - a);
            if (in.c.spec.index <= 1)
                worst_low = std::max(worst_low, r);
            else
                best_high = std::min(best_high, r);
        }
    std::ostringstream s;
    s << "index <= 1: max |AXA - A| = " << worst_low << "; index >= 2: min |AXA - A| = " << best_high;
    return {worst_low <= 1e-9 && best_high > 1e-5, s.str()};
}

Outcome mutation_kill() {
    verify::SuiteOptions opts;
    opts.suite = verify::Suite::Props;
    opts.mutation = verify::Mutation::SubstituteDmp;
    std::size_t killed = 0, instances_hit = 0;
    for (const Instance& in : instances()) {
        std::size_t here = 0;
        for (const verify::CheckReport& r : verify::run_suite(in.g.a, in.c.ms, {}, opts))
            if (!r.passed && r.name.rfind("system1[", 0) == 0) ++here;
        killed += here;
        if (here > 0) ++instances_hit;
    }
    std::ostringstream s;
    s << killed << " system-1 failures on " << instances_hit << " instances with A^{d,†} substituted";
    return {killed > 0, s.str()};
}

bool bitwise_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Complex x = a.data()[i], y = b.data()[i];
        if (std::bit_cast<std::uint64_t>(x.real()) != std::bit_cast<std::uint64_t>(y.real()) ||
            std::bit_cast<std::uint64_t>(x.imag()) != std::bit_cast<std::uint64_t>(y.imag()))
            return false;
    }
    return true;
}

double awkward_double(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    switch (pick(rng, 0, 9)) {
        case 0: return 0.0;
        case 1: return -0.0;
        case 2: return static_cast<double>(static_cast<long>(pick(rng, 0, 2000)) - 1000);
        case 3: return std::ldexp(normal(rng), static_cast<int>(pick(rng, 0, 2000)) - 1000);
        case 4: return std::numeric_limits<double>::denorm_min() * static_cast<double>(pick(rng, 1, 1000));
        case 5: return std::numeric_limits<double>::max() * (normal(rng) > 0 ? 1 : -1);
        default: return normal(rng);
    }
}

Outcome cli_round_trip() {
    std::mt19937_64 rng(0xc5f);
    int ok = 0;
    std::string first;
    for (int i = 0; i < 100; ++i) {
        ComplexMatrix m(pick(rng, 1, 8), pick(rng, 1, 8));
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = {awkward_double(rng), awkward_double(rng)};
        bool both = true;
        for (io::Format f : {io::Format::Csv, io::Format::Json}) {
            try {
                if (!bitwise_equal(io::parse(io::write(m, f), f), m)) {
                    both = false;
                    if (first.empty()) first = " (first: matrix " + std::to_string(i) + " via " + io::to_string(f) + ")";
                }
            } catch (const std::exception& e) {
                both = false;
                if (first.empty()) first = " (first: " + std::string(e.what()) + ")";
            }
        }
        ok += both;
    }
    std::ostringstream s;
    s << ok << "/100 matrices reproduced bitwise through CSV and JSON" << first;
    return {ok == 100, s.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"index-4 fixture", reference_fixture},
        {"route agreement", route_agreement},
        {"Penrose equations and Cline oracle", penrose_and_cline},
        {"identity suites", identity_suites},
        {"iff items on planted instances", iff_agreement},
        {"inner-inverse dichotomy", inner_inverse_dichotomy},
        {"mutation kill", mutation_kill},
        {"CLI file round trip", cli_round_trip},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.passed) ++failures;
        std::printf("criterion %zu %s: %s: %s\n", i + 1, o.passed ? "PASS" : "FAIL",
                    criteria[i].first.c_str(), o.summary.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
