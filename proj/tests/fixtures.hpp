#pragma once

#include <vector>

#include "ginv/matrix.hpp"
#include "ginv/verify.hpp"
#include "oracles.hpp"

namespace fixtures {

using ginv::ComplexMatrix;

// 5x5 matrix of index 4 whose m-weak group and m-weak core inverses agree at m = 1.
inline oracle::Rational example_exact() {
    return {{1, 0, 0, 1, 0}, {0, 0, 1, 1, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, -1}, {0, 0, 0, 0, 0}};
}

inline ComplexMatrix example() { return example_exact().to_complex(); }

// Its m-weak core inverse at m = 1 (equal to the m-weak group inverse).
inline ComplexMatrix example_mwc1() {
    ComplexMatrix x(5, 5);
    x(0, 0) = 1.0;
    x(0, 3) = 1.0;
    return x;
}

struct Case {
    ginv::verify::InstanceSpec spec;
    std::vector<unsigned> ms;  // 1..k+2
};

// The 200 generated instances: n cycles through 1..10 and the index through
// 0..4 (capped so that a nonzero T is possible); t sweeps its feasible range.
// Zero matrices (index 1 with t = 0) are skipped because the HS route needs
// rank > 0.
inline std::vector<Case> standard_cases(std::size_t count = 200) {
    std::vector<Case> out;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t n = 1 + i % 10;
        unsigned k = static_cast<unsigned>(i % 5);
        if (k >= n) k = static_cast<unsigned>(n - 1);
        std::size_t t = n;
        if (k > 0) {
            const std::size_t lo = k == 1 ? 1 : 0;
            const std::size_t hi = n - k;
            t = hi - (i / 5) % (hi - lo + 1);
        }
        Case c;
        c.spec = {n, t, k, 1000 + i, 100.0};
        for (unsigned m = 1; m <= k + 2; ++m) c.ms.push_back(m);
        out.push_back(c);
    }
    return out;
}

}  // namespace fixtures
