// Test-side oracles: naive nested-loop summation, independent of the
// cumulative-sum evaluators in the library. Deliberately O(M^d).
#ifndef QZETA_TESTS_ORACLES_HPP
#define QZETA_TESTS_ORACLES_HPP

#include <cmath>
#include <vector>

namespace qzeta::oracles {

inline double q_int(double q, int m) {
    return (1.0 - std::pow(q, m)) / (1.0 - q);
}

// Nested q-series over m_1 > ... > m_d (> m_{d+1} when extra_r > 0), with the
// innermost variable exceeding floor_n (only meaningful when extra_r == 0).
inline double naive_q_series(const std::vector<int>& ks, int extra_r, int floor_n,
                             double q, int cutoff) {
    const int layers = static_cast<int>(ks.size()) + (extra_r > 0 ? 1 : 0);
    std::vector<int> m(static_cast<std::size_t>(layers));
    double total = 0.0;
    auto rec = [&](auto&& self, int layer, int upper) -> void {
        const int lower =
            (layer == layers - 1) ? ((extra_r > 0) ? 1 : floor_n + 1) : 1;
        for (int v = lower; v < upper; ++v) {
            m[static_cast<std::size_t>(layer)] = v;
            if (layer == layers - 1) {
                double term = 1.0;
                for (std::size_t i = 0; i < ks.size(); ++i)
                    term *= std::pow(q, static_cast<double>(m[i]) * (ks[i] - 1)) /
                            std::pow(q_int(q, m[i]), ks[i]);
                if (extra_r > 0)
                    term *= std::pow(static_cast<double>(m.back()), -extra_r);
                total += term;
            } else {
                self(self, layer + 1, v);
            }
        }
    };
    rec(rec, 0, cutoff + 1);
    return total;
}

// Classical analogue with binomial damping C(m_1+p, p)^{-1} and floor n.
inline double naive_classical(const std::vector<int>& ks, int p, int floor_n,
                              int cutoff) {
    const int layers = static_cast<int>(ks.size());
    std::vector<int> m(static_cast<std::size_t>(layers));
    double total = 0.0;
    auto rec = [&](auto&& self, int layer, int upper) -> void {
        const int lower = (layer == layers - 1) ? floor_n + 1 : 1;
        for (int v = lower; v < upper; ++v) {
            m[static_cast<std::size_t>(layer)] = v;
            if (layer == layers - 1) {
                double term = 1.0;
                for (std::size_t i = 0; i < ks.size(); ++i)
                    term *= std::pow(static_cast<double>(m[i]), -ks[i]);
                double binom = 1.0;
                for (int i = 1; i <= p; ++i)
                    binom *= static_cast<double>(m[0] + i) / i;
                total += term / binom;
            } else {
                self(self, layer + 1, v);
            }
        }
    };
    rec(rec, 0, cutoff + 1);
    return total;
}

// Partial-fraction telescoping: sum_{m>=1} 1/(m^s (m+1)) summed directly with
// an integral tail bound folded in via the cutoff choice.
inline double damped_power_sum(int s, int cutoff) {
    double total = 0.0;
    for (int m = cutoff; m >= 1; --m)
        total += 1.0 / (std::pow(static_cast<double>(m), s) * (m + 1));
    return total;
}

}  // namespace qzeta::oracles

#endif
