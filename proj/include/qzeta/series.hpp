// Certified evaluation of nested zeta-type series: q-deformed multiple zeta
// values, their tails and r-extensions, classical multiple zeta values and
// binomially damped double tails. Every evaluation returns a partial sum
// (a lower bound, all terms being positive) together with a rigorous upper
// bound on the omitted tail. Round-off is not tracked; only truncation is
// certified.
#ifndef QZETA_SERIES_HPP
#define QZETA_SERIES_HPP

#include <cstdint>
#include <string>

#include "qzeta/multi_index.hpp"

namespace qzeta {

// Deformation parameter, strictly inside (0,1).
class QParam {
public:
    explicit QParam(double q);
    double value() const { return q_; }

private:
    double q_;
};

enum class EvalMode {
    certified,  // cutoff chosen adaptively to push the certificate below epsilon
    empirical,  // cutoff fixed at max_terms, no adaptivity
};

struct EvalConfig {
    double epsilon = 1e-10;            // target remainder bound
    std::int64_t max_terms = 10'000'000;  // cap on the outermost summation index
    EvalMode mode = EvalMode::certified;

    void validate() const;
};

struct SeriesResult {
    double value = 0.0;            // partial sum; true value lies in
    double remainder_bound = 0.0;  // [value, value + remainder_bound] when certified
    std::int64_t terms_used = 0;   // outermost cutoff actually used
    bool certified = false;        // remainder_bound <= epsilon was reached
};

std::string to_json(const SeriesResult& r);

// (1 - q^m) / (1 - q) = 1 + q + ... + q^{m-1}; requires m >= 1.
double q_integer(int m, QParam q);

// Nested q-series over chains m_1 > ... > m_d > 0 with term
// q^{m_i(k_i-1)} / [m_i:q]^{k_i} per layer; requires k admissible.
SeriesResult eval_qmzv(const MultiIndex& k, QParam q, const EvalConfig& cfg = {});

// Same series restricted to chains with m_d > n; n = 0 reproduces eval_qmzv
// through the identical code path.
SeriesResult eval_qmzv_tail(const MultiIndex& k, int n, QParam q,
                            const EvalConfig& cfg = {});

// Hybrid with one extra innermost classical factor 1/m_{d+1}^r, summed over
// m_{d+1} < m_d; requires r >= 1.
SeriesResult eval_qmzv_r(const MultiIndex& k, int r, QParam q,
                         const EvalConfig& cfg = {});

// Classical multiple zeta value over chains m_1 > ... > m_d > 0.
SeriesResult eval_mzv(const MultiIndex& k, const EvalConfig& cfg = {});

// Double tail: chains m_1 > ... > m_d > n, outermost factor C(m_1+p, p)^{-1}.
// p = n = 0 reduces to eval_mzv (same code path).
SeriesResult eval_double_tail(const MultiIndex& k, int p, int n,
                              const EvalConfig& cfg = {});

}  // namespace qzeta

#endif
