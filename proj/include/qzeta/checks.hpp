// Closed-form tail envelopes and the battery of checkers that numerically
// verify the inequality, duality and monotonicity statements over grids.
//
// Margin conventions:
//   strict inequality lhs < rhs   margin = (rhs - lhs) - (rem_lhs + rem_rhs);
//                                 passes only when the gap exceeds the
//                                 combined certified truncation error.
//   equality |lhs - rhs| ~ 0      margin = tolerance + rem_lhs + rem_rhs
//                                 - |lhs - rhs|.
// A passing check stays passing under any epsilon refinement.
#ifndef QZETA_CHECKS_HPP
#define QZETA_CHECKS_HPP

#include <string>
#include <utility>
#include <vector>

#include "qzeta/multi_index.hpp"
#include "qzeta/norms.hpp"
#include "qzeta/series.hpp"

namespace qzeta {

struct CheckInstance {
    std::string parameters;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool passed = false;
};

struct CheckReport {
    std::string check_id;
    bool all_passed = false;
    double worst_margin = 0.0;
    std::vector<CheckInstance> instances;
};

std::string to_json(const CheckReport& r);

struct CheckConfig {
    EvalConfig eval;
    double tolerance = 1e-8;  // equality-comparison tolerance
    int threads = 1;
};

// Closed-form envelopes (lower, upper) for the tail of the q-series of k at
// floor n:
//   prefactor ((q-1)/log q)^d, power (q^{n+d}/[n+d:q]) resp. (q^n/[n:q])
//   raised to weight-depth, times prod_i 1/(k_1+...+k_i - i).
// Requires k admissible and n >= 1 (the upper envelope divides by [n:q]).
std::pair<double, double> omega_bounds(const MultiIndex& k, int n, QParam q);

// Envelope sandwich: lower < tail - rem and tail + rem < upper for each
// n in 1..n_max and each grid point.
CheckReport verify_tail_sandwich(const MultiIndex& k, int n_max, const QGrid& grid,
                                 const CheckConfig& cfg);

enum class DualityKind { q_height_one, mzv, double_tail };

struct DualityParams {
    int height_one_sum = 6;  // q_height_one: all (n,m) with n+m <= this
    int max_weight = 6;      // mzv / double_tail: exhaustive weight bound
    int pn_max = 3;          // double_tail: p,n ranges
};

// q_height_one:  zeta[2+n,{1}^m:q] = zeta[2+m,{1}^n:q] on the grid
// mzv:           zeta(k) = zeta(dual k), exhaustive up to max_weight
// double_tail:   zeta(k)_{p,n} = zeta(dual k)_{n,p}
CheckReport verify_duality(DualityKind kind, const DualityParams& params,
                           const QGrid& grid, const CheckConfig& cfg);

enum class OrderRelation {
    single_term_bound,        // 0 < q^m/[m:q] < 1/m
    slot_comparisons,         // raising any exponent (or the classical slot)
                              // strictly decreases the value; appending a
                              // trailing 1 dominates the classical slot
    depth_comparison,         // zeta[2,{1}^{d+1}:q] < zeta[2,{1}^d:q]
    double_tail_comparisons,  // same monotonicity for double tails at (0,1)
    maximum_element,          // zeta[k:q] <= zeta[2:q], equality only at k=(2)
    r_ext_upper_bound         // zeta[k;r:q) < zeta[2:q]
};

struct OrderParams {
    std::vector<MultiIndex> indices;  // slot/double-tail battery; defaults when empty
    int bump_position = 0;            // slot to raise; 0 = every position <= depth
    int r_max = 3;
    int n_max = 2;       // tail floors for slot comparisons
    int d_max = 4;       // depth range for one-run comparisons
    int m_max = 6;       // m range for the single-term bound
    int max_weight = 6;  // enumeration bound for the maximum-element relations
};

CheckReport verify_order_relations(OrderRelation relation, const OrderParams& params,
                                   const QGrid& grid, const CheckConfig& cfg);

enum class MonotonicityTarget {
    single_term_q,  // q -> q^m/[m:q], increasing
    x_ratio,        // x -> x q^{x-1}/(1-q^x), decreasing on [1,inf)
    qmzv_term       // q -> q^{m1(k-1)}/([m1:q]^k [m2:q]...[md:q]), increasing
};

struct MonotonicityParams {
    int m = 2;                  // single_term_q
    double q = 0.5;             // x_ratio: fixed q
    int x_max = 10;             // x_ratio: samples 1..x_max
    std::vector<int> ms = {2};  // qmzv_term: m_1 >= ... >= m_d
    int k = 3;                  // qmzv_term: leading exponent, k >= d+1
};

// Finite-difference monotonicity over the sample points (strict at every
// consecutive pair). sample_points empty selects 17 evenly spaced q values.
CheckReport verify_monotonicity(MonotonicityTarget target,
                                const MonotonicityParams& params,
                                std::vector<double> sample_points = {});

}  // namespace qzeta

#endif
