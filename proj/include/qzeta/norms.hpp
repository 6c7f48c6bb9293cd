// Sup-norm estimation over q in (0,1), closed-form norms for height-one
// indices, the parametric sequence families, and the convergence/divergence
// experiments that exercise them.
//
// The sup norm is estimated by a grid maximum only; the relevant functions
// extend continuously to [0,1] and the known suprema sit at the q -> 1 end,
// so grids refined near 1 capture the behaviour. The estimate is a lower
// bound of the true sup by construction.
#ifndef QZETA_NORMS_HPP
#define QZETA_NORMS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qzeta/multi_index.hpp"
#include "qzeta/series.hpp"

namespace qzeta {

// zeta(2) = pi^2/6, the sup of the whole family (maximum-element bound).
double zeta2_upper_bound();

// Strictly increasing sample of (0,1).
class QGrid {
public:
    explicit QGrid(std::vector<double> points);
    // {i/(count+1) : 1..count} plus near-1 refinements {1 - 10^-(2+j) : 1..refinements}.
    static QGrid make(int count, int near_one_refinements);
    // make(99, 2): percent grid plus {0.999, 0.9999}.
    static QGrid default_grid();

    const std::vector<double>& points() const { return points_; }

private:
    std::vector<double> points_;
};

// A tagged, evaluable function of q.
struct FunctionSpec {
    enum class Kind { qmzv, qmzv_tail, qmzv_r };

    Kind kind;
    MultiIndex index;
    int tail_n = 0;  // qmzv_tail only
    int r = 1;       // qmzv_r only

    static FunctionSpec qmzv(MultiIndex k);
    static FunctionSpec tail(MultiIndex k, int n);
    static FunctionSpec r_ext(MultiIndex k, int r);

    std::string to_string() const;
};

SeriesResult eval_function_spec(const FunctionSpec& f, QParam q, const EvalConfig& cfg);

struct NormEstimate {
    double grid_max = 0.0;
    double argmax_q = 0.0;
    std::optional<double> closed_form;  // present iff height-one plain q-MZV
    double upper_bound = 0.0;           // closed_form when present, else zeta(2)
    std::vector<double> excluded_points;  // grid points whose evaluation failed
};

std::string to_json(const NormEstimate& e);

NormEstimate sup_norm_estimate(const FunctionSpec& f, const QGrid& grid,
                               const EvalConfig& cfg, int threads = 1);

// Strictly increasing integer map n -> a*n + b (a >= 1, b >= 0).
struct AffineMap {
    int a = 1;
    int b = 0;
    int operator()(int n) const { return a * n + b; }
};

// The sequence families of function specs indexed by n:
//   t1: fixed k, growing classical slot r = phi(n)+2
//   t2: (2,{1}^psi(n)), fixed r
//   t3: (2,{1}^psi(n)), r = phi(n)+2
//   t4: (2,{1}^psi(n), k), fixed r
//   t5: (2,{1}^psi(n), k), r = phi(n)+2
//   q1: tails (2,{1}^psi(n)) at floor 1
//   q2: tails (2,{1}^psi(n), k) at floor 1
//   vanishing: (3,{1}^{psi(n)-1}) with r = 1, the family whose norms tend to 0
struct SequenceFamily {
    enum class Kind { t1, t2, t3, t4, t5, q1, q2, vanishing };

    Kind kind;
    std::optional<MultiIndex> k;  // required for t1, t4, t5, q2
    int r = 1;                    // used by t2, t4
    AffineMap psi;
    AffineMap phi;

    void validate() const;
    static std::string kind_name(Kind kind);
    static Kind kind_from_name(std::string_view name);  // "T1".."T5","Q1","Q2","V1"
};

FunctionSpec make_sequence(const SequenceFamily& family, int n);

struct ConvergenceRecord {
    int n = 0;
    // Grid-sup of |f_n - candidate| (for divergence families the candidate is
    // the pointwise limit 0, so this equals the grid max).
    double distance_to_candidate = 0.0;
    // Closed-form majorant: bounds the distance for convergence experiments,
    // bounds the probe value for divergence witnesses.
    double analytic_bound = 0.0;
    double pointwise_value_at_probe_q = 0.0;
    double norm_lower_evidence = 0.0;  // grid max of f_n
};

enum class ConvergenceVerdict { converges_to_tail, converges_to_zero, norm_bounded_below };

struct ConvergenceReport {
    std::string candidate;
    ConvergenceVerdict verdict;
    std::vector<ConvergenceRecord> records;
};

std::string verdict_name(ConvergenceVerdict v);
std::string to_json(const ConvergenceReport& r);
// Columns: n,distance,analytic_bound,probe_value,grid_max
std::string to_csv(const ConvergenceReport& r);

struct ExperimentConfig {
    EvalConfig eval;
    double probe_q = 0.5;
    // Verdict thresholds (reports always carry the raw numbers):
    //   converges_*     final distance below analytic bound + slack and below
    //                   the first distance;
    //   norm_bounded_below  every grid max >= norm_floor while the final probe
    //                   value <= probe_ceiling.
    double norm_floor = 0.5;
    double probe_ceiling = 1e-2;
    double verdict_slack = 1e-6;
    int threads = 1;
};

// Families t1 (candidate: the tail of the fixed index at floor 1) and
// vanishing (candidate: 0). Other families diverge; use divergence_witness.
ConvergenceReport convergence_experiment(const SequenceFamily& family, int n_min,
                                         int n_max, const QGrid& grid,
                                         const ExperimentConfig& cfg);

// Families t2..t5, q1, q2: pointwise-vanishing yet norm-bounded-below.
ConvergenceReport divergence_witness(const SequenceFamily& family, int n_min,
                                     int n_max, const QGrid& grid,
                                     const ExperimentConfig& cfg);

}  // namespace qzeta

#endif
