// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned here, not configurable.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qzeta/checks.hpp"
#include "qzeta/multi_index.hpp"
#include "qzeta/norms.hpp"
#include "qzeta/parallel.hpp"
#include "qzeta/series.hpp"

using namespace qzeta;

namespace {

int g_failures = 0;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

void report(int number, const std::string& name, bool passed,
            const std::string& detail, double seconds) {
    std::printf("%s criterion %2d: %-34s %s(%.1fs)\n", passed ? "PASS" : "FAIL",
                number, name.c_str(), detail.empty() ? "" : (detail + " ").c_str(),
                seconds);
    if (!passed) ++g_failures;
}

template <typename Fn>
void run(int number, const std::string& name, Fn&& fn) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool passed = false;
    try {
        passed = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(number, name, passed, detail, seconds);
}

EvalConfig eval_cfg(double epsilon, std::int64_t max_terms) {
    return EvalConfig{epsilon, max_terms, EvalMode::certified};
}

const int kThreads = 4;

// 1. One-run q-duality, raw agreement below 1e-8 on {0.1..0.9}.
bool criterion_q_duality(std::string& detail) {
    const EvalConfig cfg = eval_cfg(1e-10, 4'000'000);
    double worst = 0.0;
    for (int n = 0; n <= 6; ++n) {
        for (int m = 0; n + m <= 6; ++m) {
            for (int i = 1; i <= 9; ++i) {
                QParam q(i / 10.0);
                double a = eval_qmzv(one_padded_index(2 + n, m), q, cfg).value;
                double b = eval_qmzv(one_padded_index(2 + m, n), q, cfg).value;
                worst = std::max(worst, std::abs(a - b));
            }
        }
    }
    detail = "worst |diff| = " + num(worst);
    return worst < 1e-8;
}

// 2. Classical duality, exhaustive to weight 7, within certified margins + 1e-8.
bool criterion_mzv_duality(std::string& detail) {
    DualityParams params;
    params.max_weight = 7;
    CheckConfig cfg{eval_cfg(1e-10, 2'000'000), 1e-8, kThreads};
    CheckReport r = verify_duality(DualityKind::mzv, params, QGrid::make(9, 0), cfg);
    detail = std::to_string(r.instances.size()) +
             " indices, worst margin = " + num(r.worst_margin);
    return r.all_passed;
}

// 3. Double-tail duality to weight 5, p,n <= 3, plus two derived anchors.
bool criterion_double_tail_duality(std::string& detail) {
    DualityParams params;
    params.max_weight = 5;
    params.pn_max = 3;
    CheckConfig cfg{eval_cfg(1e-10, 2'000'000), 1e-8, kThreads};
    CheckReport r =
        verify_duality(DualityKind::double_tail, params, QGrid::make(9, 0), cfg);

    const EvalConfig deep = eval_cfg(1e-10, 40'000'000);
    double anchor1 = eval_double_tail(MultiIndex{2}, 1, 0, deep).value;
    double anchor2 = eval_double_tail(MultiIndex{2, 1}, 0, 1, deep).value;
    const bool anchors_ok = std::abs(anchor1 - 0.644934) < 1e-6 &&
                            std::abs(anchor2 - 0.557123) < 1e-6;
    detail = std::to_string(r.instances.size()) + " pairs; anchors " + num(anchor1) +
             ", " + num(anchor2);
    return r.all_passed && anchors_ok;
}

// 4. Tail envelopes with certified positive margin, plus the spot anchor.
bool criterion_tail_sandwich(std::string& detail) {
    CheckConfig cfg{eval_cfg(1e-10, 4'000'000), 1e-8, kThreads};
    const QGrid grid = QGrid::make(9, 0);
    double worst = 1e300;
    std::size_t count = 0;
    for (const auto& k : admissible_indices_up_to_weight(5)) {
        CheckReport r = verify_tail_sandwich(k, 5, grid, cfg);
        if (!r.all_passed) {
            detail = "failed for k=(" + k.to_string() + ")";
            return false;
        }
        worst = std::min(worst, r.worst_margin);
        count += r.instances.size();
    }
    auto [lower, upper] = omega_bounds(MultiIndex{2}, 1, QParam(0.5));
    double tail = eval_qmzv_tail(MultiIndex{2}, 1, QParam(0.5), cfg.eval).value;
    const bool anchors_ok = std::abs(lower - 0.120225) < 1e-4 &&
                            std::abs(tail - 0.18601) < 1e-4 &&
                            std::abs(upper - 0.360674) < 1e-4 && lower < tail &&
                            tail < upper;
    detail = std::to_string(count) + " instances, worst margin = " + num(worst);
    return anchors_ok && worst > 0.0;
}

// 5. Height-one sup norms: grid max below the closed form, within 1% at 0.999,
//    grid values strictly increasing in q.
bool criterion_height_one_norms(std::string& detail) {
    const QGrid grid = QGrid::default_grid();
    const auto& qs = grid.points();
    std::size_t idx999 = 0;
    for (std::size_t i = 0; i < qs.size(); ++i)
        if (std::abs(qs[i] - 0.999) < 1e-12) idx999 = i;

    const EvalConfig grid_cfg = eval_cfg(1e-10, 4'000'000);
    const EvalConfig closed_cfg = eval_cfg(1e-9, 40'000'000);
    double worst_rel = 0.0;
    for (int n = 0; n <= 4; ++n) {
        for (int m = 0; n + m <= 4; ++m) {
            const MultiIndex k = one_padded_index(2 + n, m);
            NormEstimate est = sup_norm_estimate(FunctionSpec::qmzv(k), grid,
                                                 closed_cfg, kThreads);
            std::vector<double> values(qs.size());
            parallel_for_index(qs.size(), kThreads, [&](std::size_t i) {
                values[i] = eval_qmzv(k, QParam(qs[i]), grid_cfg).value;
            });
            for (std::size_t i = 1; i < values.size(); ++i) {
                if (!(values[i] > values[i - 1])) {
                    detail = "not increasing at k=(" + k.to_string() + ")";
                    return false;
                }
            }
            if (!est.closed_form) {
                detail = "missing closed form for k=(" + k.to_string() + ")";
                return false;
            }
            const double closed = *est.closed_form;
            if (!(est.grid_max <= closed + 1e-6)) {
                detail = "grid max exceeds closed form at k=(" + k.to_string() + ")";
                return false;
            }
            const double rel = std::abs(values[idx999] - closed) / closed;
            worst_rel = std::max(worst_rel, rel);
            if (rel >= 0.01) {
                detail = "k=(" + k.to_string() + ") off by " + num(rel) + " at q=0.999";
                return false;
            }
        }
    }
    detail = "worst relative gap at 0.999 = " + num(worst_rel);
    return true;
}

// 6. Maximum element over weight <= 6 on the full grid; classical-slot series
//    stay strictly below it for r <= 3.
bool criterion_maximum_element(std::string& detail) {
    OrderParams params;
    params.max_weight = 6;
    params.r_max = 3;
    CheckConfig cfg{eval_cfg(1e-10, 4'000'000), 1e-8, kThreads};
    const QGrid grid = QGrid::default_grid();
    CheckReport max_r =
        verify_order_relations(OrderRelation::maximum_element, params, grid, cfg);
    std::size_t equality = 0;
    for (const auto& inst : max_r.instances) {
        const bool tagged = inst.parameters.find("maximum element") != std::string::npos;
        if (tagged) ++equality;
        if (tagged != (inst.margin == 0.0)) {
            detail = "equality misclassified: " + inst.parameters;
            return false;
        }
    }
    if (equality != grid.points().size()) {
        detail = "expected one equality instance per grid point";
        return false;
    }
    CheckReport upper =
        verify_order_relations(OrderRelation::r_ext_upper_bound, params, grid, cfg);
    detail = std::to_string(max_r.instances.size()) + " + " +
             std::to_string(upper.instances.size()) + " instances";
    return max_r.all_passed && upper.all_passed;
}

// 7. Slot-growth family at k=(2,1) converges to the floor-1 tail.
bool criterion_convergence_to_tail(std::string& detail) {
    SequenceFamily family{SequenceFamily::Kind::t1, MultiIndex{2, 1}, 1, {}, {}};
    ExperimentConfig cfg;
    cfg.eval = eval_cfg(1e-10, 4'000'000);
    cfg.threads = kThreads;
    ConvergenceReport r =
        convergence_experiment(family, 1, 10, QGrid::default_grid(), cfg);
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        if (r.records[i].distance_to_candidate >
            r.records[i].analytic_bound + 1e-9) {
            detail = "distance exceeds bound at n=" + std::to_string(i + 1);
            return false;
        }
        if (i > 0 && r.records[i].distance_to_candidate >
                         r.records[i - 1].distance_to_candidate + 1e-12) {
            detail = "distance increased at n=" + std::to_string(i + 1);
            return false;
        }
    }
    const double final_distance = r.records.back().distance_to_candidate;
    detail = "final distance = " + num(final_distance);
    return final_distance < 1e-3 &&
           r.verdict == ConvergenceVerdict::converges_to_tail;
}

// 8. Vanishing family: grid sup below the classical bound and below 1e-3 at n=10.
bool criterion_vanishing_family(std::string& detail) {
    SequenceFamily family{SequenceFamily::Kind::vanishing, std::nullopt, 1, {}, {}};
    ExperimentConfig cfg;
    cfg.eval = eval_cfg(1e-10, 4'000'000);
    cfg.threads = kThreads;
    ConvergenceReport r =
        convergence_experiment(family, 1, 10, QGrid::default_grid(), cfg);
    for (const auto& rec : r.records) {
        if (rec.distance_to_candidate > rec.analytic_bound + 1e-6) {
            detail = "sup exceeds bound at n=" + std::to_string(rec.n);
            return false;
        }
    }
    const double final_sup = r.records.back().distance_to_candidate;
    detail = "final grid sup = " + num(final_sup);
    return final_sup < 1e-3 && r.verdict == ConvergenceVerdict::converges_to_zero;
}

// 9. Fixed classical slot: pointwise collapse at q=0.5 against norms >= 0.9.
bool criterion_divergence_witness(std::string& detail) {
    SequenceFamily family{SequenceFamily::Kind::t2, std::nullopt, 1, {}, {}};
    ExperimentConfig cfg;
    cfg.eval = eval_cfg(1e-10, 4'000'000);
    cfg.threads = kThreads;
    cfg.norm_floor = 0.9;
    ConvergenceReport r = divergence_witness(family, 1, 8, QGrid::default_grid(), cfg);
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const auto& rec = r.records[i];
        if (rec.norm_lower_evidence < 0.9) {
            detail = "grid max fell below 0.9 at n=" + std::to_string(rec.n);
            return false;
        }
        if (rec.n >= 6 && rec.pointwise_value_at_probe_q >= 1e-2) {
            detail = "probe value too large at n=" + std::to_string(rec.n);
            return false;
        }
        if (i > 0 && rec.pointwise_value_at_probe_q >=
                         r.records[i - 1].pointwise_value_at_probe_q) {
            detail = "probe value not decreasing at n=" + std::to_string(rec.n);
            return false;
        }
    }
    double min_grid_max = r.records.front().norm_lower_evidence;
    for (const auto& rec : r.records)
        min_grid_max = std::min(min_grid_max, rec.norm_lower_evidence);
    detail = "final probe = " + num(r.records.back().pointwise_value_at_probe_q) +
             ", min grid max = " + num(min_grid_max);
    return r.verdict == ConvergenceVerdict::norm_bounded_below;
}

// 10. Cumulative-sum evaluator vs naive nested loops, 1e-12 relative.
bool criterion_oracle_equivalence(std::string& detail) {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> depth_dist(1, 3);
    std::uniform_int_distribution<int> part_dist(1, 4);
    std::uniform_int_distribution<int> cutoff_dist(20, 60);
    std::uniform_real_distribution<double> q_dist(0.05, 0.95);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int d = depth_dist(rng);
        std::vector<int> parts(static_cast<std::size_t>(d));
        for (int& p : parts) p = part_dist(rng);
        parts[0] = std::max(parts[0], 2);
        const MultiIndex k(parts);
        const double q = q_dist(rng);
        const int cutoff = cutoff_dist(rng);
        const EvalConfig cfg{1e-10, cutoff, EvalMode::empirical};

        const double dp = eval_qmzv(k, QParam(q), cfg).value;
        const double naive = oracles::naive_q_series(parts, 0, 0, q, cutoff);
        worst = std::max(worst, std::abs(dp - naive) / std::max(1e-300, naive));

        const double dp_t = eval_qmzv_tail(k, 1, QParam(q), cfg).value;
        const double nv_t = oracles::naive_q_series(parts, 0, 1, q, cutoff);
        worst = std::max(worst, std::abs(dp_t - nv_t) / std::max(1e-300, nv_t));
    }
    detail = "worst relative deviation = " + num(worst);
    return worst <= 1e-12;
}

// 11. Certificates stay sound when the cutoff is refined fourfold.
bool criterion_certificate_soundness(std::string& detail) {
    std::mt19937 rng(1789);
    std::uniform_int_distribution<int> depth_dist(1, 4);
    std::uniform_int_distribution<int> part_dist(1, 4);
    std::uniform_int_distribution<int> kind_dist(0, 3);
    std::uniform_int_distribution<int> floor_dist(0, 4);
    std::uniform_real_distribution<double> q_dist(0.1, 0.9);
    int certified_count = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = depth_dist(rng);
        std::vector<int> parts(static_cast<std::size_t>(d));
        for (int& p : parts) p = part_dist(rng);
        parts[0] = std::max(parts[0], 2);
        const MultiIndex k(parts);
        const int kind = kind_dist(rng);

        SeriesResult base, refined;
        if (kind <= 1) {
            const double q = q_dist(rng);
            const int floor_n = (kind == 0) ? 0 : floor_dist(rng);
            EvalConfig cfg{1e-8, 40'000, EvalMode::certified};
            base = eval_qmzv_tail(k, floor_n, QParam(q), cfg);
            cfg.max_terms *= 4;
            refined = eval_qmzv_tail(k, floor_n, QParam(q), cfg);
        } else if (kind == 2) {
            const double q = q_dist(rng);
            const int r_slot = 1 + floor_dist(rng);
            EvalConfig cfg{1e-8, 40'000, EvalMode::certified};
            base = eval_qmzv_r(k, r_slot, QParam(q), cfg);
            cfg.max_terms *= 4;
            refined = eval_qmzv_r(k, r_slot, QParam(q), cfg);
        } else {
            EvalConfig cfg{1e-3, 2'000'000, EvalMode::certified};
            const int p = floor_dist(rng) % 3;
            const int n = floor_dist(rng);
            base = eval_double_tail(k, p, n, cfg);
            cfg.max_terms *= 4;
            refined = eval_double_tail(k, p, n, cfg);
        }
        if (base.certified) ++certified_count;
        if (refined.value < base.value ||
            refined.value > base.value + base.remainder_bound) {
            detail = "bracket violated on trial " + std::to_string(trial);
            return false;
        }
    }
    detail = std::to_string(certified_count) + "/100 certified, all brackets held";
    return certified_count == 100;
}

}  // namespace

int main() {
    run(1, "one-run q-duality", criterion_q_duality);
    run(2, "classical duality (weight <= 7)", criterion_mzv_duality);
    run(3, "double-tail duality + anchors", criterion_double_tail_duality);
    run(4, "tail envelope sandwich", criterion_tail_sandwich);
    run(5, "height-one sup norms", criterion_height_one_norms);
    run(6, "maximum element / upper bound", criterion_maximum_element);
    run(7, "convergence to floor-1 tails", criterion_convergence_to_tail);
    run(8, "vanishing family", criterion_vanishing_family);
    run(9, "divergence witness", criterion_divergence_witness);
    run(10, "oracle equivalence", criterion_oracle_equivalence);
    run(11, "certificate soundness", criterion_certificate_soundness);
    if (g_failures == 0) std::printf("acceptance: all 11 criteria passed\n");
    else std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
