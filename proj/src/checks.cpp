#include "qzeta/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "qzeta/format.hpp"
#include "qzeta/parallel.hpp"

namespace qzeta {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string q_str(double q) { return "q=" + format_double(q); }

CheckInstance strict_less(std::string parameters, const SeriesResult& lo,
                          const SeriesResult& hi) {
    CheckInstance inst;
    inst.parameters = std::move(parameters);
    inst.lhs = lo.value;
    inst.rhs = hi.value;
    inst.margin = (hi.value - lo.value) - (lo.remainder_bound + hi.remainder_bound);
    inst.passed = inst.margin > 0.0;
    return inst;
}

CheckInstance equal_within(std::string parameters, const SeriesResult& a,
                           const SeriesResult& b, double tolerance) {
    CheckInstance inst;
    inst.parameters = std::move(parameters);
    inst.lhs = a.value;
    inst.rhs = b.value;
    inst.margin = tolerance + a.remainder_bound + b.remainder_bound -
                  std::abs(a.value - b.value);
    inst.passed = inst.margin > 0.0;
    return inst;
}

// Strict comparisons need precision relative to the operands: at small q the
// values collapse geometrically and an absolute epsilon cannot separate them.
// Evaluate the dominant side first, refine the target to a fraction of it,
// then compare. Refinement is skipped when the cutoff cap was already binding.
template <typename LhsFn, typename RhsFn>
CheckInstance strict_pair(std::string parameters, const LhsFn& lhs_eval,
                          const RhsFn& rhs_eval, const EvalConfig& eval) {
    SeriesResult rhs = rhs_eval(eval);
    EvalConfig refined = eval;
    refined.epsilon = std::max(std::min(eval.epsilon, rhs.value * 1e-8), 5e-300);
    if (rhs.remainder_bound > refined.epsilon && rhs.terms_used < eval.max_terms)
        rhs = rhs_eval(refined);
    SeriesResult lhs = lhs_eval(refined);
    return strict_less(std::move(parameters), lhs, rhs);
}

CheckInstance failed_instance(std::string parameters, const std::string& diagnostic) {
    CheckInstance inst;
    inst.parameters = std::move(parameters) + " [error: " + diagnostic + "]";
    inst.lhs = kNan;
    inst.rhs = kNan;
    inst.margin = kNan;
    inst.passed = false;
    return inst;
}

CheckReport finalize(std::string check_id, std::vector<CheckInstance> instances) {
    CheckReport report;
    report.check_id = std::move(check_id);
    report.instances = std::move(instances);
    report.all_passed = true;
    report.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& inst : report.instances) {
        if (!inst.passed) report.all_passed = false;
        if (!std::isnan(inst.margin))
            report.worst_margin = std::min(report.worst_margin, inst.margin);
    }
    if (report.instances.empty() || !std::isfinite(report.worst_margin))
        report.worst_margin = 0.0;
    return report;
}

// Evaluates one closure per instance slot, concurrently, catching per-instance
// evaluation failures so a sweep never aborts.
CheckReport run_instances(std::string check_id,
                          std::vector<std::function<CheckInstance()>> jobs,
                          int threads) {
    std::vector<CheckInstance> instances(jobs.size());
    parallel_for_index(jobs.size(), threads, [&](std::size_t i) {
        try {
            instances[i] = jobs[i]();
        } catch (const std::exception& e) {
            instances[i] = failed_instance("instance " + std::to_string(i), e.what());
        }
    });
    return finalize(std::move(check_id), std::move(instances));
}

MultiIndex bump_slot(const MultiIndex& k, int j) {
    auto parts = k.parts();
    parts[static_cast<std::size_t>(j - 1)] += 1;
    return MultiIndex(std::move(parts));
}

MultiIndex append_one(const MultiIndex& k) {
    auto parts = k.parts();
    parts.push_back(1);
    return MultiIndex(std::move(parts));
}

std::vector<MultiIndex> default_slot_battery() {
    return {MultiIndex{2}, MultiIndex{2, 1}, MultiIndex{3, 1}, MultiIndex{2, 2}};
}

}  // namespace

std::string to_json(const CheckReport& r) {
    std::string out = "{\"check_id\":\"" + json_escape(r.check_id) + "\"";
    out += ",\"all_passed\":";
    out += r.all_passed ? "true" : "false";
    out += ",\"worst_margin\":" + json_number(r.worst_margin);
    out += ",\"instances\":[";
    for (std::size_t i = 0; i < r.instances.size(); ++i) {
        const auto& inst = r.instances[i];
        if (i > 0) out += ',';
        out += "{\"parameters\":\"" + json_escape(inst.parameters) + "\"";
        out += ",\"lhs\":" + json_number(inst.lhs);
        out += ",\"rhs\":" + json_number(inst.rhs);
        out += ",\"margin\":" + json_number(inst.margin);
        out += ",\"passed\":";
        out += inst.passed ? "true" : "false";
        out += "}";
    }
    out += "]}";
    return out;
}

std::pair<double, double> omega_bounds(const MultiIndex& k, int n, QParam q) {
    if (!k.admissible())
        throw std::domain_error("omega_bounds: index (" + k.to_string() +
                                ") is not admissible");
    if (n < 1) throw std::domain_error("omega_bounds: n must be >= 1");
    const double qv = q.value();
    const int d = k.depth();
    const int w = k.weight();
    const double prefactor = std::pow((qv - 1.0) / std::log(qv), d);
    double slope_product = 1.0;
    int cumulative = 0;
    for (int i = 1; i <= d; ++i) {
        cumulative += k.parts()[static_cast<std::size_t>(i - 1)];
        slope_product /= static_cast<double>(cumulative - i);
    }
    auto power_term = [&](int floor_m) {
        return std::pow(std::pow(qv, floor_m) / q_integer(floor_m, q), w - d);
    };
    const double lower = prefactor * power_term(n + d) * slope_product;
    const double upper = prefactor * power_term(n) * slope_product;
    return {lower, upper};
}

CheckReport verify_tail_sandwich(const MultiIndex& k, int n_max, const QGrid& grid,
                                 const CheckConfig& cfg) {
    if (!k.admissible())
        throw std::domain_error("verify_tail_sandwich: index (" + k.to_string() +
                                ") is not admissible");
    if (n_max < 1) throw std::domain_error("verify_tail_sandwich: n_max must be >= 1");
    std::vector<std::function<CheckInstance()>> jobs;
    for (int n = 1; n <= n_max; ++n) {
        for (double qv : grid.points()) {
            jobs.push_back([k, n, qv, &cfg]() {
                QParam q(qv);
                auto [lower, upper] = omega_bounds(k, n, q);
                // The tail shrinks geometrically in n and q; an absolute
                // epsilon cannot resolve strictness once the envelope drops
                // below it. The lower envelope is a valid scale proxy.
                EvalConfig eval = cfg.eval;
                eval.epsilon = std::max(std::min(eval.epsilon, lower * 1e-3), 5e-300);
                SeriesResult tail = eval_qmzv_tail(k, n, q, eval);
                CheckInstance inst;
                inst.parameters = "k=(" + k.to_string() + ") n=" + std::to_string(n) +
                                  " " + q_str(qv);
                inst.lhs = lower;
                inst.rhs = upper;
                const double below = tail.value - tail.remainder_bound - lower;
                const double above = upper - (tail.value + tail.remainder_bound);
                inst.margin = std::min(below, above);
                inst.passed = inst.margin > 0.0;
                return inst;
            });
        }
    }
    return run_instances("tail_sandwich", std::move(jobs), cfg.threads);
}

namespace {

CheckReport duality_height_one(const DualityParams& params, const QGrid& grid,
                               const CheckConfig& cfg) {
    std::vector<std::function<CheckInstance()>> jobs;
    for (int n = 0; n <= params.height_one_sum; ++n) {
        for (int m = 0; n + m <= params.height_one_sum; ++m) {
            for (double qv : grid.points()) {
                jobs.push_back([n, m, qv, &cfg]() {
                    QParam q(qv);
                    MultiIndex a = one_padded_index(2 + n, m);
                    MultiIndex b = one_padded_index(2 + m, n);
                    SeriesResult ra = eval_qmzv(a, q, cfg.eval);
                    SeriesResult rb = eval_qmzv(b, q, cfg.eval);
                    return equal_within("n=" + std::to_string(n) +
                                            " m=" + std::to_string(m) + " " + q_str(qv),
                                        ra, rb, cfg.tolerance);
                });
            }
        }
    }
    return run_instances("duality_q_height_one", std::move(jobs), cfg.threads);
}

CheckReport duality_mzv(const DualityParams& params, const CheckConfig& cfg) {
    const auto indices = admissible_indices_up_to_weight(params.max_weight);
    std::vector<SeriesResult> values(indices.size());
    parallel_for_index(indices.size(), cfg.threads, [&](std::size_t i) {
        values[i] = eval_mzv(indices[i], cfg.eval);
    });
    std::map<MultiIndex, const SeriesResult*> memo;
    for (std::size_t i = 0; i < indices.size(); ++i) memo[indices[i]] = &values[i];

    std::vector<CheckInstance> instances;
    instances.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const MultiIndex dual_index = dual(indices[i]);
        instances.push_back(equal_within(
            "k=(" + indices[i].to_string() + ") dual=(" + dual_index.to_string() + ")",
            values[i], *memo.at(dual_index), cfg.tolerance));
    }
    return finalize("duality_mzv", std::move(instances));
}

CheckReport duality_double_tail(const DualityParams& params, const CheckConfig& cfg) {
    const auto indices = admissible_indices_up_to_weight(params.max_weight);
    struct Key {
        MultiIndex k;
        int p;
        int n;
        auto operator<=>(const Key&) const = default;
    };
    std::vector<Key> keys;
    for (const auto& k : indices)
        for (int p = 0; p <= params.pn_max; ++p)
            for (int n = 0; n <= params.pn_max; ++n) keys.push_back({k, p, n});
    std::vector<SeriesResult> values(keys.size());
    parallel_for_index(keys.size(), cfg.threads, [&](std::size_t i) {
        values[i] = eval_double_tail(keys[i].k, keys[i].p, keys[i].n, cfg.eval);
    });
    std::map<Key, const SeriesResult*> memo;
    for (std::size_t i = 0; i < keys.size(); ++i) memo[keys[i]] = &values[i];

    std::vector<CheckInstance> instances;
    instances.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto& [k, p, n] = keys[i];
        const MultiIndex dual_index = dual(k);
        instances.push_back(
            equal_within("k=(" + k.to_string() + ") p=" + std::to_string(p) +
                             " n=" + std::to_string(n),
                         values[i], *memo.at(Key{dual_index, n, p}), cfg.tolerance));
    }
    return finalize("duality_double_tail", std::move(instances));
}

}  // namespace

CheckReport verify_duality(DualityKind kind, const DualityParams& params,
                           const QGrid& grid, const CheckConfig& cfg) {
    switch (kind) {
        case DualityKind::q_height_one: return duality_height_one(params, grid, cfg);
        case DualityKind::mzv: return duality_mzv(params, cfg);
        case DualityKind::double_tail: return duality_double_tail(params, cfg);
    }
    throw std::logic_error("verify_duality: unknown kind");
}

namespace {

std::vector<int> bump_positions(const MultiIndex& k, int requested) {
    if (requested == 0) {
        std::vector<int> all(static_cast<std::size_t>(k.depth()));
        for (int j = 1; j <= k.depth(); ++j) all[static_cast<std::size_t>(j - 1)] = j;
        return all;
    }
    if (requested > k.depth())
        throw std::domain_error("bump position " + std::to_string(requested) +
                                " exceeds depth of (" + k.to_string() + ")");
    return {requested};
}

CheckReport order_single_term_bound(const OrderParams& params, const QGrid& grid,
                                    const CheckConfig& cfg) {
    if (params.m_max < 1)
        throw std::domain_error("single_term_bound: m_max must be >= 1");
    std::vector<std::function<CheckInstance()>> jobs;
    for (int m = 1; m <= params.m_max; ++m) {
        for (double qv : grid.points()) {
            jobs.push_back([m, qv]() {
                QParam q(qv);
                const double t = std::pow(qv, m) / q_integer(m, q);
                CheckInstance inst;
                inst.parameters = "m=" + std::to_string(m) + " " + q_str(qv);
                inst.lhs = t;
                inst.rhs = 1.0 / m;
                inst.margin = std::min(t, inst.rhs - t);
                inst.passed = inst.margin > 0.0;
                return inst;
            });
        }
    }
    return run_instances("order_single_term_bound", std::move(jobs), cfg.threads);
}

CheckReport order_slot_comparisons(const OrderParams& params, const QGrid& grid,
                                   const CheckConfig& cfg) {
    auto battery = params.indices.empty() ? default_slot_battery() : params.indices;
    std::vector<std::function<CheckInstance()>> jobs;
    for (const auto& k : battery) {
        if (!k.admissible())
            throw std::domain_error("slot_comparisons: index (" + k.to_string() +
                                    ") is not admissible");
        const std::string ks = "k=(" + k.to_string() + ")";
        for (int j : bump_positions(k, params.bump_position)) {
            const MultiIndex bumped = bump_slot(k, j);
            const std::string js = ks + " j=" + std::to_string(j);
            for (double qv : grid.points()) {
                jobs.push_back([k, bumped, js, qv, &cfg]() {
                    QParam q(qv);
                    return strict_pair(
                        js + " " + q_str(qv) + " [plain]",
                        [&](const EvalConfig& e) { return eval_qmzv(bumped, q, e); },
                        [&](const EvalConfig& e) { return eval_qmzv(k, q, e); },
                        cfg.eval);
                });
                for (int n = 1; n <= params.n_max; ++n) {
                    jobs.push_back([k, bumped, js, n, qv, &cfg]() {
                        QParam q(qv);
                        return strict_pair(
                            js + " n=" + std::to_string(n) + " " + q_str(qv) + " [tail]",
                            [&](const EvalConfig& e) {
                                return eval_qmzv_tail(bumped, n, q, e);
                            },
                            [&](const EvalConfig& e) {
                                return eval_qmzv_tail(k, n, q, e);
                            },
                            cfg.eval);
                    });
                }
                for (int r = 1; r <= params.r_max; ++r) {
                    jobs.push_back([k, bumped, js, r, qv, &cfg]() {
                        QParam q(qv);
                        return strict_pair(
                            js + " r=" + std::to_string(r) + " " + q_str(qv) + " [rext]",
                            [&](const EvalConfig& e) {
                                return eval_qmzv_r(bumped, r, q, e);
                            },
                            [&](const EvalConfig& e) { return eval_qmzv_r(k, r, q, e); },
                            cfg.eval);
                    });
                }
            }
        }
        for (double qv : grid.points()) {
            for (int r = 1; r <= params.r_max; ++r) {
                jobs.push_back([k, ks, r, qv, &cfg]() {
                    QParam q(qv);
                    return strict_pair(
                        ks + " r=" + std::to_string(r) + " " + q_str(qv) +
                            " [slot grows]",
                        [&](const EvalConfig& e) { return eval_qmzv_r(k, r + 1, q, e); },
                        [&](const EvalConfig& e) { return eval_qmzv_r(k, r, q, e); },
                        cfg.eval);
                });
                jobs.push_back([k, ks, r, qv, &cfg]() {
                    QParam q(qv);
                    return strict_pair(
                        ks + " r=" + std::to_string(r) + " " + q_str(qv) +
                            " [slot vs trailing 1]",
                        [&](const EvalConfig& e) { return eval_qmzv_r(k, r, q, e); },
                        [&](const EvalConfig& e) {
                            return eval_qmzv(append_one(k), q, e);
                        },
                        cfg.eval);
                });
            }
        }
    }
    return run_instances("order_slot_comparisons", std::move(jobs), cfg.threads);
}

CheckReport order_depth_comparison(const OrderParams& params, const QGrid& grid,
                                   const CheckConfig& cfg) {
    std::vector<std::function<CheckInstance()>> jobs;
    for (int d = 0; d <= params.d_max; ++d) {
        for (double qv : grid.points()) {
            jobs.push_back([d, qv, &cfg]() {
                QParam q(qv);
                return strict_pair(
                    "d=" + std::to_string(d) + " " + q_str(qv),
                    [&](const EvalConfig& e) {
                        return eval_qmzv(one_padded_index(2, d + 1), q, e);
                    },
                    [&](const EvalConfig& e) {
                        return eval_qmzv(one_padded_index(2, d), q, e);
                    },
                    cfg.eval);
            });
        }
    }
    return run_instances("order_depth_comparison", std::move(jobs), cfg.threads);
}

CheckReport order_double_tail_comparisons(const OrderParams& params,
                                          const CheckConfig& cfg) {
    auto battery = params.indices.empty() ? default_slot_battery() : params.indices;
    std::vector<std::function<CheckInstance()>> jobs;
    for (const auto& k : battery) {
        if (!k.admissible())
            throw std::domain_error("double_tail_comparisons: index (" + k.to_string() +
                                    ") is not admissible");
        for (int j : bump_positions(k, params.bump_position)) {
            const MultiIndex bumped = bump_slot(k, j);
            jobs.push_back([k, bumped, j, &cfg]() {
                return strict_pair(
                    "k=(" + k.to_string() + ") j=" + std::to_string(j) + " [slot]",
                    [&](const EvalConfig& e) { return eval_double_tail(bumped, 0, 1, e); },
                    [&](const EvalConfig& e) { return eval_double_tail(k, 0, 1, e); },
                    cfg.eval);
            });
        }
    }
    for (int d = 1; d <= params.d_max; ++d) {
        jobs.push_back([d, &cfg]() {
            return strict_pair(
                "d=" + std::to_string(d) + " [depth]",
                [&](const EvalConfig& e) {
                    return eval_double_tail(one_padded_index(2, d), 0, 1, e);
                },
                [&](const EvalConfig& e) {
                    return eval_double_tail(one_padded_index(2, d - 1), 0, 1, e);
                },
                cfg.eval);
        });
    }
    return run_instances("order_double_tail_comparisons", std::move(jobs), cfg.threads);
}

CheckReport order_maximum_element(const OrderParams& params, const QGrid& grid,
                                  const CheckConfig& cfg) {
    const auto indices = admissible_indices_up_to_weight(params.max_weight);
    const auto& qs = grid.points();
    std::vector<SeriesResult> reference(qs.size());
    parallel_for_index(qs.size(), cfg.threads, [&](std::size_t i) {
        reference[i] = eval_qmzv(MultiIndex{2}, QParam(qs[i]), cfg.eval);
    });

    const MultiIndex top{2};
    std::vector<std::function<CheckInstance()>> jobs;
    for (const auto& k : indices) {
        for (std::size_t qi = 0; qi < qs.size(); ++qi) {
            jobs.push_back([k, top, qi, &qs, &reference, &cfg]() {
                const double qv = qs[qi];
                if (k == top) {
                    CheckInstance inst;
                    inst.parameters =
                        "k=(2) " + q_str(qv) + " (maximum element, equality)";
                    inst.lhs = reference[qi].value;
                    inst.rhs = reference[qi].value;
                    inst.margin = 0.0;
                    inst.passed = true;
                    return inst;
                }
                EvalConfig refined = cfg.eval;
                refined.epsilon = std::max(
                    std::min(refined.epsilon, reference[qi].value * 1e-8), 5e-300);
                SeriesResult lhs = eval_qmzv(k, QParam(qv), refined);
                return strict_less("k=(" + k.to_string() + ") " + q_str(qv), lhs,
                                   reference[qi]);
            });
        }
    }
    return run_instances("order_maximum_element", std::move(jobs), cfg.threads);
}

CheckReport order_r_ext_upper_bound(const OrderParams& params, const QGrid& grid,
                                    const CheckConfig& cfg) {
    const auto indices = admissible_indices_up_to_weight(params.max_weight);
    const auto& qs = grid.points();
    std::vector<SeriesResult> reference(qs.size());
    parallel_for_index(qs.size(), cfg.threads, [&](std::size_t i) {
        reference[i] = eval_qmzv(MultiIndex{2}, QParam(qs[i]), cfg.eval);
    });

    std::vector<std::function<CheckInstance()>> jobs;
    for (const auto& k : indices) {
        for (int r = 1; r <= params.r_max; ++r) {
            for (std::size_t qi = 0; qi < qs.size(); ++qi) {
                jobs.push_back([k, r, qi, &qs, &reference, &cfg]() {
                    EvalConfig refined = cfg.eval;
                    refined.epsilon = std::max(
                        std::min(refined.epsilon, reference[qi].value * 1e-8), 5e-300);
                    SeriesResult lhs = eval_qmzv_r(k, r, QParam(qs[qi]), refined);
                    return strict_less("k=(" + k.to_string() + ") r=" +
                                           std::to_string(r) + " " + q_str(qs[qi]),
                                       lhs, reference[qi]);
                });
            }
        }
    }
    return run_instances("order_r_ext_upper_bound", std::move(jobs), cfg.threads);
}

}  // namespace

CheckReport verify_order_relations(OrderRelation relation, const OrderParams& params,
                                   const QGrid& grid, const CheckConfig& cfg) {
    switch (relation) {
        case OrderRelation::single_term_bound:
            return order_single_term_bound(params, grid, cfg);
        case OrderRelation::slot_comparisons:
            return order_slot_comparisons(params, grid, cfg);
        case OrderRelation::depth_comparison:
            return order_depth_comparison(params, grid, cfg);
        case OrderRelation::double_tail_comparisons:
            return order_double_tail_comparisons(params, cfg);
        case OrderRelation::maximum_element:
            return order_maximum_element(params, grid, cfg);
        case OrderRelation::r_ext_upper_bound:
            return order_r_ext_upper_bound(params, grid, cfg);
    }
    throw std::logic_error("verify_order_relations: unknown relation");
}

CheckReport verify_monotonicity(MonotonicityTarget target,
                                const MonotonicityParams& params,
                                std::vector<double> sample_points) {
    if (sample_points.empty()) {
        for (int i = 1; i <= 17; ++i) sample_points.push_back(i / 18.0);
    }
    for (std::size_t i = 0; i < sample_points.size(); ++i) {
        QParam validate(sample_points[i]);  // rejects points outside (0,1)
        if (i > 0 && sample_points[i] <= sample_points[i - 1])
            throw std::domain_error("sample points must be strictly increasing");
    }

    std::vector<CheckInstance> instances;
    auto monotone_pairs = [&](const std::string& label, auto&& f,
                              const std::vector<double>& xs, bool increasing) {
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const double fa = f(xs[i]);
            const double fb = f(xs[i + 1]);
            CheckInstance inst;
            inst.parameters = label + " x=" + format_double(xs[i]) + "->" +
                              format_double(xs[i + 1]);
            inst.lhs = fa;
            inst.rhs = fb;
            inst.margin = increasing ? fb - fa : fa - fb;
            inst.passed = inst.margin > 0.0;
            instances.push_back(std::move(inst));
        }
    };

    switch (target) {
        case MonotonicityTarget::single_term_q: {
            if (params.m < 1)
                throw std::domain_error("single_term_q: m must be >= 1");
            const int m = params.m;
            monotone_pairs(
                "q^m/[m:q] m=" + std::to_string(m),
                [m](double q) { return std::pow(q, m) / q_integer(m, QParam(q)); },
                sample_points, /*increasing=*/true);
            return finalize("monotone_single_term_q", std::move(instances));
        }
        case MonotonicityTarget::x_ratio: {
            QParam q(params.q);
            if (params.x_max < 2)
                throw std::domain_error("x_ratio: x_max must be >= 2");
            std::vector<double> xs;
            for (int x = 1; x <= params.x_max; ++x) xs.push_back(x);
            const double qv = q.value();
            monotone_pairs(
                "x q^{x-1}/(1-q^x) q=" + format_double(qv),
                [qv](double x) {
                    return x * std::pow(qv, x - 1.0) / (1.0 - std::pow(qv, x));
                },
                xs, /*increasing=*/false);
            return finalize("monotone_x_ratio", std::move(instances));
        }
        case MonotonicityTarget::qmzv_term: {
            const auto& ms = params.ms;
            if (ms.empty()) throw std::domain_error("qmzv_term: ms must be nonempty");
            for (std::size_t i = 0; i < ms.size(); ++i) {
                if (ms[i] < 1) throw std::domain_error("qmzv_term: m_i must be >= 1");
                if (i > 0 && ms[i] > ms[i - 1])
                    throw std::domain_error("qmzv_term: requires m_1 >= ... >= m_d");
            }
            if (params.k < static_cast<int>(ms.size()) + 1)
                throw std::domain_error("qmzv_term: requires k >= d+1");
            const int k = params.k;
            std::string label = "term m=(";
            for (std::size_t i = 0; i < ms.size(); ++i)
                label += (i ? "," : "") + std::to_string(ms[i]);
            label += ") k=" + std::to_string(k);
            monotone_pairs(
                label,
                [&ms, k](double qv) {
                    QParam q(qv);
                    double value =
                        std::pow(qv, static_cast<double>(ms[0]) * (k - 1)) /
                        std::pow(q_integer(ms[0], q), k);
                    for (std::size_t i = 1; i < ms.size(); ++i)
                        value /= q_integer(ms[i], q);
                    return value;
                },
                sample_points, /*increasing=*/true);
            return finalize("monotone_qmzv_term", std::move(instances));
        }
    }
    throw std::logic_error("verify_monotonicity: unknown target");
}

}  // namespace qzeta
