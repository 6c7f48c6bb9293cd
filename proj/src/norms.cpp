#include "qzeta/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <numbers>
#include <stdexcept>

#include "qzeta/format.hpp"
#include "qzeta/parallel.hpp"

namespace qzeta {

double zeta2_upper_bound() { return std::numbers::pi * std::numbers::pi / 6.0; }

QGrid::QGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::domain_error("QGrid: grid must be nonempty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!(points_[i] > 0.0) || !(points_[i] < 1.0))
            throw std::domain_error("QGrid: points must lie strictly inside (0,1)");
        if (i > 0 && points_[i] <= points_[i - 1])
            throw std::domain_error("QGrid: points must be strictly increasing");
    }
}

QGrid QGrid::make(int count, int near_one_refinements) {
    if (count < 1) throw std::domain_error("QGrid: count must be >= 1");
    if (near_one_refinements < 0)
        throw std::domain_error("QGrid: refinements must be >= 0");
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(count + near_one_refinements));
    for (int i = 1; i <= count; ++i)
        pts.push_back(static_cast<double>(i) / (count + 1));
    for (int j = 1; j <= near_one_refinements; ++j)
        pts.push_back(1.0 - std::pow(10.0, -(2 + j)));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return QGrid(std::move(pts));
}

QGrid QGrid::default_grid() { return make(99, 2); }

FunctionSpec FunctionSpec::qmzv(MultiIndex k) {
    if (!k.admissible())
        throw std::domain_error("FunctionSpec: index (" + k.to_string() +
                                ") is not admissible");
    return FunctionSpec{Kind::qmzv, std::move(k), 0, 1};
}

FunctionSpec FunctionSpec::tail(MultiIndex k, int n) {
    if (!k.admissible())
        throw std::domain_error("FunctionSpec: index (" + k.to_string() +
                                ") is not admissible");
    if (n < 0) throw std::domain_error("FunctionSpec: tail floor must be >= 0");
    return FunctionSpec{Kind::qmzv_tail, std::move(k), n, 1};
}

FunctionSpec FunctionSpec::r_ext(MultiIndex k, int r) {
    if (!k.admissible())
        throw std::domain_error("FunctionSpec: index (" + k.to_string() +
                                ") is not admissible");
    if (r < 1) throw std::domain_error("FunctionSpec: r must be >= 1");
    return FunctionSpec{Kind::qmzv_r, std::move(k), 0, r};
}

std::string FunctionSpec::to_string() const {
    switch (kind) {
        case Kind::qmzv: return "zeta[" + index.to_string() + ":q]";
        case Kind::qmzv_tail:
            return "zeta[" + index.to_string() + ":q]_" + std::to_string(tail_n);
        case Kind::qmzv_r:
            return "zeta[" + index.to_string() + ";" + std::to_string(r) + ":q)";
    }
    return {};
}

SeriesResult eval_function_spec(const FunctionSpec& f, QParam q,
                                const EvalConfig& cfg) {
    switch (f.kind) {
        case FunctionSpec::Kind::qmzv: return eval_qmzv(f.index, q, cfg);
        case FunctionSpec::Kind::qmzv_tail:
            return eval_qmzv_tail(f.index, f.tail_n, q, cfg);
        case FunctionSpec::Kind::qmzv_r: return eval_qmzv_r(f.index, f.r, q, cfg);
    }
    throw std::logic_error("eval_function_spec: unknown kind");
}

std::string to_json(const NormEstimate& e) {
    std::string out = "{\"grid_max\":" + json_number(e.grid_max);
    out += ",\"argmax_q\":" + json_number(e.argmax_q);
    out += ",\"closed_form\":";
    out += e.closed_form ? json_number(*e.closed_form) : "null";
    out += ",\"upper_bound\":" + json_number(e.upper_bound);
    out += ",\"excluded_points\":[";
    for (std::size_t i = 0; i < e.excluded_points.size(); ++i) {
        if (i > 0) out += ',';
        out += json_number(e.excluded_points[i]);
    }
    out += "]}";
    return out;
}

namespace {

// The classical value equals the value at the dual index; the representative
// with the larger leading entry has the faster-converging partial sums, so
// closed forms are evaluated there.
MultiIndex better_conditioned_representative(const MultiIndex& k) {
    MultiIndex d = dual(k);
    return d.parts().front() > k.parts().front() ? d : k;
}

struct GridEvaluation {
    std::vector<SeriesResult> results;  // valid where ok[i]
    std::vector<char> ok;
};

GridEvaluation evaluate_over_grid(const FunctionSpec& f, const QGrid& grid,
                                  const EvalConfig& cfg, int threads) {
    const auto& qs = grid.points();
    GridEvaluation ev;
    ev.results.resize(qs.size());
    ev.ok.assign(qs.size(), 0);
    parallel_for_index(qs.size(), threads, [&](std::size_t i) {
        try {
            ev.results[i] = eval_function_spec(f, QParam(qs[i]), cfg);
            ev.ok[i] = 1;
        } catch (const std::exception&) {
            ev.ok[i] = 0;
        }
    });
    return ev;
}

}  // namespace

NormEstimate sup_norm_estimate(const FunctionSpec& f, const QGrid& grid,
                               const EvalConfig& cfg, int threads) {
    const auto& qs = grid.points();
    GridEvaluation ev = evaluate_over_grid(f, grid, cfg, threads);

    NormEstimate est;
    bool any = false;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (!ev.ok[i]) {
            est.excluded_points.push_back(qs[i]);
            continue;
        }
        if (!any || ev.results[i].value > est.grid_max) {
            est.grid_max = ev.results[i].value;
            est.argmax_q = qs[i];
        }
        any = true;
    }
    if (!any)
        throw std::domain_error("sup_norm_estimate: every grid point failed for " +
                                f.to_string());

    if (f.kind == FunctionSpec::Kind::qmzv && f.index.height() == 1) {
        SeriesResult closed =
            eval_mzv(better_conditioned_representative(f.index), cfg);
        est.closed_form = closed.value;
        est.upper_bound = closed.value;
    } else {
        est.upper_bound = zeta2_upper_bound();
    }
    return est;
}

void SequenceFamily::validate() const {
    const bool needs_k = kind == Kind::t1 || kind == Kind::t4 || kind == Kind::t5 ||
                         kind == Kind::q2;
    if (needs_k) {
        if (!k)
            throw std::domain_error("sequence family " + kind_name(kind) +
                                    " requires a fixed index");
        if (!k->admissible())
            throw std::domain_error("sequence family: fixed index (" + k->to_string() +
                                    ") is not admissible");
    }
    if ((kind == Kind::t2 || kind == Kind::t4) && r < 1)
        throw std::domain_error("sequence family: fixed r must be >= 1");
    if (psi.a < 1 || psi.b < 0 || phi.a < 1 || phi.b < 0)
        throw std::domain_error(
            "sequence family: psi/phi must be strictly increasing maps of N");
}

std::string SequenceFamily::kind_name(Kind kind) {
    switch (kind) {
        case Kind::t1: return "T1";
        case Kind::t2: return "T2";
        case Kind::t3: return "T3";
        case Kind::t4: return "T4";
        case Kind::t5: return "T5";
        case Kind::q1: return "Q1";
        case Kind::q2: return "Q2";
        case Kind::vanishing: return "V1";
    }
    return {};
}

SequenceFamily::Kind SequenceFamily::kind_from_name(std::string_view name) {
    std::string upper(name);
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (upper == "T1") return Kind::t1;
    if (upper == "T2") return Kind::t2;
    if (upper == "T3") return Kind::t3;
    if (upper == "T4") return Kind::t4;
    if (upper == "T5") return Kind::t5;
    if (upper == "Q1") return Kind::q1;
    if (upper == "Q2") return Kind::q2;
    if (upper == "V1") return Kind::vanishing;
    throw std::domain_error("unknown sequence family '" + std::string(name) +
                            "' (expected T1..T5, Q1, Q2 or V1)");
}

namespace {

MultiIndex leading_two_run(int ones, const std::optional<MultiIndex>& suffix) {
    std::vector<int> parts;
    parts.push_back(2);
    parts.insert(parts.end(), static_cast<std::size_t>(ones), 1);
    if (suffix)
        parts.insert(parts.end(), suffix->parts().begin(), suffix->parts().end());
    return MultiIndex(std::move(parts));
}

}  // namespace

FunctionSpec make_sequence(const SequenceFamily& family, int n) {
    family.validate();
    if (n < 1) throw std::domain_error("make_sequence: n must be >= 1");
    using Kind = SequenceFamily::Kind;
    switch (family.kind) {
        case Kind::t1: return FunctionSpec::r_ext(*family.k, family.phi(n) + 2);
        case Kind::t2:
            return FunctionSpec::r_ext(leading_two_run(family.psi(n), {}), family.r);
        case Kind::t3:
            return FunctionSpec::r_ext(leading_two_run(family.psi(n), {}),
                                       family.phi(n) + 2);
        case Kind::t4:
            return FunctionSpec::r_ext(leading_two_run(family.psi(n), family.k),
                                       family.r);
        case Kind::t5:
            return FunctionSpec::r_ext(leading_two_run(family.psi(n), family.k),
                                       family.phi(n) + 2);
        case Kind::q1:
            return FunctionSpec::tail(leading_two_run(family.psi(n), {}), 1);
        case Kind::q2:
            return FunctionSpec::tail(leading_two_run(family.psi(n), family.k), 1);
        case Kind::vanishing:
            return FunctionSpec::r_ext(one_padded_index(3, family.psi(n) - 1), 1);
    }
    throw std::logic_error("make_sequence: unknown family");
}

std::string verdict_name(ConvergenceVerdict v) {
    switch (v) {
        case ConvergenceVerdict::converges_to_tail: return "converges_to_tail";
        case ConvergenceVerdict::converges_to_zero: return "converges_to_zero";
        case ConvergenceVerdict::norm_bounded_below: return "norm_bounded_below";
    }
    return {};
}

std::string to_json(const ConvergenceReport& r) {
    std::string out = "{\"candidate\":\"" + json_escape(r.candidate) + "\"";
    out += ",\"verdict\":\"" + verdict_name(r.verdict) + "\"";
    out += ",\"records\":[";
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const auto& rec = r.records[i];
        if (i > 0) out += ',';
        out += "{\"n\":" + std::to_string(rec.n);
        out += ",\"distance_to_candidate\":" + json_number(rec.distance_to_candidate);
        out += ",\"analytic_bound\":" + json_number(rec.analytic_bound);
        out += ",\"pointwise_value_at_probe_q\":" +
               json_number(rec.pointwise_value_at_probe_q);
        out += ",\"norm_lower_evidence\":" + json_number(rec.norm_lower_evidence);
        out += "}";
    }
    out += "]}";
    return out;
}

std::string to_csv(const ConvergenceReport& r) {
    std::string out = "n,distance,analytic_bound,probe_value,grid_max\n";
    for (const auto& rec : r.records) {
        out += std::to_string(rec.n);
        out += ',' + format_double(rec.distance_to_candidate);
        out += ',' + format_double(rec.analytic_bound);
        out += ',' + format_double(rec.pointwise_value_at_probe_q);
        out += ',' + format_double(rec.norm_lower_evidence);
        out += '\n';
    }
    return out;
}

namespace {

// Certified upper estimate of the classical value of k (value plus one-sided
// remainder), evaluated at the better-conditioned dual representative.
double mzv_upper(const MultiIndex& k, const EvalConfig& cfg) {
    SeriesResult r = eval_mzv(better_conditioned_representative(k), cfg);
    return r.value + r.remainder_bound;
}

// Upper bound for the sup of |f| of a plain q-series: the closed form for
// height-one indices, zeta(2) otherwise.
double norm_upper(const MultiIndex& k, const EvalConfig& cfg) {
    if (k.height() == 1) return mzv_upper(k, cfg);
    return zeta2_upper_bound();
}

}  // namespace

ConvergenceReport convergence_experiment(const SequenceFamily& family, int n_min,
                                         int n_max, const QGrid& grid,
                                         const ExperimentConfig& cfg) {
    family.validate();
    using Kind = SequenceFamily::Kind;
    if (family.kind != Kind::t1 && family.kind != Kind::vanishing)
        throw std::domain_error("convergence_experiment supports families T1 and V1; "
                                "use divergence_witness for " +
                                SequenceFamily::kind_name(family.kind));
    if (n_min < 1 || n_max < n_min)
        throw std::domain_error("convergence_experiment: need 1 <= n_min <= n_max");

    const auto& qs = grid.points();
    ConvergenceReport report;

    // Candidate values on the grid (identically zero for the vanishing family).
    std::vector<double> candidate(qs.size(), 0.0);
    if (family.kind == Kind::t1) {
        const FunctionSpec cand = FunctionSpec::tail(*family.k, 1);
        report.candidate = cand.to_string();
        GridEvaluation ev = evaluate_over_grid(cand, grid, cfg.eval, cfg.threads);
        for (std::size_t i = 0; i < qs.size(); ++i) {
            if (!ev.ok[i])
                throw std::domain_error("convergence_experiment: candidate failed at " +
                                        format_double(qs[i]));
            candidate[i] = ev.results[i].value;
        }
    } else {
        report.candidate = "0";
    }

    const double probe = QParam(cfg.probe_q).value();
    for (int n = n_min; n <= n_max; ++n) {
        const FunctionSpec f = make_sequence(family, n);
        GridEvaluation ev = evaluate_over_grid(f, grid, cfg.eval, cfg.threads);
        ConvergenceRecord rec;
        rec.n = n;
        double dist = 0.0, gmax = 0.0;
        for (std::size_t i = 0; i < qs.size(); ++i) {
            if (!ev.ok[i]) continue;
            dist = std::max(dist, std::abs(ev.results[i].value - candidate[i]));
            gmax = std::max(gmax, ev.results[i].value);
        }
        rec.distance_to_candidate = dist;
        rec.norm_lower_evidence = gmax;
        {
            SeriesResult at_probe = eval_function_spec(f, QParam(probe), cfg.eval);
            double cand_at_probe = 0.0;
            if (family.kind == Kind::t1) {
                SeriesResult c = eval_qmzv_tail(*family.k, 1, QParam(probe), cfg.eval);
                cand_at_probe = c.value;
            }
            rec.pointwise_value_at_probe_q = std::abs(at_probe.value - cand_at_probe);
        }
        if (family.kind == Kind::t1) {
            // |f_n - candidate| is bounded by ||zeta[k:q]|| * (zeta(r) - 1).
            SeriesResult zr = eval_mzv(MultiIndex{family.phi(n) + 2}, cfg.eval);
            rec.analytic_bound =
                norm_upper(*family.k, cfg.eval) * (zr.value + zr.remainder_bound - 1.0);
        } else {
            // ||f_n|| is bounded by the classical value at (psi(n)+2, 1).
            rec.analytic_bound =
                mzv_upper(MultiIndex{family.psi(n) + 2, 1}, cfg.eval);
        }
        report.records.push_back(rec);
    }

    const auto& first = report.records.front();
    const auto& last = report.records.back();
    const bool shrinks = last.distance_to_candidate <=
                         first.distance_to_candidate + cfg.verdict_slack;
    const bool bounded = last.distance_to_candidate <=
                         last.analytic_bound + cfg.verdict_slack;
    if (family.kind == Kind::t1)
        report.verdict = (shrinks && bounded)
                             ? ConvergenceVerdict::converges_to_tail
                             : ConvergenceVerdict::norm_bounded_below;
    else
        report.verdict = (shrinks && bounded)
                             ? ConvergenceVerdict::converges_to_zero
                             : ConvergenceVerdict::norm_bounded_below;
    return report;
}

ConvergenceReport divergence_witness(const SequenceFamily& family, int n_min,
                                     int n_max, const QGrid& grid,
                                     const ExperimentConfig& cfg) {
    family.validate();
    using Kind = SequenceFamily::Kind;
    if (family.kind == Kind::t1 || family.kind == Kind::vanishing)
        throw std::domain_error("divergence_witness supports families T2..T5, Q1, Q2; "
                                "use convergence_experiment for " +
                                SequenceFamily::kind_name(family.kind));
    if (n_min < 1 || n_max < n_min)
        throw std::domain_error("divergence_witness: need 1 <= n_min <= n_max");

    const bool tail_family = family.kind == Kind::q1 || family.kind == Kind::q2;
    const double probe = QParam(cfg.probe_q).value();

    ConvergenceReport report;
    report.candidate = "0 (pointwise limit)";
    for (int n = n_min; n <= n_max; ++n) {
        const FunctionSpec f = make_sequence(family, n);
        GridEvaluation ev = evaluate_over_grid(f, grid, cfg.eval, cfg.threads);
        ConvergenceRecord rec;
        rec.n = n;
        double gmax = 0.0;
        for (std::size_t i = 0; i < grid.points().size(); ++i)
            if (ev.ok[i]) gmax = std::max(gmax, ev.results[i].value);
        rec.norm_lower_evidence = gmax;
        rec.distance_to_candidate = gmax;  // sup distance to the zero function
        rec.pointwise_value_at_probe_q =
            eval_function_spec(f, QParam(probe), cfg.eval).value;
        // Pointwise majorant at the probe: the single-entry q-series whose
        // exponent grows with n dominates every member of these families.
        const int majorant = tail_family ? family.psi(n) + 2 : family.psi(n) + 3;
        SeriesResult bound =
            eval_qmzv(MultiIndex{majorant}, QParam(probe), cfg.eval);
        rec.analytic_bound = bound.value + bound.remainder_bound;
        report.records.push_back(rec);
    }

    bool floor_holds = true;
    for (const auto& rec : report.records)
        floor_holds = floor_holds && rec.norm_lower_evidence >= cfg.norm_floor;
    const bool probe_vanishes =
        report.records.back().pointwise_value_at_probe_q <= cfg.probe_ceiling;
    if (floor_holds && probe_vanishes)
        report.verdict = ConvergenceVerdict::norm_bounded_below;
    else if (report.records.back().norm_lower_evidence <= cfg.probe_ceiling)
        report.verdict = ConvergenceVerdict::converges_to_zero;
    else
        report.verdict = ConvergenceVerdict::norm_bounded_below;
    return report;
}

}  // namespace qzeta
