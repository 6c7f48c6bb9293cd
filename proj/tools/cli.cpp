#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qzeta/checks.hpp"
#include "qzeta/format.hpp"
#include "qzeta/multi_index.hpp"
#include "qzeta/norms.hpp"
#include "qzeta/series.hpp"

namespace qzeta::cli {

namespace {

struct RunConfig {
    double epsilon = 1e-10;
    std::int64_t max_terms = 10'000'000;
    int grid_count = 99;
    int grid_refine = 2;
    std::string format = "json";
    int threads = 0;  // 0 = auto

    EvalConfig eval_config() const {
        return EvalConfig{epsilon, max_terms, EvalMode::certified};
    }
    int effective_threads() const {
        if (threads > 0) return threads;
        unsigned hw = std::thread::hardware_concurrency();
        return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
    }
    QGrid grid() const { return QGrid::make(grid_count, grid_refine); }
};

// Overrides defaults from the JSON file named by QZETA_CONFIG; explicit flags
// are applied on top by the parser.
void load_env_config(RunConfig& cfg, std::ostream& err) {
    const char* path = std::getenv("QZETA_CONFIG");
    if (path == nullptr || *path == '\0') return;
    std::ifstream in(path);
    if (!in) throw std::domain_error("QZETA_CONFIG: cannot open '" + std::string(path) + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw std::domain_error("QZETA_CONFIG: parse failure: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw std::domain_error("QZETA_CONFIG: expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "epsilon") cfg.epsilon = value.get<double>();
        else if (key == "max_terms") cfg.max_terms = value.get<std::int64_t>();
        else if (key == "grid_count") cfg.grid_count = value.get<int>();
        else if (key == "grid_refine") cfg.grid_refine = value.get<int>();
        else if (key == "format") cfg.format = value.get<std::string>();
        else if (key == "threads") cfg.threads = value.get<int>();
        else err << "warning: QZETA_CONFIG: ignoring unknown key '" << key << "'\n";
    }
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (format == a) return;
    throw std::domain_error("unsupported output format '" + format + "' for this command");
}

void emit_series(const SeriesResult& r, const std::string& format, std::ostream& out) {
    require_format(format, {"json", "text"});
    if (format == "json") {
        out << to_json(r) << '\n';
        return;
    }
    out << "value            = " << format_double(r.value) << '\n'
        << "remainder_bound  = " << format_double(r.remainder_bound) << '\n'
        << "terms_used       = " << r.terms_used << '\n'
        << "certified        = " << (r.certified ? "true" : "false") << '\n';
}

void emit_norm(const NormEstimate& e, const std::string& format, std::ostream& out) {
    require_format(format, {"json", "text"});
    if (format == "json") {
        out << to_json(e) << '\n';
        return;
    }
    out << "grid_max   = " << format_double(e.grid_max) << '\n'
        << "argmax_q   = " << format_double(e.argmax_q) << '\n';
    if (e.closed_form) out << "closed_form = " << format_double(*e.closed_form) << '\n';
    out << "upper_bound = " << format_double(e.upper_bound) << '\n';
    if (!e.excluded_points.empty()) {
        out << "excluded_points =";
        for (double q : e.excluded_points) out << ' ' << format_double(q);
        out << '\n';
    }
}

void emit_convergence(const ConvergenceReport& r, const std::string& format,
                      std::ostream& out) {
    require_format(format, {"json", "csv", "text"});
    if (format == "json") {
        out << to_json(r) << '\n';
    } else if (format == "csv") {
        out << to_csv(r);
    } else {
        out << "candidate: " << r.candidate << '\n'
            << "verdict:   " << verdict_name(r.verdict) << '\n'
            << to_csv(r);
    }
}

int emit_check_reports(const std::vector<CheckReport>& reports,
                       const std::string& format, std::ostream& out) {
    require_format(format, {"json", "text"});
    bool all = true;
    if (format == "json") {
        out << '[';
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i > 0) out << ',';
            out << to_json(reports[i]);
        }
        out << "]\n";
    } else {
        for (const auto& r : reports) {
            out << "check " << r.check_id << ": " << (r.all_passed ? "PASS" : "FAIL")
                << " (" << r.instances.size()
                << " instances, worst margin " << format_double(r.worst_margin) << ")\n";
            for (const auto& inst : r.instances)
                if (!inst.passed)
                    out << "  FAILED " << inst.parameters
                        << " lhs=" << format_double(inst.lhs)
                        << " rhs=" << format_double(inst.rhs)
                        << " margin=" << format_double(inst.margin) << '\n';
        }
    }
    for (const auto& r : reports) all = all && r.all_passed;
    return all ? 0 : 1;
}

AffineMap parse_affine(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::domain_error("affine map must be 'a,b', got '" + text + "'");
    AffineMap map;
    map.a = std::stoi(text.substr(0, comma));
    map.b = std::stoi(text.substr(comma + 1));
    if (map.a < 1 || map.b < 0)
        throw std::domain_error("affine map needs a >= 1, b >= 0, got '" + text + "'");
    return map;
}

std::vector<CheckReport> run_suite(const std::string& suite, int max_weight,
                                   const QGrid& grid, const CheckConfig& cfg) {
    std::vector<CheckReport> reports;
    const bool all = suite == "all";
    bool known = all;
    if (all || suite == "duality") {
        known = true;
        DualityParams dp;
        dp.height_one_sum = std::max(0, max_weight - 2);
        dp.max_weight = max_weight;
        dp.pn_max = 2;
        reports.push_back(verify_duality(DualityKind::q_height_one, dp, grid, cfg));
        reports.push_back(verify_duality(DualityKind::mzv, dp, grid, cfg));
        DualityParams dt = dp;
        dt.max_weight = std::min(max_weight, 5);
        reports.push_back(verify_duality(DualityKind::double_tail, dt, grid, cfg));
    }
    if (all || suite == "sandwich") {
        known = true;
        for (const auto& k : admissible_indices_up_to_weight(std::min(max_weight, 4)))
            reports.push_back(verify_tail_sandwich(k, 3, grid, cfg));
    }
    if (all || suite == "order") {
        known = true;
        OrderParams op;
        op.max_weight = max_weight;
        for (auto rel : {OrderRelation::single_term_bound, OrderRelation::slot_comparisons,
                         OrderRelation::depth_comparison,
                         OrderRelation::double_tail_comparisons,
                         OrderRelation::maximum_element, OrderRelation::r_ext_upper_bound})
            reports.push_back(verify_order_relations(rel, op, grid, cfg));
    }
    if (all || suite == "monotone") {
        known = true;
        reports.push_back(
            verify_monotonicity(MonotonicityTarget::single_term_q, MonotonicityParams{}));
        reports.push_back(
            verify_monotonicity(MonotonicityTarget::x_ratio, MonotonicityParams{}));
        reports.push_back(
            verify_monotonicity(MonotonicityTarget::qmzv_term, MonotonicityParams{}));
    }
    if (!known)
        throw std::domain_error("unknown suite '" + suite +
                                "' (expected duality, sandwich, order, monotone or all)");
    return reports;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        load_env_config(cfg, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    CLI::App app{"certified evaluation and verification of q-deformed multiple zeta series"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--epsilon", cfg.epsilon, "target remainder bound");
    app.add_option("--max-terms", cfg.max_terms, "cap on the outermost summation index");
    app.add_option("--grid-count", cfg.grid_count, "number of uniform grid points");
    app.add_option("--grid-refine", cfg.grid_refine, "number of near-1 refinements");
    app.add_option("--format", cfg.format, "output format: json, csv or text");
    app.add_option("--threads", cfg.threads, "parallelism degree (0 = auto)");

    std::string index_text, family_name, suite = "all", k_text, psi_text, phi_text;
    double q_value = 0.5, probe_q = 0.5;
    int r_slot = 0, tail_n = -1, dt_p = -1, dt_n = -1;
    int max_weight = 6, n_min = 1, n_max = 10, family_r = 1;

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a q-series at one q");
    eval_cmd->add_option("index", index_text, "multi-index, e.g. 2,1^3")->required();
    eval_cmd->add_option("--q", q_value, "deformation parameter in (0,1)")->required();
    eval_cmd->add_option("--r", r_slot, "classical slot exponent (r-extension)");
    eval_cmd->add_option("--tail", tail_n, "tail floor n");

    auto* mzv_cmd = app.add_subcommand("mzv", "evaluate a classical value or double tail");
    mzv_cmd->add_option("index", index_text, "multi-index")->required();
    mzv_cmd->add_option("--p", dt_p, "binomial damping order");
    mzv_cmd->add_option("--n", dt_n, "tail floor");

    auto* dual_cmd = app.add_subcommand("dual", "print the dual index");
    dual_cmd->add_option("index", index_text, "multi-index")->required();

    auto* norm_cmd = app.add_subcommand("norm", "estimate the sup norm over (0,1)");
    norm_cmd->add_option("index", index_text, "multi-index")->required();
    norm_cmd->add_option("--tail", tail_n, "tail floor n");
    norm_cmd->add_option("--r", r_slot, "classical slot exponent");

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", suite, "duality, sandwich, order, monotone or all");
    verify_cmd->add_option("--max-weight", max_weight, "enumeration weight bound");

    auto* conv_cmd = app.add_subcommand("converge", "sequence-family experiment");
    conv_cmd->add_option("--family", family_name, "T1..T5, Q1, Q2 or V1")->required();
    conv_cmd->add_option("--k", k_text, "fixed index for T1/T4/T5/Q2");
    conv_cmd->add_option("--r", family_r, "fixed classical exponent for T2/T4");
    conv_cmd->add_option("--n-min", n_min, "first member");
    conv_cmd->add_option("--n-max", n_max, "last member");
    conv_cmd->add_option("--probe-q", probe_q, "pointwise probe location");
    conv_cmd->add_option("--psi", psi_text, "affine map a,b for psi(n)=a*n+b");
    conv_cmd->add_option("--phi", phi_text, "affine map a,b for phi(n)=a*n+b");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);  // prints help for the right scope
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        const EvalConfig eval_cfg = cfg.eval_config();
        if (eval_cmd->parsed()) {
            if (r_slot > 0 && tail_n >= 0)
                throw std::domain_error("--r and --tail are mutually exclusive");
            MultiIndex k = MultiIndex::parse(index_text);
            QParam q(q_value);
            SeriesResult result;
            if (r_slot > 0) result = eval_qmzv_r(k, r_slot, q, eval_cfg);
            else if (tail_n >= 0) result = eval_qmzv_tail(k, tail_n, q, eval_cfg);
            else result = eval_qmzv(k, q, eval_cfg);
            emit_series(result, cfg.format, out);
            return 0;
        }
        if (mzv_cmd->parsed()) {
            MultiIndex k = MultiIndex::parse(index_text);
            if ((dt_p >= 0) != (dt_n >= 0))
                throw std::domain_error("--p and --n must be given together");
            SeriesResult result = (dt_p >= 0) ? eval_double_tail(k, dt_p, dt_n, eval_cfg)
                                              : eval_mzv(k, eval_cfg);
            emit_series(result, cfg.format, out);
            return 0;
        }
        if (dual_cmd->parsed()) {
            out << dual(MultiIndex::parse(index_text)).to_string() << '\n';
            return 0;
        }
        if (norm_cmd->parsed()) {
            if (r_slot > 0 && tail_n >= 0)
                throw std::domain_error("--r and --tail are mutually exclusive");
            MultiIndex k = MultiIndex::parse(index_text);
            FunctionSpec spec = (r_slot > 0) ? FunctionSpec::r_ext(k, r_slot)
                                : (tail_n >= 0) ? FunctionSpec::tail(k, tail_n)
                                                : FunctionSpec::qmzv(k);
            emit_norm(sup_norm_estimate(spec, cfg.grid(), eval_cfg,
                                        cfg.effective_threads()),
                      cfg.format, out);
            return 0;
        }
        if (verify_cmd->parsed()) {
            CheckConfig check_cfg{eval_cfg, 1e-8, cfg.effective_threads()};
            auto reports = run_suite(suite, max_weight, cfg.grid(), check_cfg);
            return emit_check_reports(reports, cfg.format, out);
        }
        if (conv_cmd->parsed()) {
            SequenceFamily family;
            family.kind = SequenceFamily::kind_from_name(family_name);
            if (!k_text.empty()) family.k = MultiIndex::parse(k_text);
            family.r = family_r;
            if (!psi_text.empty()) family.psi = parse_affine(psi_text);
            if (!phi_text.empty()) family.phi = parse_affine(phi_text);
            ExperimentConfig exp_cfg;
            exp_cfg.eval = eval_cfg;
            exp_cfg.probe_q = probe_q;
            exp_cfg.threads = cfg.effective_threads();
            using Kind = SequenceFamily::Kind;
            const bool convergent =
                family.kind == Kind::t1 || family.kind == Kind::vanishing;
            ConvergenceReport report =
                convergent
                    ? convergence_experiment(family, n_min, n_max, cfg.grid(), exp_cfg)
                    : divergence_witness(family, n_min, n_max, cfg.grid(), exp_cfg);
            emit_convergence(report, cfg.format, out);
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace qzeta::cli
