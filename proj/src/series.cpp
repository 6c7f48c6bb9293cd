#include "qzeta/series.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qzeta/format.hpp"

namespace qzeta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Compensated accumulator; sweeps sum up to ~1e8 positive terms and downstream
// comparisons sit at 1e-8.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double term) {
        double y = term - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// Upper bound on the tail beyond outer cutoff M of a q-type nested series
// with depth d and leading exponent k1. Term majorant:
//   C(m-1, d-1) * q^{m(k1-1)}            <= m^{d-1}/(d-1)! * x^m
// and with the extra classical slot (prefix sums of 1/m^r bounded by 1+ln m):
//   C(m-1, d-1) * (1+ln m) * x^m         <= m^{d-1}(1+ln m)/(d-1)! * x^m,
// where x = q^{k1-1}. Successive majorant terms shrink by at least
// rho = x * ((M+1)/M)^{d-1}  (exponent d with the extra slot), so the tail is
// at most the first majorant term divided by (1 - rho).
double q_tail_bound(int d, int k1, bool extra_slot, double q, std::int64_t m_cut) {
    const double x = std::pow(q, k1 - 1);
    const double mc = static_cast<double>(m_cut);
    const double rho = x * std::pow((mc + 1.0) / mc, extra_slot ? d : d - 1);
    if (!(rho < 1.0)) return kInf;
    double log_first = (d - 1) * std::log(mc + 1.0) - log_factorial(d - 1) +
                       (mc + 1.0) * std::log(x);
    if (extra_slot) log_first += std::log1p(std::log(mc + 1.0));
    // The true bound is positive; keep it so when exp underflows, else the
    // bracket would claim the partial sum exactly.
    return std::max(std::exp(log_first) / (1.0 - rho),
                    std::numeric_limits<double>::denorm_min());
}

// Upper bound on the tail beyond M of a classical nested series with depth d,
// leading exponent k1 and binomial damping order p. With a = k1 + p - 1 and
// U = 1 + ln M:
//   sum_{m>M} p! * m^{-(k1+p)} * (1+ln m)^{d-1}/(d-1)!
//     <= p! * integral_M^inf (1+ln x)^{d-1} x^{-(k1+p)} dx / (d-1)!
//      = p! * sum_{j<d} (aU)^j/j! / (a^d M^a),
// valid once the integrand is decreasing, i.e. (k1+p)(1+ln M) >= d-1.
double classical_tail_bound(int d, int k1, int p, std::int64_t m_cut) {
    const int a = k1 + p - 1;
    const double mc = static_cast<double>(m_cut);
    const double u = 1.0 + std::log(mc);
    if (static_cast<double>(k1 + p) * u < static_cast<double>(d - 1)) return kInf;
    const double au = a * u;
    double term = 1.0;
    double series = 1.0;
    for (int j = 1; j < d; ++j) {
        term *= au / j;
        series += term;
    }
    const double log_scale =
        log_factorial(p) - d * std::log(static_cast<double>(a)) - a * std::log(mc);
    return std::max(series * std::exp(log_scale),
                    std::numeric_limits<double>::denorm_min());
}

struct CutoffChoice {
    std::int64_t m_cut;
    bool reached_epsilon;
};

// Smallest cutoff whose certificate is below epsilon; the certificate is
// decreasing in M wherever it is finite, so the predicate is monotone.
template <typename CertFn>
CutoffChoice choose_cutoff(const CertFn& cert, double epsilon, std::int64_t min_m,
                           std::int64_t cap) {
    if (cap < min_m) cap = min_m;  // always admit at least one chain
    auto ok = [&](std::int64_t m) { return cert(m) < epsilon; };
    if (!ok(cap)) return {cap, false};
    if (ok(min_m)) return {min_m, true};
    std::int64_t lo = min_m, hi = cap;
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return {hi, true};
}

// One ascending sweep evaluating all layers of the nested sum at once.
// P[i] carries the prefix sum over m_i <= m of
//   f_i(m_i) * P[i+1](m_i - 1),
// with the innermost feed gated by m > floor. Updating i in ascending order
// keeps P[i+1] one step behind, which is exactly the strict ordering
// m_i > m_{i+1}.
//
// Layers are q-type (exponent k: q^{m(k-1)}/[m:q]^k) for the first
// `ks.size()` positions, followed by one optional classical layer 1/m^r.
double q_sweep(const std::vector<int>& ks, int extra_r, int floor_n, double q,
               std::int64_t m_cut) {
    const int dq = static_cast<int>(ks.size());
    const int layers = dq + (extra_r > 0 ? 1 : 0);
    std::vector<KahanSum> prefix(static_cast<std::size_t>(layers));
    const double inv_one_minus_q = 1.0 / (1.0 - q);
    const std::int64_t start = (extra_r > 0) ? 1 : static_cast<std::int64_t>(floor_n) + 1;

    double qp = std::pow(q, static_cast<double>(start));  // q^m, refreshed periodically
    for (std::int64_t m = start; m <= m_cut; ++m) {
        if ((m - start) % 4096 == 0) qp = std::pow(q, static_cast<double>(m));
        const double qint = (1.0 - qp) * inv_one_minus_q;
        const double md = static_cast<double>(m);
        for (int i = 0; i < layers; ++i) {
            double f;
            if (i < dq)
                f = ipow(qp, ks[static_cast<std::size_t>(i)] - 1) /
                    ipow(qint, ks[static_cast<std::size_t>(i)]);
            else
                f = ipow(1.0 / md, extra_r);
            double feed;
            if (i + 1 < layers)
                feed = prefix[static_cast<std::size_t>(i + 1)].sum;
            else
                feed = (extra_r > 0 || m > floor_n) ? 1.0 : 0.0;
            if (feed != 0.0) prefix[static_cast<std::size_t>(i)].add(f * feed);
        }
        qp *= q;
    }
    return prefix.front().sum;
}

// Classical analogue; outermost layer weighted by 1/C(m+p, p), maintained
// incrementally via C(m+1+p,p)/C(m+p,p) = (m+1+p)/(m+1).
double classical_sweep(const std::vector<int>& ks, int p, int floor_n,
                       std::int64_t m_cut) {
    const int layers = static_cast<int>(ks.size());
    std::vector<KahanSum> prefix(static_cast<std::size_t>(layers));
    const std::int64_t start = static_cast<std::int64_t>(floor_n) + 1;

    double binom_recip = 1.0;
    for (int i = 1; i <= p; ++i)
        binom_recip *= static_cast<double>(i) / static_cast<double>(start + i);

    for (std::int64_t m = start; m <= m_cut; ++m) {
        const double inv = 1.0 / static_cast<double>(m);
        for (int i = 0; i < layers; ++i) {
            double f = ipow(inv, ks[static_cast<std::size_t>(i)]);
            if (i == 0) f *= binom_recip;
            const double feed =
                (i + 1 < layers) ? prefix[static_cast<std::size_t>(i + 1)].sum : 1.0;
            if (feed != 0.0) prefix[static_cast<std::size_t>(i)].add(f * feed);
        }
        binom_recip *= static_cast<double>(m + 1) / static_cast<double>(m + 1 + p);
    }
    return prefix.front().sum;
}

void require_admissible(const MultiIndex& k, const char* op) {
    if (!k.admissible())
        throw std::domain_error(std::string(op) + ": index (" + k.to_string() +
                                ") is not admissible (first part must be >= 2)");
}

template <typename CertFn, typename SweepFn>
SeriesResult run_eval(const EvalConfig& cfg, std::int64_t min_m, const CertFn& cert,
                      const SweepFn& sweep) {
    cfg.validate();
    SeriesResult res;
    if (cfg.mode == EvalMode::certified) {
        auto [m_cut, reached] = choose_cutoff(cert, cfg.epsilon, min_m, cfg.max_terms);
        res.terms_used = m_cut;
        res.certified = reached;
        res.remainder_bound = cert(m_cut);
    } else {
        res.terms_used = std::max(cfg.max_terms, min_m);
        res.certified = false;
        res.remainder_bound = cert(res.terms_used);
    }
    res.value = sweep(res.terms_used);
    return res;
}

}  // namespace

QParam::QParam(double q) : q_(q) {
    if (!(q > 0.0) || !(q < 1.0))
        throw std::domain_error("q must lie strictly inside (0,1), got " +
                                format_double(q));
}

void EvalConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::domain_error("EvalConfig: epsilon must be > 0");
    if (max_terms < 2) throw std::domain_error("EvalConfig: max_terms must be >= 2");
}

std::string to_json(const SeriesResult& r) {
    return "{\"value\":" + json_number(r.value) +
           ",\"remainder_bound\":" + json_number(r.remainder_bound) +
           ",\"terms_used\":" + std::to_string(r.terms_used) +
           ",\"certified\":" + (r.certified ? "true" : "false") + "}";
}

double q_integer(int m, QParam q) {
    if (m < 1) throw std::domain_error("q_integer: m must be >= 1");
    return (1.0 - std::pow(q.value(), m)) / (1.0 - q.value());
}

SeriesResult eval_qmzv_tail(const MultiIndex& k, int n, QParam q,
                            const EvalConfig& cfg) {
    require_admissible(k, "eval_qmzv_tail");
    if (n < 0) throw std::domain_error("eval_qmzv_tail: n must be >= 0");
    const int d = k.depth();
    const int k1 = k.parts().front();
    const double qv = q.value();
    auto cert = [=](std::int64_t m) { return q_tail_bound(d, k1, false, qv, m); };
    auto sweep = [&](std::int64_t m) { return q_sweep(k.parts(), 0, n, qv, m); };
    return run_eval(cfg, static_cast<std::int64_t>(n) + d, cert, sweep);
}

SeriesResult eval_qmzv(const MultiIndex& k, QParam q, const EvalConfig& cfg) {
    return eval_qmzv_tail(k, 0, q, cfg);
}

SeriesResult eval_qmzv_r(const MultiIndex& k, int r, QParam q, const EvalConfig& cfg) {
    require_admissible(k, "eval_qmzv_r");
    if (r < 1) throw std::domain_error("eval_qmzv_r: r must be >= 1");
    const int d = k.depth();
    const int k1 = k.parts().front();
    const double qv = q.value();
    auto cert = [=](std::int64_t m) { return q_tail_bound(d, k1, true, qv, m); };
    auto sweep = [&](std::int64_t m) { return q_sweep(k.parts(), r, 0, qv, m); };
    return run_eval(cfg, static_cast<std::int64_t>(d) + 1, cert, sweep);
}

SeriesResult eval_double_tail(const MultiIndex& k, int p, int n,
                              const EvalConfig& cfg) {
    require_admissible(k, "eval_double_tail");
    if (p < 0 || n < 0) throw std::domain_error("eval_double_tail: p, n must be >= 0");
    const int d = k.depth();
    const int k1 = k.parts().front();
    auto cert = [=](std::int64_t m) { return classical_tail_bound(d, k1, p, m); };
    auto sweep = [&](std::int64_t m) { return classical_sweep(k.parts(), p, n, m); };
    // The certificate additionally needs the integrand decreasing from the
    // cutoff on: (k1+p)(1+ln M) >= d-1.
    std::int64_t min_m = static_cast<std::int64_t>(n) + d;
    const double need = std::exp(static_cast<double>(d - 1) / (k1 + p) - 1.0);
    if (static_cast<double>(min_m) < need) min_m = static_cast<std::int64_t>(need) + 1;
    return run_eval(cfg, min_m, cert, sweep);
}

SeriesResult eval_mzv(const MultiIndex& k, const EvalConfig& cfg) {
    return eval_double_tail(k, 0, 0, cfg);
}

}  // namespace qzeta
