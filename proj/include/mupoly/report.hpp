#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "mupoly/io.hpp"
#include "mupoly/mu.hpp"
#include "mupoly/oracle.hpp"
#include "mupoly/poly.hpp"
#include "mupoly/split.hpp"

namespace mupoly {

struct SolveRequest {
    Polynomial f;
    std::string source = "coeffs";      ///< "coeffs" or "roots"
    std::vector<Complex> input_roots;  ///< set when source == "roots"
    double x0 = 1.0;
    SolveConfig config;
};

/// Everything the solve command reports: bracket, traces, rates, oracle cross-check.
struct SolveReport {
    SolveRequest request;
    PQSplit split;
    BracketResult bracket;
    std::optional<RootReport> oracle;
    std::string oracle_error;
    std::vector<double> oracle_real_roots;  ///< oracle real roots tightened by bisection
    std::optional<int> bracket_index;
    AssumptionReport assumption;
    std::optional<double> lower_delta;  ///< |lower limit - nearest oracle real root|
    std::optional<double> upper_delta;

    [[nodiscard]] bool hit_max_iters() const {
        return bracket.trace_up.status == TraceStatus::MaxIters || bracket.trace_down.status == TraceStatus::MaxIters;
    }
};

namespace detail {

inline std::optional<double> nearest_delta(const Limit& lim, const std::vector<double>& roots) {
    if (!lim.is_root() || roots.empty()) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    for (double r : roots) best = std::min(best, std::abs(r - lim.value));
    return best;
}

/// Reference value the trace errors are measured against.
inline double error_reference(const Limit& lim, const std::optional<EndRates>& rates) {
    switch (lim.kind) {
        case Limit::Kind::Root: return rates ? rates->polished_root : lim.value;
        case Limit::Kind::Zero: return 0.0;
        case Limit::Kind::Infinity: return std::numeric_limits<double>::infinity();
        case Limit::Kind::Unconverged: return lim.value;
    }
    return lim.value;
}

inline std::vector<double> trace_errors(const IterationTrace& tr, double reference) {
    std::vector<double> e;
    e.reserve(tr.iterates.size());
    for (double x : tr.iterates) e.push_back(std::isinf(reference) ? reference : std::abs(reference - x));
    return e;
}

}  // namespace detail

/// Splits, runs both sequences and cross-checks the limits against the oracle.
/// Throws mupoly::Error for unusable input (degenerate split, x0 <= 0).
[[nodiscard]] inline SolveReport solve_report(const SolveRequest& req) {
    if (!(req.x0 > 0.0)) throw Error(ErrorKind::NonpositiveStart, "x0 must be positive");
    SolveReport rep;
    rep.request = req;
    rep.split = split_signs(req.f);
    rep.bracket = solve_bracket(rep.split, req.x0, req.config);

    if (req.f.degree() >= 1) {
        try {
            rep.oracle = durand_kerner_roots(req.f);
        } catch (const Error& e) {
            rep.oracle_error = e.what();
        }
    }
    if (rep.oracle) {
        for (double r : rep.oracle->real_roots_sorted) rep.oracle_real_roots.push_back(tighten_real_root(req.f, r));
        std::sort(rep.oracle_real_roots.begin(), rep.oracle_real_roots.end());
        rep.bracket_index = bracket_index(rep.oracle_real_roots, req.x0);
        rep.assumption = verify_assumption1(req.f, rep.oracle->all_roots);
        rep.lower_delta = detail::nearest_delta(rep.bracket.lower_limit, rep.oracle_real_roots);
        rep.upper_delta = detail::nearest_delta(rep.bracket.upper_limit, rep.oracle_real_roots);
    } else {
        rep.assumption.alternating_signs = check_alternating(req.f);
    }
    return rep;
}

namespace detail {

inline void write_limit(io::JsonWriter& w, const Limit& lim, const IterationTrace& tr) {
    w.begin_object();
    w.key("kind").value(to_string(lim.kind));
    w.key("value");
    if (lim.is_sentinel())
        w.null();
    else
        w.value(lim.value);
    w.key("status").value(to_string(tr.status));
    w.end_object();
}

inline void write_trace(io::JsonWriter& w, const IterationTrace& tr, const Limit& lim,
                        const std::optional<EndRates>& rates) {
    w.begin_object();
    w.key("direction").value(to_string(tr.direction));
    w.key("ratio").value(to_string(tr.ratio));
    w.key("status").value(to_string(tr.status));
    w.key("steps").value(tr.steps());
    w.key("iterates").real_array(tr.iterates);
    w.key("residuals").real_array(tr.residuals);
    w.key("abs_errors").real_array(trace_errors(tr, error_reference(lim, rates)));
    w.end_object();
}

inline void write_rates(io::JsonWriter& w, const std::optional<EndRates>& rates) {
    if (!rates) {
        w.null();
        return;
    }
    w.begin_object();
    w.key("root").value(rates->polished_root);
    w.key("theoretical");
    rates->theoretical ? w.value(*rates->theoretical) : w.null();
    w.key("empirical");
    rates->empirical ? w.value(*rates->empirical) : w.null();
    w.key("iterations_per_digit");
    if (rates->theoretical && *rates->theoretical > 0.0 && *rates->theoretical < 1.0)
        w.value(iterations_per_digit(*rates->theoretical));
    else
        w.null();
    w.key("empirical_iterations_per_digit");
    if (rates->empirical && *rates->empirical > 0.0 && *rates->empirical < 1.0)
        w.value(iterations_per_digit(*rates->empirical));
    else
        w.null();
    w.key("multiple_root_suspected").value(rates->multiple_root_suspected);
    w.end_object();
}

inline void write_roots(io::JsonWriter& w, const std::vector<Complex>& roots) {
    w.begin_array();
    for (const Complex& z : roots) {
        w.begin_object();
        w.key("re").value(z.real());
        w.key("im").value(z.imag());
        w.end_object();
    }
    w.end_array();
}

inline void write_assumption(io::JsonWriter& w, const AssumptionReport& a, bool known) {
    w.begin_object();
    w.key("satisfied");
    known ? w.value(a.satisfied) : w.null();
    w.key("min_real_part");
    known ? w.value(a.min_real_part) : w.null();
    w.key("max_real_part");
    known ? w.value(a.max_real_part) : w.null();
    w.key("alternating_signs").value(a.alternating_signs);
    w.end_object();
}

inline void write_optional(io::JsonWriter& w, const std::optional<double>& x) { x ? w.value(*x) : w.null(); }

}  // namespace detail

/// JSON document with top-level keys input, bracket, traces, rates, oracle.
[[nodiscard]] inline std::string to_json(const SolveReport& rep) {
    const auto& req = rep.request;
    const auto& b = rep.bracket;
    io::JsonWriter w;
    w.begin_object();

    w.key("input").begin_object();
    w.key("source").value(req.source);
    w.key("coefficients_ascending").real_array(req.f.coeffs());
    std::vector<double> desc(req.f.coeffs().rbegin(), req.f.coeffs().rend());
    w.key("coefficients_descending").real_array(desc);
    if (req.source == "roots") {
        w.key("roots");
        detail::write_roots(w, req.input_roots);
    }
    w.key("x0").value(req.x0);
    w.key("config").begin_object();
    w.key("x_tol").value(req.config.x_tol);
    w.key("f_tol").value(req.config.f_tol);
    w.key("max_iters").value(req.config.max_iters);
    w.key("divergence_threshold").value(req.config.divergence_threshold);
    w.key("zero_threshold").value(req.config.zero_threshold);
    w.end_object();
    w.key("split").begin_object();
    w.key("p").real_array(rep.split.p.coeffs());
    w.key("q").real_array(rep.split.q.coeffs());
    w.end_object();
    w.end_object();

    w.key("bracket").begin_object();
    w.key("bracket_index");
    rep.bracket_index ? w.value(*rep.bracket_index) : w.null();
    w.key("lower");
    detail::write_limit(w, b.lower_limit, b.trace_down);
    w.key("upper");
    detail::write_limit(w, b.upper_limit, b.trace_up);
    w.end_object();

    w.key("traces").begin_object();
    w.key("down");
    detail::write_trace(w, b.trace_down, b.lower_limit, b.lower_rates);
    w.key("up");
    detail::write_trace(w, b.trace_up, b.upper_limit, b.upper_rates);
    w.end_object();

    w.key("rates").begin_object();
    w.key("lower");
    detail::write_rates(w, b.lower_rates);
    w.key("upper");
    detail::write_rates(w, b.upper_rates);
    w.end_object();

    w.key("oracle").begin_object();
    w.key("status").value(rep.oracle ? "ok" : "no_convergence");
    if (rep.oracle) {
        w.key("roots");
        detail::write_roots(w, rep.oracle->all_roots);
        w.key("real_roots").real_array(rep.oracle_real_roots);
        w.key("residual_max").value(rep.oracle->residual_max);
    } else {
        w.key("message").value(rep.oracle_error);
    }
    w.key("assumption1");
    detail::write_assumption(w, rep.assumption, rep.oracle.has_value());
    w.key("agreement").begin_object();
    w.key("lower_delta");
    detail::write_optional(w, rep.lower_delta);
    w.key("upper_delta");
    detail::write_optional(w, rep.upper_delta);
    w.end_object();
    w.end_object();

    w.end_object();
    return w.str();
}

/**
 * CSV trace of both sequences. Following the x_t / x_{-t} indexing, rows with
 * t >= 0 belong to the p/q sequence and rows with t < 0 to the q/p sequence;
 * x0 appears once at t = 0.
 */
[[nodiscard]] inline std::string trace_csv(const SolveReport& rep) {
    const auto& b = rep.bracket;
    const bool up_is_pq = b.trace_up.ratio == Ratio::POverQ;
    const IterationTrace& pq = up_is_pq ? b.trace_up : b.trace_down;
    const IterationTrace& qp = up_is_pq ? b.trace_down : b.trace_up;
    const double pq_ref = up_is_pq ? detail::error_reference(b.upper_limit, b.upper_rates)
                                   : detail::error_reference(b.lower_limit, b.lower_rates);
    const double qp_ref = up_is_pq ? detail::error_reference(b.lower_limit, b.lower_rates)
                                   : detail::error_reference(b.upper_limit, b.upper_rates);

    std::string out = "t,x_t,f_x_t,abs_error_vs_limit,log10_error\n";
    auto row = [&](long t, double x, double fx, double ref) {
        const double err = std::isinf(ref) ? ref : std::abs(ref - x);
        const double lg = err == 0.0 ? -std::numeric_limits<double>::infinity() : std::log10(err);
        out += fmt::format("{},{},{},{},{}\n", t, io::format_real(x), io::format_real(fx), io::format_real(err),
                           io::format_real(lg));
    };
    for (std::size_t i = qp.iterates.size(); i-- > 1;)
        row(-static_cast<long>(i), qp.iterates[i], qp.residuals[i], qp_ref);
    for (std::size_t i = 0; i < pq.iterates.size(); ++i) row(static_cast<long>(i), pq.iterates[i], pq.residuals[i], pq_ref);
    return out;
}

/// JSON listing of the oracle roots with the root-condition verdict.
[[nodiscard]] inline std::string roots_json(const Polynomial& f, const RootReport& rr, const AssumptionReport& a) {
    io::JsonWriter w;
    w.begin_object();
    w.key("input").begin_object();
    w.key("coefficients_ascending").real_array(f.coeffs());
    w.key("degree").value(f.degree());
    w.end_object();
    w.key("roots");
    detail::write_roots(w, rr.all_roots);
    w.key("real_roots").real_array(rr.real_roots_sorted);
    w.key("residual_max").value(rr.residual_max);
    w.key("iterations").value(rr.iterations);
    w.key("assumption1");
    detail::write_assumption(w, a, true);
    w.end_object();
    return w.str();
}

/// CSV with columns shift, rate, valid, iters_per_digit; rows without a result are dropped.
[[nodiscard]] inline std::string shift_scan_csv(const std::vector<ShiftScanRow>& rows) {
    std::string out = "shift,rate,valid,iters_per_digit\n";
    for (const auto& r : rows) {
        if (!r.result) continue;
        const double rate = r.result->rate;
        const double ipd =
            (rate > 0.0 && rate < 1.0) ? iterations_per_digit(rate) : std::numeric_limits<double>::quiet_NaN();
        out += fmt::format("{},{},{},{}\n", io::format_real(r.shift), io::format_real(rate),
                           r.result->valid ? "true" : "false", io::format_real(ipd));
    }
    return out;
}

}  // namespace mupoly
