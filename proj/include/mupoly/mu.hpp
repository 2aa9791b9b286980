#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mupoly/error.hpp"
#include "mupoly/poly.hpp"
#include "mupoly/split.hpp"

namespace mupoly {

/*
 * Multiplicative updates for a split f = p - q.
 *
 * From x0 > 0 two sequences are run: one multiplies by p/q, the other by q/p.
 * If x0 lies between consecutive nonnegative real roots r_k < r_{k+1} (with
 * r_0 = 0 and r_{m+1} = +inf) and all roots of f have nonnegative real part,
 * both sequences stay in [r_k, r_{k+1}], are monotone, and converge to the two
 * ends. The ratio used by each sequence is fixed at x0 and never re-oriented.
 */

enum class Direction { Up, Down };

/// Which quotient multiplies the iterate.
enum class Ratio { POverQ, QOverP };

enum class TraceStatus { Converged, HitZero, Diverged, MaxIters, FixedPoint };

constexpr std::string_view to_string(Direction d) noexcept { return d == Direction::Up ? "UP" : "DOWN"; }

constexpr std::string_view to_string(Ratio r) noexcept { return r == Ratio::POverQ ? "p/q" : "q/p"; }

constexpr std::string_view to_string(TraceStatus s) noexcept {
    switch (s) {
        case TraceStatus::Converged: return "CONVERGED";
        case TraceStatus::HitZero: return "HIT_ZERO";
        case TraceStatus::Diverged: return "DIVERGED";
        case TraceStatus::MaxIters: return "MAX_ITERS";
        case TraceStatus::FixedPoint: return "FIXED_POINT";
    }
    return "UNKNOWN";
}

struct SolveConfig {
    double x_tol = 1e-10;                 ///< relative step tolerance
    double f_tol = 1e-12;                 ///< residual tolerance
    long max_iters = 100000;
    double divergence_threshold = 1e12;
    double zero_threshold = 1e-300;
};

struct IterationTrace {
    std::vector<double> iterates;   ///< x_0, x_1, ...
    std::vector<double> residuals;  ///< f(x_t)
    Direction direction = Direction::Up;
    Ratio ratio = Ratio::POverQ;
    TraceStatus status = TraceStatus::MaxIters;

    [[nodiscard]] std::size_t steps() const noexcept { return iterates.empty() ? 0 : iterates.size() - 1; }
    [[nodiscard]] double last() const { return iterates.back(); }
};

/// A bracket end: a root, one of the two sentinels, or an unfinished estimate.
struct Limit {
    enum class Kind { Root, Zero, Infinity, Unconverged };

    Kind kind = Kind::Unconverged;
    double value = 0.0;  ///< last iterate for Root/Unconverged; unused for sentinels

    [[nodiscard]] bool is_root() const noexcept { return kind == Kind::Root; }
    [[nodiscard]] bool is_sentinel() const noexcept { return kind == Kind::Zero || kind == Kind::Infinity; }
};

constexpr std::string_view to_string(Limit::Kind k) noexcept {
    switch (k) {
        case Limit::Kind::Root: return "ROOT";
        case Limit::Kind::Zero: return "ZERO";
        case Limit::Kind::Infinity: return "INFINITY";
        case Limit::Kind::Unconverged: return "UNCONVERGED";
    }
    return "UNKNOWN";
}

/// Per-end rate information attached by solve_bracket for root limits.
struct EndRates {
    double polished_root = 0.0;            ///< Newton-polished limit used for the rates
    std::optional<double> theoretical;     ///< rate_at_root
    std::optional<double> empirical;       ///< empirical_rate over the trace tail
    bool multiple_root_suspected = false;  ///< theoretical rate within 1e-6 of one
};

struct BracketResult {
    Limit lower_limit;
    Limit upper_limit;
    IterationTrace trace_up;
    IterationTrace trace_down;
    std::optional<double> rate_lower;
    std::optional<double> rate_upper;
    std::optional<EndRates> lower_rates;
    std::optional<EndRates> upper_rates;
};

/// Ratio that moves x in `dir` for a start where p(x0) vs q(x0) is known.
[[nodiscard]] inline Ratio ratio_for(Direction dir, bool p_above_q) noexcept {
    const bool up = dir == Direction::Up;
    return (up == p_above_q) ? Ratio::POverQ : Ratio::QOverP;
}

/// x * p(x)/q(x) or x * q(x)/p(x) with a fixed quotient.
[[nodiscard]] inline double apply_ratio(const PQSplit& s, double x, Ratio ratio) {
    const double px = eval_horner(s.p, x);
    const double qx = eval_horner(s.q, x);
    if (!(px > 0.0) || !(qx > 0.0))
        throw Error(ErrorKind::NonpositiveEvaluation,
                    "p(x) and q(x) must be positive (x=" + std::to_string(x) + ")");
    return ratio == Ratio::POverQ ? (x * px) / qx : (x * qx) / px;
}

/// One update, choosing whichever quotient moves x in `dir`. At a root both
/// quotients are one and x comes back unchanged.
[[nodiscard]] inline double mu_step(const PQSplit& s, double x, Direction dir) {
    const double px = eval_horner(s.p, x);
    const double qx = eval_horner(s.q, x);
    if (!(px > 0.0) || !(qx > 0.0))
        throw Error(ErrorKind::NonpositiveEvaluation,
                    "p(x) and q(x) must be positive (x=" + std::to_string(x) + ")");
    return apply_ratio(s, x, ratio_for(dir, px > qx));
}

/**
 * Iterates the update from x0 in one direction.
 *
 * Stops with FIXED_POINT when |f(x0)| <= f_tol; CONVERGED when the relative step
 * is at most x_tol, |f| <= f_tol, or the next step would not move strictly in
 * the trace direction (rounding floor at the root); DIVERGED above
 * divergence_threshold; HIT_ZERO below zero_threshold; MAX_ITERS otherwise.
 */
[[nodiscard]] inline IterationTrace run_sequence(const PQSplit& s, double x0, Direction dir,
                                                 const SolveConfig& cfg = {}) {
    if (!(x0 > 0.0)) throw Error(ErrorKind::NonpositiveStart, "x0 must be positive");
    IterationTrace tr;
    tr.direction = dir;

    const double p0 = eval_horner(s.p, x0);
    const double q0 = eval_horner(s.q, x0);
    if (!(p0 > 0.0) || !(q0 > 0.0))
        throw Error(ErrorKind::NonpositiveEvaluation, "p(x0) and q(x0) must be positive");
    tr.ratio = ratio_for(dir, p0 > q0);
    tr.iterates.push_back(x0);
    tr.residuals.push_back(p0 - q0);
    if (std::abs(p0 - q0) <= cfg.f_tol) {
        tr.status = TraceStatus::FixedPoint;
        return tr;
    }

    const bool up = dir == Direction::Up;
    double x = x0;
    for (long t = 0; t < cfg.max_iters; ++t) {
        const double next = apply_ratio(s, x, tr.ratio);
        if (!std::isfinite(next)) {
            tr.status = up ? TraceStatus::Diverged : TraceStatus::HitZero;
            return tr;
        }
        if (up ? !(next > x) : !(next < x)) {
            tr.status = TraceStatus::Converged;
            return tr;
        }
        const double fx = eval_horner(s.p, next) - eval_horner(s.q, next);
        tr.iterates.push_back(next);
        tr.residuals.push_back(fx);
        if (next > cfg.divergence_threshold) {
            tr.status = TraceStatus::Diverged;
            return tr;
        }
        if (next < cfg.zero_threshold) {
            tr.status = TraceStatus::HitZero;
            return tr;
        }
        if (std::abs(fx) <= cfg.f_tol || std::abs(next - x) <= cfg.x_tol * std::abs(x)) {
            tr.status = TraceStatus::Converged;
            return tr;
        }
        x = next;
    }
    tr.status = TraceStatus::MaxIters;
    return tr;
}

/**
 * Derivative of the contracting update map at a root alpha:
 * 1 - alpha * |p'(alpha) - q'(alpha)| / q(alpha), clamped to [0, 1].
 * Equals one at a multiple root.
 */
[[nodiscard]] inline double rate_at_root(const PQSplit& s, double alpha, double f_tol = 1e-12) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::NotARoot, "rate_at_root: alpha must be positive");
    const double pa = eval_horner(s.p, alpha);
    const double qa = eval_horner(s.q, alpha);
    if (std::abs(pa - qa) > f_tol * std::max(1.0, qa))
        throw Error(ErrorKind::NotARoot, "rate_at_root: " + std::to_string(alpha) + " is not a root of p - q");
    const double dp = eval_horner(derivative(s.p), alpha);
    const double dq = eval_horner(derivative(s.q), alpha);
    const double rate = 1.0 - alpha * std::abs(dp - dq) / qa;
    return std::clamp(rate, 0.0, 1.0);
}

/// Iterations needed to gain one decimal digit at linear rate `rate`.
[[nodiscard]] inline double iterations_per_digit(double rate) {
    if (!(rate > 0.0) || !(rate < 1.0))
        throw Error(ErrorKind::DegenerateRate, "iterations_per_digit: rate must lie in (0, 1)");
    return std::log(0.1) / std::log(rate);
}

/**
 * Geometric mean of e_{t+1}/e_t, e_t = |limit - x_t|, over the last ten steps
 * of a finished trace (fewer if the trace is shorter). Steps whose e_t is
 * already zero are skipped; a zero e_{t+1} contributes a zero ratio.
 */
[[nodiscard]] inline double empirical_rate(const IterationTrace& trace, double limit, std::size_t window = 10) {
    if (trace.status != TraceStatus::Converged)
        throw Error(ErrorKind::InsufficientTrace, "empirical_rate: trace did not converge");
    if (trace.iterates.size() < 2)
        throw Error(ErrorKind::InsufficientTrace, "empirical_rate: trace has no steps");
    const std::size_t n = trace.iterates.size();
    const std::size_t first = n - 1 > window ? n - 1 - window : 0;
    double log_sum = 0.0;
    std::size_t count = 0;
    for (std::size_t t = first; t + 1 < n; ++t) {
        const double e0 = std::abs(limit - trace.iterates[t]);
        const double e1 = std::abs(limit - trace.iterates[t + 1]);
        if (e0 == 0.0) continue;
        if (e1 == 0.0) return 0.0;
        log_sum += std::log(e1 / e0);
        ++count;
    }
    if (count == 0) throw Error(ErrorKind::InsufficientTrace, "empirical_rate: no nonzero errors in the tail");
    return std::exp(log_sum / static_cast<double>(count));
}

namespace detail {

inline Limit limit_of(const IterationTrace& tr) {
    switch (tr.status) {
        case TraceStatus::Converged:
        case TraceStatus::FixedPoint: return {Limit::Kind::Root, tr.last()};
        case TraceStatus::HitZero: return {Limit::Kind::Zero, 0.0};
        case TraceStatus::Diverged: return {Limit::Kind::Infinity, std::numeric_limits<double>::infinity()};
        case TraceStatus::MaxIters: return {Limit::Kind::Unconverged, tr.last()};
    }
    return {};
}

inline EndRates rates_for(const PQSplit& s, const IterationTrace& tr, double f_tol) {
    const Polynomial f = s.difference();
    EndRates r;
    const double x = tr.last();
    r.polished_root = newton_polish(f, x);
    // The monotone trace approaches its limit from one side, so a sound polish
    // moves forward. A short hop either way is rounding; a long one is rejected.
    const double move = r.polished_root - x;
    const double scale = std::max(1.0, x);
    const bool forward = tr.direction == Direction::Up ? move >= 0.0 : move <= 0.0;
    const bool keep = std::abs(move) <= 1e-6 * scale || (forward && std::abs(move) <= 1e-2 * scale);
    if (!keep) r.polished_root = x;
    try {
        r.theoretical = rate_at_root(s, r.polished_root, f_tol);
    } catch (const Error&) {
        // polished value still not a root at f_tol; leave the rate unset
    }
    if (r.theoretical) r.multiple_root_suspected = *r.theoretical > 1.0 - 1e-6;
    if (tr.status == TraceStatus::Converged) {
        try {
            r.empirical = empirical_rate(tr, r.polished_root);
        } catch (const Error&) {
        }
    }
    return r;
}

}  // namespace detail

/// Runs both sequences from x0 and reports the bracket they converge to.
[[nodiscard]] inline BracketResult solve_bracket(const PQSplit& s, double x0, const SolveConfig& cfg = {}) {
    BracketResult out;
    out.trace_up = run_sequence(s, x0, Direction::Up, cfg);
    out.trace_down = run_sequence(s, x0, Direction::Down, cfg);
    out.upper_limit = detail::limit_of(out.trace_up);
    out.lower_limit = detail::limit_of(out.trace_down);
    // Unconverged ends still get rates: a stall next to a multiple root reports a rate near one.
    auto has_estimate = [](const Limit& l) { return l.is_root() || l.kind == Limit::Kind::Unconverged; };
    if (has_estimate(out.lower_limit)) {
        out.lower_rates = detail::rates_for(s, out.trace_down, cfg.f_tol);
        out.rate_lower = out.lower_rates->theoretical;
    }
    if (has_estimate(out.upper_limit)) {
        out.upper_rates = detail::rates_for(s, out.trace_up, cfg.f_tol);
        out.rate_upper = out.upper_rates->theoretical;
    }
    return out;
}

struct ShiftRate {
    double shift = 0.0;
    double rate = 0.0;
    bool valid = false;  ///< shifted roots keep nonnegative real parts
};

/// Rate at the shifted target after replacing f(x) by f(x + shift) and re-splitting.
[[nodiscard]] inline ShiftRate shift_rate(const Polynomial& f, double target_root, double shift,
                                          std::span<const Complex> oracle_roots, double tol = 1e-8) {
    const double shifted_target = target_root - shift;
    if (!(shifted_target > 0.0))
        throw Error(ErrorKind::ShiftMakesRootNonpositive,
                    "shift " + std::to_string(shift) + " moves the target root to " + std::to_string(shifted_target));
    const Polynomial g = taylor_shift(f, shift);
    const PQSplit split = split_signs(g);
    // The target is only known to the caller's precision; polish it on g.
    const double alpha = newton_polish(split.difference(), shifted_target, 5);
    ShiftRate row;
    row.shift = shift;
    row.rate = rate_at_root(split, std::abs(alpha - shifted_target) <= 1e-8 * std::max(1.0, shifted_target)
                                       ? alpha
                                       : shifted_target);
    row.valid = std::all_of(oracle_roots.begin(), oracle_roots.end(),
                            [&](const Complex& r) { return r.real() - shift >= -tol; });
    return row;
}

struct ShiftScanRow {
    double shift = 0.0;
    std::optional<ShiftRate> result;  ///< empty when the shift makes the target nonpositive
};

/// shift_rate over a grid; shifts that push the target to or below zero give empty rows.
[[nodiscard]] inline std::vector<ShiftScanRow> shift_rate_scan(const Polynomial& f, double target_root,
                                                               std::span<const double> shifts,
                                                               std::span<const Complex> oracle_roots) {
    std::vector<ShiftScanRow> rows;
    rows.reserve(shifts.size());
    for (double s : shifts) {
        ShiftScanRow row{s, std::nullopt};
        try {
            row.result = shift_rate(f, target_root, s, oracle_roots);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ShiftMakesRootNonpositive) throw;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace mupoly
