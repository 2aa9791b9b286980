// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "mupoly/mupoly.hpp"
#include "test_support.hpp"

using namespace mupoly;
namespace mt = mupoly::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

PQSplit quintic_split() { return split_signs(mt::quintic()); }

Outcome quintic_reproduction() {
    const auto t0 = Clock::now();
    const auto b = solve_bracket(quintic_split(), 2.5);
    const double elapsed = seconds_since(t0);
    bool inside = true;
    for (const auto* tr : {&b.trace_up, &b.trace_down})
        for (double x : tr->iterates) inside = inside && x >= 2.0 - 1e-9 && x <= 3.0 + 1e-9;
    const bool limits = b.lower_limit.is_root() && b.upper_limit.is_root() &&
                        std::abs(b.lower_limit.value - 2.0) <= 1e-6 && std::abs(b.upper_limit.value - 3.0) <= 1e-6;
    return {limits && inside && elapsed < 1.0,
            fmt::format("lower={:.12f} upper={:.12f} steps={}/{} inside={} time={:.4f}s", b.lower_limit.value,
                        b.upper_limit.value, b.trace_down.steps(), b.trace_up.steps(), inside, elapsed)};
}

Outcome rate_formula() {
    const double r3 = rate_at_root(quintic_split(), 3.0);
    const double r2 = rate_at_root(quintic_split(), 2.0);
    return {std::abs(r3 - 0.9706) <= 5e-4 && std::abs(r2 - 0.9867) <= 5e-4,
            fmt::format("rate(3)={:.6f} rate(2)={:.6f}", r3, r2)};
}

Outcome iterations_per_digit_check() {
    const double a = iterations_per_digit(0.9706);
    const double b = iterations_per_digit(0.9867);
    return {a >= 76 && a <= 79 && b >= 168 && b <= 173, fmt::format("ipd(0.9706)={:.3f} ipd(0.9867)={:.3f}", a, b)};
}

Outcome empirical_vs_theoretical() {
    const PQSplit s = quintic_split();
    const auto down = run_sequence(s, 2.5, Direction::Down);
    const auto up = run_sequence(s, 2.5, Direction::Up);
    const double e2 = empirical_rate(down, 2.0);
    const double e3 = empirical_rate(up, 3.0);
    const double t2 = rate_at_root(s, 2.0);
    const double t3 = rate_at_root(s, 3.0);
    return {std::abs(e2 - t2) <= 1e-2 && std::abs(e3 - t3) <= 1e-2,
            fmt::format("empirical(2)={:.6f} vs {:.6f}; empirical(3)={:.6f} vs {:.6f}", e2, t2, e3, t3)};
}

Outcome linear_case() {
    bool ok = true;
    double worst = 0.0;
    for (double b : {0.5, 2.0, 10.0}) {
        const double x0 = b / 2;
        const PQSplit s = split_signs(Polynomial{-b, 1});
        const auto up = run_sequence(s, x0, Direction::Up);
        ok = ok && up.iterates.size() >= 2 && up.iterates[1] == b;
        const auto down = run_sequence(s, x0, Direction::Down);
        if (down.iterates.size() < 7) {
            ok = false;
            continue;
        }
        for (int t = 0; t <= 6; ++t) {
            const double want = x0 * std::pow(x0 / b, std::pow(2.0, t) - 1.0);
            const double rel = std::abs(down.iterates[static_cast<std::size_t>(t)] - want) / want;
            worst = std::max(worst, rel);
        }
    }
    ok = ok && worst <= 1e-9;
    return {ok, fmt::format("one-step UP exact; worst DOWN relative error {:.3e}", worst)};
}

struct PropertyStats {
    int cases = 0;
    int containment_violations = 0;
    int monotonicity_violations = 0;
    int limit_mismatches = 0;
    int sentinel_mismatches = 0;
    int oracle_mismatches = 0;
    double worst_limit_error = 0.0;
    double worst_oracle_delta = 0.0;
    double seconds = 0.0;
};

PropertyStats run_random_brackets() {
    PropertyStats st;
    std::mt19937_64 rng(20240601);
    const auto t0 = Clock::now();
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = mt::random_case(rng);
        ++st.cases;
        const PQSplit s = split_signs(c.f);
        const auto b = solve_bracket(s, c.x0, mt::deep_config());
        const auto m = static_cast<int>(c.real_sorted.size());
        const double lo = c.k == 0 ? 0.0 : c.real_sorted[static_cast<std::size_t>(c.k - 1)];
        const double hi = c.k == m ? std::numeric_limits<double>::infinity() : c.real_sorted[static_cast<std::size_t>(c.k)];

        for (const auto* tr : {&b.trace_up, &b.trace_down}) {
            for (std::size_t t = 0; t < tr->iterates.size(); ++t) {
                const double x = tr->iterates[t];
                if (x < lo - 1e-9 || x > hi + 1e-9) ++st.containment_violations;
                if (t > 0) {
                    const double prev = tr->iterates[t - 1];
                    if (tr->direction == Direction::Up ? !(x > prev) : !(x < prev)) ++st.monotonicity_violations;
                }
            }
        }

        // sentinels exactly at the outer brackets
        const bool lower_sentinel = b.lower_limit.kind == Limit::Kind::Zero;
        const bool upper_sentinel = b.upper_limit.kind == Limit::Kind::Infinity;
        if (lower_sentinel != (c.k == 0) || upper_sentinel != (c.k == m)) ++st.sentinel_mismatches;

        // independent oracle: Durand-Kerner roots tightened by bisection
        std::vector<double> oracle;
        try {
            for (double r : durand_kerner_roots(c.f).real_roots_sorted) oracle.push_back(tighten_real_root(c.f, r));
        } catch (const Error&) {
            ++st.oracle_mismatches;
        }
        auto nearest = [&](double v) {
            double best = std::numeric_limits<double>::infinity();
            for (double r : oracle) best = std::min(best, std::abs(r - v));
            return best;
        };

        auto check_end = [&](const Limit& lim, bool sentinel_expected, double want) {
            if (sentinel_expected) return;
            if (!lim.is_root()) {
                ++st.limit_mismatches;
                return;
            }
            const double err = std::abs(lim.value - want);
            st.worst_limit_error = std::max(st.worst_limit_error, err);
            if (err > 1e-6) ++st.limit_mismatches;
            const double delta = nearest(lim.value);
            st.worst_oracle_delta = std::max(st.worst_oracle_delta, delta);
            if (delta > 1e-6) ++st.oracle_mismatches;
        };
        check_end(b.lower_limit, c.k == 0, lo);
        check_end(b.upper_limit, c.k == m, hi);
    }
    st.seconds = seconds_since(t0);
    return st;
}

Outcome bracket_property(const PropertyStats& st) {
    const bool ok = st.containment_violations == 0 && st.monotonicity_violations == 0 && st.limit_mismatches == 0 &&
                    st.sentinel_mismatches == 0 && st.seconds < 30.0;
    return {ok, fmt::format("{} cases: containment={} monotonicity={} limit={} sentinel={} worst_err={:.2e} time={:.2f}s",
                            st.cases, st.containment_violations, st.monotonicity_violations, st.limit_mismatches,
                            st.sentinel_mismatches, st.worst_limit_error, st.seconds)};
}

Outcome oracle_agreement(const PropertyStats& st) {
    return {st.oracle_mismatches == 0,
            fmt::format("{} cases: mismatches={} worst_delta={:.2e}", st.cases, st.oracle_mismatches, st.worst_oracle_delta)};
}

Outcome symmetric_identities() {
    std::mt19937_64 rng(777);
    int failures = 0;
    int checks = 0;
    auto mag_esym = [](const std::vector<Complex>& roots, int j) {
        if (j < 0 || j > static_cast<int>(roots.size())) return 0.0;
        std::vector<Complex> mags;
        for (const Complex& z : roots) mags.emplace_back(std::abs(z), 0.0);
        return esym(mags, j).real();
    };
    for (int set = 0; set < 100; ++set) {
        const auto roots = mt::random_conjugate_closed(rng);
        const int n = static_cast<int>(roots.size());
        for (std::size_t k = 0; k < roots.size(); ++k) {
            const Complex r = roots[k];
            const double a = std::abs(r);
            for (int j = 0; j <= n; ++j) {
                // removal recurrence
                const Complex lhs = esym_excluding(roots, j, k);
                const Complex rhs = esym(roots, j) - r * esym_excluding(roots, j - 1, k);
                ++checks;
                if (!mt::close_rel(lhs, rhs, 1e-8, mag_esym(roots, j) + a * mag_esym(roots, j - 1))) ++failures;
                if (j + 1 > n) continue;
                // shifted-difference identity
                const Complex l2 = esym(roots, j + 1) - r * esym(roots, j);
                const Complex r2 = esym_excluding(roots, j + 1, k) - r * r * esym_excluding(roots, j - 1, k);
                ++checks;
                if (!mt::close_rel(l2, r2, 1e-8,
                                   mag_esym(roots, j + 1) + a * mag_esym(roots, j) + a * a * mag_esym(roots, j - 1)))
                    ++failures;
            }
        }
        // nonnegativity on conjugate pairs with Re >= 0
        std::vector<Complex> pairs;
        for (const Complex& z : roots)
            if (z.imag() > 0) {
                pairs.emplace_back(std::abs(z.real()), z.imag());
                pairs.emplace_back(std::abs(z.real()), -z.imag());
            }
        for (int j = 0; j <= static_cast<int>(pairs.size()); ++j) {
            const Complex e = esym(pairs, j);
            const double scale = std::max(1.0, mag_esym(pairs, j));
            ++checks;
            if (std::abs(e.imag()) > 1e-8 * scale || e.real() < -1e-8 * scale) ++failures;
        }
    }
    return {failures == 0, fmt::format("{} identity checks, {} failures", checks, failures)};
}

Outcome padding_slows() {
    const PQSplit plain = quintic_split();
    const PQSplit padded = pad_split(plain, Polynomial{0, 0, 1});
    const double p2 = rate_at_root(plain, 2.0), d2 = rate_at_root(padded, 2.0);
    const double p3 = rate_at_root(plain, 3.0), d3 = rate_at_root(padded, 3.0);
    return {d2 > p2 && d3 > p3, fmt::format("alpha=2: {:.6f} -> {:.6f}; alpha=3: {:.6f} -> {:.6f}", p2, d2, p3, d3)};
}

Outcome shift_acceleration() {
    const auto roots = durand_kerner_roots(mt::quintic()).all_roots;
    const std::vector<double> shifts{0.0, 0.5};
    const auto rows = shift_rate_scan(mt::quintic(), 3.0, shifts, roots);
    if (!rows[0].result || !rows[1].result) return {false, "scan rows missing"};
    const auto& s0 = *rows[0].result;
    const auto& s5 = *rows[1].result;
    const bool ok = std::abs(s0.rate - 0.9706) <= 5e-4 && s5.rate < s0.rate && s5.valid;
    return {ok, fmt::format("rate(s=0)={:.6f} rate(s=0.5)={:.6f} valid={}", s0.rate, s5.rate, s5.valid)};
}

}  // namespace

int main() {
    const PropertyStats stats = run_random_brackets();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 quintic reproduction", quintic_reproduction},
        {"2 rate formula", rate_formula},
        {"3 iterations per digit", iterations_per_digit_check},
        {"4 empirical vs theoretical rate", empirical_vs_theoretical},
        {"5 linear case", linear_case},
        {"6 bracket invariance and convergence", [&] { return bracket_property(stats); }},
        {"7 symmetric-function identities", symmetric_identities},
        {"8 oracle agreement", [&] { return oracle_agreement(stats); }},
        {"9 padding slows convergence", padding_slows},
        {"10 shift acceleration", shift_acceleration},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
