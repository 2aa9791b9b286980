#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mupoly/error.hpp"
#include "mupoly/poly.hpp"

namespace mupoly {

// Reference root finder used to cross-check the multiplicative updates. It is a
// different algorithm family (simultaneous Weierstrass iteration) on purpose.

struct RootReport {
    std::vector<Complex> all_roots;      ///< with multiplicity, length == degree
    std::vector<double> real_roots_sorted;  ///< nonnegative real roots, nondecreasing
    double residual_max = 0.0;           ///< max |f(r)| over all_roots
    int iterations = 0;
};

inline constexpr double kImagTolerance = 1e-7;
inline constexpr double kClusterTolerance = 1e-6;

namespace detail {

/// True when every |f(z_i)| is within the rounding error of evaluating f there,
/// so further corrections are noise.
inline bool at_rounding_floor(const Polynomial& f, const std::vector<Complex>& z) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double gamma = 4.0 * (f.degree() + 1) * eps;
    std::vector<double> abs_coeffs(f.coeffs().begin(), f.coeffs().end());
    for (double& c : abs_coeffs) c = std::abs(c);
    const Polynomial magnitudes(std::move(abs_coeffs));
    for (const Complex& r : z)
        if (std::abs(eval_horner(f, r)) > gamma * eval_horner(magnitudes, std::abs(r))) return false;
    return true;
}

}  // namespace detail

/**
 * Durand-Kerner iteration from the staggered starts (0.4 + 0.9i)^k.
 *
 * Converged when the largest per-root correction drops below tol, or when every
 * residual is already at the rounding level of Horner evaluation. Roots with
 * |Im| < 1e-7 are taken as real, polished by Newton on f, and real roots closer
 * than 1e-6 are merged (the merged value is repeated once per member).
 */
[[nodiscard]] inline RootReport durand_kerner_roots(const Polynomial& f, int max_iters = 10000,
                                                    double tol = 1e-13) {
    if (f.degree() < 1) throw Error(ErrorKind::InvalidInput, "durand_kerner_roots: degree must be at least 1");
    const Polynomial g = monic(f);
    const auto n = static_cast<std::size_t>(g.degree());

    std::vector<Complex> z(n);
    const Complex seed{0.4, 0.9};
    Complex w{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        z[k] = w;
        w *= seed;
    }

    RootReport report;
    bool converged = false;
    int it = 0;
    for (; it < max_iters; ++it) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex denom{1.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            if (denom == Complex{0.0, 0.0}) denom = Complex{1e-14, 1e-14};
            const Complex step = eval_horner(g, z[i]) / denom;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[i])));
        }
        if (max_step < tol || detail::at_rounding_floor(g, z)) {
            converged = true;
            ++it;
            break;
        }
    }
    if (!converged)
        throw Error(ErrorKind::OracleNoConvergence,
                    "Durand-Kerner did not converge within " + std::to_string(max_iters) + " iterations");
    report.iterations = it;

    std::vector<double> reals;
    for (Complex& r : z) {
        if (std::abs(r.imag()) < kImagTolerance) {
            r = Complex{newton_polish(g, r.real(), 3), 0.0};
            reals.push_back(r.real());
        }
    }
    std::sort(reals.begin(), reals.end());

    // merge clusters, keep multiplicity
    std::vector<double> merged;
    for (std::size_t i = 0; i < reals.size();) {
        std::size_t j = i + 1;
        double sum = reals[i];
        while (j < reals.size() && reals[j] - reals[j - 1] < kClusterTolerance) sum += reals[j++];
        const double mean = sum / static_cast<double>(j - i);
        for (std::size_t k = i; k < j; ++k) merged.push_back(mean);
        i = j;
    }
    for (double r : merged)
        if (r >= 0.0) report.real_roots_sorted.push_back(r);

    std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    report.all_roots = std::move(z);
    for (const Complex& r : report.all_roots) report.residual_max = std::max(report.residual_max, std::abs(eval_horner(f, r)));
    return report;
}

/**
 * Index k with r_k <= x0 <= r_{k+1}, using r_0 = 0 and r_{m+1} = +inf. A start
 * within 1e-9 of a root counts as sitting on that root's index.
 */
[[nodiscard]] inline int bracket_index(std::span<const double> real_roots_sorted, double x0) {
    if (!(x0 > 0.0)) throw Error(ErrorKind::NonpositiveStart, "bracket_index: x0 must be positive");
    constexpr double on_root = 1e-9;
    int k = 0;
    for (double r : real_roots_sorted)
        if (r <= x0 + on_root) ++k;
    return k;
}

/// Plain bisection down to an interval of width tol.
[[nodiscard]] inline double refine_real_root_bisection(const Polynomial& f, double lo, double hi, double tol = 1e-12) {
    if (lo > hi) std::swap(lo, hi);
    double flo = eval_horner(f, lo);
    const double fhi = eval_horner(f, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw Error(ErrorKind::NoSignChange, "refine_real_root_bisection: f has the same sign at both ends");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = eval_horner(f, mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Tightens an approximate simple real root by bisection on [r - width, r + width]
/// when f changes sign there; otherwise returns r unchanged.
[[nodiscard]] inline double tighten_real_root(const Polynomial& f, double r, double width = 1e-6) {
    const double lo = r - width;
    const double hi = r + width;
    const double flo = eval_horner(f, lo);
    const double fhi = eval_horner(f, hi);
    if (flo != 0.0 && fhi != 0.0 && (flo > 0.0) == (fhi > 0.0)) return r;
    return refine_real_root_bisection(f, lo, hi, 1e-15 * std::max(1.0, std::abs(r)));
}

}  // namespace mupoly
