#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "mupoly/error.hpp"
#include "mupoly/poly.hpp"

namespace mupoly {

/// f = p - q with p and q carrying only nonnegative coefficients.
struct PQSplit {
    Polynomial p;
    Polynomial q;

    [[nodiscard]] Polynomial difference() const { return p - q; }
};

/**
 * Routes each coefficient of monic(f) by sign: positive ones go to p, the
 * magnitudes of negative ones go to q. Under the nonnegative-real-part root
 * condition this coincides with the even/odd offset split from the leading term.
 */
[[nodiscard]] inline PQSplit split_signs(const Polynomial& f) {
    if (f.is_zero()) throw Error(ErrorKind::DegenerateSplit, "cannot split the zero polynomial");
    const Polynomial g = monic(f);
    std::vector<double> p(g.coeffs().size(), 0.0);
    std::vector<double> q(g.coeffs().size(), 0.0);
    for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
        const double c = g.coeffs()[j];
        if (c > 0.0)
            p[j] = c;
        else if (c < 0.0)
            q[j] = -c;
    }
    PQSplit s{Polynomial(std::move(p)), Polynomial(std::move(q))};
    if (s.p.is_zero()) throw Error(ErrorKind::DegenerateSplit, "split has no positive part (p is identically zero)");
    if (s.q.is_zero()) throw Error(ErrorKind::DegenerateSplit, "split has no negative part (q is identically zero)");
    return s;
}

/// (p + d, q + d); the difference is unchanged but the updates slow down.
[[nodiscard]] inline PQSplit pad_split(const PQSplit& s, const Polynomial& d) {
    for (double c : d.coeffs())
        if (c < 0.0) throw Error(ErrorKind::NegativePadding, "padding polynomial has a negative coefficient");
    return PQSplit{s.p + d, s.q + d};
}

/// Necessary condition for nonnegative-real-part roots: signs alternate from the
/// leading term down, zeros allowed.
[[nodiscard]] inline bool check_alternating(const Polynomial& f) {
    if (f.is_zero()) return false;
    const int n = f.degree();
    const double lead_sign = f.leading() > 0.0 ? 1.0 : -1.0;
    for (int i = 0; i <= n; ++i) {
        const double c = lead_sign * f[n - i];
        if (c == 0.0) continue;
        const bool want_positive = (i % 2 == 0);
        if ((c > 0.0) != want_positive) return false;
    }
    return true;
}

struct AssumptionReport {
    bool satisfied = false;
    std::vector<Complex> roots;
    double min_real_part = 0.0;
    double max_real_part = 0.0;
    bool alternating_signs = false;
};

/// Every root has Re >= -tol and at least one has Re > tol.
[[nodiscard]] inline AssumptionReport verify_assumption1(const Polynomial& f, std::span<const Complex> roots,
                                                         double tol = 1e-8) {
    AssumptionReport r;
    r.roots.assign(roots.begin(), roots.end());
    r.alternating_signs = check_alternating(f);
    if (roots.empty()) return r;
    r.min_real_part = std::numeric_limits<double>::infinity();
    r.max_real_part = -std::numeric_limits<double>::infinity();
    for (const Complex& z : roots) {
        r.min_real_part = std::min(r.min_real_part, z.real());
        r.max_real_part = std::max(r.max_real_part, z.real());
    }
    r.satisfied = r.min_real_part >= -tol && r.max_real_part > tol;
    return r;
}

}  // namespace mupoly
