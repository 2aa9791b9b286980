#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mupoly/error.hpp"

namespace mupoly {

using Complex = std::complex<double>;

/**
 * Real polynomial stored with ascending coefficients: coeffs()[j] multiplies x^j.
 *
 * Trailing zeros are trimmed on construction, so the last stored coefficient is
 * nonzero unless the polynomial is identically zero (stored as {0}).
 */
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}

    explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] const std::vector<double>& coeff_vector() const noexcept { return coeffs_; }

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

    [[nodiscard]] double leading() const noexcept { return coeffs_.back(); }

    /// Coefficient of x^j, zero outside the stored range.
    [[nodiscard]] double operator[](int j) const noexcept {
        if (j < 0 || j > degree()) return 0.0;
        return coeffs_[static_cast<std::size_t>(j)];
    }

    [[nodiscard]] double max_abs_coeff() const noexcept {
        double m = 0.0;
        for (double c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
        if (coeffs_.empty()) coeffs_.push_back(0.0);
    }

    std::vector<double> coeffs_;
};

/// Horner evaluation; works for real or complex arguments.
template <typename T>
[[nodiscard]] T eval_horner(const Polynomial& f, const T& x) {
    auto c = f.coeffs();
    T acc = T(c.back());
    for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * x + T(c[j]);
    return acc;
}

[[nodiscard]] inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1), 0.0);
    for (int j = 0; j < static_cast<int>(out.size()); ++j) out[static_cast<std::size_t>(j)] = a[j] + b[j];
    return Polynomial(std::move(out));
}

[[nodiscard]] inline Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1), 0.0);
    for (int j = 0; j < static_cast<int>(out.size()); ++j) out[static_cast<std::size_t>(j)] = a[j] - b[j];
    return Polynomial(std::move(out));
}

[[nodiscard]] inline Polynomial scaled(const Polynomial& f, double factor) {
    std::vector<double> out(f.coeffs().begin(), f.coeffs().end());
    for (double& c : out) c *= factor;
    return Polynomial(std::move(out));
}

/// Divides through by the leading coefficient. The zero polynomial is returned as-is.
[[nodiscard]] inline Polynomial monic(const Polynomial& f) {
    if (f.is_zero() || f.leading() == 1.0) return f;
    return scaled(f, 1.0 / f.leading());
}

[[nodiscard]] inline Polynomial derivative(const Polynomial& f) {
    if (f.degree() == 0) return Polynomial{};
    std::vector<double> out(static_cast<std::size_t>(f.degree()));
    for (int j = 1; j <= f.degree(); ++j) out[static_cast<std::size_t>(j - 1)] = j * f[j];
    return Polynomial(std::move(out));
}

/// g(x) = f(x + s), by repeated synthetic division (Horner shift), O(n^2).
[[nodiscard]] inline Polynomial taylor_shift(const Polynomial& f, double s) {
    std::vector<double> c(f.coeffs().begin(), f.coeffs().end());
    const std::size_t n = c.size() - 1;
    // After pass i, c[i] holds the i-th Taylor coefficient of f at s.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n; j-- > i;) c[j] += s * c[j + 1];
    return Polynomial(std::move(c));
}

namespace detail {

/// Elementary symmetric functions e_0..e_n by adding one root at a time.
inline std::vector<Complex> esym_all(std::span<const Complex> roots) {
    std::vector<Complex> e(roots.size() + 1, Complex{0.0, 0.0});
    e[0] = 1.0;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j >= 1; --j) e[j] += roots[i] * e[j - 1];
    return e;
}

}  // namespace detail

/// j-th elementary symmetric function of the roots (sum of all j-fold products).
[[nodiscard]] inline Complex esym(std::span<const Complex> roots, int j) {
    if (j < 0 || j > static_cast<int>(roots.size()))
        throw Error(ErrorKind::IndexOutOfRange,
                    "esym: j=" + std::to_string(j) + " outside [0, " + std::to_string(roots.size()) + "]");
    return detail::esym_all(roots)[static_cast<std::size_t>(j)];
}

/// j-th elementary symmetric function of the roots with root k removed; 0 for j
/// outside [0, n-1].
[[nodiscard]] inline Complex esym_excluding(std::span<const Complex> roots, int j, std::size_t k) {
    if (k >= roots.size())
        throw Error(ErrorKind::BadIndex, "esym_excluding: root index " + std::to_string(k) + " out of range");
    if (j < 0 || j > static_cast<int>(roots.size()) - 1) return Complex{0.0, 0.0};
    std::vector<Complex> rest;
    rest.reserve(roots.size() - 1);
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (i != k) rest.push_back(roots[i]);
    return detail::esym_all(rest)[static_cast<std::size_t>(j)];
}

/**
 * Monic real polynomial with the given roots.
 *
 * Non-real roots must come in conjugate pairs; each is matched to its nearest
 * unused conjugate, and the match must lie within 1e-9.
 */
[[nodiscard]] inline Polynomial from_roots(std::span<const Complex> roots) {
    constexpr double pair_tol = 1e-9;
    constexpr double real_tol = 1e-12;

    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i] || std::abs(roots[i].imag()) <= real_tol) continue;
        used[i] = true;
        const Complex target = std::conj(roots[i]);
        std::size_t best = roots.size();
        double best_dist = pair_tol;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(roots[j] - target);
            if (d <= best_dist) {
                best = j;
                best_dist = d;
            }
        }
        if (best == roots.size())
            throw Error(ErrorKind::UnpairedComplexRoot,
                        "root (" + std::to_string(roots[i].real()) + ", " + std::to_string(roots[i].imag()) +
                            ") has no conjugate partner");
        used[best] = true;
    }

    const auto e = detail::esym_all(roots);
    const std::size_t n = roots.size();
    std::vector<double> c(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        // x^j carries (-1)^(n-j) e_{n-j}
        const Complex v = ((n - j) % 2 == 0 ? 1.0 : -1.0) * e[n - j];
        if (std::abs(v.imag()) > pair_tol * std::max(1.0, std::abs(v)))
            throw Error(ErrorKind::UnpairedComplexRoot, "from_roots: coefficient has imaginary residue");
        c[j] = v.real();
    }
    return Polynomial(std::move(c));
}

[[nodiscard]] inline Polynomial from_roots(std::initializer_list<Complex> roots) {
    return from_roots(std::span<const Complex>(roots.begin(), roots.size()));
}

/// A few Newton steps on f from x; stops when the step stalls or no longer shrinks f.
[[nodiscard]] inline double newton_polish(const Polynomial& f, double x, int max_steps = 50) {
    const Polynomial df = derivative(f);
    double fx = eval_horner(f, x);
    for (int i = 0; i < max_steps && fx != 0.0; ++i) {
        const double d = eval_horner(df, x);
        if (d == 0.0 || !std::isfinite(d)) break;
        const double next = x - fx / d;
        const double fnext = eval_horner(f, next);
        if (!std::isfinite(next) || std::abs(fnext) >= std::abs(fx)) break;
        x = next;
        fx = fnext;
    }
    return x;
}

}  // namespace mupoly
