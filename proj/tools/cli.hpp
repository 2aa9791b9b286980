#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mupoly/mupoly.hpp"

namespace mupoly::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNoConvergence = 2 };

struct PolySource {
    std::string coeffs;
    std::string roots;
};

namespace detail {

inline CLI::Option* add_poly_options(CLI::App* cmd, PolySource& src) {
    auto* c = cmd->add_option("--coeffs", src.coeffs, "ascending coefficients c0,c1,...,cn");
    auto* r = cmd->add_option("--roots", src.roots, "roots, complex entries as a+bi");
    c->excludes(r);
    return c;
}

/// Builds f from exactly one of --coeffs / --roots.
inline Polynomial read_polynomial(const PolySource& src, std::vector<Complex>* roots_out = nullptr) {
    if (src.coeffs.empty() == src.roots.empty())
        throw Error(ErrorKind::InvalidInput, "exactly one of --coeffs or --roots is required");
    if (!src.coeffs.empty()) {
        std::vector<double> c;
        try {
            c = io::parse_real_list(src.coeffs);
        } catch (const Error& e) {
            throw Error(ErrorKind::InvalidInput, std::string("malformed coefficients: ") + e.what());
        }
        Polynomial f(std::move(c));
        if (f.is_zero()) throw Error(ErrorKind::InvalidInput, "malformed coefficients: polynomial is identically zero");
        return f;
    }
    std::vector<Complex> roots;
    try {
        roots = io::parse_complex_list(src.roots);
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed roots: ") + e.what());
    }
    if (roots_out) *roots_out = roots;
    return from_roots(roots);
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidInput, "cannot open output file '" + path + "'");
    file << text;
}

}  // namespace detail

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Multiplicative-update root finding for polynomials with nonnegative-real-part roots", "mupoly"};
    app.require_subcommand(1);

    PolySource solve_src;
    double x0 = 0.0;
    SolveConfig cfg;
    std::string out_path;
    std::string trace_path;
    auto* solve = app.add_subcommand("solve", "run both multiplicative-update sequences from x0");
    detail::add_poly_options(solve, solve_src);
    solve->add_option("--x0", x0, "starting point (> 0)")->required();
    solve->add_option("--x-tol", cfg.x_tol, "relative step tolerance");
    solve->add_option("--f-tol", cfg.f_tol, "residual tolerance");
    solve->add_option("--max-iters", cfg.max_iters, "iteration budget per sequence");
    solve->add_option("--out", out_path, "JSON report path (default stdout)");
    solve->add_option("--trace", trace_path, "CSV trace path");

    PolySource roots_src;
    std::string roots_out;
    auto* roots = app.add_subcommand("roots", "list reference roots and check the root condition");
    detail::add_poly_options(roots, roots_src);
    roots->add_option("--out", roots_out, "JSON output path (default stdout)");

    PolySource scan_src;
    double target = 0.0;
    std::string shifts_text;
    std::string scan_out;
    auto* scan = app.add_subcommand("shift-scan", "tabulate the convergence rate at a root under shifts");
    detail::add_poly_options(scan, scan_src);
    scan->add_option("--target", target, "real root whose rate is tracked")->required();
    scan->add_option("--shifts", shifts_text, "shift grid lo:step:hi")->required();
    scan->add_option("--out", scan_out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        if (*solve) {
            if (!(x0 > 0.0)) {
                err << "error: x0 must be positive\n";
                return kInputError;
            }
            SolveRequest req;
            req.f = detail::read_polynomial(solve_src, &req.input_roots);
            req.source = solve_src.coeffs.empty() ? "roots" : "coeffs";
            req.x0 = x0;
            req.config = cfg;
            const SolveReport rep = solve_report(req);
            detail::emit(to_json(rep), out_path, out);
            if (!trace_path.empty()) detail::emit(trace_csv(rep), trace_path, out);
            if (rep.hit_max_iters()) {
                err << "error: iteration budget exhausted before convergence\n";
                return kNoConvergence;
            }
            if (!rep.oracle) {
                err << "error: reference root finder failed: " << rep.oracle_error << "\n";
                return kNoConvergence;
            }
            return kOk;
        }
        if (*roots) {
            const Polynomial f = detail::read_polynomial(roots_src);
            if (f.degree() < 1) throw Error(ErrorKind::InvalidInput, "polynomial must have degree at least 1");
            const RootReport rr = durand_kerner_roots(f);
            detail::emit(roots_json(f, rr, verify_assumption1(f, rr.all_roots)), roots_out, out);
            return kOk;
        }
        if (*scan) {
            const Polynomial f = detail::read_polynomial(scan_src);
            const auto shifts = io::parse_grid(shifts_text);
            const RootReport rr = durand_kerner_roots(f);
            const PQSplit split = split_signs(f);
            try {
                (void)rate_at_root(split, target);
            } catch (const Error&) {
                err << "error: target " << io::format_real(target) << " is not a root of the polynomial\n";
                return kInputError;
            }
            const auto rows = shift_rate_scan(f, target, shifts, rr.all_roots);
            for (const auto& row : rows)
                if (!row.result)
                    err << "warning: shift " << io::format_real(row.shift)
                        << " omitted (target root would be nonpositive)\n";
            detail::emit(shift_scan_csv(rows), scan_out, out);
            return kOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::OracleNoConvergence ? kNoConvergence : kInputError;
    }
    return kInputError;
}

}  // namespace mupoly::cli
