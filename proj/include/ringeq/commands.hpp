#pragma once

// The three front-end commands as library calls. Each returns an exit code
// (0 ok, 1 usage, 2 domain, 3 convergence), the run record and a message;
// nothing here touches argv.

#include <cstdlib>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "ringeq/contact.hpp"
#include "ringeq/error.hpp"
#include "ringeq/geometry.hpp"
#include "ringeq/io.hpp"
#include "ringeq/solver.hpp"

namespace ringeq::cli {

inline constexpr const char* kVersion = "ringeq 1.0.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2, kConvergence = 3 };

class UsageError : public Error {
public:
    using Error::Error;
};

struct CommandResult {
    int exit_code = kOk;
    io::RunRecord record;
    std::string message;
};

/// RING_EQ_TOL if set to a positive number, else 1e-10.
inline double residual_tolerance_from_env() {
    const char* v = std::getenv("RING_EQ_TOL");
    if (!v || !*v) return 1e-10;
    char* end = nullptr;
    const double t = std::strtod(v, &end);
    if (end == v || *end != '\0' || !(t > 0.0)) throw UsageError(std::string("RING_EQ_TOL must be a positive number, got '") + v + "'");
    return t;
}

struct ShapeArgs {
    int n = 2;
    double sigma = 0.0;
    std::size_t samples = 2000;
    std::vector<std::string> formats{"csv", "svg"};
    std::string out = "shape";  ///< path prefix
    double tol = 1e-10;
};

struct ContactShapeArgs {
    int n = 2;
    double sigma_hat = 0.0;
    std::size_t samples = 4096;
    std::vector<std::string> formats{"csv", "svg"};
    std::string out = "contact_shape";
    double tol = 1e-10;
};

struct ContactTableArgs {
    int n_min = 2;
    int n_max = 15;
    std::string out = "contact_table.csv";
    double tol = 1e-10;
    bool alternative = true;  ///< also search the alternative contact system
};

namespace detail {

template <class Body>
CommandResult guarded(io::RunRecord rec, Body&& body) {
    CommandResult res;
    res.record = std::move(rec);
    try {
        body(res);
    } catch (const UsageError& e) {
        res.exit_code = kUsage;
        res.message = e.what();
    } catch (const NoConvergence& e) {
        res.exit_code = kConvergence;
        res.message = e.what();
        res.record.output("error", e.what());
        res.record.output("best_residual", e.best_residual());
    } catch (const DomainError& e) {
        res.exit_code = kDomain;
        res.message = e.what();
        res.record.output("error", e.what());
    }
    return res;
}

inline void check_formats(const std::vector<std::string>& formats) {
    for (const auto& f : formats) {
        if (f != "csv" && f != "svg") throw UsageError("unknown format '" + f + "' (expected csv or svg)");
    }
}

inline void write_shape_files(const ShapePolyline& poly, const std::vector<std::string>& formats,
                              const std::string& prefix, io::RunRecord& rec) {
    for (const auto& f : formats) {
        const std::string path = prefix + "." + f;
        io::atomic_write(path, f == "csv" ? io::shape_csv(poly) : io::shape_svg(poly));
        rec.files.emplace_back(f, path);
    }
}

inline void write_record(const std::string& path, io::RunRecord& rec) {
    rec.files.emplace_back("record", path);
    io::atomic_write(path, rec.text());
}

inline void record_curve(io::RunRecord& rec, const CurvatureSolution& sol) {
    rec.output("family", family_name(sol.family()));
    rec.output("mu", sol.params().mu);
    rec.output("epsilon", sol.params().epsilon);
    rec.output("period", sol.period());
    if (const auto* m = sol.case_i_moduli()) {
        rec.output("k1", m->k1);
        rec.output("lambda1", m->lambda1);
        rec.output("T1", m->T1);
    } else if (const auto* m2 = sol.case_ii_moduli()) {
        rec.output("k2", m2->k2);
        rec.output("lambda2", m2->lambda2);
        rec.output("T2", m2->T2);
    }
}

}  // namespace detail

/// Solve the mode-n equilibrium at sigma and export the sampled shape.
inline CommandResult cmd_shape(const ShapeArgs& a) {
    io::RunRecord rec{"shape", kVersion, {}, {}, {}};
    rec.input("n", a.n);
    rec.input("sigma", a.sigma);
    rec.input("samples", static_cast<int>(a.samples));
    rec.input("tol", a.tol);
    return detail::guarded(rec, [&](CommandResult& res) {
        detail::check_formats(a.formats);
        if (a.n < 2) throw UsageError("--n must be >= 2");
        if (a.samples < 16 * static_cast<std::size_t>(a.n)) throw UsageError("--samples must be at least 16 n");
        EquilibriumOptions opt;
        opt.tol = a.tol;
        const auto st = solve_equilibrium(a.n, a.sigma, opt);
        const auto sol = st.solution();
        const auto poly = sample_shape(sol, a.n, a.samples);
        auto& r = res.record;
        r.output("eta", st.eta);
        r.output("q", st.q);
        const double alpha = 4.0 * st.sigma / (st.eta * std::abs(st.eta) + st.q * st.q) - st.q;
        r.output("alpha", alpha);
        r.output("beta", alpha + 2.0 * st.q);
        r.output("rotation_sign", st.rotation_sign);
        detail::record_curve(r, sol);
        r.output("residual_closure", st.residuals.closure);
        r.output("residual_length", st.residuals.length);
        r.output("closure_error", poly.diagnostics.closure_error);
        r.output("slope_closure_error", poly.diagnostics.slope_closure_error);
        r.output("length_error", poly.diagnostics.length_error);
        r.output("self_intersecting", poly.diagnostics.self_intersecting);
        detail::write_shape_files(poly, a.formats, a.out, r);
        detail::write_record(a.out + ".record", r);
        res.message = std::string("solved n=") + std::to_string(a.n) +
                      (poly.diagnostics.self_intersecting ? ", self-intersecting" : ", simple");
    });
}

/// Contact pressures for n_min..n_max; a failing row is recorded and the
/// table continues. Exit code 3 if any row failed.
inline CommandResult cmd_contact_table(const ContactTableArgs& a) {
    io::RunRecord rec{"contact-table", kVersion, {}, {}, {}};
    rec.input("n_min", a.n_min);
    rec.input("n_max", a.n_max);
    rec.input("tol", a.tol);
    return detail::guarded(rec, [&](CommandResult& res) {
        if (a.n_min < 2) throw UsageError("--n-min must be >= 2");
        if (a.n_min > a.n_max) throw UsageError("--n-min must not exceed --n-max");
        std::string csv = "n,sigma_cn,eta,q,s1_minus,s1_plus,residuals\n";
        auto& r = res.record;
        int failures = 0;
        ContactOptions opt;
        opt.equilibrium_tol = a.tol;
        opt.tol = std::max(1e-9, a.tol);
        // rows are independent; solve them concurrently, record them in order
        struct Row {
            std::optional<ContactSolution> sol;
            std::string error;
            std::optional<AlternativeSystemReport> alt;
        };
        std::vector<std::future<Row>> jobs;
        for (int n = a.n_min; n <= a.n_max; ++n) {
            jobs.push_back(std::async(std::launch::async, [n, opt, alt = a.alternative] {
                Row row;
                try {
                    row.sol = solve_contact_pressure(n, opt);
                } catch (const Error& e) {
                    row.error = e.what();
                }
                if (alt) row.alt = attempt_alternative_contact(n);
                return row;
            }));
        }
        for (int n = a.n_min; n <= a.n_max; ++n) {
            const std::string key = "n" + std::to_string(n);
            const Row row = jobs[static_cast<std::size_t>(n - a.n_min)].get();
            if (row.sol) {
                const auto& c = *row.sol;
                const double worst =
                    std::max({std::abs(c.residuals[0]), std::abs(c.residuals[1]), std::abs(c.residuals[2])});
                csv += std::to_string(n) + ',' + io::fmt(c.sigma_cn) + ',' + io::fmt(c.eta) + ',' + io::fmt(c.q) + ',' +
                       io::fmt(c.s1_minus) + ',' + io::fmt(c.s1_plus) + ',' + io::fmt(worst) + '\n';
                r.output(key + ".status", "ok");
                r.output(key + ".sigma_cn", c.sigma_cn);
                r.output(key + ".residual_closure", c.residuals[0]);
                r.output(key + ".residual_length", c.residuals[1]);
                r.output(key + ".residual_contact", c.residuals[2]);
                if (n == 2) r.output(key + ".generic_contact_residual", c.generic_contact_residual);
            } else {
                ++failures;
                csv += std::to_string(n) + ",nan,nan,nan,nan,nan,nan\n";
                r.output(key + ".status", "error: " + row.error);
            }
            if (row.alt) {
                r.output(key + ".alternative", row.alt->root_found ? "root_found" : "no_root");
                r.output(key + ".alternative_valid_samples", row.alt->valid_samples);
                r.output(key + ".alternative_min_abs_residual", row.alt->min_abs_residual);
                r.output(key + ".alternative_note", row.alt->note);
            }
        }
        io::atomic_write(a.out, csv);
        r.files.emplace_back("csv", a.out);
        r.output("failures", failures);
        detail::write_record(a.out + ".record", r);
        if (failures > 0) res.exit_code = kConvergence;
        res.message = std::to_string(a.n_max - a.n_min + 1 - failures) + " rows solved, " + std::to_string(failures) +
                      " failed";
    });
}

/// Lines-of-contact shape at sigma_hat >= sigma_cn(n).
inline CommandResult cmd_contact_shape(const ContactShapeArgs& a) {
    io::RunRecord rec{"contact-shape", kVersion, {}, {}, {}};
    rec.input("n", a.n);
    rec.input("sigma", a.sigma_hat);
    rec.input("samples", static_cast<int>(a.samples));
    rec.input("tol", a.tol);
    return detail::guarded(rec, [&](CommandResult& res) {
        detail::check_formats(a.formats);
        if (a.n < 2) throw UsageError("--n must be >= 2");
        if (a.samples < 16 * static_cast<std::size_t>(a.n)) throw UsageError("--samples must be at least 16 n");
        ContactOptions opt;
        opt.equilibrium_tol = a.tol;
        opt.tol = std::max(1e-9, a.tol);
        const auto base = solve_contact_pressure(a.n, opt);
        const auto shape = build_contact_line_shape(base, a.sigma_hat, a.samples);
        const auto bal = total_balance_check(shape);
        const auto& j = shape.jump_report;
        auto& r = res.record;
        r.output("sigma_cn", base.sigma_cn);
        r.output("scale", shape.scale);
        r.output("segment_length", shape.segment_length);
        r.output("piece_length", shape.piece_length);
        r.output("total_length", shape.total_length);
        r.output("closure_error", shape.polyline.diagnostics.closure_error);
        r.output("self_intersecting", shape.polyline.diagnostics.self_intersecting);
        r.output("M_b", j.M_b);
        r.output("N_b", j.N_b);
        r.output("Q_b_plus", j.Q_b_plus);
        r.output("Q_b_minus", j.Q_b_minus);
        r.output("M_l", j.M_l);
        r.output("N_l", j.N_l);
        r.output("Q_l", j.Q_l);
        r.output("moment_jump", j.moment_jump);
        const auto jc = junction_continuity(shape);
        r.output("junction_tangent_jump", jc.max_tangent_jump);
        r.output("junction_position_gap", jc.max_position_gap);
        r.output("force_residual", bal.force_residual);
        r.output("moment_residual", bal.moment_residual);
        r.output("total_force_residual", bal.total_force_residual);
        r.output("total_moment_residual", bal.total_moment_residual);
        r.output("conductivity_ratio", conductivity_ratio(base.sigma_cn, std::max(a.sigma_hat, base.sigma_cn)));
        detail::write_shape_files(shape.polyline, a.formats, a.out, r);
        detail::write_record(a.out + ".record", r);
        res.message = "built " + std::to_string(a.n) + "-fold shape with lines of contact";
    });
}

}  // namespace ringeq::cli
