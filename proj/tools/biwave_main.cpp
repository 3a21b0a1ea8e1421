// biwave: identity verification suites, transform application, field solves
// and spinor sampling over the biquaternion library, with machine-readable
// JSON/CSV output.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <atomic>
#include <mutex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bq/io.hpp"
#include "bq/physics.hpp"
#include "bq/verify.hpp"
#include "bq/waves.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

// Writes rows computed by `make_row` in deterministic index order.  Row
// evaluations run on BIWAVE_THREADS workers (hardware concurrency when the
// variable is unset); the first worker exception, if any, is rethrown after
// the pool drains.
template <typename MakeRow>
void emit_rows(std::ostream& os, std::size_t count, const MakeRow& make_row) {
    unsigned threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    if (const char* env = std::getenv("BIWAVE_THREADS")) {
        const long requested = std::strtol(env, nullptr, 10);
        if (requested >= 1) threads = static_cast<unsigned>(std::min(requested, 64L));
    }
    std::vector<std::string> rows(count);
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) rows[i] = make_row(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= count) return;
                    try {
                        rows[i] = make_row(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next.store(count);
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }
    for (const std::string& r : rows) os << r << '\n';
}

// Solver errors surface with the grid point that triggered them.
template <typename F>
auto at_point(const bq::SpacetimePoint& p, const F& f) {
    try {
        return f();
    } catch (const bq::error& e) {
        std::ostringstream os;
        os << e.what() << " at point (tau=" << p.tau << ", x=[" << p.x.x << ", " << p.x.y
           << ", " << p.x.z << "])";
        throw bq::error(os.str());
    }
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bq::parse_error("cannot open output file: " + path);
    return out;
}

bq::Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bq::parse_error("cannot open config file: " + path);
    bq::Json j = bq::Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw bq::parse_error("malformed JSON in " + path);
    return j;
}

void append_bq_columns(std::string& row, const bq::Biquaternion& f) {
    const bq::Complex comps[4] = {f.s, f.v.x, f.v.y, f.v.z};
    for (const auto& c : comps) {
        row += ',';
        row += bq::fmt_double(c.real());
        row += ',';
        row += bq::fmt_double(c.imag());
    }
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string suite = "all";
    long n = 1000;
    std::uint64_t seed = 0;
    std::string out_path;
    std::optional<double> tol;
};

int cmd_verify(const VerifyOptions& opt) {
    const std::vector<bq::SuiteReport> reports = bq::run_suites(opt.suite, opt.n, opt.seed);
    bool pass = true;
    bq::Json jsuites = bq::Json::array();
    for (const auto& rep : reports) {
        bq::Json jids = bq::Json::array();
        bool suite_pass = true;
        for (const auto& id : rep.identities) {
            const double tol = opt.tol.value_or(id.tolerance);
            const bool ok = id.max_residual <= tol;
            suite_pass = suite_pass && ok;
            jids.push_back(bq::Json{{"name", id.name},
                                    {"max_residual", id.max_residual},
                                    {"tolerance", tol},
                                    {"cases", id.cases},
                                    {"pass", ok}});
        }
        pass = pass && suite_pass;
        jsuites.push_back(
            bq::Json{{"suite", rep.suite}, {"pass", suite_pass}, {"identities", jids}});
    }
    bq::Json report{{"schema", "1"},
                    {"command", "verify"},
                    {"suite", opt.suite},
                    {"n", opt.n},
                    {"seed", opt.seed},
                    {"suites", jsuites},
                    {"pass", pass}};
    if (opt.tol) report["tolerance_override"] = *opt.tol;
    const std::string text = report.dump(2) + "\n";
    if (!opt.out_path.empty())
        open_output(opt.out_path) << text;
    else
        std::cout << text;
    if (!pass) {
        for (const auto& rep : reports)
            for (const auto& id : rep.identities)
                if (id.max_residual > opt.tol.value_or(id.tolerance))
                    std::cerr << "verify: FAILED " << rep.suite << "/" << id.name
                              << " max_residual=" << id.max_residual << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct TransformOptions {
    std::string config_path;
    std::string in_path;
    std::string out_path;
};

int cmd_transform(const TransformOptions& opt) {
    const bq::TransformConfig cfg = bq::transform_from_json(load_json_file(opt.config_path));
    std::ifstream in(opt.in_path);
    if (!in) throw bq::parse_error("cannot open input file: " + opt.in_path);

    std::ostringstream body;
    body << "tau_in,x1_in,x2_in,x3_in,tau_out,x1_out,x2_out,x3_out,pnorm2_in,pnorm2_out\n";
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const bq::SpacetimePoint p =
            bq::point_from_json(bq::parse_json_line(line, line_no), line_no);
        const bq::SpacetimePoint q = cfg.apply(p);
        std::string row;
        const double cols[10] = {p.tau, p.x.x, p.x.y, p.x.z, q.tau, q.x.x, q.x.y, q.x.z,
                                 bq::interval_sq(p), bq::interval_sq(q)};
        for (int i = 0; i < 10; ++i) {
            if (i) row += ',';
            row += bq::fmt_double(cols[i]);
        }
        body << row << '\n';
    }
    if (!opt.out_path.empty())
        open_output(opt.out_path) << body.str();
    else
        std::cout << body.str();
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct SolveOptions {
    std::string config_path;
    std::string out_path;
    bool residual = false;
    std::optional<int> quad_r, quad_s;
    std::optional<double> fd_step;
};

int cmd_solve(const SolveOptions& opt) {
    const bq::Json cfg = load_json_file(opt.config_path);
    if (!cfg.contains("kind")) throw bq::parse_error("solve config needs \"kind\"");
    const std::string kind = cfg.at("kind").get<std::string>();

    bq::QuadratureSpec quad;
    if (cfg.contains("quad")) {
        quad.n_r = cfg.at("quad").value("nr", quad.n_r);
        quad.n_s = cfg.at("quad").value("ns", quad.n_s);
    }
    if (opt.quad_r) quad.n_r = *opt.quad_r;
    if (opt.quad_s) quad.n_s = *opt.quad_s;
    double h = cfg.value("fd_step", bq::kPotentialFdStep);
    if (opt.fd_step) h = *opt.fd_step;

    const bq::Json params = cfg.contains("params") ? cfg.at("params") : bq::Json::object();
    const bq::Sign sign =
        params.value("sign", std::string("+")) == "-" ? bq::Sign::minus : bq::Sign::plus;
    const double rho = params.value("rho", 0.0);
    const double omega = params.value("omega", 0.0);
    bq::Complex a_weight{1.0};
    if (params.contains("a")) a_weight = bq::complex_from_json(params.at("a"));

    if (!cfg.contains("source")) throw bq::parse_error("solve config needs \"source\"");
    const bq::Source source = bq::source_from_json(cfg.at("source"));
    std::optional<bq::Source> initial;
    if (cfg.contains("initial")) initial = bq::source_from_json(cfg.at("initial"));

    const bool spatial = kind == "harmonic" || kind == "static";
    if (spatial && !source.compact)
        throw bq::parse_error("harmonic/static solves need a compactly supported source");
    const bq::SampleGrid grid = bq::sample_grid_from_json(
        cfg.contains("grid") ? cfg.at("grid") : bq::Json::object(), !spatial);

    std::function<bq::Biquaternion(const bq::Vec3&)> initial_fn;
    if (initial)
        initial_fn = [src = initial->field](const bq::Vec3& y) { return src.value({0.0, y}); };

    std::function<bq::Biquaternion(const bq::SpacetimePoint&)> solve;
    std::function<bq::Biquaternion(const bq::SpacetimePoint&, const bq::Biquaternion&)> resid;
    bq::SpatialBqField F_spatial;
    const double w_omega = kind == "static" ? 0.0 : omega;

    if (kind == "biwave") {
        solve = [&, h](const bq::SpacetimePoint& p) {
            return bq::biwave_solve(sign, &source.field, initial_fn, p, quad, h);
        };
        resid = [&, h](const bq::SpacetimePoint& p, const bq::Biquaternion&) {
            bq::BqField K;
            K.value = solve;
            return bq::bigradient_fd(sign, K, p, h) - source.field.value(p);
        };
    } else if (kind == "maxwell") {
        solve = [&, h](const bq::SpacetimePoint& p) {
            return bq::kirchhoff_maxwell(&source.field, initial_fn, p, quad, h);
        };
        resid = [&, h](const bq::SpacetimePoint& p, const bq::Biquaternion&) {
            bq::BqField A;
            A.value = solve;
            return bq::bigradient_fd(bq::Sign::plus, A, p, h) + source.field.value(p);
        };
    } else if (kind == "md") {
        const bq::Complex m = bq::kImag * rho;
        solve = [&, m, h](const bq::SpacetimePoint& p) {
            return bq::md_solve(m, sign, source.field, p, quad, h, a_weight);
        };
        resid = [&, m, h](const bq::SpacetimePoint& p, const bq::Biquaternion& at) {
            bq::BqField B;
            B.value = solve;
            return bq::bigradient_fd(sign, B, p, h) + m * at - source.field.value(p);
        };
    } else if (spatial) {
        F_spatial.value = [src = source.field](const bq::Vec3& y) {
            return src.value({0.0, y});
        };
        solve = [&, h](const bq::SpacetimePoint& p) {
            return bq::harmonic_md_solve(w_omega, rho, sign, F_spatial, source.support_center,
                                         source.support_radius, p.x, a_weight, quad, h);
        };
        resid = [&, h](const bq::SpacetimePoint& p, const bq::Biquaternion&) {
            bq::SpatialBqField B;
            B.value = [&](const bq::Vec3& y) { return solve({0.0, y}); };
            return bq::gradiental_apply(w_omega + rho, sign, B, p.x, h) - F_spatial.value(p.x);
        };
    } else {
        throw bq::parse_error("unknown solve kind: " + kind);
    }

    std::ostringstream body;
    body << "tau,x1,x2,x3,s_re,s_im,v1_re,v1_im,v2_re,v2_im,v3_re,v3_im";
    if (opt.residual) body << ",residual_norm";
    body << '\n';
    const bool want_residual = opt.residual;
    emit_rows(body, grid.size(), [&](std::size_t i) {
        const bq::SpacetimePoint p = grid.point(i);
        const bq::Biquaternion value = at_point(p, [&] { return solve(p); });
        std::string row = bq::fmt_double(p.tau);
        for (int k = 0; k < 3; ++k) {
            row += ',';
            row += bq::fmt_double(p.x[k]);
        }
        append_bq_columns(row, value);
        if (want_residual) {
            row += ',';
            row += bq::fmt_double(bq::norm(at_point(p, [&] { return resid(p, value); })));
        }
        return row;
    });
    if (!opt.out_path.empty())
        open_output(opt.out_path) << body.str();
    else
        std::cout << body.str();
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct SpinorOptions {
    std::string config_path;
    std::string out_path;
    bool dirac_residual = false;
};

int cmd_spinor(const SpinorOptions& opt) {
    const bq::Json cfg = load_json_file(opt.config_path);
    if (!cfg.contains("type")) throw bq::parse_error("spinor config needs \"type\"");
    const std::string type = cfg.at("type").get<std::string>();
    const double rho = cfg.value("rho", 0.0);

    bq::BqField field;
    bq::Sign dirac_sign = bq::Sign::plus;
    if (type == "xi") {
        if (!cfg.contains("xi")) throw bq::parse_error("xi spinor needs \"xi\"");
        const bq::Sign sign =
            cfg.value("sign", std::string("+")) == "-" ? bq::Sign::minus : bq::Sign::plus;
        const bq::XiSpinor sp =
            bq::elementary_xi_spinor(bq::vec3_from_json(cfg.at("xi")), rho, sign);
        field = sp.field;
        dirac_sign = sign;
    } else if (type == "omega") {
        if (!cfg.contains("e")) throw bq::parse_error("omega spinor needs \"e\"");
        const bq::OmegaSpinor sp = bq::elementary_omega_spinor(cfg.value("omega", 0.0), rho,
                                                               bq::vec3_from_json(cfg.at("e")));
        field = sp.field;
        dirac_sign = bq::Sign::minus;
    } else {
        throw bq::parse_error("unknown spinor type: " + type);
    }

    const bq::SampleGrid grid = bq::sample_grid_from_json(
        cfg.contains("grid") ? cfg.at("grid") : bq::Json::object(), false);

    std::ostringstream body;
    body << "tau,x1,x2,x3,s_re,s_im,v1_re,v1_im,v2_re,v2_im,v3_re,v3_im,norm,pseudonorm_re,"
            "pseudonorm_im";
    if (opt.dirac_residual) body << ",dirac_residual";
    body << '\n';
    emit_rows(body, grid.size(), [&](std::size_t i) {
        const bq::SpacetimePoint p = grid.point(i);
        const bq::Biquaternion value = field.value(p);
        std::string row = bq::fmt_double(p.tau);
        for (int k = 0; k < 3; ++k) {
            row += ',';
            row += bq::fmt_double(p.x[k]);
        }
        append_bq_columns(row, value);
        row += ',';
        row += bq::fmt_double(bq::norm(value));
        const bq::Complex pn = bq::pseudonorm(value);
        row += ',';
        row += bq::fmt_double(pn.real());
        row += ',';
        row += bq::fmt_double(pn.imag());
        if (opt.dirac_residual) {
            row += ',';
            row += bq::fmt_double(bq::norm(bq::md_apply(bq::kImag * rho, dirac_sign, field, p)));
        }
        return row;
    });
    if (!opt.out_path.empty())
        open_output(opt.out_path) << body.str();
    else
        std::cout << body.str();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"differential algebra of biquaternions: verification suites and solvers"};
    app.require_subcommand(1);

    VerifyOptions vopt;
    CLI::App* verify = app.add_subcommand("verify", "run identity verification suites");
    verify->add_option("--suite", vopt.suite, "algebra|transforms|diffops|waves|physics|all");
    verify->add_option("--n", vopt.n, "random cases per identity");
    verify->add_option("--seed", vopt.seed, "PRNG seed (mt19937_64)");
    verify->add_option("--out", vopt.out_path, "write the JSON report here");
    double tol_override = 0.0;
    CLI::Option* tol_opt = verify->add_option("--tol", tol_override, "override all tolerances");

    TransformOptions topt;
    CLI::App* transform = app.add_subcommand("transform", "apply a transform to point records");
    transform->add_option("--config", topt.config_path, "transform JSON")->required();
    transform->add_option("--in", topt.in_path, "input JSON-lines point file")->required();
    transform->add_option("--out", topt.out_path, "output CSV (default stdout)");

    SolveOptions sopt;
    CLI::App* solve = app.add_subcommand("solve", "sample a generalized solution over a grid");
    solve->add_option("--config", sopt.config_path, "solve JSON")->required();
    solve->add_option("--out", sopt.out_path, "output CSV (default stdout)");
    solve->add_flag("--residual", sopt.residual, "append the equation residual per point");
    int qr = 0, qs = 0;
    double fd = 0.0;
    CLI::Option* qr_opt = solve->add_option("--quad-r", qr, "radial node count");
    CLI::Option* qs_opt = solve->add_option("--quad-s", qs, "spherical node count");
    CLI::Option* fd_opt = solve->add_option("--fd-step", fd, "finite-difference step");

    SpinorOptions popt;
    CLI::App* spinor = app.add_subcommand("spinor", "sample an elementary spinor over a grid");
    spinor->add_option("--config", popt.config_path, "spinor JSON")->required();
    spinor->add_option("--out", popt.out_path, "output CSV (default stdout)");
    spinor->add_flag("--dirac-residual", popt.dirac_residual, "append the Dirac residual");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (*verify) {
            if (*tol_opt) vopt.tol = tol_override;
            return cmd_verify(vopt);
        }
        if (*transform) return cmd_transform(topt);
        if (*solve) {
            if (*qr_opt) sopt.quad_r = qr;
            if (*qs_opt) sopt.quad_s = qs;
            if (*fd_opt) sopt.fd_step = fd;
            return cmd_solve(sopt);
        }
        if (*spinor) return cmd_spinor(popt);
    } catch (const bq::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
