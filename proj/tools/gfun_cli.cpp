// gfun: exact G-series toolkit CLI. JSON goes to stdout, human summaries to
// stderr. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfun/gfun.hpp"

namespace {

using gfun::json;

struct CommonOpts {
    std::size_t order = 256;
    unsigned precision_bits = 256;
    double R = 2.0;
    double step_fraction = 0.5;
    unsigned long seed = 0;
    std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_target_radius = true) {
    cmd->add_option("--order,-N", o.order, "truncation order")->check(CLI::PositiveNumber);
    cmd->add_option("--precision-bits", o.precision_bits, "working precision in bits")
        ->check(CLI::PositiveNumber);
    if (with_target_radius)
        cmd->add_option("--R", o.R, "target radius of convergence")->check(CLI::PositiveNumber);
    cmd->add_option("--step-fraction", o.step_fraction,
                    "continuation step as a fraction of the distance to the singular set")
        ->check(CLI::Range(1e-6, 0.999));
    cmd->add_option("--seed", o.seed, "seed echoed into the config (for scripted test data)");
    cmd->add_option("--output,-o", o.output, "write the JSON result to this file");
}

json config_json(const std::string& subcommand, const CommonOpts& o) {
    return json{{"subcommand", subcommand}, {"order", o.order},
                {"precision_bits", o.precision_bits}, {"R", o.R},
                {"step_fraction", o.step_fraction}, {"seed", o.seed}};
}

void emit(const json& j, const CommonOpts& o) {
    std::string text = j.dump(2);
    if (!o.output.empty()) {
        std::ofstream out(o.output);
        out << text << "\n";
    }
    std::cout << text << std::endl;
}

gfun::GaussianRational parse_constant(const std::string& text) {
    gfun::QiPolynomial p = gfun::parse_poly(text);
    if (p.degree() > 0) throw gfun::err::schema("expected a constant, got: " + text);
    return p.coeff(0);
}

std::vector<gfun::GaussianRational> parse_constant_list(const std::string& text) {
    std::vector<gfun::GaussianRational> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(parse_constant(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(parse_constant(cur));
    return out;
}

gfun::GSeries load_series(const std::string& arg) {
    return gfun::series_from_json(gfun::load_json_file(arg));
}

std::vector<gfun::ComplexBall> parse_ball_list(const std::string& text) {
    std::vector<gfun::ComplexBall> out;
    for (const auto& g : parse_constant_list(text)) out.push_back(gfun::ComplexBall::from_exact(g));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gfun: exact G-series, algebraic values, ODE continuation and "
                 "Apery-style diophantine analysis"};
    app.require_subcommand(1);

    if (const char* env = std::getenv("GFUN_PRECISION_BITS")) {
        // default precision override; individual flags still win
        gfun::set_working_precision_bits(static_cast<unsigned>(std::atoi(env)));
    }

    // ---- root ----------------------------------------------------------
    CommonOpts root_o;
    std::string root_poly;
    auto* root_cmd = app.add_subcommand("root", "algebraic root as a series value Phi_u(1)");
    root_cmd->add_option("--poly", root_poly, "polynomial over Q(i) in X")->required();
    add_common(root_cmd, root_o);

    // ---- log -----------------------------------------------------------
    CommonOpts log_o;
    std::string log_poly, log_root_near;
    auto* log_cmd = app.add_subcommand("log", "log(alpha) as a sum of series values");
    log_cmd->add_option("--poly", log_poly, "polynomial with the target root")->required();
    log_cmd->add_option("--root-near", log_root_near,
                        "pick the root nearest this value (default: largest real root)");
    add_common(log_cmd, log_o);

    // ---- series --------------------------------------------------------
    CommonOpts series_o;
    std::string series_op, series_a, series_b, series_at;
    double series_tail = 0.0;
    auto* series_cmd = app.add_subcommand("series", "exact series ring operations");
    series_cmd->add_option("--op", series_op, "add|sub|mul|hadamard|divide|diff|antidiff|eval|radius|csv")
        ->required();
    series_cmd->add_option("--a", series_a, "first series (JSON file)")->required();
    series_cmd->add_option("--b", series_b, "second series (JSON file)");
    series_cmd->add_option("--at", series_at, "evaluation point (exact expression)");
    series_cmd->add_option("--tail-ratio", series_tail, "geometric tail ratio for eval");
    add_common(series_cmd, series_o);

    // ---- continue ------------------------------------------------------
    CommonOpts cont_o;
    std::string cont_ode, cont_path, cont_initial;
    auto* cont_cmd = app.add_subcommand("continue", "analytic continuation along a path");
    cont_cmd->add_option("--ode", cont_ode, "ODE text, e.g. \"(1+X^2)*y'' + 2*X*y' = 0\"")->required();
    cont_cmd->add_option("--path", cont_path, "comma-separated waypoints")->required();
    cont_cmd->add_option("--initial", cont_initial, "comma-separated f, f', ... at the start")
        ->required();
    add_common(cont_cmd, cont_o);

    // ---- connect -------------------------------------------------------
    CommonOpts conn_o;
    std::string conn_ode, conn_path, conn_initial, conn_center;
    auto* conn_cmd = app.add_subcommand("connect", "connection constants in a distant basis");
    conn_cmd->add_option("--ode", conn_ode, "ODE text")->required();
    conn_cmd->add_option("--path", conn_path, "comma-separated waypoints")->required();
    conn_cmd->add_option("--initial", conn_initial, "f, f', ... at the start")->required();
    conn_cmd->add_option("--basis-center", conn_center, "target basis center")->required();
    add_common(conn_cmd, conn_o);

    // ---- wronskian -----------------------------------------------------
    CommonOpts wron_o;
    std::string wron_ode, wron_center, wron_points;
    auto* wron_cmd = app.add_subcommand("wronskian", "Abel check and closed-form Wronskian fit");
    wron_cmd->add_option("--ode", wron_ode, "ODE text")->required();
    wron_cmd->add_option("--center", wron_center, "basis center")->required();
    wron_cmd->add_option("--test-points", wron_points, "comma-separated ordinary points")->required();
    add_common(wron_cmd, wron_o);

    // ---- profile -------------------------------------------------------
    CommonOpts prof_o;
    std::string prof_ode, prof_initial, prof_zeta, prof_start;
    std::size_t prof_samples = 12;
    auto* prof_cmd = app.add_subcommand("profile", "singular profile (c, sigma, tau) at zeta");
    prof_cmd->add_option("--ode", prof_ode, "ODE text")->required();
    prof_cmd->add_option("--initial", prof_initial, "f, f', ... at the ray start")->required();
    prof_cmd->add_option("--start", prof_start, "ray start (ordinary point)")->required();
    prof_cmd->add_option("--zeta", prof_zeta, "target singularity")->required();
    prof_cmd->add_option("--samples", prof_samples, "number of geometric samples");
    add_common(prof_cmd, prof_o);

    // ---- asymfit -------------------------------------------------------
    CommonOpts fit_o;
    std::string fit_input, fit_candidates;
    auto* fit_cmd = app.add_subcommand("asymfit", "fit (rho, sigma, tau) from coefficients");
    fit_cmd->add_option("--coeffs", fit_input, "series JSON file or CSV file with a value column")
        ->required();
    fit_cmd->add_option("--fronts", fit_candidates, "comma-separated candidate zetas");
    add_common(fit_cmd, fit_o);

    // ---- asympredict ---------------------------------------------------
    CommonOpts pred_o;
    std::string pred_profile;
    long pred_begin = 2, pred_end = 16;
    auto* pred_cmd = app.add_subcommand("asympredict", "transfer main-term prediction");
    pred_cmd->add_option("--profile", pred_profile,
                         "profile JSON file {rho, sigma, tau:\"p/q\", fronts:[{zeta, c}]}")
        ->required();
    pred_cmd->add_option("--n-begin", pred_begin, "first index");
    pred_cmd->add_option("--n-end", pred_end, "last index");
    add_common(pred_cmd, pred_o);

    // ---- amplitudes ----------------------------------------------------
    CommonOpts amp_o;
    std::string amp_omegas, amp_samples;
    unsigned long amp_window = 0;
    auto* amp_cmd = app.add_subcommand("amplitudes", "solve kappa from omega-power sums");
    amp_cmd->add_option("--omegas", amp_omegas, "comma-separated unimodular omegas")->required();
    amp_cmd->add_option("--samples", amp_samples, "comma-separated consecutive samples")->required();
    amp_cmd->add_option("--window-start", amp_window, "first sample index n");
    add_common(amp_cmd, amp_o);

    // ---- apery ---------------------------------------------------------
    CommonOpts apery_o;
    std::string apery_u, apery_v, apery_demo;
    std::size_t apery_n = 128;
    auto* apery_cmd = app.add_subcommand("apery", "partial-sum approximation pair");
    apery_cmd->add_option("--u", apery_u, "series JSON for U");
    apery_cmd->add_option("--v", apery_v, "series JSON for V");
    apery_cmd->add_option("--demo", apery_demo, "built-in demo data: zeta3");
    apery_cmd->add_option("-n,--length", apery_n, "sequence length for the demo");
    add_common(apery_cmd, apery_o);

    // ---- mubound -------------------------------------------------------
    CommonOpts mu_o;
    double mu_C = 0, mu_r = 0, mu_R = 0;
    auto* mu_cmd = app.add_subcommand("mubound", "irrationality exponent bound");
    mu_cmd->add_option("--C", mu_C, "denominator growth constant")->required();
    mu_cmd->add_option("--r", mu_r, "radius of A and B")->required();
    mu_cmd->add_option("--R", mu_R, "radius of A - xi B")->required();
    add_common(mu_cmd, mu_o, false);

    // ---- dengrowth -----------------------------------------------------
    CommonOpts den_o;
    std::string den_input;
    auto* den_cmd = app.add_subcommand("dengrowth", "denominator growth slope log C");
    den_cmd->add_option("--csv", den_input, "CSV with re_num,re_den,im_num,im_den columns "
                                            "or a series JSON file")
        ->required();
    add_common(den_cmd, den_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (root_cmd->parsed()) {
            gfun::set_working_precision_bits(root_o.precision_bits);
            auto Q = gfun::parse_poly(root_poly);
            auto roots = gfun::complex_roots(Q, root_o.precision_bits);
            // deterministic choice: the root with the largest real part,
            // ties broken by largest imaginary part
            const gfun::RootBall* pick = nullptr;
            for (const auto& r : roots) {
                if (r.multiplicity > 1) continue;
                if (!pick || r.ball.re > pick->ball.re ||
                    (r.ball.re == pick->ball.re && r.ball.im > pick->ball.im))
                    pick = &r;
            }
            if (!pick) throw gfun::err::precondition("root: no simple root available");
            auto rs = gfun::build_root_series(Q, pick->ball, root_o.R, root_o.order,
                                              root_o.precision_bits);
            json j{{"config", config_json("root", root_o)},
                   {"u", gfun::to_json(rs.u)},
                   {"radius_exact",
                    rs.radius_exact.exact ? json(rs.radius_exact.exact->get_str())
                                          : json(nullptr)},
                   {"radius_lower", rs.radius_exact.lower},
                   {"value_at_1", gfun::to_json(rs.target_root)},
                   {"series", gfun::to_json(rs.phi)}};
            std::cerr << "Phi_u(1) = " << rs.target_root.str(30)
                      << "  (radius > " << rs.radius_exact.lower << ")" << std::endl;
            emit(j, root_o);
        } else if (log_cmd->parsed()) {
            gfun::set_working_precision_bits(log_o.precision_bits);
            auto Q = gfun::parse_poly(log_poly);
            auto roots = gfun::complex_roots(Q, log_o.precision_bits);
            const gfun::RootBall* pick = nullptr;
            if (!log_root_near.empty()) {
                auto near = gfun::ComplexBall::from_exact(parse_constant(log_root_near));
                double best = 0;
                for (const auto& r : roots) {
                    double d = (r.ball - near).abs_upper();
                    if (!pick || d < best) {
                        pick = &r;
                        best = d;
                    }
                }
            } else {
                for (const auto& r : roots) {
                    if (r.ball.im != 0 || r.multiplicity > 1) continue;
                    if (!pick || r.ball.re > pick->ball.re) pick = &r;
                }
            }
            if (!pick) throw gfun::err::precondition("log: no usable root");
            auto lr = gfun::log_algebraic(Q, pick->ball, log_o.R, log_o.order,
                                          log_o.precision_bits);
            json comps = json::array();
            for (const auto& c : lr.components)
                comps.push_back(json{{"branch", c.branch_note}, {"series", gfun::to_json(c.series)}});
            json j{{"config", config_json("log", log_o)},
                   {"m", lr.m},
                   {"u", gfun::to_json(lr.u)},
                   {"components", std::move(comps)},
                   {"value", gfun::to_json(lr.value)}};
            std::cerr << "log(alpha) = " << lr.value.str(30) << std::endl;
            emit(j, log_o);
        } else if (series_cmd->parsed()) {
            gfun::set_working_precision_bits(series_o.precision_bits);
            gfun::GSeries a = load_series(series_a);
            json j{{"config", config_json("series", series_o)}, {"op", series_op}};
            auto need_b = [&]() {
                if (series_b.empty())
                    throw gfun::err::schema("series --op " + series_op + " needs --b");
                return load_series(series_b);
            };
            if (series_op == "add") j["result"] = gfun::to_json(gfun::add(a, need_b()));
            else if (series_op == "sub") j["result"] = gfun::to_json(gfun::sub(a, need_b()));
            else if (series_op == "mul") j["result"] = gfun::to_json(gfun::mul(a, need_b()));
            else if (series_op == "hadamard") j["result"] = gfun::to_json(gfun::hadamard(a, need_b()));
            else if (series_op == "divide") j["result"] = gfun::to_json(gfun::divide(a, need_b()));
            else if (series_op == "diff") j["result"] = gfun::to_json(gfun::differentiate(a));
            else if (series_op == "antidiff") j["result"] = gfun::to_json(gfun::antiderivative(a));
            else if (series_op == "radius") j["result"] = gfun::radius_estimate(a);
            else if (series_op == "csv") j["result"] = gfun::series_to_csv(a);
            else if (series_op == "eval") {
                if (series_at.empty()) throw gfun::err::schema("series --op eval needs --at");
                std::optional<double> ratio;
                if (series_tail > 0) ratio = series_tail;
                j["result"] = gfun::to_json(gfun::evaluate(a, parse_constant(series_at), ratio));
            } else {
                throw gfun::err::schema("unknown series op: " + series_op);
            }
            emit(j, series_o);
        } else if (cont_cmd->parsed()) {
            gfun::set_working_precision_bits(cont_o.precision_bits);
            auto ode = gfun::parse_ode(cont_ode, cont_o.precision_bits);
            gfun::Path path{parse_constant_list(cont_path), ""};
            std::vector<gfun::ComplexBall> init;
            for (const auto& v : parse_constant_list(cont_initial))
                init.push_back(gfun::ComplexBall::from_exact(v));
            auto out = gfun::continue_along_path(ode, init, path, cont_o.order,
                                                 cont_o.step_fraction);
            json vals = json::array();
            for (const auto& b : out) vals.push_back(gfun::to_json(b));
            json j{{"config", config_json("continue", cont_o)}, {"end", gfun::to_json(path.waypoints.back())},
                   {"derivatives", std::move(vals)}};
            std::cerr << "f(end) = " << out[0].str(30) << std::endl;
            emit(j, cont_o);
        } else if (conn_cmd->parsed()) {
            gfun::set_working_precision_bits(conn_o.precision_bits);
            auto ode = gfun::parse_ode(conn_ode, conn_o.precision_bits);
            gfun::Path path{parse_constant_list(conn_path), ""};
            std::vector<gfun::ComplexBall> init;
            for (const auto& v : parse_constant_list(conn_initial))
                init.push_back(gfun::ComplexBall::from_exact(v));
            auto basis = gfun::local_basis(ode, parse_constant(conn_center), conn_o.order);
            auto cc = gfun::connection_constants(ode, init, path, basis, conn_o.order,
                                                 conn_o.step_fraction);
            json ks = json::array();
            for (const auto& b : cc.constants) ks.push_back(gfun::to_json(b));
            json j{{"config", config_json("connect", conn_o)},
                   {"constants", std::move(ks)},
                   {"wronskian", gfun::to_json(cc.wronskian_value)},
                   {"residual", cc.residual},
                   {"matching_point", gfun::to_json(cc.matching_point)}};
            std::cerr << "varpi_1 = " << cc.constants[0].str(30) << std::endl;
            emit(j, conn_o);
        } else if (wron_cmd->parsed()) {
            gfun::set_working_precision_bits(wron_o.precision_bits);
            auto ode = gfun::parse_ode(wron_ode, wron_o.precision_bits);
            auto basis = gfun::local_basis(ode, parse_constant(wron_center), wron_o.order);
            auto fit = gfun::wronskian_certify(ode, basis, parse_constant_list(wron_points),
                                               wron_o.precision_bits);
            json exps = json::array();
            for (const auto& [pole, r] : fit.exponents)
                exps.push_back(json{{"pole", gfun::to_json(pole)}, {"exponent", r.get_str()}});
            json j{{"config", config_json("wronskian", wron_o)},
                   {"nu", gfun::to_json(fit.nu)},
                   {"exponents", std::move(exps)}};
            std::cerr << "nu = " << fit.nu.str(30) << std::endl;
            emit(j, wron_o);
        } else if (prof_cmd->parsed()) {
            gfun::set_working_precision_bits(prof_o.precision_bits);
            auto ode = gfun::parse_ode(prof_ode, prof_o.precision_bits);
            std::vector<gfun::ComplexBall> init;
            for (const auto& v : parse_constant_list(prof_initial))
                init.push_back(gfun::ComplexBall::from_exact(v));
            gfun::GaussianRational start = parse_constant(prof_start);
            gfun::GaussianRational zeta = parse_constant(prof_zeta);
            auto samples = gfun::sample_toward_singularity(
                ode, init, gfun::Path{{start}, ""}, zeta, prof_samples, prof_o.order);
            auto fit = gfun::singular_profile(samples, zeta);
            json j{{"config", config_json("profile", prof_o)},
                   {"c", gfun::to_json(fit.c)},
                   {"sigma", fit.sigma},
                   {"tau", fit.snapped ? json(fit.tau.get_str()) : json(nullptr)},
                   {"tau_raw", fit.tau_raw},
                   {"snapped", fit.snapped}};
            std::cerr << "profile: c = " << fit.c.str(20) << ", sigma = " << fit.sigma
                      << ", tau_raw = " << fit.tau_raw << std::endl;
            emit(j, prof_o);
        } else if (fit_cmd->parsed()) {
            gfun::set_working_precision_bits(fit_o.precision_bits);
            std::vector<double> values;
            if (fit_input.size() > 4 && fit_input.substr(fit_input.size() - 4) == ".csv") {
                std::ifstream in(fit_input);
                if (!in) throw gfun::err::schema("cannot open " + fit_input);
                std::string line;
                std::getline(in, line); // header
                while (std::getline(in, line)) {
                    std::istringstream ls(line);
                    std::string idx, re_num, re_den;
                    std::getline(ls, idx, ',');
                    std::getline(ls, re_num, ',');
                    std::getline(ls, re_den, ',');
                    values.push_back(gfun::rational_from_strings(re_num, re_den).get_d());
                }
            } else {
                gfun::GSeries s = load_series(fit_input);
                for (const auto& c : s.coeffs) values.push_back(c.re.get_d());
            }
            gfun::FitOptions opts;
            if (!fit_candidates.empty()) opts.candidates = parse_ball_list(fit_candidates);
            auto profile = gfun::fit_profile(values, opts);
            json fronts = json::array();
            for (const auto& f : profile.fronts)
                fronts.push_back(json{{"zeta", gfun::to_json(f.zeta)},
                                      {"c", gfun::to_json(f.c_tilde)}});
            json j{{"config", config_json("asymfit", fit_o)},
                   {"rho", profile.rho},
                   {"sigma", profile.sigma},
                   {"tau", profile.tau.get_str()},
                   {"fronts", std::move(fronts)}};
            std::cerr << "rho = " << profile.rho << ", sigma = " << profile.sigma
                      << ", tau = " << profile.tau.get_d() << std::endl;
            emit(j, fit_o);
        } else if (pred_cmd->parsed()) {
            gfun::set_working_precision_bits(pred_o.precision_bits);
            json pj = gfun::load_json_file(pred_profile);
            gfun::SingularProfile profile;
            if (pj.contains("rho") && pj.at("rho").is_number())
                profile.rho = pj.at("rho").get<double>();
            else if (pj.contains("rho") && pj.at("rho").is_string()) {
                gfun::Rational r(pj.at("rho").get<std::string>());
                r.canonicalize();
                profile.rho_exact = r;
                profile.rho = r.get_d();
            }
            profile.sigma = pj.value("sigma", 0u);
            {
                gfun::Rational t(pj.at("tau").get<std::string>());
                t.canonicalize();
                profile.tau = t;
            }
            for (const auto& f : pj.at("fronts")) {
                gfun::Front fr;
                fr.zeta = gfun::ComplexBall::from_exact(
                    gfun::gaussian_from_json(f.at("zeta"), "fronts.zeta"));
                fr.c_tilde = gfun::ComplexBall::from_exact(
                    gfun::gaussian_from_json(f.at("c"), "fronts.c"));
                profile.fronts.push_back(fr);
            }
            auto vals = gfun::predict_coeffs(profile, pred_begin, pred_end);
            json arr = json::array();
            for (std::size_t k = 0; k < vals.size(); ++k)
                arr.push_back(json{{"n", pred_begin + static_cast<long>(k)},
                                   {"value", gfun::to_json(vals[k])}});
            json j{{"config", config_json("asympredict", pred_o)}, {"predictions", std::move(arr)}};
            emit(j, pred_o);
        } else if (amp_cmd->parsed()) {
            gfun::set_working_precision_bits(amp_o.precision_bits);
            gfun::AmplitudeSystem sys;
            sys.omegas = parse_ball_list(amp_omegas);
            sys.samples = parse_ball_list(amp_samples);
            sys.window_start = amp_window;
            auto res = gfun::recover_amplitudes(sys);
            json ks = json::array();
            for (const auto& k : res.kappa) ks.push_back(gfun::to_json(k));
            json j{{"config", config_json("amplitudes", amp_o)},
                   {"kappa", std::move(ks)},
                   {"det_lower", res.det_lower}};
            emit(j, amp_o);
        } else if (apery_cmd->parsed()) {
            gfun::set_working_precision_bits(apery_o.precision_bits);
            json j{{"config", config_json("apery", apery_o)}};
            if (apery_demo == "zeta3") {
                auto [a, b] = gfun::apery_zeta3_sequences(apery_n);
                double slope = gfun::denominator_growth(a);
                gfun::ComplexBall ratio = gfun::ComplexBall::from_exact(a.back()) /
                                          gfun::ComplexBall::from_exact(b.back());
                j["demo"] = "zeta3";
                j["dengrowth_slope"] = slope;
                j["last_ratio"] = gfun::to_json(ratio);
                // classical constants: r = (1+sqrt2)^-4, R = (1+sqrt2)^4, C = e^3
                double C = std::exp(3.0), Rr = std::pow(1.0 + std::sqrt(2.0), 4.0);
                auto mb = gfun::mu_bound(C, 1.0 / Rr, Rr);
                j["mu_bound"] = mb.value;
                std::cerr << "zeta(3) demo: slope = " << slope << ", mu bound = " << mb.value
                          << std::endl;
            } else {
                if (apery_u.empty() || apery_v.empty())
                    throw gfun::err::schema("apery needs --u and --v series, or --demo zeta3");
                auto pair = gfun::partial_sum_pair(load_series(apery_u), load_series(apery_v));
                auto report = gfun::limit_check(pair);
                json checks = json::array();
                for (const auto& c : report.checks)
                    checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
                j["target"] = gfun::to_json(pair.target);
                j["error_rate"] = pair.error_rate;
                j["checks"] = std::move(checks);
                j["a_last"] = gfun::to_json(pair.a.back());
                j["b_last"] = gfun::to_json(pair.b.back());
            }
            emit(j, apery_o);
        } else if (mu_cmd->parsed()) {
            auto mb = gfun::mu_bound(mu_C, mu_r, mu_R);
            json j{{"config", config_json("mubound", mu_o)},
                   {"C", mu_C},
                   {"r", mu_r},
                   {"R", mu_R},
                   {"status", mb.status == gfun::MuBound::Status::Bound ? "bound" : "no_conclusion"},
                   {"consistency_violation", mb.consistency_violation}};
            if (mb.status == gfun::MuBound::Status::Bound) j["mu_bound"] = mb.value;
            std::cerr << (mb.status == gfun::MuBound::Status::Bound
                              ? "mu(xi) <= " + std::to_string(mb.value)
                              : std::string("no conclusion (C >= R)"))
                      << std::endl;
            emit(j, mu_o);
        } else if (den_cmd->parsed()) {
            std::vector<gfun::GaussianRational> xs;
            if (den_input.size() > 4 && den_input.substr(den_input.size() - 4) == ".csv") {
                std::ifstream in(den_input);
                if (!in) throw gfun::err::schema("cannot open " + den_input);
                std::string line;
                std::getline(in, line);
                while (std::getline(in, line)) {
                    std::istringstream ls(line);
                    std::string idx, re_num, re_den, im_num, im_den;
                    std::getline(ls, idx, ',');
                    std::getline(ls, re_num, ',');
                    std::getline(ls, re_den, ',');
                    std::getline(ls, im_num, ',');
                    std::getline(ls, im_den, ',');
                    if (im_num.empty()) im_num = "0";
                    if (im_den.empty()) im_den = "1";
                    xs.emplace_back(gfun::rational_from_strings(re_num, re_den),
                                    gfun::rational_from_strings(im_num, im_den));
                }
            } else {
                gfun::GSeries s = load_series(den_input);
                xs = s.coeffs;
            }
            double slope = gfun::denominator_growth(xs);
            json j{{"config", config_json("dengrowth", den_o)}, {"slope", slope}};
            std::cerr << "log C estimate: " << slope << std::endl;
            emit(j, den_o);
        }
        return 0;
    } catch (const gfun::Error& e) {
        json j{{"error", {{"code", e.code()}, {"message", e.what()}}}};
        std::cout << j.dump(2) << std::endl;
        std::cerr << "error [" << e.code() << "]: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        json j{{"error", {{"code", "Internal"}, {"message", e.what()}}}};
        std::cout << j.dump(2) << std::endl;
        std::cerr << "internal error: " << e.what() << std::endl;
        return 1;
    }
}
