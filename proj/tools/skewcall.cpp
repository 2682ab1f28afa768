// Command-line front end: classification, pricing, boundary sweeps,
// variational-inequality verification and FD/MC oracle comparison for the
// perpetual American call on a skew geometric Brownian motion.
//
// Exit codes: 0 ok, 1 internal error, 2 assumption violated (r <= b),
// 3 degenerate beta, 4 verification failure, 5 oracle disagreement.

#include "skewcall/fd_solver.hpp"
#include "skewcall/json_io.hpp"
#include "skewcall/monte_carlo.hpp"
#include "skewcall/value_function.hpp"
#include "skewcall/vi_verifier.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

using namespace skewcall;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct ParamOpts {
    SkewGbmParams p{0.1, 0.05, 0.3, 1.0, 1.0, -0.1};
    std::string config_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON file with {r,b,sigma,K,z,beta}");
        cmd->add_option("--r", p.r, "discount rate");
        cmd->add_option("--b", p.b, "drift rate");
        cmd->add_option("--sigma", p.sigma, "volatility");
        cmd->add_option("--K", p.K, "strike");
        cmd->add_option("--z", p.z, "skew level");
        cmd->add_option("--beta", p.beta, "skewness in (-1,1)");
    }

    SkewGbmParams resolve(CLI::App* cmd) const {
        if (config_path.empty()) return p;
        std::ifstream in(config_path);
        if (!in) throw DomainError("cannot open config file: " + config_path);
        nlohmann::json j;
        in >> j;
        SkewGbmParams q = params_from_json(j);
        // explicit flags override the file
        if (cmd->count("--r")) q.r = p.r;
        if (cmd->count("--b")) q.b = p.b;
        if (cmd->count("--sigma")) q.sigma = p.sigma;
        if (cmd->count("--K")) q.K = p.K;
        if (cmd->count("--z")) q.z = p.z;
        if (cmd->count("--beta")) q.beta = p.beta;
        return q;
    }
};

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw DomainError("cannot open output file: " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

int default_threads() {
    if (const char* env = std::getenv("SKEWCALL_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

template <typename Fn>
void parallel_for(long count, int workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> ts;
    const long per = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        ts.emplace_back([&, w] {
            const long lo = w * per, hi = std::min<long>(count, (w + 1) * per);
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : ts) t.join();
}

SkewGbmParams figure_preset(int fig) {
    switch (fig) {
        case 4: return {0.1, -0.05, 0.3, 1.0, 1.0, -0.3};
        case 5: return {0.1, 0.05, 0.3, 1.0, 2.8, -0.1};
        case 6: return {0.1, 0.05, 0.3, 1.0, 5.0, -0.1};
        case 7: return {0.1, 0.05, 0.3, 1.0, 1.2, -0.5};
        case 8: return {0.1, 0.05, 0.3, 1.0, 2.5, -0.5};
        case 9: return {0.1, 0.05, 0.3, 1.0, 4.0, -0.5};
        case 10: return {0.1, 0.05, 0.3, 1.0, 3.0, 0.3};
        case 11: return {0.1, 0.05, 0.3, 1.0, 1.6, -0.5};
        case 12: return {0.1, 0.05, 0.3, 1.0, 5.5776846810023962, 0.3};
        case 13: return {0.1, 0.05, 0.3, 1.0, 8.0, 0.3};
        default: throw DomainError("figure preset must be 4..13");
    }
}

std::string constants_line(const PiecewiseValueFunction& vf) {
    std::ostringstream ss;
    ss << "regime=" << to_string(vf.regime) << " case=" << to_string(vf.profile.cse);
    for (const auto& [k, v] : vf.constants) ss << ' ' << k << '=' << fmt(v);
    return ss.str();
}

int cmd_classify(const SkewGbmParams& p, const std::string& out_path) {
    Output out(out_path);
    out.os() << to_json(classify(p)).dump(2) << '\n';
    return 0;
}

int cmd_price(const SkewGbmParams& p, const std::vector<double>& xs, const std::string& out_path) {
    const auto vf = solve(p);
    Output out(out_path);
    auto& os = out.os();
    os << "# skewcall-csv v1 price " << constants_line(vf) << '\n';
    os << "x,v,v_prime_left,v_prime_right,stop\n";
    for (double x : xs) {
        os << fmt(x) << ',' << fmt(vf.evaluate(x)) << ',' << fmt(vf.d_left(x)) << ','
           << fmt(vf.d_right(x)) << ',' << (vf.region.contains(x) ? 1 : 0) << '\n';
    }
    return 0;
}

int cmd_boundary(const SkewGbmParams& base, const std::string& param, double lo, double hi,
                 long count, const std::string& out_path) {
    if (!(lo < hi) || count < 2) throw DomainError("boundary sweep needs lo < hi and count >= 2");
    if (param != "z" && param != "beta" && param != "b" && param != "sigma")
        throw DomainError("sweep parameter must be one of z, beta, b, sigma");
    struct Row {
        double value;
        std::string text;
    };
    std::vector<Row> rows(count);
    parallel_for(count, default_threads(), [&](long i) {
        const double v = lo + (hi - lo) * i / (count - 1.0);
        SkewGbmParams p = base;
        if (param == "z") p.z = v;
        else if (param == "beta") p.beta = v;
        else if (param == "b") p.b = v;
        else p.sigma = v;
        std::ostringstream ss;
        ss << param << ',' << fmt(v) << ',';
        try {
            const auto vf = solve(p);
            auto get = [&](const char* k) {
                const auto it = vf.constants.find(k);
                return it == vf.constants.end() ? std::string() : fmt(it->second);
            };
            ss << to_string(vf.profile.cse) << ',' << to_string(vf.regime) << ',' << get("a") << ','
               << get("xi") << ',' << get("gamma") << ',' << get("zeta") << ',' << get("z_minus")
               << ',' << get("z_plus") << ',';
        } catch (const std::exception& e) {
            ss << ",,,,,,," << '"' << e.what() << '"';
        }
        rows[i] = {v, ss.str()};
    });
    Output out(out_path);
    auto& os = out.os();
    os << "# skewcall-csv v1 boundary sweep of " << param << '\n';
    os << "param,value,case,regime,a,xi,gamma,zeta,z_minus,z_plus,error\n";
    for (const auto& r : rows) os << r.text << '\n';
    return 0;
}

int cmd_sweep(const SkewGbmParams& p, int points, const std::string& out_path) {
    const auto vf = solve(p);
    const VerifyConfig vc;
    const auto grid = standard_grid(vf, vc);
    Output out(out_path);
    auto& os = out.os();
    os << "# skewcall-csv v1 sweep " << constants_line(vf) << " params r=" << fmt(p.r)
       << " b=" << fmt(p.b) << " sigma=" << fmt(p.sigma) << " K=" << fmt(p.K) << " z=" << fmt(p.z)
       << " beta=" << fmt(p.beta) << '\n';
    os << "x,v,payoff,stop\n";
    const size_t stride = std::max<size_t>(1, grid.size() / points);
    for (size_t i = 0; i < grid.size(); i += stride) {
        const double x = grid[i];
        os << fmt(x) << ',' << fmt(vf.evaluate(x)) << ',' << fmt(std::max(x - p.K, 0.0)) << ','
           << (vf.region.contains(x) ? 1 : 0) << '\n';
    }
    return 0;
}

int cmd_verify(const SkewGbmParams& p, const VerifyConfig& vc, const std::string& out_path) {
    const auto vf = solve(p);
    const auto rep = verify(vf, vc);
    Output out(out_path);
    out.os() << to_json(rep).dump(2) << '\n';
    return rep.pass ? 0 : 4;
}

int cmd_oracle_fd(const SkewGbmParams& p, int nodes, double omega, const std::string& out_path) {
    const auto vf = solve(p);
    FdConfig cfg = FdConfig::standard(vf, nodes);
    if (omega > 0) cfg.omega = omega;
    const auto cmp = fd_compare(vf, cfg);
    Output out(out_path);
    auto& os = out.os();
    os << "# skewcall-csv v1 oracle-fd " << constants_line(vf) << '\n';
    os << "# nodes=" << nodes << " sweeps=" << cmp.fd.sweeps
       << " err_rel_to_max=" << fmt(cmp.err_rel_to_max)
       << " err_probe_rel=" << fmt(cmp.err_probe_rel) << '\n';
    os << "x,v_fd,v_analytic,diff,active\n";
    for (size_t i = 0; i < cmp.fd.x.size(); ++i) {
        os << fmt(cmp.fd.x[i]) << ',' << fmt(cmp.fd.v[i]) << ',' << fmt(cmp.v_analytic[i]) << ','
           << fmt(cmp.fd.v[i] - cmp.v_analytic[i]) << ',' << int(cmp.fd.active[i]) << '\n';
    }
    return cmp.err_probe_rel <= 5e-3 ? 0 : 5;
}

int cmd_oracle_mc(const SkewGbmParams& p, double x0, McConfig cfg, const std::string& out_path) {
    const auto vf = solve(p);
    if (cfg.dt <= 0) cfg.dt = 1e-4 / p.r;
    if (cfg.horizon <= 0) cfg.horizon = std::log(1e4) / p.r;
    const auto res = mc_estimate(p, vf.region, x0, cfg);
    const double v = vf.evaluate(x0);
    nlohmann::json j = to_json(res);
    j["x0"] = x0;
    j["analytic"] = v;
    const double tol = 3 * res.se + 1e-3 * v;
    j["diff"] = res.mean - v;
    j["tolerance"] = tol;
    const bool ok = std::abs(res.mean - v) <= tol;
    j["consistent"] = ok;
    Output out(out_path);
    out.os() << j.dump(2) << '\n';
    return ok ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perpetual American call on a skew geometric Brownian motion"};
    app.require_subcommand(1);

    ParamOpts popts[6];
    std::string outs[6];

    auto* c_classify = app.add_subcommand("classify", "parameter case and critical constants");
    popts[0].attach(c_classify);
    c_classify->add_option("--out", outs[0], "output path (default stdout)");

    auto* c_price = app.add_subcommand("price", "value and derivatives at given spots");
    popts[1].attach(c_price);
    std::vector<double> xs;
    c_price->add_option("--x", xs, "spot points")->required()->delimiter(',');
    c_price->add_option("--out", outs[1], "output path");

    auto* c_boundary = app.add_subcommand("boundary", "free boundaries along a parameter sweep");
    popts[2].attach(c_boundary);
    std::string sweep_param = "z";
    double lo = 0.5, hi = 5.0;
    long count = 50;
    c_boundary->add_option("--sweep-param", sweep_param, "one of z, beta, b, sigma");
    c_boundary->add_option("--lo", lo, "sweep start")->required();
    c_boundary->add_option("--hi", hi, "sweep end")->required();
    c_boundary->add_option("--count", count, "sample count");
    c_boundary->add_option("--out", outs[2], "output path");

    auto* c_sweep = app.add_subcommand("sweep", "value-function curve for plotting");
    popts[3].attach(c_sweep);
    int figure = 0, points = 512;
    c_sweep->add_option("--figure", figure, "parameter preset 4..13");
    c_sweep->add_option("--points", points, "output points");
    c_sweep->add_option("--out", outs[3], "output path");

    auto* c_verify = app.add_subcommand("verify", "variational-inequality check");
    popts[4].attach(c_verify);
    VerifyConfig vc;
    c_verify->add_option("--nodes", vc.nodes, "grid nodes");
    c_verify->add_option("--tol-gen", vc.tol_gen, "generator tolerance");
    c_verify->add_option("--tol-obs", vc.tol_obs_frac, "obstacle tolerance (times K)");
    c_verify->add_option("--out", outs[4], "output path");

    auto* c_oracle = app.add_subcommand("oracle", "compare against FD or MC");
    popts[5].attach(c_oracle);
    std::string which = "fd";
    int nodes = 4000;
    double omega = -1, x0 = 0;
    McConfig mc;
    mc.workers = default_threads();
    c_oracle->add_option("--which", which, "fd or mc")->required();
    c_oracle->add_option("--nodes", nodes, "FD nodes");
    c_oracle->add_option("--omega", omega, "PSOR relaxation (default tuned)");
    c_oracle->add_option("--x0", x0, "MC start point");
    c_oracle->add_option("--paths", mc.paths, "MC paths");
    c_oracle->add_option("--dt", mc.dt, "MC time step (default 1e-4/r)");
    c_oracle->add_option("--horizon", mc.horizon, "MC horizon (default ln(1e4)/r)");
    c_oracle->add_option("--seed", mc.seed, "MC seed");
    c_oracle->add_flag("--no-antithetic", "disable antithetic pairing");
    c_oracle->add_option("--out", outs[5], "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*c_classify) return cmd_classify(popts[0].resolve(c_classify), outs[0]);
        if (*c_price) return cmd_price(popts[1].resolve(c_price), xs, outs[1]);
        if (*c_boundary)
            return cmd_boundary(popts[2].resolve(c_boundary), sweep_param, lo, hi, count, outs[2]);
        if (*c_sweep) {
            SkewGbmParams p = figure > 0 ? figure_preset(figure) : popts[3].resolve(c_sweep);
            return cmd_sweep(p, points, outs[3]);
        }
        if (*c_verify) return cmd_verify(popts[4].resolve(c_verify), vc, outs[4]);
        if (*c_oracle) {
            const auto p = popts[5].resolve(c_oracle);
            if (which == "fd") return cmd_oracle_fd(p, nodes, omega, outs[5]);
            if (which == "mc") {
                if (!(x0 > 0)) throw DomainError("oracle mc requires --x0 > 0");
                if (c_oracle->count("--no-antithetic")) mc.antithetic = false;
                return cmd_oracle_mc(p, x0, mc, outs[5]);
            }
            throw DomainError("--which must be fd or mc");
        }
    } catch (const AssumptionViolated& e) {
        std::cerr << "error: " << e.what() << " (value function is infinite)\n";
        return 2;
    } catch (const DegenerateBeta& e) {
        std::cerr << "error: " << e.what()
                  << " (beta = 0: use the classical GBM reference mode)\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
