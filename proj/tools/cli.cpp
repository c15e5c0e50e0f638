// Command-line front end: census tables, verification suites, and exports.
// Exit codes: 0 success, 1 usage error, 2 verification/numerical/IO failure.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ctori/census.hpp"
#include "ctori/moser.hpp"

using namespace ctori;

namespace {

constexpr double kPi = std::numbers::pi;

struct RunConfig {
    int n = 1;
    double c = 10.0;
    double kappa = 0.05;
    int steps = 64;
    double tol = 1e-5;
    std::uint64_t seed = 1;
    std::string json_path, csv_path, svg_path;

    ConicParams params() const {
        ConicParams p;
        p.n = n;
        p.c = c;
        p.kappa = kappa;
        p.validate();
        return p;
    }
};

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--n", cfg.n, "degree of the z term in h");
    cmd->add_option("--c", cfg.c, "coefficient c (> 1)");
    cmd->add_option("--kappa", cfg.kappa, "reduction parameter kappa");
    cmd->add_option("--steps", cfg.steps, "flow integration steps");
    cmd->add_option("--tol", cfg.tol, "verification tolerance");
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_option("--json", cfg.json_path, "write JSON output to this path");
    cmd->add_option("--csv", cfg.csv_path, "write CSV output to this path");
    cmd->add_option("--svg", cfg.svg_path, "write SVG output to this path");
    cmd->add_option("--config", config_path, "JSON config file, merged under flags");
}

// config file values fill in anything not given on the command line
void merge_config(CLI::App* cmd, RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    for (const auto& [key, val] : j.items()) {
        if (key == "n") { if (!cmd->count("--n")) cfg.n = val.get<int>(); }
        else if (key == "c") { if (!cmd->count("--c")) cfg.c = val.get<double>(); }
        else if (key == "kappa") { if (!cmd->count("--kappa")) cfg.kappa = val.get<double>(); }
        else if (key == "steps") { if (!cmd->count("--steps")) cfg.steps = val.get<int>(); }
        else if (key == "tol") { if (!cmd->count("--tol")) cfg.tol = val.get<double>(); }
        else if (key == "seed") { if (!cmd->count("--seed")) cfg.seed = val.get<std::uint64_t>(); }
        else throw std::runtime_error("unknown config key: " + key);
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << content;
}

int max_threads() {
    if (const char* env = std::getenv("MTL_THREADS")) {
        int v = std::atoi(env);
        if (v < 1) throw std::runtime_error("MTL_THREADS must be a positive integer");
        return v;
    }
    return 1;
}

// ---------------------------------------------------------------- census ----

int cmd_census(const RunConfig& cfg) {
    CensusTable t = disc_census(cfg.params());
    std::printf("disc census  n=%d  c=%g  kappa=%g\n", cfg.n, cfg.c, cfg.kappa);
    std::printf("%4s %4s %4s  %8s\n", "a", "b", "d", "count");
    for (const auto& [cls, cnt] : t.entries)
        std::printf("%4d %4d %4d  %8d\n", cls.a, cls.b, cls.d, cnt);
    std::printf("total %d   classes %zu   hull lattice points %d   odd classes %d\n",
                t.total, t.entries.size(), t.hull_lattice_points, t.mod2_classes);
    std::printf("residuals: xy %.2e, boundary %.2e\n",
                t.residuals.at("max_xy_residual"), t.residuals.at("max_boundary_residual"));
    if (!cfg.json_path.empty()) write_file(cfg.json_path, t.to_json());
    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, t.to_csv());
    return 0;
}

// ---------------------------------------------------------------- verify ----

struct Check {
    std::string name;
    double residual;
    double tol;
    bool pass() const { return residual < tol; }
};

void run_areas(const RunConfig& cfg, std::vector<Check>& out) {
    auto p = cfg.params();
    PotentialSpec flat;
    flat.variant = Variant::StandardC2;
    flat.params = p;
    out.push_back({"area(u_0), flat form, vs pi",
                   std::abs(disc_area(flat, disc_u_alpha(0.0, p)) - kPi), 1e-7});
    out.push_back({"area(v_0), flat form, vs pi",
                   std::abs(disc_area(flat, disc_v_alpha(0.0, p)) - kPi), 1e-7});
    out.push_back({"flowed boundary area(u_0) vs pi",
                   std::abs(flowed_boundary_area(p, disc_u_alpha(0.0, p), 512, cfg.steps) - kPi),
                   cfg.tol});
    out.push_back({"flowed boundary area(v_0) vs pi",
                   std::abs(flowed_boundary_area(p, disc_v_alpha(0.0, p), 512, cfg.steps) - kPi),
                   cfg.tol});
}

void run_maslov(const RunConfig& cfg, std::vector<Check>& out) {
    auto p = cfg.params();
    out.push_back({"maslov(u_0) = 2", std::abs(maslov_index(disc_u_alpha(0.0, p)) - 2.0), 0.5});
    out.push_back({"maslov(v_0) = 2", std::abs(maslov_index(disc_v_alpha(0.0, p)) - 2.0), 0.5});
    out.push_back({"maslov(double cover) = 4",
                   std::abs(maslov_index(disc_double_cover(0.0, p)) - 4.0), 0.5});
}

void run_lifts(const RunConfig& cfg, std::vector<Check>& out) {
    auto p = cfg.params();
    auto lifts = enumerate_lifts(disc_u_alpha(0.0, p), p);
    out.push_back({"lift count = 2^n",
                   std::abs(double(lifts.size()) - std::ldexp(1.0, p.n)), 0.5});
    double xy = 0.0, bd = 0.0;
    for (const Lift& l : lifts) {
        xy = std::max(xy, l.residual_xy);
        bd = std::max(bd, l.residual_boundary);
    }
    out.push_back({"max |xy - h(u)| over lifts", xy, 1e-10});
    out.push_back({"max boundary ||x|-|y|| over lifts", bd, 1e-10});
}

void run_moser(const RunConfig& cfg, std::vector<Check>& out) {
    auto p = cfg.params();
    FlowSpec spec;
    spec.kind = FlowKind::ReducedIsotopy;
    spec.params = p;
    spec.steps = cfg.steps;
    auto tstd = torus_T_std(p);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        auto rep = verify_pullback(spec, tstd->param({ang(rng), ang(rng)}), 1.0, 8,
                                   cfg.seed + 1 + i);
        worst = std::max(worst, rep.max_residual);
    }
    out.push_back({"pullback residual, reduced isotopy", worst, cfg.tol});
}

void run_barrier(const RunConfig& cfg, std::vector<Check>& out) {
    auto p = cfg.params();
    try {
        auto bc = barrier_constants(p, 5.0, 100000, cfg.seed);
        out.push_back({"barrier certification (K=" + std::to_string(bc.K) + ")", 0.0, 1.0});
    } catch (const NumericalError& e) {
        out.push_back({std::string("barrier certification: ") + e.what(), 1.0, 0.5});
    }
}

void run_stokes(const RunConfig& cfg, std::vector<Check>& out) {
    auto p = cfg.params();
    PotentialSpec flat;
    flat.variant = Variant::StandardC2;
    flat.params = p;
    DiscMap v = disc_v_alpha(0.4, p);
    out.push_back({"disc area vs boundary integral, flat form",
                   std::abs(disc_area(flat, v) - boundary_liouville(flat, boundary_loop(v))),
                   1e-7});
    PotentialSpec red = flat;
    red.variant = Variant::Reduced;
    out.push_back({"disc area vs boundary integral, reduced form",
                   std::abs(disc_area(red, v) - boundary_liouville(red, boundary_loop(v))),
                   1e-6});
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    std::vector<Check> checks;
    if (suite == "areas" || suite == "all") run_areas(cfg, checks);
    if (suite == "maslov" || suite == "all") run_maslov(cfg, checks);
    if (suite == "lifts" || suite == "all") run_lifts(cfg, checks);
    if (suite == "moser" || suite == "all") run_moser(cfg, checks);
    if (suite == "barrier" || suite == "all") run_barrier(cfg, checks);
    if (suite == "stokes" || suite == "all") run_stokes(cfg, checks);
    bool all_pass = true;
    for (const Check& ch : checks) {
        std::printf("[%s] %-55s residual %.3e  tol %.1e\n", ch.pass() ? "ok" : "FAIL",
                    ch.name.c_str(), ch.residual, ch.tol);
        all_pass = all_pass && ch.pass();
    }
    if (!all_pass) std::fprintf(stderr, "verify: suite '%s' failed\n", suite.c_str());
    return all_pass ? 0 : 2;
}

// ---------------------------------------------------------------- export ----

std::string svg_header(double x0, double y0, double w, double h) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\""
       << x0 << " " << y0 << " " << w << " " << h << "\">\n";
    return os.str();
}

int cmd_export(const RunConfig& cfg, const std::string& what) {
    auto p = cfg.params();
    std::ostringstream csv, svg;

    if (what == "intersections") {
        auto pts = intersections_with_C(disc_u_alpha(0.0, p), p);
        csv << "re,im,abs\n";
        svg << svg_header(-1.2, -1.2, 2.4, 2.4)
            << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" "
               "stroke-width=\"0.01\"/>\n";
        for (Complex z : pts) {
            csv << std::real(z) << "," << std::imag(z) << "," << std::abs(z) << "\n";
            svg << "<circle cx=\"" << std::real(z) << "\" cy=\"" << -std::imag(z)
                << "\" r=\"0.025\" fill=\"crimson\"/>\n";
        }
        svg << "</svg>\n";
        std::printf("%zu intersection points with C\n", pts.size());
    } else if (what == "disc-boundaries") {
        csv << "theta,re_z,im_z,re_w,im_w,family\n";
        std::vector<std::pair<DiscMap, const char*>> discs{{disc_u_alpha(0.0, p), "u"},
                                                           {disc_v_alpha(0.0, p), "v"}};
        svg << svg_header(-1.6, -1.6, 3.2, 3.2);
        for (auto& [d, name] : discs) {
            std::ostringstream poly;
            for (int m = 0; m <= 256; ++m) {
                double th = 2.0 * kPi * m / 256;
                CVec q = d.f(std::polar(1.0, th));
                if (m < 256)
                    csv << th << "," << std::real(q(0)) << "," << std::imag(q(0)) << ","
                        << std::real(q(1)) << "," << std::imag(q(1)) << "," << name << "\n";
                poly << std::real(q(0)) << "," << -std::imag(q(0)) << " ";
            }
            svg << "<polyline points=\"" << poly.str()
                << "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"0.01\"/>\n";
        }
        svg << "</svg>\n";
    } else if (what == "hull") {
        CensusTable t = disc_census(p);
        // lattice points of the hull in the (a, b) projection, by exact cross products
        std::vector<std::array<long long, 2>> cls;
        for (const auto& [c, cnt] : t.entries) cls.push_back({c.a, c.b});
        auto inside = [&](long long x, long long y) {
            // point is in the hull iff it is in some triangle of class points
            for (size_t i = 0; i < cls.size(); ++i)
                for (size_t j = i + 1; j < cls.size(); ++j)
                    for (size_t k = j + 1; k < cls.size(); ++k) {
                        auto cr = [](auto o, auto a, auto b) {
                            return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
                        };
                        std::array<long long, 2> q{x, y};
                        long long d1 = cr(cls[i], cls[j], q), d2 = cr(cls[j], cls[k], q),
                                  d3 = cr(cls[k], cls[i], q);
                        bool neg = d1 < 0 || d2 < 0 || d3 < 0;
                        bool pos = d1 > 0 || d2 > 0 || d3 > 0;
                        if (!(neg && pos)) return true;
                    }
            return false;
        };
        csv << "a,b\n";
        svg << svg_header(-1.0, -1.5, double(p.n) + 2.0, 3.0);
        int count = 0;
        for (long long x = 0; x <= p.n; ++x)
            for (long long y = 0; y <= 1; ++y)
                if (inside(x, y)) {
                    ++count;
                    csv << x << "," << y << "\n";
                    svg << "<circle cx=\"" << x << "\" cy=\"" << -double(y)
                        << "\" r=\"0.08\" fill=\"black\"/>\n";
                }
        svg << "</svg>\n";
        std::printf("%d lattice points in the hull (library count %d)\n", count,
                    t.hull_lattice_points);
        if (count != t.hull_lattice_points) {
            std::fprintf(stderr, "export hull: lattice point counts disagree\n");
            return 2;
        }
    } else if (what == "flow-trace") {
        FlowSpec spec;
        spec.kind = FlowKind::ReducedIsotopy;
        spec.params = p;
        spec.steps = cfg.steps;
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
        CVec q0 = torus_T_std(p)->param({ang(rng), ang(rng)});
        auto path = integrate_flow(spec, q0, 1.0);
        csv << "t,re_z,im_z,re_w,im_w,phi\n";
        svg << svg_header(-1.6, -1.6, 3.2, 3.2) << "<polyline points=\"";
        for (const auto& s : path) {
            csv << s.t << "," << std::real(s.pt(0)) << "," << std::imag(s.pt(0)) << ","
                << std::real(s.pt(1)) << "," << std::imag(s.pt(1)) << "," << s.phi << "\n";
            svg << std::real(s.pt(0)) << "," << -std::imag(s.pt(0)) << " ";
        }
        svg << "\" fill=\"none\" stroke=\"darkorange\" stroke-width=\"0.01\"/>\n</svg>\n";
    } else {
        std::fprintf(stderr, "unknown export target: %s\n", what.c_str());
        return 1;
    }

    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv.str());
    if (!cfg.svg_path.empty()) write_file(cfg.svg_path, svg.str());
    if (cfg.csv_path.empty() && cfg.svg_path.empty()) std::fputs(csv.str().c_str(), stdout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"disc census and verification toolkit for conic-bundle tori"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path, suite = "all", what;

    CLI::App* census = app.add_subcommand("census", "enumerate disc classes and counts");
    add_common_flags(census, cfg, config_path);

    CLI::App* verify = app.add_subcommand("verify", "run a numerical invariant suite");
    add_common_flags(verify, cfg, config_path);
    verify->add_option("--suite", suite, "areas|maslov|lifts|moser|barrier|stokes|all")
        ->check(CLI::IsMember({"areas", "maslov", "lifts", "moser", "barrier", "stokes", "all"}));

    CLI::App* exp = app.add_subcommand("export", "emit CSV/SVG figures and traces");
    exp->add_option("what", what, "disc-boundaries|intersections|flow-trace|hull")->required();
    add_common_flags(exp, cfg, config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        max_threads();  // validate the env var contract
        CLI::App* cmd = app.get_subcommands().front();
        if (!config_path.empty()) merge_config(cmd, cfg, config_path);
        if (cmd == census) return cmd_census(cfg);
        if (cmd == verify) return cmd_verify(cfg, suite);
        return cmd_export(cfg, what);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
