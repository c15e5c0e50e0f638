// End-to-end acceptance run: one pass/fail line per criterion, exit 1 on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "ctori/census.hpp"
#include "ctori/moser.hpp"

using namespace ctori;

namespace {

constexpr double kPi = std::numbers::pi;

ConicParams params(int n, double c = 10.0, double kappa = 0.05) {
    ConicParams p;
    p.n = n;
    p.c = c;
    p.kappa = kappa;
    return p;
}

PotentialSpec make_spec(Variant v, const ConicParams& p) {
    PotentialSpec s;
    s.variant = v;
    s.params = p;
    return s;
}

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int criterion, bool pass, const char* what, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what,
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

} // namespace

// 1. n+2 classes with nonzero count, total 2^n+1, < 10 s per n; 8. hull = n+2
static void criteria_census_and_hull() {
    bool counts_ok = true, hull_ok = true;
    double worst_time = 0.0;
    std::string note;
    for (int n = 0; n <= 6; ++n) {
        auto t0 = std::chrono::steady_clock::now();
        CensusTable t = disc_census(params(n));
        double dt = seconds_since(t0);
        worst_time = std::max(worst_time, dt);
        int nonzero = 0;
        for (const auto& [cls, cnt] : t.entries)
            if (cnt != 0) ++nonzero;
        if (nonzero != n + 2 || t.total != (1 << n) + 1 || dt >= 10.0) {
            counts_ok = false;
            note += " n=" + std::to_string(n);
        }
        if (t.hull_lattice_points != n + 2) hull_ok = false;
    }
    report(1, counts_ok, "census classes/totals for n = 0..6",
           fmt("max census time %.2f s", worst_time) + note);
    report(8, hull_ok, "hull lattice count n+2 for n = 0..6", "exact integer match");
}

// 2. lift_class_histogram over u_0 matches (n choose l); 3. lift residual identities;
// 5. Maslov indices
static void criteria_lifts_and_maslov() {
    bool hist_ok = true, resid_ok = true, maslov_ok = true;
    double worst_xy = 0.0, worst_bdry = 0.0;
    for (int n = 0; n <= 6; ++n) {
        auto p = params(n);
        auto lifts = enumerate_lifts(disc_u_alpha(0.0, p), p);
        auto hist = lift_class_histogram(lifts);
        for (int l = 0; l <= n; ++l)
            if (hist[HomotopyClass{l, 1, 0}] != binomial(n, l)) hist_ok = false;
        if (int(hist.size()) != n + 1) hist_ok = false;
        auto lifts_v = enumerate_lifts(disc_v_alpha(0.0, p), p);
        for (const auto& group : {&lifts, &lifts_v}) {
            for (const Lift& l : *group) {
                worst_xy = std::max(worst_xy, l.residual_xy);
                worst_bdry = std::max(worst_bdry, l.residual_boundary);
                if (l.residual_xy >= 1e-10 || l.residual_boundary >= 1e-10) resid_ok = false;
                if (n <= 4 && maslov_index(l.disc) != 2) maslov_ok = false;
            }
        }
    }
    for (double alpha : {0.0, kPi / 3.0, 2.2}) {
        auto p = params(2);
        if (maslov_index(disc_u_alpha(alpha, p)) != 2) maslov_ok = false;
        if (maslov_index(disc_v_alpha(alpha, p)) != 2) maslov_ok = false;
        if (maslov_index(disc_double_cover(alpha, p)) != 4) maslov_ok = false;
    }
    report(2, hist_ok, "binomial lift multiplicities for n = 0..6", "exact integer match");
    report(3, resid_ok, "lift identities on the 64x256 grid",
           fmt("max |xy-h| %.2e, max boundary ||x|-|y|| %.2e", worst_xy, worst_bdry));
    report(5, maslov_ok, "Maslov 2 for u_a, v_a, lifts; 4 for the double cover",
           "winding-number index");
}

// 4. area/Maslov constant on the monotone torus; lift area = projection area
static void criterion_monotonicity() {
    bool ratio_ok = true, equal_ok = true;
    double ratio_spread = 0.0, worst_diff = 0.0;
    for (int n = 0; n <= 4; ++n) {
        auto p = params(n);
        // disc areas on the monotone torus: flow each boundary to the
        // deformed picture and integrate the Liouville form there
        std::vector<double> ratios;
        for (double alpha : {0.0, 1.3}) {
            ratios.push_back(flowed_boundary_area(p, disc_u_alpha(alpha, p)) / 2.0);
            ratios.push_back(flowed_boundary_area(p, disc_v_alpha(alpha, p)) / 2.0);
        }
        for (double r : ratios) {
            double rel = std::abs(r - ratios[0]) / std::abs(ratios[0]);
            ratio_spread = std::max(ratio_spread, rel);
            if (rel >= 1e-5) ratio_ok = false;
        }

        // each lift has the area of its projection (boundary Liouville integrals)
        auto amb = make_spec(Variant::AmbientX, p);
        auto red = make_spec(Variant::Reduced, p);
        DiscMap u = disc_u_alpha(0.0, p);
        DiscMap v = disc_v_alpha(0.0, p);
        for (const DiscMap* base : {&u, &v}) {
            double area_red = boundary_liouville(red, boundary_loop(*base));
            auto lifts = enumerate_lifts(*base, p);
            for (const Lift& l : lifts) {
                double area_amb = boundary_liouville(amb, boundary_loop(l.disc));
                double diff = std::abs(area_amb - area_red);
                worst_diff = std::max(worst_diff, diff);
                if (diff >= 1e-6) equal_ok = false;
            }
        }
    }
    report(4, ratio_ok && equal_ok, "monotonicity: area/Maslov constant, lift = projection",
           fmt("ratio spread %.2e, max area mismatch %.2e", ratio_spread, worst_diff));
}

// 6. reduced flow pullback at calibrated kappa, 4th-order convergence,
// monotone phi along the straightening flow
static void criterion_moser() {
    auto p = params(2);
    double kappa = calibrate_kappa(p);
    p.kappa = kappa;
    FlowSpec spec;
    spec.kind = FlowKind::ReducedIsotopy;
    spec.params = p;

    bool pullback_ok = true;
    double worst = 0.0;
    auto tstd = torus_T_std(p);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    for (int i = 0; i < 20; ++i) {
        CVec q = tstd->param({ang(rng), ang(rng)});
        auto rep = verify_pullback(spec, q, 1.0, 8, 1000 + i);
        worst = std::max(worst, rep.max_residual);
        if (rep.max_residual >= 1e-5) pullback_ok = false;
    }

    auto endpoint = [&](int steps) {
        FlowSpec s = spec;
        s.steps = steps;
        return flow_endpoint(s, tstd->param({0.8, 2.1}), 1.0);
    };
    CVec ref = endpoint(2048);
    double e32 = (endpoint(32) - ref).norm();
    double e64 = (endpoint(64) - ref).norm();
    double e128 = (endpoint(128) - ref).norm();
    bool order_ok = e64 > 0.0 && e32 / e64 > 10.0 && e64 / e128 > 10.0;

    auto bc = barrier_constants(params(1), 5.0, 10000, 17);
    FlowSpec st;
    st.kind = FlowKind::Straightening;
    st.params = params(1);
    st.straightening_C = bc.C;
    st.domain_radius = 1e4;
    bool mono_ok = true;
    std::mt19937_64 rng2(32);
    std::uniform_real_distribution<double> box(-1.5, 1.5);
    for (int i = 0; i < 5; ++i) {
        CVec q(3);
        for (int j = 0; j < 3; ++j) q(j) = Complex(box(rng2), box(rng2));
        auto path = integrate_flow(st, q, 1.0);
        for (size_t s = 1; s < path.size(); ++s)
            if (path[s].phi > path[s - 1].phi + 1e-9) mono_ok = false;
    }

    report(6, pullback_ok && order_ok && mono_ok,
           "Moser flow: pullback, RK4 order, monotone straightening phi",
           fmt("kappa %.4g, max pullback residual %.2e", kappa, worst) +
               fmt(", step ratios %.1f/%.1f", e32 / e64, e64 / e128));
}

// 7. barrier certification for n in {1,2,3}, R = 5, 10^5 samples
static void criterion_barrier() {
    bool ok = true;
    std::string detail;
    for (int n : {1, 2, 3}) {
        try {
            auto bc = barrier_constants(params(n), 5.0, 100000, 41);
            detail += fmt(" n=%.0f K=%.3g;", double(n), bc.K);
        } catch (const NumericalError&) {
            ok = false;
            detail += " n=" + std::to_string(n) + " FAILED;";
        }
    }
    report(7, ok, "barrier inequalities at 10^5 samples", detail);
}

int main() {
    criteria_census_and_hull();
    criteria_lifts_and_maslov();
    criterion_monotonicity();
    criterion_moser();
    criterion_barrier();
    if (failures) {
        std::printf("ACCEPTANCE: %d criteria FAILED\n", failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria passed\n");
    return 0;
}
