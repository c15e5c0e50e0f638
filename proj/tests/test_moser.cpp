#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ctori/moser.hpp"

using namespace ctori;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

ConicParams params(int n, double c = 10.0, double kappa = 0.05) {
    ConicParams p;
    p.n = n;
    p.c = c;
    p.kappa = kappa;
    return p;
}

FlowSpec reduced_spec(const ConicParams& p) {
    FlowSpec s;
    s.kind = FlowKind::ReducedIsotopy;
    s.params = p;
    return s;
}

FlowSpec straightening_spec(const ConicParams& p, double C) {
    FlowSpec s;
    s.kind = FlowKind::Straightening;
    s.params = p;
    s.straightening_C = C;
    s.domain_radius = 500.0;
    return s;
}

std::mt19937_64 rng(4242);

Complex rc(double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    return {u(rng), u(rng)};
}

std::vector<CVec> real_basis(int m) {
    std::vector<CVec> basis;
    for (int j = 0; j < m; ++j) {
        CVec e = CVec::Zero(m);
        e(j) = 1.0;
        basis.push_back(e);
        e(j) = kI;
        basis.push_back(e);
    }
    return basis;
}

} // namespace

TEST_CASE("vector field solves the defining equation omega_t(xi, .) = -dphi") {
    auto p = params(2);
    auto specs = {reduced_spec(p), straightening_spec(p, 3.0)};
    for (const FlowSpec& spec : specs) {
        const int m = spec.dim();
        auto basis = real_basis(m);
        for (int i = 0; i < 20; ++i) {
            CVec pt(m);
            for (int j = 0; j < m; ++j) pt(j) = rc(1.5);
            if (spec.kind == FlowKind::ReducedIsotopy &&
                std::abs(eval_h(pt(0), pt(1), p)) < 0.3) continue;
            for (double t : {0.0, 0.35, 1.0}) {
                CVec xi = moser_vector_field(spec, t, pt);
                // iota_xi omega_t = -d^c phi, i.e. omega_t(xi, v) = dphi(iv)
                for (const CVec& v : basis) {
                    double lhs = spec.omega_t(t, pt, xi, v);
                    double rhs = spec.dphi(pt, CVec(kI * v));
                    CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
                }
            }
        }
    }
}

TEST_CASE("reduced field at t = 0 is minus the flat gradient") {
    auto p = params(1);
    for (int i = 0; i < 30; ++i) {
        CVec pt(2);
        pt << rc(1.5), rc(1.5);
        Complex h = eval_h(pt(0), pt(1), p);
        if (std::abs(h) < 0.3) continue;
        // flat metric g(u, v) = Re <u, v>, phi = (kappa/2)|h|:
        // grad phi = (kappa/2) (h / |h|) conj(dh) componentwise
        Complex unit = h / std::abs(h);
        CVec grad(2);
        grad << 0.5 * p.kappa * unit * std::conj(p.c * double(p.n) * cpow_int(pt(0), p.n - 1)),
            0.5 * p.kappa * unit / p.c;
        CVec xi = moser_vector_field(reduced_spec(p), 0.0, pt);
        CHECK((xi + grad).norm() < 1e-10);
    }
}

TEST_CASE("rk4 endpoint converges at fourth order") {
    auto p = params(2, 10.0, 0.1);
    CVec q0(2);
    q0 << Complex(1.0, 0.2), Complex(-0.3, 0.9);
    auto endpoint = [&](int steps) {
        FlowSpec s = reduced_spec(p);
        s.steps = steps;
        return flow_endpoint(s, q0, 1.0);
    };
    CVec ref = endpoint(2048);
    double e32 = (endpoint(32) - ref).norm();
    double e64 = (endpoint(64) - ref).norm();
    double e128 = (endpoint(128) - ref).norm();
    CHECK(e64 > 0.0);
    CHECK(e32 / e64 > 10.0);
    CHECK(e64 / e128 > 10.0);
    CHECK(e32 / e64 < 24.0);
}

TEST_CASE("flow guards") {
    auto p = params(1);
    FlowSpec s = reduced_spec(p);
    CVec near_c(2);
    near_c << Complex(0.0905), Complex(1.0);  // |h| = 0.005
    CHECK_THROWS_AS(integrate_flow(s, near_c, 1.0), NearSingularLocus);

    FlowSpec tiny = reduced_spec(p);
    tiny.domain_radius = 0.5;
    CVec q(2);
    q << Complex(1.0), Complex(1.0);
    CHECK_THROWS_AS(integrate_flow(tiny, q, 1.0), LeftDomain);

    FlowSpec coarse = reduced_spec(p);
    coarse.steps = 8;
    CHECK_THROWS_AS(integrate_flow(coarse, q, 1.0), NumericalError);
}

TEST_CASE("reduced isotopy pulls the deformed form back to the flat one") {
    auto p = params(1);
    auto tstd = torus_T_std(p);
    FlowSpec s = reduced_spec(p);
    for (int i = 0; i < 5; ++i) {
        CVec q = tstd->param({2.0 * kPi * i / 5.0, 2.0 * kPi * (i * 3 % 5) / 5.0});
        auto rep = verify_pullback(s, q, 1.0, 16, 100 + i);
        CHECK(rep.samples == 16);
        CHECK(rep.max_residual < 1e-5);
    }
}

TEST_CASE("straightening pulls C omega_1 back to the ambient form") {
    // short flow time: the contraction factor stays ~1/2, so the
    // finite-difference Jacobian of the flow map remains well-conditioned
    auto p = params(1);
    auto bc = barrier_constants(p, 5.0, 10000, 3);
    FlowSpec s = straightening_spec(p, bc.C);
    s.steps = 512;
    double tau = 3.0 / (bc.C - 1.0);
    std::vector<CVec> pts;
    CVec a(3);
    a << Complex(1.0, 0.3), Complex(-0.4, 0.2), Complex(0.5, -0.8);
    pts.push_back(a);
    a << Complex(0.1), Complex(2.0), Complex(1.0, 1.0);
    pts.push_back(a);
    for (const CVec& q : pts) {
        auto rep = verify_pullback(s, q, tau, 16, 11);
        CHECK(rep.max_residual < 1e-4);
    }
}

TEST_CASE("phi decreases along the straightening flow") {
    auto p = params(2);
    auto bc = barrier_constants(p, 5.0, 10000, 5);
    FlowSpec s = straightening_spec(p, bc.C);
    // phi at the origin of X is -c^2/4
    CHECK(s.phi(CVec::Zero(3)) == doctest::Approx(-25.0));
    CVec q(3);
    q << Complex(0.8, -0.1), Complex(1.2, 0.4), Complex(-0.6, 0.9);
    auto path = integrate_flow(s, q, 1.0);
    REQUIRE(path.size() == size_t(s.steps) + 1);
    for (size_t i = 1; i < path.size(); ++i)
        CHECK(path[i].phi <= path[i - 1].phi + 1e-9);
}

TEST_CASE("barrier constants") {
    auto p = params(1);
    auto bc = barrier_constants(p, 5.0, 10000, 1);
    CHECK(bc.R == 5.0);
    CHECK(bc.K > 0.0);
    CHECK(bc.C == doctest::Approx(2.0 * bc.K + 1.0));
    CHECK(bc.M == doctest::Approx(2.5 * bc.K * 25.0));
    // deterministic under the seed
    auto bc2 = barrier_constants(p, 5.0, 10000, 1);
    CHECK(bc2.K == bc.K);
    // K grows with the sample budget (sup estimate is monotone in refinement)
    auto bc3 = barrier_constants(p, 5.0, 40000, 1);
    CHECK(bc3.K >= bc.K - 1e-12);
    CHECK_THROWS_AS(barrier_constants(p, 5.0, 100, 1), NumericalError);
}

TEST_CASE("kappa calibration") {
    auto p = params(1);
    double kappa = calibrate_kappa(p, 1e-5, 4);
    CHECK(kappa > 0.0);
    CHECK(kappa <= 0.1);
    p.kappa = kappa;
    auto tstd = torus_T_std(p);
    auto rep = verify_pullback(reduced_spec(p), tstd->param({0.4, 2.2}), 1.0, 20, 77);
    CHECK(rep.max_residual < 1e-5);
}

TEST_CASE("flowed torus interpolation matches the direct flow") {
    auto p = params(1);
    auto T = flowed_torus(p, 64, 64);
    auto tstd = torus_T_std(p);
    FlowSpec s = reduced_spec(p);
    for (auto [a, b] : {std::pair{0.37, 1.91}, {3.1, 4.72}, {5.9, 0.13}}) {
        CVec interp = T->param({a, b});
        CVec direct = flow_endpoint(s, tstd->param({a, b}), 1.0);
        CHECK((interp - direct).norm() < 1e-4);
        CHECK(std::abs(eval_h(interp(0), interp(1), p)) > s.singular_h_min);
    }
}

TEST_CASE("flowed boundary area recovers the flat disc area") {
    auto p = params(1);
    for (double alpha : {0.0, 1.1}) {
        CHECK(std::abs(flowed_boundary_area(p, disc_u_alpha(alpha, p)) - kPi) < 1e-5);
        CHECK(std::abs(flowed_boundary_area(p, disc_v_alpha(alpha, p)) - kPi) < 1e-5);
    }
    auto p2 = params(2);
    CHECK(std::abs(flowed_boundary_area(p2, disc_u_alpha(0.6, p2)) - kPi) < 1e-5);
}
