#include "ctori/moser.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace ctori {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

PotentialSpec spec_of(Variant v, const ConicParams& p) {
    PotentialSpec s;
    s.variant = v;
    s.params = p;
    return s;
}

} // namespace

double FlowSpec::phi(const CVec& pt) const {
    if (kind == FlowKind::ReducedIsotopy) {
        return 0.5 * params.kappa * std::abs(eval_h(pt(0), pt(1), params));
    }
    // C Phi_1 - Phi_X = (C - 1) Phi_1 - 1/4 |w|^2
    double phi1 = eval_potential(spec_of(Variant::StandardC3Scaled, params), pt);
    Complex w = derived_w(pt(0), pt(1), pt(2), params);
    return (straightening_C - 1.0) * phi1 - 0.25 * std::norm(w);
}

double FlowSpec::dphi(const CVec& pt, const CVec& xi) const {
    if (kind == FlowKind::ReducedIsotopy) {
        Complex h = eval_h(pt(0), pt(1), params);
        double s = std::abs(h);
        if (s < kSingularTol) throw SingularLocus("FlowSpec::dphi at h = 0");
        Complex dhv = dh(pt(0), xi(0), xi(1), params);
        return 0.5 * params.kappa * std::real(std::conj(h) * dhv) / s;
    }
    double d1 = d_potential(spec_of(Variant::StandardC3Scaled, params), pt, xi);
    AmbientPoint a{pt(0), pt(1), pt(2)};
    Complex w = derived_w(a, params);
    Complex dw = d_derived_w(a, xi(0), xi(1), xi(2), params);
    return (straightening_C - 1.0) * d1 - 0.5 * std::real(std::conj(w) * dw);
}

double FlowSpec::omega_0(const CVec& pt, const CVec& v1, const CVec& v2) const {
    Variant v = (kind == FlowKind::ReducedIsotopy) ? Variant::StandardC2 : Variant::AmbientX;
    return eval_omega(spec_of(v, params), pt, v1, v2);
}

double FlowSpec::theta_0(const CVec& pt, const CVec& xi) const {
    Variant v = (kind == FlowKind::ReducedIsotopy) ? Variant::StandardC2 : Variant::AmbientX;
    return eval_liouville(spec_of(v, params), pt, xi);
}

double FlowSpec::omega_t(double t, const CVec& pt, const CVec& v1, const CVec& v2) const {
    if (kind == FlowKind::ReducedIsotopy) {
        double flat = eval_omega(spec_of(Variant::StandardC2, params), pt, v1, v2);
        Complex h = eval_h(pt(0), pt(1), params);
        double s = std::abs(h);
        if (s < kSingularTol) throw SingularLocus("FlowSpec::omega_t at h = 0");
        Complex dh1 = dh(pt(0), v1(0), v1(1), params);
        Complex dh2 = dh(pt(0), v2(0), v2(1), params);
        return flat + t * 0.5 * params.kappa / s * std::imag(std::conj(dh1) * dh2);
    }
    double w0 = eval_omega(spec_of(Variant::AmbientX, params), pt, v1, v2);
    double w1 = eval_omega(spec_of(Variant::StandardC3Scaled, params), pt, v1, v2);
    return (1.0 - t) * w0 + t * straightening_C * w1;
}

double FlowSpec::theta_t(double t, const CVec& pt, const CVec& xi) const {
    // theta_t = theta_0 + t d^c phi, with d^c phi (xi) = -dphi(i xi)
    return theta_0(pt, xi) - t * dphi(pt, kI * xi);
}

CVec moser_vector_field(const FlowSpec& spec, double t, const CVec& pt) {
    const int m = spec.dim();
    const int d = 2 * m;
    std::vector<CVec> basis;
    basis.reserve(d);
    for (int j = 0; j < m; ++j) {
        CVec e = CVec::Zero(m);
        e(j) = 1.0;
        basis.push_back(e);
        e(j) = kI;
        basis.push_back(e);
    }
    Eigen::MatrixXd gram(d, d);
    Eigen::VectorXd rhs(d);
    for (int k = 0; k < d; ++k) {
        rhs(k) = -spec.dphi(pt, basis[k]);
        for (int l = 0; l < d; ++l)
            gram(k, l) = spec.omega_t(t, pt, basis[k], CVec(kI * basis[l]));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (gram + gram.transpose()));
    double lo = es.eigenvalues().minCoeff();
    double hi = es.eigenvalues().maxCoeff();
    if (lo <= 0.0 || hi / lo > 1e12)
        throw DegenerateMetric("moser_vector_field: Gram matrix not positive / ill-conditioned");
    Eigen::VectorXd sol = gram.ldlt().solve(rhs);
    CVec xi = CVec::Zero(m);
    for (int k = 0; k < d; ++k) xi += sol(k) * basis[k];
    return xi;
}

namespace {

void check_domain(const FlowSpec& spec, const CVec& pt) {
    if (pt.norm() > spec.domain_radius)
        throw LeftDomain("integrate_flow: trajectory left the domain ball");
    if (spec.kind == FlowKind::ReducedIsotopy) {
        double s = std::abs(eval_h(pt(0), pt(1), spec.params));
        if (s < spec.singular_h_min)
            throw NearSingularLocus("integrate_flow: trajectory approached h = 0");
    }
}

} // namespace

namespace {

// Time nodes for the integration.  The straightening flow contracts like
// (1 + t(C-1))^{-1/2}, so its stiffness decays as 1/(1 + t(C-1)); a geometric
// grid equidistributes stiffness * dt and keeps RK4 stable for large C.
std::vector<double> time_grid(const FlowSpec& spec, double t_end) {
    std::vector<double> t(spec.steps + 1);
    double C = spec.straightening_C;
    if (spec.kind == FlowKind::Straightening && C > 1.0 + 1e-9) {
        for (int k = 0; k <= spec.steps; ++k)
            t[k] = t_end * (std::pow(C, double(k) / spec.steps) - 1.0) / (C - 1.0);
    } else {
        for (int k = 0; k <= spec.steps; ++k) t[k] = t_end * k / spec.steps;
    }
    return t;
}

} // namespace

std::vector<FlowSample> integrate_flow(const FlowSpec& spec, const CVec& p0, double t_end) {
    if (spec.steps < 16) throw NumericalError("integrate_flow: step_count must be >= 16");
    check_domain(spec, p0);
    std::vector<FlowSample> path;
    path.push_back({0.0, p0, spec.phi(p0)});
    CVec p = p0;
    std::vector<double> nodes = time_grid(spec, t_end);
    for (int s = 0; s < spec.steps; ++s) {
        double t = nodes[s];
        double dt = nodes[s + 1] - nodes[s];
        CVec k1 = moser_vector_field(spec, t, p);
        CVec k2 = moser_vector_field(spec, t + 0.5 * dt, CVec(p + 0.5 * dt * k1));
        CVec k3 = moser_vector_field(spec, t + 0.5 * dt, CVec(p + 0.5 * dt * k2));
        CVec k4 = moser_vector_field(spec, t + dt, CVec(p + dt * k3));
        p = p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        check_domain(spec, p);
        path.push_back({nodes[s + 1], p, spec.phi(p)});
    }
    return path;
}

CVec flow_endpoint(const FlowSpec& spec, const CVec& p0, double t_end) {
    return integrate_flow(spec, p0, t_end).back().pt;
}

PullbackReport verify_pullback(const FlowSpec& spec, const CVec& p0, double t_end,
                               int samples, std::uint64_t seed) {
    const int m = spec.dim();
    const int d = 2 * m;
    const double fd = 1e-6;

    // finite-difference Jacobian of the flow map
    std::vector<CVec> cols(d);
    int k = 0;
    for (int j = 0; j < m; ++j) {
        for (Complex dir : {Complex(1.0, 0.0), kI}) {
            CVec e = CVec::Zero(m);
            e(j) = dir;
            CVec plus = flow_endpoint(spec, CVec(p0 + fd * e), t_end);
            CVec minus = flow_endpoint(spec, CVec(p0 - fd * e), t_end);
            cols[k++] = (plus - minus) / (2.0 * fd);
        }
    }
    CVec image = flow_endpoint(spec, p0, t_end);

    auto push = [&](const CVec& v) {
        CVec out = CVec::Zero(m);
        for (int j = 0; j < m; ++j) {
            out += std::real(v(j)) * cols[2 * j];
            out += std::imag(v(j)) * cols[2 * j + 1];
        }
        return out;
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    auto random_tangent = [&] {
        CVec v(m);
        for (int j = 0; j < m; ++j) v(j) = Complex(gauss(rng), gauss(rng));
        return v;
    };

    PullbackReport rep;
    rep.samples = samples;
    for (int s = 0; s < samples; ++s) {
        CVec v1 = random_tangent(), v2 = random_tangent();
        double before = spec.omega_0(p0, v1, v2);
        double after = spec.omega_t(t_end, image, push(v1), push(v2));
        rep.max_residual = std::max(rep.max_residual,
                                    std::abs(after - before) / (v1.norm() * v2.norm()));
    }
    return rep;
}

namespace {

// uniform point at Phi_1-metric radius r: gaussian direction on the scaled sphere
CVec phi1_sphere_point(const ConicParams& p, double r, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    CVec q(3);
    for (int j = 0; j < 3; ++j) q(j) = Complex(gauss(rng), gauss(rng));
    PotentialSpec s;
    s.variant = Variant::StandardC3Scaled;
    s.params = p;
    double norm = std::sqrt(eval_potential(s, q));
    return CVec(q * (r / norm));
}

} // namespace

BarrierConstants barrier_constants(const ConicParams& p, double R, int samples,
                                   std::uint64_t seed) {
    if (samples < 10000) throw NumericalError("barrier_constants: need at least 10^4 samples");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    PotentialSpec phi1_spec;
    phi1_spec.variant = Variant::StandardC3Scaled;
    phi1_spec.params = p;

    auto ratio = [&](const CVec& pt) {
        Complex w = derived_w(pt(0), pt(1), pt(2), p);
        return 0.25 * std::norm(w) / eval_potential(phi1_spec, pt);
    };

    double K = 0.0;
    for (int s = 0; s < samples; ++s) {
        double r = R * (1.0 + unif(rng));  // in [R, 2R]
        K = std::max(K, ratio(phi1_sphere_point(p, r, rng)));
    }
    // A raw sampled max almost surely fails its own denser re-check; a 5%
    // headroom keeps it an upper bound for the sup at certification density
    // while every downstream inequality only needs *some* valid K.
    K *= 1.05;
    BarrierConstants bc{R, K, 2.0 * K + 1.0, 2.5 * K * R * R};

    // certification at 4x density: phi <= 2K Phi_1 on B(0,2R) and
    // phi >= K Phi_1 on the outer annulus beyond sqrt(3) R.
    auto phi = [&](const CVec& pt) {
        Complex w = derived_w(pt(0), pt(1), pt(2), p);
        return (bc.C - 1.0) * eval_potential(phi1_spec, pt) - 0.25 * std::norm(w);
    };
    const double r_lo = std::sqrt(3.0) * R;
    for (int s = 0; s < 4 * samples; ++s) {
        double r_ball = 2.0 * R * std::pow(unif(rng), 1.0 / 6.0);
        CVec q = phi1_sphere_point(p, r_ball, rng);
        if (phi(q) > 2.0 * K * eval_potential(phi1_spec, q) + 1e-9)
            throw SamplingInsufficient("barrier_constants: upper bound failed on B(0,2R)");
        double r_ann = r_lo + (2.0 * R - r_lo) * unif(rng);
        CVec qa = phi1_sphere_point(p, r_ann, rng);
        if (phi(qa) < K * eval_potential(phi1_spec, qa) - 1e-9)
            throw SamplingInsufficient("barrier_constants: lower bound failed on the annulus");
    }
    return bc;
}

double calibrate_kappa(ConicParams p, double tol, int grid) {
    auto tstd = torus_T_std(p);
    for (double kappa = 0.1; kappa > 1e-6; kappa *= 0.5) {
        p.kappa = kappa;
        FlowSpec spec;
        spec.kind = FlowKind::ReducedIsotopy;
        spec.params = p;
        bool ok = true;
        for (int i = 0; i < grid && ok; ++i) {
            for (int j = 0; j < grid && ok; ++j) {
                CVec q = tstd->param({2.0 * kPi * i / grid, 2.0 * kPi * j / grid});
                try {
                    auto rep = verify_pullback(spec, q, 1.0, 8, 7 + i * grid + j);
                    ok = rep.max_residual < tol;
                } catch (const NumericalError&) {
                    ok = false;
                }
            }
        }
        if (ok) return kappa;
    }
    throw NumericalError("calibrate_kappa: no kappa in (1e-6, 0.1] satisfied the criteria");
}

namespace {

// periodic Catmull-Rom in one variable
Complex catmull_rom(Complex m1, Complex p0, Complex p1, Complex p2, double t) {
    return 0.5 * ((2.0 * p0) + (-m1 + p1) * t + (2.0 * m1 - 5.0 * p0 + 4.0 * p1 - p2) * t * t +
                  (-m1 + 3.0 * p0 - 3.0 * p1 + p2) * t * t * t);
}

} // namespace

std::shared_ptr<const Torus> flowed_torus(const ConicParams& p, int grid, int steps) {
    FlowSpec spec;
    spec.kind = FlowKind::ReducedIsotopy;
    spec.params = p;
    spec.steps = steps;
    auto tstd = torus_T_std(p);

    auto data = std::make_shared<std::vector<CVec>>();
    data->reserve(size_t(grid) * grid);
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
            data->push_back(flow_endpoint(
                spec, tstd->param({2.0 * kPi * i / grid, 2.0 * kPi * j / grid}), 1.0));

    auto t = std::make_shared<Torus>();
    t->space = Space::Reduced;
    t->angles = 2;
    t->params = p;
    t->param = [data, grid](const std::vector<double>& th) {
        auto wrap = [grid](int i) { return ((i % grid) + grid) % grid; };
        auto at = [&](int i, int j) -> const CVec& {
            return (*data)[size_t(wrap(i)) * grid + wrap(j)];
        };
        double u = th[0] / (2.0 * kPi) * grid;
        double v = th[1] / (2.0 * kPi) * grid;
        int i0 = int(std::floor(u)), j0 = int(std::floor(v));
        double fu = u - i0, fv = v - j0;
        CVec out(2);
        for (int c = 0; c < 2; ++c) {
            Complex rows[4];
            for (int di = -1; di <= 2; ++di) {
                rows[di + 1] = catmull_rom(at(i0 + di, j0 - 1)(c), at(i0 + di, j0)(c),
                                           at(i0 + di, j0 + 1)(c), at(i0 + di, j0 + 2)(c), fv);
            }
            out(c) = catmull_rom(rows[0], rows[1], rows[2], rows[3], fu);
        }
        return out;
    };
    return t;
}

double flowed_boundary_area(const ConicParams& p, const DiscMap& u, int loop_samples,
                            int steps) {
    FlowSpec spec;
    spec.kind = FlowKind::ReducedIsotopy;
    spec.params = p;
    spec.steps = steps;
    Loop flowed;
    auto pts = std::make_shared<std::vector<CVec>>(loop_samples);
    for (int m = 0; m < loop_samples; ++m) {
        Complex zeta = std::polar(1.0, 2.0 * kPi * m / loop_samples);
        (*pts)[m] = flow_endpoint(spec, u.f(zeta), 1.0);
    }
    flowed.f = [pts, loop_samples](double t) {
        int m = int(std::lround(t / (2.0 * kPi) * loop_samples)) % loop_samples;
        return (*pts)[m];
    };
    PotentialSpec red;
    red.variant = Variant::Reduced;
    red.params = p;
    return boundary_liouville(red, flowed, loop_samples);
}

} // namespace ctori
