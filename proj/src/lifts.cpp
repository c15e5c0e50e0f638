#include "ctori/lifts.hpp"

#include <cmath>
#include <numbers>

namespace ctori {

namespace {

constexpr double kPi = std::numbers::pi;

Complex blaschke_factor(Complex z, Complex t) { return (z - t) / (1.0 - std::conj(t) * z); }

} // namespace

Complex Blaschke::operator()(Complex z) const {
    Complex r = 1.0;
    for (size_t j = 0; j < points.size(); ++j) {
        Complex f = blaschke_factor(z, points[j]);
        int e = exponents.empty() ? 1 : exponents[j];
        r *= (e >= 0) ? f : 1.0 / f;
    }
    return r;
}

Blaschke make_blaschke(std::vector<Complex> t_points, std::vector<int> exponents) {
    for (Complex t : t_points)
        if (std::abs(t) > 1.0 - 1e-6)
            throw PointOnBoundary("make_blaschke: point too close to the unit circle");
    if (!exponents.empty() && exponents.size() != t_points.size())
        throw NumericalError("make_blaschke: exponent count mismatch");
    return Blaschke{std::move(t_points), std::move(exponents)};
}

std::function<Complex(Complex)> holomorphic_sqrt(std::function<Complex(Complex)> f,
                                                 std::vector<Complex> double_zeros) {
    // argument-principle check: f must have exactly 2 |D| zeros in the disc
    int expected = 2 * int(double_zeros.size());
    int w = winding_number(f);
    if (w != expected)
        throw UnexpectedZero("holomorphic_sqrt: winding " + std::to_string(w) +
                             " does not match the declared double zeros");

    auto b = std::make_shared<Blaschke>(make_blaschke(double_zeros));
    auto zeros = std::make_shared<std::vector<Complex>>(double_zeros);
    auto f0 = [f, b, zeros](Complex z) {
        // f/b^2 has removable singularities at the zeros; sidestep exact hits
        for (Complex t : *zeros)
            if (std::abs(z - t) < 1e-9) {
                z += Complex(1.1e-9, 0.7e-9);
                break;
            }
        Complex bz = (*b)(z);
        return f(z) / (bz * bz);
    };
    Complex center = f0(Complex(0.0));
    if (std::abs(center) < 1e-12)
        throw UnexpectedZero("holomorphic_sqrt: remainder vanishes at the center");
    double arg0 = std::arg(center);

    // log f0 continued radially from the principal branch at the center
    auto log_f0 = [f0, arg0](Complex z) {
        int m = 12;
        while (true) {
            double total = 0.0;
            bool ok = true;
            Complex prev = f0(Complex(0.0));
            for (int s = 1; s <= m; ++s) {
                Complex cur = f0(z * (double(s) / m));
                double inc = std::arg(cur / prev);
                if (std::abs(inc) > 0.5 * kPi) {
                    ok = false;
                    break;
                }
                total += inc;
                prev = cur;
            }
            if (ok) return Complex(std::log(std::abs(prev)), arg0 + total);
            m *= 2;
            if (m > 4096)
                throw BranchJump("holomorphic_sqrt: radial phase continuation failed");
        }
    };

    auto g = [b, log_f0](Complex z) { return (*b)(z) * std::exp(0.5 * log_f0(z)); };

    // spot-check g^2 = f
    for (int s = 0; s < 16; ++s) {
        Complex z = std::polar(0.1 + 0.05 * s, 2.39996 * s);
        if (std::abs(g(z) * g(z) - f(z)) >
            1e-10 * std::max(1.0, std::abs(f(z))))
            throw NumericalError("holomorphic_sqrt: g^2 residual above tolerance");
    }
    return g;
}

std::vector<Lift> enumerate_lifts(const DiscMap& u_red, const AmbientPoint& p0,
                                  const ConicParams& p, int radial_samples,
                                  int angular_samples) {
    std::vector<Complex> t_pts = intersections_with_C(u_red, p);
    const int k = int(t_pts.size());

    CVec marked_red = u_red.f(Complex(1.0));
    Complex h_marked = eval_h(marked_red(0), marked_red(1), p);
    if (std::abs(p0.x * p0.y - h_marked) > 1e-9 ||
        std::abs(std::abs(p0.x) - std::abs(p0.y)) > 1e-9)
        throw NumericalError("enumerate_lifts: p0 does not lie on T over u_red(1)");

    auto torus = build_torus_T(p, u_red.boundary);
    auto h_of_u = [&u_red, &p](Complex z) {
        CVec q = u_red.f(z);
        return eval_h(q(0), q(1), p);
    };
    auto u_red_shared = std::make_shared<DiscMap>(u_red);

    // Shared grid data for the residual checks.  All lifts factor through the
    // same f0 = h(u) / prod beta_j (regular and nonvanishing: the Blaschke
    // factors cancel the simple zeros of h(u)), so its branch-continued
    // square root is marched over the polar grid once.
    auto beta = [&t_pts](int j, Complex z) {
        return (z - t_pts[j]) / (1.0 - std::conj(t_pts[j]) * z);
    };
    auto f0 = [&](Complex z) {
        for (Complex t : t_pts)
            if (std::abs(z - t) < 1e-9) {
                z += Complex(1.1e-9, 0.7e-9);
                break;
            }
        Complex r = h_of_u(z);
        for (int j = 0; j < k; ++j) r /= beta(j, z);
        return r;
    };
    const Complex f0_center = f0(Complex(0.0));
    const double arg_center = std::arg(f0_center);

    struct GridPoint {
        Complex z;
        Complex h;
        Complex sq;  // exp(log(f0)/2), branch continued radially
        std::vector<Complex> factors;
    };
    std::vector<GridPoint> grid(size_t(radial_samples) * angular_samples);
    for (int j = 0; j < angular_samples; ++j) {
        Complex prev = f0_center;
        double prev_r = 0.0, total = arg_center;
        double phase = 2.0 * kPi * j / angular_samples;
        for (int i = 1; i <= radial_samples; ++i) {
            double r = double(i) / radial_samples;
            // phase continuation along the ray, bisecting large increments
            while (true) {
                Complex cur = f0(std::polar(r, phase));
                double inc = std::arg(cur / prev);
                if (std::abs(inc) <= 0.5 * kPi) {
                    total += inc;
                    prev = cur;
                    prev_r = r;
                    break;
                }
                double mid = 0.5 * (prev_r + r);
                Complex cm = f0(std::polar(mid, phase));
                double im = std::arg(cm / prev);
                if (std::abs(im) > 0.5 * kPi)
                    throw BranchJump("enumerate_lifts: grid phase continuation failed");
                total += im;
                prev = cm;
                prev_r = mid;
            }
            GridPoint& g = grid[size_t(i - 1) * angular_samples + j];
            g.z = std::polar(r, phase);
            g.h = h_of_u(g.z);
            g.sq = std::exp(Complex(0.5 * std::log(std::abs(prev)), 0.5 * total));
            g.factors.resize(k);
            for (int jj = 0; jj < k; ++jj) g.factors[jj] = beta(jj, g.z);
        }
    }

    std::vector<Lift> lifts;
    lifts.reserve(size_t(1) << k);
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> eps(k);
        std::vector<Complex> d_plus, d_minus;
        for (int j = 0; j < k; ++j) {
            eps[j] = (mask >> (k - 1 - j)) & 1 ? +1 : -1;
            (eps[j] > 0 ? d_plus : d_minus).push_back(t_pts[j]);
        }
        Blaschke theta = make_blaschke(t_pts, eps);
        Blaschke theta_inv = make_blaschke(t_pts, [&] {
            std::vector<int> neg(eps);
            for (int& e : neg) e = -e;
            return neg;
        }());

        auto zeta_p = holomorphic_sqrt(
            [h_of_u, theta](Complex z) { return h_of_u(z) * theta(z); }, d_plus);
        auto zeta_m = holomorphic_sqrt(
            [h_of_u, theta_inv](Complex z) { return h_of_u(z) * theta_inv(z); }, d_minus);

        // fix the relative sign of the two roots so that zeta_+ zeta_- = h(u)
        Complex s0 = zeta_p(1.0) * zeta_m(1.0) / h_of_u(1.0);
        double flip = 1.0;
        if (std::abs(s0 - 1.0) > std::abs(s0 + 1.0)) flip = -1.0;
        if (std::abs(flip * s0 - 1.0) > 1e-8)
            throw NumericalError("enumerate_lifts: square-root sign fix failed");

        Complex lam = p0.x / zeta_p(1.0);
        if (std::abs(std::abs(lam) - 1.0) > 1e-8)
            throw NumericalError("enumerate_lifts: normalization factor is not unitary");

        Lift lift;
        lift.eps = eps;
        lift.disc.space = Space::Ambient;
        lift.disc.boundary = torus;
        lift.disc.projection = u_red_shared;
        lift.disc.f = [zeta_p, zeta_m, lam, flip, u_red_shared](Complex z) {
            CVec out(3);
            out(0) = lam * zeta_p(z);
            out(1) = flip * zeta_m(z) / lam;
            out(2) = u_red_shared->f(z)(0);
            return out;
        };
        lift.disc.marked = lift.disc.f(Complex(1.0));

        // residual checks on the polar grid (x, y from the shared march)
        for (int i = 1; i <= radial_samples; ++i) {
            for (int j = 0; j < angular_samples; ++j) {
                const GridPoint& g = grid[size_t(i - 1) * angular_samples + j];
                Complex bp = 1.0, bm = 1.0;
                for (int jj = 0; jj < k; ++jj)
                    (eps[jj] > 0 ? bp : bm) *= g.factors[jj];
                Complex x = lam * bp * g.sq;
                Complex y = flip * bm * g.sq / lam;
                lift.residual_xy = std::max(lift.residual_xy, std::abs(x * y - g.h));
                if (i == radial_samples)
                    lift.residual_boundary =
                        std::max(lift.residual_boundary,
                                 std::abs(std::abs(x) - std::abs(y)));
            }
        }
        lift.cls = class_coordinates(lift.disc);
        lifts.push_back(std::move(lift));
    }
    return lifts;
}

std::vector<Lift> enumerate_lifts(const DiscMap& u_red, const ConicParams& p) {
    CVec m = u_red.f(Complex(1.0));
    Complex h = eval_h(m(0), m(1), p);
    Complex x = std::sqrt(h);
    if (std::arg(x) < 0.0) x = -x;  // Arg x in [0, pi)
    AmbientPoint p0{x, h / x, m(0)};
    return enumerate_lifts(u_red, p0, p);
}

std::map<HomotopyClass, int> lift_class_histogram(const std::vector<Lift>& lifts) {
    std::map<HomotopyClass, int> hist;
    for (const Lift& l : lifts) hist[l.cls] += 1;
    return hist;
}

} // namespace ctori
