#include "ctori/discs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace ctori {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

CVec make2(Complex a, Complex b) {
    CVec v(2);
    v << a, b;
    return v;
}

CVec make3(Complex a, Complex b, Complex c) {
    CVec v(3);
    v << a, b, c;
    return v;
}

} // namespace

std::shared_ptr<const Torus> torus_T_std(const ConicParams& p) {
    auto t = std::make_shared<Torus>();
    t->space = Space::Reduced;
    t->angles = 2;
    t->params = p;
    t->param = [](const std::vector<double>& th) {
        return make2(std::polar(1.0, th[0]), std::polar(1.0, th[1]));
    };
    t->frame = [](const CVec& pt) {
        return std::vector<CVec>{make2(kI * pt(0), 0.0), make2(0.0, kI * pt(1))};
    };
    return t;
}

std::shared_ptr<const Torus> build_torus_T(const ConicParams& p,
                                           std::shared_ptr<const Torus> base) {
    // reject bases that run too close to the discriminant curve
    double min_h = 1e300;
    const int grid = 64;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            CVec zw = base->param({2.0 * kPi * i / grid, 2.0 * kPi * j / grid});
            min_h = std::min(min_h, std::abs(eval_h(zw(0), zw(1), p)));
        }
    }
    if (min_h <= 0.1)
        throw TooCloseToC("build_torus_T: min |h| on the base torus is " + std::to_string(min_h));

    auto t = std::make_shared<Torus>();
    t->space = Space::Ambient;
    t->angles = 3;
    t->params = p;
    t->param = [base, p](const std::vector<double>& th) {
        CVec zw = base->param({th[0], th[1]});
        Complex h = eval_h(zw(0), zw(1), p);
        Complex x = std::sqrt(std::abs(h)) * std::polar(1.0, th[2]);
        Complex y = h / x;
        return make3(x, y, zw(0));
    };
    return t;
}

CVec disc_eval(const DiscMap& u, Complex zeta) { return u.f(zeta); }

CVec disc_deriv(const DiscMap& u, Complex zeta) {
    if (u.df) return u.df(zeta);
    const double d = 1e-6;
    return (u.f(zeta + d) - u.f(zeta - d)) / (2.0 * d);
}

DiscMap disc_u_alpha(double alpha, const ConicParams& p) {
    Complex ea = std::polar(1.0, alpha);
    DiscMap u;
    u.space = Space::Reduced;
    u.f = [ea](Complex z) { return make2(z, ea); };
    u.df = [](Complex) { return make2(1.0, 0.0); };
    u.boundary = torus_T_std(p);
    std::vector<Complex> coeffs(p.n + 1, 0.0);
    coeffs[0] = ea / p.c - 1.0;
    if (p.n == 0) {
        coeffs[0] += p.c;
    } else {
        coeffs[p.n] = p.c;
    }
    u.h_poly = coeffs;
    u.alpha_u = alpha;
    u.marked = make2(1.0, ea);
    return u;
}

DiscMap disc_v_alpha(double alpha, const ConicParams& p) {
    Complex ea = std::polar(1.0, alpha);
    DiscMap v;
    v.space = Space::Reduced;
    v.f = [ea](Complex z) { return make2(ea, z); };
    v.df = [](Complex) { return make2(0.0, 1.0); };
    v.boundary = torus_T_std(p);
    v.h_poly = std::vector<Complex>{p.c * cpow_int(ea, p.n) - 1.0, 1.0 / p.c};
    v.marked = make2(ea, 1.0);
    return v;
}

DiscMap disc_double_cover(double alpha, const ConicParams& p) {
    Complex ea = std::polar(1.0, alpha);
    DiscMap u;
    u.space = Space::Reduced;
    u.f = [ea](Complex z) { return make2(z * z, ea); };
    u.df = [](Complex z) { return make2(2.0 * z, 0.0); };
    u.boundary = torus_T_std(p);
    std::vector<Complex> coeffs(2 * p.n + 1, 0.0);
    coeffs[0] = ea / p.c - 1.0;
    if (p.n == 0) {
        coeffs[0] += p.c;
    } else {
        coeffs[2 * p.n] = p.c;
    }
    u.h_poly = coeffs;
    u.marked = make2(1.0, ea);
    return u;
}

int winding_number(const std::function<Complex(Complex)>& f, int samples,
                   double min_modulus) {
    double total = 0.0;
    Complex prev = f(Complex(1.0, 0.0));
    if (std::abs(prev) < min_modulus)
        throw BoundaryZero("winding_number: |f| below threshold on the boundary");
    for (int m = 1; m <= samples; ++m) {
        Complex cur = f(std::polar(1.0, 2.0 * kPi * m / samples));
        if (std::abs(cur) < min_modulus)
            throw BoundaryZero("winding_number: |f| below threshold on the boundary");
        double inc = std::arg(cur / prev);
        if (std::abs(inc) > 0.5 * kPi)
            throw NumericalError("winding_number: phase increment exceeds pi/2, sampling too coarse");
        total += inc;
        prev = cur;
    }
    double w = total / (2.0 * kPi);
    long r = std::lround(w);
    if (std::abs(w - double(r)) > 1e-6)
        throw NumericalError("winding_number: non-integer winding " + std::to_string(w));
    return int(r);
}

HomotopyClass class_coordinates(const DiscMap& u) {
    auto coord_winding = [&](int idx, const char* name) {
        try {
            return winding_number([&](Complex z) { return u.f(z)(idx); });
        } catch (const BoundaryZero&) {
            throw BoundaryZero(std::string("class_coordinates: coordinate ") + name +
                               " vanishes on the boundary");
        }
    };
    HomotopyClass cls;
    if (u.space == Space::Reduced) {
        cls.b = coord_winding(0, "z");
        cls.d = coord_winding(1, "w");
    } else {
        const ConicParams& p = u.boundary->params;
        cls.a = coord_winding(0, "x");
        cls.b = coord_winding(2, "z");
        try {
            cls.d = winding_number([&](Complex z) {
                CVec q = u.f(z);
                return derived_w(q(0), q(1), q(2), p);
            });
        } catch (const BoundaryZero&) {
            throw BoundaryZero("class_coordinates: coordinate w vanishes on the boundary");
        }
    }
    return cls;
}

namespace {

// Roots of a polynomial (coefficients low to high) via the companion matrix.
std::vector<Complex> poly_roots(std::vector<Complex> coeffs) {
    while (!coeffs.empty() && std::abs(coeffs.back()) < 1e-14) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};
    int deg = int(coeffs.size()) - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / coeffs[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> roots(es.eigenvalues().data(),
                               es.eigenvalues().data() + deg);
    return roots;
}

Complex poly_eval(const std::vector<Complex>& coeffs, Complex z) {
    Complex r = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * z + *it;
    return r;
}

Complex poly_deriv_eval(const std::vector<Complex>& coeffs, Complex z) {
    Complex r = 0.0;
    for (int i = int(coeffs.size()) - 1; i >= 1; --i) r = r * z + double(i) * coeffs[i];
    return r;
}

} // namespace

std::vector<Complex> intersections_with_C(const DiscMap& u, const ConicParams& p) {
    if (u.space != Space::Reduced)
        throw NumericalError("intersections_with_C: expected a reduced-space disc");
    if (!u.h_poly)
        throw NumericalError("intersections_with_C: disc carries no polynomial data for h(u)");
    const auto& poly = *u.h_poly;

    // boundary must stay off C
    for (int m = 0; m < 256; ++m) {
        Complex z = std::polar(1.0, 2.0 * kPi * m / 256);
        if (std::abs(poly_eval(poly, z)) < 1e-6)
            throw BoundaryZero("intersections_with_C: h(u) vanishes on the boundary");
    }

    std::vector<Complex> inside;
    for (Complex r : poly_roots(poly)) {
        if (std::abs(r) < 1.0 - 1e-6) inside.push_back(r);
        else if (std::abs(r) < 1.0 + 1e-6)
            throw BoundaryZero("intersections_with_C: zero of h(u) on the boundary circle");
    }

    // radical formula cross-check for the u_alpha family
    if (u.alpha_u && p.n >= 1) {
        Complex A = (1.0 - std::polar(1.0, *u.alpha_u) / p.c) / p.c;
        double rad = std::pow(std::abs(A), 1.0 / p.n);
        double base_arg = std::arg(A) / p.n;
        std::vector<Complex> expected;
        for (int k = 0; k < p.n; ++k)
            expected.push_back(std::polar(rad, base_arg + 2.0 * kPi * k / p.n));
        if (expected.size() != inside.size())
            throw NumericalError("intersections_with_C: radical formula disagrees with root count");
        for (Complex e : expected) {
            double best = 1e300;
            for (Complex r : inside) best = std::min(best, std::abs(r - e));
            if (best > 1e-9)
                throw NumericalError("intersections_with_C: radical root not matched by solver");
        }
    }

    // transversality: simple zeros only
    double scale = 0.0;
    for (Complex c0 : poly) scale = std::max(scale, std::abs(c0));
    for (size_t i = 0; i < inside.size(); ++i) {
        if (std::abs(poly_deriv_eval(poly, inside[i])) < 1e-8 * scale)
            throw NonTransverse("intersections_with_C: zero of h(u) is not simple");
        for (size_t j = i + 1; j < inside.size(); ++j)
            if (std::abs(inside[i] - inside[j]) < 1e-8)
                throw NonTransverse("intersections_with_C: coincident zeros of h(u)");
    }

    // argument-principle count must agree
    int w = winding_number([&](Complex z) { return poly_eval(poly, z); });
    if (w != int(inside.size()))
        throw NumericalError("intersections_with_C: winding count disagrees with root count");

    std::sort(inside.begin(), inside.end(), [](Complex a, Complex b) {
        return std::arg(a) < std::arg(b);
    });
    return inside;
}

int maslov_index(const DiscMap& u, int samples) {
    if (u.space == Space::Ambient) {
        if (!u.projection)
            throw NumericalError("maslov_index: ambient disc without a recorded projection");
        return maslov_index(*u.projection, samples);
    }
    if (!u.boundary || !u.boundary->frame)
        throw FrameDegenerate("maslov_index: boundary torus has no tangent frame");
    auto det2 = [&](Complex zeta) {
        CVec pt = u.f(zeta);
        auto fr = u.boundary->frame(pt);
        Complex det = fr[0](0) * fr[1](1) - fr[0](1) * fr[1](0);
        if (std::abs(det) < 1e-9)
            throw FrameDegenerate("maslov_index: singular torus frame on the boundary");
        return det * det;
    };
    return winding_number(det2, samples);
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev estimate on [-1, 1]
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = 0.5 * (1.0 - x);  // map to [0, 1], descending -> ascending
        weights[i] = 0.5 * 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

namespace {

double disc_area_level(const PotentialSpec& spec, const DiscMap& u, int nr, int na) {
    std::vector<double> rn, rw;
    gauss_legendre_01(nr, rn, rw);
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
        double r = rn[i];
        double row = 0.0;
        for (int j = 0; j < na; ++j) {
            Complex zeta = std::polar(r, 2.0 * kPi * j / na);
            CVec du = disc_deriv(u, zeta);
            row += eval_omega(spec, u.f(zeta), du, kI * du);
        }
        total += rw[i] * r * row * (2.0 * kPi / na);
    }
    return total;
}

} // namespace

double disc_area(const PotentialSpec& spec, const DiscMap& u, const QuadratureSpec& quad) {
    PotentialSpec use = spec;
    if (spec.variant == Variant::Reduced && u.h_poly) {
        // if the disc crosses h = 0, integrate the smoothed form instead;
        // their areas agree exactly when the boundary avoids the smoothing region
        int crossings = winding_number([&](Complex z) { return poly_eval(*u.h_poly, z); });
        if (crossings > 0) use.variant = Variant::ReducedSmoothed;
    }
    double prev = disc_area_level(use, u, quad.radial_nodes, quad.angular_nodes);
    for (int lvl = 1; lvl <= quad.max_refinements; ++lvl) {
        double cur = disc_area_level(use, u, quad.radial_nodes << lvl, quad.angular_nodes << lvl);
        if (std::abs(cur - prev) < quad.tol) return cur;
        prev = cur;
    }
    throw QuadratureDivergence("disc_area: refinements did not converge to tolerance");
}

double boundary_liouville(const PotentialSpec& spec, const Loop& loop, int samples) {
    double dt = 2.0 * kPi / samples;
    std::vector<CVec> pts(samples);
    for (int m = 0; m < samples; ++m) pts[m] = loop.f(m * dt);
    double total = 0.0;
    for (int m = 0; m < samples; ++m) {
        CVec tangent;
        if (loop.df) {
            tangent = loop.df(m * dt);
        } else {
            // 4th-order periodic central difference
            const CVec& p1 = pts[(m + 1) % samples];
            const CVec& p2 = pts[(m + 2) % samples];
            const CVec& m1 = pts[(m - 1 + samples) % samples];
            const CVec& m2 = pts[(m - 2 + samples) % samples];
            tangent = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * dt);
        }
        total += eval_liouville(spec, pts[m], tangent) * dt;
    }
    return total;
}

Loop boundary_loop(const DiscMap& u) {
    Loop loop;
    loop.f = [&u](double t) { return u.f(std::polar(1.0, t)); };
    loop.df = [&u](double t) {
        Complex zeta = std::polar(1.0, t);
        return CVec(kI * zeta * disc_deriv(u, zeta));
    };
    return loop;
}

} // namespace ctori
