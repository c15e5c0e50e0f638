#include "ctori/forms.hpp"

#include <cmath>

namespace ctori {

namespace {

inline double im_pair(Complex a, Complex b) { return std::imag(std::conj(a) * b); }

// dh(xi) at a reduced point (z, w).
inline Complex dh_at(const PotentialSpec& s, const CVec& pt, const CVec& xi) {
    return dh(pt(0), xi(0), xi(1), s.params);
}

inline AmbientPoint ambient_of(const CVec& pt) {
    return AmbientPoint{pt(0), pt(1), pt(2)};
}

} // namespace

double eval_potential(const PotentialSpec& spec, const CVec& pt) {
    const ConicParams& p = spec.params;
    switch (spec.variant) {
    case Variant::StandardC2:
        return 0.25 * (std::norm(pt(0)) + std::norm(pt(1)));
    case Variant::StandardC3Scaled:
        return 0.25 * p.kappa * (std::norm(pt(0)) + std::norm(pt(1))) + 0.25 * std::norm(pt(2));
    case Variant::AmbientX: {
        Complex w = derived_w(pt(0), pt(1), pt(2), p);
        return 0.25 * p.kappa * (std::norm(pt(0)) + std::norm(pt(1))) +
               0.25 * std::norm(pt(2)) + 0.25 * std::norm(w);
    }
    case Variant::Reduced: {
        double s = std::abs(eval_h(pt(0), pt(1), p));
        return 0.25 * (std::norm(pt(0)) + std::norm(pt(1))) + 0.5 * p.kappa * s;
    }
    case Variant::ReducedSmoothed: {
        double s = std::abs(eval_h(pt(0), pt(1), p));
        return 0.25 * (std::norm(pt(0)) + std::norm(pt(1))) +
               0.5 * p.kappa * spec.smoothing.value(s);
    }
    }
    throw NumericalError("eval_potential: unknown variant");
}

double d_potential(const PotentialSpec& spec, const CVec& pt, const CVec& xi) {
    const ConicParams& p = spec.params;
    auto quarter = [](Complex a, Complex da) { return 0.5 * std::real(std::conj(a) * da); };
    switch (spec.variant) {
    case Variant::StandardC2:
        return quarter(pt(0), xi(0)) + quarter(pt(1), xi(1));
    case Variant::StandardC3Scaled:
        return p.kappa * (quarter(pt(0), xi(0)) + quarter(pt(1), xi(1))) + quarter(pt(2), xi(2));
    case Variant::AmbientX: {
        AmbientPoint a = ambient_of(pt);
        Complex w = derived_w(a, p);
        Complex dw = d_derived_w(a, xi(0), xi(1), xi(2), p);
        return p.kappa * (quarter(pt(0), xi(0)) + quarter(pt(1), xi(1))) +
               quarter(pt(2), xi(2)) + quarter(w, dw);
    }
    case Variant::Reduced: {
        Complex h = eval_h(pt(0), pt(1), p);
        double s = std::abs(h);
        if (s < kSingularTol)
            throw SingularLocus("d_potential: reduced variant on the singular locus");
        Complex dhv = dh_at(spec, pt, xi);
        return quarter(pt(0), xi(0)) + quarter(pt(1), xi(1)) +
               0.5 * p.kappa * std::real(std::conj(h) * dhv) / s;
    }
    case Variant::ReducedSmoothed: {
        Complex h = eval_h(pt(0), pt(1), p);
        double s = std::abs(h);
        Complex dhv = dh_at(spec, pt, xi);
        // d rho(|h|) = rho'(s)/s * Re(conj(h) dh)
        return quarter(pt(0), xi(0)) + quarter(pt(1), xi(1)) +
               0.5 * p.kappa * spec.smoothing.d1_over_s(s) * std::real(std::conj(h) * dhv);
    }
    }
    throw NumericalError("d_potential: unknown variant");
}

double eval_liouville(const PotentialSpec& spec, const CVec& pt, const CVec& xi) {
    return -d_potential(spec, pt, Complex(0.0, 1.0) * xi);
}

double eval_omega(const PotentialSpec& spec, const CVec& pt, const CVec& v1,
                  const CVec& v2) {
    const ConicParams& p = spec.params;
    switch (spec.variant) {
    case Variant::StandardC2:
        return im_pair(v1(0), v2(0)) + im_pair(v1(1), v2(1));
    case Variant::StandardC3Scaled:
        return p.kappa * (im_pair(v1(0), v2(0)) + im_pair(v1(1), v2(1))) +
               im_pair(v1(2), v2(2));
    case Variant::AmbientX: {
        AmbientPoint a = ambient_of(pt);
        Complex dw1 = d_derived_w(a, v1(0), v1(1), v1(2), p);
        Complex dw2 = d_derived_w(a, v2(0), v2(1), v2(2), p);
        return p.kappa * (im_pair(v1(0), v2(0)) + im_pair(v1(1), v2(1))) +
               im_pair(v1(2), v2(2)) + im_pair(dw1, dw2);
    }
    case Variant::Reduced: {
        Complex h = eval_h(pt(0), pt(1), p);
        double s = std::abs(h);
        if (s < kSingularTol)
            throw SingularLocus("eval_omega: reduced variant on the singular locus");
        Complex dh1 = dh_at(spec, pt, v1);
        Complex dh2 = dh_at(spec, pt, v2);
        return im_pair(v1(0), v2(0)) + im_pair(v1(1), v2(1)) +
               0.5 * p.kappa / s * im_pair(dh1, dh2);
    }
    case Variant::ReducedSmoothed: {
        // dd^c rho(|h|) = (rho''(s) + rho'(s)/s) * Im(conj(dh v1) dh v2)
        Complex h = eval_h(pt(0), pt(1), p);
        double s = std::abs(h);
        Complex dh1 = dh_at(spec, pt, v1);
        Complex dh2 = dh_at(spec, pt, v2);
        double fac = spec.smoothing.d2(s) + spec.smoothing.d1_over_s(s);
        return im_pair(v1(0), v2(0)) + im_pair(v1(1), v2(1)) +
               0.5 * p.kappa * fac * im_pair(dh1, dh2);
    }
    }
    throw NumericalError("eval_omega: unknown variant");
}

double eval_omega_fd(const PotentialSpec& spec, const CVec& pt, const CVec& v1,
                     const CVec& v2, double rel_step) {
    double scale = std::max(1.0, pt.norm());
    double h1 = rel_step * scale / std::max(1.0, v1.norm());
    double h2 = rel_step * scale / std::max(1.0, v2.norm());
    // d(theta)(v1, v2) = D_{v1} theta(v2) - D_{v2} theta(v1) for constant fields.
    double t1 = (eval_liouville(spec, pt + h1 * v1, v2) -
                 eval_liouville(spec, pt - h1 * v1, v2)) / (2.0 * h1);
    double t2 = (eval_liouville(spec, pt + h2 * v2, v1) -
                 eval_liouville(spec, pt - h2 * v2, v1)) / (2.0 * h2);
    return t1 - t2;
}

std::string ConicParams::to_json() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "{\"n\": %d, \"c\": %.17g, \"kappa\": %.17g}", n, c, kappa);
    return buf;
}

} // namespace ctori
