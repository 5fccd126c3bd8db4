#include "kobalt/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace kobalt {

namespace {

CVec unit_complex_tangent(const Domain& D, const BoundaryPoint& xi) {
    const int d = D.dim();
    for (int j = 0; j < d; ++j) {
        CVec c = basis_vector(d, j) - hdot(basis_vector(d, j), xi.normal) * xi.normal;
        double n = norm(c);
        if (n > 0.3) return (1.0 / n) * c;
    }
    throw std::logic_error("unit_complex_tangent: no tangent direction found");
}

}  // namespace

std::string to_string(CurveLabel label) {
    switch (label) {
        case CurveLabel::KPrime: return "K_prime";
        case CurveLabel::KOnly: return "K_only";
        case CurveLabel::NotK: return "not_K";
    }
    return "unknown";
}

ApproachCurve make_curve(const Domain& D, const BoundaryPoint& xi, const std::string& kind,
                         const nlohmann::json& params, int K, double r0) {
    ApproachCurve curve;
    curve.kind = kind;

    auto push = [&](double t, const CVec& z, int index) {
        if (!D.contains(z))
            throw std::domain_error("make_curve: sample " + std::to_string(index) +
                                    " exits the domain");
        curve.samples.push_back({t, z, D.boundary_distance(z)});
    };

    if (kind == "user") {
        int index = 0;
        for (const auto& entry : params.at("points")) {
            double t = entry.at("t").get<double>();
            std::vector<double> reim = entry.at("z").get<std::vector<double>>();
            push(t, from_reals(reim), index++);
        }
    } else {
        for (int k = 0; k <= K; ++k) {
            double s = r0 * std::pow(2.0, -k);
            double t = 1.0 - s;
            if (kind == "normal") {
                push(t, xi.xi - s * xi.normal, k);
            } else if (kind == "cone") {
                double aperture = params.value("aperture", 0.4);
                double phase = params.value("tangent_phase", 0.0);
                if (aperture < 0.0 || aperture >= M_PI / 2.0)
                    throw std::invalid_argument("make_curve: cone aperture must be in [0, pi/2)");
                CVec w = std::cos(aperture) * xi.normal +
                         (std::sin(aperture) * std::polar(1.0, phase)) *
                             unit_complex_tangent(D, xi);
                push(t, xi.xi - s * w, k);
            } else if (kind == "gamma_lambda") {
                if (D.kind() != DomainKind::Egg)
                    throw std::invalid_argument("make_curve: gamma_lambda needs an egg domain");
                if (std::abs(xi.xi[1]) > 1e-10)
                    throw std::invalid_argument("make_curve: gamma_lambda needs an axis endpoint");
                Complex lambda(params.value("lambda_re", 0.5), params.value("lambda_im", 0.0));
                Complex phase = xi.xi[0] / std::abs(xi.xi[0]);
                int m = D.egg_exponent();
                CVec z{phase * t, lambda * std::pow(1.0 - t * t, 1.0 / m)};
                push(t, z, k);
            } else if (kind == "tube_alpha") {
                if (D.kind() != DomainKind::Tube)
                    throw std::invalid_argument("make_curve: tube_alpha needs the tube domain");
                double alpha = params.at("alpha").get<double>();
                CVec z{Complex(-s, 0.0), Complex(0.0, std::pow(s, alpha))};
                push(t, z, k);
            } else {
                throw std::invalid_argument("make_curve: unknown kind " + kind);
            }
        }
    }

    // The tail must approach the boundary monotonically.
    for (size_t i = curve.samples.size() / 2; i + 1 < curve.samples.size(); ++i)
        if (curve.samples[i + 1].delta > curve.samples[i].delta + 1e-12)
            throw EstimationError("make_curve: boundary distance not decreasing on the tail");
    return curve;
}

AsymptoticEstimate estimate_exponent(std::vector<std::pair<double, double>> pairs) {
    AsymptoticEstimate est;
    std::vector<double> xs, ys;
    for (const auto& [delta, value] : pairs) {
        if (delta <= 0.0) throw std::invalid_argument("estimate_exponent: nonpositive delta");
        if (value <= 0.0) {
            ++est.dropped_zeros;
            continue;
        }
        xs.push_back(std::log(delta));
        ys.push_back(std::log(value));
    }
    if (xs.size() < 12) throw EstimationError("estimate_exponent: fewer than 12 usable samples");
    double dmin = *std::min_element(xs.begin(), xs.end());
    double dmax = *std::max_element(xs.begin(), xs.end());
    est.decades = (dmax - dmin) / std::log(10.0);
    if (est.decades < 2.0) throw EstimationError("estimate_exponent: less than 2 decades of delta");
    LineFit fit = fit_line(xs, ys);
    est.slope = fit.slope;
    est.r2 = fit.r2;
    return est;
}

CurveClassification classify_curve(const MultitypeData& data, const ApproachCurve& curve) {
    const int d = static_cast<int>(data.basis.size());
    CurveClassification out;
    bool any_growing = false;
    bool tangential_all_vanishing = true;

    for (int j = 0; j < d; ++j) {
        ComponentEvidence ev;
        ev.j = j;
        std::vector<double> xs, ys;
        double scale = 0.0;
        std::vector<std::pair<double, double>> rhos;
        for (const CurveSample& s : curve.samples) {
            double rho = std::abs(hdot(s.z - data.xi.xi, data.basis[static_cast<size_t>(j)])) /
                         std::pow(s.delta, 1.0 / data.multitype[static_cast<size_t>(j)]);
            scale = std::max(scale, rho);
            rhos.push_back({s.delta, rho});
        }
        if (scale < 1e-12) {
            ev.identically_zero = true;
            ev.trend = "zero";
            out.components.push_back(ev);
            continue;
        }
        int decades_guard = 0;
        for (const auto& [delta, rho] : rhos) {
            if (rho < 1e-13 * scale) continue;
            xs.push_back(std::log(delta));
            ys.push_back(std::log(rho));
            ++decades_guard;
        }
        if (xs.size() < 12 ||
            (*std::max_element(xs.begin(), xs.end()) - *std::min_element(xs.begin(), xs.end())) <
                2.0 * std::log(10.0))
            throw EstimationError("classify_curve: insufficient decades for component " +
                                  std::to_string(j));
        LineFit fit = fit_line(xs, ys);
        ev.slope = fit.slope;
        ev.r2 = fit.r2;
        if (fit.slope <= -0.02 && fit.r2 >= 0.9) {
            ev.trend = "growing";
            any_growing = true;
        } else if (fit.slope >= 0.02 && fit.r2 >= 0.9) {
            ev.trend = "decaying";
        } else {
            ev.trend = "bounded";
        }
        if (j >= 1 && ev.trend != "decaying") tangential_all_vanishing = false;
        out.components.push_back(ev);
    }

    if (any_growing)
        out.label = CurveLabel::NotK;
    else if (tangential_all_vanishing)
        out.label = CurveLabel::KPrime;
    else
        out.label = CurveLabel::KOnly;
    return out;
}

namespace {

// Distance of a point to the fixed base point, specialized per domain:
// closed forms on oracle domains, geodesic-assisted intervals on eggs with
// an axis endpoint, certified interval midpoints otherwise.
class BaseDistance {
public:
    BaseDistance(const Domain& D, const BoundaryPoint& endpoint, const CVec& base)
        : D_(D), base_(base) {
        if (D.kind() == DomainKind::Egg && std::abs(endpoint.xi[1]) < 1e-10) {
            phase_ = endpoint.xi[0] / std::abs(endpoint.xi[0]);
            CVec rotated{base[0] * std::conj(phase_), base[1]};
            sol_ = solve_egg_geodesic_through(D.egg_exponent(), rotated);
        }
    }

    // value of k_D(z, base); err receives the certification half-width.
    double operator()(const CVec& z, double* err) const {
        if (has_exact_distance(D_)) {
            if (err) *err = 0.0;
            return exact_distance(D_, z, base_);
        }
        if (sol_) {
            CVec zr{z[0] * std::conj(phase_), z[1]};
            if (std::abs(zr[1]) < 1e-12 && std::fabs(zr[0].imag()) < 1e-12) {
                Interval I = egg_distance_to_axis_point(D_, *sol_, zr[0].real());
                if (err) *err = 0.5 * I.width();
                return I.mid();
            }
        }
        Interval I = distance_bounds(D_, z, base_);
        if (err) *err = 0.5 * I.width();
        return I.mid();
    }

private:
    const Domain& D_;
    CVec base_;
    Complex phase_ = 1.0;
    std::optional<EggGeodesicSolve> sol_;
};

}  // namespace

DilationResult dilation(const HolomorphicMap& f, const BoundaryPoint& xi,
                        const BoundaryPoint& eta, const CVec& p, const CVec& pprime) {
    const Domain& S = f.source();
    const Domain& T = f.target();
    if (!S.contains(p) || !T.contains(pprime))
        throw std::domain_error("dilation: base point outside its domain");

    BaseDistance src(S, xi, p);
    BaseDistance tgt(T, eta, pprime);

    std::vector<double> vals;
    double errs = 0.0;
    for (int k = 2; k <= 40; ++k) {
        double t = 1.0 - std::pow(2.0, -k);
        CVec g = xi.xi - (1.0 - t) * xi.normal;
        if (!S.contains(g)) continue;
        CVec w = f(g);
        if (!T.contains(w))
            throw std::domain_error("dilation: image of the normal segment leaves the target");
        double e1 = 0.0, e2 = 0.0;
        double k1 = src(g, &e1);
        double k2 = tgt(w, &e2);
        vals.push_back(k1 - k2);
        errs = e1 + e2;
    }
    if (vals.size() < 4) throw EstimationError("dilation: normal segment left the domain");

    DilationResult res;
    double tv = 0.0;
    res.log_lambda = aitken_limit(vals, &tv);
    res.tail_variation = tv + errs;
    double omega_p = poisson_kernel_closed(S, xi, p);
    double omega_pp = poisson_kernel_closed(T, eta, pprime);
    res.normalized_alpha = std::exp(res.log_lambda) * std::fabs(omega_p) / std::fabs(omega_pp);
    return res;
}

JuliaReport julia_check(const HolomorphicMap& f, const BoundaryPoint& xi,
                        const BoundaryPoint& eta, const CVec& p, const CVec& pprime,
                        int sample_count, std::uint64_t seed) {
    const Domain& S = f.source();
    const Domain& T = f.target();
    DilationResult dil = dilation(f, xi, eta, p, pprime);

    JuliaReport rep;
    rep.log_lambda = dil.log_lambda;
    rep.sup_estimate = -std::numeric_limits<double>::infinity();
    rep.max_slack = -std::numeric_limits<double>::infinity();
    rep.worst_point = p;

    CVec tangent = S.dim() > 1 ? unit_complex_tangent(S, xi) : CVec(1);
    QuasiRandom qr(4, seed);
    QuasiRandom qs(2 * S.dim(), seed + 1);
    int produced = 0;
    int guard = 0;
    while (produced < sample_count && guard++ < 50 * sample_count) {
        CVec z = p;
        std::vector<double> u = qr.next();
        if (produced % 2 == 0) {
            z = S.sample_interior(qs);
        } else {
            // Concentrate near xi around the inner normal.
            double s = std::pow(2.0, -(1.0 + 13.0 * u[0]));
            CVec cand = xi.xi - s * xi.normal;
            if (S.dim() > 1) {
                Complex jitter(0.35 * (2.0 * u[1] - 1.0), 0.35 * (2.0 * u[2] - 1.0));
                cand = cand + (jitter * std::pow(s, 0.6)) * tangent;
            }
            if (!S.contains(cand)) continue;
            z = cand;
        }
        CVec w = f(z);
        if (!T.contains(w)) continue;
        double lhs = horofunction_oracle(T, eta, pprime, w);
        double rhs = horofunction_oracle(S, xi, p, z);
        double diff = lhs - rhs;
        double slack = diff - dil.log_lambda;
        if (diff > rep.sup_estimate) rep.sup_estimate = diff;
        if (slack > rep.max_slack) {
            rep.max_slack = slack;
            rep.worst_point = z;
        }
        if (slack > 1e-2) ++rep.violations;
        ++produced;
    }
    rep.samples = produced;
    return rep;
}

}  // namespace kobalt
