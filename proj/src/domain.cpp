#include "kobalt/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kobalt {

std::vector<double> to_reals(const CVec& z) {
    std::vector<double> x(static_cast<size_t>(2 * z.dim()));
    for (int j = 0; j < z.dim(); ++j) {
        x[static_cast<size_t>(2 * j)] = z[j].real();
        x[static_cast<size_t>(2 * j + 1)] = z[j].imag();
    }
    return x;
}

CVec from_reals(const std::vector<double>& x) {
    if (x.size() % 2 != 0 || x.empty()) throw std::invalid_argument("from_reals: odd arity");
    CVec z(static_cast<int>(x.size() / 2));
    for (int j = 0; j < z.dim(); ++j)
        z[j] = Complex(x[static_cast<size_t>(2 * j)], x[static_cast<size_t>(2 * j + 1)]);
    return z;
}

Complex HalfSpaceFunctional::operator()(const CVec& z) const {
    Complex s = constant_;
    for (int j = 0; j < z.dim(); ++j) s += coeffs_[j] * z[j];
    return s;
}

Complex HalfSpaceFunctional::linear(const CVec& v) const {
    Complex s = 0.0;
    for (int j = 0; j < v.dim(); ++j) s += coeffs_[j] * v[j];
    return s;
}

namespace {

// |z_j|^2 as a polynomial in (x_j, y_j).
RealPoly abs2(int nvars, int j) {
    RealPoly x = RealPoly::variable(nvars, 2 * j);
    RealPoly y = RealPoly::variable(nvars, 2 * j + 1);
    return x * x + y * y;
}

// Real roots of t^3 + p t + q = 0.
std::vector<double> solve_depressed_cubic(double p, double q) {
    std::vector<double> roots;
    double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (disc >= 0.0 && p < 0.0) {
        double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0));
    } else {
        double s = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
        double u = std::cbrt(-q / 2.0 + s);
        double v = std::cbrt(-q / 2.0 - s);
        roots.push_back(u + v);
    }
    // Newton polish.
    for (double& t : roots)
        for (int it = 0; it < 4; ++it) {
            double f = t * t * t + p * t + q;
            double df = 3.0 * t * t + p;
            if (std::fabs(df) > 1e-300) t -= f / df;
        }
    return roots;
}

class CatalogDomain final : public Domain {
public:
    CatalogDomain(DomainKind kind, int dim, std::string name, RealPoly r, CVec interior,
                  bool bounded, double sampling_radius)
        : Domain(kind, dim, std::move(name), std::move(r), std::move(interior), bounded,
                 sampling_radius) {}

    double defining_impl(const CVec& z) const override {
        switch (kind_) {
            case DomainKind::Disc:
                return std::norm(z[0]) - 1.0;
            case DomainKind::HalfPlane:
                return z[0].real();
            case DomainKind::Ball: {
                double s = -1.0;
                for (int j = 0; j < dim_; ++j) s += std::norm(z[j]);
                return s;
            }
            case DomainKind::Egg: {
                double q = std::norm(z[1]);
                double p = 1.0;
                for (int e = 0; e < egg_m_ / 2; ++e) p *= q;
                return std::norm(z[0]) + p - 1.0;
            }
            case DomainKind::Tube: {
                double x1 = z[1].real();
                return z[0].real() + x1 * x1;
            }
            case DomainKind::Polynomial:
                return Domain::defining_impl(z);
        }
        return Domain::defining_impl(z);
    }

    double directional_boundary_distance(const CVec& z, const CVec& v) const override {
        switch (kind_) {
            case DomainKind::Disc:
                if (!contains(z)) throw std::domain_error("directional_boundary_distance: outside");
                if (norm(v) == 0.0) throw std::invalid_argument("directional_boundary_distance: zero");
                return 1.0 - std::abs(z[0]);
            case DomainKind::HalfPlane:
                if (!contains(z)) throw std::domain_error("directional_boundary_distance: outside");
                if (norm(v) == 0.0) throw std::invalid_argument("directional_boundary_distance: zero");
                return -z[0].real();
            case DomainKind::Ball: {
                if (!contains(z)) throw std::domain_error("directional_boundary_distance: outside");
                double vn = norm(v);
                if (vn == 0.0) throw std::invalid_argument("directional_boundary_distance: zero");
                // max_{|zeta|=rho} ||z + zeta u||^2 = ||z||^2 + 2 rho |<u,z>| + rho^2.
                double c = std::abs(hdot((1.0 / vn) * v, z));
                return -c + std::sqrt(c * c + 1.0 - norm(z) * norm(z));
            }
            default:
                return Domain::directional_boundary_distance(z, v);
        }
    }

    double boundary_distance(const CVec& z) const override {
        if (z.dim() != dim_) throw std::invalid_argument("boundary_distance: dimension mismatch");
        if (!contains(z)) throw std::domain_error("boundary_distance: point not inside domain");
        switch (kind_) {
            case DomainKind::Disc:
                return 1.0 - std::abs(z[0]);
            case DomainKind::HalfPlane:
                return -z[0].real();
            case DomainKind::Ball:
                return 1.0 - norm(z);
            case DomainKind::Egg:
                return egg_distance(z);
            case DomainKind::Tube:
                return tube_distance(z);
            case DomainKind::Polynomial:
                return Domain::boundary_distance(z);
        }
        throw std::logic_error("boundary_distance: unknown kind");
    }

private:
    double egg_distance(const CVec& z) const {
        const int m = egg_m_;
        const double a = std::abs(z[0]);
        const double b = std::abs(z[1]);
        // Nearest boundary point has the same phases as z; reduce to the arc
        // {(s,t): s^2 + t^m = 1, s,t >= 0} in the (|z0|,|z1|) quarter-plane.
        auto dist2 = [&](double t) {
            double s = std::sqrt(std::max(0.0, 1.0 - std::pow(t, m)));
            double ds = s - a;
            double dt = t - b;
            return ds * ds + dt * dt;
        };
        // The objective can have several local minima when the boundary is
        // flat (large m): coarse scan first, then golden-section refinement
        // inside the best bracket.
        const int kScan = 600;
        int ibest = 0;
        double fbest = dist2(0.0);
        for (int i = 1; i <= kScan; ++i) {
            double f = dist2(static_cast<double>(i) / kScan);
            if (f < fbest) {
                fbest = f;
                ibest = i;
            }
        }
        double lo = std::max(0.0, (ibest - 1.0) / kScan);
        double hi = std::min(1.0, (ibest + 1.0) / kScan);
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
        double fc = dist2(c), fd = dist2(d);
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            if (fc < fd) {
                hi = d; d = c; fd = fc;
                c = hi - gr * (hi - lo); fc = dist2(c);
            } else {
                lo = c; c = d; fc = fd;
                d = lo + gr * (hi - lo); fd = dist2(d);
            }
        }
        double best = std::min({fbest, dist2(lo), dist2(0.5 * (lo + hi)), dist2(hi)});
        return std::sqrt(best);
    }

    double tube_distance(const CVec& z) const {
        // r = Re z0 + (Re z1)^2: distance to the parabola {u = -v^2} in the
        // (Re z0, Re z1) plane; imaginary parts are free.
        double x0 = z[0].real(), x1 = z[1].real();
        // d/dv[(x0+v^2)^2 + (x1-v)^2] = 0  <=>  v^3 + (x0 + 1/2) v - x1/2 = 0.
        double best = std::numeric_limits<double>::infinity();
        for (double v : solve_depressed_cubic(x0 + 0.5, -x1 / 2.0)) {
            double du = x0 + v * v, dv = x1 - v;
            best = std::min(best, du * du + dv * dv);
        }
        return std::sqrt(best);
    }
};

}  // namespace

Domain::Domain(DomainKind kind, int dim, std::string name, RealPoly r, CVec interior,
               bool bounded, double sampling_radius)
    : kind_(kind),
      dim_(dim),
      name_(std::move(name)),
      r_(std::move(r)),
      interior_(std::move(interior)),
      bounded_(bounded),
      sampling_radius_(sampling_radius) {}

double Domain::defining(const CVec& z) const {
    if (z.dim() != dim_) throw std::invalid_argument("defining: dimension mismatch");
    z.check_finite();
    return defining_impl(z);
}

double Domain::defining_impl(const CVec& z) const { return r_.eval(to_reals(z)); }

CVec Domain::defining_gradient(const CVec& z) const {
    if (z.dim() != dim_) throw std::invalid_argument("defining_gradient: dimension mismatch");
    std::vector<double> x = to_reals(z);
    CVec g(dim_);
    for (int j = 0; j < dim_; ++j)
        g[j] = Complex(r_.partial(2 * j).eval(x), r_.partial(2 * j + 1).eval(x));
    return g;
}

bool Domain::contains(const CVec& z) const { return defining(z) < 0.0; }

double Domain::boundary_distance(const CVec& z) const {
    if (!contains(z)) throw std::domain_error("boundary_distance: point not inside domain");
    // Projected-gradient descent on ||p - z|| over {r = 0}.
    CVec p = project_to_boundary(z);
    double best = norm(z - p);
    for (int it = 0; it < 400; ++it) {
        CVec g = defining_gradient(p);
        double gn = norm(g);
        if (gn < 1e-14) break;
        CVec n = (1.0 / gn) * g;
        CVec d = z - p;
        CVec w = d - Complex(hdot(d, n).real(), 0.0) * n;  // tangential residual
        double wn = norm(w);
        if (wn < 1e-13 * (1.0 + best)) break;
        double step = 1.0;
        bool improved = false;
        for (int bt = 0; bt < 30; ++bt) {
            CVec cand = project_to_boundary(p + step * w);
            double dn = norm(z - cand);
            if (dn < best) {
                p = cand;
                best = dn;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    if (std::fabs(defining(p)) > 1e-8)
        throw std::runtime_error("boundary_distance: projection certificate failed");
    return best;
}

CVec Domain::project_to_boundary(const CVec& z0) const {
    double r0 = defining(z0);
    if (std::fabs(r0) < 1e-14) return z0;

    // Damped Newton along the gradient.
    CVec p = z0;
    for (int it = 0; it < 60; ++it) {
        double r = defining(p);
        if (std::fabs(r) < 1e-12) return p;
        CVec g = defining_gradient(p);
        double g2 = 0.0;
        for (int j = 0; j < dim_; ++j) g2 += std::norm(g[j]);
        if (g2 < 1e-28) break;
        double step = -r / g2;
        double damp = 1.0;
        CVec q = p;
        for (int bt = 0; bt < 40; ++bt) {
            q = p;
            for (int j = 0; j < dim_; ++j) q[j] += damp * step * g[j];
            if (std::fabs(defining(q)) < std::fabs(r)) break;
            damp *= 0.5;
        }
        p = q;
    }
    if (std::fabs(defining(p)) < 1e-10) return p;

    // Fallback: bisection on the segment from an inside point to an outside one.
    CVec inside = interior_;
    CVec outside = z0;
    if (defining(z0) < 0.0) {
        inside = z0;
        CVec g = defining_gradient(z0);
        double gn = norm(g);
        CVec dir = gn > 1e-14 ? (1.0 / gn) * g : basis_vector(dim_, 0);
        double t = 1.0;
        outside = z0 + t * dir;
        for (int it = 0; it < 200 && defining(outside) <= 0.0; ++it) {
            t *= 2.0;
            outside = z0 + t * dir;
        }
    } else if (defining(inside) >= 0.0) {
        throw std::runtime_error("project_to_boundary: no interior anchor");
    }
    for (int it = 0; it < 200; ++it) {
        CVec mid = 0.5 * (inside + outside);
        double rm = defining(mid);
        if (std::fabs(rm) < 1e-13) return mid;
        (rm < 0.0 ? inside : outside) = mid;
    }
    CVec mid = 0.5 * (inside + outside);
    if (std::fabs(defining(mid)) > 1e-10)
        throw std::runtime_error("project_to_boundary: bisection did not certify |r| <= 1e-10");
    return mid;
}

CVec Domain::outer_normal(const CVec& xi) const {
    if (std::fabs(defining(xi)) > 1e-8)
        throw std::invalid_argument("outer_normal: point not on the boundary");
    CVec g = defining_gradient(xi);
    double gn = norm(g);
    if (gn < 1e-12) throw std::domain_error("outer_normal: degenerate boundary point");
    return (1.0 / gn) * g;
}

BoundaryPoint Domain::boundary_point(const CVec& xi) const {
    CVec p = project_to_boundary(xi);
    return BoundaryPoint{p, outer_normal(p)};
}

HalfSpaceFunctional Domain::supporting_halfspace(const BoundaryPoint& bp) const {
    // ell(z) = <z - xi, n>.
    CVec coeffs(dim_);
    Complex constant = 0.0;
    for (int j = 0; j < dim_; ++j) {
        coeffs[j] = std::conj(bp.normal[j]);
        constant -= bp.xi[j] * std::conj(bp.normal[j]);
    }
    return HalfSpaceFunctional(coeffs, constant);
}

double Domain::directional_boundary_distance(const CVec& z, const CVec& v) const {
    if (!contains(z)) throw std::domain_error("directional_boundary_distance: point not inside");
    double vn = norm(v);
    if (vn == 0.0) throw std::invalid_argument("directional_boundary_distance: zero direction");
    CVec u = (1.0 / vn) * v;

    constexpr int kAngles = 64;
    auto feasible = [&](double rho) {
        for (int k = 0; k < kAngles; ++k) {
            double th = 2.0 * M_PI * k / kAngles;
            CVec p = z + (rho * Complex(std::cos(th), std::sin(th))) * u;
            if (defining(p) >= 0.0) return false;
        }
        return true;
    };

    double cap = 4.0 * sampling_radius_;
    double lo = 0.0;
    double hi = std::max(1e-8, 0.5 * boundary_distance(z));
    while (feasible(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > cap) return cap;
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-8 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

CVec Domain::sample_interior(QuasiRandom& qr) const {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<double> u = qr.next();
        std::vector<double> x(static_cast<size_t>(2 * dim_));
        if (kind_ == DomainKind::Tube) {
            double R = sampling_radius_;
            x[0] = -R * u[0];
            x[1] = R * (2.0 * u[1] - 1.0);
            x[2] = std::sqrt(R) * (2.0 * u[2] - 1.0);
            x[3] = R * (2.0 * u[3] - 1.0);
        } else {
            double R = bounded_ ? 1.0 : sampling_radius_;
            for (size_t i = 0; i < x.size(); ++i) x[i] = R * (2.0 * u[i] - 1.0);
        }
        CVec z = from_reals(x);
        if (norm(z) <= sampling_radius_ && contains(z)) return z;
    }
    throw std::runtime_error("sample_interior: rejection sampling failed");
}

int Domain::egg_exponent() const {
    if (kind_ != DomainKind::Egg) throw std::logic_error("egg_exponent: not an egg domain");
    return egg_m_;
}

std::shared_ptr<const Domain> Domain::disc() {
    RealPoly r = abs2(2, 0) - RealPoly::constant(2, 1.0);
    return std::make_shared<CatalogDomain>(DomainKind::Disc, 1, "DISC", r, CVec{Complex(0.0)},
                                           true, 1.0);
}

std::shared_ptr<const Domain> Domain::halfplane() {
    RealPoly r = RealPoly::variable(2, 0);
    return std::make_shared<CatalogDomain>(DomainKind::HalfPlane, 1, "HALFPLANE", r,
                                           CVec{Complex(-1.0)}, false, 10.0);
}

std::shared_ptr<const Domain> Domain::ball(int d) {
    if (d < 1) throw std::invalid_argument("ball: dimension must be >= 1");
    RealPoly r = RealPoly::constant(2 * d, -1.0);
    for (int j = 0; j < d; ++j) r += abs2(2 * d, j);
    return std::make_shared<CatalogDomain>(DomainKind::Ball, d, "BALL:" + std::to_string(d), r,
                                           CVec(d), true, 1.0);
}

std::shared_ptr<const Domain> Domain::egg(int m) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("egg: exponent must be even and >= 2");
    RealPoly r = abs2(4, 0) + abs2(4, 1).pow(m / 2) - RealPoly::constant(4, 1.0);
    auto dom = std::make_shared<CatalogDomain>(DomainKind::Egg, 2, "EGG:" + std::to_string(m), r,
                                               CVec(2), true, 1.0);
    dom->egg_m_ = m;
    return dom;
}

std::shared_ptr<const Domain> Domain::tube() {
    RealPoly x1 = RealPoly::variable(4, 2);
    RealPoly r = RealPoly::variable(4, 0) + x1 * x1;
    return std::make_shared<CatalogDomain>(DomainKind::Tube, 2, "TUBE", r,
                                           CVec{Complex(-1.0), Complex(0.0)}, false, 10.0);
}

std::shared_ptr<const Domain> Domain::polynomial(int d, RealPoly r, double sampling_radius) {
    if (r.nvars() != 2 * d) throw std::invalid_argument("polynomial: arity mismatch");
    CVec origin(d);
    auto dom = std::make_shared<CatalogDomain>(DomainKind::Polynomial, d, "POLY", std::move(r),
                                               origin, false, sampling_radius);
    if (!dom->contains(origin))
        throw std::invalid_argument("polynomial: the origin must be an interior point");
    // Sampled convexity witness: midpoints of interior pairs stay inside.
    QuasiRandom qr(2 * d, 7);
    for (int it = 0; it < 2000; ++it) {
        CVec a = dom->sample_interior(qr);
        CVec b = dom->sample_interior(qr);
        if (!dom->contains(0.5 * (a + b)))
            throw std::invalid_argument("polynomial: sampled convexity check failed");
    }
    return dom;
}

std::shared_ptr<const Domain> Domain::from_spec(const std::string& spec) {
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        size_t pos = 0;
        while (true) {
            size_t c = s.find(':', pos);
            if (c == std::string::npos) {
                parts.push_back(s.substr(pos));
                break;
            }
            parts.push_back(s.substr(pos, c - pos));
            pos = c + 1;
        }
        return parts;
    };
    std::vector<std::string> parts = split(spec);
    const std::string& head = parts[0];
    if (head == "DISC") return disc();
    if (head == "HALFPLANE") return halfplane();
    if (head == "BALL") return ball(parts.size() > 1 ? std::stoi(parts[1]) : 2);
    if (head == "EGG") return egg(parts.size() > 1 ? std::stoi(parts[1]) : 4);
    if (head == "TUBE") return tube();
    if (head == "POLY") {
        if (parts.size() < 2) throw std::invalid_argument("POLY spec needs a file path");
        std::ifstream in(spec.substr(5));
        if (!in) throw std::invalid_argument("POLY spec: cannot open " + spec.substr(5));
        nlohmann::json j;
        in >> j;
        return from_json(j);
    }
    throw std::invalid_argument("unknown domain spec: " + spec);
}

std::shared_ptr<const Domain> Domain::from_json(const nlohmann::json& j) {
    int d = j.at("dim").get<int>();
    if (d < 1) throw std::invalid_argument("polynomial domain: dim must be >= 1");
    RealPoly r(2 * d);
    for (const auto& mono : j.at("monomials")) {
        double coeff = mono.at("coeff").get<double>();
        std::vector<int> xs = mono.value("x", std::vector<int>(static_cast<size_t>(d), 0));
        std::vector<int> ys = mono.value("y", std::vector<int>(static_cast<size_t>(d), 0));
        if (static_cast<int>(xs.size()) != d || static_cast<int>(ys.size()) != d)
            throw std::invalid_argument("polynomial domain: power list arity");
        RealPoly::Key k(static_cast<size_t>(2 * d), 0);
        for (int i = 0; i < d; ++i) {
            k[static_cast<size_t>(2 * i)] = xs[static_cast<size_t>(i)];
            k[static_cast<size_t>(2 * i + 1)] = ys[static_cast<size_t>(i)];
        }
        r.add_term(k, coeff);
    }
    return polynomial(d, std::move(r), j.value("sampling_radius", 10.0));
}

}  // namespace kobalt
