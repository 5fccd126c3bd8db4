#include "kobalt/geodesics.hpp"

#include <algorithm>
#include <cmath>

namespace kobalt {

namespace {

Complex cpow(Complex base, double e) { return std::pow(base, e); }

// Small dense linear solve for the Newton steps (n <= 4).
bool solve_linear(std::vector<std::vector<double>> A, std::vector<double>& b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        if (std::fabs(A[piv][col]) < 1e-14) return false;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = col + 1; r < n; ++r) {
            double f = A[r][col] / A[col][col];
            for (size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    for (size_t i = n; i-- > 0;) {
        for (size_t c = i + 1; c < n; ++c) b[i] -= A[i][c] * b[c];
        b[i] /= A[i][i];
    }
    return true;
}

}  // namespace

EggGeodesic::EggGeodesic(int m, Complex a) : m_(m), a_(a) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("EggGeodesic: exponent must be even");
    c_ = std::pow(std::abs(a), m);
    tag_ = "egg_geodesic";
}

EggGeodesic::EggGeodesic(int m, Complex a, Complex zeta_star) : EggGeodesic(m, a) {
    reparam_ = true;
    tau_ = disc_automorphism_fixing_one(zeta_star);
    tag_ = "egg_geodesic_reparam";
}

CVec EggGeodesic::eval(Complex zeta) const {
    if (reparam_) zeta = tau_.eval(zeta);
    // Principal branch: 1 - zeta stays off the cut for zeta in the disc.
    Complex z0 = (zeta + c_) / (1.0 + c_);
    Complex z1 = a_ * cpow((1.0 - zeta) / (1.0 + c_), 2.0 / m_);
    return CVec{z0, z1};
}

CVec EggGeodesic::deriv(Complex zeta) const {
    Complex inner = 1.0;
    if (reparam_) {
        inner = tau_.deriv(zeta);
        zeta = tau_.eval(zeta);
    }
    Complex d0 = 1.0 / (1.0 + c_);
    Complex d1 = -a_ * (2.0 / m_) * cpow((1.0 - zeta) / (1.0 + c_), 2.0 / m_ - 1.0) / (1.0 + c_);
    return CVec{d0 * inner, d1 * inner};
}

double EggGeodesic::normal_derivative_at_one() const {
    double base = 1.0 / (1.0 + c_);
    return reparam_ ? base * tau_.boundary_deriv_at_one() : base;
}

BallGeodesic::BallGeodesic(const CVec& z, const CVec& xi) : d_(z.dim()), z_(z), xi_(xi) {
    if (std::fabs(norm(xi) - 1.0) > 1e-8)
        throw std::invalid_argument("BallGeodesic: endpoint must lie on the sphere");
    tag_ = "ball_geodesic";
}

namespace {

// Möbius involution of the ball with phi_a(0) = a.
CVec ball_moebius(const CVec& a, const CVec& w) {
    double na2 = norm(a) * norm(a);
    Complex wa = hdot(w, a);
    double s = std::sqrt(std::max(0.0, 1.0 - na2));
    CVec P = na2 > 1e-300 ? (wa / na2) * a : CVec(a.dim());
    CVec Q = w - P;
    CVec num = a - P - s * Q;
    return (1.0 / (1.0 - wa)) * num;
}

}  // namespace

CVec BallGeodesic::eval(Complex zeta) const {
    CVec u = ball_moebius(z_, xi_);
    return ball_moebius(z_, zeta * u);
}

CVec BallGeodesic::deriv(Complex zeta) const {
    CVec u = ball_moebius(z_, xi_);
    double na2 = norm(z_) * norm(z_);
    Complex ua = hdot(u, z_);
    double s = std::sqrt(std::max(0.0, 1.0 - na2));
    CVec Pu = na2 > 1e-300 ? (ua / na2) * z_ : CVec(z_.dim());
    CVec Qu = u - Pu;
    // phi(zeta u) = (z - zeta(Pu + s Qu)) / (1 - zeta <u,z>).
    CVec A = Pu + s * Qu;
    Complex den = 1.0 - zeta * ua;
    CVec num = (-1.0 / den) * A + (ua / (den * den)) * (z_ - zeta * A);
    return num;
}

DiscGeodesic::DiscGeodesic(Complex z, Complex xi) : z_(z), xi_(xi) {
    if (std::fabs(std::abs(xi) - 1.0) > 1e-10)
        throw std::invalid_argument("DiscGeodesic: endpoint must lie on the circle");
    tag_ = "disc_geodesic";
}

CVec DiscGeodesic::eval(Complex zeta) const {
    Complex u = (xi_ - z_) / (1.0 - std::conj(z_) * xi_);
    Complex w = zeta * u;
    return CVec{(w + z_) / (1.0 + std::conj(z_) * w)};
}

CVec DiscGeodesic::deriv(Complex zeta) const {
    Complex u = (xi_ - z_) / (1.0 - std::conj(z_) * xi_);
    Complex den = 1.0 + std::conj(z_) * zeta * u;
    return CVec{u * (1.0 - std::norm(z_)) / (den * den)};
}

double normal_derivative_limit(const DiscMap& phi, const BoundaryPoint& xi,
                               double* tail_variation) {
    std::vector<double> re;
    double worst_im = 0.0;
    for (int k = 4; k <= 40; ++k) {
        double t = 1.0 - std::pow(2.0, -k);
        Complex g = hdot(phi.deriv(t), xi.normal);
        re.push_back(g.real());
        if (k >= 30) worst_im = std::max(worst_im, std::fabs(g.imag()));
    }
    double tv = 0.0;
    double limit = aitken_limit(re, &tv);
    if (tail_variation) *tail_variation = tv;
    if (tv > 1e-6 * (1.0 + std::fabs(limit)))
        throw EstimationError("normal_derivative_limit: tail variation " + std::to_string(tv));
    if (worst_im > 1e-6 * (1.0 + std::fabs(limit)))
        throw EstimationError("normal_derivative_limit: imaginary part does not vanish");
    if (limit <= 0.0)
        throw EstimationError("normal_derivative_limit: nonpositive limit");
    return limit;
}

double normal_derivative_limit_halfplane(const DiscMap& phi, const BoundaryPoint& xi,
                                         double* tail_variation) {
    std::vector<double> re;
    double worst_im = 0.0;
    for (int k = 4; k <= 40; ++k) {
        double t = -std::pow(2.0, -k);
        Complex z = cayley_inverse(t);
        Complex dC = 2.0 / ((1.0 - t) * (1.0 - t));
        Complex g = hdot(phi.deriv(z), xi.normal) * dC;
        re.push_back(g.real());
        if (k >= 30) worst_im = std::max(worst_im, std::fabs(g.imag()));
    }
    double tv = 0.0;
    double limit = aitken_limit(re, &tv);
    if (tail_variation) *tail_variation = tv;
    if (tv > 1e-6 * (1.0 + std::fabs(limit)) || worst_im > 1e-6 * (1.0 + std::fabs(limit)))
        throw EstimationError("normal_derivative_limit_halfplane: tail did not settle");
    return limit;
}

double poisson_kernel_egg(int m, const CVec& z) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("poisson_kernel_egg: even m required");
    double level = std::norm(z[0]) + std::pow(std::abs(z[1]), m);
    if (level >= 1.0) throw std::domain_error("poisson_kernel_egg: point outside the egg");
    return -(1.0 - level) / std::norm(1.0 - z[0]);
}

namespace {

bool egg_axis_endpoint(const BoundaryPoint& xi, Complex* phase) {
    if (std::abs(xi.xi[1]) > 1e-10) return false;
    if (std::fabs(std::abs(xi.xi[0]) - 1.0) > 1e-8) return false;
    if (phase) *phase = xi.xi[0] / std::abs(xi.xi[0]);
    return true;
}

}  // namespace

bool has_poisson_oracle(const Domain& D, const BoundaryPoint& xi) {
    switch (D.kind()) {
        case DomainKind::Disc:
        case DomainKind::HalfPlane:
        case DomainKind::Ball:
            return true;
        case DomainKind::Egg:
            return egg_axis_endpoint(xi, nullptr);
        default:
            return false;
    }
}

double poisson_kernel_closed(const Domain& D, const BoundaryPoint& xi, const CVec& z) {
    switch (D.kind()) {
        case DomainKind::Disc:
            return -(1.0 - std::norm(z[0])) / std::norm(xi.xi[0] - z[0]);
        case DomainKind::Ball:
            return -(1.0 - norm(z) * norm(z)) / std::norm(1.0 - hdot(z, xi.xi));
        case DomainKind::HalfPlane:
            return -2.0 * std::norm(z[0] - xi.xi[0]) / std::fabs(z[0].real());
        case DomainKind::Egg: {
            Complex phase;
            if (!egg_axis_endpoint(xi, &phase))
                throw std::domain_error("poisson_kernel_closed: egg endpoint off the axis");
            CVec rotated{z[0] * std::conj(phase), z[1]};
            return poisson_kernel_egg(D.egg_exponent(), rotated);
        }
        default:
            throw std::domain_error("poisson_kernel_closed: unsupported domain");
    }
}

double horofunction_oracle(const Domain& D, const BoundaryPoint& xi, const CVec& p,
                           const CVec& w) {
    return std::log(std::fabs(poisson_kernel_closed(D, xi, p))) -
           std::log(std::fabs(poisson_kernel_closed(D, xi, w)));
}

double poisson_kernel(const Domain& D, const BoundaryPoint& xi, const CVec& z) {
    if (!D.contains(z)) throw std::domain_error("poisson_kernel: point outside domain");
    switch (D.kind()) {
        case DomainKind::Disc: {
            DiscGeodesic geo(z[0], xi.xi[0]);
            double psiN = normal_derivative_limit(geo, xi);
            return -1.0 / psiN;
        }
        case DomainKind::Ball: {
            BallGeodesic geo(z, xi.xi);
            double psiN = normal_derivative_limit(geo, xi);
            return -1.0 / psiN;
        }
        case DomainKind::HalfPlane:
            return -2.0 * std::norm(z[0] - xi.xi[0]) / std::fabs(z[0].real());
        case DomainKind::Egg: {
            Complex phase;
            if (!egg_axis_endpoint(xi, &phase))
                throw std::domain_error("poisson_kernel: egg geodesics require an axis endpoint");
            const int m = D.egg_exponent();
            CVec zr{z[0] * std::conj(phase), z[1]};
            EggGeodesicSolve sol = solve_egg_geodesic_through(m, zr);
            double omega = -1.0 / sol.geodesic->normal_derivative_at_one();
            double closed = poisson_kernel_egg(m, zr);
            if (std::fabs(omega - closed) > 1e-8 * (1.0 + std::fabs(closed)))
                throw std::runtime_error(
                    "poisson_kernel: geodesic solve disagrees with the closed form");
            return omega;
        }
        default:
            throw std::domain_error("poisson_kernel: unsupported domain " + D.name());
    }
}

EggGeodesicSolve solve_egg_geodesic_through(int m, const CVec& z, int restarts,
                                            std::uint64_t seed) {
    auto egg = Domain::egg(m);
    if (!egg->contains(z)) throw std::domain_error("solve_egg_geodesic_through: point outside");

    EggGeodesicSolve out;
    out.restarts_used = 0;

    if (std::abs(z[1]) < 1e-13) {
        out.a = 0.0;
        out.zeta_star = z[0];
        out.geodesic = std::make_shared<EggGeodesic>(m, 0.0, z[0]);
        out.residual = norm(out.geodesic->eval(0.0) - z);
        return out;
    }

    auto pack_eval = [&](Complex a, Complex zs) {
        EggGeodesic geo(m, a);
        return geo.eval(zs) - z;
    };

    auto try_newton = [&](Complex a, Complex zs) -> bool {
        for (int it = 0; it < 120; ++it) {
            if (std::abs(zs) > 0.995) zs *= 0.97 / std::abs(zs);
            CVec F = pack_eval(a, zs);
            double fn = norm(F);
            if (fn <= 1e-12) {
                out.a = a;
                out.zeta_star = zs;
                out.geodesic = std::make_shared<EggGeodesic>(m, a, zs);
                out.residual = norm(out.geodesic->eval(0.0) - z);
                return out.residual <= 1e-10;
            }
            // Finite-difference Jacobian in (Re a, Im a, Re zs, Im zs).
            const double h = 1e-7;
            std::vector<std::vector<double>> J(4, std::vector<double>(4));
            auto fill = [&](int col, Complex da, Complex dzs) {
                CVec Fp = pack_eval(a + h * da, zs + h * dzs);
                for (int r = 0; r < 2; ++r) {
                    J[static_cast<size_t>(2 * r)][static_cast<size_t>(col)] =
                        (Fp[r].real() - F[r].real()) / h;
                    J[static_cast<size_t>(2 * r + 1)][static_cast<size_t>(col)] =
                        (Fp[r].imag() - F[r].imag()) / h;
                }
            };
            fill(0, 1.0, 0.0);
            fill(1, Complex(0, 1), 0.0);
            fill(2, 0.0, 1.0);
            fill(3, 0.0, Complex(0, 1));
            std::vector<double> rhs = {-F[0].real(), -F[0].imag(), -F[1].real(), -F[1].imag()};
            if (!solve_linear(J, rhs)) return false;
            double damp = 1.0;
            for (int bt = 0; bt < 30; ++bt) {
                Complex na = a + damp * Complex(rhs[0], rhs[1]);
                Complex nzs = zs + damp * Complex(rhs[2], rhs[3]);
                if (std::abs(nzs) > 0.999) nzs *= 0.98 / std::abs(nzs);
                if (norm(pack_eval(na, nzs)) < fn * (1.0 - 0.25 * damp) + 1e-15) {
                    a = na;
                    zs = nzs;
                    break;
                }
                damp *= 0.5;
                if (bt == 29) return false;
            }
        }
        return false;
    };

    // Structured first guess from the closed form with c ~ 0.
    Complex zs0 = z[0];
    Complex a0 = z[1] / cpow(1.0 - zs0, 2.0 / m);
    if (try_newton(a0, zs0)) return out;

    QuasiRandom qr(4, seed);
    for (int r = 0; r < restarts; ++r) {
        out.restarts_used = r + 1;
        std::vector<double> u = qr.next();
        Complex a(2.0 * u[0] - 1.0, 2.0 * u[1] - 1.0);
        Complex zs(1.7 * (u[2] - 0.5), 1.7 * (u[3] - 0.5));
        if (try_newton(a, zs)) return out;
    }
    throw EstimationError("solve_egg_geodesic_through: no geodesic found (last residual " +
                          std::to_string(out.residual) + ")");
}

Interval egg_distance_to_axis_point(const Domain& egg, const EggGeodesicSolve& sol, double t) {
    const CVec axis_point{Complex(t, 0.0), Complex(0.0, 0.0)};
    if (std::abs(sol.a) < 1e-12) {
        // Axis slice: phi_0 is a geodesic with left inverse z -> z_0, so the
        // distance is the disc distance exactly.
        double k = poincare_distance_disc(sol.zeta_star, t);
        Interval res;
        res.lo = std::max(0.0, k - 1e-12);
        res.hi = k + 1e-12;
        res.lo_witness.kind = LowerWitness::Kind::Projection;
        res.lo_witness.target = LowerWitness::Target::Disc;
        res.hi_witness.kind = UpperWitness::Kind::Oracle;
        return res;
    }
    double psiN = sol.geodesic->normal_derivative_at_one();
    double s = 1.0 - (1.0 - t) / psiN;
    CVec w = sol.geodesic->eval(0.0);
    if (s <= -0.999) return distance_bounds(egg, w, axis_point);
    CVec psi_s = sol.geodesic->eval(s);
    if (!egg.contains(psi_s)) return distance_bounds(egg, w, axis_point);
    double chain = segment_chain_upper(egg, psi_s, axis_point);
    if (!std::isfinite(chain)) return distance_bounds(egg, w, axis_point);
    // k(w, psi(s)) = k_D(0, s) since psi is a complex geodesic of the egg.
    double base = poincare_distance_disc(0.0, s);
    Interval res;
    res.lo = std::max(0.0, base - chain - 1e-12);
    res.hi = base + chain + 1e-12;
    res.lo_witness.kind = LowerWitness::Kind::Oracle;
    res.hi_witness.kind = UpperWitness::Kind::SegmentChain;
    return res;
}

double horofunction(const Domain& D, const BoundaryPoint& xi, const CVec& p, const CVec& w,
                    HorofunctionStats* stats) {
    if (!D.contains(p) || !D.contains(w))
        throw std::domain_error("horofunction: base or evaluation point outside domain");

    auto gamma = [&](double t) { return xi.xi - (1.0 - t) * xi.normal; };

    const bool oracle = has_exact_distance(D);
    Complex egg_phase;
    bool egg_route = D.kind() == DomainKind::Egg && egg_axis_endpoint(xi, &egg_phase);

    std::optional<EggGeodesicSolve> sol_w, sol_p;
    CVec wr = w, pr = p;
    if (egg_route) {
        wr = CVec{w[0] * std::conj(egg_phase), w[1]};
        pr = CVec{p[0] * std::conj(egg_phase), p[1]};
        sol_w = solve_egg_geodesic_through(D.egg_exponent(), wr);
        sol_p = solve_egg_geodesic_through(D.egg_exponent(), pr);
    }

    double h = 0.0, prev = 0.0, err = 0.0;
    int steps = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 2; k <= 40; ++k) {
        double t = 1.0 - std::pow(2.0, -k);
        CVec g = gamma(t);
        if (!D.contains(g)) continue;
        double kw, kp, ew = 0.0, ep = 0.0;
        if (oracle) {
            kw = exact_distance(D, w, g);
            kp = exact_distance(D, g, p);
        } else if (egg_route) {
            Interval Iw = egg_distance_to_axis_point(D, *sol_w, t);
            Interval Ip = egg_distance_to_axis_point(D, *sol_p, t);
            kw = Iw.mid();
            kp = Ip.mid();
            ew = 0.5 * Iw.width();
            ep = 0.5 * Ip.width();
        } else {
            Interval Iw = distance_bounds(D, w, g);
            Interval Ip = distance_bounds(D, g, p);
            kw = Iw.mid();
            kp = Ip.mid();
            ew = 0.5 * Iw.width();
            ep = 0.5 * Ip.width();
        }
        prev = (steps == 0) ? kw - kp : h;
        h = kw - kp;
        err = ew + ep;
        ++steps;
        if (steps > 1) {
            gap = std::fabs(h - prev);
            if (gap < 1e-8) break;
        }
    }
    if (steps < 2) throw EstimationError("horofunction: the normal segment left the domain");
    if (stats) {
        stats->tail_gap = gap;
        stats->certified_error = err;
        stats->steps = steps;
    }
    return h;
}

namespace {

double distance_value(const Domain& D, const CVec& a, const CVec& b, double* err) {
    if (has_exact_distance(D)) {
        if (err) *err = 0.0;
        return exact_distance(D, a, b);
    }
    Interval I = distance_bounds(D, a, b);
    if (err) *err = 0.5 * I.width();
    return I.mid();
}

RegionStatus threshold(double value, double bound, double err) {
    double band = 1e-3 + err;
    if (value < bound - band) return RegionStatus::Inside;
    if (value > bound + band) return RegionStatus::Outside;
    return RegionStatus::Indeterminate;
}

}  // namespace

RegionStatus in_horosphere(const Domain& D, const BoundaryPoint& xi, const CVec& p, double R,
                           const CVec& z) {
    if (R <= 0.0) throw std::invalid_argument("in_horosphere: R must be positive");
    HorofunctionStats st;
    double h = horofunction(D, xi, p, z, &st);
    return threshold(h, std::log(R), st.certified_error + st.tail_gap);
}

RegionStatus in_kregion(const Domain& D, const BoundaryPoint& xi, const CVec& p, double M,
                        const CVec& z) {
    if (M <= 1.0) throw std::invalid_argument("in_kregion: M must be > 1");
    HorofunctionStats st;
    double h = horofunction(D, xi, p, z, &st);
    double derr = 0.0;
    double k = distance_value(D, z, p, &derr);
    return threshold(h + k, 2.0 * std::log(M), st.certified_error + st.tail_gap + derr);
}

RegionStatus in_geodesic_region(const Domain& D, const DiscMap& gamma, double R, const CVec& z) {
    if (R <= 0.0) throw std::invalid_argument("in_geodesic_region: R must be positive");
    double best = std::numeric_limits<double>::infinity();
    double best_err = 0.0;
    for (int j = 0; j <= 70; ++j) {
        double t = 1.0 - std::pow(2.0, -0.35 * j);
        CVec g = gamma.eval(t);
        if (!D.contains(g)) continue;
        double err = 0.0;
        double k = distance_value(D, z, g, &err);
        if (k < best) {
            best = k;
            best_err = err;
        }
    }
    return threshold(best, R, best_err);
}

}  // namespace kobalt
