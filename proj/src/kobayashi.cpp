#include "kobalt/kobayashi.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <functional>

namespace kobalt {

namespace {

constexpr double kSlack = 1e-12;

double outward_lo(double v) { return std::max(0.0, v - kSlack * (1.0 + std::fabs(v))); }
double outward_hi(double v) { return v + kSlack * (1.0 + std::fabs(v)); }

double lower_value(const HalfSpaceFunctional& ell, LowerWitness::Target target, const CVec& z,
                   const CVec& w) {
    Complex a = ell(z), b = ell(w);
    if (target == LowerWitness::Target::HalfPlane) {
        if (a.real() >= 0.0 || b.real() >= 0.0) return -1.0;
        return halfplane_distance(a, b);
    }
    if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0) return -1.0;
    return poincare_distance_disc(a, b);
}

double lower_metric_value(const HalfSpaceFunctional& ell, LowerWitness::Target target,
                          const CVec& z, const CVec& v) {
    Complex a = ell(z), dv = ell.linear(v);
    if (target == LowerWitness::Target::HalfPlane) {
        if (a.real() >= 0.0) return -1.0;
        return halfplane_metric(a, dv);
    }
    if (std::abs(a) >= 1.0) return -1.0;
    return poincare_metric_disc(a, dv);
}

// Boundary contact along the ray from `anchor` in real direction `dir`.
std::optional<BoundaryPoint> ray_contact(const Domain& D, const CVec& anchor, const CVec& dir) {
    double lo = 0.0;
    double hi = std::max(1e-6, D.boundary_distance(anchor));
    const double cap = 8.0 * D.sampling_radius();
    while (D.defining(anchor + hi * dir) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > cap) return std::nullopt;
    }
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (D.defining(anchor + mid * dir) < 0.0 ? lo : hi) = mid;
    }
    CVec p = anchor + hi * dir;
    try {
        return D.boundary_point(p);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

struct LowerCandidate {
    HalfSpaceFunctional ell;
    LowerWitness::Target target;
    LowerWitness::Kind kind;
};

void append_projections(const Domain& D, const CVec& z, const CVec& w,
                        std::vector<LowerCandidate>& out) {
    const int d = D.dim();
    auto projection = [&](const CVec& u, LowerWitness::Target tgt) {
        CVec coeffs(d);
        for (int j = 0; j < d; ++j) coeffs[j] = std::conj(u[j]);
        out.push_back({HalfSpaceFunctional(coeffs, 0.0), tgt, LowerWitness::Kind::Projection});
    };
    switch (D.kind()) {
        case DomainKind::Disc:
            projection(basis_vector(1, 0), LowerWitness::Target::Disc);
            break;
        case DomainKind::HalfPlane:
            projection(basis_vector(1, 0), LowerWitness::Target::HalfPlane);
            break;
        case DomainKind::Ball: {
            CVec diff = w - z;
            if (norm(diff) > 1e-14) projection(unit(diff), LowerWitness::Target::Disc);
            for (int j = 0; j < d; ++j) projection(basis_vector(d, j), LowerWitness::Target::Disc);
            break;
        }
        case DomainKind::Egg:
            projection(basis_vector(2, 0), LowerWitness::Target::Disc);
            projection(basis_vector(2, 1), LowerWitness::Target::Disc);
            break;
        case DomainKind::Tube:
            projection(basis_vector(2, 0), LowerWitness::Target::HalfPlane);
            break;
        case DomainKind::Polynomial:
            break;
    }
}

std::vector<LowerCandidate> lower_family(const Domain& D, const CVec& z, const CVec& w,
                                         const BoundOptions& opt, bool with_projections) {
    std::vector<LowerCandidate> fam;
    auto add_contact = [&](const std::optional<BoundaryPoint>& bp) {
        if (bp) fam.push_back({D.supporting_halfspace(*bp), LowerWitness::Target::HalfPlane,
                               LowerWitness::Kind::HalfSpace});
    };
    CVec mid = 0.5 * (z + w);
    for (const CVec& anchor : {z, w, mid}) {
        try {
            add_contact(D.boundary_point(anchor + D.boundary_distance(anchor) *
                                                      unit(D.defining_gradient(anchor))));
        } catch (const std::exception&) {
            try {
                add_contact(D.boundary_point(anchor));
            } catch (const std::exception&) {
            }
        }
    }
    QuasiRandom qr(2 * D.dim(), opt.seed);
    for (int k = 0; k < opt.quasi_contacts; ++k) {
        std::vector<double> u = qr.next();
        std::vector<double> x(u.size());
        for (size_t i = 0; i < u.size(); ++i) x[i] = 2.0 * u[i] - 1.0;
        CVec dir = from_reals(x);
        double n = norm(dir);
        if (n < 1e-9) continue;
        add_contact(ray_contact(D, mid, (1.0 / n) * dir));
    }
    if (with_projections) append_projections(D, z, w, fam);
    return fam;
}

struct UpperCandidate {
    double value;
    UpperWitness witness;
};

// Inscribed affine disc in the complex line through z and w, centered at
// c = z + mu (w - z) with complex mu; z and w sit at the disc parameters
// <z-c,u>/R and <w-c,u>/R.
std::optional<UpperCandidate> line_disc_bound(const Domain& D, const CVec& z, const CVec& w,
                                              Complex mu) {
    CVec v = w - z;
    double n = norm(v);
    if (n < 1e-300) return std::nullopt;
    CVec u = (1.0 / n) * v;
    CVec c = z + mu * v;
    if (!D.contains(c)) return std::nullopt;
    double R = D.directional_boundary_distance(c, u) * (1.0 - 1e-12);
    Complex za = hdot(z - c, u) / R;
    Complex wa = hdot(w - c, u) / R;
    if (std::abs(za) >= 1.0 || std::abs(wa) >= 1.0) return std::nullopt;
    UpperCandidate cand;
    cand.witness.kind = UpperWitness::Kind::AffineDisc;
    cand.witness.coefficients = {c, R * u};
    cand.witness.zeta_z = za;
    cand.witness.zeta_w = wa;
    cand.witness.sample_radius = 1.0;
    cand.value = poincare_distance_disc(za, wa);
    return cand;
}

std::optional<UpperCandidate> best_line_disc(const Domain& D, const CVec& z, const CVec& w) {
    std::optional<UpperCandidate> best;
    Complex best_mu(0.5, 0.0);
    auto consider = [&](Complex mu) {
        auto cand = line_disc_bound(D, z, w, mu);
        if (cand && (!best || cand->value < best->value)) {
            best = cand;
            best_mu = mu;
        }
        return cand ? cand->value : std::numeric_limits<double>::infinity();
    };
    for (int i = 0; i <= 12; ++i)
        for (int j = 0; j <= 12; ++j)
            consider(Complex(-1.0 + 3.0 * i / 12.0, -1.5 + 3.0 * j / 12.0));
    if (!best) return best;

    // 2-D Nelder-Mead polish over the complex center parameter.
    std::array<Complex, 3> simplex = {best_mu, best_mu + Complex(0.13, 0.0),
                                      best_mu + Complex(0.0, 0.13)};
    std::array<double, 3> f{};
    for (size_t i = 0; i < 3; ++i) f[i] = consider(simplex[i]);
    for (int it = 0; it < 80; ++it) {
        std::array<size_t, 3> idx = {0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return f[a] < f[b]; });
        Complex xl = simplex[idx[0]], xh = simplex[idx[2]];
        Complex centroid = 0.5 * (simplex[idx[0]] + simplex[idx[1]]);
        Complex xr = centroid + (centroid - xh);
        double fr = consider(xr);
        if (fr < f[idx[0]]) {
            Complex xe = centroid + 2.0 * (centroid - xh);
            double fe = consider(xe);
            simplex[idx[2]] = fe < fr ? xe : xr;
            f[idx[2]] = std::min(fe, fr);
        } else if (fr < f[idx[1]]) {
            simplex[idx[2]] = xr;
            f[idx[2]] = fr;
        } else {
            Complex xc = centroid - 0.5 * (centroid - xh);
            double fc = consider(xc);
            if (fc < f[idx[2]]) {
                simplex[idx[2]] = xc;
                f[idx[2]] = fc;
            } else {
                for (size_t i : {idx[1], idx[2]}) {
                    simplex[i] = xl + 0.5 * (simplex[i] - xl);
                    f[i] = consider(simplex[i]);
                }
            }
        }
    }
    return best;
}

double chain_link(const Domain& D, const CVec& a, const CVec& b, int depth, int max_depth,
                  std::vector<CVec>* nodes) {
    CVec v = b - a;
    double h = norm(v);
    if (h < 1e-300) return 0.0;
    double rho = D.directional_boundary_distance(a, v) * (1.0 - 1e-9);
    if (h / rho <= 0.5 || depth >= max_depth) {
        if (h >= rho) return std::numeric_limits<double>::infinity();
        if (nodes) nodes->push_back(b);
        return two_artanh(h / rho);
    }
    CVec m = 0.5 * (a + b);
    double left = chain_link(D, a, m, depth + 1, max_depth, nodes);
    if (!std::isfinite(left)) return left;
    return left + chain_link(D, m, b, depth + 1, max_depth, nodes);
}

// --------- polynomial-disc optimizer ---------

AnalyticDisc build_disc(const CVec& z, const CVec& w, double t, const std::vector<CVec>& free) {
    AnalyticDisc disc;
    const int d = z.dim();
    disc.coeffs.assign(free.size() + 2, CVec(d));
    disc.coeffs[0] = z;
    CVec rhs = w - z;
    double tk = t;
    for (size_t k = 0; k < free.size(); ++k) {
        tk *= t;  // t^{k+2}
        rhs = rhs - tk * free[k];
        disc.coeffs[k + 2] = free[k];
    }
    disc.coeffs[1] = (1.0 / t) * rhs;
    return disc;
}

double min_feasible_t(const Domain& D, const CVec& z, const CVec& w,
                      const std::vector<CVec>& free, double t_hint, int& feas_budget) {
    constexpr double kRadius = 0.999;
    constexpr double kTmax = 0.995;
    auto feasible = [&](double t) {
        if (t <= 1e-6 || t > kTmax) return false;
        if (--feas_budget < 0) return false;
        return build_disc(z, w, t, free).feasible(D, kRadius, 128);
    };
    double t = std::clamp(t_hint, 1e-4, kTmax);
    if (!feasible(t)) {
        double hi = t;
        bool found = false;
        for (int it = 0; it < 40 && hi < kTmax; ++it) {
            hi = std::min(kTmax, hi * 1.2);
            if (feasible(hi)) {
                found = true;
                break;
            }
        }
        if (!found) return std::numeric_limits<double>::infinity();
        double lo = hi / 1.2;
        for (int it = 0; it < 25; ++it) {
            double mid = 0.5 * (lo + hi);
            (feasible(mid) ? hi : lo) = mid;
        }
        return hi;
    }
    double lo = t;
    while (lo > 1e-4 && feasible(lo * 0.85)) lo *= 0.85;
    double bad = lo * 0.85;
    for (int it = 0; it < 25; ++it) {
        double mid = 0.5 * (bad + lo);
        (feasible(mid) ? lo : bad) = mid;
    }
    return lo;
}

}  // namespace

CVec AnalyticDisc::eval(Complex zeta) const {
    CVec r = coeffs.back();
    for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k)
        r = zeta * r + coeffs[static_cast<size_t>(k)];
    return r;
}

bool AnalyticDisc::feasible(const Domain& D, double radius, int samples) const {
    // r convex and phi holomorphic make r(phi) subharmonic: checking the
    // boundary circle suffices (maximum principle), up to angle sampling.
    for (int k = 0; k < samples; ++k) {
        double th = 2.0 * M_PI * k / samples;
        if (D.defining(eval(std::polar(radius, th))) >= 0.0) return false;
    }
    return true;
}

std::string LowerWitness::describe() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Oracle: return "oracle";
        case Kind::HalfSpace: return "supporting-halfspace";
        case Kind::Projection:
            return target == Target::Disc ? "disc-projection" : "halfplane-projection";
    }
    return "unknown";
}

std::string UpperWitness::describe() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Oracle: return "oracle";
        case Kind::AffineDisc: return "affine-disc";
        case Kind::SegmentChain: return "segment-chain(" + std::to_string(chain.size()) + ")";
        case Kind::PolynomialDisc:
            return "polynomial-disc(deg " + std::to_string(coefficients.size() - 1) + ")";
    }
    return "unknown";
}

bool has_exact_distance(const Domain& D) {
    return D.kind() == DomainKind::Disc || D.kind() == DomainKind::HalfPlane ||
           D.kind() == DomainKind::Ball;
}

double exact_distance(const Domain& D, const CVec& z, const CVec& w) {
    if (!D.contains(z) || !D.contains(w))
        throw std::domain_error("exact_distance: point outside domain");
    switch (D.kind()) {
        case DomainKind::Disc:
            return poincare_distance_disc(z[0], w[0]);
        case DomainKind::HalfPlane:
            return halfplane_distance(z[0], w[0]);
        case DomainKind::Ball: {
            // tanh^2(k/2) = 1 - (1-|z|^2)(1-|w|^2)/|1-<z,w>|^2.
            double a = (1.0 - norm(z) * norm(z)) * (1.0 - norm(w) * norm(w));
            double b = std::norm(Complex(1.0, 0.0) - hdot(z, w));
            double m2 = 1.0 - a / b;
            double m = std::sqrt(std::max(0.0, m2));
            if (m >= 1.0) m = std::nextafter(1.0, 0.0);
            return two_artanh(m);
        }
        default:
            throw std::domain_error("exact_distance: unsupported domain " + D.name());
    }
}

bool has_exact_metric(const Domain& D) { return has_exact_distance(D); }

double exact_metric(const Domain& D, const CVec& z, const CVec& v) {
    if (!D.contains(z)) throw std::domain_error("exact_metric: point outside domain");
    switch (D.kind()) {
        case DomainKind::Disc:
            return poincare_metric_disc(z[0], v[0]);
        case DomainKind::HalfPlane:
            return halfplane_metric(z[0], v[0]);
        case DomainKind::Ball: {
            double s2 = 1.0 - norm(z) * norm(z);
            double num = norm(v) * norm(v) * s2 + std::norm(hdot(v, z));
            return 2.0 * std::sqrt(num) / s2;
        }
        default:
            throw std::domain_error("exact_metric: unsupported domain " + D.name());
    }
}

Interval distance_bounds(const Domain& D, const CVec& z, const CVec& w, const BoundOptions& opt) {
    if (!D.contains(z) || !D.contains(w))
        throw std::domain_error("distance_bounds: point outside domain");

    Interval res;
    if (norm(w - z) < 1e-15) {
        res.lo = 0.0;
        res.hi = 0.0;
        return res;
    }

    if (opt.allow_oracle && has_exact_distance(D)) {
        double k = exact_distance(D, z, w);
        res.lo = k;
        res.hi = k;
        res.lo_witness.kind = LowerWitness::Kind::Oracle;
        res.hi_witness.kind = UpperWitness::Kind::Oracle;
        return res;
    }

    double lo = 0.0;
    LowerWitness lw;
    for (const LowerCandidate& cand : lower_family(D, z, w, opt, /*with_projections=*/true)) {
        double v = lower_value(cand.ell, cand.target, z, w);
        if (v > lo) {
            lo = v;
            lw.kind = cand.kind;
            lw.target = cand.target;
            lw.functional = cand.ell;
        }
    }

    double hi = std::numeric_limits<double>::infinity();
    UpperWitness uw;
    if (auto cand = best_line_disc(D, z, w)) {
        hi = cand->value;
        uw = cand->witness;
    }
    {
        std::vector<CVec> nodes{z};
        double chain = chain_link(D, z, w, 0, 26, &nodes);
        if (chain < hi) {
            hi = chain;
            uw = UpperWitness{};
            uw.kind = UpperWitness::Kind::SegmentChain;
            uw.chain = nodes;
        }
    }
    if (!std::isfinite(hi))
        throw std::runtime_error("distance_bounds: no feasible upper-bound witness");

    res.lo = outward_lo(lo);
    res.hi = outward_hi(hi);
    res.lo_witness = lw;
    res.hi_witness = uw;
    if (opt.refine_budget > 0) res = refine_distance_upper(D, z, w, opt.refine_budget, res, opt);
    return res;
}

Interval refine_distance_upper(const Domain& D, const CVec& z, const CVec& w, int budget,
                               const Interval& start, const BoundOptions& opt) {
    Interval res = start;
    if (has_exact_distance(D) && start.hi_witness.kind == UpperWitness::Kind::Oracle) return res;
    const int d = D.dim();
    const int nfree = std::max(0, opt.disc_degree - 1);
    const int dims = 2 * d * nfree;
    if (dims == 0 || budget <= 0) return res;
    constexpr double kRadius = 0.999;

    int feas_budget = budget * 30;

    auto unflatten = [&](const std::vector<double>& x) {
        std::vector<CVec> free(static_cast<size_t>(nfree), CVec(d));
        for (int k = 0; k < nfree; ++k)
            for (int j = 0; j < d; ++j)
                free[static_cast<size_t>(k)][j] =
                    Complex(x[static_cast<size_t>(2 * (k * d + j))],
                            x[static_cast<size_t>(2 * (k * d + j) + 1)]);
        return free;
    };

    double t_hint = std::tanh(start.hi / 2.0) * kRadius;
    auto objective = [&](const std::vector<double>& x) {
        return min_feasible_t(D, z, w, unflatten(x), t_hint, feas_budget);
    };

    // Nelder-Mead from the affine start (zero free coefficients).
    std::vector<std::vector<double>> simplex;
    std::vector<double> fvals;
    std::vector<double> x0(static_cast<size_t>(dims), 0.0);
    simplex.push_back(x0);
    fvals.push_back(objective(x0));
    double scale = 0.15 * norm(w - z);
    for (int i = 0; i < dims; ++i) {
        std::vector<double> xi = x0;
        xi[static_cast<size_t>(i)] += scale;
        simplex.push_back(xi);
        fvals.push_back(objective(xi));
    }
    int evals = dims + 1;
    auto order = [&]() {
        std::vector<size_t> idx(simplex.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fvals[a] < fvals[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (size_t i : idx) {
            s2.push_back(simplex[i]);
            f2.push_back(fvals[i]);
        }
        simplex.swap(s2);
        fvals.swap(f2);
    };
    order();
    while (evals < budget && feas_budget > 0) {
        std::vector<double> centroid(static_cast<size_t>(dims), 0.0);
        for (size_t i = 0; i + 1 < simplex.size(); ++i)
            for (int j = 0; j < dims; ++j) centroid[static_cast<size_t>(j)] += simplex[i][static_cast<size_t>(j)];
        for (int j = 0; j < dims; ++j) centroid[static_cast<size_t>(j)] /= (simplex.size() - 1.0);
        auto blend = [&](double alpha) {
            std::vector<double> x(static_cast<size_t>(dims));
            for (int j = 0; j < dims; ++j)
                x[static_cast<size_t>(j)] = centroid[static_cast<size_t>(j)] +
                                            alpha * (centroid[static_cast<size_t>(j)] -
                                                     simplex.back()[static_cast<size_t>(j)]);
            return x;
        };
        std::vector<double> xr = blend(1.0);
        double fr = objective(xr);
        ++evals;
        if (fr < fvals.front()) {
            std::vector<double> xe = blend(2.0);
            double fe = objective(xe);
            ++evals;
            if (fe < fr) {
                simplex.back() = xe;
                fvals.back() = fe;
            } else {
                simplex.back() = xr;
                fvals.back() = fr;
            }
        } else if (fr < fvals[fvals.size() - 2]) {
            simplex.back() = xr;
            fvals.back() = fr;
        } else {
            std::vector<double> xc = blend(-0.5);
            double fc = objective(xc);
            ++evals;
            if (fc < fvals.back()) {
                simplex.back() = xc;
                fvals.back() = fc;
            } else {
                for (size_t i = 1; i < simplex.size(); ++i) {
                    for (int j = 0; j < dims; ++j)
                        simplex[i][static_cast<size_t>(j)] =
                            0.5 * (simplex[i][static_cast<size_t>(j)] + simplex[0][static_cast<size_t>(j)]);
                    fvals[i] = objective(simplex[i]);
                    ++evals;
                }
            }
        }
        order();
        if (std::isfinite(fvals.front())) t_hint = fvals.front();
    }

    double t_best = fvals.front();
    if (std::isfinite(t_best)) {
        std::vector<CVec> free = unflatten(simplex.front());
        AnalyticDisc disc = build_disc(z, w, t_best, free);
        if (disc.feasible(D, kRadius)) {
            double value = outward_hi(poincare_distance_disc(0.0, t_best / kRadius));
            if (value < res.hi) {
                res.hi = value;
                res.hi_witness = UpperWitness{};
                res.hi_witness.kind = UpperWitness::Kind::PolynomialDisc;
                res.hi_witness.coefficients = disc.coeffs;
                res.hi_witness.zeta_z = 0.0;
                res.hi_witness.zeta_w = t_best;
                res.hi_witness.sample_radius = kRadius;
            }
        }
    }
    return res;
}

Interval metric_bounds(const Domain& D, const CVec& z, const CVec& v, const BoundOptions& opt) {
    if (!D.contains(z)) throw std::domain_error("metric_bounds: point outside domain");
    if (norm(v) == 0.0) {
        Interval res;
        return res;
    }

    Interval res;
    CVec u = unit(v);
    double dD = D.directional_boundary_distance(z, u);
    double hi = 2.0 * norm(v) / dD;
    UpperWitness uw;
    uw.kind = UpperWitness::Kind::AffineDisc;
    uw.coefficients = {z, dD * u};
    uw.sample_radius = 1.0;

    double lo = 0.0;
    LowerWitness lw;
    // The metric lower bound uses the half-plane pullback of supporting
    // functionals only (the documented contract).
    std::vector<LowerCandidate> fam =
        lower_family(D, z, z + (0.5 * dD) * u, opt, /*with_projections=*/false);
    // Contacts of the maximal affine disc in the direction of v.
    for (int k = 0; k < 8; ++k) {
        double th = 2.0 * M_PI * k / 8;
        CVec p = z + (dD * Complex(std::cos(th), std::sin(th))) * u;
        try {
            BoundaryPoint bp = D.boundary_point(p);
            fam.push_back({D.supporting_halfspace(bp), LowerWitness::Target::HalfPlane,
                           LowerWitness::Kind::HalfSpace});
        } catch (const std::exception&) {
        }
    }
    for (const LowerCandidate& cand : fam) {
        double val = lower_metric_value(cand.ell, cand.target, z, v);
        if (val > lo) {
            lo = val;
            lw.kind = cand.kind;
            lw.target = cand.target;
            lw.functional = cand.ell;
        }
    }

    res.lo = outward_lo(lo);
    res.hi = outward_hi(hi);
    res.lo_witness = lw;
    res.hi_witness = uw;
    return res;
}

Interval gromov_product(const Domain& D, const CVec& z, const CVec& w, const CVec& p,
                        const BoundOptions& opt) {
    Interval kzp = distance_bounds(D, z, p, opt);
    Interval kwp = distance_bounds(D, w, p, opt);
    Interval kzw = distance_bounds(D, z, w, opt);
    Interval res;
    res.lo = outward_lo(std::max(0.0, 0.5 * (kzp.lo + kwp.lo - kzw.hi)));
    res.hi = outward_hi(0.5 * (kzp.hi + kwp.hi - kzw.lo));
    return res;
}

double segment_chain_upper(const Domain& D, const CVec& z, const CVec& w, int max_depth,
                           std::vector<CVec>* nodes) {
    if (nodes) {
        nodes->clear();
        nodes->push_back(z);
    }
    return chain_link(D, z, w, 0, max_depth, nodes);
}

double reevaluate_lower_witness(const Domain& D, const CVec& z, const CVec& w,
                                const LowerWitness& wit) {
    switch (wit.kind) {
        case LowerWitness::Kind::None: return 0.0;
        case LowerWitness::Kind::Oracle: return exact_distance(D, z, w);
        case LowerWitness::Kind::HalfSpace:
        case LowerWitness::Kind::Projection:
            return lower_value(*wit.functional, wit.target, z, w);
    }
    return 0.0;
}

double reevaluate_upper_witness(const Domain& D, const CVec& z, const CVec& w,
                                const UpperWitness& wit) {
    switch (wit.kind) {
        case UpperWitness::Kind::None: return 0.0;
        case UpperWitness::Kind::Oracle: return exact_distance(D, z, w);
        case UpperWitness::Kind::AffineDisc:
        case UpperWitness::Kind::PolynomialDisc: {
            AnalyticDisc disc;
            disc.coeffs = wit.coefficients;
            if (norm(disc.eval(wit.zeta_z) - z) > 1e-8 || norm(disc.eval(wit.zeta_w) - w) > 1e-8)
                throw std::runtime_error("upper witness does not interpolate the endpoints");
            if (!disc.feasible(D, wit.sample_radius))
                throw std::runtime_error("upper witness disc is not feasible");
            return poincare_distance_disc(wit.zeta_z / wit.sample_radius,
                                          wit.zeta_w / wit.sample_radius);
        }
        case UpperWitness::Kind::SegmentChain: {
            double total = 0.0;
            for (size_t i = 0; i + 1 < wit.chain.size(); ++i) {
                CVec a = wit.chain[i], b = wit.chain[i + 1];
                double h = norm(b - a);
                if (h < 1e-300) continue;
                double rho = D.directional_boundary_distance(a, b - a) * (1.0 - 1e-9);
                if (h >= rho) throw std::runtime_error("segment chain witness infeasible");
                total += two_artanh(h / rho);
            }
            return total;
        }
    }
    return 0.0;
}

}  // namespace kobalt
