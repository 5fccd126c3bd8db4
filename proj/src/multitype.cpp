#include "kobalt/multitype.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kobalt {

namespace {

// Restrict r to the complex line xi + zeta*v: polynomial in (s,t), zeta = s+it.
RealPoly restrict_to_line(const Domain& D, const CVec& xi, const CVec& v) {
    int d = D.dim();
    std::vector<std::vector<double>> lin(static_cast<size_t>(2 * d), std::vector<double>(2, 0.0));
    std::vector<double> cst(static_cast<size_t>(2 * d), 0.0);
    for (int j = 0; j < d; ++j) {
        lin[static_cast<size_t>(2 * j)][0] = v[j].real();
        lin[static_cast<size_t>(2 * j)][1] = -v[j].imag();
        lin[static_cast<size_t>(2 * j + 1)][0] = v[j].imag();
        lin[static_cast<size_t>(2 * j + 1)][1] = v[j].real();
        cst[static_cast<size_t>(2 * j)] = xi[j].real();
        cst[static_cast<size_t>(2 * j + 1)] = xi[j].imag();
    }
    return D.defining_polynomial().compose_affine(lin, cst, 2);
}

// Orthonormal basis of the Hermitian-orthogonal complement of the span of
// `fixed` inside C^d.
std::vector<CVec> orthogonal_complement(int d, const std::vector<CVec>& fixed) {
    std::vector<CVec> basis = fixed;
    std::vector<CVec> out;
    for (int j = 0; j < d; ++j) {
        CVec c = basis_vector(d, j);
        for (const CVec& b : basis) c = c - hdot(c, b) * b;
        double n = norm(c);
        if (n > 1e-8) {
            c = (1.0 / n) * c;
            basis.push_back(c);
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

int line_type(const Domain& D, const BoundaryPoint& xi, const CVec& v) {
    if (norm(v) == 0.0) throw std::invalid_argument("line_type: zero direction");
    CVec u = unit(v);
    RealPoly restricted = restrict_to_line(D, xi.xi, u);
    // xi sits on the boundary up to projection tolerance, so the constant
    // term is pure residual; drop it before reading off the vanishing order.
    RealPoly::Key k0(2, 0);
    auto it = restricted.terms().find(k0);
    if (it != restricted.terms().end()) {
        double c = it->second;
        restricted.add_term(k0, -c);
    }
    int order = restricted.vanishing_order(1e-9);
    if (order < 1 || order > kLineTypeCap) return kLineTypeInfinite;
    return order;
}

int line_type_numeric(const Domain& D, const BoundaryPoint& xi, const CVec& v) {
    CVec u = unit(v);
    constexpr int kAngles = 32;
    std::vector<double> xs, ys;
    for (int k = 6; k <= 18; ++k) {
        double rho = std::pow(2.0, -k);
        double g = 0.0;
        for (int a = 0; a < kAngles; ++a) {
            double th = 2.0 * M_PI * a / kAngles;
            CVec p = xi.xi + (rho * Complex(std::cos(th), std::sin(th))) * u;
            g = std::max(g, std::fabs(D.defining(p)));
        }
        if (g < 1e-280) continue;
        xs.push_back(std::log(rho));
        ys.push_back(std::log(g));
    }
    if (xs.size() < 4) return kLineTypeInfinite;
    LineFit fit = fit_line(xs, ys);
    double rounded = std::round(fit.slope);
    if (std::fabs(fit.slope - rounded) > 0.2)
        throw EstimationError("line_type_numeric: slope " + std::to_string(fit.slope) +
                              " is not near an integer");
    if (rounded < 1.0 || rounded > kLineTypeCap) return kLineTypeInfinite;
    return static_cast<int>(rounded);
}

CVec MultitypeData::to_multitype(const CVec& z) const {
    CVec w(static_cast<int>(basis.size()));
    CVec diff = z - xi.xi;
    for (size_t j = 0; j < basis.size(); ++j) w[static_cast<int>(j)] = hdot(diff, basis[j]);
    return w;
}

CVec MultitypeData::from_multitype(const CVec& w) const {
    CVec z = xi.xi;
    for (size_t j = 0; j < basis.size(); ++j) z = z + w[static_cast<int>(j)] * basis[j];
    return z;
}

MultitypeData multitype_basis(const Domain& D, const BoundaryPoint& xi) {
    const int d = D.dim();
    MultitypeData data;
    data.xi = xi;

    if (line_type(D, xi, xi.normal) != 1)
        throw EstimationError("multitype_basis: normal direction does not have type 1");

    // Greedy flag construction: repeatedly take a highest-type direction in
    // the orthogonal complement, filling the basis from the back.
    std::vector<CVec> fixed = {xi.normal};
    std::vector<std::pair<int, CVec>> tangential;  // (type, vector), found high-type first
    while (static_cast<int>(fixed.size()) < d) {
        std::vector<CVec> W = orthogonal_complement(d, fixed);
        const int wd = static_cast<int>(W.size());
        std::vector<CVec> candidates;
        // Canonical axes projected into W come first so axis-aligned flags are
        // found exactly.
        for (int j = 0; j < d; ++j) {
            CVec c(d);
            for (const CVec& b : W) c = c + hdot(basis_vector(d, j), b) * b;
            double n = norm(c);
            if (n > 1e-6) candidates.push_back((1.0 / n) * c);
        }
        if (wd > 1) {
            QuasiRandom qr(2 * wd, 11);
            for (int it = 0; it < 1024; ++it) {
                std::vector<double> u = qr.next();
                CVec c(d);
                for (int i = 0; i < wd; ++i)
                    c = c + Complex(2.0 * u[static_cast<size_t>(2 * i)] - 1.0,
                                    2.0 * u[static_cast<size_t>(2 * i + 1)] - 1.0) *
                                W[static_cast<size_t>(i)];
                double n = norm(c);
                if (n > 1e-3) candidates.push_back((1.0 / n) * c);
            }
        }
        int best_type = -1;
        CVec best = candidates.front();
        for (const CVec& c : candidates) {
            int t = line_type(D, xi, c);
            if (t == kLineTypeInfinite) continue;
            if (t > best_type) {
                best_type = t;
                best = c;
            }
        }
        if (best_type < 2)
            throw EstimationError("multitype_basis: tangential direction of type < 2");
        tangential.emplace_back(best_type, best);
        fixed.push_back(best);
    }

    data.basis.push_back(xi.normal);
    data.multitype.push_back(1);
    for (auto it = tangential.rbegin(); it != tangential.rend(); ++it) {
        data.basis.push_back(it->second);
        data.multitype.push_back(it->first);
    }
    for (size_t j = 1; j < data.multitype.size(); ++j)
        if (data.multitype[j] < data.multitype[j - 1])
            throw EstimationError("multitype_basis: multitype not nondecreasing");
    return data;
}

CotypeResult cotype(const MultitypeData& data, const CVec& v) {
    double vn = norm(v);
    if (vn == 0.0) throw std::invalid_argument("cotype: zero vector");
    CotypeResult res{0, 0};
    int cmax = -1, cmin = -1;
    for (size_t j = 0; j < data.basis.size(); ++j) {
        double aj = std::abs(hdot(v, data.basis[j]));
        if (aj > 1e-10 * vn) {
            int m = data.multitype[j];
            cmax = std::max(cmax, m);
            cmin = (cmin < 0) ? m : std::min(cmin, m);
        }
    }
    if (cmax < 0) throw std::invalid_argument("cotype: vector has no component in the basis");
    res.cotype = cmax;
    res.type = cmin;
    return res;
}

CVec ScalingMap::apply(const CVec& w) const {
    CVec r = w;
    for (size_t j = 0; j < diag.size(); ++j) r[static_cast<int>(j)] *= diag[j];
    return r;
}

CVec ScalingMap::apply_inverse(const CVec& w) const {
    CVec r = w;
    for (size_t j = 0; j < diag.size(); ++j) r[static_cast<int>(j)] /= diag[j];
    return r;
}

ScalingMap scaling_map(const MultitypeData& data, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("scaling_map: lambda must be positive");
    ScalingMap m;
    m.diag.push_back(lambda);
    for (size_t j = 1; j < data.multitype.size(); ++j)
        m.diag.push_back(std::pow(lambda, 1.0 / data.multitype[j]));
    return m;
}

double ScalingModel::eval_H(const CVec& wprime) const { return H.eval(to_reals(wprime)); }

double ScalingModel::model_defining(const CVec& w) const {
    CVec wprime(w.dim() - 1 > 0 ? w.dim() - 1 : 1);
    for (int j = 1; j < w.dim(); ++j) wprime[j - 1] = w[j];
    double h = (w.dim() > 1) ? eval_H(wprime) : 0.0;
    return w[0].real() + h;
}

ScalingModel scaling_model(const Domain& D, const MultitypeData& data) {
    const int d = D.dim();
    // Compose r with z = xi + sum_i w_i v_i in real coordinates.
    std::vector<std::vector<double>> lin(static_cast<size_t>(2 * d),
                                         std::vector<double>(static_cast<size_t>(2 * d), 0.0));
    std::vector<double> cst(static_cast<size_t>(2 * d), 0.0);
    for (int j = 0; j < d; ++j) {
        cst[static_cast<size_t>(2 * j)] = data.xi.xi[j].real();
        cst[static_cast<size_t>(2 * j + 1)] = data.xi.xi[j].imag();
        for (int i = 0; i < d; ++i) {
            Complex vij = data.basis[static_cast<size_t>(i)][j];
            lin[static_cast<size_t>(2 * j)][static_cast<size_t>(2 * i)] = vij.real();
            lin[static_cast<size_t>(2 * j)][static_cast<size_t>(2 * i + 1)] = -vij.imag();
            lin[static_cast<size_t>(2 * j + 1)][static_cast<size_t>(2 * i)] = vij.imag();
            lin[static_cast<size_t>(2 * j + 1)][static_cast<size_t>(2 * i + 1)] = vij.real();
        }
    }
    RealPoly rhat = D.defining_polynomial().compose_affine(lin, cst, 2 * d);

    // Gauge: scale so that the coefficient of Re w_0 is exactly 1.
    RealPoly::Key key_u0(static_cast<size_t>(2 * d), 0);
    key_u0[0] = 1;
    auto it = rhat.terms().find(key_u0);
    if (it == rhat.terms().end() || it->second <= 0.0)
        throw EstimationError("scaling_model: missing positive Re w_0 coefficient");
    rhat = (1.0 / it->second) * rhat;
    rhat.prune(1e-11 * std::max(1.0, rhat.max_abs_coeff()));

    ScalingModel model;
    for (size_t j = 1; j < data.multitype.size(); ++j) model.weights.push_back(data.multitype[j]);
    model.r_hat = rhat;

    // H: terms free of w_0 with weighted degree exactly 1.
    long lcm = 1;
    for (int m : model.weights) lcm = std::lcm(lcm, static_cast<long>(m));
    RealPoly H(2 * (d - 1));
    for (const auto& [k, c] : rhat.terms()) {
        if (k[0] != 0 || k[1] != 0) continue;
        long wdeg = 0;
        bool constant = true;
        RealPoly::Key kk(static_cast<size_t>(2 * (d - 1)), 0);
        for (int j = 1; j < d; ++j) {
            int e = k[static_cast<size_t>(2 * j)] + k[static_cast<size_t>(2 * j + 1)];
            if (e > 0) constant = false;
            wdeg += static_cast<long>(e) * (lcm / data.multitype[static_cast<size_t>(j)]);
            kk[static_cast<size_t>(2 * (j - 1))] = k[static_cast<size_t>(2 * j)];
            kk[static_cast<size_t>(2 * (j - 1) + 1)] = k[static_cast<size_t>(2 * j + 1)];
        }
        if (!constant && wdeg == lcm) H.add_term(kk, c);
    }
    model.H = H;

    if (d > 1) {
        // Weighted homogeneity, nonnegativity and midpoint convexity on samples.
        QuasiRandom qr(2 * (d - 1), 3);
        for (int itn = 0; itn < 200; ++itn) {
            std::vector<double> u = qr.next();
            CVec w(d - 1), w2(d - 1);
            std::vector<double> u2 = qr.next();
            for (int j = 0; j < d - 1; ++j) {
                w[j] = Complex(2.0 * u[static_cast<size_t>(2 * j)] - 1.0,
                               2.0 * u[static_cast<size_t>(2 * j + 1)] - 1.0);
                w2[j] = Complex(2.0 * u2[static_cast<size_t>(2 * j)] - 1.0,
                                2.0 * u2[static_cast<size_t>(2 * j + 1)] - 1.0);
            }
            double h = model.eval_H(w);
            if (h < -1e-12) throw EstimationError("scaling_model: H negative on sample");
            for (double t : {0.5, 2.0, 7.0}) {
                CVec wt = w;
                for (int j = 0; j < d - 1; ++j)
                    wt[j] *= std::pow(t, 1.0 / model.weights[static_cast<size_t>(j)]);
                if (std::fabs(model.eval_H(wt) - t * h) > 1e-10 * (1.0 + std::fabs(t * h)))
                    throw EstimationError("scaling_model: weighted homogeneity check failed");
            }
            double hm = model.eval_H(0.5 * (w + w2));
            if (hm > 0.5 * (h + model.eval_H(w2)) + 1e-10)
                throw EstimationError("scaling_model: midpoint convexity check failed");
        }

        // Remainder bound near 0: |R(w)| <= 0.1 (|w_0| + sum |w_j|^{m_j}).
        QuasiRandom qr2(2 * d, 5);
        for (int itn = 0; itn < 200; ++itn) {
            std::vector<double> u = qr2.next();
            CVec w(d);
            for (int j = 0; j < d; ++j)
                w[j] = 0.05 * Complex(2.0 * u[static_cast<size_t>(2 * j)] - 1.0,
                                      2.0 * u[static_cast<size_t>(2 * j + 1)] - 1.0);
            CVec wprime(d - 1);
            for (int j = 1; j < d; ++j) wprime[j - 1] = w[j];
            double R = rhat.eval(to_reals(w)) - w[0].real() - model.eval_H(wprime);
            double budget = std::abs(w[0]);
            for (int j = 1; j < d; ++j)
                budget += std::pow(std::abs(w[j]), data.multitype[static_cast<size_t>(j)]);
            if (std::fabs(R) > 0.1 * budget + 1e-12)
                throw EstimationError("scaling_model: remainder bound violated on sample");
        }
    }
    return model;
}

double scaled_defining(const ScalingModel& model, const MultitypeData& data, double lambda,
                       const CVec& w) {
    ScalingMap A = scaling_map(data, lambda);
    return lambda * model.r_hat.eval(to_reals(A.apply_inverse(w)));
}

}  // namespace kobalt
