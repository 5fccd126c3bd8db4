#include "kobalt/realpoly.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kobalt {

RealPoly RealPoly::constant(int nvars, double c) {
    RealPoly p(nvars);
    if (c != 0.0) p.terms_[Key(static_cast<size_t>(nvars), 0)] = c;
    return p;
}

RealPoly RealPoly::variable(int nvars, int var) {
    if (var < 0 || var >= nvars) throw std::invalid_argument("RealPoly::variable: index");
    RealPoly p(nvars);
    Key k(static_cast<size_t>(nvars), 0);
    k[static_cast<size_t>(var)] = 1;
    p.terms_[k] = 1.0;
    return p;
}

void RealPoly::add_term(const Key& k, double c) {
    if (static_cast<int>(k.size()) != nvars_) throw std::invalid_argument("RealPoly::add_term: key size");
    double& slot = terms_[k];
    slot += c;
    if (slot == 0.0) terms_.erase(k);
}

RealPoly& RealPoly::operator+=(const RealPoly& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("RealPoly: nvars mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

RealPoly& RealPoly::operator-=(const RealPoly& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("RealPoly: nvars mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

RealPoly operator*(const RealPoly& a, const RealPoly& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("RealPoly: nvars mismatch");
    RealPoly r(a.nvars_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            RealPoly::Key k = ka;
            for (size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

RealPoly operator*(double s, RealPoly a) {
    if (s == 0.0) return RealPoly(a.nvars_);
    for (auto& [k, c] : a.terms_) c *= s;
    return a;
}

RealPoly RealPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("RealPoly::pow: negative exponent");
    RealPoly r = constant(nvars_, 1.0);
    RealPoly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

double RealPoly::eval(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("RealPoly::eval: arity");
    double s = 0.0;
    for (const auto& [k, c] : terms_) {
        double t = c;
        for (size_t i = 0; i < k.size(); ++i)
            for (int e = 0; e < k[i]; ++e) t *= x[i];
        s += t;
    }
    return s;
}

RealPoly RealPoly::partial(int var) const {
    RealPoly r(nvars_);
    for (const auto& [k, c] : terms_) {
        int e = k[static_cast<size_t>(var)];
        if (e == 0) continue;
        Key kk = k;
        kk[static_cast<size_t>(var)] = e - 1;
        r.add_term(kk, c * e);
    }
    return r;
}

int RealPoly::total_degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) {
        (void)c;
        d = std::max(d, std::accumulate(k.begin(), k.end(), 0));
    }
    return d;
}

double RealPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [k, c] : terms_) {
        (void)k;
        m = std::max(m, std::fabs(c));
    }
    return m;
}

void RealPoly::prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::fabs(it->second) <= tol)
            it = terms_.erase(it);
        else
            ++it;
    }
}

RealPoly RealPoly::compose_affine(const std::vector<std::vector<double>>& lin,
                                  const std::vector<double>& cst, int new_nvars) const {
    if (static_cast<int>(lin.size()) != nvars_ || static_cast<int>(cst.size()) != nvars_)
        throw std::invalid_argument("RealPoly::compose_affine: arity");

    // Memoized powers of each affine form, built lazily.
    std::vector<std::vector<RealPoly>> powers(static_cast<size_t>(nvars_));
    auto form_power = [&](int var, int e) -> const RealPoly& {
        auto& cache = powers[static_cast<size_t>(var)];
        if (cache.empty()) {
            cache.push_back(RealPoly::constant(new_nvars, 1.0));
            RealPoly form = RealPoly::constant(new_nvars, cst[static_cast<size_t>(var)]);
            for (int j = 0; j < new_nvars; ++j) {
                double l = lin[static_cast<size_t>(var)][static_cast<size_t>(j)];
                if (l != 0.0) form += l * RealPoly::variable(new_nvars, j);
            }
            cache.push_back(form);
        }
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * cache[1]);
        return cache[static_cast<size_t>(e)];
    };

    RealPoly r(new_nvars);
    for (const auto& [k, c] : terms_) {
        RealPoly t = RealPoly::constant(new_nvars, c);
        for (int i = 0; i < nvars_; ++i)
            if (k[static_cast<size_t>(i)] > 0) t = t * form_power(i, k[static_cast<size_t>(i)]);
        r += t;
    }
    return r;
}

int RealPoly::vanishing_order(double rel_tol) const {
    double scale = max_abs_coeff();
    if (scale == 0.0) return -1;
    double tol = rel_tol * scale;
    int best = -1;
    for (const auto& [k, c] : terms_) {
        if (std::fabs(c) <= tol) continue;
        int d = std::accumulate(k.begin(), k.end(), 0);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

std::string RealPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (size_t i = 0; i < k.size(); ++i)
            if (k[i] > 0) os << "*v" << i << "^" << k[i];
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace kobalt
