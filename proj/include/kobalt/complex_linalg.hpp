#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace kobalt {

using Complex = std::complex<double>;

inline bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Point or tangent vector in C^d with the standard Hermitian product
/// <u,v> = sum_j u_j conj(v_j).
class CVec {
public:
    CVec() = default;
    explicit CVec(int dim) : entries_(static_cast<size_t>(dim)) {
        if (dim < 1) throw std::invalid_argument("CVec: dim must be >= 1");
    }
    CVec(std::initializer_list<Complex> list) : entries_(list) {
        if (entries_.empty()) throw std::invalid_argument("CVec: empty");
        check_finite();
    }
    explicit CVec(std::vector<Complex> v) : entries_(std::move(v)) {
        if (entries_.empty()) throw std::invalid_argument("CVec: empty");
        check_finite();
    }

    int dim() const { return static_cast<int>(entries_.size()); }
    Complex& operator[](int j) { return entries_[static_cast<size_t>(j)]; }
    const Complex& operator[](int j) const { return entries_[static_cast<size_t>(j)]; }
    const std::vector<Complex>& entries() const { return entries_; }

    void check_finite() const {
        for (const Complex& e : entries_)
            if (!finite(e)) throw std::domain_error("CVec: non-finite entry");
    }

    friend CVec operator+(const CVec& a, const CVec& b) {
        CVec r = a;
        for (int j = 0; j < a.dim(); ++j) r[j] += b[j];
        return r;
    }
    friend CVec operator-(const CVec& a, const CVec& b) {
        CVec r = a;
        for (int j = 0; j < a.dim(); ++j) r[j] -= b[j];
        return r;
    }
    friend CVec operator*(Complex s, const CVec& a) {
        CVec r = a;
        for (int j = 0; j < a.dim(); ++j) r[j] *= s;
        return r;
    }
    friend CVec operator*(double s, const CVec& a) { return Complex(s, 0.0) * a; }

private:
    std::vector<Complex> entries_;
};

inline Complex hdot(const CVec& u, const CVec& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("hdot: dimension mismatch");
    Complex s = 0.0;
    for (int j = 0; j < u.dim(); ++j) s += u[j] * std::conj(v[j]);
    return s;
}

inline double norm(const CVec& u) {
    double s = 0.0;
    for (int j = 0; j < u.dim(); ++j) s += std::norm(u[j]);
    return std::sqrt(s);
}

inline CVec unit(const CVec& u) {
    double n = norm(u);
    if (n == 0.0) throw std::domain_error("unit: zero vector");
    return (1.0 / n) * u;
}

inline CVec basis_vector(int dim, int j) {
    CVec e(dim);
    e[j] = 1.0;
    return e;
}

/// Low-discrepancy sequence (Kronecker/R_d recurrence). Deterministic for a
/// given dimension and seed; the seed offsets the start index.
class QuasiRandom {
public:
    explicit QuasiRandom(int dim, std::uint64_t seed = 0) : alphas_(static_cast<size_t>(dim)) {
        // phi_d: unique real root > 1 of x^(d+1) = x + 1.
        double phi = 1.5;
        for (int it = 0; it < 64; ++it)
            phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
        double a = 1.0;
        for (int j = 0; j < dim; ++j) {
            a /= phi;
            alphas_[static_cast<size_t>(j)] = a;
        }
        index_ = 1 + seed;
    }

    std::vector<double> next() {
        std::vector<double> p(alphas_.size());
        double n = static_cast<double>(index_++);
        for (size_t j = 0; j < alphas_.size(); ++j) {
            double v = 0.5 + n * alphas_[j];
            p[j] = v - std::floor(v);
        }
        return p;
    }

private:
    std::vector<double> alphas_;
    std::uint64_t index_;
};

/// Aitken extrapolation of a sequence with geometric error decay; the
/// variation output combines the last increment and the applied correction.
inline double aitken_limit(const std::vector<double>& a, double* variation = nullptr) {
    size_t n = a.size();
    if (n == 0) throw std::invalid_argument("aitken_limit: empty sequence");
    if (n == 1) {
        if (variation) *variation = 0.0;
        return a[0];
    }
    double limit = a[n - 1];
    double correction = 0.0;
    if (n >= 3) {
        double d1 = a[n - 2] - a[n - 3];
        double d2 = a[n - 1] - a[n - 2];
        double denom = d1 - d2;
        if (std::fabs(denom) > 1e-300) {
            double q = d2 / d1;
            if (std::fabs(q) < 0.95) {
                correction = d2 * q / (1.0 - q);
                limit += correction;
            }
        }
    }
    if (variation) *variation = std::fabs(a[n - 1] - a[n - 2]) + std::fabs(correction);
    return limit;
}

/// Least-squares fit of y = slope*x + intercept; r2 is the coefficient of
/// determination (1 for a perfect fit, 0 for no linear trend).
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 points");
    size_t n = x.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    if (sxx < 1e-300) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = (syy < 1e-300) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

}  // namespace kobalt
