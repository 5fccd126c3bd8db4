#pragma once

#include <map>
#include <string>
#include <vector>

namespace kobalt {

/// Sparse real polynomial in n real variables. Used for defining functions
/// r(z) written in the real coordinates (x_0, y_0, ..., x_{d-1}, y_{d-1}).
class RealPoly {
public:
    using Key = std::vector<int>;  // exponent per variable

    RealPoly() : nvars_(0) {}
    explicit RealPoly(int nvars) : nvars_(nvars) {}

    static RealPoly constant(int nvars, double c);
    static RealPoly variable(int nvars, int var);

    int nvars() const { return nvars_; }
    bool empty() const { return terms_.empty(); }
    const std::map<Key, double>& terms() const { return terms_; }

    void add_term(const Key& k, double c);

    RealPoly& operator+=(const RealPoly& o);
    RealPoly& operator-=(const RealPoly& o);
    friend RealPoly operator+(RealPoly a, const RealPoly& b) { return a += b; }
    friend RealPoly operator-(RealPoly a, const RealPoly& b) { return a -= b; }
    friend RealPoly operator*(const RealPoly& a, const RealPoly& b);
    friend RealPoly operator*(double s, RealPoly a);
    RealPoly pow(int e) const;

    double eval(const std::vector<double>& x) const;
    RealPoly partial(int var) const;
    int total_degree() const;
    double max_abs_coeff() const;
    void prune(double tol);

    /// Substitute variable i with cst[i] + sum_j lin[i][j] * u_j; the result
    /// is a polynomial in the new variables u_0..u_{m-1}.
    RealPoly compose_affine(const std::vector<std::vector<double>>& lin,
                            const std::vector<double>& cst, int new_nvars) const;

    /// Order of vanishing at the origin: minimal total degree carrying a
    /// coefficient above tol (relative to the largest coefficient).
    /// Returns -1 when the polynomial is (numerically) identically zero.
    int vanishing_order(double rel_tol = 1e-9) const;

    std::string str() const;

private:
    int nvars_;
    std::map<Key, double> terms_;
};

}  // namespace kobalt
