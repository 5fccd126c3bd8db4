#include "kobalt/maps.hpp"

namespace kobalt {

CVec apply_matrix(const CMat& J, const CVec& v) {
    CVec out(static_cast<int>(J.size()));
    for (size_t i = 0; i < J.size(); ++i) {
        Complex s = 0.0;
        for (size_t j = 0; j < J[i].size(); ++j) s += J[i][j] * v[static_cast<int>(j)];
        out[static_cast<int>(i)] = s;
    }
    return out;
}

HolomorphicMap compose(const HolomorphicMap& g, const HolomorphicMap& f) {
    if (f.target().dim() != g.source().dim())
        throw std::invalid_argument("compose: dimension mismatch between factors");
    auto fptr = std::make_shared<HolomorphicMap>(f);
    auto gptr = std::make_shared<HolomorphicMap>(g);
    HolomorphicMap::JacFn jac = nullptr;
    if (f.has_analytic_jacobian() && g.has_analytic_jacobian()) {
        jac = [fptr, gptr](const CVec& z) {
            CMat Jf = fptr->analytic_jacobian(z);
            CMat Jg = gptr->analytic_jacobian((*fptr)(z));
            CMat J(Jg.size(), std::vector<Complex>(Jf[0].size(), 0.0));
            for (size_t i = 0; i < Jg.size(); ++i)
                for (size_t j = 0; j < Jf[0].size(); ++j)
                    for (size_t k = 0; k < Jf.size(); ++k) J[i][j] += Jg[i][k] * Jf[k][j];
            return J;
        };
    }
    return HolomorphicMap(g.tag() + "∘" + f.tag(), f.source_ptr(), g.target_ptr(),
                          [fptr, gptr](const CVec& z) { return (*gptr)((*fptr)(z)); }, jac);
}

}  // namespace kobalt
