#ifndef FRAMEGEO_IDENTITIES_HPP
#define FRAMEGEO_IDENTITIES_HPP

#include "framegeo/curvature.hpp"

namespace framegeo {

template <class S>
void defect_update(S& acc, const S& component) {
    S a = ScalarOps<S>::abs(component);
    if (acc < a) acc = a;
}

/// Max-abs frame-component defects of the universal identities at the
/// evaluation point. Every entry is exactly zero in honest arithmetic;
/// the 3D decomposition only exists when dim == 3.
template <class S>
struct GeometryDefects {
    S torsion{0};
    S metric_compatibility{0};
    S antisymmetry_first_pair{0};
    S antisymmetry_last_pair{0};
    S pair_symmetry{0};
    S bianchi_first{0};
    S bianchi_second_contracted{0};
    S decomposition_3d{0};
    bool has_decomposition_3d = false;

    S max_all() const {
        S m = torsion;
        defect_update(m, metric_compatibility);
        defect_update(m, antisymmetry_first_pair);
        defect_update(m, antisymmetry_last_pair);
        defect_update(m, pair_symmetry);
        defect_update(m, bianchi_first);
        defect_update(m, bianchi_second_contracted);
        if (has_decomposition_3d) defect_update(m, decomposition_3d);
        return m;
    }
};

template <class S>
GeometryDefects<S> identity_suite(const CurvaturePack<S>& pack, const FramePointData<S>& fd) {
    const int n = fd.dim;
    GeometryDefects<S> d;

    // torsion-free: Gamma^k_{ij} - Gamma^k_{ji} = c^k_{ij}
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                defect_update(d.torsion, (pack.Gamma(i, j, k) - pack.Gamma(j, i, k) -
                                          fd.structure(i, j, k)).value());

    // nabla g = 0
    Tensor<S> nabla_g = covariant_derivative(metric_tensor(fd), fd, pack);
    for (const auto& comp : nabla_g.comp) defect_update(d.metric_compatibility, comp.value());

    // curvature symmetries on the lowered tensor
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    defect_update(d.antisymmetry_first_pair,
                                  (pack.R_low(i, j, k, l) + pack.R_low(j, i, k, l)).value());
                    defect_update(d.antisymmetry_last_pair,
                                  (pack.R_low(i, j, k, l) + pack.R_low(i, j, l, k)).value());
                    defect_update(d.pair_symmetry,
                                  (pack.R_low(i, j, k, l) - pack.R_low(k, l, i, j)).value());
                    defect_update(d.bianchi_first,
                                  (pack.R(i, j, k, l) + pack.R(j, k, i, l) + pack.R(k, i, j, l))
                                      .value());
                }

    // contracted second Bianchi: div S = (1/2) dr in frame components
    {
        Tensor<S> nabla_s = covariant_derivative(ricci_tensor(pack, fd), fd, pack);
        const S half = ScalarOps<S>::from_ratio(1, 2);
        for (int j = 0; j < n; ++j) {
            Jet<S> acc = fd.zero_jet();
            for (int i = 0; i < n; ++i)
                for (int a = 0; a < n; ++a)
                    acc = acc + fd.g_inv(i, a) * nabla_s.at({i, a, j});
            S lhs = acc.value();
            S rhs = fd.frame_d(pack.scalar, j).value() * half;
            defect_update(d.bianchi_second_contracted, lhs - rhs);
        }
    }

    // 3D decomposition: R(X,Y)Z = g(Y,Z)QX - g(X,Z)QY + S(Y,Z)X - S(X,Z)Y
    //   - (r/2)[g(Y,Z)X - g(X,Z)Y]
    if (n == 3) {
        d.has_decomposition_3d = true;
        const S half = ScalarOps<S>::from_ratio(1, 2);
        S rv = pack.scalar.value();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        S lhs = pack.R(i, j, k, l).value();
                        S gjk = fd.g(j, k).value();
                        S gik = fd.g(i, k).value();
                        S rhs = gjk * pack.ricci_op(l, i).value() -
                                gik * pack.ricci_op(l, j).value();
                        if (l == i) rhs += pack.ricci(j, k).value() - rv * half * gjk;
                        if (l == j) rhs += -pack.ricci(i, k).value() + rv * half * gik;
                        defect_update(d.decomposition_3d, lhs - rhs);
                    }
    }
    return d;
}

}  // namespace framegeo

#endif
