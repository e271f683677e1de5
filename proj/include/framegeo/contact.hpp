#ifndef FRAMEGEO_CONTACT_HPP
#define FRAMEGEO_CONTACT_HPP

#include "framegeo/identities.hpp"

namespace framegeo {

/// Input form of an almost-contact datum: the matrix [phi]^i_j in frame
/// indices (phi(e_j) = [phi]^i_j e_i) and the frame components of xi.
/// Entries are expressions; every builtin uses constants. The 1-form
/// eta is always derived as eta(X) = g(X, xi), never user-supplied.
struct ContactSpec {
    std::vector<std::vector<Expr>> phi;  // [i][j]
    std::vector<Expr> xi;
};

/// (phi, xi, eta) evaluated at one point, in frame components.
template <class S>
struct ContactStructure {
    Mat<Jet<S>> phi;
    std::vector<Jet<S>> xi;
    std::vector<Jet<S>> eta;  // eta_i = g_ij xi^j
};

template <class S>
ContactStructure<S> evaluate_contact(const ContactSpec& spec, const FramePointData<S>& fd) {
    const int n = fd.dim;
    ContactStructure<S> cs;
    cs.phi = Mat<Jet<S>>(n, fd.zero_jet());
    cs.xi.assign(n, fd.zero_jet());
    cs.eta.assign(n, fd.zero_jet());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cs.phi(i, j) = spec.phi[i][j].eval_jet(fd.point, fd.degree);
    for (int i = 0; i < n; ++i) cs.xi[i] = spec.xi[i].eval_jet(fd.point, fd.degree);
    for (int i = 0; i < n; ++i) {
        Jet<S> acc = fd.zero_jet();
        for (int j = 0; j < n; ++j) acc = acc + fd.g(i, j) * cs.xi[j];
        cs.eta[i] = acc;
    }
    return cs;
}

/// Defects of the almost-contact-metric axioms:
/// phi^2 = -I + eta (x) xi, eta(xi) = 1, phi xi = 0, eta o phi = 0,
/// g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y).
template <class S>
struct AlmostContactDefects {
    S phi_square{0};
    S eta_unit{0};
    S phi_xi{0};
    S eta_phi{0};
    S compatibility{0};

    S max_all() const {
        S m = phi_square;
        defect_update(m, eta_unit);
        defect_update(m, phi_xi);
        defect_update(m, eta_phi);
        defect_update(m, compatibility);
        return m;
    }
};

template <class S>
AlmostContactDefects<S> check_almost_contact(const ContactStructure<S>& cs,
                                             const FramePointData<S>& fd) {
    const int n = fd.dim;
    AlmostContactDefects<S> d;
    const S one = ScalarOps<S>::from_int(1);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            S acc = S(0);
            for (int m = 0; m < n; ++m) acc += cs.phi(i, m).value() * cs.phi(m, j).value();
            if (i == j) acc += one;
            acc -= cs.eta[j].value() * cs.xi[i].value();
            defect_update(d.phi_square, acc);
        }
    }
    {
        S acc = -one;
        for (int i = 0; i < n; ++i) acc += cs.eta[i].value() * cs.xi[i].value();
        defect_update(d.eta_unit, acc);
    }
    for (int i = 0; i < n; ++i) {
        S acc = S(0);
        for (int j = 0; j < n; ++j) acc += cs.phi(i, j).value() * cs.xi[j].value();
        defect_update(d.phi_xi, acc);
    }
    for (int j = 0; j < n; ++j) {
        S acc = S(0);
        for (int i = 0; i < n; ++i) acc += cs.eta[i].value() * cs.phi(i, j).value();
        defect_update(d.eta_phi, acc);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            S acc = -fd.g(i, j).value() + cs.eta[i].value() * cs.eta[j].value();
            for (int m = 0; m < n; ++m)
                for (int p = 0; p < n; ++p)
                    acc += cs.phi(m, i).value() * cs.phi(p, j).value() * fd.g(m, p).value();
            defect_update(d.compatibility, acc);
        }
    }
    return d;
}

/// Defects of the defining Kenmotsu conditions:
/// nabla_phi: (nabla_X phi)Y = g(phi X, Y) xi - eta(Y) phi X
/// nabla_xi:  nabla_X xi = X - eta(X) xi
/// nabla_eta: (nabla_X eta)Y = g(X, Y) - eta(X) eta(Y)
/// The last two are consequences of the first; reporting them
/// separately cross-checks the covariant-derivative machinery.
template <class S>
struct KenmotsuDefects {
    S nabla_phi{0};
    S nabla_xi{0};
    S nabla_eta{0};

    S max_all() const {
        S m = nabla_phi;
        defect_update(m, nabla_xi);
        defect_update(m, nabla_eta);
        return m;
    }
};

template <class S>
KenmotsuDefects<S> check_kenmotsu(const ContactStructure<S>& cs, const FramePointData<S>& fd,
                                  const CurvaturePack<S>& pack) {
    const int n = fd.dim;
    KenmotsuDefects<S> d;

    Tensor<S> phi_t(n, {true, false}, fd.zero_jet());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) phi_t.at({i, j}) = cs.phi(i, j);
    Tensor<S> nabla_phi = covariant_derivative(phi_t, fd, pack);

    Tensor<S> xi_t(n, {true}, fd.zero_jet());
    for (int i = 0; i < n; ++i) xi_t.at({i}) = cs.xi[i];
    Tensor<S> nabla_xi = covariant_derivative(xi_t, fd, pack);

    Tensor<S> eta_t(n, {false}, fd.zero_jet());
    for (int i = 0; i < n; ++i) eta_t.at({i}) = cs.eta[i];
    Tensor<S> nabla_eta = covariant_derivative(eta_t, fd, pack);

    for (int a = 0; a < n; ++a) {
        for (int j = 0; j < n; ++j) {
            // g(phi e_a, e_j)
            S gphi = S(0);
            for (int m = 0; m < n; ++m) gphi += cs.phi(m, a).value() * fd.g(m, j).value();
            for (int i = 0; i < n; ++i) {
                S rhs = gphi * cs.xi[i].value() - cs.eta[j].value() * cs.phi(i, a).value();
                defect_update(d.nabla_phi, nabla_phi.at({a, i, j}).value() - rhs);
            }
        }
        for (int i = 0; i < n; ++i) {
            S rhs = (i == a ? ScalarOps<S>::from_int(1) : S(0)) -
                    cs.eta[a].value() * cs.xi[i].value();
            defect_update(d.nabla_xi, nabla_xi.at({a, i}).value() - rhs);
        }
        for (int j = 0; j < n; ++j) {
            S rhs = fd.g(a, j).value() - cs.eta[a].value() * cs.eta[j].value();
            defect_update(d.nabla_eta, nabla_eta.at({a, j}).value() - rhs);
        }
    }
    return d;
}

/// Defects of the curvature consequences on a Kenmotsu manifold:
/// r_xy_xi:   R(X,Y)xi = eta(X)Y - eta(Y)X
/// r_xi_x_y:  R(xi,X)Y = eta(Y)X - g(X,Y)xi
/// r_xi_x_xi: R(xi,X)xi = X - eta(X)xi
/// ricci_xi:  S(X,xi) = -(n-1) eta(X)
template <class S>
struct KenmotsuCurvatureDefects {
    S r_xy_xi{0};
    S r_xi_x_y{0};
    S r_xi_x_xi{0};
    S ricci_xi{0};

    S max_all() const {
        S m = r_xy_xi;
        defect_update(m, r_xi_x_y);
        defect_update(m, r_xi_x_xi);
        defect_update(m, ricci_xi);
        return m;
    }
};

template <class S>
KenmotsuCurvatureDefects<S> check_kenmotsu_curvature(const ContactStructure<S>& cs,
                                                     const CurvaturePack<S>& pack,
                                                     const FramePointData<S>& fd) {
    const int n = fd.dim;
    KenmotsuCurvatureDefects<S> d;

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                S lhs = S(0);
                for (int k = 0; k < n; ++k)
                    lhs += pack.R(i, j, k, l).value() * cs.xi[k].value();
                S rhs = cs.eta[i].value() * (l == j ? ScalarOps<S>::from_int(1) : S(0)) -
                        cs.eta[j].value() * (l == i ? ScalarOps<S>::from_int(1) : S(0));
                defect_update(d.r_xy_xi, lhs - rhs);
            }

    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                S lhs = S(0);
                for (int i = 0; i < n; ++i)
                    lhs += cs.xi[i].value() * pack.R(i, j, k, l).value();
                S rhs = cs.eta[k].value() * (l == j ? ScalarOps<S>::from_int(1) : S(0)) -
                        fd.g(j, k).value() * cs.xi[l].value();
                defect_update(d.r_xi_x_y, lhs - rhs);
            }

    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            S lhs = S(0);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    lhs += cs.xi[i].value() * cs.xi[k].value() * pack.R(i, j, k, l).value();
            S rhs = (l == j ? ScalarOps<S>::from_int(1) : S(0)) -
                    cs.eta[j].value() * cs.xi[l].value();
            defect_update(d.r_xi_x_xi, lhs - rhs);
        }

    for (int j = 0; j < n; ++j) {
        S lhs = S(0);
        for (int k = 0; k < n; ++k) lhs += pack.ricci(j, k).value() * cs.xi[k].value();
        S rhs = -ScalarOps<S>::from_int(n - 1) * cs.eta[j].value();
        defect_update(d.ricci_xi, lhs - rhs);
    }
    return d;
}

/// Defects of the dimension-3 closed forms that express curvature and
/// Ricci purely through r, g, and eta:
/// R(X,Y)Z = ((r+4)/2)[g(Y,Z)X - g(X,Z)Y]
///   - ((r+6)/2)[g(Y,Z)eta(X)xi - g(X,Z)eta(Y)xi
///               + eta(Y)eta(Z)X - eta(X)eta(Z)Y]
/// S(X,Y) = ((r+2)g(X,Y) - (r+6)eta(X)eta(Y)) / 2
template <class S>
struct ClosedForm3dDefects {
    S curvature_closed_form{0};
    S ricci_closed_form{0};

    S max_all() const {
        S m = curvature_closed_form;
        defect_update(m, ricci_closed_form);
        return m;
    }
};

template <class S>
ClosedForm3dDefects<S> check_3d_closed_forms(const ContactStructure<S>& cs,
                                             const CurvaturePack<S>& pack,
                                             const FramePointData<S>& fd) {
    if (fd.dim != 3)
        throw DimensionMismatch("the closed-form curvature check is specific to dimension 3");
    const int n = 3;
    ClosedForm3dDefects<S> d;
    const S half = ScalarOps<S>::from_ratio(1, 2);
    const S rv = pack.scalar.value();
    const S ca = (rv + ScalarOps<S>::from_int(4)) * half;
    const S cb = (rv + ScalarOps<S>::from_int(6)) * half;

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    S gjk = fd.g(j, k).value();
                    S gik = fd.g(i, k).value();
                    S di = l == i ? ScalarOps<S>::from_int(1) : S(0);
                    S dj = l == j ? ScalarOps<S>::from_int(1) : S(0);
                    S rhs = ca * (gjk * di - gik * dj) -
                            cb * (gjk * cs.eta[i].value() * cs.xi[l].value() -
                                  gik * cs.eta[j].value() * cs.xi[l].value() +
                                  cs.eta[j].value() * cs.eta[k].value() * di -
                                  cs.eta[i].value() * cs.eta[k].value() * dj);
                    defect_update(d.curvature_closed_form, pack.R(i, j, k, l).value() - rhs);
                }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            S rhs = ((rv + ScalarOps<S>::from_int(2)) * fd.g(i, j).value() -
                     (rv + ScalarOps<S>::from_int(6)) * cs.eta[i].value() * cs.eta[j].value()) *
                    half;
            defect_update(d.ricci_closed_form, pack.ricci(i, j).value() - rhs);
        }
    return d;
}

}  // namespace framegeo

#endif
