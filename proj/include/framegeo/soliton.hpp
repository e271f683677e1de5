#ifndef FRAMEGEO_SOLITON_HPP
#define FRAMEGEO_SOLITON_HPP

#include <utility>
#include <vector>

#include "framegeo/contact.hpp"

namespace framegeo {

/// Lie derivative of the metric along a vector field V given in frame
/// components: (L_V g)(X, Y) = g(nabla_X V, Y) + g(X, nabla_Y V).
template <class S>
Mat<Jet<S>> lie_derivative_metric(const std::vector<Jet<S>>& v, const FramePointData<S>& fd,
                                  const CurvaturePack<S>& pack) {
    const int n = fd.dim;
    Tensor<S> v_t(n, {true}, fd.zero_jet());
    for (int i = 0; i < n; ++i) v_t.at({i}) = v[i];
    Tensor<S> nabla_v = covariant_derivative(v_t, fd, pack);

    Mat<Jet<S>> lie(n, fd.zero_jet());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet<S> acc = fd.zero_jet();
            for (int m = 0; m < n; ++m)
                acc = acc + nabla_v.at({i, m}) * fd.g(m, j) + nabla_v.at({j, m}) * fd.g(m, i);
            lie(i, j) = acc;
        }
    return lie;
}

/// One residual row per independent symmetric index pair (i <= j):
/// (L_V g)_ij + 2 S_ij + 2 lambda g_ij + 2 mu eta_i eta_j.
template <class S>
std::vector<S> soliton_equation_rows(const S& lambda, const S& mu, const Mat<Jet<S>>& lie,
                                     const ContactStructure<S>& cs, const FramePointData<S>& fd,
                                     const CurvaturePack<S>& pack) {
    const int n = fd.dim;
    const S two = ScalarOps<S>::from_int(2);
    std::vector<S> rows;
    rows.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            rows.push_back(lie(i, j).value() + two * pack.ricci(i, j).value() +
                           two * lambda * fd.g(i, j).value() +
                           two * mu * cs.eta[i].value() * cs.eta[j].value());
    return rows;
}

template <class S>
S max_abs(const std::vector<S>& rows) {
    S m{0};
    for (const S& r : rows) defect_update(m, r);
    return m;
}

template <class S>
S mean_square(const std::vector<S>& rows) {
    S m{0};
    for (const S& r : rows) m += r * r;
    return m / ScalarOps<S>::from_int(static_cast<long long>(rows.size()));
}

/// Max-abs soliton-equation defect for hand-supplied constants.
template <class S>
S soliton_residual(const S& lambda, const S& mu, const std::vector<Jet<S>>& v,
                   const ContactStructure<S>& cs, const FramePointData<S>& fd,
                   const CurvaturePack<S>& pack) {
    Mat<Jet<S>> lie = lie_derivative_metric(v, fd, pack);
    return max_abs(soliton_equation_rows(lambda, mu, lie, cs, fd, pack));
}

enum class MuMode { Free, FrozenZero };

/// Result of a pointwise least-squares fit of (lambda, mu).
/// residual_rms2 is the mean square over the independent rows; its
/// square root is reported, but the square stays exact in rational mode.
template <class S>
struct SolitonPointFit {
    std::vector<S> point;
    S lambda{0};
    S mu{0};
    S residual_max{0};
    S residual_rms2{0};
};

/// Aggregate over sample points. lambda/mu are the means; spread is
/// max over point pairs of |lambda(p)-lambda(q)| + |mu(p)-mu(q)|; the
/// data is a soliton only when residual_max and spread both pass,
/// because the constants must be global.
template <class S>
struct SolitonFit {
    S lambda{0};
    S mu{0};
    S residual_max{0};
    S residual_rms2{0};
    S spread{0};
    bool mu_frozen_zero = false;
    std::vector<SolitonPointFit<S>> per_point;
};

template <class S>
SolitonPointFit<S> fit_soliton_point(const std::vector<Jet<S>>& v, const ContactStructure<S>& cs,
                                     const FramePointData<S>& fd, const CurvaturePack<S>& pack,
                                     MuMode mu_mode) {
    const int n = fd.dim;
    const S two = ScalarOps<S>::from_int(2);
    Mat<Jet<S>> lie = lie_derivative_metric(v, fd, pack);

    // Normal equations for rows b + lambda u + mu w = 0 over independent
    // pairs, with u = 2g, w = 2 eta (x) eta, b = L_V g + 2 Ricci.
    S uu{0}, uw{0}, ww{0}, ub{0}, wb{0};
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            S u = two * fd.g(i, j).value();
            S w = two * cs.eta[i].value() * cs.eta[j].value();
            S b = lie(i, j).value() + two * pack.ricci(i, j).value();
            uu += u * u;
            uw += u * w;
            ww += w * w;
            ub += u * b;
            wb += w * b;
        }

    SolitonPointFit<S> fit;
    fit.point = fd.point;
    if (mu_mode == MuMode::FrozenZero) {
        if (ScalarOps<S>::is_zero(uu)) throw RankDeficientFit("metric column vanished");
        fit.lambda = -(ub / uu);
        fit.mu = S(0);
    } else {
        S delta = uu * ww - uw * uw;
        bool degenerate = ScalarOps<S>::is_zero(delta);
        if (!degenerate && !ScalarOps<S>::exact) {
            degenerate = std::abs(ScalarOps<S>::to_double(delta)) <
                         1e-14 * (std::abs(ScalarOps<S>::to_double(uu * ww)) + 1.0);
        }
        if (degenerate)
            throw RankDeficientFit("eta (x) eta is parallel to g; lambda and mu are not separable");
        fit.lambda = -((ub * ww - wb * uw) / delta);
        fit.mu = -((uu * wb - uw * ub) / delta);
    }
    std::vector<S> rows = soliton_equation_rows(fit.lambda, fit.mu, lie, cs, fd, pack);
    fit.residual_max = max_abs(rows);
    fit.residual_rms2 = mean_square(rows);
    return fit;
}

template <class S>
SolitonFit<S> combine_soliton_fits(std::vector<SolitonPointFit<S>> fits, MuMode mu_mode) {
    SolitonFit<S> agg;
    agg.mu_frozen_zero = mu_mode == MuMode::FrozenZero;
    if (fits.empty()) return agg;
    S lambda_min = fits[0].lambda, lambda_max = fits[0].lambda;
    S mu_min = fits[0].mu, mu_max = fits[0].mu;
    for (const auto& f : fits) {
        agg.lambda += f.lambda;
        agg.mu += f.mu;
        defect_update(agg.residual_max, f.residual_max);
        if (agg.residual_rms2 < f.residual_rms2) agg.residual_rms2 = f.residual_rms2;
        if (f.lambda < lambda_min) lambda_min = f.lambda;
        if (lambda_max < f.lambda) lambda_max = f.lambda;
        if (f.mu < mu_min) mu_min = f.mu;
        if (mu_max < f.mu) mu_max = f.mu;
    }
    S count = ScalarOps<S>::from_int(static_cast<long long>(fits.size()));
    agg.lambda = agg.lambda / count;
    agg.mu = agg.mu / count;
    agg.spread = (lambda_max - lambda_min) + (mu_max - mu_min);
    agg.per_point = std::move(fits);
    return agg;
}

/// Sign classification: shrinking / steady / expanding by the sign of
/// lambda, with "proper" appended when mu is nonzero.
inline std::string soliton_classification(double lambda, double mu, double tol) {
    std::string s = lambda < -tol ? "shrinking" : (lambda > tol ? "expanding" : "steady");
    if (std::abs(mu) > tol) s += ", proper";
    return s;
}

/// Constants forced by the scalar curvature on a Kenmotsu 3-manifold:
/// lambda = -(r+2)/2 - 1 and mu = (r+6)/2 + 1, so lambda + mu = 2.
template <class S>
std::pair<S, S> soliton_from_scalar(const S& r) {
    const S half = ScalarOps<S>::from_ratio(1, 2);
    const S one = ScalarOps<S>::from_int(1);
    S lambda = -((r + ScalarOps<S>::from_int(2)) * half) - one;
    S mu = (r + ScalarOps<S>::from_int(6)) * half + one;
    return {lambda, mu};
}

}  // namespace framegeo

#endif
