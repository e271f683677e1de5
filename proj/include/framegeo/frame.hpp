#ifndef FRAMEGEO_FRAME_HPP
#define FRAMEGEO_FRAME_HPP

#include <optional>
#include <string>
#include <vector>

#include "framegeo/expr.hpp"
#include "framegeo/linalg.hpp"

namespace framegeo {

/// Input description of a moving frame: either coordinate coefficients
/// a_i^m over a chart (e_i = a_i^m d/dx^m) or constant structure
/// constants c^k_{ij} of a Lie group frame. The metric is given in
/// frame indices and defaults to the identity ("orthonormal").
struct FrameSpec {
    enum class Mode { ChartFrame, StructureConstants };

    Mode mode = Mode::ChartFrame;
    Chart chart;  // StructureConstants mode uses an empty chart
    int dim = 0;

    // ChartFrame: frame[i][m] is the coefficient of d/dx^m in e_i.
    std::vector<std::vector<Expr>> frame;

    // StructureConstants: flat [i][j][k] table of constant expressions,
    // antisymmetric in (i, j); filled completely (zeros included).
    std::vector<Expr> structure;

    bool orthonormal_metric = true;
    std::vector<std::vector<Expr>> metric;  // [i][j], full symmetric table

    const Expr& structure_at(int i, int j, int k) const {
        return structure[static_cast<std::size_t>((i * dim + j)) * dim + k];
    }
    Expr& structure_at(int i, int j, int k) {
        return structure[static_cast<std::size_t>((i * dim + j)) * dim + k];
    }
};

/// Everything the curvature machinery needs at one evaluation point,
/// all carried as jets: frame coefficients A and their inverse,
/// structure functions c^k_{ij}, and the frame-index metric.
template <class S>
struct FramePointData {
    int dim = 0;
    int n_vars = 0;
    int degree = 0;
    std::vector<S> point;
    bool structure_constant_mode = false;

    Mat<Jet<S>> A;      // A(i, m) = a_i^m
    Mat<Jet<S>> A_inv;  // matrix inverse of A
    std::vector<Jet<S>> c;  // flat [i][j][k]: [e_i, e_j] = c^k_{ij} e_k
    Mat<Jet<S>> g;      // metric in frame indices
    Mat<Jet<S>> g_inv;

    const Jet<S>& structure(int i, int j, int k) const {
        return c[static_cast<std::size_t>((i * dim + j)) * dim + k];
    }
    Jet<S>& structure(int i, int j, int k) {
        return c[static_cast<std::size_t>((i * dim + j)) * dim + k];
    }

    /// Derivative of a scalar jet along frame vector e_i.
    Jet<S> frame_d(const Jet<S>& f, int i) const {
        Jet<S> r = jet_const<S>(S(0), n_vars, degree);
        for (int m = 0; m < dim; ++m) r = r + A(i, m) * f.partial(m);
        return r;
    }

    Jet<S> zero_jet() const { return jet_const<S>(S(0), n_vars, degree); }
    Jet<S> const_jet(S v) const { return jet_const<S>(std::move(v), n_vars, degree); }
};

namespace detail {

template <class S>
void check_positive_definite(const Mat<Jet<S>>& g) {
    // leading principal minors of the value matrix
    const int n = g.dim();
    for (int k = 1; k <= n; ++k) {
        Mat<S> minor(k, S(0));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) minor(i, j) = g(i, j).value();
        S d = det(minor);
        if (!(ScalarOps<S>::to_double(d) > 0.0))
            throw Error("metric is not positive definite at the evaluation point");
    }
}

template <class S>
void check_frame_invertible(const Mat<S>& values, int dim) {
    S d = det(values);
    if constexpr (ScalarOps<S>::exact) {
        if (ScalarOps<S>::is_zero(d))
            throw SingularFrame("frame coefficient matrix has zero determinant");
    } else {
        double scale = 0.0;
        for (int i = 0; i < dim; ++i) {
            double row = 0.0;
            for (int j = 0; j < dim; ++j) row += std::abs(ScalarOps<S>::to_double(values(i, j)));
            scale = std::max(scale, row);
        }
        double dd = std::abs(ScalarOps<S>::to_double(d));
        double threshold = 1e-10 * std::pow(scale, dim);
        if (dd == 0.0 || dd < threshold)
            throw SingularFrame("frame coefficient matrix is numerically singular");
    }
}

}  // namespace detail

/// Evaluate a frame spec at a chart point: frame coefficients, their
/// inverse, structure functions (from Lie brackets in chart mode,
/// copied in structure-constants mode), and the metric, all as jets.
template <class S>
FramePointData<S> evaluate_frame(const FrameSpec& spec, const std::vector<S>& point, int degree) {
    const int dim = spec.dim;
    FramePointData<S> fd;
    fd.dim = dim;
    fd.n_vars = dim;
    fd.degree = degree;
    fd.point = point;
    fd.structure_constant_mode = spec.mode == FrameSpec::Mode::StructureConstants;

    if (static_cast<int>(point.size()) != dim)
        throw DimensionMismatch("point dimension does not match frame dimension");

    const Jet<S> zero = jet_const<S>(S(0), dim, degree);
    const Jet<S> one = jet_const<S>(ScalarOps<S>::from_int(1), dim, degree);

    fd.A = Mat<Jet<S>>(dim, zero);
    fd.c.assign(static_cast<std::size_t>(dim) * dim * dim, zero);

    if (spec.mode == FrameSpec::Mode::ChartFrame) {
        if (!point_in_domain(spec.chart, point))
            throw PointOutsideDomain("evaluation point violates a chart domain constraint");
        for (int i = 0; i < dim; ++i)
            for (int m = 0; m < dim; ++m) fd.A(i, m) = spec.frame[i][m].eval_jet(point, degree);
        detail::check_frame_invertible(value_matrix(fd.A), dim);
        fd.A_inv = invert(fd.A, one);

        // [e_i, e_j]^m = sum_n (a_i^n d_n a_j^m - a_j^n d_n a_i^m),
        // then solve against A for the frame components c^k_{ij}.
        for (int i = 0; i < dim; ++i) {
            for (int j = i + 1; j < dim; ++j) {
                std::vector<Jet<S>> bracket(dim, zero);
                for (int m = 0; m < dim; ++m) {
                    Jet<S> acc = zero;
                    for (int n = 0; n < dim; ++n)
                        acc = acc + fd.A(i, n) * fd.A(j, m).partial(n) -
                              fd.A(j, n) * fd.A(i, m).partial(n);
                    bracket[m] = acc;
                }
                for (int k = 0; k < dim; ++k) {
                    Jet<S> ck = zero;
                    for (int m = 0; m < dim; ++m) ck = ck + bracket[m] * fd.A_inv(m, k);
                    fd.structure(i, j, k) = ck;
                    fd.structure(j, i, k) = -ck;
                }
            }
        }
    } else {
        fd.A = Mat<Jet<S>>(dim, zero);
        for (int i = 0; i < dim; ++i) fd.A(i, i) = one;
        fd.A_inv = fd.A;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k)
                    fd.structure(i, j, k) =
                        fd.const_jet(spec.structure_at(i, j, k).eval_value(point));
    }

    fd.g = Mat<Jet<S>>(dim, zero);
    if (spec.orthonormal_metric) {
        for (int i = 0; i < dim; ++i) fd.g(i, i) = one;
        fd.g_inv = fd.g;
    } else {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) fd.g(i, j) = spec.metric[i][j].eval_jet(point, degree);
        detail::check_positive_definite(fd.g);
        fd.g_inv = invert(fd.g, one);
    }
    return fd;
}

/// Jacobi identity for constant structure constants, checked exactly:
/// sum over cyclic (i,j,k) of c^m_{ij} c^l_{mk} must vanish.
template <class S>
bool structure_constants_satisfy_jacobi(const FrameSpec& spec, const std::vector<S>& zero_point) {
    const int dim = spec.dim;
    std::vector<S> cv(static_cast<std::size_t>(dim) * dim * dim, S(0));
    auto at = [&](int i, int j, int k) -> S& {
        return cv[static_cast<std::size_t>((i * dim + j)) * dim + k];
    };
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) at(i, j, k) = spec.structure_at(i, j, k).eval_value(zero_point);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                for (int l = 0; l < dim; ++l) {
                    S acc = S(0);
                    for (int m = 0; m < dim; ++m) {
                        acc += at(i, j, m) * at(m, k, l);
                        acc += at(j, k, m) * at(m, i, l);
                        acc += at(k, i, m) * at(m, j, l);
                    }
                    if (!ScalarOps<S>::is_zero(acc)) {
                        if constexpr (ScalarOps<S>::exact) return false;
                        if (std::abs(ScalarOps<S>::to_double(acc)) > 1e-12) return false;
                    }
                }
    return true;
}

}  // namespace framegeo

#endif
