#ifndef FRAMEGEO_CURVATURE_HPP
#define FRAMEGEO_CURVATURE_HPP

#include <vector>

#include "framegeo/frame.hpp"

namespace framegeo {

/// Connection and curvature data at one point, in frame components.
/// Conventions: nabla_{e_i} e_j = Gamma^k_{ij} e_k, R(e_i,e_j)e_k =
/// R^l_{kij} e_l, and the Ricci tensor contracts the first slot of the
/// vector pair: S(Y, Z) = trace of X -> R(X, Y)Z.
template <class S>
struct CurvaturePack {
    int dim = 0;
    std::vector<Jet<S>> gamma;   // [i][j][k]: Gamma^k_{ij}
    std::vector<Jet<S>> riem;    // [i][j][k][l]: component l of R(e_i,e_j)e_k
    std::vector<Jet<S>> riem_low;  // [i][j][k][l]: g(R(e_i,e_j)e_k, e_l)
    Mat<Jet<S>> ricci;           // S_ij
    Mat<Jet<S>> ricci_op;        // Q^i_j, g(Q X, Y) = S(X, Y)
    Jet<S> scalar;               // r

    const Jet<S>& Gamma(int i, int j, int k) const {
        return gamma[static_cast<std::size_t>((i * dim + j)) * dim + k];
    }
    const Jet<S>& R(int i, int j, int k, int l) const {
        return riem[(static_cast<std::size_t>((i * dim + j)) * dim + k) * dim + l];
    }
    const Jet<S>& R_low(int i, int j, int k, int l) const {
        return riem_low[(static_cast<std::size_t>((i * dim + j)) * dim + k) * dim + l];
    }
};

/// Koszul's formula in frame components:
/// 2 g(nabla_{e_i} e_j, e_k) = e_i(g_jk) + e_j(g_ik) - e_k(g_ij)
///   - g(e_i, [e_j, e_k]) - g(e_j, [e_i, e_k]) + g(e_k, [e_i, e_j]).
/// The derivative terms vanish identically for an orthonormal metric.
template <class S>
std::vector<Jet<S>> levi_civita(const FramePointData<S>& fd) {
    const int n = fd.dim;
    const Jet<S> zero = fd.zero_jet();
    const S half = ScalarOps<S>::from_ratio(1, 2);

    std::vector<Jet<S>> w(static_cast<std::size_t>(n) * n * n, zero);  // g(nabla_i e_j, e_k)
    auto wat = [&](int i, int j, int k) -> Jet<S>& {
        return w[static_cast<std::size_t>((i * n + j)) * n + k];
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                Jet<S> acc = fd.frame_d(fd.g(j, k), i) + fd.frame_d(fd.g(i, k), j) -
                             fd.frame_d(fd.g(i, j), k);
                for (int m = 0; m < n; ++m) {
                    acc = acc - fd.structure(j, k, m) * fd.g(i, m) -
                          fd.structure(i, k, m) * fd.g(j, m) +
                          fd.structure(i, j, m) * fd.g(k, m);
                }
                wat(i, j, k) = acc * half;
            }
        }
    }
    std::vector<Jet<S>> gamma(static_cast<std::size_t>(n) * n * n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Jet<S> acc = zero;
                for (int m = 0; m < n; ++m) acc = acc + wat(i, j, m) * fd.g_inv(m, k);
                gamma[static_cast<std::size_t>((i * n + j)) * n + k] = acc;
            }
    return gamma;
}

/// Curvature, Ricci, Ricci operator, and scalar curvature from the
/// connection coefficients:
/// R^l_{kij} = e_i(Gamma^l_{jk}) - e_j(Gamma^l_{ik})
///   + Gamma^m_{jk} Gamma^l_{im} - Gamma^m_{ik} Gamma^l_{jm}
///   - c^m_{ij} Gamma^l_{mk}.
template <class S>
CurvaturePack<S> curvature(const FramePointData<S>& fd, std::vector<Jet<S>> gamma) {
    const int n = fd.dim;
    const Jet<S> zero = fd.zero_jet();
    CurvaturePack<S> pack;
    pack.dim = n;
    pack.gamma = std::move(gamma);
    auto G = [&](int i, int j, int k) -> const Jet<S>& {
        return pack.gamma[static_cast<std::size_t>((i * n + j)) * n + k];
    };

    pack.riem.assign(static_cast<std::size_t>(n) * n * n * n, zero);
    pack.riem_low.assign(static_cast<std::size_t>(n) * n * n * n, zero);
    auto Rat4 = [&](std::vector<Jet<S>>& v, int i, int j, int k, int l) -> Jet<S>& {
        return v[(static_cast<std::size_t>((i * n + j)) * n + k) * n + l];
    };

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                    Jet<S> acc = fd.frame_d(G(j, k, l), i) - fd.frame_d(G(i, k, l), j);
                    for (int m = 0; m < n; ++m) {
                        acc = acc + G(j, k, m) * G(i, m, l) - G(i, k, m) * G(j, m, l) -
                              fd.structure(i, j, m) * G(m, k, l);
                    }
                    Rat4(pack.riem, i, j, k, l) = acc;
                }
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Jet<S> acc = zero;
                    for (int m = 0; m < n; ++m)
                        acc = acc + pack.R(i, j, k, m) * fd.g(m, l);
                    Rat4(pack.riem_low, i, j, k, l) = acc;
                }

    pack.ricci = Mat<Jet<S>>(n, zero);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Jet<S> acc = zero;
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) acc = acc + fd.g_inv(i, l) * pack.R_low(i, j, k, l);
            pack.ricci(j, k) = acc;
        }

    pack.ricci_op = Mat<Jet<S>>(n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet<S> acc = zero;
            for (int k = 0; k < n; ++k) acc = acc + pack.ricci(j, k) * fd.g_inv(k, i);
            pack.ricci_op(i, j) = acc;
        }

    pack.scalar = zero;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            pack.scalar = pack.scalar + fd.g_inv(j, k) * pack.ricci(j, k);
    return pack;
}

template <class S>
CurvaturePack<S> curvature_pack(const FramePointData<S>& fd) {
    return curvature(fd, levi_civita(fd));
}

/// Tensor of frame components as jets; slot variance recorded per slot
/// (true = contravariant). Storage is row-major over the slots.
template <class S>
struct Tensor {
    int dim = 0;
    std::vector<bool> upper;
    std::vector<Jet<S>> comp;

    Tensor() = default;
    Tensor(int dim, std::vector<bool> variance, const Jet<S>& fill)
        : dim(dim), upper(std::move(variance)) {
        std::size_t sz = 1;
        for (std::size_t s = 0; s < upper.size(); ++s) sz *= static_cast<std::size_t>(dim);
        comp.assign(sz, fill);
    }

    int rank() const { return static_cast<int>(upper.size()); }

    std::size_t flat(const std::vector<int>& idx) const {
        std::size_t f = 0;
        for (int v : idx) f = f * static_cast<std::size_t>(dim) + static_cast<std::size_t>(v);
        return f;
    }
    Jet<S>& at(const std::vector<int>& idx) { return comp[flat(idx)]; }
    const Jet<S>& at(const std::vector<int>& idx) const { return comp[flat(idx)]; }
};

/// Covariant derivative: adds one covariant slot in front, so
/// (nabla T)(e_a; ...) = (nabla_{e_a} T)(...). Upper slots contract
/// with +Gamma, lower slots with -Gamma.
template <class S>
Tensor<S> covariant_derivative(const Tensor<S>& t, const FramePointData<S>& fd,
                               const CurvaturePack<S>& pack) {
    const int n = fd.dim;
    std::vector<bool> variance;
    variance.push_back(false);
    for (bool u : t.upper) variance.push_back(u);
    Tensor<S> result(n, variance, fd.zero_jet());

    const int rank = t.rank();
    std::vector<int> idx(rank, 0);
    while (true) {
        for (int a = 0; a < n; ++a) {
            Jet<S> acc = fd.frame_d(t.at(idx), a);
            for (int s = 0; s < rank; ++s) {
                std::vector<int> jdx = idx;
                for (int m = 0; m < n; ++m) {
                    jdx[s] = m;
                    if (t.upper[s])
                        acc = acc + pack.Gamma(a, m, idx[s]) * t.at(jdx);
                    else
                        acc = acc - pack.Gamma(a, idx[s], m) * t.at(jdx);
                }
            }
            std::vector<int> out;
            out.reserve(rank + 1);
            out.push_back(a);
            for (int v : idx) out.push_back(v);
            result.at(out) = acc;
        }
        // advance the multi-slot index
        int s = rank - 1;
        while (s >= 0) {
            if (++idx[s] < n) break;
            idx[s] = 0;
            --s;
        }
        if (s < 0) break;
    }
    return result;
}

/// The metric as a (0,2) tensor of jets.
template <class S>
Tensor<S> metric_tensor(const FramePointData<S>& fd) {
    Tensor<S> t(fd.dim, {false, false}, fd.zero_jet());
    for (int i = 0; i < fd.dim; ++i)
        for (int j = 0; j < fd.dim; ++j) t.at({i, j}) = fd.g(i, j);
    return t;
}

/// The Ricci tensor as a (0,2) tensor of jets.
template <class S>
Tensor<S> ricci_tensor(const CurvaturePack<S>& pack, const FramePointData<S>& fd) {
    Tensor<S> t(fd.dim, {false, false}, fd.zero_jet());
    for (int i = 0; i < fd.dim; ++i)
        for (int j = 0; j < fd.dim; ++j) t.at({i, j}) = pack.ricci(i, j);
    return t;
}

/// The Ricci operator as a (1,1) tensor (first slot contravariant).
template <class S>
Tensor<S> ricci_operator_tensor(const CurvaturePack<S>& pack, const FramePointData<S>& fd) {
    Tensor<S> t(fd.dim, {true, false}, fd.zero_jet());
    for (int i = 0; i < fd.dim; ++i)
        for (int j = 0; j < fd.dim; ++j) t.at({i, j}) = pack.ricci_op(i, j);
    return t;
}

}  // namespace framegeo

#endif
