#ifndef FRAMEGEO_TESTS_KOSZUL_ORACLE_HPP
#define FRAMEGEO_TESTS_KOSZUL_ORACLE_HPP

#include <vector>

#include "framegeo/frame.hpp"
#include "framegeo/linalg.hpp"
#include "support/finite_diff.hpp"

// Brute-force Koszul oracle for orthonormal chart frames, independent
// of the jet kernel: brackets come from central finite differences of
// the frame coefficient functions, and the connection from
// 2 Gamma^k_{ij} = c^k_{ij} - c^i_{jk} - c^j_{ik}.
namespace koszul_oracle {

struct Connection {
    // [i][j][k] = Gamma^k_{ij}
    std::vector<double> gamma;
    std::vector<double> c;  // [i][j][k]
    int dim;
    double at(int i, int j, int k) const { return gamma[(i * dim + j) * dim + k]; }
    double cat(int i, int j, int k) const { return c[(i * dim + j) * dim + k]; }
};

inline Connection compute(const framegeo::FrameSpec& spec, const std::vector<double>& p,
                          double h = 1e-5) {
    const int n = spec.dim;
    auto coeff = [&](int i, int m, const std::vector<double>& q) {
        return spec.frame[i][m].eval_value<double>(q);
    };

    // bracket components in chart coordinates
    std::vector<double> bracket(n * n * n, 0.0);  // [i][j][m]
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) {
                double acc = 0.0;
                for (int nn = 0; nn < n; ++nn) {
                    fdiff::Fn aj = [&](const std::vector<double>& q) { return coeff(j, m, q); };
                    fdiff::Fn ai = [&](const std::vector<double>& q) { return coeff(i, m, q); };
                    acc += coeff(i, nn, p) * fdiff::partial(aj, p, nn, h) -
                           coeff(j, nn, p) * fdiff::partial(ai, p, nn, h);
                }
                bracket[(i * n + j) * n + m] = acc;
            }

    framegeo::Mat<double> a(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < n; ++m) a(i, m) = coeff(i, m, p);
    framegeo::Mat<double> a_inv = framegeo::invert(a, 1.0);

    Connection out;
    out.dim = n;
    out.c.assign(n * n * n, 0.0);
    out.gamma.assign(n * n * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int m = 0; m < n; ++m) acc += bracket[(i * n + j) * n + m] * a_inv(m, k);
                out.c[(i * n + j) * n + k] = acc;
            }
    // 2 g(nabla_i e_j, e_k) = -c^i_{jk} - c^j_{ik} + c^k_{ij} for an
    // orthonormal frame, with c^k_{ij} stored as cat(i, j, k)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out.gamma[(i * n + j) * n + k] =
                    0.5 * (out.cat(i, j, k) - out.cat(j, k, i) - out.cat(i, k, j));
    return out;
}

}  // namespace koszul_oracle

#endif
