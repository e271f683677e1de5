#ifndef FRAMEGEO_AUDIT_HPP
#define FRAMEGEO_AUDIT_HPP

#include <random>
#include <string>
#include <vector>

#include "framegeo/frame.hpp"

namespace framegeo {

/// Uniform double in [0, 1) built from raw generator bits, so audit
/// runs reproduce bit-identically across standard libraries.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

/// One random-audit instance: an orthonormal chart frame
/// A(x) = I + 0.3 q(x - p) with q a degree-<=2 polynomial matrix whose
/// coefficients lie in [-1, 1]. The row sums of |0.3 q(p)| stay below
/// 0.9, so A(p) is invertible with margin at the sample point.
struct AuditCase {
    FrameSpec spec;
    std::vector<double> point;
};

inline AuditCase make_audit_case(std::mt19937_64& rng, int dim = 3) {
    Chart chart;
    for (int i = 0; i < dim; ++i) chart.coord_names.push_back("u" + std::to_string(i + 1));

    std::vector<double> p(dim);
    for (int i = 0; i < dim; ++i) p[i] = uniform_range(rng, -3.0, 3.0);

    auto coefficient = [&]() {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", uniform_range(rng, -1.0, 1.0));
        return Expr::number(buf);
    };
    auto centered = [&](int v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", p[v]);
        return Expr::sub(Expr::coord(v, chart.coord_names[v]), Expr::number(buf));
    };

    FrameSpec spec;
    spec.mode = FrameSpec::Mode::ChartFrame;
    spec.chart = chart;
    spec.dim = dim;
    for (int i = 0; i < dim; ++i) {
        std::vector<Expr> row;
        for (int m = 0; m < dim; ++m) {
            // q_im = c0 + sum_v c_v u_v + sum_{v<=w} c_vw u_v u_w, u = x - p
            Expr q = coefficient();
            for (int v = 0; v < dim; ++v) q = Expr::add(q, Expr::mul(coefficient(), centered(v)));
            for (int v = 0; v < dim; ++v)
                for (int w = v; w < dim; ++w)
                    q = Expr::add(q, Expr::mul(coefficient(),
                                               Expr::mul(centered(v), centered(w))));
            Expr entry = Expr::mul(Expr::number("0.3"), q);
            if (i == m) entry = Expr::add(Expr::number("1"), entry);
            row.push_back(entry);
        }
        spec.frame.push_back(std::move(row));
    }
    return AuditCase{std::move(spec), std::move(p)};
}

}  // namespace framegeo

#endif
