#ifndef FRAMEGEO_TESTS_FIXTURES_HPP
#define FRAMEGEO_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "framegeo/contact.hpp"
#include "framegeo/frame.hpp"

// Hand-built copies of the bundled manifolds. Unit tests construct
// these directly so that the spec-file loader can be cross-checked
// against them instead of being trusted.
namespace fixtures {

inline framegeo::Chart chart_xyz(bool positive_z) {
    framegeo::Chart c;
    c.coord_names = {"x", "y", "z"};
    if (positive_z) c.constraints.push_back(framegeo::parse_constraint("z > 0", c));
    return c;
}

inline framegeo::FrameSpec frame_from_rows(framegeo::Chart chart,
                                           const std::vector<std::vector<std::string>>& rows) {
    framegeo::FrameSpec spec;
    spec.mode = framegeo::FrameSpec::Mode::ChartFrame;
    spec.chart = chart;
    spec.dim = chart.dim();
    for (const auto& row : rows) {
        std::vector<framegeo::Expr> exprs;
        for (const auto& text : row) exprs.push_back(framegeo::parse(text, spec.chart));
        spec.frame.push_back(std::move(exprs));
    }
    return spec;
}

// frame z d/dx, z d/dy, -z d/dz on z > 0
inline framegeo::FrameSpec hyperbolic_kenmotsu_frame() {
    return frame_from_rows(chart_xyz(true), {{"z", "0", "0"}, {"0", "z", "0"}, {"0", "0", "-z"}});
}

inline framegeo::FrameSpec flat_frame() {
    return frame_from_rows(chart_xyz(false), {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
}

// frame z d/dx, z d/dy, z d/dz on z > 0 (upper half space)
inline framegeo::FrameSpec upper_half_space_frame() {
    return frame_from_rows(chart_xyz(true), {{"z", "0", "0"}, {"0", "z", "0"}, {"0", "0", "z"}});
}

// left-invariant frame on the 3-sphere: [e1,e2] = 2e3 and cyclic
inline framegeo::FrameSpec round_sphere_frame() {
    framegeo::FrameSpec spec;
    spec.mode = framegeo::FrameSpec::Mode::StructureConstants;
    spec.dim = 3;
    framegeo::Chart empty;
    spec.chart = empty;
    framegeo::Expr zero = framegeo::Expr::number("0");
    spec.structure.assign(27, zero);
    auto set = [&](int i, int j, int k, long long v) {
        spec.structure_at(i, j, k) = framegeo::Expr::rational(v, 1);
        spec.structure_at(j, i, k) = framegeo::Expr::rational(-v, 1);
    };
    set(0, 1, 2, 2);
    set(1, 2, 0, 2);
    set(2, 0, 1, 2);
    return spec;
}

// warped product frame: exp(-t) h d/dx, exp(-t) h d/dy, d/dt with
// h = 1 + (x^2 + y^2)/4
inline framegeo::FrameSpec warped_kenmotsu_frame() {
    framegeo::Chart c;
    c.coord_names = {"x", "y", "t"};
    std::string h = "exp(-t)*(1 + (x^2 + y^2)/4)";
    return frame_from_rows(c, {{h, "0", "0"}, {"0", h, "0"}, {"0", "0", "1"}});
}

// phi rotating e1 -> -e2, e2 -> e1, xi = e3; shared by all builtins
inline framegeo::ContactSpec standard_contact(const framegeo::Chart& chart) {
    framegeo::ContactSpec cs;
    auto e = [&](const std::string& t) { return framegeo::parse(t, chart); };
    cs.phi = {{e("0"), e("1"), e("0")}, {e("-1"), e("0"), e("0")}, {e("0"), e("0"), e("0")}};
    cs.xi = {e("0"), e("0"), e("1")};
    return cs;
}

}  // namespace fixtures

#endif
