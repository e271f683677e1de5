#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "framegeo/audit.hpp"
#include "framegeo/contact.hpp"
#include "support/fixtures.hpp"

using namespace framegeo;

namespace {

template <class S>
struct Setup {
    FramePointData<S> fd;
    CurvaturePack<S> pack;
    ContactStructure<S> cs;
};

template <class S>
Setup<S> setup(const FrameSpec& spec, const ContactSpec& contact, const std::vector<S>& p,
               int degree = 4) {
    Setup<S> s{evaluate_frame<S>(spec, p, degree), {}, {}};
    s.pack = curvature_pack(s.fd);
    s.cs = evaluate_contact(contact, s.fd);
    return s;
}

std::vector<Rational> rat(std::initializer_list<long long> xs) {
    std::vector<Rational> p;
    for (long long x : xs) p.push_back(Rational(x));
    return p;
}

}  // namespace

TEST_CASE("almost-contact axioms hold exactly on the scaled frame") {
    FrameSpec spec = fixtures::hyperbolic_kenmotsu_frame();
    ContactSpec contact = fixtures::standard_contact(spec.chart);
    auto s = setup<Rational>(spec, contact, rat({1, 1, 1}));
    auto d = check_almost_contact(s.cs, s.fd);
    CHECK(d.phi_square == Rational(0));
    CHECK(d.eta_unit == Rational(0));
    CHECK(d.phi_xi == Rational(0));
    CHECK(d.eta_phi == Rational(0));
    CHECK(d.compatibility == Rational(0));

    // spot examples: g(phi e1, phi e2) = g(-e2, e1) = 0 = g(e1,e2)
    CHECK(s.cs.phi(1, 0).value() == Rational(-1));
    CHECK(s.cs.phi(0, 1).value() == Rational(1));
    CHECK(s.cs.eta[2].value() == Rational(1));
}

TEST_CASE("a degenerate phi correctly fails the square axiom") {
    FrameSpec spec = fixtures::flat_frame();
    ContactSpec contact = fixtures::standard_contact(spec.chart);
    for (auto& row : contact.phi)
        for (auto& e : row) e = Expr::number("0");
    auto s = setup<double>(spec, contact, {0.1, 0.2, 0.3});
    auto d = check_almost_contact(s.cs, s.fd);
    // phi^2 + I - eta (x) xi = I - eta (x) xi, max component 1
    CHECK(d.phi_square == 1.0);
}

TEST_CASE("the defining Kenmotsu conditions hold exactly on the scaled frame") {
    FrameSpec spec = fixtures::hyperbolic_kenmotsu_frame();
    ContactSpec contact = fixtures::standard_contact(spec.chart);
    auto s = setup<Rational>(spec, contact, rat({2, -1, 3}));
    auto d = check_kenmotsu(s.cs, s.fd, s.pack);
    CHECK(d.nabla_phi == Rational(0));
    CHECK(d.nabla_xi == Rational(0));
    CHECK(d.nabla_eta == Rational(0));
}

TEST_CASE("the round sphere is not Kenmotsu") {
    FrameSpec spec = fixtures::round_sphere_frame();
    Chart empty;
    ContactSpec contact = fixtures::standard_contact(empty);
    auto s = setup<Rational>(spec, contact, rat({0, 0, 0}));
    auto d = check_kenmotsu(s.cs, s.fd, s.pack);
    // nabla_{e1} xi = -e2 while the Kenmotsu form demands e1
    CHECK(d.nabla_xi >= Rational(1, 2));
    CHECK(d.nabla_xi == Rational(1));
}

TEST_CASE("flat space is not Kenmotsu") {
    FrameSpec spec = fixtures::flat_frame();
    ContactSpec contact = fixtures::standard_contact(spec.chart);
    auto s = setup<Rational>(spec, contact, rat({0, 0, 0}));
    auto d = check_kenmotsu(s.cs, s.fd, s.pack);
    // nabla xi = 0, so the defect is max |X - eta(X) xi| = 1
    CHECK(d.nabla_xi == Rational(1));
}

TEST_CASE("curvature consequences hold on the scaled frame") {
    FrameSpec spec = fixtures::hyperbolic_kenmotsu_frame();
    ContactSpec contact = fixtures::standard_contact(spec.chart);
    auto s = setup<Rational>(spec, contact, rat({1, 1, 2}));
    auto d = check_kenmotsu_curvature(s.cs, s.pack, s.fd);
    CHECK(d.r_xy_xi == Rational(0));
    CHECK(d.r_xi_x_y == Rational(0));
    CHECK(d.r_xi_x_xi == Rational(0));
    CHECK(d.ricci_xi == Rational(0));

    // S(e3,e3) = -2 = -(3-1) eta(e3)
    CHECK(s.pack.ricci(2, 2).value() == Rational(-2));
}

TEST_CASE("flat space fails the curvature consequences") {
    FrameSpec spec = fixtures::flat_frame();
    ContactSpec contact = fixtures::standard_contact(spec.chart);
    auto s = setup<Rational>(spec, contact, rat({0, 0, 0}));
    auto d = check_kenmotsu_curvature(s.cs, s.pack, s.fd);
    // R = 0 but the model value eta(X)Y - eta(Y)X has unit components
    CHECK(d.r_xy_xi == Rational(1));
}

TEST_CASE("closed 3D forms at the worked scalar curvature") {
    FrameSpec spec = fixtures::hyperbolic_kenmotsu_frame();
    ContactSpec contact = fixtures::standard_contact(spec.chart);
    auto s = setup<Rational>(spec, contact, rat({1, 1, 1}));
    auto d = check_3d_closed_forms(s.cs, s.pack, s.fd);
    // with r = -6 the Ricci form gives S = -2g and the curvature form
    // gives R(X,Y)Z = -[g(Y,Z)X - g(X,Z)Y]
    CHECK(d.curvature_closed_form == Rational(0));
    CHECK(d.ricci_closed_form == Rational(0));
}

TEST_CASE("warped frame passes the full Kenmotsu suite in float mode") {
    FrameSpec spec = fixtures::warped_kenmotsu_frame();
    ContactSpec contact = fixtures::standard_contact(spec.chart);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> p{uniform_range(rng, -3, 3), uniform_range(rng, -3, 3),
                              uniform_range(rng, -3, 3)};
        auto s = setup<double>(spec, contact, p);
        CHECK(check_almost_contact(s.cs, s.fd).max_all() <= 1e-9);
        CHECK(check_kenmotsu(s.cs, s.fd, s.pack).max_all() <= 1e-9);
        CHECK(check_kenmotsu_curvature(s.cs, s.pack, s.fd).max_all() <= 1e-8);
        CHECK(check_3d_closed_forms(s.cs, s.pack, s.fd).max_all() <= 1e-8);

        // scalar curvature r = 2 exp(-2t) - 6 from the warped-product oracle
        double expected_r = 2.0 * std::exp(-2.0 * p[2]) - 6.0;
        CHECK_THAT(s.pack.scalar.value(),
                   Catch::Matchers::WithinAbs(expected_r, 1e-8 * (1 + std::abs(expected_r))));
    }
}

TEST_CASE("consequence chain: small nabla_phi forces small nabla_xi and nabla_eta") {
    // Kenmotsu-passing inputs keep the consequences within a small
    // multiple of the defining defect.
    std::mt19937_64 rng(6);
    for (const char* which : {"scaled", "warped"}) {
        FrameSpec spec = std::string(which) == "scaled" ? fixtures::hyperbolic_kenmotsu_frame()
                                                        : fixtures::warped_kenmotsu_frame();
        ContactSpec contact = fixtures::standard_contact(spec.chart);
        std::vector<double> p{uniform_range(rng, -2, 2), uniform_range(rng, -2, 2),
                              uniform_range(rng, 0.5, 2.5)};
        auto s = setup<double>(spec, contact, p);
        auto d = check_kenmotsu(s.cs, s.fd, s.pack);
        double c = 10.0;
        double tol = std::max(d.nabla_phi, 1e-12);
        CHECK(d.nabla_xi <= c * tol);
        CHECK(d.nabla_eta <= c * tol);
    }
}

TEST_CASE("closed-form checks demand dimension 3") {
    // a 2D chart frame
    Chart c2;
    c2.coord_names = {"x", "y"};
    FrameSpec spec;
    spec.mode = FrameSpec::Mode::ChartFrame;
    spec.chart = c2;
    spec.dim = 2;
    spec.frame = {{parse("1", c2), parse("0", c2)}, {parse("0", c2), parse("1", c2)}};
    ContactSpec contact;
    contact.phi = {{parse("0", c2), parse("0", c2)}, {parse("0", c2), parse("0", c2)}};
    contact.xi = {parse("0", c2), parse("1", c2)};
    auto fd = evaluate_frame<double>(spec, {0.0, 0.0}, 3);
    auto pack = curvature_pack(fd);
    auto cs = evaluate_contact(contact, fd);
    CHECK_THROWS_AS(check_3d_closed_forms(cs, pack, fd), DimensionMismatch);
}
