#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "kgbound/error.hpp"
#include "kgbound/potentials.hpp"

using namespace kgbound;

namespace {

const WoodsSaxon ws_ref{0.5, 3.0, 1.0, 15.0, 1.0, std::nullopt};

std::vector<PotentialSpec> reference_specs()
{
    return {Coulomb{0.2, 0.0},
            Mie{0.3, 1.5},
            KratzerFues{0.25, 1.0},
            NonCentralRadial{-0.2, 0.3},
            Hulthen{0.02, 0.01, 0.05, 1.0},
            ws_ref,
            PoschlTeller{2.0, 0.1, 0.5}};
}

} // namespace

TEST_CASE("coulomb mapping")
{
    auto const m = map_potential(Coulomb{0.3, 0.0}, 1.0, 0.9, 1);
    CHECK(m.params.c1 == 2.0);
    CHECK(m.params.c2 == 0.0);
    CHECK(m.params.c3 == 0.0);
    CHECK(m.params.lambda1 == doctest::Approx(0.19));
    CHECK(m.params.lambda2 == doctest::Approx(0.54));
    CHECK(m.params.lambda3 == doctest::Approx(1.91));
    CHECK(m.transform.kind == TransformKind::identity_r);
}

TEST_CASE("mie free-particle limit")
{
    auto const m = map_potential(Mie{0.0, 2.0}, 1.0, 0.5, 0);
    CHECK(m.params.lambda1 == doctest::Approx(0.75));
    CHECK(m.params.lambda2 == doctest::Approx(0.0));
    CHECK(m.params.lambda3 == doctest::Approx(0.0));
}

TEST_CASE("hulthen mapping")
{
    for (double e : {-0.3, 0.2, 0.5, 0.9}) {
        auto const m = map_potential(Hulthen{0.2, 0.0, 0.1, 1.0}, 1.0, e, 0);
        CHECK(m.params.c1 == 1.0);
        CHECK(m.params.c2 == -2.0);
        CHECK(m.params.c3 == -1.0);
        CHECK(m.params.lambda1 == doctest::Approx(-4.0));
        CHECK(m.params.lambda2 == doctest::Approx(-8.0 + 2.0 * e * 0.2 / 0.01));
    }
}

TEST_CASE("hulthen centrifugal approximation")
{
    CHECK(centrifugal_hulthen(1.0, 1.0) == doctest::Approx(0.9206735942077924).epsilon(1e-14));
    CHECK(std::abs(centrifugal_hulthen(0.01, 1.0) - 1.0) < 1e-4);
    for (double r : {1e-3, 1e-2}) {
        CHECK(centrifugal_hulthen(1e-3, r) * r * r == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("sinh centrifugal approximation")
{
    CHECK(centrifugal_sinh(1.0, 1.0) == doctest::Approx(0.7240616609663106).epsilon(1e-14));
    CHECK(centrifugal_sinh(1.0, 5.0) == doctest::Approx(1.816162094019017e-4).epsilon(1e-12));
    CHECK(centrifugal_sinh(1e-4, 1e-2) * 1e-4 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pekeris centrifugal form")
{
    WoodsSaxon w = ws_ref;
    w.pekeris = PekerisCoefficients{1.0, 0.0, 0.0};
    CHECK(centrifugal_pekeris(w, w.r_big) == doctest::Approx(1.0 / (15.0 * 15.0)));
    w.pekeris = PekerisCoefficients{0.0, 1.0, 0.0};
    CHECK(centrifugal_pekeris(w, w.r_big) == doctest::Approx(0.5 / (15.0 * 15.0)));
}

TEST_CASE("default pekeris coefficients match 1/r^2 to second order at R")
{
    auto const d = pekeris_defaults(ws_ref.a, ws_ref.r_big, ws_ref.q_def);
    WoodsSaxon w = ws_ref;
    w.pekeris = d;
    double const R = w.r_big;
    double const h = 1e-3;
    auto f = [&](double r) { return centrifugal_pekeris(w, r); };
    auto g = [](double r) { return 1.0 / (r * r); };
    CHECK(f(R) == doctest::Approx(g(R)).epsilon(1e-12));
    CHECK((f(R + h) - f(R - h)) / (2 * h) == doctest::Approx((g(R + h) - g(R - h)) / (2 * h)).epsilon(1e-6));
    CHECK((f(R + h) - 2 * f(R) + f(R - h)) / (h * h) ==
          doctest::Approx((g(R + h) - 2 * g(R) + g(R - h)) / (h * h)).epsilon(1e-5));
}

TEST_CASE("centrifugal approximations converge quadratically in the range parameter")
{
    double const r = 2.0;
    for (auto approx : {+[](double k, double x) { return centrifugal_hulthen(k, x); },
                        +[](double k, double x) { return centrifugal_sinh(k, x); }}) {
        double const e1 = std::abs(approx(0.1, r) * r * r - 1.0);
        double const e2 = std::abs(approx(0.05, r) * r * r - 1.0);
        CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.01));
    }
}

TEST_CASE("angular momentum shifts")
{
    double const e = 0.7;
    for (const PotentialSpec& spec : reference_specs()) {
        auto const base = map_potential(spec, 1.0, e, 0).params;
        auto const same = modified_parameters(base, spec, 1.0, e, 0);
        CHECK(same.lambda1 == base.lambda1);
        CHECK(same.lambda2 == base.lambda2);
        CHECK(same.lambda3 == base.lambda3);
    }

    PotentialSpec const h = Hulthen{0.02, 0.01, 0.05, 1.0};
    auto const hb = map_potential(h, 1.0, e, 0).params;
    auto const h1 = map_potential(h, 1.0, e, 1).params;
    CHECK(h1.lambda1 == doctest::Approx(hb.lambda1 + 2.0));
    CHECK(h1.lambda2 == doctest::Approx(hb.lambda2 + 2.0));
    CHECK(h1.lambda3 == doctest::Approx(hb.lambda3));

    PotentialSpec const pt = PoschlTeller{2.0, 0.1, 0.5};
    auto const pb = map_potential(pt, 1.0, e, 0).params;
    auto const p2 = map_potential(pt, 1.0, e, 2).params;
    CHECK(p2.lambda2 == doctest::Approx(pb.lambda2 - 6.0 / 4.0));
    CHECK(p2.lambda1 == doctest::Approx(pb.lambda1));
    CHECK(p2.lambda3 == doctest::Approx(pb.lambda3));

    auto const cb = map_potential(Coulomb{0.2, 0.0}, 1.0, e, 0).params;
    auto const c3 = map_potential(Coulomb{0.2, 0.0}, 1.0, e, 3).params;
    CHECK(c3.lambda3 == doctest::Approx(cb.lambda3 + 12.0));

    // The separation constant replaces l(l+1) outright.
    auto const n0 = map_potential(NonCentralRadial{-0.2, 0.3}, 1.0, e, 0).params;
    auto const n2 = map_potential(NonCentralRadial{-0.2, 0.3}, 1.0, e, 2).params;
    CHECK(n2.lambda3 == n0.lambda3);
}

TEST_CASE("map_potential equals modified_parameters on the l = 0 mapping")
{
    for (const PotentialSpec& spec : reference_specs()) {
        for (int ell : {1, 2, 3}) {
            auto const direct = map_potential(spec, 1.0, 0.6, ell).params;
            auto const via = modified_parameters(map_potential(spec, 1.0, 0.6, 0).params, spec, 1.0, 0.6, ell);
            CHECK(direct.lambda1 == doctest::Approx(via.lambda1));
            CHECK(direct.lambda2 == doctest::Approx(via.lambda2));
            CHECK(direct.lambda3 == doctest::Approx(via.lambda3));
        }
    }
}

TEST_CASE("transforms are monotone and map onto their stated domain")
{
    for (const PotentialSpec& spec : reference_specs()) {
        auto const t = make_transform(spec);
        double prev = NAN;
        int direction = 0;
        for (double r = 1e-4; r < 200.0; r *= 1.05) {
            SPoint const p = t.at(r);
            if (std::isinf(p.s)) {
                break;
            }
            CHECK(p.s > std::min(t.s_lo, t.s_hi));
            CHECK(p.s < std::max(t.s_lo, t.s_hi));
            CHECK(p.one_plus_c3s == doctest::Approx(1.0 + map_potential(spec, 1.0, 0.5, 0).params.c3 * p.s)
                                        .epsilon(1e-9)
                                        .scale(1.0));
            if (!std::isnan(prev)) {
                int const d = p.s > prev ? 1 : -1;
                CHECK(p.s != prev);
                if (direction == 0) {
                    direction = d;
                }
                CHECK(d == direction);
            }
            prev = p.s;
        }
    }
}

TEST_CASE("potential shapes")
{
    CHECK(vector_potential(Coulomb{0.2, 0.0}, 2.0) == doctest::Approx(-0.1));
    CHECK(scalar_potential(Coulomb{0.2, 0.0}, 2.0) == 0.0);
    CHECK(vector_potential(KratzerFues{0.25, 1.0}, 1.0) == doctest::Approx(0.0));
    CHECK(scalar_potential(KratzerFues{0.25, 1.0}, 2.0) == doctest::Approx(0.25 * 0.25));
    CHECK(vector_potential(Mie{0.3, 1.5}, 1.5) == doctest::Approx(-0.15));
    CHECK(vector_potential(ws_ref, 15.0) == doctest::Approx(-0.25));
    CHECK(scalar_potential(ws_ref, 15.0) == doctest::Approx(-1.5));
    CHECK(vector_potential(Hulthen{0.02, 0.01, 0.05, 1.0}, 1e3) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("continuum thresholds")
{
    auto const c = continuum_thresholds(Coulomb{0.2, 0.0}, 1.0);
    CHECK(c.first == doctest::Approx(-1.0));
    CHECK(c.second == doctest::Approx(1.0));
    auto const k = continuum_thresholds(KratzerFues{0.25, 1.0}, 1.0);
    CHECK(k.first == doctest::Approx(-1.0));
    CHECK(k.second == doctest::Approx(1.5));
}

TEST_CASE("validation")
{
    try {
        validate(Hulthen{0.02, 0.01, 0.05, 0.0}, 1.0);
        FAIL("q = 0 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_parameters);
        CHECK(std::string(e.what()).find("q != 0 is the deformation parameter") != std::string::npos);
    }
    auto code = [](const PotentialSpec& s, double m = 1.0) {
        try {
            validate(s, m);
        } catch (const Error& e) {
            return std::string(to_string(e.code()));
        }
        return std::string("ok");
    };
    CHECK(code(Coulomb{0.2, 0.1}) == "UnsupportedCoupling");
    CHECK(code(Mie{0.3, 0.0}) == "InvalidParameters");
    CHECK(code(PoschlTeller{2.0, -0.1, 0.5}) == "InvalidParameters");
    CHECK(code(WoodsSaxon{0.5, 3.0, 1.0, 15.0, -1.0, std::nullopt}) == "InvalidParameters");
    CHECK(code(Hulthen{0.02, 0.01, 0.05, 1.5}) == "InvalidParameters");
    CHECK(code(Coulomb{NAN, 0.0}) == "InvalidParameters");
    CHECK(code(Coulomb{0.2, 0.0}, 0.0) == "InvalidParameters");
    for (const PotentialSpec& spec : reference_specs()) {
        CHECK(code(spec) == "ok");
    }
}

TEST_CASE("names and approximation flags")
{
    CHECK(potential_name(Coulomb{}) == "coulomb");
    CHECK(potential_name(PoschlTeller{}) == "poschl_teller");
    CHECK_FALSE(uses_centrifugal_approximation(Mie{0.3, 1.5}));
    CHECK(uses_centrifugal_approximation(Hulthen{0.02, 0.01, 0.05, 1.0}));
    CHECK(uses_centrifugal_approximation(ws_ref));
    CHECK(uses_centrifugal_approximation(PoschlTeller{2.0, 0.1, 0.5}));
}
