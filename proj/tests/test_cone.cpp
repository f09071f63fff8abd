#include "doctest.h"
#include "optf/cone.hpp"

#include <cmath>

using namespace optf;

namespace {

double elem_norm(const Element &x) { return std::sqrt(trace_inner(x, x)); }

Element random_psd(const AlgebraPtr &a, Rng &rng) {
    Element g = gauss_element(a, rng);
    return jordan_product(g, g);
}

Element random_state(const AlgebraPtr &a, Rng &rng) {
    Element p = random_psd(a, rng);
    return (1.0 / trace_form(p)) * p;
}

}  // namespace

TEST_CASE("cone membership by spectral margin") {
    auto a = Algebra::complex_herm(2);
    ConeContext ctx{a};
    CHECK(cone_member(ctx, make_element(a, {1, 0, 0, 0})));
    CHECK(!cone_member(ctx, make_element(a, {1, -0.1, 0, 0})));

    Rng rng(31);
    for (auto &alg : {Algebra::real_sym(3), Algebra::complex_herm(3), Algebra::quat_herm(2), Algebra::spin(6)}) {
        ConeContext c2{alg};
        for (int t = 0; t < 30; ++t) {
            Element p = random_psd(alg, rng);
            double margin = 0;
            CHECK(cone_member(c2, p, &margin));
            CHECK(margin > -1e-9);
            Element q = p - 3.0 * unit_element(alg);
            Element shifted = q;  // strictly indefinite unless p >= 3
            if (trace_form(p) < 3 * alg->rank()) CHECK(!cone_member(c2, shifted));
        }
    }
}

TEST_CASE("cone membership refuses the exceptional family") {
    ConeContext ctx{Algebra::oct_herm3()};
    CHECK_THROWS_AS((void)cone_member(ctx, unit_element(ctx.alg)), std::domain_error);
}

TEST_CASE("cone order") {
    auto a = Algebra::complex_herm(2);
    ConeContext ctx{a};
    Element p = make_element(a, {1, 0, 0, 0});
    CHECK(cone_order(ctx, p, unit_element(a)));   // p <= 1
    CHECK(!cone_order(ctx, unit_element(a), p));  // 1 <= p fails
}

TEST_CASE("internality") {
    auto a = Algebra::complex_herm(3);
    ConeContext ctx{a};
    CHECK(is_internal(ctx, (1.0 / 3) * unit_element(a)));
    Element pure = make_element(a, {1, 0, 0, 0, 0, 0, 0, 0, 0});
    CHECK(!is_internal(ctx, pure));
    CHECK_THROWS_AS((void)is_internal(ctx, 2.0 * unit_element(a)), std::invalid_argument);
}

TEST_CASE("dagger pairs states with effects through the trace form") {
    Rng rng(32);
    auto a = Algebra::complex_herm(3);
    Element rho = random_state(a, rng), sigma = random_state(a, rng);
    EffectFunctional f = dagger(rho);
    CHECK(apply_effect(f, sigma) == doctest::Approx(trace_inner(rho, sigma)).epsilon(1e-12));
    CHECK(elem_norm(undagger(f) - rho) < 1e-14);

    EffectFunctional e = deterministic_effect(a);
    CHECK(apply_effect(e, sigma) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(apply_effect(e, rho) == doctest::Approx(trace_form(rho)).epsilon(1e-10));
}

TEST_CASE("self-duality certification") {
    for (auto &alg : {Algebra::real_sym(3), Algebra::complex_herm(3), Algebra::quat_herm(2), Algebra::spin(5)}) {
        ConeContext ctx{alg};
        auto rep = self_duality_check(ctx, 60, 5);
        CHECK(rep.pass);
        CHECK(rep.samples == 60);
    }

    // indefinite Riesz vector: claimed dual membership must fail with a witness
    auto a = Algebra::complex_herm(2);
    ConeContext ctx{a};
    Element bad = make_element(a, {1, -1, 0, 0});
    auto rep = self_duality_check(ctx, 10, 5, {bad});
    CHECK(!rep.pass);
    REQUIRE(!rep.witnesses.empty());
    CHECK(rep.tolerances.at("worst_margin") == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("linear maps: application, composition, adjoint") {
    Rng rng(33);
    auto a = Algebra::spin(5);  // non-trivial Gram
    LinearMap id = identity_map(a);
    Element x = gauss_element(a, rng), y = gauss_element(a, rng);
    CHECK(elem_norm(apply(id, x) - x) < 1e-14);

    LinearMap p = quadratic_rep_map(gauss_element(a, rng));
    CHECK(std::abs(trace_inner(apply(adjoint_map(p), y), x) - trace_inner(y, apply(p, x))) < 1e-9);

    auto c = Algebra::complex_herm(2);
    LinearMap q = quadratic_rep_map(gauss_element(c, rng));
    Element cx = gauss_element(c, rng), cy = gauss_element(c, rng);
    CHECK(std::abs(trace_inner(apply(adjoint_map(q), cy), cx) - trace_inner(cy, apply(q, cx))) < 1e-9);
    LinearMap qq = compose(q, q);
    CHECK(elem_norm(apply(qq, cx) - apply(q, apply(q, cx))) < 1e-10);
}

TEST_CASE("quadratic representation map matches the pointwise formula") {
    Rng rng(34);
    for (auto &alg : {Algebra::complex_herm(3), Algebra::real_sym(4), Algebra::quat_herm(2)}) {
        Element v = gauss_element(alg, rng), z = gauss_element(alg, rng);
        CHECK(elem_norm(apply(quadratic_rep_map(v), z) - quadratic_rep(v, z)) < 1e-10);
    }
}

TEST_CASE("homogeneity map: fixed transport on a qubit") {
    auto a = Algebra::complex_herm(2);
    Element tau = 0.5 * unit_element(a);
    Element rho = make_element(a, {0.75, 0.25, 0, 0});
    LinearMap g = homogeneity_map(tau, rho);
    CHECK(elem_norm(apply(g, tau) - rho) < 1e-10);
    // off-diagonal direction contracts by 2*sqrt(0.75*0.25) = sqrt(3)/2
    Element sx = make_element(a, {0, 0, std::sqrt(2.0), 0});
    Element out = apply(g, sx);
    CHECK(out.coords[2] == doctest::Approx(std::sqrt(3.0) / 2 * std::sqrt(2.0)).epsilon(1e-10));
    CHECK(std::abs(out.coords[0]) < 1e-12);
}

TEST_CASE("homogeneity map: transports tau to rho with exact inverse") {
    Rng rng(35);
    for (auto &alg : {Algebra::complex_herm(2), Algebra::complex_herm(3), Algebra::real_sym(3),
                      Algebra::quat_herm(2), Algebra::spin(5)}) {
        ConeContext ctx{alg};
        for (int t = 0; t < 20; ++t) {
            Element tau = random_state(alg, rng), rho = random_state(alg, rng);
            // mix toward the unit so both are safely internal
            tau = 0.7 * tau + (0.3 / alg->rank()) * unit_element(alg);
            rho = 0.7 * rho + (0.3 / alg->rank()) * unit_element(alg);
            REQUIRE(is_internal(ctx, tau));
            REQUIRE(is_internal(ctx, rho));
            LinearMap g = homogeneity_map(tau, rho);
            CHECK(elem_norm(apply(g, tau) - rho) < 1e-8 * (1 + elem_norm(rho)));
            LinearMap ginv = homogeneity_map(rho, tau);
            LinearMap prod = compose(ginv, g);
            Element x = gauss_element(alg, rng);
            CHECK(elem_norm(apply(prod, x) - x) < 1e-7 * (1 + elem_norm(x)));
            CHECK(mat_inverse(g.m).has_value());
        }
    }
    auto a = Algebra::complex_herm(2);
    Element pure = make_element(a, {1, 0, 0, 0});
    CHECK_THROWS_AS((void)homogeneity_map(pure, 0.5 * unit_element(a)), std::domain_error);
    CHECK_THROWS_AS((void)homogeneity_map(0.5 * unit_element(a), pure), std::domain_error);
}

TEST_CASE("pure-state automorphisms preserve the Jordan structure") {
    Rng rng(36);
    for (auto &alg : {Algebra::complex_herm(2), Algebra::complex_herm(4), Algebra::real_sym(3)}) {
        for (int t = 0; t < 15; ++t) {
            Element psi = spectral_decompose(gauss_element(alg, rng)).frame[0];
            Element phi = spectral_decompose(gauss_element(alg, rng)).frame[0];
            LinearMap u = pure_state_automorphism(psi, phi);
            CHECK(elem_norm(apply(u, psi) - phi) < 1e-8);
            CHECK(elem_norm(apply(u, unit_element(alg)) - unit_element(alg)) < 1e-8);
            Element x = gauss_element(alg, rng), y = gauss_element(alg, rng);
            Element lhs = apply(u, jordan_product(x, y));
            Element rhs = jordan_product(apply(u, x), apply(u, y));
            CHECK(elem_norm(lhs - rhs) < 1e-8 * (1 + elem_norm(x) * elem_norm(y)));
        }
        // identity case: psi to itself
        Element psi = spectral_decompose(gauss_element(alg, rng)).frame[0];
        LinearMap u = pure_state_automorphism(psi, psi);
        Element x = gauss_element(alg, rng);
        CHECK(elem_norm(apply(u, x) - x) < 1e-8);
    }
}
