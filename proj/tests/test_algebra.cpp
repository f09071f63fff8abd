#include "doctest.h"
#include "optf/algebra.hpp"

#include <array>
#include <cmath>

using namespace optf;

namespace {

const double SQ2 = std::sqrt(2.0);

// Test-local coordinate conversions, written straight from the documented
// conventions rather than calling the library converters, so products can be
// cross-checked through an independent route.

CMat chm_to_matrix(int r, const std::vector<double> &c) {
    CMat x(r, r);
    int k = 0;
    for (int i = 0; i < r; ++i) x(i, i) = c[k++];
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            double re = c[k++] / SQ2, im = c[k++] / SQ2;
            x(i, j) = cplx(re, im);
            x(j, i) = cplx(re, -im);
        }
    return x;
}

std::vector<double> chm_from_matrix(const CMat &x) {
    int r = x.rows;
    std::vector<double> c;
    for (int i = 0; i < r; ++i) c.push_back(x(i, i).real());
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            c.push_back(SQ2 * x(i, j).real());
            c.push_back(SQ2 * x(i, j).imag());
        }
    return c;
}

Mat rsm_to_matrix(int r, const std::vector<double> &c) {
    Mat x(r, r);
    int k = 0;
    for (int i = 0; i < r; ++i) x(i, i) = c[k++];
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            double v = c[k++] / SQ2;
            x(i, j) = v;
            x(j, i) = v;
        }
    return x;
}

std::vector<double> rsm_from_matrix(const Mat &x) {
    int r = x.rows;
    std::vector<double> c;
    for (int i = 0; i < r; ++i) c.push_back(x(i, i));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) c.push_back(SQ2 * x(i, j));
    return c;
}

double elem_norm(const Element &x) { return std::sqrt(trace_inner(x, x)); }

void check_axioms(const AlgebraPtr &a, int pairs, Rng &rng) {
    for (int t = 0; t < pairs; ++t) {
        Element x = gauss_element(a, rng), y = gauss_element(a, rng);
        double scale = 1 + elem_norm(x) + elem_norm(y);
        double tol = 1e-9 * scale * scale * scale;

        Element xy = jordan_product(x, y), yx = jordan_product(y, x);
        CHECK(elem_norm(xy - yx) < tol);

        Element x2 = jordan_product(x, x);
        Element lhs = jordan_product(x, jordan_product(x2, y));
        Element rhs = jordan_product(x2, jordan_product(x, y));
        CHECK(elem_norm(lhs - rhs) < tol);

        CHECK(elem_norm(jordan_product(unit_element(a), x) - x) < tol);

        Element z = gauss_element(a, rng);
        CHECK(trace_inner(xy, z) - trace_inner(y, jordan_product(x, z)) < tol);
        CHECK(std::abs(trace_inner(x, y) - trace_form(jordan_product(x, y))) < tol);
    }
}

void check_spectral(const AlgebraPtr &a, int cases, Rng &rng) {
    for (int t = 0; t < cases; ++t) {
        Element x = gauss_element(a, rng);
        auto sd = spectral_decompose(x);
        REQUIRE(static_cast<int>(sd.frame.size()) == a->rank());
        REQUIRE(sd.eigenvalues.size() == sd.frame.size());

        Element acc = zero_element(a);
        Element psum = zero_element(a);
        for (size_t i = 0; i < sd.frame.size(); ++i) {
            acc = acc + sd.eigenvalues[i] * sd.frame[i];
            psum = psum + sd.frame[i];
            const Element &p = sd.frame[i];
            CHECK(elem_norm(jordan_product(p, p) - p) < 1e-8);
            CHECK(trace_form(p) == doctest::Approx(1.0).epsilon(1e-7));
            for (size_t j = i + 1; j < sd.frame.size(); ++j)
                CHECK(elem_norm(jordan_product(p, sd.frame[j])) < 1e-8);
            if (i + 1 < sd.frame.size()) CHECK(sd.eigenvalues[i] >= sd.eigenvalues[i + 1] - 1e-12);
        }
        CHECK(elem_norm(acc - x) < 1e-8 * (1 + elem_norm(x)));
        CHECK(elem_norm(psum - unit_element(a)) < 1e-8);
    }
}

}  // namespace

TEST_CASE("rank and dimension per family") {
    for (int r = 1; r <= 8; ++r) {
        CHECK(Algebra::real_sym(r)->rank() == r);
        CHECK(Algebra::real_sym(r)->dim() == r * (r + 1) / 2);
        CHECK(Algebra::complex_herm(r)->rank() == r);
        CHECK(Algebra::complex_herm(r)->dim() == r * r);
        CHECK(Algebra::quat_herm(r)->rank() == r);
        CHECK(Algebra::quat_herm(r)->dim() == r * (2 * r - 1));
    }
    for (int d = 2; d <= 12; ++d) {
        CHECK(Algebra::spin(d)->rank() == 2);
        CHECK(Algebra::spin(d)->dim() == d);
    }
    CHECK(Algebra::oct_herm3()->rank() == 3);
    CHECK(Algebra::oct_herm3()->dim() == 27);

    auto ds = Algebra::direct_sum({Algebra::complex_herm(2), Algebra::spin(5), Algebra::real_sym(3)});
    CHECK(ds->rank() == 2 + 2 + 3);
    CHECK(ds->dim() == 4 + 5 + 6);
}

TEST_CASE("complex family: product, trace, quadratic rep against matrix arithmetic") {
    Rng rng(21);
    for (int r : {1, 2, 3, 4}) {
        auto a = Algebra::complex_herm(r);
        for (int t = 0; t < 25; ++t) {
            Element x = gauss_element(a, rng), y = gauss_element(a, rng), z = gauss_element(a, rng);
            CMat xm = chm_to_matrix(r, x.coords), ym = chm_to_matrix(r, y.coords), zm = chm_to_matrix(r, z.coords);

            CMat prod = 0.5 * (xm * ym + ym * xm);
            auto want = chm_from_matrix(prod);
            auto got = jordan_product(x, y).coords;
            for (size_t k = 0; k < want.size(); ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-10));

            CHECK(trace_form(x) == doctest::Approx(trace(xm).real()).epsilon(1e-10));
            CHECK(trace_inner(x, y) == doctest::Approx(trace(xm * ym).real()).epsilon(1e-9));

            CMat pyz = ym * zm * ym;
            auto wantp = chm_from_matrix(pyz);
            auto gotp = quadratic_rep(y, z).coords;
            for (size_t k = 0; k < wantp.size(); ++k) CHECK(gotp[k] == doctest::Approx(wantp[k]).epsilon(1e-9));
        }
    }
}

TEST_CASE("complex family: Pauli fixed points") {
    auto a = Algebra::complex_herm(2);
    Element px = make_element(a, {0, 0, SQ2, 0});       // sigma_x
    Element py = make_element(a, {0, 0, 0, -SQ2});      // sigma_y (entry (0,1) = -i)
    Element pz = make_element(a, {1, -1, 0, 0});        // sigma_z
    CHECK(elem_norm(jordan_product(px, py)) < 1e-14);
    CHECK(elem_norm(jordan_product(px, px) - unit_element(a)) < 1e-14);
    // P_x(z) = x z x = -z for anticommuting Paulis
    CHECK(elem_norm(quadratic_rep(px, pz) + pz) < 1e-13);
}

TEST_CASE("real family: product and quadratic rep against matrix arithmetic") {
    Rng rng(22);
    for (int r : {1, 2, 3, 5}) {
        auto a = Algebra::real_sym(r);
        for (int t = 0; t < 25; ++t) {
            Element x = gauss_element(a, rng), y = gauss_element(a, rng), z = gauss_element(a, rng);
            Mat xm = rsm_to_matrix(r, x.coords), ym = rsm_to_matrix(r, y.coords), zm = rsm_to_matrix(r, z.coords);
            auto want = rsm_from_matrix(0.5 * (xm * ym + ym * xm));
            auto got = jordan_product(x, y).coords;
            for (size_t k = 0; k < want.size(); ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-10));
            auto wantp = rsm_from_matrix(ym * zm * ym);
            auto gotp = quadratic_rep(y, z).coords;
            for (size_t k = 0; k < wantp.size(); ++k) CHECK(gotp[k] == doctest::Approx(wantp[k]).epsilon(1e-9));
            CHECK(trace_inner(x, y) == doctest::Approx(trace(xm * ym)).epsilon(1e-9));
        }
    }
}

TEST_CASE("spin factor: closed forms") {
    auto a = Algebra::spin(5);
    Element x = make_element(a, {2, 1, 0, 0, 0});
    CHECK(trace_form(x) == doctest::Approx(4.0));

    Element x2 = jordan_product(x, x);  // (t^2 + |v|^2, 2 t v)
    CHECK(x2.coords[0] == doctest::Approx(5.0));
    CHECK(x2.coords[1] == doctest::Approx(4.0));
    CHECK(x2.coords[2] == doctest::Approx(0.0));

    auto sd = spectral_decompose(x);
    CHECK(sd.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(sd.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(sd.frame[0].coords[0] == doctest::Approx(0.5));
    CHECK(sd.frame[0].coords[1] == doctest::Approx(0.5));
    CHECK(sd.frame[1].coords[1] == doctest::Approx(-0.5));

    // vector part zero: degenerate pair, frame still valid
    Element u = make_element(a, {3, 0, 0, 0, 0});
    auto sdu = spectral_decompose(u);
    CHECK(sdu.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(sdu.eigenvalues[1] == doctest::Approx(3.0));
    CHECK(elem_norm(sdu.frame[0] + sdu.frame[1] - unit_element(a)) < 1e-12);

    CHECK(trace_inner(x, x) == doctest::Approx(2 * (4 + 1)));
}

TEST_CASE("quaternionic family: fixed two-by-two spectrum") {
    auto a = Algebra::quat_herm(2);
    // X = [[1, j], [-j, 2]] entrywise quaternionic; eigenvalues (3 +- sqrt(5))/2
    Element x = make_element(a, {1, 2, 0, 0, SQ2, 0});
    CHECK(trace_form(x) == doctest::Approx(3.0));
    auto sd = spectral_decompose(x);
    CHECK(sd.eigenvalues[0] == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-10));
    CHECK(sd.eigenvalues[1] == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-10));
    CHECK(elem_norm(sd.frame[0] + sd.frame[1] - unit_element(a)) < 1e-10);
}

TEST_CASE("octonion arithmetic: composition algebra properties") {
    Rng rng(23);
    // imaginary units square to -1 and anticommute
    for (int u = 1; u < 8; ++u) {
        std::array<double, 8> eu{};
        eu[u] = 1;
        auto sq = oct_mul(eu, eu);
        CHECK(sq[0] == doctest::Approx(-1.0));
        for (int k = 1; k < 8; ++k) CHECK(sq[k] == doctest::Approx(0.0));
        for (int v = u + 1; v < 8; ++v) {
            std::array<double, 8> ev{};
            ev[v] = 1;
            auto uv = oct_mul(eu, ev), vu = oct_mul(ev, eu);
            for (int k = 0; k < 8; ++k) CHECK(uv[k] == doctest::Approx(-vu[k]));
        }
    }
    // multiplicative norm and alternativity on random pairs
    for (int t = 0; t < 50; ++t) {
        std::array<double, 8> p, q;
        for (int k = 0; k < 8; ++k) {
            p[k] = rng.gauss();
            q[k] = rng.gauss();
        }
        auto pq = oct_mul(p, q);
        double np = 0, nq = 0, npq = 0;
        for (int k = 0; k < 8; ++k) {
            np += p[k] * p[k];
            nq += q[k] * q[k];
            npq += pq[k] * pq[k];
        }
        CHECK(npq == doctest::Approx(np * nq).epsilon(1e-10));
        auto lhs = oct_mul(p, oct_mul(p, q));
        auto rhs = oct_mul(oct_mul(p, p), q);
        for (int k = 0; k < 8; ++k) CHECK(lhs[k] == doctest::Approx(rhs[k]).epsilon(1e-10));
    }
}

TEST_CASE("Jordan axioms hold across every family") {
    Rng rng(24);
    std::vector<AlgebraPtr> algs = {
        Algebra::real_sym(1),  Algebra::real_sym(3),    Algebra::real_sym(5),
        Algebra::complex_herm(1), Algebra::complex_herm(2), Algebra::complex_herm(4),
        Algebra::quat_herm(1), Algebra::quat_herm(2),   Algebra::quat_herm(3),
        Algebra::spin(2),      Algebra::spin(5),        Algebra::spin(11),
        Algebra::oct_herm3(),
        Algebra::direct_sum({Algebra::complex_herm(2), Algebra::spin(7)}),
        Algebra::direct_sum({Algebra::oct_herm3(), Algebra::real_sym(2)}),
    };
    for (auto &a : algs) check_axioms(a, 200, rng);
}

TEST_CASE("spectral decomposition: frames reconstruct the element") {
    Rng rng(25);
    for (auto &a : {Algebra::real_sym(4), Algebra::complex_herm(3), Algebra::complex_herm(5),
                    Algebra::quat_herm(2), Algebra::quat_herm(3), Algebra::spin(2), Algebra::spin(9),
                    Algebra::direct_sum({Algebra::real_sym(2), Algebra::complex_herm(2), Algebra::spin(5)})})
        check_spectral(a, 30, rng);

    // repeated eigenvalues: the unit decomposes into rank many ones
    auto a = Algebra::complex_herm(3);
    auto sd = spectral_decompose(unit_element(a));
    for (double v : sd.eigenvalues) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("spectral decomposition refuses the exceptional family") {
    auto a = Algebra::oct_herm3();
    CHECK_THROWS_AS((void)spectral_decompose(unit_element(a)), std::domain_error);
    CHECK(!a->spectral_supported());
    CHECK(!Algebra::direct_sum({Algebra::oct_herm3(), Algebra::real_sym(2)})->spectral_supported());
    CHECK(Algebra::quat_herm(2)->spectral_supported());
}

TEST_CASE("idempotent classification") {
    auto a = Algebra::complex_herm(2);
    CHECK(idempotent_class(zero_element(a)) == IdempotentClass::Zero);
    CHECK(idempotent_class(unit_element(a)) == IdempotentClass::NonPrimitiveIdempotent);
    CHECK(idempotent_class(make_element(a, {1, 0, 0, 0})) == IdempotentClass::Primitive);
    CHECK(idempotent_class(make_element(a, {2, 0, 0, 0})) == IdempotentClass::NotIdempotent);
    auto oct = Algebra::oct_herm3();
    CHECK(idempotent_class(unit_element(oct)) == IdempotentClass::NonPrimitiveIdempotent);
    CHECK(idempotent_class(make_element(oct, [] {
              std::vector<double> c(27, 0.0);
              c[0] = 1;
              return c;
          }())) == IdempotentClass::Primitive);
}

TEST_CASE("orthogonality in the positive cone matches product vanishing") {
    Rng rng(26);
    for (auto &a : {Algebra::complex_herm(3), Algebra::real_sym(3), Algebra::quat_herm(2), Algebra::spin(7)}) {
        for (int t = 0; t < 40; ++t) {
            auto sd = spectral_decompose(gauss_element(a, rng));
            int r = a->rank();
            Element x = 2.0 * sd.frame[0];
            if (r > 2) x = x + 3.0 * sd.frame[1];
            Element y = 5.0 * sd.frame[r - 1];
            CHECK(std::abs(trace_inner(x, y)) < 1e-8);
            CHECK(elem_norm(jordan_product(x, y)) < 1e-7);
            Element yc = y + 0.5 * sd.frame[0];  // overlapping support
            CHECK(trace_inner(x, yc) > 0.5);
            CHECK(elem_norm(jordan_product(x, yc)) > 0.5);
        }
    }
}

TEST_CASE("simplicity: simple families pass, direct sums fail with a witness") {
    for (auto &a : {Algebra::real_sym(3), Algebra::complex_herm(2), Algebra::complex_herm(4),
                    Algebra::quat_herm(2), Algebra::spin(5), Algebra::spin(8), Algebra::oct_herm3()})
        CHECK(is_simple(a, nullptr));

    auto ds = Algebra::direct_sum({Algebra::complex_herm(2), Algebra::complex_herm(2)});
    Element w = zero_element(ds);
    CHECK(!is_simple(ds, &w));
    CHECK(elem_norm(w) > 1e-6);
    // witness lives in a proper ideal: it is supported on the first summand only
    for (int k = 4; k < 8; ++k) CHECK(std::abs(w.coords[k]) < 1e-9);

    auto simplex = Algebra::direct_sum(std::vector<AlgebraPtr>(3, Algebra::complex_herm(1)));
    CHECK(!is_simple(simplex, nullptr));
}

TEST_CASE("classification lookup is the inverse of construction") {
    auto names = [](const std::vector<AlgebraPtr> &v) {
        std::vector<std::string> out;
        for (auto &a : v) out.push_back(a->describe());
        return out;
    };

    CHECK(names(classify_simple(3, 9)) == std::vector<std::string>{"ComplexHerm(3)"});
    CHECK(names(classify_simple(2, 3)) == std::vector<std::string>{"RealSym(2)"});
    CHECK(names(classify_simple(2, 4)) == std::vector<std::string>{"ComplexHerm(2)"});
    CHECK(names(classify_simple(2, 6)) == std::vector<std::string>{"QuatHerm(2)"});  // Spin(6) excluded
    CHECK(names(classify_simple(2, 5)) == std::vector<std::string>{"Spin(5)"});
    CHECK(names(classify_simple(2, 25)) == std::vector<std::string>{"Spin(25)"});
    CHECK(names(classify_simple(3, 27)) == std::vector<std::string>{"OctHerm3"});
    CHECK(names(classify_simple(4, 10)) == std::vector<std::string>{"RealSym(4)"});
    CHECK(names(classify_simple(4, 16)) == std::vector<std::string>{"ComplexHerm(4)"});
    CHECK(names(classify_simple(4, 28)) == std::vector<std::string>{"QuatHerm(4)"});
    CHECK(classify_simple(9, 729).empty());
    CHECK(classify_simple(5, 7).empty());
    CHECK(classify_simple(2, 2).empty());
    CHECK(names(classify_simple(1, 1)) ==
          std::vector<std::string>{"RealSym(1)", "ComplexHerm(1)", "QuatHerm(1)"});

    for (int r = 1; r <= 8; ++r) {
        for (auto &a : {Algebra::real_sym(r), Algebra::complex_herm(r), Algebra::quat_herm(r)}) {
            auto hits = names(classify_simple(a->rank(), a->dim()));
            bool found = false;
            for (auto &h : hits) found = found || h == a->describe();
            CHECK(found);
        }
    }
    for (int d : {5, 7, 8, 9, 10, 11, 12}) {
        auto hits = names(classify_simple(2, d));
        CHECK(hits == std::vector<std::string>{Algebra::spin(d)->describe()});
    }
}

TEST_CASE("direct sums compose blockwise") {
    Rng rng(27);
    auto a = Algebra::complex_herm(2), b = Algebra::spin(5);
    auto ds = Algebra::direct_sum({a, b});
    Element x = gauss_element(ds, rng), y = gauss_element(ds, rng);
    Element z = jordan_product(x, y);

    auto slice = [](const Element &e, int lo, int n) {
        return std::vector<double>(e.coords.begin() + lo, e.coords.begin() + lo + n);
    };
    Element xa = make_element(a, slice(x, 0, 4)), ya = make_element(a, slice(y, 0, 4));
    Element xb = make_element(b, slice(x, 4, 5)), yb = make_element(b, slice(y, 4, 5));
    auto za = jordan_product(xa, ya).coords, zb = jordan_product(xb, yb).coords;
    for (int k = 0; k < 4; ++k) CHECK(z.coords[k] == doctest::Approx(za[k]));
    for (int k = 0; k < 5; ++k) CHECK(z.coords[4 + k] == doctest::Approx(zb[k]));

    CHECK(trace_form(x) == doctest::Approx(trace_form(xa) + trace_form(xb)));
    CHECK(trace_inner(x, y) == doctest::Approx(trace_inner(xa, ya) + trace_inner(xb, yb)));
}

TEST_CASE("element function applies f to the spectrum") {
    Rng rng(28);
    auto a = Algebra::complex_herm(3);
    Element g = gauss_element(a, rng);
    Element p = jordan_product(g, g);  // positive
    Element r = element_function(p, [](double v) { return std::sqrt(std::max(v, 0.0)); });
    CHECK(elem_norm(jordan_product(r, r) - p) < 1e-8);
}
