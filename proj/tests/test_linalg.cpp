#include "doctest.h"
#include "optf/linalg.hpp"

#include <cmath>

using namespace optf;

namespace {

Mat sym2(double a, double b, double d) {
    Mat m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = b;
    m(1, 1) = d;
    return m;
}

Mat random_sym(int n, Rng &rng) {
    Mat g = gauss_mat<double>(n, n, rng);
    return 0.5 * (g + transpose(g));
}

CMat random_herm(int n, Rng &rng) {
    CMat g = gauss_mat<cplx>(n, n, rng);
    return 0.5 * (g + adjoint(g));
}

}  // namespace

TEST_CASE("jacobi: fixed spectra") {
    auto e = jacobi_eigensym(sym2(2, 1, 2));
    CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-12));

    e = jacobi_eigensym(sym2(0, 1, 0));
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(-1.0).epsilon(1e-12));

    // tridiagonal (-1, 2, -1) on 3 sites: 2 - sqrt(2), 2, 2 + sqrt(2)
    Mat t(3, 3);
    t(0, 0) = t(1, 1) = t(2, 2) = 2;
    t(0, 1) = t(1, 0) = t(1, 2) = t(2, 1) = -1;
    e = jacobi_eigensym(t);
    CHECK(e.values[0] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(e.values[2] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("jacobi: reconstruction and orthonormality on random input") {
    Rng rng(11);
    for (int n : {1, 2, 5, 9, 16}) {
        Mat s = random_sym(n, rng);
        auto e = jacobi_eigensym(s);
        Mat d(n, n);
        for (int i = 0; i < n; ++i) d(i, i) = e.values[i];
        CHECK(max_abs_diff(e.vectors * d * transpose(e.vectors), s) < 1e-11);
        CHECK(max_abs_diff(transpose(e.vectors) * e.vectors, Mat::identity(n)) < 1e-12);
        for (int i = 0; i + 1 < n; ++i) CHECK(e.values[i] >= e.values[i + 1]);
    }
}

TEST_CASE("complex self-adjoint eig via real embedding") {
    CMat y(2, 2);
    y(0, 1) = cplx(0, -1);
    y(1, 0) = cplx(0, 1);
    auto e = eig_self_adjoint(y);
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(-1.0).epsilon(1e-12));

    Rng rng(12);
    for (int n : {1, 2, 3, 6}) {
        CMat h = random_herm(n, rng);
        auto eh = eig_self_adjoint(h);
        CMat d(n, n);
        for (int i = 0; i < n; ++i) d(i, i) = eh.values[i];
        CHECK(max_abs_diff(h * eh.vectors, eh.vectors * d) < 1e-11);
        CHECK(max_abs_diff(adjoint(eh.vectors) * eh.vectors, CMat::identity(n)) < 1e-12);
    }
}

TEST_CASE("kron and row-major vec satisfy (A kron B) vec(M) = vec(A M B^T)") {
    Rng rng(13);
    CMat a = gauss_mat<cplx>(3, 3, rng), b = gauss_mat<cplx>(2, 2, rng), m = gauss_mat<cplx>(3, 2, rng);
    auto lhs = kron(a, b) * unvec_rowmajor(vec_rowmajor(m), 6, 1);
    auto rhs = unvec_rowmajor(vec_rowmajor(a * m * transpose(b)), 6, 1);
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("square svd: factorization, unitarity, known singular values") {
    CMat nil(2, 2);
    nil(0, 1) = 1;
    auto s = svd_square(nil);
    CHECK(s.sigma[0] == doctest::Approx(1.0));
    CHECK(s.sigma[1] == doctest::Approx(0.0).epsilon(1e-12));

    Rng rng(14);
    for (int n : {2, 4, 5}) {
        CMat a = gauss_mat<cplx>(n, n, rng);
        auto f = svd_square(a);
        CMat d(n, n);
        for (int i = 0; i < n; ++i) d(i, i) = f.sigma[i];
        CHECK(max_abs_diff(f.u * d * adjoint(f.v), a) < 1e-10);
        CHECK(max_abs_diff(adjoint(f.u) * f.u, CMat::identity(n)) < 1e-11);
        CHECK(max_abs_diff(adjoint(f.v) * f.v, CMat::identity(n)) < 1e-11);
    }

    // rank-deficient: U must still come out fully unitary
    CMat r1(3, 3);
    r1(0, 0) = 2;
    auto f = svd_square(r1);
    CHECK(max_abs_diff(adjoint(f.u) * f.u, CMat::identity(3)) < 1e-11);
    CHECK(f.sigma[0] == doctest::Approx(2.0));
    CHECK(std::abs(f.sigma[1]) < 1e-12);
}

TEST_CASE("psd sqrt / inv sqrt / pinv") {
    Mat d(2, 2);
    d(0, 0) = 2;
    d(1, 1) = 8;
    Mat r = psd_sqrt(d);
    CHECK(r(0, 0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(r(1, 1) == doctest::Approx(2 * std::sqrt(2.0)));

    Rng rng(15);
    CMat g = gauss_mat<cplx>(4, 4, rng);
    CMat p = g * adjoint(g);
    CMat q = psd_sqrt(p);
    CHECK(max_abs_diff(q * q, p) < 1e-10);

    // singular PSD: inv-sqrt acts on the support only
    CMat proj(2, 2);
    proj(0, 0) = 4;
    CMat is = psd_inv_sqrt(proj);
    CHECK(std::abs(is(0, 0) - cplx(0.5, 0)) < 1e-12);
    CHECK(std::abs(is(1, 1)) < 1e-12);

    CMat pi = psd_pinv(proj);
    CHECK(std::abs(pi(0, 0) - cplx(0.25, 0)) < 1e-12);
}

TEST_CASE("pinv_square recovers A+ with A A+ A = A") {
    Rng rng(16);
    CMat a = gauss_mat<cplx>(3, 3, rng);
    a(2, 0) = a(0, 0);
    a(2, 1) = a(0, 1);
    a(2, 2) = a(0, 2);  // force rank 2
    CMat ap = pinv_square(a);
    CHECK(max_abs_diff(a * ap * a, a) < 1e-10);
}

TEST_CASE("random unitary / orthogonal") {
    Rng rng(17);
    CMat u = random_unitary<cplx>(5, rng);
    CHECK(max_abs_diff(adjoint(u) * u, CMat::identity(5)) < 1e-12);
    Mat o = random_unitary<double>(5, rng);
    CHECK(max_abs_diff(transpose(o) * o, Mat::identity(5)) < 1e-12);
}

TEST_CASE("mat_inverse") {
    Mat a = sym2(4, 1, 1);
    auto inv = mat_inverse(a);
    REQUIRE(inv.has_value());
    CHECK(max_abs_diff(a * *inv, Mat::identity(2)) < 1e-12);

    Mat s(2, 2);
    s(0, 0) = 1;
    s(0, 1) = 2;
    s(1, 0) = 2;
    s(1, 1) = 4;
    CHECK(!mat_inverse(s).has_value());
}

TEST_CASE("col_rank") {
    Mat a(3, 3);
    a(0, 0) = 1;
    a(1, 1) = 1;
    a(2, 2) = 1;
    CHECK(col_rank(a, 1e-9) == 3);
    Mat b(3, 2);
    b(0, 0) = 1;
    b(0, 1) = 2;  // second column parallel to first
    CHECK(col_rank(b, 1e-9) == 1);
}
