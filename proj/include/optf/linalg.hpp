#pragma once

// Dense real/complex matrices over std::vector, plus the eigensolver stack
// everything else in this library sits on: cyclic Jacobi for real symmetric
// matrices, self-adjoint complex eig via the 2n x 2n real embedding, square
// SVD via the Gram matrix, and spectral functions of PSD matrices.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace optf {

using cplx = std::complex<double>;

inline double conj_s(double x) { return x; }
inline cplx conj_s(const cplx &x) { return std::conj(x); }
inline double real_s(double x) { return x; }
inline double real_s(const cplx &x) { return x.real(); }
inline double abs2_s(double x) { return x * x; }
inline double abs2_s(const cplx &x) { return std::norm(x); }

template <class T>
struct DenseMat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    DenseMat() = default;
    DenseMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}

    T &operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T &operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static DenseMat identity(int n) {
        DenseMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
};

using Mat = DenseMat<double>;
using CMat = DenseMat<cplx>;

template <class T>
DenseMat<T> operator+(const DenseMat<T> &x, const DenseMat<T> &y) {
    DenseMat<T> z = x;
    for (size_t k = 0; k < z.a.size(); ++k) z.a[k] += y.a[k];
    return z;
}

template <class T>
DenseMat<T> operator-(const DenseMat<T> &x, const DenseMat<T> &y) {
    DenseMat<T> z = x;
    for (size_t k = 0; k < z.a.size(); ++k) z.a[k] -= y.a[k];
    return z;
}

template <class T, class S>
DenseMat<T> operator*(S s, const DenseMat<T> &x) {
    DenseMat<T> z = x;
    for (auto &v : z.a) v = T(s) * v;
    return z;
}

template <class T>
DenseMat<T> operator*(const DenseMat<T> &x, const DenseMat<T> &y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix product: shape mismatch");
    DenseMat<T> z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            T xik = x(i, k);
            if (xik == T(0)) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
        }
    return z;
}

template <class T>
DenseMat<T> transpose(const DenseMat<T> &x) {
    DenseMat<T> z(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
    return z;
}

template <class T>
DenseMat<T> conjugate(const DenseMat<T> &x) {
    DenseMat<T> z = x;
    for (auto &v : z.a) v = conj_s(v);
    return z;
}

template <class T>
DenseMat<T> adjoint(const DenseMat<T> &x) {
    return conjugate(transpose(x));
}

template <class T>
T trace(const DenseMat<T> &x) {
    T t(0);
    for (int i = 0; i < std::min(x.rows, x.cols); ++i) t += x(i, i);
    return t;
}

template <class T>
double fro_norm(const DenseMat<T> &x) {
    double s = 0;
    for (const auto &v : x.a) s += abs2_s(v);
    return std::sqrt(s);
}

template <class T>
double max_abs(const DenseMat<T> &x) {
    double m = 0;
    for (const auto &v : x.a) m = std::max(m, std::abs(v));
    return m;
}

template <class T>
double max_abs_diff(const DenseMat<T> &x, const DenseMat<T> &y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0;
    for (size_t k = 0; k < x.a.size(); ++k) m = std::max(m, std::abs(x.a[k] - y.a[k]));
    return m;
}

template <class T>
DenseMat<T> kron(const DenseMat<T> &x, const DenseMat<T> &y) {
    DenseMat<T> z(x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) {
            T xij = x(i, j);
            if (xij == T(0)) continue;
            for (int k = 0; k < y.rows; ++k)
                for (int l = 0; l < y.cols; ++l)
                    z(i * y.rows + k, j * y.cols + l) = xij * y(k, l);
        }
    return z;
}

// Row-major vec: vec(M)[i*cols + j] = M(i, j), so (A (x) B) vec(M) = vec(A M B^T).
template <class T>
std::vector<T> vec_rowmajor(const DenseMat<T> &x) {
    return x.a;
}

template <class T>
DenseMat<T> unvec_rowmajor(const std::vector<T> &v, int rows, int cols) {
    if (static_cast<int>(v.size()) != rows * cols) throw std::invalid_argument("unvec: size mismatch");
    DenseMat<T> z(rows, cols);
    z.a = v;
    return z;
}

inline Mat real_part(const CMat &x) {
    Mat z(x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) z.a[k] = x.a[k].real();
    return z;
}

inline Mat imag_part(const CMat &x) {
    Mat z(x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) z.a[k] = x.a[k].imag();
    return z;
}

inline CMat to_complex(const Mat &x) {
    CMat z(x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) z.a[k] = cplx(x.a[k], 0.0);
    return z;
}

inline double dot(const std::vector<double> &x, const std::vector<double> &y) {
    double s = 0;
    for (size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
    return s;
}

inline double vec_norm(const std::vector<double> &x) { return std::sqrt(dot(x, x)); }

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double gauss() {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(eng);
    }
    double unif() {
        std::uniform_real_distribution<double> d(0.0, 1.0);
        return d(eng);
    }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        std::uniform_int_distribution<int> d(lo, hi);
        return d(eng);
    }
};

template <class T>
T gauss_scalar(Rng &rng);
template <>
inline double gauss_scalar<double>(Rng &rng) {
    return rng.gauss();
}
template <>
inline cplx gauss_scalar<cplx>(Rng &rng) {
    double re = rng.gauss(), im = rng.gauss();
    return cplx(re, im) / std::sqrt(2.0);
}

template <class T>
DenseMat<T> gauss_mat(int r, int c, Rng &rng) {
    DenseMat<T> z(r, c);
    for (auto &v : z.a) v = gauss_scalar<T>(rng);
    return z;
}

// Eigendecomposition of a self-adjoint matrix. Eigenvalues descending,
// columns of `vectors` orthonormal, A * vectors = vectors * diag(values).
template <class T>
struct EigSA {
    std::vector<double> values;
    DenseMat<T> vectors;
};

// Cyclic Jacobi; stops when the off-diagonal Frobenius norm falls below
// 1e-12 times the Frobenius norm of the input.
EigSA<double> jacobi_eigensym(const Mat &s);

EigSA<double> eig_self_adjoint(const Mat &s);
EigSA<cplx> eig_self_adjoint(const CMat &h);

template <class T>
DenseMat<T> mat_func_self_adjoint(const DenseMat<T> &h, const std::function<double(double)> &f) {
    EigSA<T> e = eig_self_adjoint(h);
    int n = h.rows;
    DenseMat<T> z(n, n);
    for (int k = 0; k < n; ++k) {
        double fk = f(e.values[k]);
        if (fk == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                z(i, j) += fk * e.vectors(i, k) * conj_s(e.vectors(j, k));
    }
    return z;
}

template <class T>
DenseMat<T> psd_sqrt(const DenseMat<T> &h) {
    return mat_func_self_adjoint<T>(h, [](double x) { return x > 0 ? std::sqrt(x) : 0.0; });
}

// Pseudo-inverse square root on the support; eigenvalues below rel_tol times
// the largest are treated as kernel.
template <class T>
DenseMat<T> psd_inv_sqrt(const DenseMat<T> &h, double rel_tol = 1e-12) {
    EigSA<T> e = eig_self_adjoint(h);
    double lmax = e.values.empty() ? 0.0 : std::max(e.values[0], 0.0);
    double cut = rel_tol * std::max(lmax, 1e-300);
    DenseMat<T> z(h.rows, h.rows);
    for (int k = 0; k < h.rows; ++k) {
        if (e.values[k] <= cut) continue;
        double fk = 1.0 / std::sqrt(e.values[k]);
        for (int i = 0; i < h.rows; ++i)
            for (int j = 0; j < h.rows; ++j)
                z(i, j) += fk * e.vectors(i, k) * conj_s(e.vectors(j, k));
    }
    return z;
}

template <class T>
DenseMat<T> psd_pinv(const DenseMat<T> &h, double rel_tol = 1e-12) {
    DenseMat<T> r = psd_inv_sqrt<T>(h, rel_tol);
    return r * r;
}

// Full SVD of a square matrix: a = u * diag(sigma) * adjoint(v), with u, v
// unitary and sigma descending (kernel directions padded in).
template <class T>
struct SvdSquare {
    DenseMat<T> u;
    std::vector<double> sigma;
    DenseMat<T> v;
};

namespace detail {

// Projects x against the first `count` columns of basis, normalizes the
// remainder; returns false when the remainder is negligible.
template <class T>
bool gs_insert(DenseMat<T> &basis, int count, std::vector<T> &x, double drop_tol) {
    int n = basis.rows;
    for (int pass = 0; pass < 2; ++pass) {
        for (int c = 0; c < count; ++c) {
            T ip(0);
            for (int i = 0; i < n; ++i) ip += conj_s(basis(i, c)) * x[i];
            for (int i = 0; i < n; ++i) x[i] -= ip * basis(i, c);
        }
    }
    double nrm = 0;
    for (int i = 0; i < n; ++i) nrm += abs2_s(x[i]);
    nrm = std::sqrt(nrm);
    if (nrm <= drop_tol) return false;
    for (int i = 0; i < n; ++i) x[i] = x[i] * T(1.0 / nrm);
    return true;
}

}  // namespace detail

template <class T>
SvdSquare<T> svd_square(const DenseMat<T> &a) {
    if (a.rows != a.cols) throw std::invalid_argument("svd_square: square matrix required");
    int n = a.rows;
    EigSA<T> e = eig_self_adjoint(adjoint(a) * a);
    SvdSquare<T> out;
    out.v = e.vectors;
    out.sigma.resize(n);
    double smax = 0;
    for (int k = 0; k < n; ++k) {
        out.sigma[k] = std::sqrt(std::max(e.values[k], 0.0));
        smax = std::max(smax, out.sigma[k]);
    }
    // the Gram route cannot resolve singular values below sqrt(eps) * smax;
    // anything smaller is reported as exactly zero and its left vector is
    // taken from the orthogonal completion instead of a noise direction
    double cut = 1e-8 * std::max(smax, 1e-300);
    for (int k = 0; k < n; ++k)
        if (out.sigma[k] <= cut) out.sigma[k] = 0.0;
    out.u = DenseMat<T>(n, n);
    int filled = 0;
    for (int k = 0; k < n; ++k) {
        if (out.sigma[k] == 0.0) break;
        std::vector<T> col(n, T(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) col[i] += a(i, j) * out.v(j, k);
        for (auto &v : col) v = v * T(1.0 / out.sigma[k]);
        if (!detail::gs_insert(out.u, filled, col, 0.5)) throw std::runtime_error("svd_square: left vectors degenerate");
        for (int i = 0; i < n; ++i) out.u(i, filled) = col[i];
        ++filled;
    }
    for (int k = 0; filled < n && k < n; ++k) {
        std::vector<T> col(n, T(0));
        col[k] = T(1);
        if (!detail::gs_insert(out.u, filled, col, 0.5)) continue;
        for (int i = 0; i < n; ++i) out.u(i, filled) = col[i];
        ++filled;
    }
    if (filled < n) throw std::runtime_error("svd_square: completion failed");
    return out;
}

template <class T>
DenseMat<T> pinv_square(const DenseMat<T> &a, double rel_tol = 1e-12) {
    SvdSquare<T> s = svd_square(a);
    int n = a.rows;
    double smax = s.sigma.empty() ? 0.0 : s.sigma[0];
    double cut = rel_tol * std::max(smax, 1e-300);
    DenseMat<T> z(n, n);
    for (int k = 0; k < n; ++k) {
        if (s.sigma[k] <= cut) continue;
        double inv = 1.0 / s.sigma[k];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                z(i, j) += inv * s.v(i, k) * conj_s(s.u(j, k));
    }
    return z;
}

template <class T>
DenseMat<T> random_unitary(int n, Rng &rng) {
    DenseMat<T> g = gauss_mat<T>(n, n, rng);
    DenseMat<T> q(n, n);
    int filled = 0;
    for (int k = 0; filled < n; ++k) {
        std::vector<T> col(n);
        if (k < n) {
            for (int i = 0; i < n; ++i) col[i] = g(i, k);
        } else {
            for (int i = 0; i < n; ++i) col[i] = T(0);
            col[k - n] = T(1);
        }
        if (!detail::gs_insert(q, filled, col, 1e-8)) continue;
        for (int i = 0; i < n; ++i) q(i, filled) = col[i];
        ++filled;
    }
    return q;
}

std::optional<Mat> mat_inverse(const Mat &a);

// Dimension of the column span, via Gram-Schmidt with an absolute drop
// tolerance on the residual norm.
int col_rank(const Mat &a, double tol = 1e-9);

}  // namespace optf
