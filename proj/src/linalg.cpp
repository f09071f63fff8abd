#include "optf/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace optf {

namespace {

double off_diag_norm(const Mat &a) {
    double s = 0;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace

EigSA<double> jacobi_eigensym(const Mat &s) {
    if (s.rows != s.cols) throw std::invalid_argument("jacobi_eigensym: square matrix required");
    const int n = s.rows;
    Mat a = s;
    Mat v = Mat::identity(n);
    const double stop = 1e-12 * fro_norm(s);

    const int max_sweeps = 64;
    int sweep = 0;
    while (n > 1 && off_diag_norm(a) > stop) {
        if (++sweep > max_sweeps) throw std::runtime_error("jacobi_eigensym: no convergence");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (apq == 0.0) continue;
                double theta = (a(q, q) - a(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double sn = t * c;
                for (int k = 0; k < n; ++k) {  // A <- A J
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {  // A <- J^T A
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {  // V <- V J
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

    EigSA<double> out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

EigSA<double> eig_self_adjoint(const Mat &s) {
    return jacobi_eigensym(0.5 * (s + transpose(s)));
}

EigSA<cplx> eig_self_adjoint(const CMat &h) {
    if (h.rows != h.cols) throw std::invalid_argument("eig_self_adjoint: square matrix required");
    const int n = h.rows;
    CMat hh = 0.5 * (h + adjoint(h));
    Mat a = real_part(hh), b = imag_part(hh);

    // H = A + iB with A symmetric, B antisymmetric embeds as the symmetric
    // real matrix [[A, -B], [B, A]]; each complex eigenvector shows up as a
    // two-dimensional real eigenspace, so pick one representative per plane.
    Mat e(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            e(i, j) = a(i, j);
            e(i, j + n) = -b(i, j);
            e(i + n, j) = b(i, j);
            e(i + n, j + n) = a(i, j);
        }
    EigSA<double> re = jacobi_eigensym(e);

    EigSA<cplx> out;
    out.vectors = CMat(n, n);
    int filled = 0;
    for (int k = 0; k < 2 * n && filled < n; ++k) {
        std::vector<cplx> z(n);
        for (int i = 0; i < n; ++i) z[i] = cplx(re.vectors(i, k), re.vectors(i + n, k));
        if (!detail::gs_insert(out.vectors, filled, z, 0.5)) continue;
        for (int i = 0; i < n; ++i) out.vectors(i, filled) = z[i];
        out.values.push_back(re.values[k]);
        ++filled;
    }
    if (filled < n) throw std::runtime_error("eig_self_adjoint: embedding extraction failed");
    return out;
}

std::optional<Mat> mat_inverse(const Mat &a) {
    if (a.rows != a.cols) throw std::invalid_argument("mat_inverse: square matrix required");
    const int n = a.rows;
    Mat w = a;
    Mat inv = Mat::identity(n);
    const double tiny = 1e-13 * std::max(max_abs(a), 1e-300);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(w(r, col)) > std::abs(w(piv, col))) piv = r;
        if (std::abs(w(piv, col)) <= tiny) return std::nullopt;
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(w(piv, j), w(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        double d = 1.0 / w(col, col);
        for (int j = 0; j < n; ++j) {
            w(col, j) *= d;
            inv(col, j) *= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = w(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                w(r, j) -= f * w(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

int col_rank(const Mat &a, double tol) {
    Mat basis(a.rows, std::min(a.rows, a.cols));
    int filled = 0;
    for (int k = 0; k < a.cols && filled < basis.cols; ++k) {
        std::vector<double> col(a.rows);
        for (int i = 0; i < a.rows; ++i) col[i] = a(i, k);
        if (!detail::gs_insert(basis, filled, col, tol)) continue;
        for (int i = 0; i < a.rows; ++i) basis(i, filled) = col[i];
        ++filled;
    }
    return filled;
}

}  // namespace optf
