#include "optf/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace optf {

namespace {

const double SQ2 = std::sqrt(2.0);

void require_same(const Element &x, const Element &y, const char *who) {
    if (!x.alg || !y.alg || !x.alg->same_as(*y.alg))
        throw std::invalid_argument(std::string(who) + ": elements of different algebras");
}

// RealSym(r) <-> symmetric matrix
Mat rsm_matrix(int r, const std::vector<double> &c) {
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

std::vector<double> rsm_coords(const Mat &x) {
    int r = x.rows;
    std::vector<double> c;
    c.reserve(r * (r + 1) / 2);
    for (int i = 0; i < r; ++i) c.push_back(x(i, i));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) c.push_back(SQ2 * 0.5 * (x(i, j) + x(j, i)));
    return c;
}

// ComplexHerm(r) <-> Hermitian matrix
CMat chm_matrix(int r, const std::vector<double> &c) {
    CMat x(r, r);
    int k = r;
    for (int i = 0; i < r; ++i) x(i, i) = c[i];
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            cplx v(c[k] / SQ2, c[k + 1] / SQ2);
            k += 2;
            x(i, j) = v;
            x(j, i) = std::conj(v);
        }
    return x;
}

std::vector<double> chm_coords(const CMat &x) {
    int r = x.rows;
    std::vector<double> c;
    c.reserve(r * r);
    for (int i = 0; i < r; ++i) c.push_back(x(i, i).real());
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            cplx v = 0.5 * (x(i, j) + std::conj(x(j, i)));
            c.push_back(SQ2 * v.real());
            c.push_back(SQ2 * v.imag());
        }
    return c;
}

// QuatHerm(r) <-> complex 2r x 2r representation; the quaternion a+bi+cj+dk
// maps to the block [[a+bi, c+di], [-c+di, a-bi]].
CMat qhm_rep(int r, const std::vector<double> &c) {
    CMat x(2 * r, 2 * r);
    int k = r;
    for (int i = 0; i < r; ++i) {
        x(2 * i, 2 * i) = c[i];
        x(2 * i + 1, 2 * i + 1) = c[i];
    }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            double a = c[k] / SQ2, b = c[k + 1] / SQ2, cc = c[k + 2] / SQ2, d = c[k + 3] / SQ2;
            k += 4;
            x(2 * i, 2 * j) = cplx(a, b);
            x(2 * i, 2 * j + 1) = cplx(cc, d);
            x(2 * i + 1, 2 * j) = cplx(-cc, d);
            x(2 * i + 1, 2 * j + 1) = cplx(a, -b);
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t) x(2 * j + s, 2 * i + t) = std::conj(x(2 * i + t, 2 * j + s));
        }
    return x;
}

std::vector<double> qhm_coords(const CMat &x) {
    int r = x.rows / 2;
    std::vector<double> c;
    c.reserve(r * (2 * r - 1));
    for (int i = 0; i < r; ++i) c.push_back(0.5 * (x(2 * i, 2 * i).real() + x(2 * i + 1, 2 * i + 1).real()));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            c.push_back(SQ2 * x(2 * i, 2 * j).real());
            c.push_back(SQ2 * x(2 * i, 2 * j).imag());
            c.push_back(SQ2 * x(2 * i, 2 * j + 1).real());
            c.push_back(SQ2 * x(2 * i, 2 * j + 1).imag());
        }
    return c;
}

using OctEntry = std::array<double, 8>;

OctEntry oct_conj(const OctEntry &p) {
    OctEntry q = p;
    for (int k = 1; k < 8; ++k) q[k] = -q[k];
    return q;
}

struct OctMat3 {
    // Hermitian 3x3 over the octonions: real diagonal, upper entries stored
    double diag[3];
    OctEntry off[3];  // 0: (0,1), 1: (0,2), 2: (1,2)
};

int oct_off_index(int a, int b) {  // a < b
    return (a == 0) ? (b == 1 ? 0 : 1) : 2;
}

OctEntry oct_entry(const OctMat3 &m, int a, int b) {
    if (a == b) {
        OctEntry e{};
        e[0] = m.diag[a];
        return e;
    }
    if (a < b) return m.off[oct_off_index(a, b)];
    return oct_conj(m.off[oct_off_index(b, a)]);
}

OctMat3 oct_from_coords(const std::vector<double> &c) {
    OctMat3 m{};
    for (int i = 0; i < 3; ++i) m.diag[i] = c[i];
    for (int e = 0; e < 3; ++e)
        for (int k = 0; k < 8; ++k) m.off[e][k] = c[3 + 8 * e + k] / SQ2;
    return m;
}

std::vector<double> oct_to_coords(const OctMat3 &m) {
    std::vector<double> c(27);
    for (int i = 0; i < 3; ++i) c[i] = m.diag[i];
    for (int e = 0; e < 3; ++e)
        for (int k = 0; k < 8; ++k) c[3 + 8 * e + k] = SQ2 * m.off[e][k];
    return c;
}

std::vector<Element> ds_split(const Element &x) {
    const auto &parts = x.alg->parts();
    std::vector<Element> out;
    out.reserve(parts.size());
    for (size_t k = 0; k < parts.size(); ++k) {
        int off = x.alg->part_offset(static_cast<int>(k));
        int n = parts[k]->dim();
        out.push_back({parts[k], std::vector<double>(x.coords.begin() + off, x.coords.begin() + off + n)});
    }
    return out;
}

Element ds_join(const AlgebraPtr &a, const std::vector<Element> &xs) {
    std::vector<double> c;
    c.reserve(a->dim());
    for (const auto &x : xs) c.insert(c.end(), x.coords.begin(), x.coords.end());
    return {a, std::move(c)};
}

Element canonical_primitive(const AlgebraPtr &a) {
    std::vector<double> c(a->dim(), 0.0);
    switch (a->family()) {
        case Family::RealSym:
        case Family::ComplexHerm:
        case Family::QuatHerm:
        case Family::OctHerm3:
            c[0] = 1;
            break;
        case Family::Spin:
            c[0] = 0.5;
            c[1] = 0.5;
            break;
        case Family::DirectSum: {
            Element p = canonical_primitive(a->parts()[0]);
            std::copy(p.coords.begin(), p.coords.end(), c.begin());
            break;
        }
    }
    return {a, std::move(c)};
}

void sort_spectral(SpectralDecomposition &sd) {
    int n = static_cast<int>(sd.eigenvalues.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
        if (sd.eigenvalues[i] != sd.eigenvalues[j]) return sd.eigenvalues[i] > sd.eigenvalues[j];
        return sd.frame[i].coords > sd.frame[j].coords;
    });
    SpectralDecomposition out;
    for (int k : idx) {
        out.eigenvalues.push_back(sd.eigenvalues[k]);
        out.frame.push_back(std::move(sd.frame[k]));
    }
    sd = std::move(out);
}

}  // namespace

AlgebraPtr Algebra::finish(Algebra a) {
    switch (a.family_) {
        case Family::RealSym:
            a.rank_ = a.n_;
            a.dim_ = a.n_ * (a.n_ + 1) / 2;
            a.desc_ = "RealSym(" + std::to_string(a.n_) + ")";
            break;
        case Family::ComplexHerm:
            a.rank_ = a.n_;
            a.dim_ = a.n_ * a.n_;
            a.desc_ = "ComplexHerm(" + std::to_string(a.n_) + ")";
            break;
        case Family::QuatHerm:
            a.rank_ = a.n_;
            a.dim_ = a.n_ * (2 * a.n_ - 1);
            a.desc_ = "QuatHerm(" + std::to_string(a.n_) + ")";
            break;
        case Family::Spin:
            a.rank_ = 2;
            a.dim_ = a.n_;
            a.desc_ = "Spin(" + std::to_string(a.n_) + ")";
            break;
        case Family::OctHerm3:
            a.rank_ = 3;
            a.dim_ = 27;
            a.spectral_ = false;
            a.desc_ = "OctHerm3";
            break;
        case Family::DirectSum: {
            a.rank_ = 0;
            a.dim_ = 0;
            a.spectral_ = true;
            bool uniform = true;
            for (const auto &p : a.parts_) {
                a.offsets_.push_back(a.dim_);
                a.rank_ += p->rank();
                a.dim_ += p->dim();
                a.spectral_ = a.spectral_ && p->spectral_supported();
                uniform = uniform && p->describe() == a.parts_[0]->describe();
            }
            if (uniform && a.parts_.size() > 1)
                a.desc_ = "DirectSum[" + a.parts_[0]->describe() + " x " + std::to_string(a.parts_.size()) + "]";
            else {
                a.desc_ = "DirectSum[";
                for (size_t k = 0; k < a.parts_.size(); ++k)
                    a.desc_ += (k ? "," : "") + a.parts_[k]->describe();
                a.desc_ += "]";
            }
            break;
        }
    }
    // unit and Gram diagonal
    a.unit_.assign(a.dim_, 0.0);
    a.gram_.assign(a.dim_, 1.0);
    switch (a.family_) {
        case Family::RealSym:
        case Family::ComplexHerm:
        case Family::QuatHerm:
            for (int i = 0; i < a.n_; ++i) a.unit_[i] = 1;
            break;
        case Family::OctHerm3:
            for (int i = 0; i < 3; ++i) a.unit_[i] = 1;
            break;
        case Family::Spin:
            a.unit_[0] = 1;
            a.gram_.assign(a.dim_, 2.0);
            break;
        case Family::DirectSum:
            for (size_t k = 0; k < a.parts_.size(); ++k) {
                const auto &p = a.parts_[k];
                int off = a.offsets_[k];
                std::copy(p->unit_coords().begin(), p->unit_coords().end(), a.unit_.begin() + off);
                std::copy(p->gram_diag().begin(), p->gram_diag().end(), a.gram_.begin() + off);
            }
            break;
    }
    return std::make_shared<const Algebra>(std::move(a));
}

AlgebraPtr Algebra::real_sym(int r) {
    if (r < 1) throw std::invalid_argument("real_sym: rank must be positive");
    Algebra a;
    a.family_ = Family::RealSym;
    a.n_ = r;
    return finish(std::move(a));
}

AlgebraPtr Algebra::complex_herm(int r) {
    if (r < 1) throw std::invalid_argument("complex_herm: rank must be positive");
    Algebra a;
    a.family_ = Family::ComplexHerm;
    a.n_ = r;
    return finish(std::move(a));
}

AlgebraPtr Algebra::quat_herm(int r) {
    if (r < 1) throw std::invalid_argument("quat_herm: rank must be positive");
    Algebra a;
    a.family_ = Family::QuatHerm;
    a.n_ = r;
    return finish(std::move(a));
}

AlgebraPtr Algebra::spin(int d) {
    if (d < 2) throw std::invalid_argument("spin: dimension must be at least 2");
    Algebra a;
    a.family_ = Family::Spin;
    a.n_ = d;
    return finish(std::move(a));
}

AlgebraPtr Algebra::oct_herm3() {
    Algebra a;
    a.family_ = Family::OctHerm3;
    a.n_ = 3;
    return finish(std::move(a));
}

AlgebraPtr Algebra::direct_sum(std::vector<AlgebraPtr> parts) {
    if (parts.empty()) throw std::invalid_argument("direct_sum: needs at least one part");
    Algebra a;
    a.family_ = Family::DirectSum;
    a.parts_ = std::move(parts);
    return finish(std::move(a));
}

Element make_element(AlgebraPtr a, std::vector<double> coords) {
    if (!a) throw std::invalid_argument("make_element: null algebra");
    if (static_cast<int>(coords.size()) != a->dim())
        throw std::invalid_argument("make_element: coordinate count does not match the algebra dimension");
    return {std::move(a), std::move(coords)};
}

Element zero_element(const AlgebraPtr &a) { return {a, std::vector<double>(a->dim(), 0.0)}; }

Element unit_element(const AlgebraPtr &a) { return {a, a->unit_coords()}; }

Element gauss_element(const AlgebraPtr &a, Rng &rng) {
    std::vector<double> c(a->dim());
    for (auto &v : c) v = rng.gauss();
    return {a, std::move(c)};
}

Element operator+(const Element &x, const Element &y) {
    require_same(x, y, "operator+");
    Element z = x;
    for (size_t k = 0; k < z.coords.size(); ++k) z.coords[k] += y.coords[k];
    return z;
}

Element operator-(const Element &x, const Element &y) {
    require_same(x, y, "operator-");
    Element z = x;
    for (size_t k = 0; k < z.coords.size(); ++k) z.coords[k] -= y.coords[k];
    return z;
}

Element operator*(double s, const Element &x) {
    Element z = x;
    for (auto &v : z.coords) v *= s;
    return z;
}

Element jordan_product(const Element &x, const Element &y) {
    require_same(x, y, "jordan_product");
    const auto &a = x.alg;
    switch (a->family()) {
        case Family::RealSym: {
            Mat xm = rsm_matrix(a->param(), x.coords), ym = rsm_matrix(a->param(), y.coords);
            return {a, rsm_coords(0.5 * (xm * ym + ym * xm))};
        }
        case Family::ComplexHerm: {
            CMat xm = chm_matrix(a->param(), x.coords), ym = chm_matrix(a->param(), y.coords);
            return {a, chm_coords(0.5 * (xm * ym + ym * xm))};
        }
        case Family::QuatHerm: {
            CMat xm = qhm_rep(a->param(), x.coords), ym = qhm_rep(a->param(), y.coords);
            return {a, qhm_coords(0.5 * (xm * ym + ym * xm))};
        }
        case Family::Spin: {
            int d = a->dim();
            std::vector<double> z(d, 0.0);
            double s = x.coords[0], t = y.coords[0];
            double uv = 0;
            for (int k = 1; k < d; ++k) uv += x.coords[k] * y.coords[k];
            z[0] = s * t + uv;
            for (int k = 1; k < d; ++k) z[k] = s * y.coords[k] + t * x.coords[k];
            return {a, std::move(z)};
        }
        case Family::OctHerm3: {
            OctMat3 xm = oct_from_coords(x.coords), ym = oct_from_coords(y.coords);
            OctEntry w[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    w[i][j].fill(0.0);
                    for (int g = 0; g < 3; ++g) {
                        OctEntry t = oct_mul(oct_entry(xm, i, g), oct_entry(ym, g, j));
                        for (int k = 0; k < 8; ++k) w[i][j][k] += t[k];
                    }
                }
            OctMat3 z{};
            for (int i = 0; i < 3; ++i) z.diag[i] = w[i][i][0];
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    OctEntry c = oct_conj(w[j][i]);
                    for (int k = 0; k < 8; ++k) z.off[oct_off_index(i, j)][k] = 0.5 * (w[i][j][k] + c[k]);
                }
            return {a, oct_to_coords(z)};
        }
        case Family::DirectSum: {
            auto xs = ds_split(x), ys = ds_split(y);
            std::vector<Element> zs;
            zs.reserve(xs.size());
            for (size_t k = 0; k < xs.size(); ++k) zs.push_back(jordan_product(xs[k], ys[k]));
            return ds_join(a, zs);
        }
    }
    throw std::logic_error("jordan_product: unreachable");
}

double trace_form(const Element &x) {
    const auto &g = x.alg->gram_diag();
    const auto &u = x.alg->unit_coords();
    double s = 0;
    for (size_t k = 0; k < x.coords.size(); ++k) s += g[k] * u[k] * x.coords[k];
    return s;
}

double trace_inner(const Element &x, const Element &y) {
    require_same(x, y, "trace_inner");
    const auto &g = x.alg->gram_diag();
    double s = 0;
    for (size_t k = 0; k < x.coords.size(); ++k) s += g[k] * x.coords[k] * y.coords[k];
    return s;
}

Element quadratic_rep(const Element &y, const Element &z) {
    Element yz = jordan_product(y, z);
    Element y2 = jordan_product(y, y);
    return 2.0 * jordan_product(y, yz) - jordan_product(y2, z);
}

SpectralDecomposition spectral_decompose(const Element &x) {
    const auto &a = x.alg;
    if (!a->spectral_supported())
        throw std::domain_error("spectral_decompose: no spectral support for " + a->describe());
    SpectralDecomposition sd;
    switch (a->family()) {
        case Family::RealSym: {
            int r = a->param();
            auto e = jacobi_eigensym(rsm_matrix(r, x.coords));
            for (int k = 0; k < r; ++k) {
                Mat p(r, r);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) p(i, j) = e.vectors(i, k) * e.vectors(j, k);
                sd.eigenvalues.push_back(e.values[k]);
                sd.frame.push_back({a, rsm_coords(p)});
            }
            break;
        }
        case Family::ComplexHerm: {
            int r = a->param();
            auto e = eig_self_adjoint(chm_matrix(r, x.coords));
            for (int k = 0; k < r; ++k) {
                CMat p(r, r);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) p(i, j) = e.vectors(i, k) * std::conj(e.vectors(j, k));
                sd.eigenvalues.push_back(e.values[k]);
                sd.frame.push_back({a, chm_coords(p)});
            }
            break;
        }
        case Family::QuatHerm: {
            // eigenvectors of the complex representation come in Kramers
            // pairs (v, J conj(v)); each pair carries one frame member
            int r = a->param();
            int m = 2 * r;
            auto e = eig_self_adjoint(qhm_rep(r, x.coords));
            CMat acc(m, m);
            int filled = 0;
            for (int k = 0; k < m && static_cast<int>(sd.frame.size()) < r; ++k) {
                std::vector<cplx> v(m);
                for (int i = 0; i < m; ++i) v[i] = e.vectors(i, k);
                if (!detail::gs_insert(acc, filled, v, 0.5)) continue;
                for (int i = 0; i < m; ++i) acc(i, filled) = v[i];
                ++filled;
                std::vector<cplx> w(m);
                for (int i = 0; i < r; ++i) {
                    w[2 * i] = std::conj(v[2 * i + 1]);
                    w[2 * i + 1] = -std::conj(v[2 * i]);
                }
                if (!detail::gs_insert(acc, filled, w, 0.5))
                    throw std::runtime_error("spectral_decompose: Kramers partner degenerate");
                for (int i = 0; i < m; ++i) acc(i, filled) = w[i];
                ++filled;
                CMat p(m, m);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j)
                        p(i, j) = v[i] * std::conj(v[j]) + w[i] * std::conj(w[j]);
                sd.eigenvalues.push_back(e.values[k]);
                sd.frame.push_back({a, qhm_coords(p)});
            }
            if (static_cast<int>(sd.frame.size()) != r)
                throw std::runtime_error("spectral_decompose: quaternionic pairing failed");
            break;
        }
        case Family::Spin: {
            int d = a->dim();
            double t = x.coords[0];
            double nv = 0;
            for (int k = 1; k < d; ++k) nv += x.coords[k] * x.coords[k];
            nv = std::sqrt(nv);
            std::vector<double> hat(d - 1, 0.0);
            if (nv > 0)
                for (int k = 1; k < d; ++k) hat[k - 1] = x.coords[k] / nv;
            else
                hat[0] = 1;  // any unit vector serves in the degenerate case
            std::vector<double> plus(d), minus(d);
            plus[0] = minus[0] = 0.5;
            for (int k = 1; k < d; ++k) {
                plus[k] = 0.5 * hat[k - 1];
                minus[k] = -0.5 * hat[k - 1];
            }
            sd.eigenvalues = {t + nv, t - nv};
            sd.frame.push_back({a, std::move(plus)});
            sd.frame.push_back({a, std::move(minus)});
            break;
        }
        case Family::DirectSum: {
            auto xs = ds_split(x);
            const auto &parts = a->parts();
            for (size_t k = 0; k < xs.size(); ++k) {
                auto sub = spectral_decompose(xs[k]);
                int off = a->part_offset(static_cast<int>(k));
                for (size_t i = 0; i < sub.frame.size(); ++i) {
                    std::vector<double> c(a->dim(), 0.0);
                    std::copy(sub.frame[i].coords.begin(), sub.frame[i].coords.end(), c.begin() + off);
                    sd.eigenvalues.push_back(sub.eigenvalues[i]);
                    sd.frame.push_back({a, std::move(c)});
                }
                (void)parts;
            }
            break;
        }
        case Family::OctHerm3:
            break;  // unreachable, guarded above
    }
    sort_spectral(sd);
    return sd;
}

Element element_function(const Element &x, const std::function<double(double)> &f) {
    auto sd = spectral_decompose(x);
    Element out = zero_element(x.alg);
    for (size_t k = 0; k < sd.frame.size(); ++k) out = out + f(sd.eigenvalues[k]) * sd.frame[k];
    return out;
}

IdempotentClass idempotent_class(const Element &x, double tol) {
    double n2 = trace_inner(x, x);
    Element d = jordan_product(x, x) - x;
    if (std::sqrt(trace_inner(d, d)) > tol * (1 + n2)) return IdempotentClass::NotIdempotent;
    if (std::sqrt(n2) <= tol) return IdempotentClass::Zero;
    long k = std::lround(trace_form(x));
    if (k <= 0) return IdempotentClass::Zero;
    return k == 1 ? IdempotentClass::Primitive : IdempotentClass::NonPrimitiveIdempotent;
}

bool is_simple(const AlgebraPtr &a, Element *witness) {
    const int d = a->dim();
    Mat basis(d, d);
    int filled = 0;
    {
        std::vector<double> c = canonical_primitive(a).coords;
        detail::gs_insert(basis, 0, c, 1e-12);
        for (int i = 0; i < d; ++i) basis(i, 0) = c[i];
        filled = 1;
    }
    bool grew = true;
    while (grew && filled < d) {
        grew = false;
        int cur = filled;
        for (int k = 0; k < d && filled < d; ++k) {
            std::vector<double> bk(d, 0.0);
            bk[k] = 1;
            Element ek{a, std::move(bk)};
            for (int c = 0; c < cur && filled < d; ++c) {
                std::vector<double> sc(d);
                for (int i = 0; i < d; ++i) sc[i] = basis(i, c);
                Element prod = jordan_product(ek, Element{a, std::move(sc)});
                std::vector<double> col = prod.coords;
                if (!detail::gs_insert(basis, filled, col, 1e-8)) continue;
                for (int i = 0; i < d; ++i) basis(i, filled) = col[i];
                ++filled;
                grew = true;
            }
        }
    }
    if (filled == d) return true;
    if (witness) {
        const auto &u = a->unit_coords();
        std::vector<double> w(d, 0.0);
        for (int c = 0; c < filled; ++c) {
            double ip = 0;
            for (int i = 0; i < d; ++i) ip += basis(i, c) * u[i];
            for (int i = 0; i < d; ++i) w[i] += ip * basis(i, c);
        }
        *witness = {a, std::move(w)};
    }
    return false;
}

std::vector<AlgebraPtr> classify_simple(int rank, int dim) {
    std::vector<AlgebraPtr> out;
    if (rank < 1 || dim < 1) return out;
    if (dim == rank * (rank + 1) / 2) out.push_back(Algebra::real_sym(rank));
    if (dim == rank * rank) out.push_back(Algebra::complex_herm(rank));
    if (dim == rank * (2 * rank - 1)) out.push_back(Algebra::quat_herm(rank));
    if (rank == 2 && dim >= 5 && dim != 6) out.push_back(Algebra::spin(dim));
    if (rank == 3 && dim == 27) out.push_back(Algebra::oct_herm3());
    return out;
}

Mat real_matrix(const Element &x) {
    if (x.alg->family() != Family::RealSym) throw std::invalid_argument("real_matrix: RealSym element required");
    return rsm_matrix(x.alg->param(), x.coords);
}

Element element_from_real_matrix(const AlgebraPtr &a, const Mat &m) {
    if (a->family() != Family::RealSym) throw std::invalid_argument("element_from_real_matrix: RealSym required");
    if (m.rows != a->param() || m.cols != a->param())
        throw std::invalid_argument("element_from_real_matrix: size mismatch");
    return {a, rsm_coords(m)};
}

CMat complex_matrix(const Element &x) {
    if (x.alg->family() != Family::ComplexHerm)
        throw std::invalid_argument("complex_matrix: ComplexHerm element required");
    return chm_matrix(x.alg->param(), x.coords);
}

Element element_from_complex_matrix(const AlgebraPtr &a, const CMat &m) {
    if (a->family() != Family::ComplexHerm)
        throw std::invalid_argument("element_from_complex_matrix: ComplexHerm required");
    if (m.rows != a->param() || m.cols != a->param())
        throw std::invalid_argument("element_from_complex_matrix: size mismatch");
    return {a, chm_coords(m)};
}

std::array<double, 4> quat_mul(const std::array<double, 4> &p, const std::array<double, 4> &q) {
    return {
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    };
}

std::array<double, 8> oct_mul(const std::array<double, 8> &p, const std::array<double, 8> &q) {
    // Cayley-Dickson doubling: (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
    std::array<double, 4> a{p[0], p[1], p[2], p[3]}, b{p[4], p[5], p[6], p[7]};
    std::array<double, 4> c{q[0], q[1], q[2], q[3]}, d{q[4], q[5], q[6], q[7]};
    auto qconj = [](std::array<double, 4> v) {
        return std::array<double, 4>{v[0], -v[1], -v[2], -v[3]};
    };
    auto ac = quat_mul(a, c);
    auto db = quat_mul(qconj(d), b);
    auto da = quat_mul(d, a);
    auto bc = quat_mul(b, qconj(c));
    return {ac[0] - db[0], ac[1] - db[1], ac[2] - db[2], ac[3] - db[3],
            da[0] + bc[0], da[1] + bc[1], da[2] + bc[2], da[3] + bc[3]};
}

}  // namespace optf
