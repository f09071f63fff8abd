#include "optf/purification.hpp"

#include <cmath>

namespace optf {

namespace {

template <typename S>
struct Ops;

template <>
struct Ops<double> {
    static constexpr BackendKind kind = BackendKind::RealQT;
    static Mat to_mat(const Element &e) { return real_matrix(e); }
    static Element from_mat(const AlgebraPtr &a, const Mat &m) {
        return element_from_real_matrix(a, m);
    }
};

template <>
struct Ops<cplx> {
    static constexpr BackendKind kind = BackendKind::ComplexQT;
    static CMat to_mat(const Element &e) { return complex_matrix(e); }
    static Element from_mat(const AlgebraPtr &a, const CMat &m) {
        return element_from_complex_matrix(a, m);
    }
};

template <typename S>
DenseMat<S> vec_outer(const DenseMat<S> &m) {
    DenseMat<S> v(m.rows * m.cols, 1);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) v(i * m.cols + j, 0) = m(i, j);
    return v * adjoint(v);
}

template <typename S>
PurificationPair purify_impl(const Element &rho) {
    auto x = Ops<S>::to_mat(rho);
    int n = x.rows;
    EigSA<S> e = eig_self_adjoint(x);
    double tr = 0;
    for (double v : e.values) tr += v;
    if (std::abs(tr - 1) > 1e-8)
        throw std::invalid_argument("purify: state is not normalized");
    if (e.values.back() < -1e-8)
        throw std::invalid_argument("purify: state is not in the cone");
    DenseMat<S> m = psd_sqrt(x);
    auto comp = system_algebra(Ops<S>::kind, n * n);
    Element psi = Ops<S>::from_mat(comp, vec_outer(m));
    return {Ops<S>::kind, n, rho, std::move(psi), std::move(m)};
}

template <typename S>
Element marginal_impl(const Element &composite, int la, int lb, int keep) {
    auto x = Ops<S>::to_mat(composite);
    if (x.rows != la * lb) throw std::invalid_argument("marginal: factor levels do not match");
    int nk = keep == 0 ? la : lb;
    DenseMat<S> y(nk, nk);
    if (keep == 0) {
        for (int i = 0; i < la; ++i)
            for (int ip = 0; ip < la; ++ip) {
                S acc(0);
                for (int j = 0; j < lb; ++j) acc += x(i * lb + j, ip * lb + j);
                y(i, ip) = acc;
            }
    } else {
        for (int j = 0; j < lb; ++j)
            for (int jp = 0; jp < lb; ++jp) {
                S acc(0);
                for (int i = 0; i < la; ++i) acc += x(i * lb + j, i * lb + jp);
                y(j, jp) = acc;
            }
    }
    return Ops<S>::from_mat(system_algebra(Ops<S>::kind, nk), y);
}

template <typename S>
SteeringResult steering_impl(const PurificationPair &pair, const std::vector<Element> &ensemble) {
    int n = pair.level;
    auto an = system_algebra(Ops<S>::kind, n);
    auto x = Ops<S>::to_mat(pair.rho);

    Element total = zero_element(pair.rho.alg);
    for (const auto &s : ensemble) {
        EigSA<S> es = eig_self_adjoint(Ops<S>::to_mat(s));
        if (es.values.back() < -1e-8)
            throw std::invalid_argument("steering_measurement: ensemble member outside the cone");
        total = total + s;
    }
    for (size_t i = 0; i < total.coords.size(); ++i)
        if (std::abs(total.coords[i] - pair.rho.coords[i]) > 1e-8)
            throw std::invalid_argument("steering_measurement: ensemble does not sum to the marginal");

    EigSA<S> e = eig_self_adjoint(x);
    double cut = e.values.front() * 1e-10;
    DenseMat<S> r = mat_func_self_adjoint(x, [cut](double v) { return v > cut ? 1.0 / std::sqrt(v) : 0.0; });
    DenseMat<S> supp = mat_func_self_adjoint(x, [cut](double v) { return v > cut ? 1.0 : 0.0; });

    const DenseMat<S> &m = std::get<DenseMat<S>>(pair.m);
    SteeringResult out;
    for (size_t i = 0; i < ensemble.size(); ++i) {
        DenseMat<S> b = transpose(r * Ops<S>::to_mat(ensemble[i]) * r);
        if (i == 0) b = b + DenseMat<S>::identity(n) - transpose(supp);
        out.ensemble.push_back(Ops<S>::from_mat(an, m * transpose(b) * adjoint(m)));
        out.effects.push_back(Ops<S>::from_mat(an, b));
    }
    return out;
}

template <typename S>
ZigzagPair zigzag_impl(const Element &rho) {
    auto x = Ops<S>::to_mat(rho);
    int n = x.rows;
    EigSA<S> e = eig_self_adjoint(x);
    double tr = 0, tr_inv = 0;
    for (double v : e.values) tr += v;
    if (std::abs(tr - 1) > 1e-8)
        throw std::invalid_argument("zigzag_pair: state is not normalized");
    if (e.values.back() < 1e-8)
        throw std::domain_error("zigzag_pair: state is on the cone boundary");
    for (double v : e.values) tr_inv += 1.0 / v;

    DenseMat<S> n_mat = transpose(psd_inv_sqrt(x));
    DenseMat<S> eff = (1.0 / tr_inv) * vec_outer(n_mat);
    auto comp = system_algebra(Ops<S>::kind, n * n);
    return {Ops<S>::from_mat(comp, eff), 1.0 / tr_inv};
}

template <typename S>
DenseMat<S> rank_one_matricization(const Element &psi, int n) {
    EigSA<S> e = eig_self_adjoint(Ops<S>::to_mat(psi));
    if (e.values.front() <= 0 ||
        (e.values.size() > 1 && std::abs(e.values[1]) > 1e-7 * e.values.front()))
        throw std::invalid_argument("uniqueness_unitary: input state is not rank one");
    double s = std::sqrt(e.values.front());
    DenseMat<S> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = s * e.vectors(i * n + j, 0);
    return m;
}

// Drops singular directions below 1e-7 of the largest. A matricization of a
// rank-deficient state carries sqrt(eps)-sized kernel residue whose inverse
// would amplify eigensolver noise past the postcondition tolerance.
template <typename S>
DenseMat<S> truncate_kernel_residue(const DenseMat<S> &a) {
    SvdSquare<S> s = svd_square(a);
    double cut = (s.sigma.empty() ? 0.0 : s.sigma[0]) * 1e-7;
    DenseMat<S> t(a.rows, a.cols);
    for (int k = 0; k < a.rows; ++k) {
        if (s.sigma[k] <= cut) continue;
        for (int i = 0; i < a.rows; ++i)
            for (int j = 0; j < a.cols; ++j) t(i, j) += S(s.sigma[k]) * s.u(i, k) * conj_s(s.v(j, k));
    }
    return t;
}

template <typename S>
Channel uniqueness_impl(int level, const Element &psi, const Element &psi_prime) {
    int n = level;
    DenseMat<S> m = truncate_kernel_residue(rank_one_matricization<S>(psi, n));
    DenseMat<S> mp = truncate_kernel_residue(rank_one_matricization<S>(psi_prime, n));

    DenseMat<S> rho_a = m * adjoint(m), rho_b = mp * adjoint(mp);
    if (max_abs_diff(rho_a, rho_b) > 1e-7)
        throw std::invalid_argument("uniqueness_unitary: first marginals differ");

    // solve mp = m * vt on the support; svd completion supplies the kernel
    // block deterministically
    DenseMat<S> w = pinv_square(m, 1e-7) * mp;
    SvdSquare<S> sv = svd_square(w);
    DenseMat<S> vt = sv.u * adjoint(sv.v);
    DenseMat<S> v = transpose(vt);

    if (max_abs_diff(vec_outer(m * vt), Ops<S>::to_mat(psi_prime)) > 1e-8)
        throw std::runtime_error("uniqueness_unitary: postcondition failed");

    auto an = system_algebra(Ops<S>::kind, n);
    int d = an->dim();
    Mat coord(d, d);
    for (int k = 0; k < d; ++k) {
        std::vector<double> c(d, 0.0);
        c[k] = 1;
        Element img = Ops<S>::from_mat(an, v * Ops<S>::to_mat(Element{an, std::move(c)}) * adjoint(v));
        for (int i = 0; i < d; ++i) coord(i, k) = img.coords[i];
    }
    return make_channel(Ops<S>::kind, n, n, std::move(coord));
}

BackendKind kind_of(const Element &x, const char *who) {
    switch (x.alg->family()) {
        case Family::RealSym: return BackendKind::RealQT;
        case Family::ComplexHerm: return BackendKind::ComplexQT;
        case Family::DirectSum: return BackendKind::Classical;
        default: break;
    }
    throw std::invalid_argument(std::string(who) + ": element does not belong to a backend algebra");
}

void require_backend(BackendKind kind, const Element &rho, const char *who) {
    if (kind == BackendKind::Classical || kind_of(rho, who) != kind)
        throw std::invalid_argument(std::string(who) + ": quantum backends only");
}

}  // namespace

PurificationPair purify(BackendKind kind, const Element &rho) {
    require_backend(kind, rho, "purify");
    return kind == BackendKind::RealQT ? purify_impl<double>(rho) : purify_impl<cplx>(rho);
}

Element marginal(const Element &composite, int level_a, int level_b, int keep) {
    if (keep != 0 && keep != 1) throw std::invalid_argument("marginal: keep must be 0 or 1");
    BackendKind kind = kind_of(composite, "marginal");
    if (kind == BackendKind::Classical) {
        if ((int)composite.coords.size() != level_a * level_b)
            throw std::invalid_argument("marginal: factor levels do not match");
        int nk = keep == 0 ? level_a : level_b;
        std::vector<double> q(nk, 0.0);
        for (int i = 0; i < level_a; ++i)
            for (int j = 0; j < level_b; ++j) q[keep == 0 ? i : j] += composite.coords[i * level_b + j];
        return {system_algebra(kind, nk), std::move(q)};
    }
    return kind == BackendKind::RealQT ? marginal_impl<double>(composite, level_a, level_b, keep)
                                       : marginal_impl<cplx>(composite, level_a, level_b, keep);
}

Element complementary_state(const PurificationPair &pair) {
    return marginal(pair.psi, pair.level, pair.level, 1);
}

SteeringResult steering_measurement(const PurificationPair &pair,
                                    const std::vector<Element> &ensemble) {
    if (ensemble.empty()) throw std::invalid_argument("steering_measurement: empty ensemble");
    return pair.kind == BackendKind::RealQT ? steering_impl<double>(pair, ensemble)
                                            : steering_impl<cplx>(pair, ensemble);
}

ZigzagPair zigzag_pair(BackendKind kind, const Element &rho) {
    require_backend(kind, rho, "zigzag_pair");
    return kind == BackendKind::RealQT ? zigzag_impl<double>(rho) : zigzag_impl<cplx>(rho);
}

Channel uniqueness_unitary(BackendKind kind, int level, const Element &psi,
                           const Element &psi_prime) {
    if (kind == BackendKind::Classical)
        throw std::invalid_argument("uniqueness_unitary: quantum backends only");
    if (!psi.alg->same_as(*psi_prime.alg))
        throw std::invalid_argument("uniqueness_unitary: purifications live on different composites");
    return kind == BackendKind::RealQT ? uniqueness_impl<double>(level, psi, psi_prime)
                                       : uniqueness_impl<cplx>(level, psi, psi_prime);
}

bool purification_exists(BackendKind kind, const Element &rho) {
    if (kind != BackendKind::Classical) return true;
    double top = 0;
    for (double p : rho.coords) top = std::max(top, p);
    return top > 1.0 - 1e-9;
}

}  // namespace optf
