#include "optf/cone.hpp"

#include <cmath>
#include <limits>

namespace optf {

namespace {

double elem_norm(const Element &x) { return std::sqrt(std::max(trace_inner(x, x), 0.0)); }

double min_eigenvalue(const Element &x) {
    auto sd = spectral_decompose(x);
    return sd.eigenvalues.back();
}

}  // namespace

bool cone_member(const ConeContext &ctx, const Element &x, double *margin) {
    if (!ctx.alg->spectral_supported())
        throw std::domain_error("cone_member: no spectral support for " + ctx.alg->describe());
    double m = min_eigenvalue(x);
    if (margin) *margin = m;
    return m >= -ctx.member_tol * (1 + elem_norm(x));
}

bool cone_order(const ConeContext &ctx, const Element &x, const Element &y) {
    return cone_member(ctx, y - x);
}

bool is_internal(const ConeContext &ctx, const Element &rho) {
    double tr = trace_form(rho);
    if (std::abs(tr - 1) > ctx.norm_tol * (1 + std::abs(tr)))
        throw std::invalid_argument("is_internal: state is not normalized (trace " + std::to_string(tr) + ")");
    return min_eigenvalue(rho) > ctx.internal_tol;
}

EffectFunctional dagger(const Element &x) { return {x}; }

Element undagger(const EffectFunctional &f) { return f.riesz; }

double apply_effect(const EffectFunctional &f, const Element &x) { return trace_inner(f.riesz, x); }

EffectFunctional deterministic_effect(const AlgebraPtr &a) { return {unit_element(a)}; }

CheckReport self_duality_check(const ConeContext &ctx, int samples, std::uint64_t seed,
                               const std::vector<Element> &claimed_dual) {
    CheckReport r;
    r.check = "self_duality";
    r.backend = ctx.alg->describe();
    r.seed = seed;
    r.samples = samples;
    r.tolerances["pairing"] = ctx.member_tol;

    Rng rng(seed);
    double worst = std::numeric_limits<double>::infinity();
    bool ok = true;

    for (int s = 0; s < samples; ++s) {
        Element gx = gauss_element(ctx.alg, rng), gy = gauss_element(ctx.alg, rng);
        Element x = jordan_product(gx, gx), y = jordan_product(gy, gy);
        double ip = trace_inner(x, y);
        worst = std::min(worst, ip);
        if (ip < -ctx.member_tol * (1 + elem_norm(x)) * (1 + elem_norm(y))) {
            ok = false;
            r.witnesses.push_back({"negative_pairing_left", ctx.alg->describe(), x.coords});
            r.witnesses.push_back({"negative_pairing_right", ctx.alg->describe(), y.coords});
            break;
        }
        // a cone element's own dagger is a dual element and must map back in
        if (!cone_member(ctx, undagger(dagger(x)))) {
            ok = false;
            r.witnesses.push_back({"dagger_roundtrip_escaped_cone", ctx.alg->describe(), x.coords});
            break;
        }
    }

    for (const auto &w : claimed_dual) {
        if (!ok) break;
        auto sd = spectral_decompose(w);
        const Element &pmin = sd.frame.back();
        double pairing = trace_inner(w, pmin);  // equals the least eigenvalue
        worst = std::min(worst, pairing);
        if (pairing < -ctx.member_tol * (1 + elem_norm(w))) {
            ok = false;
            r.witnesses.push_back({"claimed_dual_riesz", ctx.alg->describe(), w.coords});
            r.witnesses.push_back({"cone_element_with_negative_value", ctx.alg->describe(), pmin.coords});
            break;
        }
        if (!cone_member(ctx, undagger(EffectFunctional{w}))) {
            ok = false;
            r.witnesses.push_back({"dual_functional_outside_cone", ctx.alg->describe(), w.coords});
            break;
        }
    }

    r.tolerances["worst_margin"] = std::isfinite(worst) ? worst : 0.0;
    r.pass = ok;
    return r;
}

LinearMap identity_map(const AlgebraPtr &a) { return {a, a, Mat::identity(a->dim())}; }

Element apply(const LinearMap &f, const Element &x) {
    if (!f.domain->same_as(*x.alg)) throw std::invalid_argument("apply: element not in the map's domain");
    std::vector<double> out(f.codomain->dim(), 0.0);
    for (int i = 0; i < f.m.rows; ++i) {
        double s = 0;
        for (int j = 0; j < f.m.cols; ++j) s += f.m(i, j) * x.coords[j];
        out[i] = s;
    }
    return {f.codomain, std::move(out)};
}

LinearMap compose(const LinearMap &g, const LinearMap &f) {
    if (!g.domain->same_as(*f.codomain)) throw std::invalid_argument("compose: domain/codomain mismatch");
    return {f.domain, g.codomain, g.m * f.m};
}

LinearMap adjoint_map(const LinearMap &f) {
    const auto &gd = f.domain->gram_diag();
    const auto &gc = f.codomain->gram_diag();
    Mat m(f.m.cols, f.m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m(i, j) = f.m(j, i) * gc[j] / gd[i];
    return {f.codomain, f.domain, std::move(m)};
}

LinearMap quadratic_rep_map(const Element &y) {
    const auto &a = y.alg;
    int d = a->dim();
    Mat m(d, d);
    Element y2 = jordan_product(y, y);
    for (int k = 0; k < d; ++k) {
        std::vector<double> c(d, 0.0);
        c[k] = 1;
        Element bk{a, std::move(c)};
        Element img = 2.0 * jordan_product(y, jordan_product(y, bk)) - jordan_product(y2, bk);
        for (int i = 0; i < d; ++i) m(i, k) = img.coords[i];
    }
    return {a, a, std::move(m)};
}

LinearMap homogeneity_map(const Element &tau, const Element &rho) {
    if (!tau.alg->same_as(*rho.alg)) throw std::invalid_argument("homogeneity_map: mismatched algebras");
    ConeContext ctx{tau.alg};
    auto check_internal = [&](const Element &x, const char *who) {
        double tr = trace_form(x);
        if (std::abs(tr - 1) > ctx.norm_tol * (1 + std::abs(tr)) || min_eigenvalue(x) <= ctx.internal_tol)
            throw std::domain_error(std::string("homogeneity_map: ") + who + " is not an internal state");
    };
    check_internal(tau, "tau");
    check_internal(rho, "rho");
    Element rho_half = element_function(rho, [](double v) { return std::sqrt(std::max(v, 0.0)); });
    Element tau_inv_half = element_function(tau, [](double v) { return 1.0 / std::sqrt(v); });
    return compose(quadratic_rep_map(rho_half), quadratic_rep_map(tau_inv_half));
}

LinearMap pure_state_automorphism(const Element &psi, const Element &phi) {
    const auto &a = psi.alg;
    if (!a->same_as(*phi.alg)) throw std::invalid_argument("pure_state_automorphism: mismatched algebras");
    if (idempotent_class(psi, 1e-7) != IdempotentClass::Primitive ||
        idempotent_class(phi, 1e-7) != IdempotentClass::Primitive)
        throw std::invalid_argument("pure_state_automorphism: inputs must be primitive idempotents");

    int d = a->dim();
    Mat m(d, d);
    if (a->family() == Family::ComplexHerm) {
        int n = a->param();
        auto eu = eig_self_adjoint(complex_matrix(psi));
        auto ev = eig_self_adjoint(complex_matrix(phi));
        std::vector<cplx> u(n), v(n);
        for (int i = 0; i < n; ++i) {
            u[i] = eu.vectors(i, 0);
            v[i] = ev.vectors(i, 0);
        }
        cplx c(0);
        for (int i = 0; i < n; ++i) c += std::conj(v[i]) * u[i];
        if (std::abs(c) > 1e-14)
            for (auto &z : u) z *= std::conj(c) / std::abs(c);
        double nd = 0;
        for (int i = 0; i < n; ++i) nd += std::norm(u[i] - v[i]);
        nd = std::sqrt(nd);
        CMat uu = CMat::identity(n);
        if (nd > 1e-8) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    uu(i, j) -= 2.0 * (u[i] - v[i]) * std::conj(u[j] - v[j]) / (nd * nd);
        }
        for (int k = 0; k < d; ++k) {
            std::vector<double> c0(d, 0.0);
            c0[k] = 1;
            CMat bk = complex_matrix(Element{a, std::move(c0)});
            Element img = element_from_complex_matrix(a, uu * bk * adjoint(uu));
            for (int i = 0; i < d; ++i) m(i, k) = img.coords[i];
        }
    } else if (a->family() == Family::RealSym) {
        int n = a->param();
        auto eu = jacobi_eigensym(real_matrix(psi));
        auto ev = jacobi_eigensym(real_matrix(phi));
        std::vector<double> u(n), v(n);
        for (int i = 0; i < n; ++i) {
            u[i] = eu.vectors(i, 0);
            v[i] = ev.vectors(i, 0);
        }
        double c = 0;
        for (int i = 0; i < n; ++i) c += v[i] * u[i];
        if (c < 0)
            for (auto &z : u) z = -z;
        double nd = 0;
        for (int i = 0; i < n; ++i) nd += (u[i] - v[i]) * (u[i] - v[i]);
        nd = std::sqrt(nd);
        Mat uu = Mat::identity(n);
        if (nd > 1e-8) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) uu(i, j) -= 2.0 * (u[i] - v[i]) * (u[j] - v[j]) / (nd * nd);
        }
        for (int k = 0; k < d; ++k) {
            std::vector<double> c0(d, 0.0);
            c0[k] = 1;
            Mat bk = real_matrix(Element{a, std::move(c0)});
            Element img = element_from_real_matrix(a, uu * bk * transpose(uu));
            for (int i = 0; i < d; ++i) m(i, k) = img.coords[i];
        }
    } else {
        throw std::invalid_argument("pure_state_automorphism: matrix families only");
    }
    return {a, a, std::move(m)};
}

}  // namespace optf
