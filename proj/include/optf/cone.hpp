#pragma once

// Order-theoretic layer over the algebra kernel: positive-cone membership,
// the trace-form pairing between states and effects, self-duality
// certification, and the order-automorphism (homogeneity) transports.

#include "optf/algebra.hpp"
#include "optf/report.hpp"

namespace optf {

struct ConeContext {
    AlgebraPtr alg;
    double member_tol = 1e-9;
    double internal_tol = 1e-9;
    double norm_tol = 1e-8;
};

// Spectral test: smallest eigenvalue >= -member_tol * (1 + |x|). Throws
// std::domain_error for algebras without spectral support.
bool cone_member(const ConeContext &ctx, const Element &x, double *margin = nullptr);

// x <= y in the cone order
bool cone_order(const ConeContext &ctx, const Element &x, const Element &y);

// Strict interior test for a normalized state; throws std::invalid_argument
// when trace_form(rho) is not 1 within norm_tol.
bool is_internal(const ConeContext &ctx, const Element &rho);

struct EffectFunctional {
    Element riesz;
};

EffectFunctional dagger(const Element &x);
Element undagger(const EffectFunctional &f);
double apply_effect(const EffectFunctional &f, const Element &x);
EffectFunctional deterministic_effect(const AlgebraPtr &a);

// Samples cone pairs for nonnegative pairing and screens functionals for dual
// membership via the spectrum of their Riesz vectors; any `claimed_dual`
// functional that fails produces a fail verdict with the violating frame
// member as witness. The worst pairing margin lands in tolerances.
CheckReport self_duality_check(const ConeContext &ctx, int samples, std::uint64_t seed,
                               const std::vector<Element> &claimed_dual = {});

struct LinearMap {
    AlgebraPtr domain, codomain;
    Mat m;  // codomain dim x domain dim, acting on coordinates
};

LinearMap identity_map(const AlgebraPtr &a);
Element apply(const LinearMap &f, const Element &x);
LinearMap compose(const LinearMap &g, const LinearMap &f);  // g after f
// Adjoint with respect to the trace inner products of domain and codomain.
LinearMap adjoint_map(const LinearMap &f);
// Matrix of P_y acting on coordinates.
LinearMap quadratic_rep_map(const Element &y);

// Order isomorphism carrying tau to rho: P_{rho^(1/2)} o P_{tau^(-1/2)}.
// Both inputs must be internal states; throws std::domain_error otherwise.
LinearMap homogeneity_map(const Element &tau, const Element &rho);

// Unit-preserving Jordan automorphism mapping one primitive idempotent to
// another, for the real and complex matrix families.
LinearMap pure_state_automorphism(const Element &psi, const Element &phi);

}  // namespace optf
