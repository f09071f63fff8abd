#pragma once

#include "optf/cone.hpp"
#include "optf/report.hpp"

#include <optional>
#include <string>
#include <string_view>

// Three concrete operational theories over the cone kernel.
//
// System assignment: classical level n is the simplex cone (direct sum of n
// one-dimensional blocks), real level n is the cone of n x n PSD symmetric
// matrices, complex level n the cone of n x n PSD Hermitian matrices.
// Composites always live at level m*n; the real backend composite is the full
// symmetric algebra on the tensor space, which is strictly larger than the
// span of product states. That deficit is what product_tomography_witness
// exhibits.

namespace optf {

enum class BackendKind { Classical, RealQT, ComplexQT };

std::string backend_name(BackendKind kind);
std::optional<BackendKind> backend_from_name(std::string_view name);

struct SystemInfo {
    int dim;       // linear dimension of the ambient space
    int info_dim;  // maximum number of perfectly distinguishable states
    int rank;
};

AlgebraPtr system_algebra(BackendKind kind, int level);
SystemInfo system_info(BackendKind kind, int level);

// Composite of two systems. embed maps kron(coords_A, coords_B) to composite
// coordinates; its columns are the product basis, orthonormal by construction,
// so col_rank(embed) counts the dimension spanned by product elements.
struct CompositeSystem {
    AlgebraPtr algebra;
    int level;
    Mat embed;
};

CompositeSystem compose_systems(BackendKind kind, int level_a, int level_b);
Element product_state(BackendKind kind, const Element &a, const Element &b);

CheckReport dimension_identity_check(BackendKind kind, int level_a, int level_b);

// Two distinct composite states that product effects cannot tell apart.
struct TomographyWitness {
    Element rho_plus;
    Element rho_minus;
};

std::optional<TomographyWitness> product_tomography_witness(BackendKind kind, int level_a, int level_b);

// Maximal family of perfectly distinguishable states together with the
// measurement that distinguishes them.
struct DistinguishableFamily {
    std::vector<Element> states;
    std::vector<EffectFunctional> effects;
};

DistinguishableFamily informational_dimension(BackendKind kind, int level);

struct Channel {
    BackendKind kind;
    int level_in;
    int level_out;
    LinearMap map;
    bool is_deterministic = false;  // preserves the deterministic effect
    bool is_reversible = false;     // channel with a channel inverse
};

// Wraps a coordinate matrix as a channel and fills both flags.
Channel make_channel(BackendKind kind, int level_in, int level_out, Mat m);

Element apply_channel(const Channel &ch, const Element &x);

// Deterministic-effect preservation for every backend; classical maps must in
// addition be entrywise nonnegative and complex maps must have a PSD Choi
// element. The real backend carries no complete-positivity audit here.
bool is_channel(const Channel &ch, double tol = 1e-9);
bool is_reversible_channel(const Channel &ch, double tol = 1e-9);

// Choi element (1/n_in) sum_ij E_ij (x) T(E_ij), complex backend only.
Element choi_element(const Channel &ch);

Channel discard_and_reprepare(BackendKind kind, int level_in, const Element &tau);

bool is_effect(BackendKind kind, int level, const EffectFunctional &f, double tol = 1e-9);
bool is_measurement(BackendKind kind, int level, const std::vector<EffectFunctional> &parts,
                    double tol = 1e-9);

Element random_density(BackendKind kind, int level, Rng &rng);
Element random_internal_density(BackendKind kind, int level, Rng &rng);
Element random_pure(BackendKind kind, int level, Rng &rng);
Channel random_channel(BackendKind kind, int level, Rng &rng, int kraus_terms = 3);
Channel random_reversible(BackendKind kind, int level, Rng &rng);

// k cone functionals summing exactly to the deterministic effect.
std::vector<EffectFunctional> random_effect_resolution(BackendKind kind, int level, int k, Rng &rng);

}  // namespace optf
