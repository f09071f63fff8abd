#pragma once

// Finite-dimensional Euclidean Jordan algebras: the five simple families and
// their direct sums, with elements held as real coordinate vectors.
//
// Coordinate conventions (fixed, load-bearing for every layer above):
//   RealSym(r):     r diagonal entries, then for each i<j (row-major order)
//                   the coefficient of (E_ij + E_ji)/sqrt(2).
//   ComplexHerm(r): r diagonal entries, then per i<j the pair
//                   (sqrt(2)*Re X_ij, sqrt(2)*Im X_ij).
//   QuatHerm(r):    r diagonal entries, then per i<j the four quaternion
//                   components of X_ij, each scaled by sqrt(2).
//   Spin(d):        (t, v) with v in R^(d-1); the trace inner product is
//                   2*(s*t + u.v), so this basis is NOT orthonormal.
//   OctHerm3:       3 diagonal entries, then the octonion components of
//                   X_01, X_02, X_12, each scaled by sqrt(2).
//   DirectSum:      concatenation of the part coordinates, in order.
// With these scalings the coordinate dot product equals the trace inner
// product everywhere except on Spin blocks, where the Gram matrix is 2I.

#include "optf/linalg.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>

namespace optf {

enum class Family { RealSym, ComplexHerm, QuatHerm, Spin, OctHerm3, DirectSum };

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra {
  public:
    static AlgebraPtr real_sym(int r);
    static AlgebraPtr complex_herm(int r);
    static AlgebraPtr quat_herm(int r);
    static AlgebraPtr spin(int d);  // d >= 2
    static AlgebraPtr oct_herm3();
    static AlgebraPtr direct_sum(std::vector<AlgebraPtr> parts);

    Family family() const { return family_; }
    int rank() const { return rank_; }
    int dim() const { return dim_; }
    // matrix side for the three matrix families, total dimension for Spin
    int param() const { return n_; }
    const std::vector<AlgebraPtr> &parts() const { return parts_; }
    int part_offset(int k) const { return offsets_[k]; }
    bool spectral_supported() const { return spectral_; }
    const std::string &describe() const { return desc_; }
    bool same_as(const Algebra &other) const { return desc_ == other.desc_; }

    // diagonal of the trace-form Gram matrix in these coordinates
    const std::vector<double> &gram_diag() const { return gram_; }
    const std::vector<double> &unit_coords() const { return unit_; }

  private:
    Algebra() = default;
    Family family_ = Family::RealSym;
    int n_ = 0, rank_ = 0, dim_ = 0;
    bool spectral_ = true;
    std::vector<AlgebraPtr> parts_;
    std::vector<int> offsets_;
    std::vector<double> gram_, unit_;
    std::string desc_;
    static AlgebraPtr finish(Algebra a);
};

struct Element {
    AlgebraPtr alg;
    std::vector<double> coords;
};

Element make_element(AlgebraPtr a, std::vector<double> coords);
Element zero_element(const AlgebraPtr &a);
Element unit_element(const AlgebraPtr &a);
Element gauss_element(const AlgebraPtr &a, Rng &rng);

Element operator+(const Element &x, const Element &y);
Element operator-(const Element &x, const Element &y);
Element operator*(double s, const Element &x);

Element jordan_product(const Element &x, const Element &y);
double trace_form(const Element &x);
double trace_inner(const Element &x, const Element &y);
// P_y(z) = 2 y o (y o z) - (y o y) o z
Element quadratic_rep(const Element &y, const Element &z);

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // descending, one entry per frame member
    std::vector<Element> frame;       // orthogonal primitive idempotents summing to the unit
};

// Throws std::domain_error when the algebra has no spectral support
// (OctHerm3 and any direct sum containing it).
SpectralDecomposition spectral_decompose(const Element &x);

Element element_function(const Element &x, const std::function<double(double)> &f);

enum class IdempotentClass { Zero, Primitive, NonPrimitiveIdempotent, NotIdempotent };
IdempotentClass idempotent_class(const Element &x, double tol = 1e-9);

// True when the ideal generated by a primitive idempotent is the whole
// algebra. On failure, *witness (if given) receives a nonzero element of the
// proper ideal found.
bool is_simple(const AlgebraPtr &a, Element *witness = nullptr);

// All simple families consistent with the given rank and dimension; Spin only
// for rank 2 with dim >= 5 and dim != 6, the exceptional algebra only at
// (3, 27). Order: RealSym, ComplexHerm, QuatHerm, Spin, OctHerm3.
std::vector<AlgebraPtr> classify_simple(int rank, int dim);

// Matrix views of the two associative families the physical backends use.
Mat real_matrix(const Element &x);                                     // RealSym
Element element_from_real_matrix(const AlgebraPtr &a, const Mat &m);
CMat complex_matrix(const Element &x);                                 // ComplexHerm
Element element_from_complex_matrix(const AlgebraPtr &a, const CMat &m);

// Scalar arithmetic helpers exposed for verification: quaternion and octonion
// products in component form (octonions via Cayley-Dickson doubling).
std::array<double, 4> quat_mul(const std::array<double, 4> &p, const std::array<double, 4> &q);
std::array<double, 8> oct_mul(const std::array<double, 8> &p, const std::array<double, 8> &q);

}  // namespace optf
