#pragma once

#include "optf/theory.hpp"

#include <variant>

// Purification machinery for the two quantum backends, plus the classical
// negative case. The matricization convention is fixed once here: a state rho
// purifies to psi = vec(m) vec(m)^dagger with m the PSD square root of rho in
// the computational basis and vec taken row-major, so the first marginal of
// psi is m m^dagger = rho and the second marginal is the transpose of rho.
// Steering and zigzag formulas below are the unique ones compatible with that
// choice; the tests pin them against brute-force index contractions.

namespace optf {

struct PurificationPair {
    BackendKind kind;
    int level;
    Element rho;                // marginal on the first factor
    Element psi;                // pure state of the level*level composite
    std::variant<Mat, CMat> m;  // matricization of psi
};

PurificationPair purify(BackendKind kind, const Element &rho);

// Partial trace of a two-factor composite; keep = 0 returns the first-factor
// marginal, keep = 1 the second. The backend is inferred from the algebra.
Element marginal(const Element &composite, int level_a, int level_b, int keep);

Element complementary_state(const PurificationPair &pair);

struct SteeringResult {
    std::vector<Element> effects;   // measurement on the purifying factor
    std::vector<Element> ensemble;  // states it steers the first factor into
};

// Given an ensemble summing to the purified marginal, returns the measurement
// on the purifying factor that reproduces it. Rank-deficient marginals get
// the kernel projector folded into the first outcome.
SteeringResult steering_measurement(const PurificationPair &pair,
                                    const std::vector<Element> &ensemble);

struct ZigzagPair {
    Element effect;  // composite effect, 0 <= effect <= unit
    double p;        // snake probability, in (0, 1]
};

// Effect and probability making both bent-wire composites act as p times the
// identity. Requires an internal normalized state.
ZigzagPair zigzag_pair(BackendKind kind, const Element &rho);

// Reversible channel on the purifying factor mapping one purification of a
// state onto another. Verifies its own postcondition before returning.
Channel uniqueness_unitary(BackendKind kind, int level, const Element &psi,
                           const Element &psi_prime);

bool purification_exists(BackendKind kind, const Element &rho);

}  // namespace optf
