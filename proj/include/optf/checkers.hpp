#pragma once

// Orchestration layer: runs the per-backend diagnostics and assembles the
// two-postulate verdict table, the classification-by-exclusion sweep, and
// the sampled purification checks into CheckReports.

#include <cstdint>
#include <vector>

#include "optf/report.hpp"
#include "optf/theory.hpp"

namespace optf {

// Pass iff the dimension identities hold and no product-tomography witness
// exists for any pair of the given levels. A failure carries the witness
// pair rho_plus / rho_minus in the composite algebra's coordinates.
CheckReport check_local_equivalence(BackendKind kind, const std::vector<int> &levels);

// Existence: purification_exists on the uniform mixture plus sampled states
// (the classical backend fails on the uniform mixture, which becomes the
// witness). Uniqueness, quantum backends only: for sampled full-rank states,
// a second purification built from a random reversible rotation of the
// purifying factor must be reachable via uniqueness_unitary, and the
// resulting channel must be a reversible channel.
CheckReport check_es_purification(BackendKind kind, const std::vector<int> &levels,
                                  int n_samples = 50, std::uint64_t seed = 1);

// Integer-exact sweep over single-system ranks n in [n_min, n_max]: each
// candidate self-dual homogeneous model of rank n is paired with the
// (rank, dim) = (n^2, dim^2) its composite would need, and compared against
// the admissible dimensions at that rank. Only the complex family survives.
CheckReport classification_exclusion(int n_min, int n_max);

// Runs both checks on all three backends and emits the 3x2 verdict table.
// Witnesses of failing entries are carried along, labeled "backend/label".
CheckReport postulate_table(const std::vector<int> &levels, int n_samples = 50,
                            std::uint64_t seed = 1);

// True iff the table matches the expected pattern: classical (pass, fail),
// real (fail, pass), complex (pass, pass).
bool postulate_table_matches_expected(const CheckReport &table_report);

}  // namespace optf
