#pragma once

// Structured results for every verification routine: a CheckReport records
// what was checked, against which backend/levels, the verdict, and the
// witnesses that settle it. Serialization is deterministic so a fixed seed
// reproduces byte-identical output.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace optf {

struct Witness {
    std::string label;
    std::string algebra;         // descriptor of the algebra the coordinates live in
    std::vector<double> coords;  // may be empty for purely numeric witnesses
};

// One row of a classification sweep: a candidate algebra for a single system,
// the (rank, dim) its composite would need, and the admissible dimensions at
// that rank. `reason` holds the integer arithmetic that settles it.
struct ExclusionRecord {
    std::string candidate;
    int composite_rank = 0;
    long long composite_dim = 0;
    std::vector<long long> admissible_dims;
    bool excluded = true;
    std::string reason;
};

// One row of the two-postulate verdict table.
struct PostulateRow {
    std::string backend;
    bool local_equivalence = false;
    bool es_purification = false;
};

struct CheckReport {
    std::string check;
    std::string backend;  // backend name, or an algebra descriptor for algebra-level checks
    std::vector<int> levels;
    bool pass = false;
    std::vector<Witness> witnesses;
    std::map<std::string, double> tolerances;
    std::uint64_t seed = 0;
    int samples = 0;
    double runtime_ms = 0.0;
    std::vector<ExclusionRecord> records;
    std::vector<PostulateRow> table;
};

std::string emit_report_json(const CheckReport &r);
std::string emit_report_json(const std::vector<CheckReport> &rs);
std::string emit_report_markdown(const CheckReport &r);
CheckReport parse_report_json(const std::string &text);

}  // namespace optf
