#pragma once

#include <map>
#include <string>
#include <vector>

#include "ffgrowth/field.hpp"
#include "ffgrowth/fset.hpp"
#include "ffgrowth/wide.hpp"

namespace ffgrowth {

enum class Family {
    uniform_random,
    interval,
    arithmetic_progression,
    geometric_progression,
    multiplicative_subgroup,
    subfield_coset,
};

enum class Experiment {
    sl2_product,
    heis2_zero,
    heis2_full,
    heis1,
    energies,
    incidence,
    inequalities,
};

std::string family_name(Family f);
Family family_from_name(const std::string& s);
std::string experiment_name(Experiment e);
Experiment experiment_from_name(const std::string& s);

struct Budgets {
    u64 sl2_pairs = 200000000;
    u64 heis_pairs = 200000000;
    u64 collision_tuples = 20000000;
};

// One experiment run: a field, a set family, a size sweep, and a seed.
// The seed is mandatory; there is no entropy default anywhere.
struct ExperimentConfig {
    u64 p = 0;
    unsigned n = 1;
    Family family = Family::uniform_random;
    Experiment experiment = Experiment::energies;
    std::vector<u64> sizes;
    u64 trials = 1;
    u64 seed = 0;
    bool exclude_zero = true;
    Budgets budgets;
};

// JSON config. Required keys: p, experiment, sizes, seed. Optional with
// defaults: n (1), family ("uniform_random"), trials (1), exclude_zero
// (true), budgets. seed and budgets may be numbers or decimal strings.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg); // one line, canonical

// Seed for (size index, trial index), derived so trials are independent
// streams: mix64(seed ^ mix64(size_index * 2^32 + trial_index)).
u64 trial_seed(u64 seed, u64 size_index, u64 trial_index);

// Deterministic set generation. uniform_random draws below q with
// rejection; interval is {1..size} (or {0..size-1} with zero allowed);
// progressions retry derived parameters until the set has full size;
// multiplicative_subgroup wants size | q-1; subfield_coset wants a
// subfield of size `size` (plus the zero that gets dropped when
// exclude_zero is set).
FSet generate_set(Family family, u64 size, u64 seed, const FieldCtx& ctx,
                  bool exclude_zero = true);

// One serialized cell. Integers stay exact decimal text all the way to
// the output; bools and doubles keep their type for JSON.
struct CellValue {
    enum class Kind { integer, boolean, floating, text, empty };
    Kind kind = Kind::empty;
    std::string text; // integer digits or free text
    bool flag = false;
    double value = 0.0;

    static CellValue of_int(u128 v);
    static CellValue of_bool(bool b);
    static CellValue of_double(double d);
    static CellValue of_text(std::string s);
    static CellValue none();

    std::string csv() const;
};

struct TrialResult {
    u64 size = 0;
    u64 trial = 0;
    u64 seed = 0;
    std::vector<Elem> set_elements;
    std::vector<std::pair<std::string, CellValue>> cols; // experiment columns
    std::map<std::string, double> numeric;               // fit inputs
    bool certs_ok = true;
};

// Least squares of ln(value) against ln(|A|) over trials with |A| >= 2
// and value >= 1. Slopes are descriptive: no target exponent is asserted.
struct ExponentFit {
    std::string target;
    double slope = 0.0;
    double intercept = 0.0;
    double rss = 0.0;
    u64 samples = 0;
};

struct RunResult {
    ExperimentConfig config;
    std::vector<std::string> columns; // experiment column order
    std::vector<TrialResult> rows;    // sorted by (size, trial)
    std::vector<ExponentFit> fits;
    u64 cert_failures = 0;
};

RunResult run_experiment(const ExperimentConfig& cfg);

// CSV: '# config: ...' comment, header row, one row per trial, '# fit:'
// trailer lines. JSON: schema "ffgrowth/1", config echo, rows, fits; all
// exact integers as decimal strings.
std::string to_csv(const RunResult& r);
std::string to_json(const RunResult& r);

// Batch run of every constant-1 certificate that applies to the generated
// sets. Failures carry the full reproducing input; infeasible
// preconditions (0 in A for the matrix checks, oversized inputs) are
// skipped, not failed.
struct VerifySummary {
    u64 checks_run = 0;
    u64 failures = 0;
    u64 skipped = 0;
    std::vector<std::string> failure_details;
};
VerifySummary verify_suite(const ExperimentConfig& cfg);

} // namespace ffgrowth
