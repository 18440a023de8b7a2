#pragma once

#include <cstdint>
#include <optional>

#include <forbh/construction.hpp>

namespace forbh {

struct ArrowSide {
    Structure s;
    std::optional<std::vector<int>> part; // partite embeddings when present
};

struct ArrowInstance {
    ArrowSide c, b, a;
    long long r = 1;
};

enum class arrow_status { verified, refuted, infeasible };

const char* arrow_status_name(arrow_status s);

struct ArrowVerdict {
    arrow_status status = arrow_status::infeasible;
    unsigned long long colorings_total = 0;
    unsigned long long colorings_checked = 0; // deterministic: refutation index + 1
    int sites = 0;                            // |binom(C,A)|
    std::vector<Morphism> c_a, c_b, b_a;
    std::vector<uint32_t> witness_g;          // verified: monochromatic copy per coloring
    unsigned long long counterexample_index = 0;
    std::vector<int> counterexample;          // refuted: color per site
};

/// Exhaustive partition-arrow check: enumerates all r^|binom(C,A)| colourings
/// (colexicographic; coordinate 0 fastest) and searches binom(C,B) for a
/// monochromatic copy in each. Colouring ranges run in parallel; the least
/// counterexample index is reported regardless of scheduling.
ArrowVerdict arrow_check(const ArrowInstance& inst, unsigned long long budget = 1ull << 24,
                         int threads = 0);

/// Re-checks stored witnesses with zero search.
bool reverify_arrow_witnesses(const ArrowInstance& inst, const ArrowVerdict& v);

nlohmann::json arrow_verdict_json(const ArrowInstance& inst, const ArrowVerdict& v);

struct OracleReport {
    bool ok = true;
    int structures_checked = 0;
    nlohmann::json diffs = nlohmann::json::array();
};

/// Independent re-derivation of the canonical expansion: every membership is
/// recomputed by enumerating all |A|^|M| maps naively and diffed against
/// canonical_expansion. `inject_fault` flips one τ bit first (self-test).
OracleReport check_expansion_oracle(const Structure& a_sigma, const ExpandedContext& ctx,
                                    bool inject_fault = false);

struct SuiteReport {
    std::string suite;
    int scale = 0;
    bool pass = false;
    bool injected = false;
    long long cases = 0;
    unsigned long long colorings_checked = 0;
    long long runtime_ms = 0;
    nlohmann::json counterexample; // minimal failing case, null when passing
};

std::vector<std::string> suite_names();

/// Runs one named invariant family exhaustively at the given scale; with
/// `inject` a deliberate corruption is applied and the suite must fail.
SuiteReport run_property_suite(const std::string& name, int scale, bool inject = false);

nlohmann::json suite_report_json(const SuiteReport& r, bool include_runtime);

} // namespace forbh
