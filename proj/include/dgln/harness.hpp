#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dgln/identity.hpp"
#include "dgln/mutation.hpp"

namespace dgln {

enum class BracketChoice { Double, Std, Dual };

struct CheckRecord {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string command;
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<CheckRecord> checks;
    std::vector<std::vector<Rat>> omega;          // when a log-canonicality check ran
    std::vector<std::string> omega_names;
    int exit_code = 0;  // 0 pass, 2 mathematical violation, 3 sampling failure

    bool passed() const;
    void add(const std::string& name, bool pass, const std::string& detail = "");
    std::string to_json(double elapsed_ms = -1.0) const;  // elapsed < 0: omit timing
};

// Draws points at which every function in `fns` is nonzero; up to 32 redraws
// per slot, then ResampleError.
std::vector<DoublePoint> sample_valid_points(const std::vector<EvalPtr>& fns, int n, int count, Rng& rng,
                                             bool dual);
std::vector<Mat> sample_valid_mats(const std::vector<EvalPtr>& fns, int n, int count, Rng& rng);

Report run_log_canonical(int n, int npoints, std::uint64_t seed, BracketChoice br, bool corrupt = false);
Report run_casimirs(int n, int npoints, std::uint64_t seed, BracketChoice br = BracketChoice::Double);
Report run_identity_campaign(int n, int trials, std::uint64_t seed);
Report run_corollary_campaign(int n, int trials, std::uint64_t seed);
Report run_mutate(int n, const std::vector<std::string>& sequence, int npoints, std::uint64_t seed,
                  bool check_regularity, bool dual);

struct QuiverExport {
    Quiver quiver;
    std::string dot;
    std::string json;
    std::size_t vertex_count = 0;   // non-isolated
    std::size_t isolated_count = 0;
    std::size_t arrow_count = 0;    // with multiplicity
};

QuiverExport export_quiver(int n, bool dual, bool diagonal);

}  // namespace dgln
