#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfr/bfr.hpp"
#include "bfr/bounds.hpp"
#include "bfr/rational.hpp"

namespace bfr::harness {

struct CategoryStats {
    long attempted = 0, passed = 0;
    bool exhaustive = false;
};

struct ScenarioFailure {
    std::string category;
    std::string scenario;  // human-readable choice of blocks and nodes
    std::uint64_t seed = 0;
    std::string error;
};

struct ScenarioReport {
    std::string instance;
    std::uint64_t seed = 0;
    CategoryStats collect, repair, post_repair;
    // Repair downloads in symbols over all repair scenarios.
    std::uint64_t repair_min = 0, repair_max = 0;
    std::uint64_t block_min = 0, block_max = 0;
    // (alpha, gamma) of the instance, and the regime corners for its M.
    Rational alpha, gamma;
    std::optional<bounds::CornerPoints> predicted;
    std::string corner_match;  // "MSR", "MBR" or "none"
    std::vector<ScenarioFailure> failures;

    bool ok() const { return failures.empty(); }
    std::string to_text() const;
};

// Exercises data collection, repair and repair-then-collect chains. A category
// is enumerated exhaustively when its scenario count is at most `budget`, else
// `budget` scenarios are drawn; scenario i uses seed mix(seed, i).
ScenarioReport verify_exhaustive(const core::BfrCode& code, const core::ShardSet& shards, long budget,
                                 std::uint64_t seed);

// Seed of scenario `index` under `seed` (splitmix64 finalizer).
std::uint64_t scenario_seed(std::uint64_t seed, std::uint64_t index);

enum class Scheme { bfr_msr, bfr_mbr, msr, mbr, msr_sym, mbr_sym };
const char* scheme_name(Scheme s);

struct DelayQuery {
    int b = 7, n = 21, sigma = 3;
    // Bandwidth of each of the b - sigma helper blocks; empty means all equal to 1.
    std::vector<Rational> bw;
};

struct DelayRow {
    Rational overhead;  // n alpha / M
    Rational delay;     // normalized by M
    Scheme scheme;
    int k = 0, d = 0;
    Rational alpha, beta;  // with M = 1
    // BFR rows only.
    int rho = -1, k_c = 0, d_r = 0;
};

// Every feasible parameter set of each scheme, sorted by (scheme, k, d, rho).
// BFR: rho, k_c, d_r with a valid regime and a finite corner; delay is
// max over helper blocks of d_r beta / BW_i. Regenerating codes: k <= d <= n -
// sigma c, delay averaged over all allocations of d helpers to the b - sigma
// blocks with at most c per block (SYM: the most even allocation).
std::vector<DelayRow> repair_delay_sweep(const DelayQuery& q);

// Lower envelope: the least delay at each overhead value, sorted by overhead.
std::vector<std::pair<Rational, Rational>> lower_envelope(const std::vector<DelayRow>& rows, Scheme s);

// Lower convex hull of points sorted by x, and its value at x (nullopt outside).
std::vector<std::pair<Rational, Rational>> lower_hull(const std::vector<std::pair<Rational, Rational>>& pts);
std::optional<Rational> hull_value(const std::vector<std::pair<Rational, Rational>>& hull, const Rational& x);

// One overhead value present in the BFR-MBR, MBR and MBR-SYM envelopes.
struct EnvelopePoint {
    Rational overhead;
    Rational bfr_mbr, mbr, mbr_sym;                 // envelope minima
    Rational hull_bfr_mbr, hull_mbr, hull_mbr_sym;  // lower convex hulls
    bool pointwise_equal() const { return bfr_mbr == mbr && mbr == mbr_sym; }
    bool hull_equal() const { return hull_bfr_mbr == hull_mbr && hull_mbr == hull_mbr_sym; }
};

// Envelopes restricted to overhead < max_overhead, compared at shared overheads.
std::vector<EnvelopePoint> compare_mbr_envelopes(const std::vector<DelayRow>& rows, const Rational& max_overhead);

// CSV with header `overhead,delay,scheme,k,d,alpha,beta`. Numbers are decimals
// with 12 places, or exact "p/q" rationals when `exact`.
std::string delay_csv(const std::vector<DelayRow>& rows, bool exact);

// CSV with header `alpha,gamma,source`.
std::string tradeoff_csv(const std::vector<bounds::TradeoffPoint>& pts, bool exact);

}  // namespace bfr::harness
