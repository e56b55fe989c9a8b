#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfr/bfr.hpp"
#include "bfr/rational.hpp"

namespace bfr::bounds {

using core::Regime;
using core::SystemParams;

// Repair events (block, node), 0-based. A valid order has the same number of
// events in each block it touches.
struct FailureOrder {
    std::vector<std::pair<int, int>> events;
    std::string to_string() const;
};

struct TradeoffPoint {
    Rational alpha, gamma;
    std::string source;
};

struct BoundResult {
    Rational value;
    Regime regime;
    // The regime's min-cut order is conjectured, not proven, to be minimal.
    bool conjectured = false;
};

// Closed-form file size bound for the regime of p (structure only: n, b, k,
// rho, d, sigma), evaluated at per-node storage alpha and per-helper download
// beta. The Case I.A form is only claimed at alpha = M/k and alpha = d*beta.
BoundResult file_size_bound(const SystemParams& p, const Rational& alpha, const Rational& beta);

struct CornerPoints {
    TradeoffPoint msr, mbr;
    bool conjectured = false;
    // Which closed form produced the values.
    std::string display;
};

// MSR and MBR corners for file size M. For b = 2, rho = 0, sigma = 1 the two-block
// forms apply and k may be odd; otherwise p must pass core::validate_params.
// Throws ParamError when a corner has no finite bandwidth.
CornerPoints corner_points(const SystemParams& p, const Rational& M);

// Classical regenerating-code corners, for comparison.
Rational gamma_msr_classical(const Rational& M, int k, int d);
Rational gamma_mbr_classical(const Rational& M, int k, int d);

struct OracleOptions {
    // All orders when true; otherwise `samples` random orders drawn with `seed`.
    bool exhaustive = true;
    int samples = 64;
    std::uint64_t seed = 1;
    int max_events = 10;
    // Enumerate every helper choice with a full max-flow per graph instead of the
    // reduced search. Only for tiny instances.
    bool brute_force_topology = false;
    // Also let the data collector attach to nodes that were never repaired.
    bool unrepaired_dc = false;
};

struct OracleResult {
    Rational min_cut;
    Rational max_over_orders;
    bool order_invariant = true;
    FailureOrder argmin;
    std::size_t orders = 0;
    // Minimum when the collector may also attach to never-repaired nodes.
    std::optional<Rational> unrepaired_dc_min;
};

// Minimum over failure orders and helper topologies of the information flow
// graph's max-flow, with capacities alpha (storage) and beta (per helper).
OracleResult mincut_oracle(const SystemParams& p, const Rational& alpha, const Rational& beta,
                           const OracleOptions& opt = {});

// Min over helper topologies of the max-flow for one order. `unrepaired[j]`
// collector attachments in block j go to never-failed nodes.
Rational order_cut(const SystemParams& p, const Rational& alpha, const Rational& beta, const FailureOrder& order,
                   bool brute_force_topology = false, const std::vector<int>& unrepaired = {});

// Exact max-flow on a directed graph with integer capacities.
class MaxFlow {
public:
    static constexpr std::int64_t kInf = std::int64_t(1) << 60;
    explicit MaxFlow(int vertices);
    void add_edge(int from, int to, std::int64_t cap);
    std::int64_t run(int s, int t);

private:
    struct Edge {
        int to;
        std::int64_t cap;
    };
    bool bfs(int s, int t);
    std::int64_t dfs(int v, int t, std::int64_t f);
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> level_, it_;
};

// Trade-off curve for b = 2, rho = 0, sigma = 1: for `steps`+1 evenly spaced
// gamma between the MBR and MSR corners, the least alpha the two-block min-cut allows.
std::vector<TradeoffPoint> tradeoff_curve(const SystemParams& p, const Rational& M, int steps);

// Sub-code dimension k~ at which the relaxed code on the affine plane of
// order p (v = p^2 points, blocks of p, b = p + 1 parallel classes) meets the
// corner of `regime`. Every case is rational except MBR with d_r < k_c, where
// k~ solves (b-sigma) x^2 - (2d(b-rho-1)/p + b-sigma) x + (b-rho)(b-rho-1)d^2/(v(b-sigma)) = 0
// and both roots are returned.
struct RelaxedKtilde {
    std::optional<Rational> exact;
    std::vector<double> roots;
};
RelaxedKtilde relaxed_optimal_ktilde(bool mbr, int p, int rho, int sigma, Regime regime, int d);

struct GapRow {
    int k = 0, d = 0;
    Rational ratio;  // gamma of the two-block BFR-MSR corner over classical MBR gamma
};

// Rows for every k in [k_lo, k_hi] and d in [k, 2k].
std::vector<GapRow> msr_mbr_gap_report(int k_lo, int k_hi);

}  // namespace bfr::bounds
