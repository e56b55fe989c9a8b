#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bfr/bfr.hpp"
#include "bfr/rational.hpp"

namespace bfr::lrc {

// Locality parameters: groups of b_L blocks; the code restricted to a group
// is a BFR code of dimension K_L with resilience rho_L, DC access k_L nodes
// over b_L - rho_L blocks and repair from d_L nodes over b_L - sigma_L blocks.
struct LrcParams {
    int b = 0, b_L = 0, rho_L = 0, sigma_L = 0;
    int k_L = 0, d_L = 0, alpha = 0, beta = 0;
    int K_L = 0, N = 0, M = 0;

    int k_c() const { return k_L / (b_L - rho_L); }
    int d_r() const { return b_L > sigma_L && d_L ? d_L / (b_L - sigma_L) : 0; }
    std::string to_string() const;
};

// b - ceil(M (b_L - rho_L) / K_L) - (ceil(M / K_L) - 1) rho_L. May be negative
// when M exceeds what any such code can hold.
int resilience_bound(long M, long K_L, int b, int b_L, int rho_L);

// Block erasures a Construction V code tolerates, from the decomposition
// M = K_L/(b_L-rho_L) (a1 (b_L-rho_L) + b1) + g1.
struct ErasureCase {
    int a1 = 0, b1 = 0, g1 = 0;
    int which = 0;  // 1: b1 = g1 = 0, 2: g1 = 0 < b1, 3: g1 > 0
    int E = 0;
};
// Requires (b_L - rho_L) | K_L and b_L | b.
ErasureCase erasure_cases(long M, long K_L, int b, int b_L, int rho_L);

struct Witness {
    int resilience = 0;              // b - |largest undecodable set| - 1
    std::vector<int> surviving;      // that set of blocks (0-based)
    std::vector<std::vector<int>> nodes;  // the node choice inside it
    long entropy = 0;                // what those nodes determine
};
// Largest set of blocks from which some admissible access (k_c nodes per
// block) fails to determine the file. Exhaustive; b <= 12.
Witness resilience_witness_search(const core::BfrCode& code);

// Outer Gabidulin code split into b/b_L groups; each group is b_L blocks of
// the projective plane of order p with v partitions MDS-coded [(p+1)c, k~].
core::BfrCode construction_iv(int p, int b, int rho_L, int k_L, int c, int M);
// Each group of K_L = N b_L / b outer symbols is one [b_L c, K_L] MDS code,
// c symbols per block.
core::BfrCode construction_v(int b, int b_L, int c, int N, int rho_L, int M);
// Each group of outer symbols is laid out as a duplicated-combination BFR
// regenerating code on b_L blocks.
core::BfrCode construction_vi(int b, int b_L, int sigma_L, const codes::RegenParams& sub, int M);
core::BfrCode build_lrc(const core::Recipe& r);
LrcParams lrc_params(const core::BfrCode& code);

// Repair inside the failed block's group: b_L - sigma_L helper blocks of that
// group, d_L / (b_L - sigma_L) nodes each.
core::RepairResult local_repair(const core::BfrCode& code, const core::ShardSet& shards, core::NodeId failed,
                                const std::vector<int>& helper_blocks, const std::vector<std::vector<int>>& helper_nodes);

enum class LocalMode { MSR, MBR };
const char* local_mode_name(LocalMode m);

// Local dimension K_L by the regime case table (MSR: k_L alpha).
Rational local_dimension(LocalMode mode, const LrcParams& p);
// Entropy of phi accessed blocks of one group under uniform rank accumulation.
Rational ura_prefix_entropy(LocalMode mode, const LrcParams& p, int phi);
// Largest file size for which resilience rho is possible: mu K_L + H(phi),
// mu = floor((b - rho)/b_L), phi = b - rho - mu b_L.
Rational ura_file_size_bound(LocalMode mode, const LrcParams& p, int rho);

struct RankProfile {
    std::vector<long> min_entropy, max_entropy;  // by number of blocks, k_c nodes each
    std::vector<long> block_entropy;             // min over whole-block contents
    bool uniform() const { return min_entropy == max_entropy; }
    std::vector<long> increments() const;
    long K() const { return block_entropy.empty() ? 0 : block_entropy.back(); }
    // Accessed entropy of phi blocks: K once the whole content of any phi
    // blocks determines the group (repair saturation), else the k_c-node minimum.
    long H(int phi) const;
};
// Brute-force rank accumulation of a single-group code over all block
// subsets and all k_c-node choices.
RankProfile rank_profile(const core::BfrCode& local, int k_c);
// mu K_L + H(phi) from a measured profile.
long profile_file_size_bound(const RankProfile& prof, int b, int b_L, int rho);

}  // namespace bfr::lrc
