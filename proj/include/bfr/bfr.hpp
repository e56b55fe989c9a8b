#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bfr/designs.hpp"
#include "bfr/gabidulin.hpp"
#include "bfr/matrix.hpp"
#include "bfr/regen.hpp"

namespace bfr::core {

enum class Regime { IA, IB, II };
const char* regime_name(Regime r);

// (n, b, M, k, rho, alpha, d, sigma, beta). A code without the block repair
// property carries d = sigma = beta = 0.
struct SystemParams {
    int n = 0, b = 0, M = 0, k = 0, rho = 0, alpha = 0, d = 0, sigma = 0, beta = 0;

    int c() const { return b ? n / b : 0; }
    int k_c() const { return b > rho ? k / (b - rho) : 0; }
    int d_r() const { return b > sigma ? d / (b - sigma) : 0; }
    std::string to_string() const;
    bool operator==(const SystemParams&) const = default;
};

// Checks divisibility and capacity and classifies the regime. Throws
// ParamError naming the violated constraint.
Regime validate_params(const SystemParams& p);
// Data-collection constraints only (codes with d = 0).
void validate_collect_params(const SystemParams& p);

enum class Construction : std::uint8_t {
    transpose = 1,
    projective = 2,
    toy = 3,
    dcbd = 4,
    gab_mds = 5,
    relaxed = 6,
    lrc_iv = 7,
    lrc_v = 8,
    lrc_vi = 9,
};
const char* construction_name(Construction c);
Construction construction_from_name(const std::string& s);

struct NodeId {
    int block = 0, node = 0;
    auto operator<=>(const NodeId&) const = default;
};

// One sub-code coordinate stored on a node.
struct Slot {
    int partition = 0;
    int subnode = 0;
    bool operator==(const Slot&) const = default;
};

struct Partition {
    std::shared_ptr<const codes::NodeCode> code;
    int offset = 0;  // first inner symbol of this partition's message
};

// Key/value parameter document ("key: value" per line).
using Recipe = std::map<std::string, std::string>;
std::string recipe_to_text(const Recipe& r);
Recipe parse_recipe(const std::string& text);

// A linear code over GF(2^8) laid out on b blocks of c nodes. Inner symbols
// are the file symbols, or the codeword of an outer Gabidulin code over
// GF(256)^m. Partition P encodes inner symbols [offset, offset + M~) with
// its node code; slot (P, s) holds coordinate s of that codeword.
class BfrCode {
public:
    Construction tag = Construction::transpose;
    SystemParams params;
    Recipe recipe;
    std::vector<Partition> partitions;
    std::vector<std::vector<std::vector<Slot>>> place;  // [block][node]
    std::shared_ptr<const codes::GabidulinCode> outer;
    std::vector<std::vector<int>> groups;      // local groups of blocks, if any
    std::vector<std::vector<int>> node_type;   // [block][node] type label, if any
    // Repair rotation for duplicated designs: partitions form repetition
    // groups of `rotation_period` consecutive ids, `rotation_reps` per design.
    int rotation_period = 0, rotation_reps = 0;

    int blocks() const { return int(place.size()); }
    int nodes_per_block() const { return place.empty() ? 0 : int(place[0].size()); }
    // Bytes-per-symbol multiplier: m for an outer code over GF(256)^m, else 1.
    int unit() const;
    // Number of file symbols (outer dimension, or total inner symbols).
    int file_symbols() const;
    int inner_symbols() const;
    // Stored symbols on a node and the symbol offset of each of its slots.
    int node_symbols(NodeId id) const;
    int slot_offset(NodeId id, int slot) const;
    // GF(256) coefficients of stored symbol (slot, element) over inner symbols.
    std::vector<gf::Elem> inner_coeff(const Slot& s, int element) const;
    // Expansion of the outer code: rows (message symbol, component), columns
    // (codeword symbol, component). Empty without an outer code.
    const BaseMatrix& outer_expansion() const;
    const gf::Field& field() const;
    // Columns over inner symbols of every stored symbol on the given nodes.
    BaseMatrix stored_coefficients(const std::vector<NodeId>& nodes) const;
    // Entropy (in file symbols) of the content of the given nodes.
    int entropy(const std::vector<NodeId>& nodes) const;
    std::vector<NodeId> all_nodes() const;
    std::vector<NodeId> block_nodes(const std::vector<int>& blocks) const;
    void check_node(NodeId id) const;

private:
    mutable std::shared_ptr<BaseMatrix> outer_exp_;
};

// Encoded state. A stored symbol is unit() * symbol_size bytes; component t
// of an outer-code symbol sits at bytes [t*S, (t+1)*S).
struct ShardSet {
    std::size_t symbol_size = 0;
    std::uint64_t file_len = 0;
    std::vector<std::vector<std::vector<std::uint8_t>>> nodes;  // [block][node]

    const std::vector<std::uint8_t>& at(NodeId id) const { return nodes.at(id.block).at(id.node); }
};

// Pads the file with zeros to a whole number of file symbols; symbol_size = 0
// picks the smallest size that fits.
ShardSet encode(const BfrCode& code, const std::vector<std::uint8_t>& file, std::size_t symbol_size = 0);

// Decodes from any node contents; throws PartitionDecodeError, RankErasure,
// or CorruptionError when the given nodes disagree with the decoded file.
std::vector<std::uint8_t> decode_nodes(const BfrCode& code, const std::map<NodeId, std::vector<std::uint8_t>>& nodes,
                                       std::size_t symbol_size, std::uint64_t file_len);

// Admissible data collection: b - rho distinct blocks, k_c distinct nodes in each.
std::vector<std::uint8_t> collect(const BfrCode& code, const ShardSet& shards, const std::vector<int>& blocks,
                                  const std::vector<std::vector<int>>& nodes);

struct Fetch {
    NodeId helper;
    int helper_slot = 0;
    int failed_slot = 0;
    bool copy = false;  // replica shipped whole instead of a projected response
};

struct RepairPlan {
    NodeId failed;
    std::vector<NodeId> helpers;  // in contact order
    std::vector<Fetch> fetches;
};

struct Bandwidth {
    std::uint64_t total = 0;  // symbols
    std::map<NodeId, std::uint64_t> per_node;
    std::map<int, std::uint64_t> per_block;
};

// Checks block/node counts against the parameters and assigns every failed
// slot its helper coordinates. Throws PreconditionError for malformed helper
// sets and PartitionDecodeError when a partition cannot be reached.
RepairPlan plan_repair(const BfrCode& code, NodeId failed, const std::vector<int>& helper_blocks,
                       const std::vector<std::vector<int>>& helper_nodes);
// Relaxed counts: any helper nodes (local repair, tooling).
RepairPlan plan_repair_free(const BfrCode& code, NodeId failed, const std::vector<NodeId>& helpers);

// What one helper sends, computed from its own content only.
std::vector<std::uint8_t> respond(const BfrCode& code, const RepairPlan& plan, NodeId helper,
                                  const std::vector<std::uint8_t>& content, std::size_t symbol_size);
std::vector<std::uint8_t> rebuild(const BfrCode& code, const RepairPlan& plan,
                                  const std::map<NodeId, std::vector<std::uint8_t>>& responses,
                                  std::size_t symbol_size);

struct RepairResult {
    std::vector<std::uint8_t> node;
    Bandwidth bandwidth;
    RepairPlan plan;
};
RepairResult run_repair(const BfrCode& code, const ShardSet& shards, const RepairPlan& plan);
RepairResult repair(const BfrCode& code, const ShardSet& shards, NodeId failed, const std::vector<int>& helper_blocks,
                    const std::vector<std::vector<int>>& helper_nodes);

// Constructions.
BfrCode transpose_code(int n, int k);
BfrCode projective_code(int p, const codes::RegenParams& sub);
// Three blocks holding partitions {1,2}, {3,1}, {3,2}.
BfrCode toy_code(const codes::RegenParams& sub);
BfrCode dcbd_code(int b, int sigma, const codes::RegenParams& sub);
BfrCode gab_mds_code(int b, int c, int k_c, int rho);
BfrCode relaxed_code(int p, const codes::RegenParams& sub, int sigma, int rho);

// Places partitions by design: DSS block i holds the partitions listed in
// design block i (1-based points). The j-th block containing partition P
// carries its subnodes [j*c, (j+1)*c); node t of that block holds j*c + t.
std::vector<std::vector<std::vector<Slot>>> design_placement(const std::vector<std::vector<int>>& design_blocks,
                                                             int points, int c, int partition_base = 0);

// Rebuilds any construction from its recipe.
BfrCode build_code(const Recipe& r);

// Shard container: "BFR1", version, construction tag, recipe, SystemParams,
// FieldSpec, layout table, payloads block-major.
std::vector<std::uint8_t> write_shards(const BfrCode& code, const ShardSet& shards);
struct LoadedShards {
    BfrCode code;
    ShardSet shards;
};
LoadedShards read_shards(const std::vector<std::uint8_t>& bytes);

}  // namespace bfr::core
