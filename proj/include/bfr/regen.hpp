#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bfr/gf.hpp"
#include "bfr/matrix.hpp"
#include "bfr/mds.hpp"

namespace bfr::codes {

enum class RegenMode { MSR, MBR };
const char* mode_name(RegenMode m);

struct RegenParams {
    int n = 0, k = 0, d = 0;
    int alpha = 0, beta = 1, M = 0;
    RegenMode mode = RegenMode::MSR;

    // Derive alpha and M from (n, k, d, beta).
    static RegenParams mbr(int n, int k, int d, int beta = 1);
    static RegenParams msr(int n, int k, int d, int beta = 1);
    // Throws ParamError naming the violated constraint.
    void validate() const;
    std::string to_string() const;
    bool operator==(const RegenParams&) const = default;
};

// A linear code whose codeword is split over n nodes of alpha symbols each,
// with repair by projected helper responses: helper h answers a repair of
// node f with content_h * V_f (beta symbols). MDS codes fit with alpha = beta
// = 1 and d = k.
struct NodeCode {
    int n = 0, k = 0, d = 0, alpha = 1, beta = 1, M = 0;
    std::shared_ptr<const gf::Field> field;
    BaseMatrix generator;            // M x (n * alpha); node i owns columns [i*alpha, (i+1)*alpha)
    std::vector<BaseMatrix> repair;  // per failed node: alpha x beta

    BaseMatrix node_columns(int node) const;
    std::vector<std::vector<gf::Elem>> encode(const std::vector<gf::Elem>& message) const;
    // Any >= k nodes; extra nodes are checked for consistency.
    std::vector<gf::Elem> collect(const std::map<int, std::vector<gf::Elem>>& nodes) const;
    std::vector<gf::Elem> respond(int failed, const std::vector<gf::Elem>& helper_content) const;
    // X with [G_h V_f]_h X = G_f, rows ordered as helpers (beta rows each).
    BaseMatrix repair_matrix(int failed, const std::vector<int>& helpers) const;
    std::vector<gf::Elem> rebuild(int failed, const std::vector<std::pair<int, std::vector<gf::Elem>>>& responses) const;
    void check_helpers(int failed, const std::vector<int>& helpers) const;
};

// Product-matrix MBR (any d >= k) and MSR (d >= 2k-2, via shortening when
// d > 2k-2) codes over GF(2^8). beta > 1 stripes beta independent copies.
class RegenCode {
public:
    explicit RegenCode(const RegenParams& p);

    const RegenParams& params() const { return p_; }
    const NodeCode& code() const { return code_; }
    const BaseMatrix& generator() const { return code_.generator; }

    std::vector<std::vector<gf::Elem>> encode(const std::vector<gf::Elem>& subfile) const;
    std::vector<gf::Elem> collect(const std::map<int, std::vector<gf::Elem>>& nodes) const;
    std::vector<gf::Elem> respond(int failed, const std::vector<gf::Elem>& helper_content) const;
    std::vector<gf::Elem> repair(int failed, const std::vector<std::pair<int, std::vector<gf::Elem>>>& responses) const;

private:
    RegenParams p_;
    NodeCode code_;
};

// MDS code viewed as a NodeCode (alpha = beta = 1, d = k).
NodeCode mds_node_code(const MdsCode& code);

}  // namespace bfr::codes
