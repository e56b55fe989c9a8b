#include "bfr/lrc.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "bfr/combinatorics.hpp"
#include "bfr/mds.hpp"

namespace bfr::lrc {

using core::BfrCode;
using core::NodeId;
using core::Recipe;

std::string LrcParams::to_string() const {
    std::ostringstream os;
    os << "b=" << b << " b_L=" << b_L << " rho_L=" << rho_L << " sigma_L=" << sigma_L << " k_L=" << k_L
       << " d_L=" << d_L << " alpha=" << alpha << " beta=" << beta << " K_L=" << K_L << " N=" << N << " M=" << M;
    return os.str();
}

namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

void require(bool ok, const char* constraint, const std::string& detail) {
    if (!ok) throw ParamError(constraint, detail);
}

void put(Recipe& r, const char* key, long v) { r[key] = std::to_string(v); }

void put_params(Recipe& r, const core::SystemParams& p) {
    put(r, "n", p.n);
    put(r, "M", p.M);
    put(r, "k", p.k);
    put(r, "rho", p.rho);
    put(r, "alpha", p.alpha);
}

void put_local(Recipe& r, const LrcParams& l) {
    put(r, "b", l.b);
    put(r, "b_L", l.b_L);
    put(r, "rho_L", l.rho_L);
    put(r, "sigma_L", l.sigma_L);
    put(r, "k_L", l.k_L);
    put(r, "d_L", l.d_L);
    put(r, "K_L", l.K_L);
    put(r, "N", l.N);
}

int get_int(const Recipe& r, const std::string& key) {
    auto it = r.find(key);
    if (it == r.end()) throw ParamError("parameter '" + key + "' present", "missing from parameters");
    try {
        std::size_t used = 0;
        int v = std::stoi(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw ParamError("parameter '" + key + "' is an integer", "'" + it->second + "'");
    }
}

// Shared tail of the three constructions: outer code, groups, SystemParams
// with the resilience target as rho and k_c-node access per block.
void finish(BfrCode& code, const LrcParams& l, int c, int k_c, int alpha) {
    int rho = resilience_bound(l.M, l.K_L, l.b, l.b_L, l.rho_L);
    std::string detail = l.to_string();
    require(rho >= 0, "M within the resilience bound (rho >= 0)", detail);
    require(l.N <= 64, "N <= 64", detail);
    code.params = {l.b * c, l.b, l.M, (l.b - rho) * k_c, rho, alpha, 0, 0, 0};
    core::validate_collect_params(code.params);
    code.outer = std::make_shared<const codes::GabidulinCode>(l.N, l.M, unsigned(l.N));
    code.groups.clear();
    for (int g = 0; g < l.b / l.b_L; ++g) {
        std::vector<int> blocks;
        for (int i = 0; i < l.b_L; ++i) blocks.push_back(g * l.b_L + i);
        code.groups.push_back(blocks);
    }
    put_local(code.recipe, l);
    put_params(code.recipe, code.params);
}

}  // namespace

int resilience_bound(long M, long K_L, int b, int b_L, int rho_L) {
    return int(b - ceil_div(M * (b_L - rho_L), K_L) - (ceil_div(M, K_L) - 1) * rho_L);
}

ErasureCase erasure_cases(long M, long K_L, int b, int b_L, int rho_L) {
    std::string detail = "M=" + std::to_string(M) + " K_L=" + std::to_string(K_L);
    require(K_L % (b_L - rho_L) == 0, "(b_L-rho_L) | K_L", detail);
    require(b % b_L == 0, "b_L | b", detail);
    long unit = K_L / (b_L - rho_L);
    long q = M / unit;
    ErasureCase e;
    e.g1 = int(M % unit);
    e.a1 = int(q / (b_L - rho_L));
    e.b1 = int(q % (b_L - rho_L));
    int groups = b / b_L;
    if (e.b1 == 0 && e.g1 == 0) {
        e.which = 1;
        e.E = b_L * (groups - e.a1) + rho_L;
    } else if (e.g1 == 0) {
        e.which = 2;
        e.E = b_L * (groups - e.a1 - 1) + b_L - e.b1;
    } else {
        e.which = 3;
        e.E = b_L * (groups - e.a1 - 1) + b_L - e.b1 - 1;
    }
    return e;
}

Witness resilience_witness_search(const BfrCode& code) {
    int b = code.blocks();
    if (b > 12) throw PreconditionError("witness search is exhaustive and limited to b <= 12 (got " + std::to_string(b) + ")");
    int k_c = code.params.k_c();
    int c = code.nodes_per_block();
    auto choices = combinations(c, k_c);
    long M = code.file_symbols();
    // Largest failing set first; within a size, subsets in lexicographic order.
    for (int size = b; size >= 0; --size) {
        for (const auto& blocks : combinations(b, size)) {
            std::vector<std::size_t> pick(size, 0);
            while (true) {
                std::vector<NodeId> nodes;
                for (int i = 0; i < size; ++i)
                    for (int t : choices[pick[i]]) nodes.push_back({blocks[i], t});
                long h = code.entropy(nodes);
                if (h < M) {
                    Witness w;
                    w.resilience = b - size - 1;
                    w.surviving = blocks;
                    for (int i = 0; i < size; ++i) w.nodes.push_back(choices[pick[i]]);
                    w.entropy = h;
                    return w;
                }
                int i = 0;
                while (i < size && ++pick[i] == choices.size()) pick[i++] = 0;
                if (i == size) break;
            }
        }
    }
    Witness w;
    w.resilience = b;  // only reachable for M = 0
    return w;
}

BfrCode construction_iv(int p, int b, int rho_L, int k_L, int c, int M) {
    auto plane = designs::projective_plane(p);
    int v = plane.v, r = p + 1, b_L = v;
    std::string detail = "p=" + std::to_string(p) + " b=" + std::to_string(b) + " rho_L=" + std::to_string(rho_L) +
                         " k_L=" + std::to_string(k_L) + " c=" + std::to_string(c) + " M=" + std::to_string(M);
    require(b >= b_L && b % b_L == 0, "b_L = p^2+p+1 divides b", detail);
    require(rho_L >= 0 && rho_L <= p, "0 <= rho_L <= p", detail);
    require((k_L * (r - rho_L)) % (b_L - rho_L) == 0, "(b_L-rho_L) | k_L(p+1-rho_L)", detail);
    require(k_L % (b_L - rho_L) == 0, "(b_L-rho_L) | k_L", detail);
    int k_c = k_L / (b_L - rho_L);
    require(k_c >= 1 && k_c <= c, "1 <= k_L/(b_L-rho_L) <= c", detail);
    int kt = k_L * (r - rho_L) / (b_L - rho_L);
    require(r * c <= 256, "(p+1)c <= 256", detail);
    LrcParams l;
    l.b = b, l.b_L = b_L, l.rho_L = rho_L, l.k_L = k_L, l.K_L = v * kt, l.N = (b / b_L) * v * kt, l.M = M;
    l.alpha = r;
    require(M >= 1 && M <= l.N, "1 <= M <= N", detail);

    BfrCode code;
    code.tag = core::Construction::lrc_iv;
    auto mds = std::make_shared<const codes::NodeCode>(codes::mds_node_code(codes::MdsCode(r * c, kt)));
    for (int g = 0; g < b / b_L; ++g) {
        for (int pt = 0; pt < v; ++pt) code.partitions.push_back({mds, (g * v + pt) * kt});
        auto place = core::design_placement(plane.blocks, v, c, g * v);
        code.place.insert(code.place.end(), place.begin(), place.end());
    }
    code.recipe["construction"] = "lrc_iv";
    put(code.recipe, "p", p);
    put(code.recipe, "c", c);
    finish(code, l, c, k_c, r);
    return code;
}

BfrCode construction_v(int b, int b_L, int c, int N, int rho_L, int M) {
    std::string detail = "b=" + std::to_string(b) + " b_L=" + std::to_string(b_L) + " c=" + std::to_string(c) +
                         " N=" + std::to_string(N) + " rho_L=" + std::to_string(rho_L) + " M=" + std::to_string(M);
    require(b_L >= 1 && c >= 1 && b >= b_L && b % b_L == 0, "b_L | b", detail);
    require((long(N) * b_L) % b == 0, "b | N b_L", detail);
    int K_L = N * b_L / b;
    require(K_L >= 1 && K_L <= b_L * c, "1 <= K_L <= b_L c", detail);
    require(rho_L == b_L - int(ceil_div(K_L, c)), "rho_L = b_L - ceil(K_L/c)", detail);
    require(b_L * c <= 256, "b_L c <= 256", detail);
    require(M >= 1 && M <= N, "1 <= M <= N", detail);
    LrcParams l;
    l.b = b, l.b_L = b_L, l.rho_L = rho_L, l.k_L = (b_L - rho_L) * c, l.K_L = K_L, l.N = N, l.M = M, l.alpha = 1;

    BfrCode code;
    code.tag = core::Construction::lrc_v;
    auto mds = std::make_shared<const codes::NodeCode>(codes::mds_node_code(codes::MdsCode(b_L * c, K_L)));
    code.place.assign(b, std::vector<std::vector<core::Slot>>(c));
    for (int g = 0; g < b / b_L; ++g) {
        code.partitions.push_back({mds, g * K_L});
        for (int i = 0; i < b_L; ++i)
            for (int t = 0; t < c; ++t) code.place[g * b_L + i][t].push_back({g, i * c + t});
    }
    code.recipe["construction"] = "lrc_v";
    put(code.recipe, "c", c);
    finish(code, l, c, c, 1);
    return code;
}

BfrCode construction_vi(int b, int b_L, int sigma_L, const codes::RegenParams& sub, int M) {
    auto local = core::dcbd_code(b_L, sigma_L, sub);
    std::string detail = "b=" + std::to_string(b) + " b_L=" + std::to_string(b_L) + " sigma_L=" +
                         std::to_string(sigma_L) + " " + sub.to_string() + " M=" + std::to_string(M);
    require(b >= b_L && b % b_L == 0, "b_L | b", detail);
    const auto& lp = local.params;
    int groups = b / b_L, parts = int(local.partitions.size());
    LrcParams l;
    l.b = b, l.b_L = b_L, l.rho_L = 0, l.sigma_L = sigma_L, l.k_L = lp.k, l.d_L = lp.d, l.alpha = lp.alpha,
    l.beta = lp.beta, l.K_L = lp.M, l.N = groups * lp.M, l.M = M;
    require(M >= 1 && M <= l.N, "1 <= M <= N", detail);

    BfrCode code;
    code.tag = core::Construction::lrc_vi;
    for (int g = 0; g < groups; ++g) {
        for (const auto& part : local.partitions) code.partitions.push_back({part.code, g * lp.M + part.offset});
        for (auto node_list : local.place) {
            for (auto& node : node_list)
                for (auto& s : node) s.partition += g * parts;
            code.place.push_back(node_list);
        }
    }
    code.rotation_period = local.rotation_period;
    code.rotation_reps = local.rotation_reps;
    code.recipe["construction"] = "lrc_vi";
    for (const auto& key : {"sub_mode", "sub_n", "sub_k", "sub_d", "sub_beta"}) code.recipe[key] = local.recipe.at(key);
    finish(code, l, lp.c(), lp.k_c(), lp.alpha);
    return code;
}

BfrCode build_lrc(const Recipe& r) {
    auto tag = core::construction_from_name(r.at("construction"));
    int M = get_int(r, "M");
    BfrCode code;
    switch (tag) {
        case core::Construction::lrc_iv:
            code = construction_iv(get_int(r, "p"), get_int(r, "b"), get_int(r, "rho_L"), get_int(r, "k_L"),
                                   get_int(r, "c"), M);
            break;
        case core::Construction::lrc_v:
            code = construction_v(get_int(r, "b"), get_int(r, "b_L"), get_int(r, "c"), get_int(r, "N"),
                                  get_int(r, "rho_L"), M);
            break;
        case core::Construction::lrc_vi: {
            auto mode = r.at("sub_mode");
            int n = get_int(r, "sub_n"), k = get_int(r, "sub_k"), d = get_int(r, "sub_d");
            int beta = r.count("sub_beta") ? get_int(r, "sub_beta") : 1;
            auto sub = mode == "MBR" ? codes::RegenParams::mbr(n, k, d, beta) : codes::RegenParams::msr(n, k, d, beta);
            if (mode != "MBR" && mode != "MSR") throw ParamError("sub_mode is MSR or MBR", "'" + mode + "'");
            code = construction_vi(get_int(r, "b"), get_int(r, "b_L"), get_int(r, "sigma_L"), sub, M);
            break;
        }
        default: throw ParamError("locally repairable construction", r.at("construction"));
    }
    return code;
}

LrcParams lrc_params(const BfrCode& code) {
    const auto& r = code.recipe;
    if (code.groups.empty()) throw PreconditionError("code has no local groups");
    LrcParams l;
    l.b = get_int(r, "b"), l.b_L = get_int(r, "b_L"), l.rho_L = get_int(r, "rho_L"), l.sigma_L = get_int(r, "sigma_L");
    l.k_L = get_int(r, "k_L"), l.d_L = get_int(r, "d_L"), l.K_L = get_int(r, "K_L"), l.N = get_int(r, "N");
    l.M = code.params.M, l.alpha = code.params.alpha;
    if (code.tag == core::Construction::lrc_vi)
        l.beta = code.partitions[0].code->beta * (l.b_L - l.sigma_L - 1) * (l.b_L - 1);
    return l;
}

core::RepairResult local_repair(const BfrCode& code, const core::ShardSet& shards, NodeId failed,
                                const std::vector<int>& helper_blocks, const std::vector<std::vector<int>>& helper_nodes) {
    auto l = lrc_params(code);
    code.check_node(failed);
    if (l.d_L == 0) throw PreconditionError("local codes of this construction have no repair property");
    int g = failed.block / l.b_L;
    if (int(helper_blocks.size()) != l.b_L - l.sigma_L)
        throw PreconditionError("local repair needs " + std::to_string(l.b_L - l.sigma_L) + " helper blocks");
    if (helper_nodes.size() != helper_blocks.size()) throw PreconditionError("one node list per helper block");
    std::vector<NodeId> helpers;
    for (std::size_t i = 0; i < helper_blocks.size(); ++i) {
        int hb = helper_blocks[i];
        if (hb == failed.block) throw PreconditionError("helper blocks contain the failed block");
        if (hb < 0 || hb / l.b_L != g) throw PreconditionError("helper block " + std::to_string(hb) + " is outside the local group");
        if (int(helper_nodes[i].size()) != l.d_r())
            throw PreconditionError("local repair needs " + std::to_string(l.d_r()) + " nodes per helper block");
        for (int t : helper_nodes[i]) helpers.push_back({hb, t});
    }
    return core::run_repair(code, shards, core::plan_repair_free(code, failed, helpers));
}

const char* local_mode_name(LocalMode m) { return m == LocalMode::MSR ? "MSR" : "MBR"; }

namespace {

// The MBR case table reads k_c and d_r, so it needs whole per-block counts;
// the MSR forms are exact in rationals without them.
void check_local(LocalMode mode, const LrcParams& p) {
    std::string d = p.to_string();
    require(p.b_L >= 1 && p.rho_L >= 0 && p.rho_L < p.b_L, "0 <= rho_L < b_L", d);
    require(p.sigma_L >= 1 && p.sigma_L < p.b_L, "1 <= sigma_L < b_L", d);
    if (mode == LocalMode::MSR) return;
    require(p.k_L % (p.b_L - p.rho_L) == 0, "(b_L-rho_L) | k_L", d);
    require(p.d_L % (p.b_L - p.sigma_L) == 0, "(b_L-sigma_L) | d_L", d);
}

}  // namespace

Rational local_dimension(LocalMode mode, const LrcParams& p) {
    check_local(mode, p);
    if (mode == LocalMode::MSR) return Rational(p.k_L) * p.alpha;
    Rational k = p.k_L, d = p.d_L, B = p.b_L, rh = p.rho_L, sg = p.sigma_L, beta = p.beta;
    if (p.d_r() >= p.k_c()) {
        if (p.sigma_L <= p.rho_L) return beta * (k * d - k * k * (B - rh - 1) / (2 * (B - rh)));
        return beta * (k * d - k * k * (B - sg) * (B + sg - 2 * rh - 1) / (2 * (B - rh) * (B - rh)));
    }
    if (p.sigma_L < p.rho_L)
        return beta * (k * d * (rh - sg + 1) / (B - sg) + d * d * (B - rh) * (B - rh - 1) / (2 * (B - sg) * (B - sg)));
    throw ParamError("local regime: d_r >= k_c, or d_r < k_c with sigma_L < rho_L", p.to_string());
}

Rational ura_prefix_entropy(LocalMode mode, const LrcParams& p, int phi) {
    auto K = local_dimension(mode, p);
    if (phi <= 0) return 0;
    if (phi >= std::min(p.b_L - p.rho_L, p.b_L - p.sigma_L)) return K;
    Rational f = phi, k = p.k_L, d = p.d_L, B = p.b_L, rh = p.rho_L, sg = p.sigma_L, beta = p.beta;
    if (mode == LocalMode::MSR) return K * f / (B - rh);
    if (p.d_r() >= p.k_c()) return beta * (k * d * f / (B - rh) - k * k * f * (f - 1) / (2 * (B - rh) * (B - rh)));
    return beta * (k * d * f / (B - rh) * (B - sg - f + 1) / (B - sg) + d * d * f * (f - 1) / (2 * (B - sg) * (B - sg)));
}

Rational ura_file_size_bound(LocalMode mode, const LrcParams& p, int rho) {
    require(rho >= 0 && rho < p.b, "0 <= rho < b", p.to_string());
    int mu = (p.b - rho) / p.b_L, phi = p.b - rho - mu * p.b_L;
    return Rational(mu) * local_dimension(mode, p) + ura_prefix_entropy(mode, p, phi);
}

std::vector<long> RankProfile::increments() const {
    std::vector<long> out;
    for (std::size_t i = 1; i < min_entropy.size(); ++i) out.push_back(min_entropy[i] - min_entropy[i - 1]);
    return out;
}

long RankProfile::H(int phi) const {
    if (phi <= 0) return 0;
    if (block_entropy[phi] == K()) return K();
    return min_entropy[phi];
}

RankProfile rank_profile(const BfrCode& local, int k_c) {
    int b = local.blocks(), c = local.nodes_per_block();
    auto choices = combinations(c, k_c);
    RankProfile prof;
    for (int size = 0; size <= b; ++size) {
        long lo = -1, hi = -1, whole = -1;
        for (const auto& blocks : combinations(b, size)) {
            long w = local.entropy(local.block_nodes(blocks));
            whole = whole < 0 ? w : std::min(whole, w);
            std::vector<std::size_t> pick(size, 0);
            while (true) {
                std::vector<NodeId> nodes;
                for (int i = 0; i < size; ++i)
                    for (int t : choices[pick[i]]) nodes.push_back({blocks[i], t});
                long h = local.entropy(nodes);
                lo = lo < 0 ? h : std::min(lo, h);
                hi = std::max(hi, h);
                int i = 0;
                while (i < size && ++pick[i] == choices.size()) pick[i++] = 0;
                if (i == size) break;
            }
        }
        prof.min_entropy.push_back(lo);
        prof.max_entropy.push_back(hi);
        prof.block_entropy.push_back(whole);
    }
    return prof;
}

long profile_file_size_bound(const RankProfile& prof, int b, int b_L, int rho) {
    int mu = (b - rho) / b_L, phi = b - rho - mu * b_L;
    return mu * prof.K() + prof.H(phi);
}

}  // namespace bfr::lrc
