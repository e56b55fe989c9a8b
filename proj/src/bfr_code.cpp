#include <algorithm>
#include <set>
#include <sstream>

#include "bfr/bfr.hpp"
#include "bfr/gf_region.hpp"

namespace bfr::core {

using gf::Elem;

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::IA: return "I.A";
        case Regime::IB: return "I.B";
        case Regime::II: return "II";
    }
    return "?";
}

std::string SystemParams::to_string() const {
    std::ostringstream os;
    os << "n=" << n << " b=" << b << " M=" << M << " k=" << k << " rho=" << rho << " alpha=" << alpha << " d=" << d
       << " sigma=" << sigma << " beta=" << beta;
    return os.str();
}

void validate_collect_params(const SystemParams& p) {
    auto s = p.to_string();
    if (p.b < 1 || p.n < 1) throw ParamError("n, b >= 1", s);
    if (p.n % p.b) throw ParamError("b | n", s);
    if (p.rho < 0 || p.rho >= p.b) throw ParamError("0 <= rho < b", s);
    if (p.k < 1) throw ParamError("k >= 1", s);
    if (p.k % (p.b - p.rho)) throw ParamError("(b-rho) | k", s);
    if (p.k_c() > p.c()) throw ParamError("k_c <= c", s);
    if (p.M < 0 || p.alpha < 0 || p.beta < 0) throw ParamError("M, alpha, beta >= 0", s);
}

Regime validate_params(const SystemParams& p) {
    validate_collect_params(p);
    auto s = p.to_string();
    if (p.sigma < 1 || p.sigma >= p.b) throw ParamError("1 <= sigma < b", s);
    if (p.d < 1) throw ParamError("d >= 1", s);
    if (p.d % (p.b - p.sigma)) throw ParamError("(b-sigma) | d", s);
    if (p.d_r() > p.c()) throw ParamError("d_r <= c", s);
    if (p.d_r() >= p.k_c()) return p.sigma <= p.rho ? Regime::IA : Regime::IB;
    if (p.rho > p.sigma) return Regime::II;
    throw ParamError("rho > sigma when d_r < k_c", s);
}

static const std::pair<Construction, const char*> kNames[] = {
    {Construction::transpose, "transpose"}, {Construction::projective, "projective"}, {Construction::toy, "toy"},
    {Construction::dcbd, "dcbd"},           {Construction::gab_mds, "gab_mds"},       {Construction::relaxed, "relaxed"},
    {Construction::lrc_iv, "lrc_iv"},       {Construction::lrc_v, "lrc_v"},           {Construction::lrc_vi, "lrc_vi"},
};

const char* construction_name(Construction c) {
    for (const auto& [k, v] : kNames)
        if (k == c) return v;
    return "?";
}

Construction construction_from_name(const std::string& s) {
    for (const auto& [k, v] : kNames)
        if (s == v) return k;
    throw ParamError("known construction", "'" + s + "'");
}

std::string recipe_to_text(const Recipe& r) {
    std::string out;
    for (const auto& [k, v] : r) out += k + ": " + v + "\n";
    return out;
}

Recipe parse_recipe(const std::string& text) {
    Recipe r;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        auto a = s.find_first_not_of(" \t\r");
        auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto colon = t.find(':');
        if (colon == std::string::npos)
            throw FormatError("parameters line " + std::to_string(lineno) + ": expected 'key: value'");
        auto key = trim(t.substr(0, colon));
        if (key.empty()) throw FormatError("parameters line " + std::to_string(lineno) + ": empty key");
        r[key] = trim(t.substr(colon + 1));
    }
    return r;
}

// --- BfrCode ---------------------------------------------------------------

int BfrCode::unit() const { return outer ? int(outer->field().degree()) : 1; }

int BfrCode::inner_symbols() const {
    int total = 0;
    for (const auto& p : partitions) total = std::max(total, p.offset + p.code->M);
    return total;
}

int BfrCode::file_symbols() const { return outer ? outer->K() : inner_symbols(); }

const gf::Field& BfrCode::field() const { return *partitions.at(0).code->field; }

void BfrCode::check_node(NodeId id) const {
    if (id.block < 0 || id.block >= blocks() || id.node < 0 || id.node >= int(place[id.block].size()))
        throw PreconditionError("node (" + std::to_string(id.block) + "," + std::to_string(id.node) + ") out of range");
}

int BfrCode::node_symbols(NodeId id) const {
    check_node(id);
    int s = 0;
    for (const auto& sl : place[id.block][id.node]) s += partitions[sl.partition].code->alpha;
    return s;
}

int BfrCode::slot_offset(NodeId id, int slot) const {
    int s = 0;
    for (int q = 0; q < slot; ++q) s += partitions[place[id.block][id.node][q].partition].code->alpha;
    return s;
}

std::vector<Elem> BfrCode::inner_coeff(const Slot& s, int element) const {
    const auto& part = partitions.at(s.partition);
    const auto& g = part.code->generator;
    std::vector<Elem> v(inner_symbols(), 0);
    int col = s.subnode * part.code->alpha + element;
    for (int j = 0; j < part.code->M; ++j) v[part.offset + j] = g(j, col);
    return v;
}

const BaseMatrix& BfrCode::outer_expansion() const {
    if (outer_exp_) return *outer_exp_;
    auto m = std::make_shared<BaseMatrix>();
    if (outer) {
        const auto& F = outer->field();
        int K = outer->K(), N = outer->N(), u = int(F.degree());
        *m = BaseMatrix(&F.base(), K * u, N * u);
        for (int j = 0; j < N; ++j) {
            auto pw = outer->points()[j];
            for (int i = 0; i < K; ++i) {
                if (i) pw = F.frobenius(pw);
                auto mm = gf::multiplication_matrix(pw);
                for (int a = 0; a < u; ++a)
                    for (int t = 0; t < u; ++t) (*m)(i * u + a, j * u + t) = mm[t][a];
            }
        }
    }
    outer_exp_ = m;
    return *outer_exp_;
}

std::vector<NodeId> BfrCode::all_nodes() const {
    std::vector<NodeId> out;
    for (int b = 0; b < blocks(); ++b)
        for (int t = 0; t < int(place[b].size()); ++t) out.push_back({b, t});
    return out;
}

std::vector<NodeId> BfrCode::block_nodes(const std::vector<int>& bl) const {
    std::vector<NodeId> out;
    for (int b : bl)
        for (int t = 0; t < int(place.at(b).size()); ++t) out.push_back({b, t});
    return out;
}

BaseMatrix BfrCode::stored_coefficients(const std::vector<NodeId>& nodes) const {
    int cols = 0;
    for (auto id : nodes) cols += node_symbols(id);
    BaseMatrix c(&field(), inner_symbols(), cols);
    int col = 0;
    for (auto id : nodes)
        for (const auto& sl : place[id.block][id.node]) {
            const auto& part = partitions[sl.partition];
            for (int e = 0; e < part.code->alpha; ++e, ++col)
                for (int j = 0; j < part.code->M; ++j)
                    c(part.offset + j, col) = part.code->generator(j, sl.subnode * part.code->alpha + e);
        }
    return c;
}

int BfrCode::entropy(const std::vector<NodeId>& nodes) const {
    int r = stored_coefficients(nodes).rank();
    return outer ? std::min(r, outer->K()) : r;
}

// --- payload ----------------------------------------------------------------

namespace {

// out_j += sum_i in_i * A(i, j) over regions of `len` bytes.
void mix(const gf::Field& f, const BaseMatrix& a, const std::vector<const std::uint8_t*>& in,
         const std::vector<std::uint8_t*>& out, std::size_t len) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j)) gf::region_mul_add(f, out[j], in[i], std::uint8_t(a(i, j)), len);
}

struct StoredRef {
    const std::uint8_t* data;
    Slot slot;
    int element;
};

}  // namespace

ShardSet encode(const BfrCode& code, const std::vector<std::uint8_t>& file, std::size_t symbol_size) {
    const auto& f = code.field();
    std::size_t u = code.unit();
    std::size_t fs = code.file_symbols();
    std::size_t S = symbol_size;
    if (S == 0) S = std::max<std::size_t>(1, (file.size() + fs * u - 1) / (fs * u));
    if (file.size() > fs * u * S)
        throw PreconditionError("file of " + std::to_string(file.size()) + " bytes exceeds capacity " +
                                std::to_string(fs * u * S));
    std::size_t R = u * S;
    std::vector<std::uint8_t> padded(fs * u * S, 0);
    std::copy(file.begin(), file.end(), padded.begin());

    std::vector<std::uint8_t> inner;
    if (code.outer) {
        int N = code.outer->N();
        inner.assign(N * R, 0);
        std::vector<const std::uint8_t*> in;
        std::vector<std::uint8_t*> out;
        for (std::size_t i = 0; i < fs * u; ++i) in.push_back(padded.data() + i * S);
        for (std::size_t j = 0; j < N * u; ++j) out.push_back(inner.data() + j * S);
        mix(f, code.outer_expansion(), in, out, S);
    } else {
        inner = std::move(padded);
    }

    std::vector<std::vector<std::uint8_t>> cw(code.partitions.size());
    for (std::size_t p = 0; p < code.partitions.size(); ++p) {
        const auto& nc = *code.partitions[p].code;
        cw[p].assign(std::size_t(nc.n) * nc.alpha * R, 0);
        std::vector<const std::uint8_t*> in;
        std::vector<std::uint8_t*> out;
        for (int j = 0; j < nc.M; ++j) in.push_back(inner.data() + (code.partitions[p].offset + j) * R);
        for (int c = 0; c < nc.n * nc.alpha; ++c) out.push_back(cw[p].data() + c * R);
        mix(f, nc.generator, in, out, R);
    }

    ShardSet sh;
    sh.symbol_size = S;
    sh.file_len = file.size();
    sh.nodes.resize(code.blocks());
    for (int b = 0; b < code.blocks(); ++b)
        for (int t = 0; t < int(code.place[b].size()); ++t) {
            std::vector<std::uint8_t> node;
            for (const auto& sl : code.place[b][t]) {
                int a = code.partitions[sl.partition].code->alpha;
                auto first = cw[sl.partition].begin() + std::size_t(sl.subnode) * a * R;
                node.insert(node.end(), first, first + std::size_t(a) * R);
            }
            sh.nodes[b].push_back(std::move(node));
        }
    return sh;
}

std::vector<std::uint8_t> decode_nodes(const BfrCode& code, const std::map<NodeId, std::vector<std::uint8_t>>& nodes,
                                       std::size_t S, std::uint64_t file_len) {
    const auto& f = code.field();
    std::size_t u = code.unit();
    std::size_t R = u * S;
    std::size_t fs = code.file_symbols();
    if (S == 0) throw PreconditionError("symbol size must be positive");
    if (file_len > fs * R) throw FormatError("file length exceeds code capacity");

    std::vector<StoredRef> stored;
    for (const auto& [id, data] : nodes) {
        if (data.size() != std::size_t(code.node_symbols(id)) * R)
            throw FormatError("node (" + std::to_string(id.block) + "," + std::to_string(id.node) + ") has " +
                              std::to_string(data.size()) + " bytes, expected " +
                              std::to_string(code.node_symbols(id) * R));
        std::size_t off = 0;
        for (const auto& sl : code.place[id.block][id.node])
            for (int e = 0; e < code.partitions[sl.partition].code->alpha; ++e, off += R)
                stored.push_back({data.data() + off, sl, e});
    }

    std::vector<std::uint8_t> file(fs * R, 0);
    if (!code.outer) {
        for (std::size_t p = 0; p < code.partitions.size(); ++p) {
            const auto& part = code.partitions[p];
            const auto& nc = *part.code;
            std::vector<const StoredRef*> mine;
            for (const auto& s : stored)
                if (s.slot.partition == int(p)) mine.push_back(&s);
            BaseMatrix c(&f, nc.M, mine.size());
            for (std::size_t i = 0; i < mine.size(); ++i)
                for (int j = 0; j < nc.M; ++j)
                    c(j, i) = nc.generator(j, mine[i]->slot.subnode * nc.alpha + mine[i]->element);
            auto red = c;
            auto pv = red.rref();
            std::vector<int> piv(pv.begin(), pv.end());
            if (int(piv.size()) < nc.M)
                throw PartitionDecodeError(int(p), "rank " + std::to_string(piv.size()) + " < " + std::to_string(nc.M));
            auto inv = c.select_cols(piv).inverse();
            if (!inv) throw Error("independent columns gave a singular system");
            std::vector<const std::uint8_t*> in;
            std::vector<std::uint8_t*> out;
            for (int i : piv) in.push_back(mine[i]->data);
            for (int j = 0; j < nc.M; ++j) out.push_back(file.data() + (part.offset + j) * R);
            mix(f, *inv, in, out, R);
        }
    } else {
        int K = code.outer->K();
        BaseMatrix c(&f, code.inner_symbols(), stored.size());
        for (std::size_t i = 0; i < stored.size(); ++i) {
            auto v = code.inner_coeff(stored[i].slot, stored[i].element);
            for (std::size_t j = 0; j < v.size(); ++j) c(j, i) = v[j];
        }
        auto red = c;
        auto pv = red.rref();
        std::vector<int> piv(pv.begin(), pv.end());
        if (int(piv.size()) < K) throw RankErasure(int(piv.size()), K);
        piv.resize(K);
        // message = values * A^-1 with A[i][s] = h_s^{q^i}; expand each entry
        // of the inverse to its multiplication matrix over GF(256).
        std::vector<gf::ExtElem> pts;
        for (int s : piv) {
            std::vector<Elem> w(code.outer->N());
            for (int j = 0; j < code.outer->N(); ++j) w[j] = c(j, s);
            pts.push_back(code.outer->combined_point(w));
        }
        auto ainv = code.outer->moore_inverse(pts);
        BaseMatrix x(&f, K * u, K * u);
        for (int s = 0; s < K; ++s)
            for (int i = 0; i < K; ++i) {
                auto mm = gf::multiplication_matrix(ainv(s, i));
                for (std::size_t t = 0; t < u; ++t)
                    for (std::size_t a = 0; a < u; ++a) x(s * u + t, i * u + a) = mm[a][t];
            }
        std::vector<const std::uint8_t*> in;
        std::vector<std::uint8_t*> out;
        for (int i = 0; i < K; ++i)
            for (std::size_t t = 0; t < u; ++t) in.push_back(stored[piv[i]].data + t * S);
        for (std::size_t r = 0; r < K * u; ++r) out.push_back(file.data() + r * S);
        mix(f, x, in, out, S);
    }

    auto check = encode(code, file, S);
    for (const auto& [id, data] : nodes)
        if (check.at(id) != data)
            throw CorruptionError("node (" + std::to_string(id.block) + "," + std::to_string(id.node) +
                                  ") disagrees with the decoded file");
    file.resize(file_len);
    return file;
}

std::vector<std::uint8_t> collect(const BfrCode& code, const ShardSet& shards, const std::vector<int>& blocks,
                                  const std::vector<std::vector<int>>& nodes) {
    const auto& p = code.params;
    if (int(blocks.size()) != p.b - p.rho)
        throw PreconditionError("collect needs " + std::to_string(p.b - p.rho) + " blocks, got " +
                                std::to_string(blocks.size()));
    if (nodes.size() != blocks.size()) throw PreconditionError("collect: one node list per block");
    std::set<int> seen;
    std::map<NodeId, std::vector<std::uint8_t>> got;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i] < 0 || blocks[i] >= code.blocks() || !seen.insert(blocks[i]).second)
            throw PreconditionError("collect: block " + std::to_string(blocks[i]) + " invalid or repeated");
        std::set<int> ns(nodes[i].begin(), nodes[i].end());
        if (int(ns.size()) != p.k_c() || int(nodes[i].size()) != p.k_c())
            throw PreconditionError("collect needs " + std::to_string(p.k_c()) + " distinct nodes in block " +
                                    std::to_string(blocks[i]));
        for (int t : ns) {
            NodeId id{blocks[i], t};
            code.check_node(id);
            got[id] = shards.at(id);
        }
    }
    return decode_nodes(code, got, shards.symbol_size, shards.file_len);
}

// --- repair -----------------------------------------------------------------

namespace {

RepairPlan plan_core(const BfrCode& code, NodeId failed, const std::vector<std::pair<int, std::vector<int>>>& helpers) {
    RepairPlan plan;
    plan.failed = failed;
    for (const auto& [b, ns] : helpers)
        for (int t : ns) plan.helpers.push_back({b, t});

    const auto& slots = code.place[failed.block][failed.node];
    std::vector<std::set<int>> held(helpers.size());
    for (std::size_t h = 0; h < helpers.size(); ++h)
        for (const auto& node : code.place[helpers[h].first])
            for (const auto& sl : node) held[h].insert(sl.partition);
    int reps = code.rotation_reps, period = code.rotation_period;

    for (int fs = 0; fs < int(slots.size()); ++fs) {
        const auto& want = slots[fs];
        bool copied = false;
        for (auto id : plan.helpers) {
            const auto& hs = code.place[id.block][id.node];
            for (int q = 0; q < int(hs.size()) && !copied; ++q)
                if (hs[q] == want) {
                    plan.fetches.push_back({id, q, fs, true});
                    copied = true;
                }
            if (copied) break;
        }
        if (copied) continue;

        bool common = std::all_of(held.begin(), held.end(), [&](const std::set<int>& s) { return s.count(want.partition); });
        int group = period ? (want.partition % (period * reps)) / period : -1;
        const auto& nc = *code.partitions[want.partition].code;
        std::vector<Fetch> cand;
        std::set<int> subnodes;
        for (std::size_t h = 0; h < helpers.size(); ++h) {
            if (period && common && int((h + 1) % reps) == group) continue;
            for (int t : helpers[h].second) {
                const auto& hs = code.place[helpers[h].first][t];
                for (int q = 0; q < int(hs.size()); ++q)
                    if (hs[q].partition == want.partition && hs[q].subnode != want.subnode &&
                        subnodes.insert(hs[q].subnode).second)
                        cand.push_back({{helpers[h].first, t}, q, fs, false});
            }
        }
        if (int(cand.size()) < nc.d)
            throw PartitionDecodeError(want.partition, "repair reaches " + std::to_string(cand.size()) + " of " +
                                                           std::to_string(nc.d) + " helper subnodes");
        plan.fetches.insert(plan.fetches.end(), cand.begin(), cand.begin() + nc.d);
    }
    return plan;
}

}  // namespace

RepairPlan plan_repair(const BfrCode& code, NodeId failed, const std::vector<int>& helper_blocks,
                       const std::vector<std::vector<int>>& helper_nodes) {
    const auto& p = code.params;
    code.check_node(failed);
    if (p.d == 0) throw PreconditionError("code has no block repair property");
    if (int(helper_blocks.size()) != p.b - p.sigma)
        throw PreconditionError("repair needs " + std::to_string(p.b - p.sigma) + " helper blocks, got " +
                                std::to_string(helper_blocks.size()));
    if (helper_nodes.size() != helper_blocks.size()) throw PreconditionError("repair: one node list per helper block");
    std::vector<std::pair<int, std::vector<int>>> hs;
    std::set<int> seen;
    for (std::size_t i = 0; i < helper_blocks.size(); ++i) {
        int b = helper_blocks[i];
        if (b == failed.block) throw PreconditionError("helper blocks contain the failed block");
        if (b < 0 || b >= code.blocks() || !seen.insert(b).second)
            throw PreconditionError("helper block " + std::to_string(b) + " invalid or repeated");
        std::set<int> ns(helper_nodes[i].begin(), helper_nodes[i].end());
        if (int(ns.size()) != p.d_r() || int(helper_nodes[i].size()) != p.d_r())
            throw PreconditionError("repair needs " + std::to_string(p.d_r()) + " distinct nodes in block " +
                                    std::to_string(b));
        for (int t : ns) code.check_node({b, t});
        hs.emplace_back(b, std::vector<int>(ns.begin(), ns.end()));
    }
    std::sort(hs.begin(), hs.end());
    return plan_core(code, failed, hs);
}

RepairPlan plan_repair_free(const BfrCode& code, NodeId failed, const std::vector<NodeId>& helpers) {
    code.check_node(failed);
    std::map<int, std::set<int>> by_block;
    for (auto id : helpers) {
        code.check_node(id);
        if (id == failed) throw PreconditionError("failed node listed as helper");
        if (!by_block[id.block].insert(id.node).second) throw PreconditionError("duplicate helper node");
    }
    std::vector<std::pair<int, std::vector<int>>> hs;
    for (const auto& [b, ns] : by_block) hs.emplace_back(b, std::vector<int>(ns.begin(), ns.end()));
    return plan_core(code, failed, hs);
}

std::vector<std::uint8_t> respond(const BfrCode& code, const RepairPlan& plan, NodeId helper,
                                  const std::vector<std::uint8_t>& content, std::size_t S) {
    std::size_t R = code.unit() * S;
    if (content.size() != std::size_t(code.node_symbols(helper)) * R)
        throw FormatError("helper content has the wrong size");
    const auto& f = code.field();
    const auto& failed_slots = code.place[plan.failed.block][plan.failed.node];
    std::vector<std::uint8_t> out;
    for (const auto& fe : plan.fetches) {
        if (fe.helper != helper) continue;
        const auto& nc = *code.partitions[code.place[helper.block][helper.node][fe.helper_slot].partition].code;
        const std::uint8_t* base = content.data() + std::size_t(code.slot_offset(helper, fe.helper_slot)) * R;
        if (fe.copy) {
            out.insert(out.end(), base, base + std::size_t(nc.alpha) * R);
            continue;
        }
        const auto& v = nc.repair[failed_slots[fe.failed_slot].subnode];
        std::size_t at = out.size();
        out.resize(at + std::size_t(nc.beta) * R, 0);
        std::vector<const std::uint8_t*> in;
        std::vector<std::uint8_t*> dst;
        for (int e = 0; e < nc.alpha; ++e) in.push_back(base + e * R);
        for (int j = 0; j < nc.beta; ++j) dst.push_back(out.data() + at + j * R);
        mix(f, v, in, dst, R);
    }
    return out;
}

std::vector<std::uint8_t> rebuild(const BfrCode& code, const RepairPlan& plan,
                                  const std::map<NodeId, std::vector<std::uint8_t>>& responses, std::size_t S) {
    std::size_t R = code.unit() * S;
    const auto& f = code.field();
    const auto& slots = code.place[plan.failed.block][plan.failed.node];
    // where each fetch's bytes start inside its helper's response
    std::map<NodeId, std::size_t> cursor;
    std::vector<const std::uint8_t*> at(plan.fetches.size());
    for (std::size_t i = 0; i < plan.fetches.size(); ++i) {
        const auto& fe = plan.fetches[i];
        auto it = responses.find(fe.helper);
        if (it == responses.end()) throw PreconditionError("missing response from a planned helper");
        const auto& nc = *code.partitions[slots[fe.failed_slot].partition].code;
        std::size_t len = std::size_t(fe.copy ? nc.alpha : nc.beta) * R;
        std::size_t& c = cursor[fe.helper];
        if (c + len > it->second.size()) throw FormatError("helper response too short");
        at[i] = it->second.data() + c;
        c += len;
    }
    for (const auto& [id, pos] : cursor)
        if (responses.at(id).size() != pos) throw FormatError("helper response has trailing bytes");

    std::vector<std::uint8_t> node(std::size_t(code.node_symbols(plan.failed)) * R, 0);
    for (int fs = 0; fs < int(slots.size()); ++fs) {
        const auto& nc = *code.partitions[slots[fs].partition].code;
        std::uint8_t* dst = node.data() + std::size_t(code.slot_offset(plan.failed, fs)) * R;
        std::vector<int> helpers;
        std::vector<const std::uint8_t*> in;
        bool done = false;
        for (std::size_t i = 0; i < plan.fetches.size(); ++i) {
            const auto& fe = plan.fetches[i];
            if (fe.failed_slot != fs) continue;
            if (fe.copy) {
                std::copy(at[i], at[i] + std::size_t(nc.alpha) * R, dst);
                done = true;
                break;
            }
            helpers.push_back(code.place[fe.helper.block][fe.helper.node][fe.helper_slot].subnode);
            for (int j = 0; j < nc.beta; ++j) in.push_back(at[i] + j * R);
        }
        if (done) continue;
        auto x = nc.repair_matrix(slots[fs].subnode, helpers);
        std::vector<std::uint8_t*> out;
        for (int e = 0; e < nc.alpha; ++e) out.push_back(dst + e * R);
        mix(f, x, in, out, R);
    }
    return node;
}

RepairResult run_repair(const BfrCode& code, const ShardSet& shards, const RepairPlan& plan) {
    RepairResult res;
    res.plan = plan;
    std::size_t R = code.unit() * shards.symbol_size;
    std::map<NodeId, std::vector<std::uint8_t>> responses;
    for (auto id : plan.helpers) {
        auto r = respond(code, plan, id, shards.at(id), shards.symbol_size);
        std::uint64_t sym = r.size() / R;
        if (sym) {
            res.bandwidth.per_node[id] = sym;
            res.bandwidth.per_block[id.block] += sym;
            res.bandwidth.total += sym;
        }
        responses[id] = std::move(r);
    }
    res.node = rebuild(code, plan, responses, shards.symbol_size);
    return res;
}

RepairResult repair(const BfrCode& code, const ShardSet& shards, NodeId failed, const std::vector<int>& helper_blocks,
                    const std::vector<std::vector<int>>& helper_nodes) {
    return run_repair(code, shards, plan_repair(code, failed, helper_blocks, helper_nodes));
}

}  // namespace bfr::core
