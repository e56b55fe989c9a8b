#include <cstring>
#include <functional>

#include "bfr/bfr.hpp"
#include "bfr/lrc.hpp"

namespace bfr::core {

namespace {

int get_int(const Recipe& r, const std::string& key) {
    auto it = r.find(key);
    if (it == r.end()) throw ParamError("parameter '" + key + "' present", "missing from parameters");
    try {
        std::size_t used = 0;
        long v = std::stol(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(it->second);
        return int(v);
    } catch (const std::exception&) {
        throw ParamError("parameter '" + key + "' is an integer", "'" + it->second + "'");
    }
}

std::string get_str(const Recipe& r, const std::string& key) {
    auto it = r.find(key);
    if (it == r.end()) throw ParamError("parameter '" + key + "' present", "missing from parameters");
    return it->second;
}

codes::RegenParams get_sub(const Recipe& r) {
    auto mode = get_str(r, "sub_mode");
    int n = get_int(r, "sub_n"), k = get_int(r, "sub_k"), d = get_int(r, "sub_d");
    int beta = r.count("sub_beta") ? get_int(r, "sub_beta") : 1;
    if (mode == "MSR") return codes::RegenParams::msr(n, k, d, beta);
    if (mode == "MBR") return codes::RegenParams::mbr(n, k, d, beta);
    throw ParamError("sub_mode is MSR or MBR", "'" + mode + "'");
}

class Writer {
public:
    std::vector<std::uint8_t> out;
    void u8(std::uint8_t v) { out.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
    }
    void str(const std::string& s) {
        u32(std::uint32_t(s.size()));
        out.insert(out.end(), s.begin(), s.end());
    }
    void bytes(const std::vector<std::uint8_t>& b) { out.insert(out.end(), b.begin(), b.end()); }
};

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& b) : b_(b) {}
    void need(std::size_t n) {
        if (pos_ + n > b_.size()) throw FormatError("shard file truncated at byte " + std::to_string(pos_));
    }
    std::uint8_t u8() {
        need(1);
        return b_[pos_++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(b_[pos_++]) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(b_[pos_++]) << (8 * i);
        return v;
    }
    std::string str() {
        auto n = u32();
        need(n);
        std::string s(b_.begin() + pos_, b_.begin() + pos_ + n);
        pos_ += n;
        return s;
    }
    std::vector<std::uint8_t> bytes(std::uint64_t n) {
        need(n);
        std::vector<std::uint8_t> v(b_.begin() + pos_, b_.begin() + pos_ + n);
        pos_ += n;
        return v;
    }
    bool done() const { return pos_ == b_.size(); }

private:
    const std::vector<std::uint8_t>& b_;
    std::size_t pos_ = 0;
};

constexpr std::uint8_t kVersion = 1;

gf::FieldSpec symbol_field(const BfrCode& code) {
    return code.outer ? code.outer->field().spec() : code.field().spec();
}

void write_field(Writer& w, const gf::FieldSpec& f) {
    w.u8(std::uint8_t(f.kind));
    w.u32(f.p);
    w.u32(f.w);
    w.u32(f.poly);
    w.u32(f.m);
    w.u32(std::uint32_t(f.ext_modulus.size()));
    for (auto c : f.ext_modulus) w.u32(c);
}

gf::FieldSpec read_field(Reader& r) {
    gf::FieldSpec f;
    auto kind = r.u8();
    if (kind > 2) throw FormatError("unknown field kind " + std::to_string(kind));
    f.kind = gf::FieldKind(kind);
    f.p = r.u32();
    f.w = r.u32();
    f.poly = r.u32();
    f.m = r.u32();
    auto n = r.u32();
    if (n > 4096) throw FormatError("field modulus too long");
    for (std::uint32_t i = 0; i < n; ++i) f.ext_modulus.push_back(r.u32());
    return f;
}

}  // namespace

BfrCode build_code(const Recipe& r) {
    auto c = construction_from_name(get_str(r, "construction"));
    BfrCode code;
    switch (c) {
        case Construction::transpose: code = transpose_code(get_int(r, "n"), get_int(r, "k")); break;
        case Construction::projective: code = projective_code(get_int(r, "p"), get_sub(r)); break;
        case Construction::toy: code = toy_code(get_sub(r)); break;
        case Construction::dcbd: code = dcbd_code(get_int(r, "b"), get_int(r, "sigma"), get_sub(r)); break;
        case Construction::gab_mds:
            code = gab_mds_code(get_int(r, "b"), get_int(r, "c"), get_int(r, "k_c"), get_int(r, "rho"));
            break;
        case Construction::relaxed:
            code = relaxed_code(get_int(r, "p"), get_sub(r), get_int(r, "sigma"), get_int(r, "rho"));
            break;
        case Construction::lrc_iv:
        case Construction::lrc_v:
        case Construction::lrc_vi: code = lrc::build_lrc(r); break;
    }
    // Parameters given alongside the construction must agree with it.
    for (const auto& [key, field] : std::initializer_list<std::pair<const char*, int SystemParams::*>>{
             {"n", &SystemParams::n},
             {"b", &SystemParams::b},
             {"M", &SystemParams::M},
             {"k", &SystemParams::k},
             {"rho", &SystemParams::rho},
             {"alpha", &SystemParams::alpha},
             {"d", &SystemParams::d},
             {"sigma", &SystemParams::sigma},
             {"beta", &SystemParams::beta}})
        if (r.count(key) && get_int(r, key) != code.params.*field)
            throw ParamError(std::string(key) + " matches the construction",
                             "given " + r.at(key) + ", construction has " + std::to_string(code.params.*field));
    return code;
}

std::vector<std::uint8_t> write_shards(const BfrCode& code, const ShardSet& shards) {
    Writer w;
    for (char ch : std::string("BFR1")) w.u8(std::uint8_t(ch));
    w.u8(kVersion);
    w.u8(std::uint8_t(code.tag));
    w.str(recipe_to_text(code.recipe));
    const auto& p = code.params;
    for (int v : {p.n, p.b, p.M, p.k, p.rho, p.alpha, p.d, p.sigma, p.beta}) w.u32(std::uint32_t(v));
    write_field(w, symbol_field(code));
    w.u64(shards.symbol_size);
    w.u64(shards.file_len);
    // layout table
    w.u32(std::uint32_t(code.partitions.size()));
    for (const auto& part : code.partitions) {
        w.u32(std::uint32_t(part.offset));
        w.u32(std::uint32_t(part.code->M));
    }
    w.u32(std::uint32_t(code.blocks()));
    for (int b = 0; b < code.blocks(); ++b) {
        w.u32(std::uint32_t(code.place[b].size()));
        for (const auto& node : code.place[b]) {
            w.u32(std::uint32_t(node.size()));
            for (const auto& s : node) {
                w.u32(std::uint32_t(s.partition));
                w.u32(std::uint32_t(s.subnode));
            }
        }
    }
    w.u32(std::uint32_t(code.groups.size()));
    for (const auto& g : code.groups) {
        w.u32(std::uint32_t(g.size()));
        for (int x : g) w.u32(std::uint32_t(x));
    }
    for (int b = 0; b < code.blocks(); ++b)
        for (int t = 0; t < int(code.place[b].size()); ++t) {
            const auto& data = shards.at({b, t});
            w.u64(data.size());
            w.bytes(data);
        }
    return std::move(w.out);
}

LoadedShards read_shards(const std::vector<std::uint8_t>& bytes) {
    Reader r(bytes);
    std::string magic;
    for (int i = 0; i < 4; ++i) magic += char(r.u8());
    if (magic != "BFR1") throw FormatError("not a shard file (bad magic)");
    if (auto v = r.u8(); v != kVersion) throw FormatError("unsupported shard version " + std::to_string(v));
    auto tag = r.u8();
    auto recipe = parse_recipe(r.str());
    LoadedShards out;
    try {
        out.code = build_code(recipe);
    } catch (const ParamError& e) {
        throw FormatError(std::string("shard parameters rejected: ") + e.what());
    }
    const auto& code = out.code;
    if (tag != std::uint8_t(code.tag)) throw FormatError("construction tag does not match parameters");
    SystemParams p;
    for (int* f : {&p.n, &p.b, &p.M, &p.k, &p.rho, &p.alpha, &p.d, &p.sigma, &p.beta}) *f = int(r.u32());
    if (!(p == code.params)) throw FormatError("header parameters do not match construction: " + p.to_string());
    if (!(read_field(r) == symbol_field(code))) throw FormatError("field spec does not match construction");
    out.shards.symbol_size = r.u64();
    out.shards.file_len = r.u64();
    if (out.shards.symbol_size == 0) throw FormatError("zero symbol size");

    auto bad_layout = [] { return FormatError("layout table does not match construction"); };
    if (r.u32() != code.partitions.size()) throw bad_layout();
    for (const auto& part : code.partitions)
        if (int(r.u32()) != part.offset || int(r.u32()) != part.code->M) throw bad_layout();
    if (int(r.u32()) != code.blocks()) throw bad_layout();
    for (int b = 0; b < code.blocks(); ++b) {
        if (r.u32() != code.place[b].size()) throw bad_layout();
        for (const auto& node : code.place[b]) {
            if (r.u32() != node.size()) throw bad_layout();
            for (const auto& s : node)
                if (int(r.u32()) != s.partition || int(r.u32()) != s.subnode) throw bad_layout();
        }
    }
    if (r.u32() != code.groups.size()) throw bad_layout();
    for (const auto& g : code.groups) {
        if (r.u32() != g.size()) throw bad_layout();
        for (int x : g)
            if (int(r.u32()) != x) throw bad_layout();
    }
    std::uint64_t R = std::uint64_t(code.unit()) * out.shards.symbol_size;
    if (out.shards.file_len > std::uint64_t(code.file_symbols()) * R) throw FormatError("file length exceeds capacity");
    out.shards.nodes.resize(code.blocks());
    for (int b = 0; b < code.blocks(); ++b)
        for (int t = 0; t < int(code.place[b].size()); ++t) {
            auto len = r.u64();
            if (len != code.node_symbols({b, t}) * R)
                throw FormatError("node (" + std::to_string(b) + "," + std::to_string(t) + ") payload has wrong length");
            out.shards.nodes[b].push_back(r.bytes(len));
        }
    if (!r.done()) throw FormatError("trailing bytes after shard payloads");
    return out;
}

}  // namespace bfr::core
