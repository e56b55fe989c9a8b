#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "bfr/bfr.hpp"
#include "bfr/bounds.hpp"
#include "bfr/designs.hpp"
#include "bfr/errors.hpp"
#include "bfr/harness.hpp"
#include "bfr/lrc.hpp"

namespace fs = std::filesystem;
using namespace bfr;
using core::NodeId;
using core::Recipe;

namespace {

// Malformed flag values found after parsing; exits with the usage status.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr const char* kShardFile = "shards.bfr";

std::vector<std::uint8_t> read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read " + p.string());
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

void write_text(const fs::path& p, const std::string& s) { write_file(p, {s.begin(), s.end()}); }

// A directory (existing, or named with a trailing slash) holds shards.bfr.
fs::path shard_path(const std::string& arg, bool create) {
    fs::path p(arg);
    bool dir = fs::is_directory(p) || (!arg.empty() && arg.back() == '/');
    if (!dir) return p;
    if (create) fs::create_directories(p);
    return p / kShardFile;
}

int parse_int(const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
}

// "1,3,4" (1-based) -> {0,2,3}.
std::vector<int> parse_index_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int v = parse_int(item);
        if (v < 1) throw UsageError("indices are 1-based: '" + s + "'");
        out.push_back(v - 1);
    }
    if (out.empty()) throw UsageError("empty index list");
    return out;
}

// "1,2:3,4" -> one node list per block.
std::vector<std::vector<int>> parse_node_lists(const std::string& s) {
    std::vector<std::vector<int>> out;
    std::stringstream ss(s);
    std::string group;
    while (std::getline(ss, group, ':')) out.push_back(parse_index_list(group));
    return out;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s));
    int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw UsageError("zero denominator: '" + s + "'");
    return Rational(parse_int(s.substr(0, slash))) / den;
}

std::string fmt(const Rational& x) { return to_string(x) + " (" + to_decimal(x, 6) + ")"; }

// Flags that name a code instance: a recipe file, a construction with its
// parameters, and free-form key=value overrides.
struct CodeOptions {
    std::string recipe_file, construction, sub;
    std::vector<std::string> sets;
    std::map<std::string, int> ints;
    std::vector<std::pair<std::string, std::string>> flag_keys = {
        {"n", "n"},       {"k", "k"},         {"p", "p"},           {"b", "b"},           {"c", "c"},
        {"sigma", "sigma"}, {"rho", "rho"},   {"k-c", "k_c"},       {"M", "M"},           {"N", "N"},
        {"b-L", "b_L"},   {"rho-L", "rho_L"}, {"sigma-L", "sigma_L"}, {"k-L", "k_L"}};

    void add(CLI::App* app) {
        app->add_option("--recipe", recipe_file, "Recipe file (key: value lines)");
        app->add_option("--construction", construction,
                        "transpose, projective, toy, dcbd, gab_mds, relaxed, lrc_iv, lrc_v, lrc_vi");
        app->add_option("--sub", sub, "Sub-code MODE:n,k,d[,beta], e.g. MSR:6,3,4");
        app->add_option("--set", sets, "Extra recipe entry key=value (repeatable)");
        for (const auto& [flag, key] : flag_keys) {
            auto k = key;
            app->add_option_function<int>("--" + flag, [this, k](int v) { ints[k] = v; }, "Recipe value " + key);
        }
    }

    bool given() const { return !recipe_file.empty() || !construction.empty(); }

    Recipe recipe() const {
        Recipe r;
        if (!recipe_file.empty()) {
            auto bytes = read_file(recipe_file);
            r = core::parse_recipe(std::string(bytes.begin(), bytes.end()));
        }
        if (!construction.empty()) r["construction"] = construction;
        if (!r.count("construction")) throw UsageError("--construction or --recipe is required");
        for (const auto& [k, v] : ints) r[k] = std::to_string(v);
        if (!sub.empty()) {
            auto colon = sub.find(':');
            if (colon == std::string::npos) throw UsageError("--sub is MODE:n,k,d[,beta]");
            std::vector<int> nums;
            std::stringstream ss(sub.substr(colon + 1));
            std::string item;
            while (std::getline(ss, item, ',')) nums.push_back(parse_int(item));
            if (nums.size() < 3 || nums.size() > 4) throw UsageError("--sub is MODE:n,k,d[,beta]");
            r["sub_mode"] = sub.substr(0, colon);
            r["sub_n"] = std::to_string(nums[0]);
            r["sub_k"] = std::to_string(nums[1]);
            r["sub_d"] = std::to_string(nums[2]);
            r["sub_beta"] = std::to_string(nums.size() == 4 ? nums[3] : 1);
        }
        for (const auto& s : sets) {
            auto eq = s.find('=');
            if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + s + "'");
            r[s.substr(0, eq)] = s.substr(eq + 1);
        }
        return r;
    }
};

void print_params(const core::BfrCode& code) {
    std::cout << "construction: " << core::construction_name(code.tag) << "\n"
              << "params: " << code.params.to_string() << "\n"
              << "blocks: " << code.blocks() << " x " << code.nodes_per_block() << " nodes\n";
}

bool is_lrc(const core::BfrCode& code) { return !code.groups.empty(); }

core::RepairResult repair_any(const core::BfrCode& code, const core::ShardSet& sh, NodeId f,
                              const std::vector<int>& blocks, const std::vector<std::vector<int>>& nodes) {
    return is_lrc(code) ? lrc::local_repair(code, sh, f, blocks, nodes) : core::repair(code, sh, f, blocks, nodes);
}

std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out(n);
    for (auto& x : out) x = std::uint8_t(rng());
    return out;
}

// Levenshtein distance, for "did you mean" hints.
std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string suggestion(const CLI::App& app, const std::vector<std::string>& extras) {
    const CLI::App* leaf = &app;
    for (bool descended = true; descended;) {
        descended = false;
        for (const auto* sub : leaf->get_subcommands())
            if (sub->parsed()) {
                leaf = sub;
                descended = true;
                break;
            }
    }
    std::string out;
    for (const auto& x : extras) {
        if (x.rfind("--", 0) != 0) continue;
        std::string flag = x.substr(2, x.find('=') == std::string::npos ? std::string::npos : x.find('=') - 2);
        std::string best;
        std::size_t best_d = 3;
        for (const auto* opt : leaf->get_options())
            for (const auto& name : opt->get_lnames()) {
                auto d = edit_distance(flag, name);
                if (d < best_d) best_d = d, best = name;
            }
        if (!best.empty()) out += "did you mean --" + best + " instead of " + x + "?\n";
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block failure resilient codes: build, exercise and analyse", "bfr"};
    app.require_subcommand(1);
    std::uint64_t seed = 1;

    // design
    auto* design = app.add_subcommand("design", "Generate or check a block design");
    std::string design_kind, design_out, design_check;
    int design_p = 2, design_v = 0, design_kappa = 0, design_reps = 1;
    design->add_option("--kind", design_kind, "projective, affine (resolvable) or dcbd")
        ->check(CLI::IsMember({"projective", "affine", "dcbd"}));
    design->add_option("--p", design_p, "Prime order for projective and affine designs");
    design->add_option("--v", design_v, "DCBD base points");
    design->add_option("--kappa", design_kappa, "DCBD base block size");
    design->add_option("--reps", design_reps, "DCBD repetitions");
    design->add_option("--out", design_out, "Write the design here instead of stdout");
    design->add_option("--check", design_check, "Parse and verify a design file");

    // encode
    auto* encode = app.add_subcommand("encode", "Encode a file into shards");
    CodeOptions encode_code;
    encode_code.add(encode);
    std::string encode_in, encode_out;
    std::size_t symbol_size = 0;
    encode->add_option("--in", encode_in, "Input file")->required();
    encode->add_option("--out", encode_out, "Shard file, or directory receiving shards.bfr")->required();
    encode->add_option("--symbol-size", symbol_size, "Bytes per symbol (0: smallest that fits)");

    // collect
    auto* collect = app.add_subcommand("collect", "Reconstruct the file from chosen blocks and nodes");
    std::string collect_shards, collect_blocks, collect_nodes, collect_out;
    collect->add_option("--shards", collect_shards, "Shard file or directory")->required();
    collect->add_option("--blocks", collect_blocks, "Blocks to read, 1-based, e.g. 1,3")->required();
    collect->add_option("--nodes", collect_nodes, "Nodes per chosen block, e.g. 1,2:2,4")->required();
    collect->add_option("--out", collect_out, "Output file")->required();

    // repair
    auto* repair = app.add_subcommand("repair", "Rebuild one node from helpers and meter the download");
    std::string repair_shards, repair_hblocks, repair_hnodes, repair_out;
    int repair_block = 0, repair_node = 0;
    repair->add_option("--shards", repair_shards, "Shard file or directory")->required();
    repair->add_option("--block", repair_block, "Failed block, 1-based")->required();
    repair->add_option("--node", repair_node, "Failed node within the block, 1-based")->required();
    repair->add_option("--helper-blocks", repair_hblocks, "Helper blocks, 1-based")->required();
    repair->add_option("--helper-nodes", repair_hnodes, "Helper nodes per helper block, e.g. 1,2:1,2")->required();
    repair->add_option("--out", repair_out, "Write the rebuilt node content here");

    // verify
    auto* verify = app.add_subcommand("verify", "Exercise collects, repairs and repair chains");
    CodeOptions verify_code;
    verify_code.add(verify);
    std::string verify_shards;
    long budget = 5000;
    verify->add_option("--shards", verify_shards, "Shard file or directory (else build from recipe flags)");
    verify->add_option("--budget", budget, "Scenarios per category before sampling");
    verify->add_option("--seed", seed, "Seed for sampling and for the random test file");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "Regime, closed-form corners and the min-cut oracle");
    int bb = 0, brho = 0, bsigma = 0, bk = 0, bd = 0, bc = 0;
    std::string bM = "1", balpha_ratio;
    bool boracle = false, bsampled = false;
    int bsamples = 64;
    bnd->add_option("--b", bb, "Blocks")->required();
    bnd->add_option("--rho", brho, "Block erasures tolerated by collection")->required();
    bnd->add_option("--sigma", bsigma, "Blocks excluded from repair")->required();
    bnd->add_option("--k", bk, "Nodes read by a data collector")->required();
    bnd->add_option("--d", bd, "Helpers per repair")->required();
    bnd->add_option("--c", bc, "Nodes per block (default max(k_c, d_r))");
    bnd->add_option("--M", bM, "File size, integer or p/q");
    bnd->add_option("--alpha-ratio", balpha_ratio, "Also evaluate the bound at alpha = ratio * beta, beta = 1");
    bnd->add_flag("--oracle", boracle, "Check both corners against the min-cut oracle");
    bnd->add_flag("--sampled", bsampled, "Sample failure orders instead of enumerating them");
    bnd->add_option("--samples", bsamples, "Orders drawn with --sampled");
    bnd->add_option("--seed", seed, "Seed for --sampled");

    // tradeoff
    auto* trade = app.add_subcommand("tradeoff", "Two-block storage/bandwidth trade-off curve");
    int tk = 0, td = 0, tsteps = 16;
    std::string tM = "1", tcsv;
    bool texact = false;
    trade->add_option("--k", tk, "Nodes read by a data collector")->required();
    trade->add_option("--d", td, "Helpers per repair")->required();
    trade->add_option("--M", tM, "File size, integer or p/q");
    trade->add_option("--steps", tsteps, "Intervals between the corners");
    trade->add_option("--csv", tcsv, "Write CSV here instead of stdout");
    trade->add_flag("--exact", texact, "Exact p/q numbers instead of decimals");

    // delay
    auto* delay = app.add_subcommand("delay", "Repair delay versus storage overhead sweep");
    harness::DelayQuery dq;
    std::string dbw, dcsv;
    bool dexact = false, dsummary = false;
    delay->add_option("--b", dq.b, "Blocks");
    delay->add_option("--n", dq.n, "Nodes");
    delay->add_option("--sigma", dq.sigma, "Blocks excluded from repair");
    delay->add_option("--bw", dbw, "Bandwidth of each helper block, e.g. 1,1,1,1/2");
    delay->add_option("--csv", dcsv, "Write CSV here instead of stdout");
    delay->add_flag("--exact", dexact, "Exact p/q numbers instead of decimals");
    delay->add_flag("--summary", dsummary, "Print envelope comparison instead of CSV");

    // lrc
    auto* lrc_cmd = app.add_subcommand("lrc", "Locally repairable BFR codes");
    lrc_cmd->require_subcommand(1);
    auto* lrc_encode = lrc_cmd->add_subcommand("encode", "Encode a file with a locally repairable construction");
    CodeOptions lrc_code;
    lrc_code.add(lrc_encode);
    std::string lrc_in, lrc_out;
    lrc_encode->add_option("--in", lrc_in, "Input file")->required();
    lrc_encode->add_option("--out", lrc_out, "Shard file, or directory receiving shards.bfr")->required();
    auto* lrc_bound = lrc_cmd->add_subcommand("bound", "Resilience bound and local file size bounds");
    long lM = 0, lKL = 0;
    int lb = 0, lbL = 0, lrhoL = 0;
    lrc_bound->add_option("--file-size", lM, "File size M")->required();
    lrc_bound->add_option("--K-L", lKL, "Local dimension")->required();
    lrc_bound->add_option("--blocks", lb, "Blocks b")->required();
    lrc_bound->add_option("--group", lbL, "Blocks per local group")->required();
    lrc_bound->add_option("--group-rho", lrhoL, "Block erasures tolerated inside a group")->required();
    auto* lrc_witness = lrc_cmd->add_subcommand("witness", "Exhaustive resilience witness of an instance");
    CodeOptions lrc_witness_code;
    lrc_witness_code.add(lrc_witness);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        if (rc == 0) return 0;
        if (dynamic_cast<const CLI::ExtrasError*>(&e)) {
            // The message ends with the unexpected arguments.
            std::string msg = e.what();
            std::vector<std::string> extras;
            std::istringstream is(msg.substr(msg.find(':') + 1));
            for (std::string tok; is >> tok;) extras.push_back(tok);
            std::cerr << suggestion(app, extras);
        }
        return 2;
    }

    try {
        if (design->parsed()) {
            if (!design_check.empty()) {
                auto bytes = read_file(design_check);
                auto d = designs::parse_design(std::string(bytes.begin(), bytes.end()));
                auto rep = d.classes.size() > 1 ? designs::verify_design(d) : designs::verify_design(d.design);
                std::cout << "v=" << d.design.v << " kappa=" << d.design.kappa << " blocks=" << d.design.b()
                          << " classes=" << d.classes.size() << "\n";
                for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
                std::cout << (rep.ok ? "ok\n" : "FAILED\n");
                return rep.ok ? 0 : 1;
            }
            if (design_kind.empty()) throw UsageError("design needs --kind or --check");
            std::string text;
            if (design_kind == "projective") text = designs::to_text(designs::projective_plane(design_p));
            if (design_kind == "affine") text = designs::to_text(designs::rbibd_affine(design_p));
            if (design_kind == "dcbd") {
                if (design_v <= 0 || design_kappa <= 0) throw UsageError("dcbd needs --v and --kappa");
                text = designs::to_text(designs::dcbd(design_v, design_kappa, design_reps));
            }
            if (design_out.empty())
                std::cout << text;
            else
                write_text(design_out, text);
            return 0;
        }

        auto do_encode = [&](const CodeOptions& co, const std::string& in, const std::string& out, bool lrc_only) {
            auto code = core::build_code(co.recipe());
            if (lrc_only && !is_lrc(code)) throw UsageError("lrc encode needs lrc_iv, lrc_v or lrc_vi");
            auto sh = core::encode(code, read_file(in), symbol_size);
            auto path = shard_path(out, true);
            write_file(path, core::write_shards(code, sh));
            print_params(code);
            std::cout << "symbol size: " << sh.symbol_size << " bytes\nfile length: " << sh.file_len
                      << " bytes\nwrote: " << path.string() << "\n";
            return 0;
        };
        if (encode->parsed()) return do_encode(encode_code, encode_in, encode_out, false);

        if (collect->parsed()) {
            auto loaded = core::read_shards(read_file(shard_path(collect_shards, false)));
            auto blocks = parse_index_list(collect_blocks);
            auto nodes = parse_node_lists(collect_nodes);
            auto file = core::collect(loaded.code, loaded.shards, blocks, nodes);
            write_file(collect_out, file);
            std::cout << "collected " << file.size() << " bytes\n";
            return 0;
        }

        if (repair->parsed()) {
            auto loaded = core::read_shards(read_file(shard_path(repair_shards, false)));
            NodeId f{repair_block - 1, repair_node - 1};
            loaded.code.check_node(f);
            auto res = repair_any(loaded.code, loaded.shards, f, parse_index_list(repair_hblocks),
                                  parse_node_lists(repair_hnodes));
            std::cout << "downloaded: " << res.bandwidth.total << " symbols\n";
            for (const auto& [b, v] : res.bandwidth.per_block) std::cout << "  block " << b + 1 << ": " << v << "\n";
            bool exact = res.node == loaded.shards.at(f);
            std::cout << "exact: " << (exact ? "yes" : "no") << "\n";
            if (!repair_out.empty()) write_file(repair_out, res.node);
            return exact ? 0 : 1;
        }

        if (verify->parsed()) {
            core::BfrCode code;
            core::ShardSet sh;
            if (!verify_shards.empty()) {
                auto loaded = core::read_shards(read_file(shard_path(verify_shards, false)));
                code = std::move(loaded.code);
                sh = std::move(loaded.shards);
            } else {
                code = core::build_code(verify_code.recipe());
                sh = core::encode(code, random_bytes(std::size_t(code.file_symbols()) * code.unit() * 2, seed));
            }
            auto rep = harness::verify_exhaustive(code, sh, budget, seed);
            std::cout << rep.to_text();
            return rep.ok() ? 0 : 1;
        }

        if (bnd->parsed()) {
            core::SystemParams p;
            p.b = bb, p.rho = brho, p.sigma = bsigma, p.k = bk, p.d = bd, p.beta = 1;
            int c = bc ? bc : std::max(p.k_c(), p.d_r());
            p.n = p.b * c;
            Rational M = parse_rational(bM);
            auto cp = bounds::corner_points(p, M);
            std::cout << "regime: " << cp.display << (cp.conjectured ? " (conjectured)" : "") << "\n"
                      << "k_c=" << p.k_c() << " d_r=" << p.d_r() << " c=" << c << " M=" << to_string(M) << "\n"
                      << "MSR: alpha=" << fmt(cp.msr.alpha) << " gamma=" << fmt(cp.msr.gamma) << "\n"
                      << "MBR: alpha=" << fmt(cp.mbr.alpha) << " gamma=" << fmt(cp.mbr.gamma) << "\n";
            if (p.d >= p.k)
                std::cout << "classical MSR gamma=" << fmt(bounds::gamma_msr_classical(M, p.k, p.d))
                          << " classical MBR gamma=" << fmt(bounds::gamma_mbr_classical(M, p.k, p.d)) << "\n";
            if (!balpha_ratio.empty()) {
                auto r = bounds::file_size_bound(p, parse_rational(balpha_ratio), 1);
                std::cout << "bound at alpha=" << balpha_ratio << " beta=1: " << fmt(r.value) << "\n";
            }
            if (boracle) {
                bounds::OracleOptions opt;
                opt.exhaustive = !bsampled;
                opt.samples = bsamples;
                opt.seed = seed;
                bool agree = true;
                for (const auto* pt : {&cp.msr, &cp.mbr}) {
                    Rational beta = pt->gamma / p.d;
                    auto o = bounds::mincut_oracle(p, pt->alpha, beta, opt);
                    bool eq = o.min_cut == M;
                    agree = agree && eq;
                    std::cout << "oracle " << pt->source << ": min-cut=" << fmt(o.min_cut)
                              << " orders=" << o.orders << " order-invariant=" << (o.order_invariant ? "yes" : "no")
                              << (eq ? " agrees" : " DIFFERS (argmin " + o.argmin.to_string() + ")") << "\n";
                }
                std::cout << "oracle agreement: " << (agree ? "yes" : "no") << "\n";
            }
            return 0;
        }

        if (trade->parsed()) {
            core::SystemParams p;
            p.b = 2, p.rho = 0, p.sigma = 1, p.k = tk, p.d = td, p.beta = 1;
            p.n = 2 * std::max(p.k_c(), p.d_r());
            auto csv = harness::tradeoff_csv(bounds::tradeoff_curve(p, parse_rational(tM), tsteps), texact);
            if (tcsv.empty())
                std::cout << csv;
            else
                write_text(tcsv, csv);
            return 0;
        }

        if (delay->parsed()) {
            if (!dbw.empty()) {
                std::stringstream ss(dbw);
                std::string item;
                while (std::getline(ss, item, ',')) dq.bw.push_back(parse_rational(item));
            }
            auto rows = harness::repair_delay_sweep(dq);
            if (rows.empty()) {
                std::cerr << "no feasible parameter set for b=" << dq.b << " n=" << dq.n << " sigma=" << dq.sigma
                          << "\n";
                return 1;
            }
            if (dsummary) {
                for (const auto& e : harness::compare_mbr_envelopes(rows, Rational(13)))
                    std::cout << "overhead " << to_string(e.overhead) << ": envelope " << to_string(e.bfr_mbr) << " "
                              << to_string(e.mbr) << " " << to_string(e.mbr_sym) << "; hull "
                              << to_string(e.hull_bfr_mbr) << " " << to_string(e.hull_mbr) << " "
                              << to_string(e.hull_mbr_sym) << "\n";
                return 0;
            }
            auto csv = harness::delay_csv(rows, dexact);
            if (dcsv.empty())
                std::cout << csv;
            else
                write_text(dcsv, csv);
            return 0;
        }

        if (lrc_encode->parsed()) return do_encode(lrc_code, lrc_in, lrc_out, true);

        if (lrc_bound->parsed()) {
            int bound = lrc::resilience_bound(lM, lKL, lb, lbL, lrhoL);
            std::cout << "resilience bound: " << bound << "\n";
            if (lKL % (lbL - lrhoL) == 0 && lb % lbL == 0) {
                auto ec = lrc::erasure_cases(lM, lKL, lb, lbL, lrhoL);
                std::cout << "erasure case " << ec.which << ": a1=" << ec.a1 << " b1=" << ec.b1 << " g1=" << ec.g1
                          << " tolerated=" << ec.E << "\n";
            }
            return 0;
        }

        if (lrc_witness->parsed()) {
            auto code = core::build_code(lrc_witness_code.recipe());
            auto w = lrc::resilience_witness_search(code);
            print_params(code);
            std::cout << "resilience: " << w.resilience << "\n";
            if (!w.surviving.empty()) {
                std::cout << "undecodable access: blocks";
                for (std::size_t i = 0; i < w.surviving.size(); ++i) {
                    std::cout << " " << w.surviving[i] + 1 << "[";
                    for (std::size_t j = 0; j < w.nodes[i].size(); ++j)
                        std::cout << (j ? "," : "") << w.nodes[i][j] + 1;
                    std::cout << "]";
                }
                std::cout << " entropy " << w.entropy << " of " << code.file_symbols() << "\n";
            }
            if (is_lrc(code)) {
                auto lp = lrc::lrc_params(code);
                std::cout << "resilience bound: " << lrc::resilience_bound(lp.M, lp.K_L, lp.b, lp.b_L, lp.rho_L)
                          << "\n";
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
