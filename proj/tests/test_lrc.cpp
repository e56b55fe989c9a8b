#include <random>

#include "bfr/bfr.hpp"
#include "bfr/combinatorics.hpp"
#include "bfr/errors.hpp"
#include "bfr/lrc.hpp"
#include "doctest.h"

using namespace bfr;
using namespace bfr::lrc;
using core::NodeId;
using codes::RegenParams;

namespace {

std::vector<std::uint8_t> random_file(std::size_t len, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<std::uint8_t> f(len);
    for (auto& x : f) x = std::uint8_t(rng());
    return f;
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

// Independent count of tolerated block erasures for Construction V: erase
// whole groups first, then as many blocks of one more group as the outer
// code's spare rank allows.
int erasures_by_rank(long M, long N, long K_L, int b_L, int c) {
    long spare = N - M;  // rank erasures the outer code absorbs
    int groups = int(N / K_L), E = 0;
    for (int g = 0; g < groups; ++g) {
        // rank lost by erasing e blocks of one group
        int e = b_L;
        while (e > 0 && K_L - std::min<long>(K_L, long(b_L - e) * c) > spare) --e;
        E += e;
        if (e < b_L) break;
        spare -= K_L;
    }
    return E;
}

std::map<NodeId, std::vector<std::uint8_t>> nodes_of(const core::BfrCode& code, const core::ShardSet& sh,
                                                     const std::vector<int>& blocks) {
    std::map<NodeId, std::vector<std::uint8_t>> out;
    for (auto id : code.block_nodes(blocks)) out[id] = sh.at(id);
    return out;
}

}  // namespace

TEST_CASE("resilience bound") {
    CHECK(resilience_bound(8, 4, 6, 3, 1) == 1);
    for (int M = 1; M <= 20; ++M)
        for (int K_L = 1; K_L <= 8; ++K_L) CHECK(resilience_bound(M, K_L, 12, 3, 0) == 12 - ceil_div(M * 3, K_L));
    for (int b_L = 2; b_L <= 6; ++b_L)
        for (int rho_L = 0; rho_L < b_L; ++rho_L) CHECK(resilience_bound(10, 10, b_L, b_L, rho_L) == rho_L);
}

TEST_CASE("erasure case split agrees with the bound") {
    for (int b_L = 1; b_L <= 4; ++b_L)
        for (int groups = 1; groups <= 3; ++groups)
            for (int rho_L = 0; rho_L < b_L; ++rho_L)
                for (int unit = 1; unit <= 3; ++unit) {
                    int b = b_L * groups;
                    long K_L = long(unit) * (b_L - rho_L), N = K_L * groups;
                    for (long M = 1; M <= N; ++M) {
                        auto e = erasure_cases(M, K_L, b, b_L, rho_L);
                        CAPTURE(M);
                        CAPTURE(K_L);
                        CHECK(e.E == resilience_bound(M, K_L, b, b_L, rho_L));
                        CHECK(M == unit * (long(e.a1) * (b_L - rho_L) + e.b1) + e.g1);
                        CHECK(e.which == (e.g1 ? 3 : e.b1 ? 2 : 1));
                    }
                }
    CHECK(erasure_cases(8, 8, 4, 2, 0).E == 2);  // M = N
    CHECK_THROWS_AS(erasure_cases(5, 5, 4, 2, 0), ParamError);
}

// The bound charges each block beyond rho_L at most K_L/(b_L-rho_L); when
// that is fractional, blocks of c symbols carry more and the witness can
// exceed it.
TEST_CASE("Construction V: witness search meets the bound") {
    int instances = 0, exceeding = 0;
    for (int b_L = 1; b_L <= 3; ++b_L)
        for (int b = b_L; b <= 6; b += b_L)
            for (int c = 1; c <= 2; ++c)
                for (int K_L = 1; K_L <= b_L * c; ++K_L) {
                    int N = K_L * b / b_L;
                    int rho_L = b_L - int(ceil_div(K_L, c));
                    for (int M = 1; M <= N; ++M) {
                        auto code = construction_v(b, b_L, c, N, rho_L, M);
                        auto w = resilience_witness_search(code);
                        int bound = resilience_bound(M, K_L, b, b_L, rho_L);
                        CAPTURE(code.params.to_string());
                        CHECK(w.entropy < M);
                        if (K_L % (b_L - rho_L) == 0) {
                            CHECK(w.resilience == bound);
                            CHECK(int(w.surviving.size()) == b - bound - 1);
                            CHECK(erasures_by_rank(M, N, K_L, b_L, c) == bound);
                            ++instances;
                        } else {
                            CHECK(w.resilience >= bound);
                            exceeding += w.resilience > bound;
                        }
                    }
                }
    CHECK(instances > 100);
    CHECK(exceeding > 0);
}

TEST_CASE("Construction V: every tolerated pattern decodes, the witness pattern does not") {
    auto code = construction_v(6, 3, 2, 8, 1, 5);
    auto l = lrc_params(code);
    CHECK(l.K_L == 4);
    CHECK(l.rho_L == 1);
    int E = resilience_bound(5, 4, 6, 3, 1);
    CHECK(E == 6 - 3 - 1);
    auto file = random_file(5 * 8 * 3, 21);
    auto sh = core::encode(code, file);
    for (const auto& erased : combinations(6, E)) {
        std::vector<int> live;
        for (int b = 0; b < 6; ++b)
            if (std::find(erased.begin(), erased.end(), b) == erased.end()) live.push_back(b);
        CHECK(core::decode_nodes(code, nodes_of(code, sh, live), sh.symbol_size, sh.file_len) == file);
    }
    auto w = resilience_witness_search(code);
    CHECK_THROWS_AS(core::decode_nodes(code, nodes_of(code, sh, w.surviving), sh.symbol_size, sh.file_len),
                    RankErasure);
}

// (b_L - rho_L) | K_L is not enough for equality: with K_L=4, c=3, b_L=2 a
// block holds 3 independent symbols but the bound charges 2.
TEST_CASE("Construction V with blocks above K_L/(b_L-rho_L) beats the bound") {
    auto code = construction_v(2, 2, 3, 4, 0, 3);
    CHECK(resilience_bound(3, 4, 2, 2, 0) == 0);
    CHECK(resilience_witness_search(code).resilience == 1);
    auto file = random_file(3 * 8 * 3, 4);
    auto sh = core::encode(code, file);
    for (int live = 0; live < 2; ++live)
        CHECK(core::decode_nodes(code, nodes_of(code, sh, {live}), sh.symbol_size, sh.file_len) == file);
}

TEST_CASE("witness search corner cases") {
    // no redundancy: one block erasure already loses the file
    auto full = construction_v(2, 1, 2, 4, 0, 4);
    CHECK(resilience_witness_search(full).resilience == 0);
    // both blocks carry the same outer segment
    auto twin = construction_v(2, 1, 2, 4, 0, 2);
    twin.place[1] = twin.place[0];
    auto w = resilience_witness_search(twin);
    CHECK(w.resilience == 1);
    CHECK(w.surviving.empty());
    CHECK(resilience_bound(2, 2, 2, 1, 0) == 1);
    CHECK_THROWS_AS(construction_v(6, 3, 2, 12, 1, 7), ParamError);  // rho_L must be b_L - ceil(K_L/c)
    CHECK_THROWS_AS(construction_v(6, 4, 2, 12, 0, 7), ParamError);  // b_L does not divide b
}

TEST_CASE("Construction IV on the Fano plane") {
    auto code = construction_iv(2, 7, 1, 6, 1, 14);
    auto l = lrc_params(code);
    CHECK(l.K_L == 14);
    CHECK(code.partitions[0].code->k == 2);
    CHECK(code.partitions[0].code->n == 3);
    CHECK(code.params.k_c() == 1);
    CHECK(resilience_witness_search(code).resilience == resilience_bound(14, 14, 7, 7, 1));
    // Below K_L the nodes carry 3 > K_L/(b_L-rho_L) symbols, so the witness
    // may beat the bound; it never falls short of it.
    for (int M = 1; M < 14; ++M) {
        auto c = construction_iv(2, 7, 1, 6, 1, M);
        CHECK(resilience_witness_search(c).resilience >= resilience_bound(M, 14, 7, 7, 1));
    }
    auto audit = construction_iv(2, 7, 1, 12, 2, 28);
    CHECK(audit.partitions[0].code->k == 4);
    CHECK_THROWS_AS(construction_iv(2, 7, 3, 12, 2, 28), ParamError);  // rho_L = p + 1
    CHECK_THROWS_AS(construction_iv(2, 7, 1, 7, 2, 28), ParamError);   // (b_L - rho_L) does not divide k_L

    auto file = random_file(14 * 14, 22);
    auto sh = core::encode(code, file);
    for (const auto& live : combinations(7, 6))
        CHECK(core::collect(code, sh, live, std::vector<std::vector<int>>(6, std::vector<int>{0})) == file);
}

TEST_CASE("Construction VI: local repair and resilience") {
    auto sub = RegenParams::msr(4, 2, 2);
    auto code = construction_vi(6, 3, 1, sub, 12);
    auto l = lrc_params(code);
    CHECK(l.K_L == 12);
    CHECK(l.N == 24);
    CHECK(l.rho_L == 0);
    CHECK(code.params.rho == 3);
    CHECK(resilience_witness_search(code).resilience == 3);

    auto file = random_file(12 * 24 * 2, 23);
    auto sh = core::encode(code, file);
    for (auto failed : code.all_nodes()) {
        int g = failed.block / 3;
        std::vector<int> helpers;
        for (int b = 3 * g; b < 3 * g + 3; ++b)
            if (b != failed.block) helpers.push_back(b);
        auto res = local_repair(code, sh, failed, helpers, {{0, 1}, {0, 1}});
        CHECK(res.node == sh.at(failed));
        CHECK(res.bandwidth.total == std::uint64_t(l.d_L) * l.beta);
        auto healed = sh;
        healed.nodes[failed.block][failed.node] = res.node;
        CHECK(core::collect(code, healed, {3 - 3 * g, 4 - 3 * g, 5 - 3 * g}, {{0}, {1}, {0}}) == file);
    }
    CHECK_THROWS_AS(local_repair(code, sh, {0, 0}, {1, 3}, {{0, 1}, {0, 1}}), PreconditionError);
    CHECK_THROWS_AS(local_repair(code, sh, {0, 0}, {1, 2}, {{0}, {0}}), PreconditionError);

    for (int M = 4; M <= 24; M += 4) {
        auto c = construction_vi(6, 3, 1, sub, M);
        CHECK(resilience_witness_search(c).resilience == resilience_bound(M, 12, 6, 3, 0));
    }
}

TEST_CASE("Construction VI meets the MSR file-size bound below repair saturation") {
    auto sub = RegenParams::msr(4, 2, 2);
    int checked = 0;
    for (int M = 4; M <= 24; M += 4) {
        auto code = construction_vi(6, 3, 1, sub, M);
        auto l = lrc_params(code);
        l.sigma_L = 1;
        int rho = resilience_bound(M, l.K_L, 6, 3, 0);
        int mu = (6 - rho) / 3, phi = 6 - rho - 3 * mu;
        auto bound = ura_file_size_bound(LocalMode::MSR, l, rho);
        CAPTURE(M);
        if (phi < 3 - 1) {
            CHECK(bound == M);
            ++checked;
        } else {
            // two whole blocks regenerate the group, so the bound saturates at
            // (mu + 1) K_L while k_c-node access reaches only 2 K_L / 3
            CHECK(bound == Rational((mu + 1) * l.K_L));
            CHECK(bound > M);
        }
    }
    CHECK(checked == 4);
}

TEST_CASE("uniform rank accumulation matches brute force") {
    struct Local {
        core::BfrCode code;
        LocalMode mode;
    };
    std::vector<Local> locals = {
        {core::transpose_code(8, 4), LocalMode::MBR},
        {core::transpose_code(6, 2), LocalMode::MBR},
        {core::dcbd_code(3, 1, RegenParams::msr(4, 2, 2)), LocalMode::MSR},
        {core::dcbd_code(3, 1, RegenParams::mbr(4, 2, 2)), LocalMode::MBR},
        {core::dcbd_code(4, 1, RegenParams::msr(6, 3, 4)), LocalMode::MSR},
        {core::dcbd_code(4, 1, RegenParams::mbr(6, 3, 4)), LocalMode::MBR},
    };
    for (const auto& [local, mode] : locals) {
        const auto& sp = local.params;
        CAPTURE(sp.to_string());
        LrcParams l;
        l.b_L = sp.b, l.rho_L = sp.rho, l.sigma_L = sp.sigma, l.k_L = sp.k, l.d_L = sp.d;
        l.alpha = sp.alpha, l.beta = sp.beta, l.K_L = sp.M, l.N = 2 * sp.M, l.b = 2 * sp.b;
        auto prof = rank_profile(local, sp.k_c());
        CHECK(prof.uniform());
        CHECK(prof.K() == sp.M);
        CHECK(local_dimension(mode, l) == prof.K());
        auto inc = prof.increments();
        for (std::size_t i = 1; i < inc.size(); ++i) CHECK(inc[i] <= inc[i - 1]);
        for (int phi = 0; phi <= sp.b; ++phi) CHECK(ura_prefix_entropy(mode, l, phi) == prof.H(phi));
        for (int rho = 0; rho < l.b; ++rho)
            CHECK(ura_file_size_bound(mode, l, rho) == profile_file_size_bound(prof, l.b, l.b_L, rho));
    }
}

TEST_CASE("URA closed forms") {
    LrcParams l;
    l.b = 6, l.b_L = 3, l.rho_L = 0, l.sigma_L = 1, l.k_L = 2, l.d_L = 2, l.alpha = 3, l.beta = 1;
    CHECK(local_dimension(LocalMode::MSR, l) == 6);
    CHECK(ura_file_size_bound(LocalMode::MSR, l, 1) == 12);  // phi = 2 reaches b_L - sigma_L
    CHECK(ura_file_size_bound(LocalMode::MSR, l, 2) == 6 + 2);
    CHECK(ura_file_size_bound(LocalMode::MSR, l, 3) == 6);
    CHECK(ura_prefix_entropy(LocalMode::MSR, l, 1) == 2);
    // MBR, d_r >= k_c
    l.k_L = 3, l.d_L = 4, l.beta = 2;
    auto K = local_dimension(LocalMode::MBR, l);
    CHECK(K == 18);
    CHECK(ura_prefix_entropy(LocalMode::MBR, l, 1) == Rational(2) * (Rational(12, 3)));
    CHECK(ura_file_size_bound(LocalMode::MBR, l, 0) == 2 * K);
    // MBR, d_r < k_c with sigma_L < rho_L
    l.rho_L = 2, l.sigma_L = 1, l.k_L = 4, l.d_L = 4, l.beta = 1;
    CHECK(local_dimension(LocalMode::MBR, l) == 16);
    CHECK(ura_prefix_entropy(LocalMode::MBR, l, 1) == 16);
    l.rho_L = 1, l.sigma_L = 1, l.k_L = 6, l.d_L = 2;
    CHECK_THROWS_AS(local_dimension(LocalMode::MBR, l), ParamError);
}
