#include <random>

#include "bfr/combinatorics.hpp"
#include "bfr/regen.hpp"
#include "doctest.h"

using namespace bfr;
using namespace bfr::codes;
using gf::Elem;

namespace {

std::vector<Elem> rand_syms(int len, std::mt19937_64& rng) {
    std::vector<Elem> d(len);
    for (auto& x : d) x = Elem(rng() % 256);
    return d;
}

// Repairs every node from every helper subset; returns the number of
// repairs and checks each downloads exactly d*beta symbols.
std::uint64_t exhaustive_repair(const RegenCode& code, std::mt19937_64& rng) {
    const auto& p = code.params();
    auto msg = rand_syms(p.M, rng);
    auto nodes = code.encode(msg);
    std::uint64_t count = 0;
    for (int f = 0; f < p.n; ++f) {
        std::vector<int> others;
        for (int i = 0; i < p.n; ++i)
            if (i != f) others.push_back(i);
        for (const auto& pick : combinations(p.n - 1, p.d)) {
            std::vector<std::pair<int, std::vector<Elem>>> resp;
            std::size_t downloaded = 0;
            for (int j : pick) {
                int h = others[j];
                resp.emplace_back(h, code.respond(f, nodes[h]));
                downloaded += resp.back().second.size();
            }
            REQUIRE(downloaded == std::size_t(p.d * p.beta));
            REQUIRE(code.repair(f, resp) == nodes[f]);
            ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("MBR parameters for n=5, k=3, d=4") {
    auto p = RegenParams::mbr(5, 3, 4);
    CHECK(p.alpha == 4);
    // M = k*d - k(k-1)/2 computed directly
    CHECK(p.M == 3 * 4 - 3);
    CHECK(p.alpha * 3 * (2 * 4 - 3 + 1) == 2 * p.M * 4);
    RegenCode code(p);
    std::mt19937_64 rng(1);
    auto msg = rand_syms(9, rng);
    auto nodes = code.encode(msg);
    CHECK(nodes.size() == 5);
    for (const auto& nd : nodes) CHECK(nd.size() == 4);
    for (const auto& s : combinations(5, 3)) {
        std::map<int, std::vector<Elem>> av;
        for (int i : s) av[i] = nodes[i];
        CHECK(code.collect(av) == msg);
    }
}

TEST_CASE("MSR parameters for n=6, k=3, d=4") {
    auto p = RegenParams::msr(6, 3, 4);
    CHECK(p.alpha == 4 - 3 + 1);
    CHECK(p.M == 3 * 2);
    RegenCode code(p);
    std::mt19937_64 rng(2);
    auto nodes = code.encode(rand_syms(6, rng));
    // repair downloads d*beta = 4 symbols; naive decode would move k*alpha = 6
    auto resp = std::vector<std::pair<int, std::vector<Elem>>>{};
    for (int h : {1, 2, 4, 5}) resp.emplace_back(h, code.respond(0, nodes[h]));
    std::size_t dl = 0;
    for (auto& r : resp) dl += r.second.size();
    CHECK(dl == 4);
    CHECK(dl < std::size_t(p.k * p.alpha));
    CHECK(code.repair(0, resp) == nodes[0]);
}

TEST_CASE("all-zero subfile gives all-zero nodes") {
    for (auto p : {RegenParams::mbr(5, 3, 4), RegenParams::msr(6, 3, 4), RegenParams::msr(7, 3, 5)}) {
        RegenCode code(p);
        for (const auto& nd : code.encode(std::vector<Elem>(p.M, 0))) CHECK(nd == std::vector<Elem>(p.alpha, 0));
    }
}

TEST_CASE("collect needs k nodes") {
    RegenCode code(RegenParams::mbr(5, 3, 4));
    std::mt19937_64 rng(3);
    auto nodes = code.encode(rand_syms(9, rng));
    std::map<int, std::vector<Elem>> av{{0, nodes[0]}, {3, nodes[3]}};
    CHECK_THROWS_AS(code.collect(av), UnrecoverableErasure);
    av[4] = nodes[4];
    av[1] = nodes[1];
    av[1][0] ^= 1;
    CHECK_THROWS_AS(code.collect(av), CorruptionError);
}

TEST_CASE("exact repair from every helper subset, n <= 7") {
    std::mt19937_64 rng(4);
    std::vector<RegenParams> all;
    for (int n = 2; n <= 7; ++n)
        for (int k = 1; k < n; ++k)
            for (int d = k; d < n; ++d) {
                all.push_back(RegenParams::mbr(n, k, d));
                if (d >= 2 * k - 2) all.push_back(RegenParams::msr(n, k, d));
            }
    all.push_back(RegenParams::mbr(5, 2, 3, 2));
    all.push_back(RegenParams::msr(6, 3, 4, 2));
    std::uint64_t total = 0;
    for (const auto& p : all) {
        CAPTURE(p.to_string());
        RegenCode code(p);
        // every k-subset collects
        auto msg = rand_syms(p.M, rng);
        auto nodes = code.encode(msg);
        for (const auto& s : combinations(p.n, p.k)) {
            std::map<int, std::vector<Elem>> av;
            for (int i : s) av[i] = nodes[i];
            REQUIRE(code.collect(av) == msg);
        }
        total += exhaustive_repair(code, rng);
    }
    CHECK(total > 1000);
}

TEST_CASE("repair then collect equals direct collect") {
    RegenCode code(RegenParams::msr(7, 3, 5));
    std::mt19937_64 rng(5);
    auto msg = rand_syms(code.params().M, rng);
    auto nodes = code.encode(msg);
    std::vector<std::pair<int, std::vector<Elem>>> resp;
    for (int h : {0, 1, 2, 4, 5}) resp.emplace_back(h, code.respond(3, nodes[h]));
    auto rebuilt = code.repair(3, resp);
    std::map<int, std::vector<Elem>> av{{3, rebuilt}, {6, nodes[6]}, {0, nodes[0]}};
    CHECK(code.collect(av) == msg);
}

TEST_CASE("identities hold for every accepted parameter set") {
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; k < n; ++k)
            for (int d = k; d < n; ++d)
                for (int beta = 1; beta <= 3; ++beta) {
                    auto b = RegenParams::mbr(n, k, d, beta);
                    CHECK_NOTHROW(b.validate());
                    CHECK(b.alpha * k * (2 * d - k + 1) == 2 * b.M * d);
                    if (d >= 2 * k - 2) {
                        auto s = RegenParams::msr(n, k, d, beta);
                        CHECK_NOTHROW(s.validate());
                        CHECK(s.alpha * k == s.M);
                    }
                }
}

TEST_CASE("invalid parameters are rejected with the constraint named") {
    auto bad = RegenParams::msr(8, 4, 5);
    try {
        bad.validate();
        FAIL("accepted");
    } catch (const ParamError& e) {
        CHECK(e.constraint() == "MSR d >= 2k-2");
    }
    CHECK_THROWS_AS(RegenCode(RegenParams::mbr(5, 3, 5)), ParamError);
    CHECK_THROWS_AS(RegenCode(RegenParams::mbr(5, 3, 2)), ParamError);
    auto p = RegenParams::mbr(5, 3, 4);
    p.alpha = 5;
    CHECK_THROWS_AS(p.validate(), ParamError);
}

TEST_CASE("repair rejects bad helper sets") {
    RegenCode code(RegenParams::mbr(5, 3, 4));
    std::mt19937_64 rng(6);
    auto nodes = code.encode(rand_syms(9, rng));
    auto r = [&](int h) { return std::make_pair(h, code.respond(0, nodes[h])); };
    CHECK_THROWS_AS(code.repair(0, {r(1), r(2), r(3)}), PreconditionError);
    CHECK_THROWS_AS(code.repair(0, {r(1), r(2), r(3), r(3)}), PreconditionError);
    CHECK_THROWS_AS(code.repair(0, {r(1), r(2), r(3), r(0)}), PreconditionError);
}

TEST_CASE("MDS as a node code repairs from k full symbols") {
    auto c = mds_node_code(MdsCode(6, 3));
    std::mt19937_64 rng(7);
    auto msg = rand_syms(3, rng);
    auto nodes = c.encode(msg);
    std::vector<std::pair<int, std::vector<Elem>>> resp;
    for (int h : {1, 4, 5}) resp.emplace_back(h, c.respond(2, nodes[h]));
    CHECK(c.rebuild(2, resp) == nodes[2]);
}
