#include <cmath>
#include <fstream>
#include <regex>
#include <functional>
#include <random>
#include <set>

#include "bfr/gf.hpp"
#include "bfr/gf_region.hpp"
#include "bfr/matrix.hpp"
#include "doctest.h"

using namespace bfr;
using namespace bfr::gf;

namespace {

// Antilog table for GF(2^w) built by repeated multiplication by x with the
// shift-and-reduce rule, independent of Field's own tables.
std::vector<Elem> antilog_by_shift(unsigned w, std::uint32_t poly) {
    std::vector<Elem> t;
    Elem x = 1;
    for (std::uint32_t i = 0; i + 1 < (1u << w); ++i) {
        t.push_back(x);
        x <<= 1;
        if (x & (1u << w)) x ^= poly;
    }
    return t;
}

template <class MulFn, class AddFn>
void check_axioms_exhaustive(std::uint32_t q, MulFn mul, AddFn add, std::function<Elem(Elem)> inv) {
    for (Elem a = 0; a < q; ++a) {
        CHECK(mul(a, 1) == a);
        CHECK(add(a, 0) == a);
        if (a) CHECK(mul(a, inv(a)) == 1);
        for (Elem b = 0; b < q; ++b) {
            REQUIRE(mul(a, b) == mul(b, a));
            REQUIRE(add(a, b) == add(b, a));
            for (Elem c = 0; c < q; ++c) {
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) FAIL("mul not associative");
                if (add(add(a, b), c) != add(a, add(b, c))) FAIL("add not associative");
                if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) FAIL("not distributive");
            }
        }
    }
}

// Rank by counting the span: q^rank = |{sum c_j v_j}|. Only for tiny q, N.
int rank_by_span(const ExtField& F, const std::vector<ExtElem>& v) {
    std::set<std::vector<Elem>> span;
    std::uint64_t q = F.base_size(), total = 1;
    for (std::size_t i = 0; i < v.size(); ++i) total *= q;
    for (std::uint64_t t = 0; t < total; ++t) {
        ExtElem acc = F.zero();
        std::uint64_t x = t;
        for (const auto& e : v) {
            acc = F.add(acc, F.scale(e, static_cast<Elem>(x % q)));
            x /= q;
        }
        span.insert(acc.c);
    }
    return static_cast<int>(std::lround(std::log(double(span.size())) / std::log(double(q))));
}

ExtElem random_ext(const ExtField& F, std::mt19937_64& rng) {
    std::vector<Elem> v(F.degree());
    for (auto& x : v) x = static_cast<Elem>(rng() % F.base_size());
    return F.from_vector(v);
}

}  // namespace

TEST_CASE("GF(2^3) product matches an antilog table built by shifting") {
    Field f(FieldSpec::binary(3));
    auto alog = antilog_by_shift(3, 0xb);
    std::vector<int> lg(8, -1);
    for (std::size_t i = 0; i < alog.size(); ++i) lg[alog[i]] = int(i);
    Elem expect = alog[(lg[0b010] + lg[0b011]) % 7];
    CHECK(expect == 0b110);
    CHECK(f.mul(0b010, 0b011) == expect);
    for (Elem a = 1; a < 8; ++a)
        for (Elem b = 1; b < 8; ++b) CHECK(f.mul(a, b) == alog[(lg[a] + lg[b]) % 7]);
}

TEST_CASE("identities") {
    for (unsigned w = 1; w <= 16; ++w) {
        Field f(FieldSpec::binary(w));
        for (Elem a : {Elem(0), Elem(1), Elem((1u << w) - 1), Elem(w % (1u << w))}) {
            CHECK(f.mul(a, 1) == a);
            CHECK(f.add(a, a) == 0);
        }
    }
    Field p7(FieldSpec::prime(7));
    CHECK(p7.mul(5, 1) == 5);
    CHECK(p7.add(5, 2) == 0);
}

TEST_CASE("binary and prime field axioms hold exhaustively up to 2^8") {
    for (unsigned w = 1; w <= 8; ++w) {
        Field f(FieldSpec::binary(w));
        check_axioms_exhaustive(
            f.size(), [&](Elem a, Elem b) { return f.mul(a, b); }, [&](Elem a, Elem b) { return f.add(a, b); },
            [&](Elem a) { return f.inv(a); });
    }
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 31u, 101u, 251u}) {
        Field f(FieldSpec::prime(p));
        check_axioms_exhaustive(
            f.size(), [&](Elem a, Elem b) { return f.mul(a, b); }, [&](Elem a, Elem b) { return f.add(a, b); },
            [&](Elem a) { return f.inv(a); });
    }
}

TEST_CASE("tower field axioms hold exhaustively up to 2^8") {
    std::vector<FieldSpec> specs = {
        FieldSpec::tower(FieldSpec::binary(1), 8), FieldSpec::tower(FieldSpec::binary(2), 4),
        FieldSpec::tower(FieldSpec::binary(4), 2), FieldSpec::tower(FieldSpec::prime(3), 3),
        FieldSpec::tower(FieldSpec::prime(5), 3),  FieldSpec::tower(FieldSpec::prime(7), 2),
    };
    for (const auto& s : specs) {
        ExtField F(s);
        std::uint32_t q = 1;
        for (unsigned i = 0; i < F.degree(); ++i) q *= F.base_size();
        std::vector<ExtElem> elems;
        for (std::uint32_t t = 0; t < q; ++t) {
            std::vector<Elem> v(F.degree());
            std::uint32_t x = t;
            for (auto& c : v) {
                c = x % F.base_size();
                x /= F.base_size();
            }
            elems.push_back(F.from_vector(v));
        }
        auto index = [&](const ExtElem& e) {
            std::uint32_t t = 0;
            for (int i = int(F.degree()) - 1; i >= 0; --i) t = t * F.base_size() + e.c[i];
            return t;
        };
        // Tabulate the implementation once, then check the axioms on the tables.
        std::vector<Elem> mt(std::size_t(q) * q), at(std::size_t(q) * q), it(q, 0);
        for (std::uint32_t a = 0; a < q; ++a) {
            for (std::uint32_t b = 0; b < q; ++b) {
                mt[a * q + b] = index(F.mul(elems[a], elems[b]));
                at[a * q + b] = index(F.add(elems[a], elems[b]));
            }
            if (a) it[a] = index(F.inv(elems[a]));
        }
        check_axioms_exhaustive(
            q, [&](Elem a, Elem b) { return mt[a * q + b]; }, [&](Elem a, Elem b) { return at[a * q + b]; },
            [&](Elem a) { return it[a]; });
    }
}

TEST_CASE("errors: division by zero and field mismatch") {
    Field f(FieldSpec::binary(8));
    CHECK_THROWS_AS(f.inv(0), ArithmeticError);
    CHECK_THROWS_AS(f.div(3, 0), ArithmeticError);
    Field g(FieldSpec::binary(4));
    FieldElem a{&f, 3}, b{&g, 3};
    CHECK_THROWS_AS(a + b, ConfigError);
    CHECK_THROWS_AS(a * b, ConfigError);
    FieldElem zero{&f, 0};
    CHECK_THROWS_AS(a / zero, ArithmeticError);
    CHECK((a * inverse(a)).v == 1);

    ExtField E(FieldSpec::tower(FieldSpec::binary(8), 3));
    ExtField E2(FieldSpec::tower(FieldSpec::binary(8), 4));
    CHECK_THROWS_AS(E.inv(E.zero()), ArithmeticError);
    CHECK_THROWS_AS(E.mul(E.one(), E2.one()), ConfigError);
}

TEST_CASE("moduli are verified at construction") {
    CHECK_THROWS_AS(Field(FieldSpec::binary(8, 0x101)), ConfigError);  // x^8 + 1 is reducible
    CHECK_THROWS_AS(Field(FieldSpec::prime(9)), ConfigError);
    // x^2 + 1 = (x+1)^2 over GF(2)
    CHECK_THROWS_AS(ExtField(FieldSpec::tower(FieldSpec::binary(1), 2, {1, 0, 1})), ConfigError);
    CHECK_NOTHROW(ExtField(FieldSpec::tower(FieldSpec::binary(1), 2, {1, 1, 1})));
}

TEST_CASE("default tower modulus is deterministic and irreducible") {
    auto s1 = FieldSpec::tower(FieldSpec::binary(8), 6);
    auto s2 = FieldSpec::tower(FieldSpec::binary(8), 6);
    CHECK(s1 == s2);
    CHECK(s1.ext_modulus.size() == 7);
    CHECK(poly_irreducible(*field_for(s1.base()), s1.ext_modulus));
    // x^2 + x + 1 is the first irreducible quadratic over GF(2).
    CHECK(FieldSpec::tower(FieldSpec::binary(1), 2).ext_modulus == std::vector<Elem>{1, 1, 1});
}

TEST_CASE("vector representation round-trips") {
    ExtField F(FieldSpec::tower(FieldSpec::binary(8), 5));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        auto e = random_ext(F, rng);
        CHECK(F.eq(F.from_vector(F.to_vector(e)), e));
        ExtElem acc = F.zero();
        for (unsigned j = 0; j < F.degree(); ++j) acc = F.add(acc, F.scale(F.basis(j), e.c[j]));
        CHECK(F.eq(acc, e));
    }
}

TEST_CASE("vector_rank examples") {
    ExtField F(FieldSpec::tower(FieldSpec::binary(8), 4));
    CHECK(vector_rank({F.zero(), F.zero(), F.zero()}) == 0);
    CHECK(vector_rank({F.basis(0), F.basis(2)}) == 2);
    std::mt19937_64 rng(1);
    auto g = random_ext(F, rng);
    while (F.is_zero(g)) g = random_ext(F, rng);
    CHECK(vector_rank({g, F.scale(g, 0x53)}) == 1);
}

TEST_CASE("vector_rank agrees with span counting for m, N <= 8") {
    std::mt19937_64 rng(11);
    for (auto spec : {FieldSpec::tower(FieldSpec::binary(1), 8), FieldSpec::tower(FieldSpec::binary(1), 5),
                      FieldSpec::tower(FieldSpec::prime(3), 4)}) {
        ExtField F(spec);
        int maxN = F.base_size() == 2 ? 8 : 6;
        for (int trial = 0; trial < 60; ++trial) {
            int N = 1 + int(rng() % maxN);
            std::vector<ExtElem> v;
            for (int j = 0; j < N; ++j) {
                // bias toward dependence: sometimes reuse a combination of earlier entries
                if (j >= 2 && rng() % 3 == 0)
                    v.push_back(F.add(v[rng() % j], F.scale(v[rng() % j], Elem(1 + rng() % (F.base_size() - 1)))));
                else
                    v.push_back(random_ext(F, rng));
            }
            CHECK(vector_rank(v) == rank_by_span(F, v));
        }
    }
}

TEST_CASE("linearized polynomials") {
    std::mt19937_64 rng(3);
    for (auto spec : {FieldSpec::tower(FieldSpec::binary(1), 8), FieldSpec::tower(FieldSpec::binary(8), 6),
                      FieldSpec::tower(FieldSpec::prime(3), 5)}) {
        ExtField F(spec);
        LinearizedPoly id({F.one()});
        auto y = random_ext(F, rng);
        CHECK(F.eq(linpoly_eval(id, y), y));
        std::vector<ExtElem> coeffs;
        for (unsigned i = 0; i < F.degree(); ++i) coeffs.push_back(random_ext(F, rng));
        LinearizedPoly f(coeffs);
        CHECK(F.is_zero(f.eval(F.zero())));
        for (int s = 0; s < 1000; ++s) {
            Elem a = static_cast<Elem>(rng() % F.base_size()), b = static_cast<Elem>(rng() % F.base_size());
            auto v1 = random_ext(F, rng), v2 = random_ext(F, rng);
            auto lhs = f.eval(F.add(F.scale(v1, a), F.scale(v2, b)));
            auto rhs = F.add(F.scale(f.eval(v1), a), F.scale(f.eval(v2), b));
            REQUIRE(F.eq(lhs, rhs));
        }
    }
}

TEST_CASE("zero linearized polynomial has q-degree -1") {
    ExtField F(FieldSpec::tower(FieldSpec::binary(1), 4));
    LinearizedPoly z({F.zero(), F.zero()});
    CHECK(z.q_degree() == -1);
    CHECK(F.is_zero(z.eval(F.basis(1))));
}

TEST_CASE("matrix inverse and solve over GF(2^8)") {
    Field f(FieldSpec::binary(8));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        BaseMatrix a(&f, 6, 6);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) a(i, j) = static_cast<Elem>(rng() % 256);
        auto inv = a.inverse();
        if (!inv) {
            CHECK(a.rank() < 6);
            continue;
        }
        CHECK((a * *inv) == BaseMatrix::identity(&f, 6));
        BaseMatrix b(&f, 6, 2);
        for (std::size_t i = 0; i < 6; ++i) b(i, 0) = b(i, 1) = static_cast<Elem>(rng() % 256);
        auto x = a.solve_right(b);
        REQUIRE(x);
        CHECK((a * *x) == b);
    }
}

TEST_CASE("region kernels agree with the scalar reference") {
    Field f(FieldSpec::binary(8));
    std::mt19937_64 rng(9);
    std::vector<RegionKernel> kernels{RegionKernel::scalar};
    for (auto k : {RegionKernel::avx2, RegionKernel::neon})
        if (region_kernel_supported(k)) kernels.push_back(k);
    MESSAGE("active kernel: " << std::string(kernel_name(active_region_kernel())));
    for (int t = 0; t < 400; ++t) {
        std::size_t len = rng() % 300, off = rng() % 7;
        std::vector<std::uint8_t> src(len + off), dst0(len + off);
        for (auto& x : src) x = static_cast<std::uint8_t>(rng());
        for (auto& x : dst0) x = static_cast<std::uint8_t>(rng());
        auto c = static_cast<std::uint8_t>(rng());
        std::vector<std::uint8_t> ref = dst0;
        for (std::size_t i = off; i < len + off; ++i) ref[i] ^= static_cast<std::uint8_t>(f.mul(c, src[i]));
        for (auto k : kernels) {
            auto d = dst0;
            detail::mul_add_with(k, f, d.data() + off, src.data() + off, c, len);
            REQUIRE(d == ref);
        }
        auto d = dst0;
        region_mul_add(f, d.data() + off, src.data() + off, c, len);
        CHECK(d == ref);
    }
    Field g(FieldSpec::binary(4));
    std::uint8_t a = 0, b = 1;
    CHECK_THROWS_AS(detail::mul_add_with(RegionKernel::scalar, g, &a, &b, 3, 1), ConfigError);
}

// The published modulus table must be what the library builds.
TEST_CASE("documented tower moduli match the defaults") {
    std::ifstream in(std::string(BFR_SOURCE_DIR) + "/docs/formats.md");
    REQUIRE(in);
    const std::regex row(R"(^\| (\d+) \| (x\^.*) \|$)");
    const std::regex term(R"((?:(\d+)\*)?x(?:\^(\d+))?|(\d+))");
    auto base = FieldSpec::binary(8);
    int rows = 0;
    for (std::string line; std::getline(in, line);) {
        std::smatch m;
        if (!std::regex_match(line, m, row)) continue;
        unsigned deg = unsigned(std::stoul(m[1]));
        std::vector<Elem> coeffs(deg + 1, 0);
        std::string poly = m[2];
        for (std::sregex_iterator it(poly.begin(), poly.end(), term), end; it != end; ++it) {
            const auto& t = *it;
            if (t[3].matched) {
                coeffs[0] = Elem(std::stoul(t[3]));
            } else {
                unsigned e = t[2].matched ? unsigned(std::stoul(t[2])) : 1;
                coeffs.at(e) = t[1].matched ? Elem(std::stoul(t[1])) : 1;
            }
        }
        CAPTURE(line);
        CHECK(FieldSpec::tower(base, deg).ext_modulus == coeffs);
        ++rows;
    }
    CHECK(rows == 63);
}
