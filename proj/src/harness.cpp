#include "bfr/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "bfr/combinatorics.hpp"
#include "bfr/lrc.hpp"

namespace bfr::harness {

using core::BfrCode;
using core::NodeId;
using core::ShardSet;
using core::SystemParams;

std::uint64_t scenario_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

// Saturating product of scenario counts.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

std::uint64_t sat_pow(std::uint64_t a, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r = sat_mul(r, a);
    return r;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// A choice of nodes: for each listed block, which of its nodes.
struct Access {
    std::vector<int> blocks;
    std::vector<std::vector<int>> nodes;

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            s += (i ? " " : "") + std::string("b") + std::to_string(blocks[i]) + ":{" + join(nodes[i]) + "}";
        return s;
    }
};

// Enumerates or samples accesses of `per` nodes in each of `take` blocks out of
// `pool`.
class AccessSpace {
public:
    AccessSpace(std::vector<int> pool, int take, int c, int per)
        : pool_(std::move(pool)), block_sets_(combinations(int(pool_.size()), take)), node_sets_(combinations(c, per)),
          take_(take) {
        size_ = sat_mul(block_sets_.size(), sat_pow(node_sets_.size(), take));
    }
    std::uint64_t size() const { return size_; }

    Access at(std::uint64_t i) const {
        Access a;
        std::uint64_t ns = node_sets_.size();
        std::vector<int> pick(take_);
        for (int j = 0; j < take_; ++j) {
            pick[j] = int(i % ns);
            i /= ns;
        }
        fill(a, block_sets_[i % block_sets_.size()], pick);
        return a;
    }
    Access draw(std::mt19937_64& rng) const {
        std::vector<int> pick(take_);
        const auto& bs = block_sets_[rng() % block_sets_.size()];
        for (auto& x : pick) x = int(rng() % node_sets_.size());
        Access a;
        fill(a, bs, pick);
        return a;
    }

private:
    void fill(Access& a, const std::vector<int>& bs, const std::vector<int>& pick) const {
        for (int j = 0; j < take_; ++j) {
            a.blocks.push_back(pool_[bs[j]]);
            a.nodes.push_back(node_sets_[pick[j]]);
        }
    }
    std::vector<int> pool_;
    std::vector<std::vector<int>> block_sets_, node_sets_;
    int take_;
    std::uint64_t size_ = 0;
};

// Repair geometry of a code: global BFR repair, local repair inside groups, or none.
struct RepairShape {
    bool local = false;
    int helper_blocks = 0, per_block = 0;
    std::uint64_t expect_total = 0, expect_block = 0;  // 0: not asserted
};

std::optional<RepairShape> repair_shape(const BfrCode& code) {
    const auto& p = code.params;
    if (!code.groups.empty()) {
        auto l = lrc::lrc_params(code);
        if (l.d_L == 0 || l.sigma_L <= 0) return std::nullopt;
        return RepairShape{true, l.b_L - l.sigma_L, l.d_r(), 0, 0};
    }
    if (p.d == 0) return std::nullopt;
    return RepairShape{false, p.b - p.sigma, p.d_r(), std::uint64_t(p.d) * p.beta, std::uint64_t(p.d_r()) * p.beta};
}

std::vector<int> repair_pool(const BfrCode& code, const RepairShape& s, NodeId failed) {
    std::vector<int> pool;
    if (s.local) {
        for (const auto& g : code.groups)
            if (std::find(g.begin(), g.end(), failed.block) != g.end())
                for (int b : g)
                    if (b != failed.block) pool.push_back(b);
    } else {
        for (int b = 0; b < code.blocks(); ++b)
            if (b != failed.block) pool.push_back(b);
    }
    return pool;
}

core::RepairResult do_repair(const BfrCode& code, const ShardSet& sh, const RepairShape& s, NodeId failed,
                             const Access& a) {
    return s.local ? lrc::local_repair(code, sh, failed, a.blocks, a.nodes)
                   : core::repair(code, sh, failed, a.blocks, a.nodes);
}

}  // namespace

std::string ScenarioReport::to_text() const {
    std::ostringstream os;
    auto cat = [&](const char* name, const CategoryStats& c) {
        os << name << ": " << c.passed << "/" << c.attempted << (c.exhaustive ? " (exhaustive)" : " (sampled)")
           << "\n";
    };
    os << "instance: " << instance << "\nseed: " << seed << "\n";
    cat("collect", collect);
    cat("repair", repair);
    cat("post-repair collect", post_repair);
    if (repair.attempted)
        os << "repair download: total " << repair_min << ".." << repair_max << ", per block " << block_min << ".."
           << block_max << " symbols\n";
    os << "achieved: alpha=" << bfr::to_string(alpha) << " gamma=" << bfr::to_string(gamma) << "\n";
    if (predicted) {
        os << "predicted (" << predicted->display << (predicted->conjectured ? ", conjectured" : "")
           << "): MSR alpha=" << bfr::to_string(predicted->msr.alpha)
           << " gamma=" << bfr::to_string(predicted->msr.gamma) << "; MBR alpha=" << bfr::to_string(predicted->mbr.alpha)
           << " gamma=" << bfr::to_string(predicted->mbr.gamma) << "\n";
        os << "corner match: " << corner_match << "\n";
    }
    for (const auto& f : failures)
        os << "FAIL " << f.category << " seed=" << f.seed << " [" << f.scenario << "]: " << f.error << "\n";
    os << (ok() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

ScenarioReport verify_exhaustive(const BfrCode& code, const ShardSet& shards, long budget, std::uint64_t seed) {
    if (budget <= 0) throw ParamError("budget > 0", std::to_string(budget));
    const auto& p = code.params;
    ScenarioReport rep;
    rep.instance = std::string(core::construction_name(code.tag)) + " " + p.to_string();
    rep.seed = seed;
    rep.alpha = p.alpha;
    rep.gamma = Rational(p.d) * p.beta;
    rep.corner_match = "none";
    if (p.d > 0) {
        try {
            auto cp = bounds::corner_points(p, p.M);
            if (cp.msr.alpha == rep.alpha && cp.msr.gamma == rep.gamma) rep.corner_match = "MSR";
            if (cp.mbr.alpha == rep.alpha && cp.mbr.gamma == rep.gamma) rep.corner_match = "MBR";
            rep.predicted = cp;
        } catch (const ParamError&) {
        }
    }
    auto fail = [&](const char* cat, const std::string& scen, std::uint64_t s, const std::string& why) {
        rep.failures.push_back({cat, scen, s, why});
    };

    // Reference content: decode from every node, which also checks consistency.
    std::optional<std::vector<std::uint8_t>> ref;
    {
        std::map<NodeId, std::vector<std::uint8_t>> all;
        for (auto id : code.all_nodes()) all[id] = shards.at(id);
        try {
            ref = core::decode_nodes(code, all, shards.symbol_size, shards.file_len);
        } catch (const Error& e) {
            fail("collect", "all nodes", seed, std::string("decode mismatch: ") + e.what());
        }
    }
    auto check_collect = [&](CategoryStats& st, const char* cat, const ShardSet& sh, const Access& a, std::uint64_t s,
                             const std::string& prefix) {
        ++st.attempted;
        try {
            auto got = core::collect(code, sh, a.blocks, a.nodes);
            if (!ref) ref = got;
            if (got != *ref) {
                fail(cat, prefix + a.to_string(), s, "decode mismatch");
                return;
            }
            ++st.passed;
        } catch (const Error& e) {
            fail(cat, prefix + a.to_string(), s, e.what());
        }
    };

    std::vector<int> all_blocks(code.blocks());
    for (int b = 0; b < code.blocks(); ++b) all_blocks[b] = b;
    AccessSpace dc(all_blocks, p.b - p.rho, code.nodes_per_block(), p.k_c());
    rep.collect.exhaustive = dc.size() <= std::uint64_t(budget);
    std::uint64_t n_collect = rep.collect.exhaustive ? dc.size() : std::uint64_t(budget);
    for (std::uint64_t i = 0; i < n_collect; ++i) {
        std::uint64_t s = scenario_seed(seed, i);
        std::mt19937_64 rng(s);
        check_collect(rep.collect, "collect", shards, rep.collect.exhaustive ? dc.at(i) : dc.draw(rng), s, "");
    }

    auto shape = repair_shape(code);
    if (!shape) return rep;

    // Repairs: every failed node, every helper choice (or a sample).
    auto nodes = code.all_nodes();
    std::vector<AccessSpace> spaces;
    std::uint64_t total = 0;
    for (auto f : nodes) {
        spaces.emplace_back(repair_pool(code, *shape, f), shape->helper_blocks, code.nodes_per_block(), shape->per_block);
        total = std::min<std::uint64_t>(UINT64_MAX - spaces.back().size(), total) + spaces.back().size();
    }
    rep.repair.exhaustive = total <= std::uint64_t(budget);
    bool seen = false;
    auto run_one = [&](std::size_t fi, const Access& a, std::uint64_t s) {
        ++rep.repair.attempted;
        auto scen = "failed b" + std::to_string(nodes[fi].block) + "n" + std::to_string(nodes[fi].node) + " helpers " +
                    a.to_string();
        try {
            auto res = do_repair(code, shards, *shape, nodes[fi], a);
            if (res.node != shards.at(nodes[fi])) return fail("repair", scen, s, "repaired content differs");
            std::uint64_t t = res.bandwidth.total;
            rep.repair_min = seen ? std::min(rep.repair_min, t) : t;
            rep.repair_max = seen ? std::max(rep.repair_max, t) : t;
            for (const auto& [b, v] : res.bandwidth.per_block) {
                rep.block_min = seen ? std::min(rep.block_min, v) : v;
                rep.block_max = seen ? std::max(rep.block_max, v) : v;
                seen = true;
                if (shape->expect_block && v != shape->expect_block)
                    return fail("repair", scen, s, "block " + std::to_string(b) + " sent " + std::to_string(v));
            }
            seen = true;
            if (shape->expect_total && t != shape->expect_total)
                return fail("repair", scen, s, "downloaded " + std::to_string(t) + " symbols");
            ++rep.repair.passed;
        } catch (const Error& e) {
            fail("repair", scen, s, e.what());
        }
    };
    std::uint64_t idx = 1u << 20;  // repair scenario seeds start past the collect range
    if (rep.repair.exhaustive) {
        for (std::size_t fi = 0; fi < nodes.size(); ++fi)
            for (std::uint64_t i = 0; i < spaces[fi].size(); ++i) run_one(fi, spaces[fi].at(i), scenario_seed(seed, idx++));
    } else {
        for (long i = 0; i < budget; ++i) {
            std::uint64_t s = scenario_seed(seed, idx++);
            std::mt19937_64 rng(s);
            std::size_t fi = rng() % nodes.size();
            run_one(fi, spaces[fi].draw(rng), s);
        }
    }

    // Repair-then-collect: repair every collected node in turn from the current
    // (already repaired) state, then collect.
    long chains = long(std::min<std::uint64_t>(std::uint64_t(budget), std::max<std::uint64_t>(dc.size(), 1)));
    chains = std::min(chains, 200L);
    idx = 2u << 20;
    for (long i = 0; i < chains; ++i) {
        std::uint64_t s = scenario_seed(seed, idx++);
        std::mt19937_64 rng(s);
        Access a = dc.draw(rng);
        ShardSet work = shards;
        std::string prefix = "chain ";
        bool ok = true;
        for (std::size_t j = 0; j < a.blocks.size() && ok; ++j)
            for (int x : a.nodes[j]) {
                NodeId f{a.blocks[j], x};
                std::size_t fi = std::find(nodes.begin(), nodes.end(), f) - nodes.begin();
                Access h = spaces[fi].draw(rng);
                prefix += "b" + std::to_string(f.block) + "n" + std::to_string(x) + "<-" + h.to_string() + "; ";
                try {
                    work.nodes[f.block][f.node] = do_repair(code, work, *shape, f, h).node;
                } catch (const Error& e) {
                    ++rep.post_repair.attempted;
                    fail("post-repair collect", prefix, s, e.what());
                    ok = false;
                    break;
                }
            }
        if (ok) check_collect(rep.post_repair, "post-repair collect", work, a, s, prefix + "collect ");
    }
    return rep;
}

// --- repair delay ----------------------------------------------------------------

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::bfr_msr: return "BFR-MSR";
        case Scheme::bfr_mbr: return "BFR-MBR";
        case Scheme::msr: return "MSR";
        case Scheme::mbr: return "MBR";
        case Scheme::msr_sym: return "MSR-SYM";
        case Scheme::mbr_sym: return "MBR-SYM";
    }
    return "?";
}

namespace {

// All ways to give d helpers to `parts` blocks with at most c each.
void compositions(int d, int parts, int c, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& fn) {
    if (int(cur.size()) == parts - 1) {
        if (d <= c) {
            cur.push_back(d);
            fn(cur);
            cur.pop_back();
        }
        return;
    }
    for (int x = 0; x <= std::min(c, d); ++x) {
        cur.push_back(x);
        compositions(d - x, parts, c, cur, fn);
        cur.pop_back();
    }
}

Rational alloc_delay(const std::vector<int>& s, const Rational& beta, const std::vector<Rational>& bw) {
    Rational worst = 0;
    for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, Rational(s[i]) * beta / bw[i]);
    return worst;
}

}  // namespace

std::vector<DelayRow> repair_delay_sweep(const DelayQuery& q) {
    if (q.b < 2 || q.n % q.b || q.sigma < 1 || q.sigma >= q.b)
        throw ParamError("b | n, 1 <= sigma < b", "b=" + std::to_string(q.b) + " n=" + std::to_string(q.n));
    const int c = q.n / q.b, hb = q.b - q.sigma;
    std::vector<Rational> bw = q.bw.empty() ? std::vector<Rational>(hb, Rational(1)) : q.bw;
    if (int(bw.size()) != hb) throw ParamError("one bandwidth per helper block", std::to_string(bw.size()));
    for (const auto& x : bw)
        if (x <= 0) throw ParamError("bandwidth > 0", bfr::to_string(x));
    Rational min_bw = *std::min_element(bw.begin(), bw.end());

    std::vector<DelayRow> rows;
    for (int rho = 0; rho < q.b; ++rho)
        for (int kc = 1; kc <= c; ++kc)
            for (int dr = 1; dr <= c; ++dr) {
                SystemParams p;
                p.n = q.n, p.b = q.b, p.rho = rho, p.sigma = q.sigma, p.k = kc * (q.b - rho), p.d = dr * hb;
                try {
                    core::validate_params(p);
                } catch (const ParamError&) {
                    continue;
                }
                auto add = [&](Scheme s, const Rational& alpha, const Rational& beta) {
                    rows.push_back({Rational(q.n) * alpha, Rational(dr) * beta / min_bw, s, p.k, p.d, alpha, beta, rho,
                                    kc, dr});
                };
                // At alpha = d beta the bound is linear in beta.
                Rational mbr_beta = 1 / bounds::file_size_bound(p, p.d, 1).value;
                add(Scheme::bfr_mbr, mbr_beta * p.d, mbr_beta);
                try {
                    auto cp = bounds::corner_points(p, 1);
                    add(Scheme::bfr_msr, cp.msr.alpha, cp.msr.gamma / p.d);
                } catch (const ParamError&) {
                }
            }

    for (int d = 1; d <= q.n - q.sigma * c; ++d) {
        std::vector<std::vector<int>> allocs;
        std::vector<int> cur;
        compositions(d, hb, c, cur, [&](const std::vector<int>& s) { allocs.push_back(s); });
        if (allocs.empty()) continue;
        std::vector<int> sym(hb, d / hb);
        for (int i = 0; i < d % hb; ++i) ++sym[i];
        for (int k = 1; k <= d; ++k) {
            auto add = [&](Scheme avg, Scheme symmetric, const Rational& alpha, const Rational& beta) {
                Rational sum = 0;
                for (const auto& s : allocs) sum += alloc_delay(s, beta, bw);
                rows.push_back({Rational(q.n) * alpha, sum / Rational(long(allocs.size())), avg, k, d, alpha, beta});
                rows.push_back({Rational(q.n) * alpha, alloc_delay(sym, beta, bw), symmetric, k, d, alpha, beta});
            };
            add(Scheme::msr, Scheme::msr_sym, frac(1, k), frac(1, long(k) * (d - k + 1)));
            Rational mbr_beta = frac(2, long(k) * (2 * d - k + 1));
            add(Scheme::mbr, Scheme::mbr_sym, mbr_beta * d, mbr_beta);
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const DelayRow& a, const DelayRow& b) {
        return std::tie(a.scheme, a.k, a.d, a.rho, a.k_c, a.d_r) < std::tie(b.scheme, b.k, b.d, b.rho, b.k_c, b.d_r);
    });
    return rows;
}

std::vector<std::pair<Rational, Rational>> lower_envelope(const std::vector<DelayRow>& rows, Scheme s) {
    std::map<Rational, Rational> best;
    for (const auto& r : rows) {
        if (r.scheme != s) continue;
        auto it = best.find(r.overhead);
        if (it == best.end() || r.delay < it->second) best[r.overhead] = r.delay;
    }
    return {best.begin(), best.end()};
}

std::vector<std::pair<Rational, Rational>> lower_hull(const std::vector<std::pair<Rational, Rational>>& pts) {
    std::vector<std::pair<Rational, Rational>> h;
    for (const auto& p : pts) {
        while (h.size() >= 2) {
            const auto& a = h[h.size() - 2];
            const auto& b = h.back();
            Rational cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
            if (cross > 0) break;
            h.pop_back();
        }
        h.push_back(p);
    }
    return h;
}

std::optional<Rational> hull_value(const std::vector<std::pair<Rational, Rational>>& hull, const Rational& x) {
    for (std::size_t i = 0; i < hull.size(); ++i) {
        if (hull[i].first == x) return hull[i].second;
        if (i + 1 < hull.size() && hull[i].first < x && x < hull[i + 1].first) {
            const auto& [x0, y0] = hull[i];
            const auto& [x1, y1] = hull[i + 1];
            return Rational(y0 + (y1 - y0) * (x - x0) / (x1 - x0));
        }
    }
    return std::nullopt;
}

std::vector<EnvelopePoint> compare_mbr_envelopes(const std::vector<DelayRow>& rows, const Rational& max_overhead) {
    auto clipped = [&](Scheme s) {
        auto e = lower_envelope(rows, s);
        std::erase_if(e, [&](const auto& p) { return p.first >= max_overhead; });
        return e;
    };
    auto e0 = clipped(Scheme::bfr_mbr), e1 = clipped(Scheme::mbr), e2 = clipped(Scheme::mbr_sym);
    auto h0 = lower_hull(e0), h1 = lower_hull(e1), h2 = lower_hull(e2);
    std::map<Rational, Rational> m1(e1.begin(), e1.end()), m2(e2.begin(), e2.end());
    std::vector<EnvelopePoint> out;
    for (const auto& [x, y] : e0) {
        auto a = m1.find(x), b = m2.find(x);
        if (a == m1.end() || b == m2.end()) continue;
        out.push_back({x, y, a->second, b->second, *hull_value(h0, x), *hull_value(h1, x), *hull_value(h2, x)});
    }
    return out;
}

static std::string num(const Rational& x, bool exact) { return exact ? bfr::to_string(x) : to_decimal(x, 12); }

std::string delay_csv(const std::vector<DelayRow>& rows, bool exact) {
    std::string out = "overhead,delay,scheme,k,d,alpha,beta\n";
    for (const auto& r : rows)
        out += num(r.overhead, exact) + "," + num(r.delay, exact) + "," + scheme_name(r.scheme) + "," +
               std::to_string(r.k) + "," + std::to_string(r.d) + "," + num(r.alpha, exact) + "," + num(r.beta, exact) +
               "\n";
    return out;
}

std::string tradeoff_csv(const std::vector<bounds::TradeoffPoint>& pts, bool exact) {
    std::string out = "alpha,gamma,source\n";
    for (const auto& p : pts) out += num(p.alpha, exact) + "," + num(p.gamma, exact) + "," + p.source + "\n";
    return out;
}

}  // namespace bfr::harness
