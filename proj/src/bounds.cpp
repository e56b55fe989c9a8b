#include "bfr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bfr::bounds {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

std::string FailureOrder::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < events.size(); ++i)
        os << (i ? " " : "") << "(" << events[i].first << "," << events[i].second << ")";
    return os.str();
}

static Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
static Rational cap(long long mult, const Rational& beta) { return Rational(std::max(0LL, mult)) * beta; }

BoundResult file_size_bound(const SystemParams& p, const Rational& alpha, const Rational& beta) {
    Regime r = core::validate_params(p);
    const long long b = p.b, rho = p.rho, sigma = p.sigma, d = p.d, kc = p.k_c(), dr = p.d_r();
    BoundResult out{0, r, r == Regime::IB};
    switch (r) {
        case Regime::IA:
            for (long long i = 1; i <= b - rho; ++i) out.value += kc * rmin(alpha, cap(d - (i - 1) * kc, beta));
            break;
        case Regime::IB:
            for (long long i = 1; i <= b - sigma; ++i) out.value += kc * rmin(alpha, cap(d - (i - 1) * kc, beta));
            out.value += (sigma - rho) * kc * rmin(alpha, cap(d - (b - sigma) * kc, beta));
            break;
        case Regime::II:
            for (long long i = 1; i <= b - rho; ++i) out.value += dr * rmin(alpha, cap(d - (i - 1) * dr, beta));
            out.value += (b - rho) * (kc - dr) * rmin(alpha, cap(d - (b - rho - 1) * dr, beta));
            break;
    }
    return out;
}

Rational gamma_msr_classical(const Rational& M, int k, int d) {
    if (d - k + 1 <= 0) throw ParamError("d >= k", "k=" + std::to_string(k) + " d=" + std::to_string(d));
    return M * d / (Rational(k) * (d - k + 1));
}

Rational gamma_mbr_classical(const Rational& M, int k, int d) {
    if (2 * d - k + 1 <= 0) throw ParamError("2d - k + 1 > 0", "k=" + std::to_string(k) + " d=" + std::to_string(d));
    return 2 * M * d / (Rational(k) * (2 * d - k + 1));
}

CornerPoints corner_points(const SystemParams& p, const Rational& M) {
    const Rational k = p.k, d = p.d, b = p.b, rho = p.rho, sigma = p.sigma;
    auto finite = [&](const Rational& den, const char* which) {
        if (den <= 0) throw ParamError(std::string(which) + " corner has finite bandwidth", p.to_string());
        return den;
    };
    auto make = [&](const Rational& msr_den, const Rational& mbr_den, const std::string& display, bool conj) {
        CornerPoints c;
        c.msr = {M / k, M * d / finite(msr_den, "MSR"), "MSR corner"};
        Rational mbr = M * d / finite(mbr_den, "MBR");
        c.mbr = {mbr, mbr, "MBR corner"};
        c.display = display;
        c.conjectured = conj;
        return c;
    };

    if (p.b == 2 && p.rho == 0 && p.sigma == 1) {
        if (p.k < 1 || 2 * p.d < p.k) throw ParamError("d >= k/2, k >= 1", p.to_string());
        if (p.k % 2)
            return make((2 * k * d - k * k - k) / 2, (4 * d * k - k * k + 1) / 4, "two-block, odd k", true);
        return make((2 * k * d - k * k) / 2, (4 * d * k - k * k) / 4, "two-block, even k", true);
    }

    Regime r = core::validate_params(p);
    std::string suffix = (p.b - p.rho == 1) ? ", collapsed b = rho + 1" : "";
    switch (r) {
        case Regime::IA:
            return make(k * d - k * k * (b - rho - 1) / (b - rho), k * d - k * k * (b - rho - 1) / (2 * (b - rho)),
                        "I.A" + suffix, false);
        case Regime::IB: {
            std::string disp = (p.rho == 0 && p.sigma == 1) ? "I.B, rho = 0, sigma = 1" : "I.B";
            return make(k * d - k * k * (b - sigma) / (b - rho),
                        k * d - k * k * (b - sigma) * (b + sigma - 2 * rho - 1) / (2 * (b - rho) * (b - rho)), disp,
                        true);
        }
        case Regime::II: {
            Rational lead = k * d * (rho - sigma + 1) / (b - sigma);
            return make(lead, lead + d * d * (b - rho) * (b - rho - 1) / (2 * (b - sigma) * (b - sigma)),
                        "II" + suffix, false);
        }
    }
    throw std::logic_error("unreachable regime");
}

// --- max-flow ----------------------------------------------------------------

MaxFlow::MaxFlow(int vertices) : adj_(vertices), level_(vertices), it_(vertices) {}

void MaxFlow::add_edge(int from, int to, std::int64_t c) {
    adj_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, c});
    adj_[to].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0});
}

bool MaxFlow::bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int id : adj_[v]) {
            const auto& e = edges_[id];
            if (e.cap > 0 && level_[e.to] < 0) {
                level_[e.to] = level_[v] + 1;
                q.push(e.to);
            }
        }
    }
    return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(int v, int t, std::int64_t f) {
    if (v == t) return f;
    for (int& i = it_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
        int id = adj_[v][i];
        auto& e = edges_[id];
        if (e.cap > 0 && level_[e.to] == level_[v] + 1) {
            std::int64_t got = dfs(e.to, t, std::min(f, e.cap));
            if (got > 0) {
                e.cap -= got;
                edges_[id ^ 1].cap += got;
                return got;
            }
        }
    }
    return 0;
}

std::int64_t MaxFlow::run(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
        std::fill(it_.begin(), it_.end(), 0);
        while (std::int64_t f = dfs(s, t, kInf)) flow += f;
    }
    return flow;
}

// --- information flow graph ----------------------------------------------------

namespace {

// alpha and beta scaled by a common denominator.
struct Scaled {
    std::int64_t a, b;
    BigInt den;
};

Scaled scale(const Rational& alpha, const Rational& beta) {
    if (alpha < 0 || beta < 0) throw ParamError("alpha, beta >= 0", "");
    BigInt da = denominator(alpha), db = denominator(beta);
    BigInt l = da / boost::multiprecision::gcd(da, db) * db;
    BigInt a = numerator(alpha) * (l / da), b = numerator(beta) * (l / db);
    const BigInt lim = BigInt(1) << 40;
    if (a > lim || b > lim) throw ParamError("alpha, beta fit scaled 40-bit capacities", "");
    return {a.convert_to<std::int64_t>(), b.convert_to<std::int64_t>(), l};
}

// Failure schedule of one order: which node fails at each step, and when each
// original node fails (events.size() if never).
struct Schedule {
    int b, c, E;
    std::vector<std::vector<int>> fail_time;  // [block][node]
    std::vector<int> block_of;

    Schedule(const SystemParams& p, const FailureOrder& o) : b(p.b), c(p.c()), E(static_cast<int>(o.events.size())) {
        fail_time.assign(b, std::vector<int>(c, E));
        for (int t = 0; t < E; ++t) {
            auto [j, x] = o.events[t];
            if (j < 0 || j >= b || x < 0 || x >= c) throw PreconditionError("order event out of range");
            if (fail_time[j][x] != E) throw PreconditionError("order repeats a node");
            fail_time[j][x] = t;
            block_of.push_back(j);
        }
    }

    // Originals of block j, longest-lived first.
    std::vector<int> availability(int j) const {
        std::vector<int> v(c);
        for (int x = 0; x < c; ++x) v[x] = x;
        std::stable_sort(v.begin(), v.end(), [&](int x, int y) { return fail_time[j][x] > fail_time[j][y]; });
        return v;
    }
};

// Picks the collector's never-repaired attachments: the first u[j] never-failed
// originals of block j in availability order.
std::vector<std::vector<int>> unrepaired_nodes(const Schedule& s, const std::vector<int>& u) {
    std::vector<std::vector<int>> out(s.b);
    for (int j = 0; j < static_cast<int>(u.size()); ++j) {
        auto av = s.availability(j);
        for (int i = 0; i < u[j]; ++i) {
            if (i >= s.c || s.fail_time[j][av[i]] != s.E)
                throw PreconditionError("not enough never-failed nodes for the collector in block " +
                                        std::to_string(j));
            out[j].push_back(av[i]);
        }
    }
    return out;
}

// Builds the flow graph for per-event helper lists and returns its max-flow.
// helpers[t] lists (block, node, version) where version -1 is the original and
// otherwise the event index that produced it.
struct HelperRef {
    int block, node, version;
};

std::int64_t graph_flow(const Schedule& s, const Scaled& sc, const std::vector<std::vector<HelperRef>>& helpers,
                        const std::vector<std::vector<int>>& dc_orig) {
    const int S = 0, T = 1;
    auto orig = [&](int j, int x) { return 2 + j * s.c + x; };
    const int base = 2 + s.b * s.c;
    auto xin = [&](int t) { return base + 2 * t; };
    auto xout = [&](int t) { return base + 2 * t + 1; };
    MaxFlow g(base + 2 * s.E);
    for (int j = 0; j < s.b; ++j)
        for (int x = 0; x < s.c; ++x) g.add_edge(S, orig(j, x), sc.a);
    for (int t = 0; t < s.E; ++t) {
        g.add_edge(xin(t), xout(t), sc.a);
        g.add_edge(xout(t), T, MaxFlow::kInf);
        for (const auto& h : helpers[t]) g.add_edge(h.version < 0 ? orig(h.block, h.node) : xout(h.version), xin(t), sc.b);
    }
    for (int j = 0; j < s.b; ++j)
        for (int x : dc_orig[j]) g.add_edge(orig(j, x), T, MaxFlow::kInf);
    return g.run(S, T);
}

// Current version of node x of block j just before event t.
int version_at(const FailureOrder& o, int j, int x, int t) {
    int v = -1;
    for (int u = 0; u < t; ++u)
        if (o.events[u].first == j && o.events[u].second == x) v = u;
    return v;
}

std::int64_t reduced_cut(const SystemParams& p, const Schedule& s, const Scaled& sc, const FailureOrder& o,
                         const std::vector<int>& u) {
    const int b = s.b, c = s.c, E = s.E, dr = p.d_r(), nb = p.b - p.sigma;
    auto dc_orig = unrepaired_nodes(s, u);
    std::vector<std::vector<int>> avail(b);
    for (int j = 0; j < b; ++j) avail[j] = s.availability(j);

    // earlier[t][j]: repaired nodes of block j before event t.
    std::vector<std::vector<int>> earlier(E + 1, std::vector<int>(b, 0));
    for (int t = 0; t < E; ++t) {
        earlier[t + 1] = earlier[t];
        ++earlier[t + 1][s.block_of[t]];
    }

    // Enumerate how many originals per block sit on the sink side, as a prefix of
    // the availability order (a longer-lived sink-side original never costs more).
    std::vector<int> sink(b);
    for (int j = 0; j < b; ++j) sink[j] = j < static_cast<int>(u.size()) ? u[j] : 0;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<int> best_sink;
    std::vector<std::int64_t> need_vals(b);
    std::function<void(int)> rec = [&](int j) {
        if (j == b) {
            std::int64_t cost = 0;
            for (int i = 0; i < b; ++i) cost += sc.a * sink[i];
            for (int t = 0; t < E && cost < best; ++t) {
                int own = s.block_of[t];
                std::vector<std::int64_t> needs;
                for (int i = 0; i < b; ++i) {
                    if (i == own) continue;
                    int alive = 0;
                    for (int q = 0; q < sink[i]; ++q)
                        if (s.fail_time[i][avail[i][q]] > t) ++alive;
                    needs.push_back(std::max(0, dr - earlier[t][i] - alive));
                }
                std::sort(needs.begin(), needs.end());
                std::int64_t need = 0;
                for (int q = 0; q < nb; ++q) need += needs[q];
                cost += std::min(sc.a, sc.b * need);
            }
            if (cost < best) {
                best = cost;
                best_sink = sink;
            }
            return;
        }
        int lo = sink[j];
        for (int v = lo; v <= c; ++v) {
            sink[j] = v;
            rec(j + 1);
        }
        sink[j] = lo;
    };
    rec(0);

    // Realize the minimizing topology and confirm by max-flow.
    std::vector<std::vector<HelperRef>> helpers(E);
    for (int t = 0; t < E; ++t) {
        int own = s.block_of[t];
        std::vector<std::pair<int, int>> order;  // (need, block)
        std::vector<std::vector<HelperRef>> per(b);
        for (int i = 0; i < b; ++i) {
            if (i == own) continue;
            std::vector<HelperRef> pick;
            for (int x = 0; x < c && static_cast<int>(pick.size()) < dr; ++x) {
                int v = version_at(o, i, x, t);
                if (v >= 0) pick.push_back({i, x, v});
            }
            for (int q = 0; q < c && static_cast<int>(pick.size()) < dr; ++q) {
                int x = avail[i][q];
                if (s.fail_time[i][x] >= t && version_at(o, i, x, t) < 0) pick.push_back({i, x, -1});
            }
            int sink_alive = 0;
            for (int q = 0; q < best_sink[i]; ++q)
                if (s.fail_time[i][avail[i][q]] > t) ++sink_alive;
            order.push_back({std::max(0, dr - earlier[t][i] - sink_alive), i});
            per[i] = std::move(pick);
        }
        std::stable_sort(order.begin(), order.end());
        for (int q = 0; q < nb; ++q)
            for (const auto& h : per[order[q].second]) helpers[t].push_back(h);
    }
    std::int64_t flow = graph_flow(s, sc, helpers, dc_orig);
    if (flow != best)
        throw std::logic_error("min-cut search and max-flow disagree: " + std::to_string(flow) + " vs " +
                               std::to_string(best) + " on " + o.to_string());
    return best;
}

std::int64_t brute_cut(const SystemParams& p, const Schedule& s, const Scaled& sc, const FailureOrder& o,
                       const std::vector<int>& u) {
    const int b = s.b, c = s.c, E = s.E, dr = p.d_r(), nb = p.b - p.sigma;
    auto dc_orig = unrepaired_nodes(s, u);
    std::vector<std::vector<HelperRef>> helpers(E);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::size_t graphs = 0;
    const std::size_t limit = 2'000'000;

    std::function<void(int)> per_event = [&](int t) {
        if (t == E) {
            if (++graphs > limit) throw ParamError("brute-force topology count <= 2e6", p.to_string());
            best = std::min(best, graph_flow(s, sc, helpers, dc_orig));
            return;
        }
        int own = s.block_of[t];
        std::vector<int> others;
        for (int i = 0; i < b; ++i)
            if (i != own) others.push_back(i);
        std::vector<bool> mask(others.size(), false);
        std::fill(mask.begin(), mask.begin() + nb, true);
        do {
            std::vector<int> chosen;
            for (std::size_t q = 0; q < others.size(); ++q)
                if (mask[q]) chosen.push_back(others[q]);
            // d_r-subsets of the c live nodes in each chosen block.
            std::function<void(std::size_t)> per_block = [&](std::size_t bi) {
                if (bi == chosen.size()) {
                    per_event(t + 1);
                    return;
                }
                int j = chosen[bi];
                std::vector<bool> m(c, false);
                std::fill(m.begin(), m.begin() + dr, true);
                do {
                    std::size_t before = helpers[t].size();
                    for (int x = 0; x < c; ++x)
                        if (m[x]) helpers[t].push_back({j, x, version_at(o, j, x, t)});
                    per_block(bi + 1);
                    helpers[t].resize(before);
                } while (std::prev_permutation(m.begin(), m.end()));
            };
            per_block(0);
        } while (std::prev_permutation(mask.begin(), mask.end()));
    };
    per_event(0);
    return best;
}

}  // namespace

Rational order_cut(const SystemParams& p, const Rational& alpha, const Rational& beta, const FailureOrder& order,
                   bool brute_force_topology, const std::vector<int>& unrepaired) {
    core::validate_params(p);
    Scaled sc = scale(alpha, beta);
    Schedule s(p, order);
    std::int64_t v = brute_force_topology ? brute_cut(p, s, sc, order, unrepaired)
                                          : reduced_cut(p, s, sc, order, unrepaired);
    return Rational(BigInt(v)) / Rational(sc.den);
}

OracleResult mincut_oracle(const SystemParams& p, const Rational& alpha, const Rational& beta,
                           const OracleOptions& opt) {
    core::validate_params(p);
    const int blocks = p.b - p.rho, kc = p.k_c();
    if (opt.exhaustive && kc * blocks > opt.max_events)
        throw ParamError("k_c(b-rho) <= " + std::to_string(opt.max_events) + " for exhaustive orders", p.to_string());

    // Orders over the first b-rho blocks (blocks are interchangeable); within a
    // block the i-th event repairs node i.
    auto run_orders = [&](const std::vector<int>& u, OracleResult& res, bool track) {
        std::vector<int> labels;
        for (int j = 0; j < blocks; ++j)
            for (int i = u.empty() ? 0 : u[j]; i < kc; ++i) labels.push_back(j);
        auto order_of = [&](const std::vector<int>& seq) {
            FailureOrder o;
            std::vector<int> next(p.b, 0);
            for (int j : seq) o.events.push_back({j, next[j]++});
            return o;
        };
        // Repaired nodes take the low indices; never-failed collector nodes come
        // from the rest via availability order.
        auto visit = [&](const std::vector<int>& seq) {
            FailureOrder o = order_of(seq);
            Rational v = order_cut(p, alpha, beta, o, opt.brute_force_topology, u);
            if (!track) {
                if (!res.unrepaired_dc_min || v < *res.unrepaired_dc_min) res.unrepaired_dc_min = v;
                return;
            }
            if (res.orders == 0 || v < res.min_cut) {
                res.min_cut = v;
                res.argmin = o;
            }
            if (res.orders == 0 || v > res.max_over_orders) res.max_over_orders = v;
            ++res.orders;
        };
        if (opt.exhaustive) {
            std::sort(labels.begin(), labels.end());
            do visit(labels);
            while (std::next_permutation(labels.begin(), labels.end()));
        } else {
            std::mt19937_64 rng(opt.seed);
            for (int i = 0; i < opt.samples; ++i) {
                std::shuffle(labels.begin(), labels.end(), rng);
                visit(labels);
            }
        }
    };

    OracleResult res;
    run_orders({}, res, true);
    res.order_invariant = res.min_cut == res.max_over_orders;
    if (opt.unrepaired_dc) {
        std::vector<int> u(blocks, 0);
        std::function<void(int)> rec = [&](int j) {
            if (j == blocks) {
                bool ok = true;
                for (int i = 0; i < blocks; ++i) ok = ok && u[i] <= p.c() - (kc - u[i]);
                if (ok) run_orders(u, res, false);
                return;
            }
            for (int v = 0; v <= kc; ++v) {
                u[j] = v;
                rec(j + 1);
            }
        };
        rec(0);
    }
    return res;
}

// --- two-block trade-off -------------------------------------------------------

static std::vector<long long> two_block_caps(int k, int d) {
    std::vector<long long> caps;
    if (k % 2 == 0) {
        for (int i = 0; i < k / 2; ++i) caps.push_back(d - i);
        for (int i = 1; i <= k / 2; ++i) caps.push_back(d - i);
    } else {
        int h = k / 2;
        for (int i = 0; i <= h; ++i) caps.push_back(d);
        for (int i = 0; i < h; ++i) caps.push_back(d - h - 1);
    }
    for (auto& c : caps) c = std::max(0LL, c);
    std::sort(caps.begin(), caps.end());
    return caps;
}

// Least alpha with sum_i min(alpha, caps_i * beta) >= M, or none.
static std::optional<Rational> least_alpha(const std::vector<long long>& caps, const Rational& beta, const Rational& M) {
    const std::size_t m = caps.size();
    Rational below = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Rational lo = i ? Rational(caps[i - 1]) * beta : Rational(0), hi = Rational(caps[i]) * beta;
        Rational a = (M - below) / Rational(static_cast<long long>(m - i));
        if (a <= hi) return a < lo ? lo : a;
        below += hi;
    }
    return std::nullopt;
}

std::vector<TradeoffPoint> tradeoff_curve(const SystemParams& p, const Rational& M, int steps) {
    if (!(p.b == 2 && p.rho == 0 && p.sigma == 1))
        throw ParamError("b = 2, rho = 0, sigma = 1 for interior trade-off points", p.to_string());
    if (steps < 1) throw ParamError("steps >= 1", std::to_string(steps));
    CornerPoints cp = corner_points(p, M);
    auto caps = two_block_caps(p.k, p.d);
    std::vector<TradeoffPoint> out;
    for (int s = 0; s <= steps; ++s) {
        Rational gamma = cp.mbr.gamma + (cp.msr.gamma - cp.mbr.gamma) * s / steps;
        auto a = least_alpha(caps, gamma / p.d, M);
        if (!a) throw std::logic_error("two-block trade-off infeasible inside the corner range");
        std::string src = s == 0 ? "MBR corner" : s == steps ? "MSR corner" : "two-block min-cut";
        out.push_back({*a, gamma, src});
    }
    return out;
}

RelaxedKtilde relaxed_optimal_ktilde(bool mbr, int p, int rho, int sigma, Regime regime, int d) {
    int b = p + 1;
    std::string detail = "p=" + std::to_string(p) + " rho=" + std::to_string(rho) + " sigma=" + std::to_string(sigma);
    if (p < 2) throw ParamError("p >= 2", detail);
    if (rho < 0 || rho >= b || sigma < 1 || sigma >= b) throw ParamError("0 <= rho < b, 1 <= sigma < b", detail);
    Rational v = p * p, ka = p, B = b, R = rho, S = sigma, D = d;
    RelaxedKtilde out;
    switch (regime) {
        case Regime::IA: out.exact = ka * ka * (B - R) / ((ka * ka - v) * (B - R) + v); break;
        case Regime::IB:
            if (sigma <= rho) throw ParamError("sigma > rho for regime I.B", detail);
            out.exact = mbr ? Rational(ka * ka * (B - R) * (B - R) /
                                       (ka * ka * (B - R) * (B - R) - v * (B - S) * (B + S - 2 * R - 1)))
                            : Rational(ka * ka * (B - R) / (ka * ka * (B - R) - v * (B - S)));
            break;
        case Regime::II:
            if (sigma > rho) throw ParamError("sigma <= rho for regime II", detail);
            if (!mbr) {
                out.exact = (D * (B - R - 1) + ka * (B - S)) / (ka * (B - S));
                break;
            }
            {
                double lin = 2.0 * d * (b - rho - 1) / p + (b - sigma);
                double disc = lin * lin - 4.0 * d * d * (b - rho) * (b - rho - 1) / (p * p);
                if (disc < 0) throw ParamError("real k~ for MBR with d_r < k_c", detail + " d=" + std::to_string(d));
                for (double sgn : {-1.0, 1.0}) out.roots.push_back((lin + sgn * std::sqrt(disc)) / (2.0 * (b - sigma)));
            }
            break;
    }
    return out;
}

std::vector<GapRow> msr_mbr_gap_report(int k_lo, int k_hi) {
    if (k_lo < 2 || k_hi < k_lo) throw ParamError("2 <= k_lo <= k_hi", std::to_string(k_lo) + ".." + std::to_string(k_hi));
    std::vector<GapRow> rows;
    for (int k = k_lo; k <= k_hi; ++k)
        for (int d = k; d <= 2 * k; ++d) {
            SystemParams p;
            p.b = 2, p.rho = 0, p.sigma = 1, p.k = k, p.d = d;
            Rational g = corner_points(p, 1).msr.gamma;
            rows.push_back({k, d, g / gamma_mbr_classical(1, k, d)});
        }
    return rows;
}

}  // namespace bfr::bounds
