#include "bfr/regen.hpp"

#include <algorithm>
#include <set>

namespace bfr::codes {

using gf::Elem;

namespace {

std::string str(int v) { return std::to_string(v); }

// One beta = 1 product-matrix code over GF(2^8). Returns the generator
// (B x n*alpha) and the per-node repair projection vectors (alpha each).
struct Stripe {
    BaseMatrix g;
    std::vector<std::vector<Elem>> v;
};

// Message symbols fill the upper triangle of a symmetric s x s matrix.
void fill_symmetric(BaseMatrix& m, std::size_t r0, std::size_t s, const std::vector<Elem>& msg, std::size_t& at) {
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i; j < s; ++j) m(r0 + i, j) = m(r0 + j, i) = msg[at++];
}

Stripe mbr_stripe(const gf::Field* f, int n, int k, int d) {
    const int alpha = d, B = k * (k + 1) / 2 + k * (d - k);
    BaseMatrix psi(f, n, d);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < d; ++l) psi(i, l) = f->pow(Elem(i), l);
    auto message = [&](const std::vector<Elem>& msg) {
        BaseMatrix m(f, d, d);
        std::size_t at = 0;
        fill_symmetric(m, 0, k, msg, at);
        for (int i = 0; i < k; ++i)
            for (int j = k; j < d; ++j) m(i, j) = m(j, i) = msg[at++];
        return m;
    };
    Stripe s{BaseMatrix(f, B, n * alpha), {}};
    for (int u = 0; u < B; ++u) {
        std::vector<Elem> e(B, 0);
        e[u] = 1;
        auto c = psi * message(e);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < alpha; ++j) s.g(u, i * alpha + j) = c(i, j);
    }
    for (int i = 0; i < n; ++i) {
        std::vector<Elem> v(d);
        for (int l = 0; l < d; ++l) v[l] = psi(i, l);
        s.v.push_back(v);
    }
    return s;
}

// d = 2k - 2 product-matrix MSR: message [S1; S2], Psi = [Phi, Lambda Phi].
Stripe msr_stripe_tight(const gf::Field* f, int n, int k) {
    const int alpha = k - 1, d = 2 * alpha, B = alpha * (alpha + 1);
    // x_i distinct with x_i^alpha distinct, so Lambda has distinct entries.
    std::vector<Elem> xs;
    std::set<Elem> lambdas;
    for (Elem x = 0; x < f->size() && int(xs.size()) < n; ++x) {
        Elem l = f->pow(x, alpha);
        if (lambdas.insert(l).second) xs.push_back(x);
    }
    if (int(xs.size()) < n) throw ParamError("field capacity", "GF(256) has too few distinct x^alpha for n=" + str(n));
    BaseMatrix psi(f, n, d);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < d; ++l) psi(i, l) = f->pow(xs[i], l);
    Stripe s{BaseMatrix(f, B, n * alpha), {}};
    for (int u = 0; u < B; ++u) {
        std::vector<Elem> e(B, 0);
        e[u] = 1;
        BaseMatrix m(f, d, alpha);
        std::size_t at = 0;
        fill_symmetric(m, 0, alpha, e, at);
        fill_symmetric(m, alpha, alpha, e, at);
        auto c = psi * m;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < alpha; ++j) s.g(u, i * alpha + j) = c(i, j);
    }
    for (int i = 0; i < n; ++i) {
        std::vector<Elem> v(alpha);
        for (int l = 0; l < alpha; ++l) v[l] = psi(i, l);
        s.v.push_back(v);
    }
    return s;
}

// d > 2k - 2: build the [n+i, k+i, d+i] code, make it systematic, fix the
// first i systematic nodes to zero and drop them.
Stripe msr_stripe(const gf::Field* f, int n, int k, int d) {
    const int i = d - (2 * k - 2);
    if (i == 0) return msr_stripe_tight(f, n, k);
    const int n2 = n + i, k2 = k + i, alpha = k2 - 1;
    auto big = msr_stripe_tight(f, n2, k2);
    std::vector<int> sys_cols(k2 * alpha);
    for (int c = 0; c < k2 * alpha; ++c) sys_cols[c] = c;
    auto tinv = big.g.select_cols(sys_cols).inverse();
    if (!tinv) throw ParamError("systematic form", "first k nodes of the MSR code are not independent");
    auto gsys = *tinv * big.g;
    std::vector<int> rows, cols;
    for (int r = i * alpha; r < int(gsys.rows()); ++r) rows.push_back(r);
    for (int c = i * alpha; c < n2 * alpha; ++c) cols.push_back(c);
    Stripe s{gsys.select_rows(rows).select_cols(cols), {}};
    s.v.assign(big.v.begin() + i, big.v.end());
    return s;
}

}  // namespace

const char* mode_name(RegenMode m) { return m == RegenMode::MSR ? "MSR" : "MBR"; }

RegenParams RegenParams::mbr(int n, int k, int d, int beta) {
    RegenParams p;
    p.n = n, p.k = k, p.d = d, p.beta = beta, p.mode = RegenMode::MBR;
    p.alpha = d * beta;
    p.M = beta * (k * d - k * (k - 1) / 2);
    return p;
}

RegenParams RegenParams::msr(int n, int k, int d, int beta) {
    RegenParams p;
    p.n = n, p.k = k, p.d = d, p.beta = beta, p.mode = RegenMode::MSR;
    p.alpha = (d - k + 1) * beta;
    p.M = k * p.alpha;
    return p;
}

void RegenParams::validate() const {
    if (k < 1) throw ParamError("k >= 1", "k=" + str(k));
    if (d < k) throw ParamError("k <= d", "k=" + str(k) + " d=" + str(d));
    if (d > n - 1) throw ParamError("d <= n-1", "d=" + str(d) + " n=" + str(n));
    if (beta < 1) throw ParamError("beta >= 1", "beta=" + str(beta));
    if (mode == RegenMode::MBR) {
        if (alpha != d * beta) throw ParamError("MBR alpha = d*beta", "alpha=" + str(alpha));
        if (M != beta * (k * d - k * (k - 1) / 2))
            throw ParamError("MBR M = beta*(kd - k(k-1)/2)", "M=" + str(M));
        // alpha = 2Md / (k(2d-k+1)) at beta = 1, cross-multiplied
        if (alpha * k * (2 * d - k + 1) != 2 * M * d) throw ParamError("MBR identity", to_string());
        if (n > 256) throw ParamError("field capacity", "n=" + str(n) + " > 256");
    } else {
        if (d < 2 * k - 2) throw ParamError("MSR d >= 2k-2", "k=" + str(k) + " d=" + str(d));
        if (alpha != (d - k + 1) * beta) throw ParamError("MSR alpha = (d-k+1)*beta", "alpha=" + str(alpha));
        if (M != k * alpha) throw ParamError("MSR alpha = M/k", "M=" + str(M));
        if (n + d - (2 * k - 2) > 256) throw ParamError("field capacity", to_string());
    }
}

std::string RegenParams::to_string() const {
    return std::string(mode_name(mode)) + "[n=" + str(n) + ",k=" + str(k) + ",d=" + str(d) + ",alpha=" + str(alpha) +
           ",beta=" + str(beta) + ",M=" + str(M) + "]";
}

BaseMatrix NodeCode::node_columns(int node) const {
    std::vector<int> cols(alpha);
    for (int j = 0; j < alpha; ++j) cols[j] = node * alpha + j;
    return generator.select_cols(cols);
}

std::vector<std::vector<Elem>> NodeCode::encode(const std::vector<Elem>& message) const {
    if (int(message.size()) != M)
        throw PreconditionError("encode: expected " + std::to_string(M) + " symbols, got " +
                                std::to_string(message.size()));
    auto cw = generator.left_mul(message);
    std::vector<std::vector<Elem>> out(n);
    for (int i = 0; i < n; ++i) out[i].assign(cw.begin() + i * alpha, cw.begin() + (i + 1) * alpha);
    return out;
}

std::vector<Elem> NodeCode::collect(const std::map<int, std::vector<Elem>>& nodes) const {
    if (int(nodes.size()) < k) throw UnrecoverableErasure(int(nodes.size()), k);
    std::vector<int> cols;
    std::vector<Elem> y;
    for (const auto& [i, v] : nodes) {
        if (i < 0 || i >= n) throw PreconditionError("collect: node index out of range");
        if (int(v.size()) != alpha) throw PreconditionError("collect: node vector has wrong length");
        for (int j = 0; j < alpha; ++j) cols.push_back(i * alpha + j);
        y.insert(y.end(), v.begin(), v.end());
    }
    auto ga = generator.select_cols(cols);
    auto r = ga.solve_right(BaseMatrix::identity(field.get(), M));
    if (!r) throw UnrecoverableErasure(int(ga.rank()), M);
    auto msg = r->left_mul(y);
    if (ga.left_mul(msg) != y) throw CorruptionError("collect: node contents inconsistent");
    return msg;
}

std::vector<Elem> NodeCode::respond(int failed, const std::vector<Elem>& helper_content) const {
    if (failed < 0 || failed >= n) throw PreconditionError("respond: failed index out of range");
    if (int(helper_content.size()) != alpha) throw PreconditionError("respond: helper content has wrong length");
    return repair[failed].left_mul(helper_content);
}

void NodeCode::check_helpers(int failed, const std::vector<int>& helpers) const {
    if (failed < 0 || failed >= n) throw PreconditionError("repair: failed index out of range");
    std::set<int> seen;
    for (int h : helpers) {
        if (h < 0 || h >= n) throw PreconditionError("repair: helper index out of range");
        if (h == failed) throw PreconditionError("repair: helper equals the failed node");
        if (!seen.insert(h).second) throw PreconditionError("repair: duplicate helper " + std::to_string(h));
    }
    if (int(helpers.size()) != d)
        throw PreconditionError("repair: need exactly " + std::to_string(d) + " helpers, got " +
                                std::to_string(helpers.size()));
}

BaseMatrix NodeCode::repair_matrix(int failed, const std::vector<int>& helpers) const {
    check_helpers(failed, helpers);
    BaseMatrix rsp(field.get(), M, helpers.size() * beta);
    for (std::size_t h = 0; h < helpers.size(); ++h) {
        auto part = node_columns(helpers[h]) * repair[failed];
        for (int r = 0; r < M; ++r)
            for (int j = 0; j < beta; ++j) rsp(r, h * beta + j) = part(r, j);
    }
    auto x = rsp.solve_right(node_columns(failed));
    if (!x) throw PreconditionError("repair: helper responses do not determine the failed node");
    return *x;
}

std::vector<Elem> NodeCode::rebuild(int failed, const std::vector<std::pair<int, std::vector<Elem>>>& responses) const {
    std::vector<int> helpers;
    std::vector<Elem> y;
    for (const auto& [h, r] : responses) {
        if (int(r.size()) != beta) throw PreconditionError("repair: response has wrong length");
        helpers.push_back(h);
        y.insert(y.end(), r.begin(), r.end());
    }
    return repair_matrix(failed, helpers).left_mul(y);
}

RegenCode::RegenCode(const RegenParams& p) : p_(p) {
    p.validate();
    auto f = gf::field_for(gf::FieldSpec::binary(8));
    const int a1 = p.alpha / p.beta, m1 = p.M / p.beta;
    Stripe s = p.mode == RegenMode::MBR ? mbr_stripe(f.get(), p.n, p.k, p.d) : msr_stripe(f.get(), p.n, p.k, p.d);
    code_.n = p.n, code_.k = p.k, code_.d = p.d, code_.alpha = p.alpha, code_.beta = p.beta, code_.M = p.M;
    code_.field = f;
    code_.generator = BaseMatrix(f.get(), p.M, p.n * p.alpha);
    // Stripe t uses message rows [t*m1, (t+1)*m1) and node positions [t*a1, (t+1)*a1).
    for (int t = 0; t < p.beta; ++t)
        for (int r = 0; r < m1; ++r)
            for (int i = 0; i < p.n; ++i)
                for (int j = 0; j < a1; ++j)
                    code_.generator(t * m1 + r, i * p.alpha + t * a1 + j) = s.g(r, i * a1 + j);
    for (int i = 0; i < p.n; ++i) {
        BaseMatrix v(f.get(), p.alpha, p.beta);
        for (int t = 0; t < p.beta; ++t)
            for (int j = 0; j < a1; ++j) v(t * a1 + j, t) = s.v[i][j];
        code_.repair.push_back(v);
    }
}

std::vector<std::vector<Elem>> RegenCode::encode(const std::vector<Elem>& subfile) const { return code_.encode(subfile); }

std::vector<Elem> RegenCode::collect(const std::map<int, std::vector<Elem>>& nodes) const {
    if (int(nodes.size()) < p_.k) throw UnrecoverableErasure(int(nodes.size()), p_.k);
    return code_.collect(nodes);
}

std::vector<Elem> RegenCode::respond(int failed, const std::vector<Elem>& helper_content) const {
    return code_.respond(failed, helper_content);
}

std::vector<Elem> RegenCode::repair(int failed, const std::vector<std::pair<int, std::vector<Elem>>>& responses) const {
    return code_.rebuild(failed, responses);
}

NodeCode mds_node_code(const MdsCode& code) {
    NodeCode c;
    c.n = code.n(), c.k = code.k(), c.d = code.k(), c.alpha = 1, c.beta = 1, c.M = code.k();
    c.field = gf::field_for(code.field().spec());
    c.generator = code.generator();
    for (int i = 0; i < c.n; ++i) c.repair.push_back(BaseMatrix::identity(c.field.get(), 1));
    return c;
}

}  // namespace bfr::codes
