#include <algorithm>
#include "bfr/gf.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace bfr::gf {

namespace {

// Primitive polynomials, one per degree; bit w is the leading term.
constexpr std::uint32_t kBinaryModuli[17] = {
    0,      0x3,    0x7,    0xb,    0x13,   0x25,   0x43,   0x89,   0x11d,
    0x211,  0x409,  0x805,  0x1053, 0x201b, 0x4443, 0x8003, 0x1100b,
};

int bit_degree(std::uint64_t a) {
    int d = -1;
    while (a) {
        a >>= 1;
        ++d;
    }
    return d;
}

std::uint64_t gf2_polymod(std::uint64_t a, std::uint64_t m) {
    int dm = bit_degree(m);
    for (int da = bit_degree(a); da >= dm; da = bit_degree(a)) a ^= m << (da - dm);
    return a;
}

std::uint64_t gf2_polymulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t r = 0;
    a = gf2_polymod(a, m);
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a = gf2_polymod(a << 1, m);
    }
    return r;
}

bool gf2_irreducible(std::uint32_t poly) {
    int w = bit_degree(poly);
    if (w < 1) return false;
    if (w == 1) return true;
    if ((poly & 1) == 0) return false;
    // Ben-Or: gcd(x^{2^i} - x, f) = 1 for i <= w/2.
    std::uint64_t h = 2;
    for (int i = 1; i <= w / 2; ++i) {
        h = gf2_polymulmod(h, h, poly);
        std::uint64_t a = h ^ 2, b = poly;
        while (b) {
            a = gf2_polymod(a, b);
            std::swap(a, b);
        }
        if (bit_degree(a) > 0) return false;
    }
    return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint32_t default_binary_modulus(unsigned w) {
    if (w < 1 || w > 16) throw ConfigError("binary field degree must be in [1,16]");
    return kBinaryModuli[w];
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
    FieldSpec s;
    s.kind = FieldKind::prime;
    s.p = p;
    s.w = 1;
    s.poly = 0;
    return s;
}

FieldSpec FieldSpec::binary(unsigned w) { return binary(w, default_binary_modulus(w)); }

FieldSpec FieldSpec::binary(unsigned w, std::uint32_t poly) {
    FieldSpec s;
    s.kind = FieldKind::binary;
    s.p = 2;
    s.w = w;
    s.poly = poly;
    return s;
}

FieldSpec FieldSpec::base() const {
    if (kind != FieldKind::tower) return *this;
    return w == 1 && poly == 0 ? prime(p) : binary(w, poly);
}

std::string FieldSpec::to_string() const {
    std::ostringstream os;
    switch (kind) {
    case FieldKind::prime: os << "GF(" << p << ")"; break;
    case FieldKind::binary: os << "GF(2^" << w << ") mod 0x" << std::hex << poly; break;
    case FieldKind::tower:
        os << "GF((" << base().to_string() << ")^" << m << ") mod [";
        for (std::size_t i = 0; i < ext_modulus.size(); ++i) os << (i ? " " : "") << ext_modulus[i];
        os << "]";
        break;
    }
    return os.str();
}

Field::Field(const FieldSpec& spec) : spec_(spec) {
    if (spec.kind == FieldKind::prime) {
        if (!is_prime(spec.p) || spec.p > 65521) throw ConfigError("prime field needs a prime p <= 65521");
        q_ = spec.p;
        std::vector<std::uint32_t> factors;
        std::uint32_t n = q_ - 1;
        for (std::uint32_t d = 2; d * d <= n; ++d) {
            if (n % d) continue;
            factors.push_back(d);
            while (n % d == 0) n /= d;
        }
        if (n > 1) factors.push_back(n);
        for (Elem g = 1; g < q_; ++g) {
            bool ok = true;
            for (auto r : factors)
                if (pow(g, (q_ - 1) / r) == 1) ok = false;
            if (ok) {
                prim_ = g;
                break;
            }
        }
        return;
    }
    if (spec.kind != FieldKind::binary) throw ConfigError("Field holds prime or binary specs only");
    if (spec.w < 1 || spec.w > 16) throw ConfigError("binary field degree must be in [1,16]");
    if (bit_degree(spec.poly) != int(spec.w) || !gf2_irreducible(spec.poly))
        throw ConfigError("modulus is not an irreducible polynomial of degree w");
    q_ = 1u << spec.w;
    // Find the smallest generator by brute order check via carry-less multiply.
    for (Elem g = 2; g < q_ || q_ == 2; ++g) {
        if (q_ == 2) {
            prim_ = 1;
            break;
        }
        Elem x = 1;
        std::uint32_t order = 0;
        do {
            x = static_cast<Elem>(gf2_polymulmod(x, g, spec.poly));
            ++order;
        } while (x != 1 && order < q_);
        if (order == q_ - 1) {
            prim_ = g;
            break;
        }
    }
    exp_.assign(2 * q_, 0);
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
        exp_[i] = x;
        log_[x] = i;
        x = static_cast<Elem>(gf2_polymulmod(x, prim_, spec.poly));
    }
    for (std::uint32_t i = q_ - 1; i < 2 * q_; ++i) exp_[i] = exp_[i - (q_ - 1)];
    if (spec.w <= 8) {
        mul_table_.assign(std::size_t(q_) * q_, 0);
        for (Elem a = 1; a < q_; ++a)
            for (Elem b = 1; b < q_; ++b) mul_table_[(a << spec.w) | b] = exp_[log_[a] + log_[b]];
    }
    if (spec.w == 8) byte_table_.assign(mul_table_.begin(), mul_table_.end());
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw ArithmeticError("division by zero");
    if (binary()) return q_ == 2 ? 1 : exp_[(q_ - 1) - log_[a]];
    return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::shared_ptr<const Field> field_for(const FieldSpec& spec) {
    static std::mutex mu;
    static std::map<std::tuple<int, std::uint32_t, unsigned, std::uint32_t>, std::shared_ptr<const Field>> cache;
    FieldSpec b = spec.base();
    auto key = std::make_tuple(int(b.kind), b.p, b.w, b.poly);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const Field>(b);
    cache.emplace(key, f);
    return f;
}

namespace {
const Field& same_field(FieldElem a, FieldElem b) {
    if (!a.field || !b.field) throw ConfigError("element without a field");
    if (a.field != b.field && !(a.field->spec() == b.field->spec()))
        throw ConfigError("field mismatch: " + a.field->spec().to_string() + " vs " +
                          b.field->spec().to_string());
    return *a.field;
}
}  // namespace

FieldElem operator+(FieldElem a, FieldElem b) { return {&same_field(a, b), same_field(a, b).add(a.v, b.v)}; }
FieldElem operator-(FieldElem a, FieldElem b) { return {&same_field(a, b), same_field(a, b).sub(a.v, b.v)}; }
FieldElem operator*(FieldElem a, FieldElem b) { return {&same_field(a, b), same_field(a, b).mul(a.v, b.v)}; }
FieldElem operator/(FieldElem a, FieldElem b) { return {&same_field(a, b), same_field(a, b).div(a.v, b.v)}; }
FieldElem inverse(FieldElem a) { return {a.field, a.field->inv(a.v)}; }
bool operator==(FieldElem a, FieldElem b) { return same_field(a, b).eq(a.v, b.v); }

// ---- polynomials over a base field ----

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(const Field& f, Poly a, const Poly& mod) {
    poly_trim(a);
    std::size_t dm = mod.size() - 1;
    Elem lead_inv = f.inv(mod.back());
    while (a.size() > dm) {
        Elem t = f.mul(a.back(), lead_inv);
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(t, mod[i]));
        poly_trim(a);
    }
    return a;
}

Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& mod) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    return poly_mod(f, std::move(r), mod);
}

Poly poly_gcd(const Field& f, Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        a = poly_mod(f, std::move(a), b);
        std::swap(a, b);
    }
    return a;
}

bool poly_irreducible(const Field& f, const Poly& monic) {
    std::size_t m = monic.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    if (monic[0] == 0) return false;
    Poly x{0, 1};
    Poly h = x;
    for (std::size_t i = 1; i <= m / 2; ++i) {
        // h <- h^q mod f
        Poly r{1};
        Poly base = h;
        for (std::uint64_t e = f.size(); e; e >>= 1) {
            if (e & 1) r = poly_mulmod(f, r, base, monic);
            base = poly_mulmod(f, base, base, monic);
        }
        h = r;
        Poly t = h;
        t.resize(std::max<std::size_t>(t.size(), 2), 0);
        t[1] = f.sub(t[1], 1);
        Poly g = poly_gcd(f, t, monic);
        if (g.size() > 1) return false;
    }
    return true;
}

// ---- towers ----

FieldSpec FieldSpec::tower(const FieldSpec& base, unsigned m) {
    if (base.kind == FieldKind::tower) throw ConfigError("tower base must be a prime or binary field");
    if (m < 1) throw ConfigError("extension degree must be >= 1");
    auto f = field_for(base);
    static std::mutex mu;
    static std::map<std::tuple<int, std::uint32_t, unsigned, std::uint32_t, unsigned>, std::vector<Elem>> cache;
    auto key = std::make_tuple(int(base.kind), base.p, base.w, base.poly, m);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return tower(base, m, it->second);
    }
    // Sparsest first with unit middle coefficients: x^m + b, then
    // x^m + x^i + b, then x^m + x^j + x^i + b, each by exponents then b
    // ascending; then every monic polynomial in base-q counting order.
    // In characteristic 2 a polynomial in x^2 only is a square, so skip those.
    std::vector<Elem> mod(m + 1, 0);
    mod[m] = 1;
    Elem q = static_cast<Elem>(f->size());
    bool found = false;
    auto try_terms = [&](const std::vector<unsigned>& middle) {
        if (f->binary() && m % 2 == 0 && std::all_of(middle.begin(), middle.end(), [](unsigned e) { return e % 2 == 0; }))
            return;
        for (Elem b = 1; b < q && !found; ++b) {
            std::fill(mod.begin(), mod.end() - 1, 0);
            for (unsigned e : middle) mod[e] = 1;
            mod[0] = b;
            found = poly_irreducible(*f, mod);
        }
    };
    try_terms({});
    for (unsigned i = 1; i < m && !found; ++i) try_terms({i});
    for (unsigned j = 2; j < m && !found; ++j)
        for (unsigned i = 1; i < j && !found; ++i) try_terms({j, i});
    for (std::uint64_t t = 1; !found; ++t) {
        std::uint64_t x = t;
        for (unsigned i = 0; i < m; ++i) {
            mod[i] = static_cast<Elem>(x % q);
            x /= q;
        }
        if (x) throw ConfigError("no irreducible polynomial found");
        found = mod[0] != 0 && poly_irreducible(*f, mod);
    }
    {
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(key, mod);
    }
    return tower(base, m, mod);
}

FieldSpec FieldSpec::tower(const FieldSpec& base, unsigned m, std::vector<Elem> modulus) {
    FieldSpec s = base;
    s.kind = FieldKind::tower;
    if (base.kind == FieldKind::prime) {
        s.w = 1;
        s.poly = 0;
    }
    s.m = m;
    s.ext_modulus = std::move(modulus);
    return s;
}

ExtField::ExtField(const FieldSpec& spec) : spec_(spec) {
    if (spec.kind != FieldKind::tower) throw ConfigError("ExtField needs a tower spec");
    base_ = field_for(spec.base());
    if (spec.ext_modulus.size() != spec.m + 1 || spec.ext_modulus.back() != 1)
        throw ConfigError("extension modulus must be monic of degree m");
    for (Elem c : spec.ext_modulus)
        if (!base_->contains(c)) throw ConfigError("modulus coefficient outside base field");
    if (!poly_irreducible(*base_, spec.ext_modulus)) throw ConfigError("extension modulus is reducible");
    modulus_ = spec.ext_modulus;
}

void ExtField::check(const ExtElem& a) const {
    if (a.field != this && (!a.field || !(a.field->spec() == spec_)))
        throw ConfigError("field mismatch in extension arithmetic");
}

ExtElem ExtField::zero() const { return ExtElem{this, std::vector<Elem>(spec_.m, 0)}; }
ExtElem ExtField::one() const { return basis(0); }

ExtElem ExtField::basis(unsigned i) const {
    if (i >= spec_.m) throw ConfigError("basis index out of range");
    ExtElem e = zero();
    e.c[i] = 1;
    return e;
}

ExtElem ExtField::scalar(Elem s) const {
    ExtElem e = zero();
    e.c[0] = s;
    return e;
}

ExtElem ExtField::from_vector(const std::vector<Elem>& v) const {
    if (v.size() != spec_.m) throw ConfigError("vector length differs from extension degree");
    for (Elem x : v)
        if (!base_->contains(x)) throw ConfigError("coordinate outside base field");
    return ExtElem{this, v};
}

std::vector<Elem> ExtField::to_vector(const ExtElem& a) const {
    check(a);
    return a.c;
}

bool ExtField::is_zero(const ExtElem& a) const {
    for (Elem x : a.c)
        if (x) return false;
    return true;
}

bool ExtField::eq(const ExtElem& a, const ExtElem& b) const {
    check(a);
    check(b);
    return a.c == b.c;
}

ExtElem ExtField::add(const ExtElem& a, const ExtElem& b) const {
    check(a);
    check(b);
    ExtElem r{this, a.c};
    for (unsigned i = 0; i < spec_.m; ++i) r.c[i] = base_->add(r.c[i], b.c[i]);
    return r;
}

ExtElem ExtField::sub(const ExtElem& a, const ExtElem& b) const {
    check(a);
    check(b);
    ExtElem r{this, a.c};
    for (unsigned i = 0; i < spec_.m; ++i) r.c[i] = base_->sub(r.c[i], b.c[i]);
    return r;
}

ExtElem ExtField::scale(const ExtElem& a, Elem s) const {
    check(a);
    ExtElem r{this, a.c};
    for (auto& x : r.c) x = base_->mul(x, s);
    return r;
}

ExtElem ExtField::mul(const ExtElem& a, const ExtElem& b) const {
    check(a);
    check(b);
    const unsigned m = spec_.m;
    const Field& f = *base_;
    std::vector<Elem> t(2 * m - 1, 0);
    for (unsigned i = 0; i < m; ++i) {
        if (a.c[i] == 0) continue;
        for (unsigned j = 0; j < m; ++j) t[i + j] = f.add(t[i + j], f.mul(a.c[i], b.c[j]));
    }
    // modulus is monic: x^m = -sum mod[i] x^i
    for (unsigned d = 2 * m - 2; d >= m; --d) {
        Elem c = t[d];
        if (c == 0) continue;
        t[d] = 0;
        for (unsigned i = 0; i < m; ++i) t[d - m + i] = f.sub(t[d - m + i], f.mul(c, modulus_[i]));
    }
    t.resize(m);
    return ExtElem{this, std::move(t)};
}

ExtElem ExtField::inv(const ExtElem& a) const {
    check(a);
    if (is_zero(a)) throw ArithmeticError("division by zero");
    const Field& f = *base_;
    // Extended Euclid: track s with s*a = r (mod modulus).
    Poly r0 = modulus_, r1 = a.c;
    poly_trim(r1);
    Poly s0{}, s1{1};
    while (r1.size() > 1) {
        // r0 = q*r1 + rem
        Poly q(r0.size() - r1.size() + 1, 0);
        Poly rem = r0;
        Elem li = f.inv(r1.back());
        while (rem.size() >= r1.size()) {
            std::size_t sh = rem.size() - r1.size();
            Elem t = f.mul(rem.back(), li);
            q[sh] = t;
            for (std::size_t i = 0; i < r1.size(); ++i) rem[sh + i] = f.sub(rem[sh + i], f.mul(t, r1[i]));
            poly_trim(rem);
            if (rem.empty()) break;
        }
        // s2 = s0 - q*s1
        Poly qs(q.size() + s1.size(), 0);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] = f.add(qs[i + j], f.mul(q[i], s1[j]));
        Poly s2(std::max(s0.size(), qs.size()), 0);
        for (std::size_t i = 0; i < s2.size(); ++i)
            s2[i] = f.sub(i < s0.size() ? s0[i] : 0, i < qs.size() ? qs[i] : 0);
        poly_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant
    Elem ci = f.inv(r1[0]);
    Poly res = poly_mod(f, s1, modulus_);
    ExtElem out = zero();
    for (std::size_t i = 0; i < res.size(); ++i) out.c[i] = f.mul(res[i], ci);
    return out;
}

ExtElem ExtField::pow(const ExtElem& a, std::uint64_t e) const {
    ExtElem r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

ExtElem ExtField::frobenius(const ExtElem& a) const { return pow(a, base_->size()); }

std::shared_ptr<const ExtField> ext_field_for(const FieldSpec& spec) {
    static std::mutex mu;
    static std::vector<std::shared_ptr<const ExtField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    for (auto& f : cache)
        if (f->spec() == spec) return f;
    auto f = std::make_shared<const ExtField>(spec);
    cache.push_back(f);
    return f;
}

std::vector<std::vector<Elem>> expand(const std::vector<ExtElem>& v) {
    if (v.empty()) return {};
    const ExtField* F = v[0].field;
    std::vector<std::vector<Elem>> m(F->degree(), std::vector<Elem>(v.size(), 0));
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].field != F && !(v[j].field->spec() == F->spec())) throw ConfigError("field mismatch in vector");
        for (unsigned i = 0; i < F->degree(); ++i) m[i][j] = v[j].c[i];
    }
    return m;
}

std::vector<std::vector<Elem>> multiplication_matrix(const ExtElem& a) {
    const ExtField& F = *a.field;
    std::vector<std::vector<Elem>> out(F.degree(), std::vector<Elem>(F.degree()));
    for (unsigned u = 0; u < F.degree(); ++u) {
        auto col = F.mul(a, F.basis(u));
        for (unsigned t = 0; t < F.degree(); ++t) out[t][u] = col.c[t];
    }
    return out;
}

int vector_rank(const std::vector<ExtElem>& v) {
    if (v.empty()) return 0;
    const Field& f = v[0].field->base();
    auto a = expand(v);
    const std::size_t rows = a.size(), cols = v.size();
    int rank = 0;
    for (std::size_t col = 0; col < cols && std::size_t(rank) < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        Elem inv = f.inv(a[rank][col]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][col] == 0) continue;
            Elem t = f.mul(a[r][col], inv);
            for (std::size_t c = col; c < cols; ++c) a[r][c] = f.sub(a[r][c], f.mul(t, a[rank][c]));
        }
        ++rank;
    }
    return rank;
}

LinearizedPoly::LinearizedPoly(std::vector<ExtElem> coeffs) : a_(std::move(coeffs)) {
    while (!a_.empty() && a_.back().field->is_zero(a_.back())) a_.pop_back();
}

ExtElem LinearizedPoly::eval(const ExtElem& y) const {
    const ExtField& F = *y.field;
    ExtElem acc = F.zero();
    ExtElem yp = y;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (i) yp = F.frobenius(yp);
        acc = F.add(acc, F.mul(a_[i], yp));
    }
    return acc;
}

ExtElem linpoly_eval(const LinearizedPoly& f, const ExtElem& y) { return f.eval(y); }

}  // namespace bfr::gf
