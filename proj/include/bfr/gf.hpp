#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bfr/errors.hpp"

namespace bfr::gf {

using Elem = std::uint32_t;

enum class FieldKind : std::uint8_t { prime = 0, binary = 1, tower = 2 };

// Describes a field precisely enough to rebuild it bit-for-bit.
// prime:  GF(p), w = 1.
// binary: GF(2^w) with modulus `poly` (bit i = coefficient of x^i, x^w included).
// tower:  GF(q^m) over the base described by (p, w, poly); `ext_modulus` is the
//         monic degree-m modulus, lowest coefficient first.
struct FieldSpec {
    FieldKind kind = FieldKind::binary;
    std::uint32_t p = 2;
    unsigned w = 8;
    std::uint32_t poly = 0x11d;
    unsigned m = 1;
    std::vector<Elem> ext_modulus;

    static FieldSpec prime(std::uint32_t p);
    static FieldSpec binary(unsigned w);
    static FieldSpec binary(unsigned w, std::uint32_t poly);
    // Default modulus: the first irreducible of x^m + b, x^m + x^i + b,
    // x^m + x^j + x^i + b (exponents, then b ascending), else base-q counting order.
    static FieldSpec tower(const FieldSpec& base, unsigned m);
    static FieldSpec tower(const FieldSpec& base, unsigned m, std::vector<Elem> modulus);

    FieldSpec base() const;
    std::string to_string() const;
    bool operator==(const FieldSpec&) const = default;
};

// Published default moduli for GF(2^w), 1 <= w <= 16.
std::uint32_t default_binary_modulus(unsigned w);

bool is_prime(std::uint64_t n);

// Prime field or GF(2^w). Elements are integers in [0, q).
class Field {
public:
    explicit Field(const FieldSpec& spec);

    const FieldSpec& spec() const { return spec_; }
    std::uint32_t size() const { return q_; }
    std::uint32_t characteristic() const { return spec_.p; }
    bool binary() const { return spec_.kind == FieldKind::binary; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    bool contains(Elem a) const { return a < q_; }

    Elem add(Elem a, Elem b) const { return binary() ? (a ^ b) : (a + b) % q_; }
    Elem sub(Elem a, Elem b) const { return binary() ? (a ^ b) : (a + q_ - b) % q_; }
    Elem neg(Elem a) const { return binary() ? a : (a == 0 ? 0 : q_ - a); }
    Elem mul(Elem a, Elem b) const {
        if (!mul_table_.empty()) return mul_table_[(a << spec_.w) | b];
        if (binary()) {
            if (a == 0 || b == 0) return 0;
            return exp_[log_[a] + log_[b]];
        }
        return static_cast<Elem>((std::uint64_t(a) * b) % q_);
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;
    bool eq(Elem a, Elem b) const { return a == b; }

    // Generator of the multiplicative group, smallest by integer value.
    Elem primitive() const { return prim_; }

    // Row `c` of the full multiplication table (GF(2^8) only; null otherwise).
    const std::uint8_t* mul_row(Elem c) const {
        return byte_table_.empty() ? nullptr : byte_table_.data() + (std::size_t(c) << 8);
    }

private:
    FieldSpec spec_;
    std::uint32_t q_ = 0;
    Elem prim_ = 1;
    std::vector<Elem> exp_, log_;
    std::vector<Elem> mul_table_;
    std::vector<std::uint8_t> byte_table_;
};

// Shared immutable instance per spec.
std::shared_ptr<const Field> field_for(const FieldSpec& spec);

// Checked value type for callers that want mismatch detection.
struct FieldElem {
    const Field* field = nullptr;
    Elem v = 0;
};
FieldElem operator+(FieldElem a, FieldElem b);
FieldElem operator-(FieldElem a, FieldElem b);
FieldElem operator*(FieldElem a, FieldElem b);
FieldElem operator/(FieldElem a, FieldElem b);
FieldElem inverse(FieldElem a);
bool operator==(FieldElem a, FieldElem b);

class ExtField;

// Element of GF(q^m) in the polynomial basis 1, x, ..., x^{m-1}.
struct ExtElem {
    const ExtField* field = nullptr;
    std::vector<Elem> c;
};

// Polynomials over a base field, lowest coefficient first, no trailing zeros.
using Poly = std::vector<Elem>;
void poly_trim(Poly& a);
Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& mod);
Poly poly_mod(const Field& f, Poly a, const Poly& mod);
Poly poly_gcd(const Field& f, Poly a, Poly b);
bool poly_irreducible(const Field& f, const Poly& monic);

class ExtField {
public:
    explicit ExtField(const FieldSpec& spec);

    const FieldSpec& spec() const { return spec_; }
    const Field& base() const { return *base_; }
    std::shared_ptr<const Field> base_ptr() const { return base_; }
    unsigned degree() const { return spec_.m; }
    std::uint32_t base_size() const { return base_->size(); }

    ExtElem zero() const;
    ExtElem one() const;
    ExtElem basis(unsigned i) const;
    ExtElem from_vector(const std::vector<Elem>& v) const;
    ExtElem scalar(Elem s) const;
    std::vector<Elem> to_vector(const ExtElem& a) const;

    bool is_zero(const ExtElem& a) const;
    bool eq(const ExtElem& a, const ExtElem& b) const;
    ExtElem add(const ExtElem& a, const ExtElem& b) const;
    ExtElem sub(const ExtElem& a, const ExtElem& b) const;
    ExtElem mul(const ExtElem& a, const ExtElem& b) const;
    ExtElem scale(const ExtElem& a, Elem s) const;
    ExtElem inv(const ExtElem& a) const;
    ExtElem div(const ExtElem& a, const ExtElem& b) const { return mul(a, inv(b)); }
    ExtElem pow(const ExtElem& a, std::uint64_t e) const;
    // y -> y^q
    ExtElem frobenius(const ExtElem& a) const;

private:
    void check(const ExtElem& a) const;

    FieldSpec spec_;
    std::shared_ptr<const Field> base_;
    Poly modulus_;
};

std::shared_ptr<const ExtField> ext_field_for(const FieldSpec& spec);

// Rank over the base field of the m x N expansion of v.
int vector_rank(const std::vector<ExtElem>& v);

// The m x N base-field matrix whose column j is the vector of v[j].
std::vector<std::vector<Elem>> expand(const std::vector<ExtElem>& v);

// m x m base-field matrix of y -> a*y in the polynomial basis: column u is the
// vector of a*x^u.
std::vector<std::vector<Elem>> multiplication_matrix(const ExtElem& a);

// f(y) = sum a_i y^{q^i}
class LinearizedPoly {
public:
    LinearizedPoly() = default;
    explicit LinearizedPoly(std::vector<ExtElem> coeffs);

    // -1 for the zero polynomial.
    int q_degree() const { return static_cast<int>(a_.size()) - 1; }
    const std::vector<ExtElem>& coeffs() const { return a_; }
    ExtElem eval(const ExtElem& y) const;

private:
    std::vector<ExtElem> a_;
};

ExtElem linpoly_eval(const LinearizedPoly& f, const ExtElem& y);

}  // namespace bfr::gf
