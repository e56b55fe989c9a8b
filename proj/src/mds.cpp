#include "bfr/mds.hpp"

#include <algorithm>
#include <random>

#include "bfr/combinatorics.hpp"

namespace bfr::codes {

using gf::Elem;

gf::FieldSpec mds_field_for(int n) {
    if (n <= 256) return gf::FieldSpec::binary(8);
    if (n <= 65536) return gf::FieldSpec::binary(16);
    throw ParamError("n <= 65536", "code length " + std::to_string(n) + " too large");
}

MdsCode::MdsCode(int n, int k) : MdsCode(n, k, mds_field_for(n)) {}

MdsCode::MdsCode(int n, int k, const gf::FieldSpec& spec) : n_(n), k_(k), systematic_(true) {
    if (k < 1 || n < k) throw ParamError("1 <= k <= n", "n=" + std::to_string(n) + " k=" + std::to_string(k));
    field_ = gf::field_for(spec);
    if (std::uint64_t(n) > field_->size())
        throw ParamError("n <= field size", "n=" + std::to_string(n) + " over " + spec.to_string());
    BaseMatrix v(field_.get(), k, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < k; ++i) v(i, j) = field_->pow(Elem(j), i);
    std::vector<int> first(k);
    for (int i = 0; i < k; ++i) first[i] = i;
    auto inv = v.select_cols(first).inverse();
    g_ = *inv * v;
}

MdsCode::MdsCode(BaseMatrix generator, bool systematic)
    : n_(int(generator.cols())), k_(int(generator.rows())), systematic_(systematic),
      field_(gf::field_for(generator.field().spec())), g_(std::move(generator)) {}

std::vector<Elem> MdsCode::encode(const std::vector<Elem>& data) const {
    if (int(data.size()) != k_)
        throw PreconditionError("mds encode: expected " + std::to_string(k_) + " symbols, got " +
                                std::to_string(data.size()));
    return g_.left_mul(data);
}

BaseMatrix MdsCode::decoder(const std::vector<int>& positions) const {
    if (int(positions.size()) < k_) throw UnrecoverableErasure(int(positions.size()), k_);
    auto inv = g_.select_cols(positions).inverse();
    if (!inv) throw UnrecoverableErasure(int(g_.select_cols(positions).rank()), k_);
    return *inv;
}

std::vector<Elem> MdsCode::decode(const std::map<int, Elem>& available) const {
    if (int(available.size()) < k_) throw UnrecoverableErasure(int(available.size()), k_);
    std::vector<int> pos;
    std::vector<Elem> y;
    for (auto [p, v] : available) {
        if (p < 0 || p >= n_) throw PreconditionError("mds decode: position out of range");
        if (int(pos.size()) < k_) {
            pos.push_back(p);
            y.push_back(v);
        }
    }
    auto data = decoder(pos).left_mul(y);
    auto cw = encode(data);
    for (auto [p, v] : available)
        if (cw[p] != v) throw CorruptionError("mds decode: coordinate " + std::to_string(p) + " inconsistent");
    return data;
}

MdsReport verify_mds(const MdsCode& code, std::uint64_t samples, std::uint64_t seed) {
    MdsReport rep;
    auto check = [&](const std::vector<int>& s) {
        ++rep.checked;
        if (code.generator().select_cols(s).rank() < std::size_t(code.k())) {
            rep.ok = false;
            rep.bad_subset = s;
            return false;
        }
        return true;
    };
    if (code.n() <= 12) {
        for_each_combination(code.n(), code.k(), check);
        return rep;
    }
    rep.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::vector<int> idx(code.n());
    for (std::uint64_t t = 0; t < samples && rep.ok; ++t) {
        for (int i = 0; i < code.n(); ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<int> s(idx.begin(), idx.begin() + code.k());
        std::sort(s.begin(), s.end());
        check(s);
    }
    return rep;
}

}  // namespace bfr::codes
