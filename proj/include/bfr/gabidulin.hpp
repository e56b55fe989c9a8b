#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "bfr/gf.hpp"
#include "bfr/matrix.hpp"

namespace bfr::codes {

// [N, K, D = N-K+1] Gabidulin code over GF(q^m), m >= N.
// Message (f_0..f_{K-1}) defines f(y) = sum f_i y^{q^i}; codeword c_j = f(g_j).
class GabidulinCode {
public:
    // Points g_j = x^j over GF(256)^m with m = max(N, m).
    GabidulinCode(int N, int K, unsigned m = 0);
    GabidulinCode(int N, int K, const gf::FieldSpec& ext, std::vector<gf::ExtElem> points);

    int N() const { return N_; }
    int K() const { return K_; }
    int D() const { return N_ - K_ + 1; }
    const gf::ExtField& field() const { return *F_; }
    const std::vector<gf::ExtElem>& points() const { return g_; }

    std::vector<gf::ExtElem> encode(const std::vector<gf::ExtElem>& message) const;

    // Point induced by the base-field combination sum coeffs[j] c_j:
    // by linearity it is f(sum coeffs[j] g_j).
    gf::ExtElem combined_point(const std::vector<gf::Elem>& coeffs) const;

    // Erasure decoding from (point, value) pairs with value = f(point).
    // Throws RankErasure when the points span fewer than K dimensions and
    // CorruptionError when surplus values disagree with the decoded message.
    std::vector<gf::ExtElem> decode_points(const std::vector<std::pair<gf::ExtElem, gf::ExtElem>>& evals) const;
    std::vector<gf::ExtElem> decode_erasures(const std::map<int, gf::ExtElem>& available) const;

    // Indices of a maximal independent prefix-greedy subset of `pts`, at most K.
    std::vector<int> independent_subset(const std::vector<gf::ExtElem>& pts) const;

    // Inverse of the K x K matrix A[i][s] = h_s^{q^i} for independent h_s;
    // message = values * inverse.
    ExtMatrix moore_inverse(const std::vector<gf::ExtElem>& pts) const;

private:
    int N_ = 0, K_ = 0;
    std::shared_ptr<const gf::ExtField> F_;
    std::vector<gf::ExtElem> g_;
};

}  // namespace bfr::codes
