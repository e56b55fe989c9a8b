#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "bfr/gf.hpp"
#include "bfr/matrix.hpp"

namespace bfr::codes {

// Smallest byte-aligned binary field that holds n distinct evaluation points.
gf::FieldSpec mds_field_for(int n);

// [n, k] MDS code. The generator is k x n; codeword = data * G.
class MdsCode {
public:
    // Vandermonde on points 0, 1, ..., n-1, made systematic.
    MdsCode(int n, int k);
    MdsCode(int n, int k, const gf::FieldSpec& spec);
    // Arbitrary generator; `systematic` means the first k columns are I.
    MdsCode(BaseMatrix generator, bool systematic);

    int n() const { return n_; }
    int k() const { return k_; }
    bool systematic() const { return systematic_; }
    const gf::Field& field() const { return *field_; }
    const BaseMatrix& generator() const { return g_; }

    std::vector<gf::Elem> encode(const std::vector<gf::Elem>& data) const;
    // Needs >= k coordinates; extra coordinates are checked for consistency.
    std::vector<gf::Elem> decode(const std::map<int, gf::Elem>& available) const;

    // Coefficients expressing each data symbol from the given k positions:
    // data = y[positions] * D. Throws UnrecoverableErasure when singular.
    BaseMatrix decoder(const std::vector<int>& positions) const;

private:
    int n_ = 0, k_ = 0;
    bool systematic_ = false;
    std::shared_ptr<const gf::Field> field_;
    BaseMatrix g_;
};

struct MdsReport {
    bool ok = true;
    bool exhaustive = true;
    std::uint64_t checked = 0;
    std::vector<int> bad_subset;  // first singular k-subset found
};

// Every k x k column submatrix invertible: exhaustive for n <= 12, otherwise
// `samples` random subsets drawn with `seed`.
MdsReport verify_mds(const MdsCode& code, std::uint64_t samples = 2000, std::uint64_t seed = 1);

}  // namespace bfr::codes
