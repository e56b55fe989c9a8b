#include "bfr/combinatorics.hpp"

namespace bfr {

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
    return r;
}

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    for_each_combination(n, k, [&](const std::vector<int>& s) { out.push_back(s); });
    return out;
}

}  // namespace bfr
