#pragma once

#include <cstdint>
#include <type_traits>
#include <vector>

namespace bfr {

std::uint64_t binom(int n, int k);

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order.
// Stops early when fn returns false.
template <class Fn>
void for_each_combination(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = i;
    while (true) {
        if constexpr (std::is_same_v<decltype(fn(s)), bool>) {
            if (!fn(s)) return;
        } else {
            fn(s);
        }
        int i = k - 1;
        while (i >= 0 && s[i] == n - k + i) --i;
        if (i < 0) return;
        ++s[i];
        for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
}

// All k-subsets of {0..n-1}, lexicographic.
std::vector<std::vector<int>> combinations(int n, int k);

}  // namespace bfr
