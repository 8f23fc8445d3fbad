#pragma once

// Set partitions of {0..n-1} via restricted growth strings.

#include <functional>
#include <set>
#include <vector>

namespace fatsurf::testing {

inline void for_each_partition(int n,
                               const std::function<void(const std::vector<std::set<int>>&)>& fn) {
    std::vector<int> rgs(n, 0);
    auto emit = [&] {
        int blocks = 0;
        for (int x : rgs) blocks = std::max(blocks, x + 1);
        std::vector<std::set<int>> parts(blocks);
        for (int i = 0; i < n; ++i) parts[rgs[i]].insert(i);
        fn(parts);
    };
    if (n == 0) return;
    while (true) {
        emit();
        int i = n - 1;
        for (; i > 0; --i) {
            int maxprev = 0;
            for (int j = 0; j < i; ++j) maxprev = std::max(maxprev, rgs[j]);
            if (rgs[i] <= maxprev) break;
        }
        if (i == 0) return;
        rgs[i]++;
        for (int j = i + 1; j < n; ++j) rgs[j] = 0;
    }
}

}  // namespace fatsurf::testing
