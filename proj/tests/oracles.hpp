#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

namespace oracle {

using Perm = std::vector<int>;

inline int inversions(const Perm& w) {
    int c = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i + 1; j < w.size(); ++j) c += w[i] > w[j];
    }
    return c;
}

inline std::vector<Perm> all_perms(int N) {
    Perm w(static_cast<std::size_t>(N));
    std::iota(w.begin(), w.end(), 1);
    std::vector<Perm> out;
    do out.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

// Bruhat upper sets by closure under u -> u t (swap of two positions) with
// length going up by exactly one.
inline std::map<Perm, std::set<Perm>> bruhat_upper_sets(int N) {
    std::map<Perm, std::set<Perm>> up;
    for (const auto& u : all_perms(N)) {
        std::set<Perm> seen{u};
        std::queue<Perm> q;
        q.push(u);
        while (!q.empty()) {
            Perm x = q.front();
            q.pop();
            const int lx = inversions(x);
            for (int i = 0; i < N; ++i) {
                for (int j = i + 1; j < N; ++j) {
                    Perm y = x;
                    std::swap(y[i], y[j]);
                    if (inversions(y) == lx + 1 && seen.insert(y).second) q.push(y);
                }
            }
        }
        up.emplace(u, std::move(seen));
    }
    return up;
}

// Shuffles straight from the definition: positions of 1..n increase, and so do
// positions of n+1..n+m.
inline bool is_shuffle(const Perm& w, int n) {
    std::vector<int> pos(w.size() + 1);
    for (std::size_t i = 0; i < w.size(); ++i) pos[static_cast<std::size_t>(w[i])] = static_cast<int>(i);
    for (std::size_t v = 1; v < w.size(); ++v) {
        if (static_cast<int>(v) == n) continue;
        if (pos[v] > pos[v + 1]) return false;
    }
    return true;
}

}  // namespace oracle
