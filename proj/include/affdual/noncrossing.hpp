#pragma once

#include <affdual/interval.hpp>

#include <set>

namespace affdual {

using SetPartition = std::vector<std::vector<int>>;  // sorted blocks, sorted by least element

namespace detail {

// Points i ↦ (i, i²) lie in convex position in the order of i.
inline long orient(int a, int b, int c) {
    const long ax = a, ay = long(a) * a, bx = b, by = long(b) * b, cx = c, cy = long(c) * c;
    const long d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return (d > 0) - (d < 0);
}

inline bool segments_cross(int a, int b, int c, int d) {
    if (a == c || a == d || b == c || b == d) return false;
    return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

inline void all_partitions(int n, int i, SetPartition& cur, std::vector<SetPartition>& out) {
    if (i == n) {
        out.push_back(cur);
        return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
        cur[b].push_back(i);
        all_partitions(n, i + 1, cur, out);
        cur[b].pop_back();
    }
    cur.push_back({i});
    all_partitions(n, i + 1, cur, out);
    cur.pop_back();
}

}  // namespace detail

// Convex hulls of the blocks, drawn on points in convex position, are
// pairwise disjoint.
inline bool is_noncrossing(const SetPartition& p) {
    for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y = x + 1; y < p.size(); ++y)
            for (std::size_t i = 0; i < p[x].size(); ++i)
                for (std::size_t j = i + 1; j < p[x].size(); ++j)
                    for (std::size_t k = 0; k < p[y].size(); ++k)
                        for (std::size_t l = k + 1; l < p[y].size(); ++l)
                            if (detail::segments_cross(p[x][i], p[x][j], p[y][k], p[y][l])) return false;
    return true;
}

inline std::vector<SetPartition> noncrossing_partitions(int n) {
    std::vector<SetPartition> all, out;
    SetPartition cur;
    detail::all_partitions(n, 0, cur, all);
    for (auto& p : all)
        if (is_noncrossing(p)) {
            std::sort(p.begin(), p.end());
            out.push_back(std::move(p));
        }
    return out;
}

// Cycles of a permutation as a set partition.
inline SetPartition cycle_partition(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    SetPartition out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> block;
        for (auto j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = true;
            block.push_back(static_cast<int>(j));
        }
        std::sort(block.begin(), block.end());
        out.push_back(std::move(block));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Each cycle visits its points in increasing cyclic order.
inline bool cycles_increasing(const Permutation& p) {
    for (const auto& b : cycle_partition(p))
        for (std::size_t i = 0; i < b.size(); ++i)
            if (p[static_cast<std::size_t>(b[i])] != b[(i + 1) % b.size()]) return false;
    return true;
}

struct NoncrossingComparison {
    int n = 0;
    std::size_t interval_size = 0;
    std::size_t oracle_size = 0;
    bool bijective = false;  // cycle map [1,δ] → NC(n) is a bijection
    bool increasing = false;
};

inline NoncrossingComparison compare_noncrossing(int n) {
    NoncrossingComparison c;
    c.n = n;
    PermutationGroup g(n, true);
    auto p = enumerate_interval(g);
    c.interval_size = p.size();
    auto nc = noncrossing_partitions(n);
    c.oracle_size = nc.size();
    std::set<SetPartition> oracle(nc.begin(), nc.end()), image;
    c.increasing = true;
    for (int id : p.element) {
        const auto& perm = g.perm(id);
        image.insert(cycle_partition(perm));
        c.increasing = c.increasing && cycles_increasing(perm);
    }
    c.bijective = image.size() == p.size() && image == oracle;
    return c;
}

}  // namespace affdual
