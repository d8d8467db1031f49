#pragma once

#include <affdual/bits.hpp>
#include <affdual/marked_group.hpp>

#include <map>

namespace affdual {

struct Cover {
    int to = 0;   // node index
    int gen = 0;  // index into the group's generators; label = u⁻¹v
};

// Windowed interval [1, top]: nodes are prefixes of minimal-weight
// factorizations of the top element into the group's generators.
struct IntervalPoset {
    std::vector<int> element;  // group id per node; node 0 is the identity
    std::vector<int> rank;
    std::vector<std::vector<Cover>> up, down;
    std::unordered_map<int, int> node_of;
    int top_node = 0;
    int total = 0;
    int window = 0;
    std::vector<bool> certified;
    std::vector<Bits> below;  // down-set, inclusive
    std::vector<Bits> above;  // up-set, inclusive

    std::size_t size() const { return element.size(); }

    std::optional<int> node(int gid) const {
        auto it = node_of.find(gid);
        if (it == node_of.end()) return std::nullopt;
        return it->second;
    }

    bool leq(int a, int b) const { return below[static_cast<std::size_t>(b)].test(static_cast<std::size_t>(a)); }

    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto& u : up) e += u.size();
        return e;
    }
};

struct EnumerationLimits {
    std::size_t max_nodes = 2'000'000;
    std::size_t max_search_states = 20'000'000;
};

// Decides whether an element has a factorization of exact weight r into the
// group's generators, memoized on (element, r).
class Completer {
public:
    Completer(MarkedGroup& g, std::size_t limit) : g_(g), limit_(limit) {}

    bool operator()(int x, int r) {
        if (r < 0) return false;
        if (r == 0) return x == g_.identity();
        if (g_.length_bound(x) > r) return false;
        const auto key = detail::pair_key(x, r);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (memo_.size() > limit_) throw ResourceCapExceeded("factorization search state limit exceeded");
        bool ok = false;
        for (const auto& s : g_.generators()) {
            if (s.weight > r) continue;
            const int z = g_.mul(g_.inv(s.element), x);
            if (g_.length_bound(z) > r - s.weight) continue;
            if ((*this)(z, r - s.weight)) {
                ok = true;
                break;
            }
        }
        memo_.emplace(key, ok);
        return ok;
    }

    std::size_t states() const { return memo_.size(); }

private:
    MarkedGroup& g_;
    std::size_t limit_;
    std::unordered_map<std::uint64_t, bool, detail::PairHash> memo_;
};

inline void compute_order(IntervalPoset& p) {
    const auto n = p.size();
    std::vector<int> by_rank(n);
    std::iota(by_rank.begin(), by_rank.end(), 0);
    std::stable_sort(by_rank.begin(), by_rank.end(), [&](int a, int b) { return p.rank[static_cast<std::size_t>(a)] < p.rank[static_cast<std::size_t>(b)]; });
    p.below.assign(n, Bits(n));
    p.above.assign(n, Bits(n));
    for (int v : by_rank) {
        auto& b = p.below[static_cast<std::size_t>(v)];
        b.set(static_cast<std::size_t>(v));
        for (const auto& c : p.down[static_cast<std::size_t>(v)]) b |= p.below[static_cast<std::size_t>(c.to)];
    }
    for (auto it = by_rank.rbegin(); it != by_rank.rend(); ++it) {
        auto& a = p.above[static_cast<std::size_t>(*it)];
        a.set(static_cast<std::size_t>(*it));
        for (const auto& c : p.up[static_cast<std::size_t>(*it)]) a |= p.above[static_cast<std::size_t>(c.to)];
    }
}

// Minimal weight of the top element (iterative deepening from the bound).
inline int top_weight(MarkedGroup& g, Completer& can) {
    const int lb = g.length_bound(g.top());
    for (int r = lb; r <= lb + 8 * g.scale(); ++r)
        if (can(g.top(), r)) return r;
    throw std::logic_error("top_weight: top element not reached by the generators");
}

inline IntervalPoset enumerate_interval(MarkedGroup& g, EnumerationLimits limits = {}) {
    Completer can(g, limits.max_search_states);
    IntervalPoset p;
    p.total = top_weight(g, can);
    auto add = [&](int gid, int rank) {
        auto [it, fresh] = p.node_of.emplace(gid, static_cast<int>(p.element.size()));
        if (fresh) {
            p.element.push_back(gid);
            p.rank.push_back(rank);
            p.up.emplace_back();
            p.down.emplace_back();
            if (p.element.size() > limits.max_nodes) throw ResourceCapExceeded("interval node limit exceeded");
        } else if (p.rank[static_cast<std::size_t>(it->second)] != rank) {
            throw std::logic_error("enumerate_interval: inconsistent rank");
        }
        return it->second;
    };
    add(g.identity(), 0);
    std::map<int, std::vector<int>> pending{{0, {0}}};
    while (!pending.empty()) {
        auto [c, nodes] = *pending.begin();
        pending.erase(pending.begin());
        for (int u : nodes) {
            const int ug = p.element[static_cast<std::size_t>(u)];
            for (std::size_t i = 0; i < g.generators().size(); ++i) {
                const auto& s = g.generators()[i];
                const int rem = p.total - c - s.weight;
                if (rem < 0) continue;
                const int x = g.mul(ug, s.element);
                const int y = g.mul(g.inv(x), g.top());
                if (!can(y, rem)) continue;
                const bool fresh = !p.node_of.count(x);
                const int v = add(x, c + s.weight);
                p.up[static_cast<std::size_t>(u)].push_back({v, static_cast<int>(i)});
                p.down[static_cast<std::size_t>(v)].push_back({u, static_cast<int>(i)});
                if (fresh && rem > 0) pending[c + s.weight].push_back(v);
            }
        }
    }
    auto top = p.node(g.top());
    if (!top) throw std::logic_error("enumerate_interval: top not reached");
    p.top_node = *top;
    p.certified.assign(p.size(), false);
    compute_order(p);
    return p;
}

// Number of maximal chains from a to b (a ≤ b), by dynamic programming.
inline BigInt count_chains(const IntervalPoset& p, int a, int b) {
    std::vector<int> nodes = (p.above[static_cast<std::size_t>(a)] & p.below[static_cast<std::size_t>(b)]).members();
    std::sort(nodes.begin(), nodes.end(), [&](int x, int y) { return p.rank[static_cast<std::size_t>(x)] < p.rank[static_cast<std::size_t>(y)]; });
    std::unordered_map<int, BigInt> ways;
    ways[a] = 1;
    for (int v : nodes) {
        if (v == a) continue;
        BigInt s = 0;
        for (const auto& c : p.down[static_cast<std::size_t>(v)])
            if (auto it = ways.find(c.to); it != ways.end()) s += it->second;
        ways[v] = s;
    }
    return ways[b];
}

// All maximal chains from a to b as label sequences (generator indices).
inline std::vector<std::vector<int>> chain_labels(const IntervalPoset& p, int a, int b, std::size_t cap = 1'000'000) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const Bits& ok = p.below[static_cast<std::size_t>(b)];
    std::function<void(int)> rec = [&](int u) {
        if (u == b) {
            out.push_back(cur);
            if (out.size() > cap) throw ResourceCapExceeded("chain enumeration cap exceeded");
            return;
        }
        for (const auto& c : p.up[static_cast<std::size_t>(u)]) {
            if (!ok.test(static_cast<std::size_t>(c.to))) continue;
            cur.push_back(c.gen);
            rec(c.to);
            cur.pop_back();
        }
    };
    rec(a);
    return out;
}

// Every finite interval is exact: mark all nodes certified.
inline void certify_all(IntervalPoset& p) { p.certified.assign(p.size(), true); }

}  // namespace affdual
