#pragma once

#include <affdual/isometry.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>

namespace affdual {

class ResourceCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GeneratorKind { reflection, translation, factor_translation, permutation };

struct Generator {
    int element = 0;
    int weight = 1;  // integer-scaled
    std::string name;
    GeneratorKind kind = GeneratorKind::reflection;
};

// A group with a finite weighted generating set and a distinguished top
// element. Elements are interned as dense integer ids; id 0 is the identity.
class MarkedGroup {
public:
    virtual ~MarkedGroup() = default;

    virtual int mul(int a, int b) = 0;
    virtual int inv(int a) = 0;
    // Lower bound for the weighted length; exact when length_exact().
    virtual int length_bound(int a) = 0;
    virtual bool length_exact() const = 0;
    virtual std::string describe(int a) const = 0;
    virtual std::size_t size() const = 0;

    int identity() const { return 0; }
    int top() const { return top_; }
    int scale() const { return scale_; }
    const std::vector<Generator>& generators() const { return gens_; }

    int generator_index(int element) const {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].element == element) return static_cast<int>(i);
        return -1;
    }

protected:
    int top_ = 0;
    int scale_ = 1;
    std::vector<Generator> gens_;
};

namespace detail {

struct PairHash {
    std::size_t operator()(std::uint64_t k) const { return std::hash<std::uint64_t>{}(k * 0x9E3779B97F4A7C15ull); }
};

inline std::uint64_t pair_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace detail

enum class LengthMode {
    reflection,  // exact reflection length in L, weight 1 per reflection
    weighted,    // k·rank(A − I) + 2 if hyperbolic; admissible for weights {k, 2k, 2}
};

// Subgroup of Isom(V) generated by a finite set of isometries.
class EuclideanGroup : public MarkedGroup {
public:
    struct Spec {
        std::size_t ambient = 0;
        EssentialSpace ess;
        Isometry top;
        std::vector<std::pair<Isometry, Generator>> generators;  // Generator::element ignored
        int scale = 1;
        LengthMode mode = LengthMode::reflection;
    };

    explicit EuclideanGroup(Spec spec) : ess_(std::move(spec.ess)), mode_(spec.mode) {
        intern(Isometry::identity(spec.ambient));
        scale_ = spec.scale;
        top_ = intern(std::move(spec.top));
        for (auto& [iso, g] : spec.generators) {
            g.element = intern(std::move(iso));
            gens_.push_back(std::move(g));
        }
    }

    int intern(Isometry u) {
        auto it = ids_.find(u);
        if (it != ids_.end()) return it->second;
        const int id = static_cast<int>(elems_.size());
        ids_.emplace(u, id);
        elems_.push_back(std::move(u));
        bound_.push_back(-1);
        inv_.push_back(-1);
        return id;
    }

    std::optional<int> find(const Isometry& u) const {
        auto it = ids_.find(u);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    const Isometry& iso(int id) const { return elems_[static_cast<std::size_t>(id)]; }
    const EssentialSpace& ess() const { return ess_; }

    int mul(int a, int b) override {
        const auto key = detail::pair_key(a, b);
        auto it = mul_.find(key);
        if (it != mul_.end()) return it->second;
        const int c = intern(iso(a) * iso(b));
        mul_.emplace(key, c);
        return c;
    }

    int inv(int a) override {
        auto& slot = inv_[static_cast<std::size_t>(a)];
        if (slot < 0) {
            const int b = intern(iso(a).inverse());
            inv_[static_cast<std::size_t>(a)] = b;
            inv_[static_cast<std::size_t>(b)] = a;
            return b;
        }
        return slot;
    }

    int length_bound(int a) override {
        auto& slot = bound_[static_cast<std::size_t>(a)];
        if (slot >= 0) return slot;
        const Isometry& u = iso(a);
        auto rr = row_reduce(displacement_matrix(u), -u.translation_part());
        const int r = static_cast<int>(rr.pivots.size());
        int v = 0;
        if (mode_ == LengthMode::reflection)
            v = rr.consistent ? r : r + 2;
        else
            v = scale_ * r + (rr.consistent ? 0 : 2);
        bound_[static_cast<std::size_t>(a)] = v;
        return v;
    }

    bool length_exact() const override { return false; }
    std::string describe(int a) const override { return iso(a).str(); }
    std::size_t size() const override { return elems_.size(); }

    bool elliptic(int a) const { return is_elliptic(iso(a)); }

private:
    EssentialSpace ess_;
    LengthMode mode_;
    std::unordered_map<Isometry, int, IsometryHash> ids_;
    std::vector<Isometry> elems_;
    std::vector<int> bound_;
    std::vector<int> inv_;
    std::unordered_map<std::uint64_t, int, detail::PairHash> mul_;
};

using Permutation = std::vector<int>;  // p[i] = image of i, 0-based

// Symmetric group S_n with all transpositions (dual) or adjacent ones
// (standard); lengths by breadth-first search over the Cayley graph.
class PermutationGroup : public MarkedGroup {
public:
    PermutationGroup(int n, bool dual) : n_(n), dual_(dual) {
        if (n < 2 || n > 8) throw std::invalid_argument("PermutationGroup: need 2 <= n <= 8");
        Permutation id(static_cast<std::size_t>(n));
        std::iota(id.begin(), id.end(), 0);
        intern(id);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (!dual && j != i + 1) continue;
                Permutation t = id;
                std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]);
                Generator g;
                g.element = intern(t);
                g.name = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
                g.kind = GeneratorKind::permutation;
                gens_.push_back(g);
            }
        Permutation topp(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            topp[static_cast<std::size_t>(i)] = dual ? (i + 1) % n : n - 1 - i;
        top_ = intern(topp);
        bfs();
    }

    int n() const { return n_; }
    bool dual() const { return dual_; }
    const Permutation& perm(int id) const { return elems_[static_cast<std::size_t>(id)]; }

    std::optional<int> find(const Permutation& p) const {
        auto it = ids_.find(key(p));
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    // (ab)(i) = a(b(i))
    int mul(int a, int b) override {
        const auto& pa = perm(a);
        const auto& pb = perm(b);
        Permutation c(pa.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = pa[static_cast<std::size_t>(pb[i])];
        return intern(c);
    }

    int inv(int a) override {
        const auto& pa = perm(a);
        Permutation c(pa.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[static_cast<std::size_t>(pa[i])] = static_cast<int>(i);
        return intern(c);
    }

    int length_bound(int a) override { return dist_[static_cast<std::size_t>(a)]; }
    bool length_exact() const override { return true; }
    std::size_t size() const override { return elems_.size(); }

    std::string describe(int a) const override {
        // cycle notation, 1-based
        const auto& p = perm(a);
        std::vector<bool> seen(p.size(), false);
        std::string s;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (seen[i] || p[i] == static_cast<int>(i)) continue;
            s += "(";
            for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
                seen[j] = true;
                if (s.back() != '(') s += ",";
                s += std::to_string(j + 1);
            }
            s += ")";
        }
        return s.empty() ? "()" : s;
    }

private:
    static std::uint64_t key(const Permutation& p) {
        std::uint64_t k = 0;
        for (int x : p) k = k * 16 + static_cast<std::uint64_t>(x);
        return k;
    }

    int intern(const Permutation& p) {
        auto [it, fresh] = ids_.emplace(key(p), static_cast<int>(elems_.size()));
        if (fresh) elems_.push_back(p);
        return it->second;
    }

    void bfs() {
        // close the group under the generators, then distances from the identity
        for (std::size_t i = 0; i < elems_.size(); ++i)
            for (const auto& g : gens_) mul(static_cast<int>(i), g.element);
        dist_.assign(elems_.size(), -1);
        dist_[0] = 0;
        std::deque<int> queue{0};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (const auto& g : gens_) {
                int v = mul(u, g.element);
                if (dist_[static_cast<std::size_t>(v)] < 0) {
                    dist_[static_cast<std::size_t>(v)] = dist_[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(v);
                }
            }
        }
    }

    int n_;
    bool dual_;
    std::unordered_map<std::uint64_t, int> ids_;
    std::vector<Permutation> elems_;
    std::vector<int> dist_;
};

}  // namespace affdual
