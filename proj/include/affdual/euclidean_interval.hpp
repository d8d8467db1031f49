#pragma once

#include <affdual/lattice.hpp>

#include <map>
#include <memory>
#include <unordered_set>

namespace affdual {

// [1,w]^W in window m with its generators and margin certificates.
struct EuclideanInterval {
    const AffineInstance* inst = nullptr;
    int m = 0;
    std::vector<ReflectionRecord> reflections;
    std::unique_ptr<EuclideanGroup> group;
    IntervalPoset poset;

    const Isometry& iso(int node) const { return group->iso(poset.element[static_cast<std::size_t>(node)]); }
    const Isometry& w() const { return group->iso(group->top()); }
    const CoxeterSystem& system() const { return inst->system(); }
};

inline EuclideanInterval make_interval(const AffineInstance& inst, int m, EnumerationLimits limits = {}) {
    EuclideanInterval e;
    e.inst = &inst;
    e.m = m;
    e.reflections = inst.reflections(m);
    e.group = std::make_unique<EuclideanGroup>(inst.w_group(e.reflections));
    e.poset = enumerate_interval(*e.group, limits);
    e.poset.window = m;
    certify_margin(e.poset, *e.group, inst.system());
    return e;
}

enum class RowClass { bottom, middle, top };

inline const char* to_string(RowClass r) {
    switch (r) {
        case RowClass::bottom: return "bottom";
        case RowClass::middle: return "middle";
        case RowClass::top: return "top";
    }
    return "?";
}

inline bool is_horizontal(const Isometry& u, const Vector& mu) { return AffineInstance::horizontal_direction(u, mu); }
inline bool is_vertical(const Isometry& u, const Vector& mu) { return is_elliptic(u) && !is_horizontal(u, mu); }

// Row of u given its right complement v = u⁻¹w; nullopt if no case applies.
inline std::optional<RowClass> row_classify(const Isometry& u, const Isometry& w, const Vector& mu) {
    const Isometry v = u.inverse() * w;
    if (is_horizontal(u, mu) && !is_elliptic(v)) return RowClass::bottom;
    if (is_vertical(u, mu) && is_vertical(v, mu)) return RowClass::middle;
    if (!is_elliptic(u) && is_horizontal(v, mu)) return RowClass::top;
    return std::nullopt;
}

struct RowCensus {
    std::size_t bottom = 0, middle = 0, top = 0, unclassified = 0;
};

inline RowCensus row_census(const EuclideanInterval& e) {
    RowCensus c;
    const Vector& mu = e.inst->axis().mu();
    for (std::size_t v = 0; v < e.poset.size(); ++v) {
        auto r = row_classify(e.iso(static_cast<int>(v)), e.w(), mu);
        if (!r) ++c.unclassified;
        else if (*r == RowClass::bottom) ++c.bottom;
        else if (*r == RowClass::middle) ++c.middle;
        else ++c.top;
    }
    return c;
}

struct HHDecomposition {
    int u_prime = -1;  // node
    Isometry h;
    int h_length = 0;
};

struct HHReport {
    std::vector<HHDecomposition> candidates;
    bool unique = false;
    // multiplication map [1,u'] × [1,h] → [1,u] on in-window sets
    bool injective = false;
    std::size_t product_size = 0;
    std::size_t interval_size = 0;
    std::size_t interval_missed = 0;  // in-window elements of [1,u] not of the form a·b
    std::size_t products_outside = 0;  // a·b outside the window poset
    bool order_isomorphic = false;     // (a,b) ≤ (a',b') iff ab ≤ a'b'
};

inline std::vector<Isometry> window_reflections_below(const EuclideanInterval& e, int node) {
    std::vector<Isometry> out;
    for (int x : e.poset.below[static_cast<std::size_t>(node)].members())
        if (e.poset.rank[static_cast<std::size_t>(x)] == 1) out.push_back(e.iso(x));
    return out;
}

namespace detail {

inline bool commute(const Isometry& a, const Isometry& b) { return a * b == b * a; }

// The non-commuting graph on rs is connected.
inline bool noncommuting_connected(const std::vector<Isometry>& rs) {
    if (rs.empty()) return true;
    std::vector<bool> seen(rs.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        auto i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < rs.size(); ++j)
            if (!seen[j] && !commute(rs[i], rs[j])) {
                seen[j] = true;
                stack.push_back(j);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace detail

// u = u'h with u' hyperbolic and irreducible, h elliptic horizontal, lengths
// adding and the two reflection sets commuting. Reflections below u' are
// the in-window ones.
inline HHReport hyperbolic_horizontal_decompose(const EuclideanInterval& e, int u) {
    const auto& sys = e.system();
    const Vector& mu = e.inst->axis().mu();
    const Isometry& iu = e.iso(u);
    if (is_elliptic(iu)) throw std::invalid_argument("hyperbolic_horizontal_decompose: u is elliptic");
    HHReport rep;
    const int lu = reflection_length(iu, sys.ess());
    for (int up : e.poset.below[static_cast<std::size_t>(u)].members()) {
        const Isometry& iup = e.iso(up);
        if (is_elliptic(iup)) continue;
        const Isometry h = iup.inverse() * iu;
        if (!(h.is_identity() || is_horizontal(h, mu))) continue;
        const int lh = reflection_length(h, sys.ess());
        if (reflection_length(iup, sys.ess()) + lh != lu) continue;
        const auto below_up = window_reflections_below(e, up);
        if (!detail::noncommuting_connected(below_up)) continue;
        bool commuting = true;
        for (const auto& x : exact_lower_interval(sys, h)) {
            if (reflection_length(x, sys.ess()) != 1) continue;
            for (const auto& r : below_up)
                if (!detail::commute(r, x)) commuting = false;
        }
        if (commuting) rep.candidates.push_back({up, h, lh});
    }
    rep.unique = rep.candidates.size() == 1;
    if (!rep.unique) return rep;

    const auto& c = rep.candidates.front();
    const auto hs = exact_lower_interval(sys, c.h);
    std::unordered_set<Isometry, IsometryHash> products;
    const auto ups = e.poset.below[static_cast<std::size_t>(c.u_prime)].members();
    for (int a : ups)
        for (const auto& b : hs) products.insert(e.iso(a) * b);
    rep.product_size = products.size();
    rep.injective = products.size() == ups.size() * hs.size();
    const auto us = e.poset.below[static_cast<std::size_t>(u)].members();
    rep.interval_size = us.size();
    for (int x : us)
        if (!products.count(e.iso(x))) ++rep.interval_missed;

    std::vector<std::unordered_set<Isometry, IsometryHash>> h_below;
    for (const auto& b : hs) {
        auto d = exact_lower_interval(sys, b);
        h_below.emplace_back(d.begin(), d.end());
    }
    struct Cell {
        int a;
        std::size_t b;
        int node;
    };
    std::vector<Cell> cells;
    for (int a : ups)
        for (std::size_t b = 0; b < hs.size(); ++b) {
            auto gid = e.group->find(e.iso(a) * hs[b]);
            auto node = gid ? e.poset.node(*gid) : std::nullopt;
            if (!node) {
                ++rep.products_outside;
                continue;
            }
            cells.push_back({a, b, *node});
        }
    rep.order_isomorphic = rep.injective;
    for (const auto& x : cells)
        for (const auto& y : cells) {
            const bool prod = e.poset.leq(x.a, y.a) && h_below[y.b].count(hs[x.b]);
            if (prod != e.poset.leq(x.node, y.node)) rep.order_isomorphic = false;
        }
    return rep;
}

// φ(u) = w⁻¹uw.
inline Isometry phi_shift(const Isometry& u, const Isometry& w) { return w.inverse() * u * w; }

struct PhiReport {
    int target_window = 0;
    bool maps_into = true;       // every node lands in the target poset
    bool preserves_rank = true;
    bool preserves_covers = true;
    bool preserves_rows = true;
    std::optional<int> index_shift;  // vertical reflections p_i ↦ p_{i+shift}
    bool shift_constant = true;
};

// φ maps window m into window m + period: w⁻¹ moves the axis back by one
// period of axial points.
inline PhiReport phi_equivariance_check(const EuclideanInterval& small, const EuclideanInterval& big) {
    PhiReport rep;
    rep.target_window = big.m;
    const Isometry& w = small.w();
    const Vector& mu = small.inst->axis().mu();
    std::vector<int> image(small.poset.size(), -1);
    for (std::size_t v = 0; v < small.poset.size(); ++v) {
        const Isometry x = phi_shift(small.iso(static_cast<int>(v)), w);
        auto gid = big.group->find(x);
        auto node = gid ? big.poset.node(*gid) : std::nullopt;
        if (!node) {
            rep.maps_into = false;
            continue;
        }
        image[v] = *node;
        if (big.poset.rank[static_cast<std::size_t>(*node)] != small.poset.rank[v]) rep.preserves_rank = false;
        if (row_classify(small.iso(static_cast<int>(v)), w, mu) != row_classify(x, w, mu)) rep.preserves_rows = false;
    }
    for (std::size_t v = 0; v < small.poset.size(); ++v)
        for (const auto& c : small.poset.up[v]) {
            const int a = image[v], b = image[static_cast<std::size_t>(c.to)];
            if (a < 0 || b < 0) continue;
            bool found = false;
            for (const auto& d : big.poset.up[static_cast<std::size_t>(a)])
                if (d.to == b) found = true;
            if (!found) rep.preserves_covers = false;
        }
    std::map<Mirror, int> index_of;
    for (const auto& r : big.reflections)
        if (r.kind == ReflectionClass::vertical) index_of[r.mirror] = r.axial_index;
    for (const auto& r : small.reflections) {
        if (r.kind != ReflectionClass::vertical) continue;
        auto img = small.system().mirror_of(phi_shift(r.iso, w));
        if (!img) continue;
        auto it = index_of.find(*img);
        if (it == index_of.end()) continue;
        const int s = it->second - r.axial_index;
        if (rep.index_shift && *rep.index_shift != s) rep.shift_constant = false;
        if (!rep.index_shift) rep.index_shift = s;
    }
    return rep;
}

struct WindowBalanceReport {
    std::size_t checked = 0;
    std::size_t outside = 0;  // complement not in the larger window either
    std::vector<int> violations;
};

// h ∈ [1,w] iff w·h⁻¹ ∈ [1,w] for certified h of the small window, with the
// complement looked up in a larger window: w·h⁻¹ is a conjugate of h⁻¹w and
// can sit further out along the axis.
inline WindowBalanceReport balance_check(const EuclideanInterval& small, const EuclideanInterval& big) {
    WindowBalanceReport rep;
    for (std::size_t v = 0; v < small.poset.size(); ++v) {
        if (!small.poset.certified[v]) continue;
        ++rep.checked;
        const Isometry c = small.w() * small.iso(static_cast<int>(v)).inverse();
        auto gid = big.group->find(c);
        if (gid && big.poset.node(*gid)) continue;
        if (reflection_length(c, small.system().ess()) + small.poset.rank[v] != small.poset.total)
            rep.violations.push_back(static_cast<int>(v));
        else
            ++rep.outside;
    }
    return rep;
}

struct LOrderReport {
    std::size_t compared = 0;
    std::size_t w_not_l = 0;        // ≤_W without ≤_L (must be zero)
    std::size_t l_not_w = 0;        // ≤_L without a windowed ≤_W (logged)
    std::size_t l_only_elements = 0;  // u·r with u·r ≤_L w but outside the window poset
};

inline LOrderReport l_order_check(const EuclideanInterval& e) {
    LOrderReport rep;
    const auto& ess = e.system().ess();
    const auto n = e.poset.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || e.poset.rank[a] >= e.poset.rank[b]) continue;
            ++rep.compared;
            const bool w = e.poset.leq(static_cast<int>(a), static_cast<int>(b));
            const bool l = leq_L(e.iso(static_cast<int>(a)), e.iso(static_cast<int>(b)), ess);
            if (w && !l) ++rep.w_not_l;
            if (l && !w) ++rep.l_not_w;
        }
    std::unordered_set<Isometry, IsometryHash> seen;
    for (std::size_t a = 0; a < n; ++a)
        for (const auto& g : e.group->generators()) {
            const Isometry x = e.iso(static_cast<int>(a)) * e.group->iso(g.element);
            if (!seen.insert(x).second) continue;
            auto gid = e.group->find(x);
            if (gid && e.poset.node(*gid)) continue;
            if (leq_L(x, e.w(), ess)) ++rep.l_only_elements;
        }
    return rep;
}

}  // namespace affdual
