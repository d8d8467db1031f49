#pragma once

#include <affdual/euclidean_interval.hpp>

#include <random>

namespace affdual {

class IndistinguishableRoots : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A total order on a finite set of reflections.
struct ReflectionOrder {
    std::vector<Isometry> items;
    std::vector<std::string> names;
    std::string provenance;

    std::size_t size() const { return items.size(); }

    std::optional<std::size_t> position(const Isometry& r) const {
        for (std::size_t i = 0; i < items.size(); ++i)
            if (items[i] == r) return i;
        return std::nullopt;
    }
};

// Indices of roots sorted by (⟨μ⁽⁰⁾,α⟩, ⟨μ⁽¹⁾,α⟩, …)/⟨a,α⟩: the order in which
// the line a + θ(μ⁽⁰⁾ + εμ⁽¹⁾ + ⋯) meets the mirrors, ε infinitesimal.
inline std::vector<std::size_t> line_order(const std::vector<Vector>& roots, const Vector& a,
                                           const std::vector<Vector>& dirs) {
    std::vector<std::vector<Scalar>> keys;
    for (const auto& r : roots) {
        const Scalar n = dot(a, r);
        if (n == 0) throw std::invalid_argument("line_order: base point lies on a mirror");
        std::vector<Scalar> k;
        for (const auto& d : dirs) k.push_back(dot(d, r) / n);
        keys.push_back(std::move(k));
    }
    std::vector<std::size_t> idx(roots.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return keys[x] < keys[y]; });
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (keys[idx[i]] == keys[idx[i - 1]])
            throw IndistinguishableRoots("line_order: two mirrors meet the line at the same point; supply more directions");
    return idx;
}

namespace detail {

// x = c1·a + c2·b with c1, c2 > 0.
inline bool positive_combination(const Vector& x, const Vector& a, const Vector& b) {
    Matrix m(x.size(), 2);
    for (std::size_t i = 0; i < x.size(); ++i) {
        m(i, 0) = a[i];
        m(i, 1) = b[i];
    }
    auto c = solve(m, x);
    if (!c) return false;
    return (*c)[0] > 0 && (*c)[1] > 0;
}

inline bool parallel(const Vector& a, const Vector& b) { return rank(Matrix::from_rows({a, b})) < 2; }

}  // namespace detail

// Betweenness: α a positive combination of α1, α2 ⇒ α lies between them.
// Roots are given in order and must be positive for one common chamber.
inline bool is_reflection_order(const std::vector<Vector>& ordered_roots) {
    const auto n = ordered_roots.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (!detail::positive_combination(ordered_roots[k], ordered_roots[i], ordered_roots[j])) continue;
                if (!(i < k && k < j)) return false;
            }
    return true;
}

struct CompatibilityReport {
    bool compatible = true;
    std::size_t subsystems = 0;  // irreducible rank-2 subsystems
    std::size_t checked = 0;     // those whose product of simple reflections divides u
    std::size_t ambiguous = 0;   // both products divide u
    std::vector<std::pair<std::size_t, std::size_t>> violations;  // positions
};

// For every irreducible rank-2 subsystem with simple roots α, β (w.r.t. the
// positive roots given): r_α r_β ≤ u ⇒ r_α ≺ r_β. Membership uses ≤_L, which
// is exact for elliptic u.
inline CompatibilityReport is_compatible(const std::vector<Vector>& ordered_roots, const std::vector<Isometry>& ordered_refl,
                                         const Isometry& u, const EssentialSpace& ess = {}) {
    CompatibilityReport rep;
    const auto n = ordered_roots.size();
    std::set<std::vector<std::size_t>> planes;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (detail::parallel(ordered_roots[i], ordered_roots[j])) continue;
            std::vector<std::size_t> members;
            for (std::size_t k = 0; k < n; ++k)
                if (in_span(ordered_roots[k], {ordered_roots[i], ordered_roots[j]})) members.push_back(k);
            if (members.size() >= 3) planes.insert(members);
        }
    for (const auto& members : planes) {
        ++rep.subsystems;
        std::optional<std::pair<std::size_t, std::size_t>> simple;
        for (auto a : members)
            for (auto b : members) {
                if (a >= b || simple) continue;
                bool spans = true;
                for (auto c : members)
                    if (c != a && c != b && !detail::positive_combination(ordered_roots[c], ordered_roots[a], ordered_roots[b]))
                        spans = false;
                if (spans) simple = std::make_pair(a, b);
            }
        if (!simple) throw std::logic_error("is_compatible: roots are not positive for a common chamber");
        const auto [a, b] = *simple;
        const bool ab = leq_L(ordered_refl[a] * ordered_refl[b], u, ess);
        const bool ba = leq_L(ordered_refl[b] * ordered_refl[a], u, ess);
        if (ab && ba) {
            ++rep.ambiguous;
            rep.compatible = false;
            continue;
        }
        if (ab || ba) ++rep.checked;
        if (ba) {  // needs r_b ≺ r_a, but positions have a < b
            rep.compatible = false;
            rep.violations.emplace_back(b, a);
        }
    }
    return rep;
}

// Finite reflection group fixing x0 with the given roots (one per mirror).
struct FiniteReflectionGroup {
    std::vector<Vector> roots;
    Vector x0;

    Isometry reflection(const Vector& alpha) const { return reflection_through(alpha, dot(alpha, x0)); }
};

namespace detail {

inline std::vector<Vector> fundamental_weights(const std::vector<Vector>& simple) {
    const auto k = simple.size();
    Matrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(simple[i], simple[j]);
    std::vector<Vector> out;
    for (std::size_t j = 0; j < k; ++j) {
        auto c = solve(gram, unit_vector(k, j));
        Vector w = zero_vector(simple.front().size());
        for (std::size_t i = 0; i < k; ++i) w = w + (*c)[i] * simple[i];
        out.push_back(std::move(w));
    }
    return out;
}

inline Vector reflect_linear(const Vector& v, const Vector& alpha) {
    return v - (2 * dot(v, alpha) / dot(alpha, alpha)) * alpha;
}

// Simple roots of the chamber containing the generic point g.
inline std::vector<Vector> simple_system(const std::vector<Vector>& roots, const Vector& g) {
    std::vector<Vector> pos;
    for (const auto& r : roots) pos.push_back(dot(r, g) > 0 ? r : -r);
    std::vector<Vector> simple;
    for (std::size_t c = 0; c < pos.size(); ++c) {
        bool decomposable = false;
        for (std::size_t a = 0; a < pos.size() && !decomposable; ++a)
            for (std::size_t b = a + 1; b < pos.size() && !decomposable; ++b)
                if (a != c && b != c && positive_combination(pos[c], pos[a], pos[b])) decomposable = true;
        if (!decomposable) simple.push_back(pos[c]);
    }
    return simple;
}

// Path order of a type-A simple system (both orientations), or empty.
inline std::vector<std::vector<Vector>> path_orders(const std::vector<Vector>& simple) {
    const auto k = simple.size();
    if (k == 1) return {simple};
    std::vector<std::vector<std::size_t>> adj(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && dot(simple[i], simple[j]) != 0) adj[i].push_back(j);
    std::optional<std::size_t> end;
    for (std::size_t i = 0; i < k; ++i)
        if (adj[i].size() == 1 && !end) end = i;
    if (!end) return {};
    std::vector<std::size_t> path{*end};
    while (path.size() < k) {
        std::optional<std::size_t> next;
        for (auto j : adj[path.back()])
            if (std::find(path.begin(), path.end(), j) == path.end()) next = j;
        if (!next) return {};
        path.push_back(*next);
    }
    std::vector<Vector> fwd;
    for (auto i : path) fwd.push_back(simple[i]);
    std::vector<Vector> bwd(fwd.rbegin(), fwd.rend());
    return {fwd, bwd};
}

}  // namespace detail

struct LineOrder {
    std::vector<std::size_t> order;  // indices into the group's roots
    Vector base;
    std::vector<Vector> directions;
    CompatibilityReport compatibility;
    std::size_t attempts = 0;
};

// A line whose reflection order on a type-A group is compatible with its
// Coxeter element h: a chamber whose path-ordered simple reflections
// multiply to h, base point in that chamber, directions e_1, e_2, … of the
// type-A coordinates written in fundamental weights.
inline LineOrder compatible_line_order(const FiniteReflectionGroup& grp, const Isometry& h, const EssentialSpace& ess = {},
                                       std::size_t max_attempts = 1000) {
    const auto& roots = grp.roots;
    if (roots.empty()) return {};
    // a generic point of the span: sum of roots with distinct weights
    Vector g = zero_vector(roots.front().size());
    for (std::size_t i = 0; i < roots.size(); ++i) g = g + Scalar(static_cast<long>(i * i + 1), 7) * roots[i];
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (dot(g, roots[i]) == 0) g = g + Scalar(1, static_cast<long>(i + 11)) * roots[i];
    auto base = detail::simple_system(roots, g);

    // chambers as images of the base simple system, breadth first
    std::vector<std::vector<Vector>> chambers{base};
    std::set<std::vector<Vector>> seen{base};
    LineOrder out;
    for (std::size_t c = 0; c < chambers.size(); ++c) {
        for (const auto& path : detail::path_orders(chambers[c])) {
            if (++out.attempts > max_attempts) throw std::runtime_error("compatible_line_order: attempt limit reached");
            Isometry prod = Isometry::identity(h.dim());
            for (const auto& b : path) prod = prod * grp.reflection(b);
            if (prod != h) continue;
            const auto omega = detail::fundamental_weights(path);
            Vector a = zero_vector(path.front().size());
            for (const auto& w : omega) a = a + w;
            std::vector<Vector> dirs{-omega.front()};
            for (std::size_t j = 1; j < omega.size(); ++j) dirs.push_back(omega[j - 1] - omega[j]);
            dirs.push_back(omega.back());
            auto order = line_order(roots, a, dirs);
            std::vector<Vector> ordered;
            std::vector<Isometry> refl;
            for (auto i : order) {
                ordered.push_back(dot(a, roots[i]) > 0 ? roots[i] : -roots[i]);
                refl.push_back(grp.reflection(roots[i]));
            }
            auto comp = is_compatible(ordered, refl, h, ess);
            if (!comp.compatible) continue;
            out.order = std::move(order);
            out.base = std::move(a);
            out.directions = std::move(dirs);
            out.compatibility = std::move(comp);
            return out;
        }
        for (const auto& s : chambers[c]) {
            std::vector<Vector> img;
            for (const auto& b : chambers[c]) img.push_back(detail::reflect_linear(b, s));
            std::sort(img.begin(), img.end());
            if (seen.insert(img).second) chambers.push_back(std::move(img));
        }
    }
    throw std::runtime_error("compatible_line_order: no compatible line found");
}

struct HorizontalFactorization {
    Isometry t;
    std::vector<Isometry> h;  // one per horizontal component
};

// w = t·h_1⋯h_k with t a translation taken from the window, h_i the largest
// element of [1, t⁻¹w] whose reflections lie in component i.
inline HorizontalFactorization horizontal_factorization(const EuclideanInterval& e) {
    const auto& sys = e.system();
    const auto& dec = e.inst->decomposition();
    const Vector& mu = e.inst->axis().mu();
    for (std::size_t v = 0; v < e.poset.size(); ++v) {
        const Isometry& t = e.iso(static_cast<int>(v));
        if (t.linear() != Matrix::identity(t.dim()) || t.is_identity()) continue;
        const Isometry h = t.inverse() * e.w();
        if (!is_horizontal(h, mu)) continue;
        HorizontalFactorization f{t, {}};
        const auto below = exact_lower_interval(sys, h);
        for (std::size_t i = 0; i < dec.components.size(); ++i) {
            Isometry best = Isometry::identity(t.dim());
            int best_len = 0;
            for (const auto& x : below) {
                bool inside = true;
                for (const auto& y : exact_lower_interval(sys, x)) {
                    if (reflection_length(y, sys.ess()) != 1) continue;
                    auto m = sys.mirror_of(y);
                    if (!m || dec.component_of(m->root) != static_cast<int>(i)) inside = false;
                }
                const int l = reflection_length(x, sys.ess());
                if (inside && l > best_len) {
                    best = x;
                    best_len = l;
                }
            }
            f.h.push_back(best);
        }
        Isometry prod = t;
        for (const auto& x : f.h) prod = prod * x;
        if (prod != e.w()) throw std::logic_error("horizontal_factorization: components do not multiply to w");
        return f;
    }
    throw std::runtime_error("horizontal_factorization: no translation t ≤ w with horizontal complement in window");
}

struct HorizontalOrder {
    HorizontalFactorization factorization;
    std::vector<LineOrder> lines;                 // per component
    std::vector<std::vector<Vector>> class_roots;  // per component, in ≺_i order
    ReflectionOrder order;                        // R_0 horizontals of the window
};

// Parallel classes inherit their representative's position; within a class
// by increasing offset; components concatenated in index order.
inline HorizontalOrder horizontal_order(const EuclideanInterval& e) {
    const auto& sys = e.system();
    const auto& dec = e.inst->decomposition();
    HorizontalOrder out;
    out.factorization = horizontal_factorization(e);
    std::vector<std::pair<std::tuple<int, std::size_t, Scalar>, std::size_t>> keyed;
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
        const Isometry& hi = out.factorization.h[i];
        FiniteReflectionGroup grp{dec.components[i].roots, invariants(hi).fix.base_point()};
        auto line = compatible_line_order(grp, hi, sys.ess());
        std::vector<Vector> cls;
        for (auto j : line.order) cls.push_back(grp.roots[j]);
        out.class_roots.push_back(cls);
        out.lines.push_back(std::move(line));
    }
    for (std::size_t r = 0; r < e.reflections.size(); ++r) {
        const auto& rec = e.reflections[r];
        if (rec.kind != ReflectionClass::horizontal) continue;
        const auto c = static_cast<std::size_t>(rec.component);
        const auto& cls = out.class_roots.at(c);
        std::size_t pos = cls.size();
        for (std::size_t j = 0; j < cls.size(); ++j)
            if (detail::parallel(cls[j], rec.mirror.root)) pos = j;
        if (pos == cls.size()) throw std::logic_error("horizontal_order: reflection outside its component");
        keyed.push_back({{rec.component, pos, rec.mirror.offset}, r});
    }
    std::sort(keyed.begin(), keyed.end());
    out.order.provenance = "horizontal";
    for (const auto& [k, r] : keyed) {
        out.order.items.push_back(e.reflections[r].iso);
        out.order.names.push_back(e.reflections[r].name);
    }
    return out;
}

// Positive verticals by increasing θ, then ≺_hor, then negative verticals by
// increasing θ; verticals at one axial point by canonical mirror order.
inline ReflectionOrder axial_order(const EuclideanInterval& e, const HorizontalOrder& hor) {
    std::vector<std::tuple<Scalar, Mirror, std::size_t>> pos, neg;
    for (std::size_t r = 0; r < e.reflections.size(); ++r) {
        const auto& rec = e.reflections[r];
        if (rec.kind != ReflectionClass::vertical) continue;
        (rec.axial_index >= 1 ? pos : neg).emplace_back(rec.theta, rec.mirror, r);
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    ReflectionOrder out;
    out.provenance = "axial";
    for (const auto& [t, m, r] : pos) {
        out.items.push_back(e.reflections[r].iso);
        out.names.push_back(e.reflections[r].name);
    }
    for (std::size_t i = 0; i < hor.order.size(); ++i) {
        out.items.push_back(hor.order.items[i]);
        out.names.push_back(hor.order.names[i]);
    }
    for (const auto& [t, m, r] : neg) {
        out.items.push_back(e.reflections[r].iso);
        out.names.push_back(e.reflections[r].name);
    }
    return out;
}

inline ReflectionOrder axial_order(const EuclideanInterval& e) { return axial_order(e, horizontal_order(e)); }

// Position of each generator of g in the order.
inline std::vector<int> generator_ranks(const EuclideanGroup& g, const ReflectionOrder& order) {
    std::vector<int> out;
    for (const auto& s : g.generators()) {
        auto p = order.position(g.iso(s.element));
        if (!p) throw std::invalid_argument("generator_ranks: generator missing from the order");
        out.push_back(static_cast<int>(*p));
    }
    return out;
}

struct ShellabilityReport {
    std::size_t intervals = 0;
    std::size_t certified_intervals = 0;  // top margin-certified
    std::size_t violations = 0;
    std::size_t certified_violations = 0;
    std::optional<std::pair<int, int>> first_violation;
};

// Every [u,v]: exactly one strictly increasing maximal chain, equal to the
// lexicographically first and colexicographically last chains.
inline ShellabilityReport shellability_check(const IntervalPoset& p, const std::vector<int>& gen_rank) {
    ShellabilityReport rep;
    const auto n = p.size();
    auto label = [&](const Cover& c) { return gen_rank[static_cast<std::size_t>(c.gen)]; };
    for (std::size_t u = 0; u < n; ++u) {
        for (int v : p.above[u].members()) {
            if (static_cast<std::size_t>(v) == u) continue;
            ++rep.intervals;
            const bool cert = p.certified[static_cast<std::size_t>(v)];
            if (cert) ++rep.certified_intervals;
            const Bits& inside = p.below[static_cast<std::size_t>(v)];
            // increasing chains: ways[x][last label]
            std::map<int, std::map<int, BigInt>> ways;
            ways[static_cast<int>(u)][-1] = 1;
            std::vector<int> nodes = (p.above[u] & inside).members();
            std::sort(nodes.begin(), nodes.end(), [&](int a, int b) { return p.rank[static_cast<std::size_t>(a)] < p.rank[static_cast<std::size_t>(b)]; });
            for (int x : nodes) {
                auto it = ways.find(x);
                if (it == ways.end()) continue;
                for (const auto& c : p.up[static_cast<std::size_t>(x)]) {
                    if (!inside.test(static_cast<std::size_t>(c.to))) continue;
                    for (const auto& [last, cnt] : it->second)
                        if (label(c) > last) ways[c.to][label(c)] += cnt;
                }
            }
            BigInt increasing = 0;
            for (const auto& [l, cnt] : ways[v]) increasing += cnt;

            std::vector<int> lex, colex;
            for (int x = static_cast<int>(u); x != v;) {
                const Cover* best = nullptr;
                for (const auto& c : p.up[static_cast<std::size_t>(x)])
                    if (inside.test(static_cast<std::size_t>(c.to)) && (!best || label(c) < label(*best))) best = &c;
                lex.push_back(label(*best));
                x = best->to;
            }
            for (int x = v; x != static_cast<int>(u);) {
                const Cover* best = nullptr;
                for (const auto& c : p.down[static_cast<std::size_t>(x)])
                    if (p.above[u].test(static_cast<std::size_t>(c.to)) && (!best || label(c) > label(*best))) best = &c;
                colex.push_back(label(*best));
                x = best->to;
            }
            std::reverse(colex.begin(), colex.end());
            const bool ok = increasing == 1 && std::is_sorted(lex.begin(), lex.end()) &&
                            std::adjacent_find(lex.begin(), lex.end()) == lex.end() && lex == colex;
            if (!ok) {
                ++rep.violations;
                if (cert) ++rep.certified_violations;
                if (!rep.first_violation) rep.first_violation = std::make_pair(static_cast<int>(u), v);
            }
        }
    }
    return rep;
}

// Deterministic shuffle of an order, for negative controls.
inline ReflectionOrder scrambled(const ReflectionOrder& order, unsigned seed) {
    std::vector<std::size_t> idx(order.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    ReflectionOrder out;
    out.provenance = "scrambled";
    for (auto i : idx) {
        out.items.push_back(order.items[i]);
        out.names.push_back(order.names[i]);
    }
    return out;
}

}  // namespace affdual
