#pragma once

#include <affdual/coxeter_system.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace affdual {

struct AxialPoint {
    int index = 0;
    Scalar theta;
    std::vector<Mirror> mirrors;  // sorted
};

struct AxialChamber {
    Isometry g;  // chamber = g(C_0)
    std::vector<Vector> vertices;
    Scalar lo, hi;  // closure ∩ ℓ = {a + θμ : lo ≤ θ ≤ hi}
};

struct AxisData {
    Vector a, mu;  // ℓ = {a + θμ}
    Scalar base_lo, base_hi;
    int window = 0;
    std::vector<AxialPoint> points;  // p_{-m} .. p_m
    std::vector<AxialChamber> chambers;
    std::vector<Vector> vertices;  // sorted, unique
    std::vector<Mirror> axis_mirrors;  // mirrors containing ℓ
    bool generic = true;
    bool perturbed = false;

    const AxialPoint& point(int i) const { return points.at(static_cast<std::size_t>(i + window)); }
};

struct HorizontalComponent {
    std::vector<Vector> roots;  // positive horizontal roots of the component
    std::vector<Vector> basis;  // independent spanning set of V_i
    int rank = 0;
};

struct HorizontalDecomposition {
    std::vector<HorizontalComponent> components;
    std::vector<int> expected_ranks;  // nonzero ranks, sorted
    bool matches_table = false;
    bool orthogonal_sum = false;  // V_ess = Rμ ⊕ V_1 ⊕ ... ⊕ V_k
    int p = 0, q = 0;  // bigon class, type A only

    int component_of(const Vector& root) const {
        for (std::size_t i = 0; i < components.size(); ++i)
            for (const auto& r : components[i].roots)
                if (r == root || r == -root) return static_cast<int>(i);
        return -1;
    }
};

enum class ReflectionClass { vertical, horizontal };

struct ReflectionRecord {
    Isometry iso;
    Mirror mirror;
    ReflectionClass kind = ReflectionClass::vertical;
    Scalar theta;            // vertical only
    int axial_index = 0;     // vertical only
    int component = -1;      // horizontal only
    bool in_r0 = false;
    std::string name;
};

class Axis {
public:
    Axis(const CoxeterSystem& sys, const CoxeterElement& cox) : sys_(sys) {
        a_ = cox.axis_point;
        mu_ = cox.direction;
        for (const auto& r : sys.positive_roots()) (dot(r, mu_) == 0 ? horizontal_ : vertical_).push_back(r);
        compute_base_segment();
    }

    const Vector& a() const { return a_; }
    const Vector& mu() const { return mu_; }
    const std::vector<Vector>& vertical_roots() const { return vertical_; }
    const std::vector<Vector>& horizontal_roots() const { return horizontal_; }
    bool base_is_axial() const { return base_axial_; }
    const Scalar& base_lo() const { return lo_; }
    const Scalar& base_hi() const { return hi_; }

    Vector at(const Scalar& theta) const { return a_ + theta * mu_; }

    Scalar theta_of(const Mirror& m) const { return (m.offset - dot(m.root, a_)) / dot(m.root, mu_); }

    // Vertical mirrors crossing ℓ at θ ∈ [from, to].
    std::vector<Mirror> crossings(const Scalar& from, const Scalar& to) const {
        std::vector<Mirror> out;
        for (const auto& r : vertical_) {
            Scalar c0 = dot(r, a_), c1 = dot(r, mu_);
            Scalar x = c0 + from * c1, y = c0 + to * c1;
            if (x > y) std::swap(x, y);
            BigInt k = ceil_of(x);
            for (; Scalar(k) <= y; ++k) out.push_back({r, Scalar(k)});
        }
        return out;
    }

    // Ordered axial points p_{-m}..p_m.
    std::vector<AxialPoint> points(int m) const {
        require_axial();
        const Scalar reach = Scalar(m + 2);
        std::map<Scalar, std::vector<Mirror>> by_theta;
        for (const auto& mir : crossings(lo_ - reach, hi_ + reach)) by_theta[theta_of(mir)].push_back(mir);
        std::vector<AxialPoint> out;
        auto lo_it = by_theta.find(lo_);
        auto hi_it = by_theta.find(hi_);
        if (lo_it == by_theta.end() || hi_it == by_theta.end()) throw std::logic_error("axis: C_0 ends not on mirrors");
        int idx = 0;
        for (auto it = lo_it;; --it, --idx) {
            if (-idx > m) break;
            out.push_back({idx, it->first, it->second});
            if (it == by_theta.begin()) throw std::logic_error("axis: window reach too small");
        }
        std::reverse(out.begin(), out.end());
        idx = 1;
        for (auto it = hi_it; idx <= m; ++it, ++idx) {
            if (it == by_theta.end()) throw std::logic_error("axis: window reach too small");
            out.push_back({idx, it->first, it->second});
        }
        for (auto& p : out) std::sort(p.mirrors.begin(), p.mirrors.end());
        return out;
    }

    std::vector<Mirror> axis_mirrors() const {
        std::vector<Mirror> out;
        for (const auto& r : horizontal_) {
            Scalar k = dot(r, a_);
            if (is_integer(k)) out.push_back({r, k});
        }
        return out;
    }

    AxisData data(int m) const {
        AxisData d;
        d.a = a_;
        d.mu = mu_;
        d.base_lo = lo_;
        d.base_hi = hi_;
        d.window = m;
        d.points = points(m);
        d.axis_mirrors = axis_mirrors();
        d.generic = d.axis_mirrors.empty();
        for (const auto& p : d.points)
            if (p.mirrors.size() > 1) d.generic = false;
        d.perturbed = !d.generic;
        d.chambers = walk(d.points.front().theta, d.points.back().theta);
        auto extra = axis_group();
        std::set<Vector> verts;
        std::vector<AxialChamber> all;
        for (const auto& c : d.chambers)
            for (const auto& h : extra) {
                AxialChamber img{h * c.g, {}, c.lo, c.hi};
                for (const auto& v : c.vertices) img.vertices.push_back(h(v));
                for (const auto& v : img.vertices) verts.insert(v);
                all.push_back(std::move(img));
            }
        d.chambers = std::move(all);
        d.vertices.assign(verts.begin(), verts.end());
        return d;
    }

    // Number of axial points per unit of θ (w shifts θ by one).
    int period() const {
        std::set<Scalar> thetas;
        for (const auto& mir : crossings(lo_, lo_ + 1)) thetas.insert(theta_of(mir));
        return static_cast<int>(thetas.size()) - 1;
    }

private:
    static BigInt ceil_of(const Scalar& x) {
        BigInt q;
        mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        return q;
    }

    void require_axial() const {
        if (!base_axial_) throw std::logic_error("axis: C_0 is not an axial chamber for this Coxeter element");
    }

    void compute_base_segment() {
        bool has_lo = false, has_hi = false;
        base_axial_ = true;
        for (std::size_t i = 0; i < sys_.size(); ++i) {
            // wall_value(a + θμ) = c0 + θ c1 ≥ 0 on the closure
            Vector n = sys_.inward_normal(i);
            Scalar c1 = dot(n, mu_);
            Scalar c0 = sys_.wall_value(i, a_);
            if (c1 == 0) {
                if (c0 < 0) base_axial_ = false;
                continue;
            }
            Scalar t = -c0 / c1;
            if (c1 > 0) {
                if (!has_lo || t > lo_) lo_ = t;
                has_lo = true;
            } else {
                if (!has_hi || t < hi_) hi_ = t;
                has_hi = true;
            }
        }
        if (!has_lo || !has_hi || !(lo_ < hi_)) base_axial_ = false;
    }

    // Lexicographic crossing key of a mirror along a + εg_1 + ε²e_1 + ...
    std::vector<Scalar> key(const Mirror& m, const Vector& g1) const {
        const Scalar c1 = dot(m.root, mu_);
        std::vector<Scalar> k{theta_of(m), -dot(m.root, g1) / c1};
        for (const auto& x : m.root) k.push_back(-x / c1);
        return k;
    }

    std::vector<AxialChamber> walk(const Scalar& from, const Scalar& to) const {
        const auto base = sys_.base_vertices();
        Vector bary = zero_vector(sys_.ambient());
        for (const auto& v : base) bary = bary + v;
        bary = make_scalar(1, static_cast<long>(base.size())) * bary;
        const Vector g1 = bary - at((lo_ + hi_) / 2);

        std::vector<AxialChamber> out;
        out.push_back({Isometry::identity(sys_.ambient()), base, lo_, hi_});

        auto run = [&](bool upward) {
            std::vector<std::pair<std::vector<Scalar>, Mirror>> cross;
            for (const auto& mir : upward ? crossings(hi_, to) : crossings(from, lo_))
                cross.push_back({key(mir, g1), mir});
            std::sort(cross.begin(), cross.end(), [&](const auto& x, const auto& y) {
                return upward ? x.first < y.first : y.first < x.first;
            });
            Isometry g = Isometry::identity(sys_.ambient());
            std::vector<Vector> verts = base;
            for (std::size_t i = 0; i < cross.size(); ++i) {
                const auto& mir = cross[i].second;
                int on = 0;
                for (const auto& v : verts)
                    if (dot(mir.root, v) == mir.offset) ++on;
                if (on + 1 != static_cast<int>(verts.size()))
                    throw std::logic_error("axis walk: crossed mirror is not a wall of the current chamber");
                const Isometry r = reflection_in(mir);
                g = r * g;
                for (auto& v : verts) v = r(v);
                const Scalar& t = cross[i].first[0];
                bool last_at_t = i + 1 == cross.size() || cross[i + 1].first[0] != t;
                if (!last_at_t) continue;
                if (i + 1 == cross.size()) break;  // segment runs past the window
                const Scalar& other = cross[i + 1].first[0];
                out.push_back({g, verts, upward ? t : other, upward ? other : t});
            }
        };
        run(true);
        run(false);
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
        return out;
    }

    // Finite group generated by the reflections whose mirrors contain ℓ.
    std::vector<Isometry> axis_group() const {
        std::vector<Isometry> gens;
        for (const auto& m : axis_mirrors()) gens.push_back(reflection_in(m));
        std::vector<Isometry> elems{Isometry::identity(sys_.ambient())};
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (const auto& s : gens) {
                Isometry x = s * elems[i];
                if (std::find(elems.begin(), elems.end(), x) == elems.end()) elems.push_back(x);
                if (elems.size() > 100000) throw std::logic_error("axis group too large");
            }
        return elems;
    }

    CoxeterSystem sys_;
    Vector a_, mu_;
    std::vector<Vector> vertical_, horizontal_;
    Scalar lo_, hi_;
    bool base_axial_ = false;
};

namespace detail {

inline std::vector<int> table_ranks(const CoxeterType& t) {
    const int n = t.rank;
    std::vector<int> r;
    switch (t.family) {
    case Family::A: return {};
    case Family::B: r = {1, n - 2}; break;
    case Family::C: r = {n - 1}; break;
    case Family::D: r = {1, 1, n - 3}; break;
    case Family::G: r = {1}; break;
    case Family::F: r = {1, 2}; break;
    case Family::E: r = {1, 2, n - 4}; break;
    }
    std::erase(r, 0);
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace detail

inline HorizontalDecomposition horizontal_decomposition(const CoxeterSystem& sys, const Axis& axis) {
    HorizontalDecomposition d;
    const auto& hor = axis.horizontal_roots();
    std::vector<int> comp(hor.size(), -1);
    int k = 0;
    for (std::size_t s = 0; s < hor.size(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = k;
        std::vector<std::size_t> stack{s};
        while (!stack.empty()) {
            auto i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < hor.size(); ++j)
                if (comp[j] < 0 && dot(hor[i], hor[j]) != 0) {
                    comp[j] = k;
                    stack.push_back(j);
                }
        }
        ++k;
    }
    d.components.resize(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < hor.size(); ++i) d.components[static_cast<std::size_t>(comp[i])].roots.push_back(hor[i]);
    std::vector<int> ranks;
    bool all_type_a = true;
    std::vector<Vector> everything{axis.mu()};
    for (auto& c : d.components) {
        c.basis = independent_subset(c.roots, sys.ambient());
        c.rank = static_cast<int>(c.basis.size());
        ranks.push_back(c.rank);
        const Scalar len = dot(c.roots.front(), c.roots.front());
        for (const auto& r : c.roots)
            if (dot(r, r) != len) all_type_a = false;
        if (static_cast<int>(c.roots.size()) != c.rank * (c.rank + 1) / 2) all_type_a = false;
        everything.insert(everything.end(), c.basis.begin(), c.basis.end());
    }
    std::sort(ranks.begin(), ranks.end());
    d.orthogonal_sum = static_cast<int>(independent_subset(everything, sys.ambient()).size()) == sys.rank() &&
                       static_cast<int>(everything.size()) == sys.rank();
    if (sys.type().family == Family::A) {
        const int n = sys.rank();
        int covered = 0;
        for (int r : ranks) covered += r + 1;
        int trivial = 2 - k;
        d.matches_table = all_type_a && k <= 2 && covered + trivial == n + 1;
        std::vector<int> pq;
        for (int r : ranks) pq.push_back(r + 1);
        while (pq.size() < 2) pq.insert(pq.begin(), 1);
        d.p = pq[0];
        d.q = pq[1];
        for (int x : pq)
            if (x > 1) d.expected_ranks.push_back(x - 1);
    } else {
        d.expected_ranks = detail::table_ranks(sys.type());
        d.matches_table = all_type_a && ranks == d.expected_ranks;
    }
    return d;
}

// Display name of the parallel class of a root: a simple generator's name when
// parallel to one, otherwise r<index>.
inline std::string root_class_name(const CoxeterSystem& sys, const Vector& root) {
    for (std::size_t i = 0; i < sys.size(); ++i)
        if (in_span(root, {sys.simple_mirrors()[i].root})) return sys.names()[i];
    return "r" + std::to_string(sys.root_index(root));
}

// Image of a mirror under an element of W, with a positive root.
inline Mirror transform_mirror(const CoxeterSystem& sys, const Isometry& u, const Mirror& m) {
    Vector r = u.linear() * m.root;
    Scalar k = m.offset + dot(r, u.translation_part());
    if (std::find(sys.positive_roots().begin(), sys.positive_roots().end(), r) == sys.positive_roots().end()) {
        r = -r;
        k = -k;
    }
    return {r, k};
}

// Horizontal mirrors through at least one axial vertex (window independent).
inline std::vector<Mirror> horizontal_r0_mirrors(const CoxeterSystem& sys, const CoxeterElement& cox, const Axis& axis) {
    const auto data = axis.data(axis.period() + 2);
    std::set<Mirror> found;
    for (const auto& v : data.vertices)
        for (const auto& r : axis.horizontal_roots()) {
            Scalar k = dot(r, v);
            if (is_integer(k)) found.insert({r, k});
        }
    const Isometry winv = cox.w.inverse();
    std::vector<Mirror> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
        std::vector<Mirror> next;
        for (const auto& m : frontier)
            for (const auto* u : {&cox.w, &winv}) {
                Mirror img = transform_mirror(sys, *u, m);
                if (found.insert(img).second) next.push_back(img);
            }
        frontier = std::move(next);
        if (found.size() > 10000) throw std::logic_error("horizontal R_0 set not finite");
    }
    return {found.begin(), found.end()};
}

inline std::vector<ReflectionRecord> enumerate_reflections(const CoxeterSystem& sys, const CoxeterElement& cox,
                                                           const Axis& axis, int m) {
    if (m < 1) throw std::invalid_argument("enumerate_reflections: window must be positive");
    std::vector<ReflectionRecord> out;
    for (const auto& p : axis.points(m))
        for (const auto& mir : p.mirrors) {
            ReflectionRecord r;
            r.iso = reflection_in(mir);
            r.mirror = mir;
            r.kind = ReflectionClass::vertical;
            r.theta = p.theta;
            r.axial_index = p.index;
            r.in_r0 = true;
            r.name = root_class_name(sys, mir.root) + "@" + std::to_string(p.index);
            out.push_back(std::move(r));
        }
    const auto dec = horizontal_decomposition(sys, axis);
    for (const auto& mir : horizontal_r0_mirrors(sys, cox, axis)) {
        ReflectionRecord r;
        r.iso = reflection_in(mir);
        r.mirror = mir;
        r.kind = ReflectionClass::horizontal;
        r.component = dec.component_of(mir.root);
        r.in_r0 = true;
        r.name = root_class_name(sys, mir.root);
        bool simple = false;
        for (const auto& s : sys.simple_mirrors())
            if (s == mir) simple = true;
        if (!simple) r.name += "~" + mir.offset.get_str();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace affdual
