#pragma once

#include <affdual/reflection_order.hpp>

namespace affdual {

// [x_1|…|x_d] as group ids; [] is the unique vertex.
using Simplex = std::vector<int>;

// A finite set of simplexes of an interval complex, faces computed in the
// group on demand.
class DeltaComplex {
public:
    explicit DeltaComplex(MarkedGroup& g) : g_(&g) {}

    MarkedGroup& group() const { return *g_; }

    int product(const Simplex& s) const {
        int p = g_->identity();
        for (int x : s) p = g_->mul(p, x);
        return p;
    }

    // d_0 drops x_1, d_i merges x_i x_{i+1}, d_d drops x_d
    Simplex face(const Simplex& s, std::size_t i) const {
        const auto d = s.size();
        if (i > d || d == 0) throw std::out_of_range("DeltaComplex::face");
        if (i == 0) return Simplex(s.begin() + 1, s.end());
        if (i == d) return Simplex(s.begin(), s.end() - 1);
        Simplex out(s.begin(), s.begin() + static_cast<long>(i) - 1);
        out.push_back(g_->mul(s[i - 1], s[i]));
        out.insert(out.end(), s.begin() + static_cast<long>(i) + 1, s.end());
        return out;
    }

    std::vector<Simplex> faces(const Simplex& s) const {
        std::vector<Simplex> out;
        for (std::size_t i = 0; i <= s.size() && !s.empty(); ++i) out.push_back(face(s, i));
        return out;
    }

    bool insert(const Simplex& s) {
        if (cells_.size() <= s.size()) cells_.resize(s.size() + 1);
        return cells_[s.size()].insert(s).second;
    }

    bool contains(const Simplex& s) const { return s.size() < cells_.size() && cells_[s.size()].count(s); }

    int dimension() const { return static_cast<int>(cells_.size()) - 1; }

    std::vector<Simplex> cells(std::size_t d) const {
        if (d >= cells_.size()) return {};
        return {cells_[d].begin(), cells_[d].end()};
    }

    std::vector<Simplex> all_cells() const {
        std::vector<Simplex> out;
        for (const auto& c : cells_) out.insert(out.end(), c.begin(), c.end());
        return out;
    }

    std::size_t count(std::size_t d) const { return d < cells_.size() ? cells_[d].size() : 0; }

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& c : cells_) n += c.size();
        return n;
    }

    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> out;
        for (const auto& c : cells_) out.push_back(c.size());
        return out;
    }

    bool face_closed() const {
        for (const auto& c : cells_)
            for (const auto& s : c)
                for (const auto& f : faces(s))
                    if (!contains(f)) return false;
        return true;
    }

    // d_i d_j = d_{j-1} d_i for i < j, on every cell
    bool face_identities_hold() const {
        for (const auto& c : cells_)
            for (const auto& s : c)
                for (std::size_t j = 1; j <= s.size(); ++j)
                    for (std::size_t i = 0; i < j; ++i)
                        if (s.size() >= 2 && face(face(s, j), i) != face(face(s, i), j - 1)) return false;
        return true;
    }

    long euler_characteristic() const {
        long chi = 0;
        for (std::size_t d = 0; d < cells_.size(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<long>(cells_[d].size());
        return chi;
    }

private:
    MarkedGroup* g_;
    std::vector<std::set<Simplex>> cells_;
};

// Every strict chain 1 = y_0 < y_1 < ⋯ < y_d of the poset ending in `tops`
// (a down-closed node set) gives [y_0⁻¹y_1|…|y_{d-1}⁻¹y_d].
inline DeltaComplex interval_complex(const IntervalPoset& p, MarkedGroup& g, const Bits& tops) {
    DeltaComplex k(g);
    std::vector<int> chain{0};
    std::function<void()> extend = [&] {
        Simplex s;
        for (std::size_t i = 1; i < chain.size(); ++i)
            s.push_back(g.mul(g.inv(p.element[static_cast<std::size_t>(chain[i - 1])]), p.element[static_cast<std::size_t>(chain[i])]));
        k.insert(s);
        for (int z : (p.above[static_cast<std::size_t>(chain.back())] & tops).members()) {
            if (z == chain.back()) continue;
            chain.push_back(z);
            extend();
            chain.pop_back();
        }
    };
    extend();
    return k;
}

inline DeltaComplex interval_complex(const IntervalPoset& p, MarkedGroup& g) {
    Bits all(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) all.set(i);
    return interval_complex(p, g, all);
}

inline std::string simplex_name(const Simplex& s, const std::function<std::string(int)>& name) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "|" : "") + name(s[i]);
    return out + "]";
}

struct Presentation {
    std::vector<std::string> generators;
    // each relation: words (generator sequences) that are equal
    std::vector<std::vector<std::vector<std::string>>> relations;
};

// Generators are the edges and every 2-simplex [x|y] gives (x)(y) = (xy).
inline Presentation dual_presentation(const DeltaComplex& k, const std::function<std::string(int)>& name) {
    Presentation pr;
    for (const auto& e : k.cells(1)) pr.generators.push_back(name(e[0]));
    for (const auto& t : k.cells(2))
        pr.relations.push_back({{name(t[0]), name(t[1])}, {name(k.group().mul(t[0], t[1]))}});
    return pr;
}

// Tietze reduction to the generators of length one: every element of length
// ≥ 2 is eliminated and its factorizations into atoms become one relation.
inline Presentation reduced_presentation(const DeltaComplex& k, const std::function<std::string(int)>& name,
                                         const std::function<int(int)>& length) {
    Presentation pr;
    std::map<int, std::set<std::vector<int>>> words;  // element -> atom words
    for (const auto& e : k.cells(1))
        if (length(e[0]) == 1) {
            pr.generators.push_back(name(e[0]));
            words[e[0]].insert({e[0]});
        }
    for (std::size_t d = 2; d < static_cast<std::size_t>(k.dimension() + 1); ++d)
        for (const auto& s : k.cells(d)) {
            if (!std::all_of(s.begin(), s.end(), [&](int x) { return length(x) == 1; })) continue;
            words[k.product(s)].insert(s);
        }
    for (const auto& [z, ws] : words) {
        if (ws.size() < 2) continue;
        std::vector<std::vector<std::string>> rel;
        for (const auto& w : ws) {
            std::vector<std::string> named;
            for (int x : w) named.push_back(name(x));
            rel.push_back(std::move(named));
        }
        pr.relations.push_back(std::move(rel));
    }
    return pr;
}

struct ParabolicData {
    std::vector<std::size_t> subset;  // indices into S
    Isometry w_t;
    std::vector<Isometry> interval;  // [1, w_T] computed inside W_T
    bool equals_w_interval = false;  // [1, w_T]^{W_T} = [1, w_T]^W
};

// Δ_W = proper subsets of S for irreducible affine W; w_T is the product of
// T in the order of w.
inline std::vector<ParabolicData> parabolic_data(const AffineInstance& inst) {
    const auto& sys = inst.system();
    const auto& order = inst.cox().order;
    const auto n = order.size();
    std::vector<ParabolicData> out;
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
        ParabolicData pd;
        Isometry wt = Isometry::identity(sys.ambient());
        std::vector<Isometry> gens;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                pd.subset.push_back(order[i]);
                wt = wt * sys.simple()[order[i]];
                gens.push_back(sys.simple()[order[i]]);
            }
        pd.w_t = wt;
        // reflections of W_T: closure of T under conjugation by T
        std::vector<Isometry> refl = gens;
        std::unordered_set<Isometry, IsometryHash> seen(refl.begin(), refl.end());
        for (std::size_t i = 0; i < refl.size(); ++i)
            for (const auto& s : gens) {
                Isometry c = s * refl[i] * s;
                if (seen.insert(c).second) refl.push_back(std::move(c));
            }
        EuclideanGroup::Spec spec;
        spec.ambient = sys.ambient();
        spec.ess = sys.ess();
        spec.top = wt;
        for (const auto& r : refl) spec.generators.emplace_back(r, Generator{});
        EuclideanGroup g(std::move(spec));
        auto p = enumerate_interval(g);
        for (int id : p.element) pd.interval.push_back(g.iso(id));
        auto viaW = exact_lower_interval(sys, wt);
        std::unordered_set<Isometry, IsometryHash> a(pd.interval.begin(), pd.interval.end()), b(viaW.begin(), viaW.end());
        pd.equals_w_interval = a == b;
        out.push_back(std::move(pd));
    }
    return out;
}

enum class ComponentKind { finite, infinite };

inline const char* to_string(ComponentKind k) { return k == ComponentKind::finite ? "finite" : "infinite"; }

struct FiberedComponent {
    ComponentKind kind = ComponentKind::finite;
    std::vector<Simplex> cells;  // traversed portion, in ρ order
    int eta = 0;
    std::size_t period = 0;  // cycle length, or cells per φ-translate
    std::vector<std::size_t> xprime;  // positions of X'_W cells
    std::size_t kprime_first = 0, kprime_last = 0;
    bool resolved = false;  // cycle closed, or both ends left the window
    bool alternates = true;
    bool superior_types = true;    // superior cells have the expected type
    bool phi_period = true;  // ρ^period = φ on the fundamental segment
};

// Interval complex of an affine [1,w] with its window.
class AffineComplex {
public:
    explicit AffineComplex(const EuclideanInterval& e) : e_(&e), g_(e.group.get()), w_(e.group->top()) {
        vertices_ = e.system().base_vertices();
    }

    EuclideanGroup& group() const { return *g_; }
    const EuclideanInterval& interval() const { return *e_; }
    int w() const { return w_; }

    int length(int id) const {
        auto it = len_.find(id);
        if (it != len_.end()) return it->second;
        const int l = reflection_length(g_->iso(id), e_->system().ess());
        len_.emplace(id, l);
        return l;
    }

    bool in_window(int id) const { return e_->poset.node(id).has_value(); }

    int product(const Simplex& s) const {
        int p = 0;
        for (int x : s) p = g_->mul(p, x);
        return p;
    }

    bool superior(const Simplex& s) const { return product(s) == w_; }

    int eta(const Simplex& s) const { return static_cast<int>(s.size()) + (superior(s) ? 0 : 1); }

    Simplex rho(const Simplex& s) const {
        if (superior(s)) return Simplex(s.begin() + 1, s.end());
        Simplex out = s;
        out.push_back(g_->mul(g_->inv(product(s)), w_));
        return out;
    }

    Simplex lambda(const Simplex& s) const {
        if (superior(s)) return Simplex(s.begin(), s.end() - 1);
        Simplex out{g_->mul(w_, g_->inv(product(s)))};
        out.insert(out.end(), s.begin(), s.end());
        return out;
    }

    int phi(int id) const { return g_->mul(g_->inv(w_), g_->mul(id, w_)); }

    Simplex phi(const Simplex& s) const {
        Simplex out;
        for (int x : s) out.push_back(phi(x));
        return out;
    }

    bool fixes_base_vertex(int id) const {
        const Isometry& u = g_->iso(id);
        return std::any_of(vertices_.begin(), vertices_.end(), [&](const Vector& v) { return u(v) == v; });
    }

    bool in_xprime(const Simplex& s) const { return fixes_base_vertex(product(s)); }

    bool in_window(const Simplex& s) const {
        return std::all_of(s.begin(), s.end(), [&](int x) { return in_window(x); });
    }

    // Simplexes of X'_W: chains below window nodes fixing a vertex of C_0.
    DeltaComplex xprime() const {
        const auto& p = e_->poset;
        Bits tops(p.size());
        for (std::size_t v = 0; v < p.size(); ++v)
            if (fixes_base_vertex(p.element[v])) {
                if (!p.certified[v]) throw std::runtime_error("xprime: window too small, a C_0 vertex stabilizer element is not certified");
                tops.set(v);
            }
        return interval_complex(p, *g_, tops);
    }

    // 1: all entries elliptic, one vertical; 2: all elliptic horizontal or hyperbolic
    int superior_type(const Simplex& s) const {
        const Vector& mu = e_->inst->axis().mu();
        bool all_elliptic = true, vertical = false, type2 = true;
        for (int x : s) {
            const Isometry& u = g_->iso(x);
            const bool ell = is_elliptic(u);
            const bool hor = ell && is_horizontal(u, mu);
            if (!ell) all_elliptic = false;
            if (ell && !hor) vertical = true;
            if (ell && !hor) type2 = false;
        }
        if (all_elliptic && vertical) return 1;
        if (type2) return 2;
        return 0;
    }

    // The fibered component through s, walking ρ and λ until the cycle
    // closes or the walk leaves the window; `overshoot` extra φ-periods are
    // walked past each exit to confirm no further X'_W cells.
    FiberedComponent component_through(const Simplex& s, std::size_t max_steps = 100000, std::size_t overshoot = 2) const {
        FiberedComponent c;
        c.eta = eta(s);
        std::deque<Simplex> line{s};
        bool closed = false;
        bool left_exit = false, right_exit = false;
        std::optional<std::size_t> right_exit_at, left_exit_at;
        for (std::size_t step = 0; step < max_steps && !closed; ++step) {
            if (!right_exit) {
                Simplex nx = rho(line.back());
                if (nx == line.front()) {
                    closed = true;
                    break;
                }
                if (!in_window(nx)) right_exit = true;
                else line.push_back(std::move(nx));
            }
            if (!left_exit) {
                Simplex pv = lambda(line.front());
                if (pv == line.back()) {
                    closed = true;
                    break;
                }
                if (!in_window(pv)) left_exit = true;
                else line.push_front(std::move(pv));
            }
            if (left_exit && right_exit) break;
        }
        c.cells.assign(line.begin(), line.end());
        c.kind = closed ? ComponentKind::finite : ComponentKind::infinite;
        c.resolved = closed || (left_exit && right_exit);
        for (std::size_t i = 0; i < c.cells.size(); ++i) {
            if (in_xprime(c.cells[i])) c.xprime.push_back(i);
            if (eta(c.cells[i]) != c.eta) c.alternates = false;
            if (i + 1 < c.cells.size() && superior(c.cells[i]) == superior(c.cells[i + 1])) c.alternates = false;
            if (superior(c.cells[i])) {
                const int t = superior_type(c.cells[i]);
                if (t != (closed ? 2 : 1)) c.superior_types = false;
            }
        }
        if (closed) {
            c.period = c.cells.size();
            c.kprime_first = 0;
            c.kprime_last = c.cells.empty() ? 0 : c.cells.size() - 1;
            return c;
        }
        // fundamental segment from the first superior cell: 2d cells
        auto sup = std::find_if(c.cells.begin(), c.cells.end(), [&](const Simplex& x) { return superior(x); });
        if (sup != c.cells.end()) {
            c.period = 2 * sup->size();
            Simplex x = *sup;
            for (std::size_t i = 0; i < c.period; ++i) x = rho(x);
            c.phi_period = x == phi(*sup);
        }
        if (!c.xprime.empty()) {
            c.kprime_first = c.xprime.front();
            c.kprime_last = c.xprime.back();
        }
        // past the exits no cell may lie in X'_W
        for (int dir : {1, -1}) {
            Simplex x = dir > 0 ? c.cells.back() : c.cells.front();
            for (std::size_t i = 0; i < overshoot * std::max<std::size_t>(c.period, 2); ++i) {
                x = dir > 0 ? rho(x) : lambda(x);
                if (in_xprime(x)) c.resolved = false;
            }
        }
        return c;
    }

    struct Analysis {
        std::vector<FiberedComponent> components;
        DeltaComplex xprime;
        DeltaComplex kprime;
        bool xprime_covered = true;    // every X'_W cell lies on a traversed component
        bool kprime_face_closed = false;
        bool xprime_in_kprime = false;
        bool inverse_maps = true;      // λρ = ρλ = id on K'_W
        std::size_t finite() const {
            return static_cast<std::size_t>(std::count_if(components.begin(), components.end(),
                                                          [](const auto& c) { return c.kind == ComponentKind::finite; }));
        }
        std::size_t infinite() const { return components.size() - finite(); }
        bool resolved() const {
            return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.resolved; });
        }
    };

    // Components through X'_W (every component meets it) and K'_W.
    Analysis analyze() const {
        Analysis a{{}, xprime(), DeltaComplex(*g_)};
        std::set<Simplex> assigned;
        const auto seeds = a.xprime.all_cells();
        for (const auto& s : seeds) {
            if (assigned.count(s)) continue;
            auto c = component_through(s);
            for (auto i : c.xprime) assigned.insert(c.cells[i]);
            if (!assigned.count(s)) a.xprime_covered = false;
            for (std::size_t i = c.kprime_first; i <= c.kprime_last && i < c.cells.size(); ++i) a.kprime.insert(c.cells[i]);
            a.components.push_back(std::move(c));
        }
        std::sort(a.components.begin(), a.components.end(), [](const auto& x, const auto& y) {
            return std::make_tuple(x.kind, x.eta, x.cells.front()) < std::make_tuple(y.kind, y.eta, y.cells.front());
        });
        a.kprime_face_closed = a.kprime.face_closed();
        const auto xcells = a.xprime.all_cells();
        a.xprime_in_kprime = std::all_of(xcells.begin(), xcells.end(), [&](const Simplex& s) { return a.kprime.contains(s); });
        for (const auto& s : a.kprime.all_cells())
            if (lambda(rho(s)) != s || rho(lambda(s)) != s) a.inverse_maps = false;
        return a;
    }

    // K'_W membership by the λ/ρ criterion: X'_W cells on both sides.
    bool in_kprime(const Simplex& s, std::size_t max_steps = 1000) const {
        bool left = false, right = false;
        Simplex x = s;
        for (std::size_t i = 0; i < max_steps && !right; ++i, x = rho(x)) right = in_xprime(x);
        x = s;
        for (std::size_t i = 0; i < max_steps && !left; ++i, x = lambda(x)) left = in_xprime(x);
        return left && right;
    }

private:
    const EuclideanInterval* e_;
    EuclideanGroup* g_;
    int w_;
    std::vector<Vector> vertices_;
    mutable std::unordered_map<int, int> len_;
};

}  // namespace affdual
