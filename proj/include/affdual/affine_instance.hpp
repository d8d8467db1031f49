#pragma once

#include <affdual/axis.hpp>
#include <affdual/interval.hpp>

namespace affdual {

// First ordering of S (lexicographic on generator indices) whose base
// chamber is axial.
inline std::vector<std::size_t> default_order(const CoxeterSystem& sys) {
    auto order = natural_order(sys);
    if (!sys.affine()) return order;
    do {
        auto c = coxeter_element(sys, order);
        if (Axis(sys, c).base_is_axial()) return order;
    } while (std::next_permutation(order.begin(), order.end()));
    throw std::logic_error("default_order: no ordering with an axial base chamber");
}

class AxisUnavailable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Affine Coxeter system with a chosen Coxeter element and its axis.
class AffineInstance {
public:
    explicit AffineInstance(CoxeterType type, std::optional<std::vector<std::size_t>> order = std::nullopt)
        : sys_(type),
          cox_(coxeter_element(require_affine(sys_), order ? *order : default_order(sys_))),
          axis_(sys_, cox_),
          dec_(horizontal_decomposition(sys_, axis_)) {
        if (!axis_.base_is_axial())
            throw AxisUnavailable("the base chamber is not axial for order " + order_string());
    }

    const CoxeterSystem& system() const { return sys_; }
    const CoxeterElement& cox() const { return cox_; }
    const Axis& axis() const { return axis_; }
    const HorizontalDecomposition& decomposition() const { return dec_; }
    std::size_t ambient() const { return sys_.ambient(); }

    std::string order_string() const {
        std::string s;
        for (auto i : cox_.order) s += (s.empty() ? "" : ",") + sys_.names()[i];
        return s;
    }

    std::vector<ReflectionRecord> reflections(int m) const { return enumerate_reflections(sys_, cox_, axis_, m); }

    // W marked by the windowed reflections of R_0.
    EuclideanGroup w_group(int m) const { return w_group(reflections(m)); }

    EuclideanGroup w_group(const std::vector<ReflectionRecord>& refl) const {
        EuclideanGroup::Spec spec;
        spec.ambient = sys_.ambient();
        spec.ess = sys_.ess();
        spec.top = cox_.w;
        for (const auto& r : refl) {
            Generator g;
            g.name = r.name;
            g.kind = GeneratorKind::reflection;
            spec.generators.emplace_back(r.iso, g);
        }
        return EuclideanGroup(std::move(spec));
    }

    bool horizontal(const Isometry& u) const { return horizontal_direction(u, axis_.mu()); }

    static bool horizontal_direction(const Isometry& u, const Vector& mu) {
        // elliptic u is horizontal when μ lies in the direction of Fix(u)
        auto inv = invariants(u);
        return inv.kind == IsometryKind::elliptic && inv.fix.direction_contains(mu);
    }

private:
    static const CoxeterSystem& require_affine(const CoxeterSystem& s) {
        if (!s.affine()) throw std::invalid_argument("AffineInstance: type is not affine");
        return s;
    }

    CoxeterSystem sys_;
    CoxeterElement cox_;
    Axis axis_;
    HorizontalDecomposition dec_;
};

// Mirrors of W containing the affine subspace f.
inline std::vector<Mirror> mirrors_containing(const CoxeterSystem& sys, const AffineSubspace& f) {
    std::vector<Mirror> out;
    for (const auto& r : sys.positive_roots()) {
        bool ortho = true;
        for (const auto& d : f.directions())
            if (dot(r, d) != 0) ortho = false;
        if (!ortho) continue;
        Scalar k = dot(r, f.base_point());
        if (is_integer(k) && (sys.affine() || k == 0)) out.push_back({r, k});
    }
    return out;
}

namespace detail {

// W-mirrors {⟨α,x⟩ = k} with r_{α,k} ≤_L u. For fixed α the condition holds
// for no k, one k, or all k; nullopt when some root gives all k.
inline std::optional<std::vector<Mirror>> mirrors_below_L(const CoxeterSystem& sys, const Isometry& u) {
    const int target = reflection_length(u, sys.ess()) - 1;
    std::vector<Mirror> out;
    for (const auto& a : sys.positive_roots()) {
        auto len = [&](const Scalar& k) { return reflection_length(reflection_in({a, k}) * u, sys.ess()); };
        const Isometry t0 = reflection_in({a, 0}) * u;
        const Isometry t1 = reflection_in({a, 1}) * u;
        // l(t_k u) = rank + 2·[k ∉ S], S the solvable set: empty, a point k*, or all
        const int hits = (len(0) == target) + (len(1) == target) + (len(2) == target);
        if (hits >= 2) return std::nullopt;
        const Matrix m = displacement_matrix(t0);
        auto rc = row_reduce(m, -t0.translation_part());
        auto rd = row_reduce(m, t0.translation_part() - t1.translation_part());
        for (std::size_t i = rc.pivots.size(); i < m.rows(); ++i) {
            if (rd.rhs[i] == 0) continue;
            const Scalar k = -rc.rhs[i] / rd.rhs[i];
            if (is_integer(k) && len(k) == target) out.push_back({a, k});
            break;
        }
    }
    return out;
}

}  // namespace detail

// The exact interval [1,u]^W when it is finite. Reflections below u in W lie
// below u in L, so the L-filtered reflections carry every minimal
// factorization; nullopt when that set is infinite or the W-length of u
// exceeds its L-length.
inline std::optional<std::vector<Isometry>> exact_down_set(const CoxeterSystem& sys, const Isometry& u) {
    std::vector<Mirror> mirrors;
    if (is_elliptic(u)) {
        mirrors = mirrors_containing(sys, invariants(u).fix);
    } else {
        auto m = detail::mirrors_below_L(sys, u);
        if (!m) return std::nullopt;
        mirrors = std::move(*m);
    }
    EuclideanGroup::Spec spec;
    spec.ambient = sys.ambient();
    spec.ess = sys.ess();
    spec.top = u;
    for (const auto& m : mirrors) spec.generators.emplace_back(reflection_in(m), Generator{});
    EuclideanGroup g(std::move(spec));
    Completer can(g, EnumerationLimits{}.max_search_states);
    const int l = reflection_length(u, sys.ess());
    if (!can(g.top(), l)) return std::nullopt;
    auto p = enumerate_interval(g);
    std::vector<Isometry> out;
    for (int gid : p.element) out.push_back(g.iso(gid));
    return out;
}

// The exact interval [1,u]^W of an elliptic u.
inline std::vector<Isometry> exact_lower_interval(const CoxeterSystem& sys, const Isometry& u) {
    if (!is_elliptic(u)) throw std::invalid_argument("exact_lower_interval: u is hyperbolic");
    return *exact_down_set(sys, u);
}

// Margin certificate: u is certified when its exact down-set is finite and
// lies in the windowed poset. Then the windowed [1,u] is the true one,
// covers included, since every cover label is a reflection below u.
inline void certify_margin(IntervalPoset& p, const EuclideanGroup& g, const CoxeterSystem& sys) {
    p.certified.assign(p.size(), false);
    for (std::size_t v = 0; v < p.size(); ++v) {
        auto down = exact_down_set(sys, g.iso(p.element[v]));
        if (!down) continue;
        bool inside = true;
        for (const auto& x : *down) {
            auto id = g.find(x);
            if (!id || !p.node(*id)) {
                inside = false;
                break;
            }
        }
        p.certified[v] = inside;
    }
}

}  // namespace affdual
