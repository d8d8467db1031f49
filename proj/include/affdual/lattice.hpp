#pragma once

#include <affdual/affine_instance.hpp>

namespace affdual {

enum class BoundStatus { exact, undefined, inconclusive };

struct BoundResult {
    BoundStatus status = BoundStatus::inconclusive;
    std::optional<int> node;
    std::vector<int> candidates;  // maximal lower / minimal upper bounds found
};

inline std::vector<int> maximal_of(const IntervalPoset& p, const Bits& set) {
    std::vector<int> out;
    for (int z : set.members())
        if ((p.above[static_cast<std::size_t>(z)] & set).count() == 1) out.push_back(z);
    return out;
}

inline std::vector<int> minimal_of(const IntervalPoset& p, const Bits& set) {
    std::vector<int> out;
    for (int z : set.members())
        if ((p.below[static_cast<std::size_t>(z)] & set).count() == 1) out.push_back(z);
    return out;
}

// Meet from the intersection of down-sets; exact when both are certified.
inline BoundResult meet(const IntervalPoset& p, int u, int v) {
    BoundResult r;
    const Bits common = p.below[static_cast<std::size_t>(u)] & p.below[static_cast<std::size_t>(v)];
    r.candidates = maximal_of(p, common);
    if (!p.certified[static_cast<std::size_t>(u)] || !p.certified[static_cast<std::size_t>(v)]) return r;
    r.status = r.candidates.size() == 1 ? BoundStatus::exact : BoundStatus::undefined;
    if (r.candidates.size() == 1) r.node = r.candidates.front();
    return r;
}

// Join from in-window up-sets; never exact unless every node is certified
// and the interval is finite.
inline BoundResult join(const IntervalPoset& p, int u, int v, bool finite) {
    BoundResult r;
    const Bits common = p.above[static_cast<std::size_t>(u)] & p.above[static_cast<std::size_t>(v)];
    r.candidates = minimal_of(p, common);
    if (!finite) return r;
    r.status = r.candidates.size() == 1 ? BoundStatus::exact : BoundStatus::undefined;
    if (r.candidates.size() == 1) r.node = r.candidates.front();
    return r;
}

// Decides whether z is a minimal upper bound of {u, v} in the full interval.
// Returns nullopt when the window cannot settle it.
using MinimalityOracle = std::function<std::optional<bool>(int u, int v, int z)>;

struct Bowtie {
    int u = 0, v = 0, z1 = 0, z2 = 0;
};

struct BowtieReport {
    std::size_t pairs_checked = 0;
    std::size_t candidates = 0;     // pairs with ≥ 2 minimal upper bounds in window
    std::size_t inconclusive = 0;   // candidates the oracle could not settle
    std::optional<Bowtie> witness;  // certified
};

inline BowtieReport bowtie_search(const IntervalPoset& p, const MinimalityOracle& minimal, bool stop_at_first = true) {
    BowtieReport rep;
    const auto n = static_cast<int>(p.size());
    for (int u = 1; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (u == p.top_node || v == p.top_node || p.leq(u, v) || p.leq(v, u)) continue;
            ++rep.pairs_checked;
            const Bits common = p.above[static_cast<std::size_t>(u)] & p.above[static_cast<std::size_t>(v)];
            auto mins = minimal_of(p, common);
            if (mins.size() < 2) continue;
            ++rep.candidates;
            std::vector<int> proven;
            bool unsettled = false;
            for (int z : mins) {
                auto ok = minimal(u, v, z);
                if (!ok) unsettled = true;
                else if (*ok) proven.push_back(z);
            }
            if (proven.size() >= 2) {
                if (!rep.witness) rep.witness = Bowtie{u, v, proven[0], proven[1]};
                if (stop_at_first) return rep;
            } else if (unsettled) {
                ++rep.inconclusive;
            }
        }
    return rep;
}

// Exact when z is margin-certified: its windowed down-set is the true one.
inline MinimalityOracle certified_oracle(const IntervalPoset& p) {
    return [&p](int u, int v, int z) -> std::optional<bool> {
        if (!p.certified[static_cast<std::size_t>(z)]) return std::nullopt;
        const Bits common = p.above[static_cast<std::size_t>(u)] & p.above[static_cast<std::size_t>(v)];
        return (p.below[static_cast<std::size_t>(z)] & common).count() == 1;
    };
}

namespace detail {

// Rank-2 elements y of W with u, v ≤ y ≤ z, for distinct reflections u, v.
// Intersecting mirrors: y is a rotation of the finite dihedral parabolic
// fixing H_u ∩ H_v. Parallel mirrors: y is a translation by m·2α/|α|².
inline bool has_rank2_bound_below(const CoxeterSystem& sys, const Isometry& u, const Isometry& v, const Isometry& z) {
    const auto& ess = sys.ess();
    auto is_refl = [&](const Isometry& x) { return reflection_length(x, ess) == 1; };
    const Isometry uv = u * v;
    if (is_elliptic(uv)) {
        std::vector<Isometry> refl;
        for (const auto& m : mirrors_containing(sys, invariants(uv).fix)) refl.push_back(reflection_in(m));
        for (const auto& a : refl)
            for (const auto& b : refl) {
                if (a == b) continue;
                const Isometry y = a * b;
                if (is_refl(y.inverse() * z)) return true;
            }
        return false;
    }
    const auto mu = sys.mirror_of(u);
    if (!mu) throw std::logic_error("has_rank2_bound_below: u is not a reflection of W");
    const Isometry step = reflection_in({mu->root, 1}) * reflection_in({mu->root, 0});
    auto power = [&](long m) {
        Isometry t = Isometry::identity(sys.ambient());
        const Isometry s = m >= 0 ? step : step.inverse();
        for (long i = 0; i < std::abs(m); ++i) t = t * s;
        return t;
    };
    // t_m⁻¹ z is a reflection: linear part fixed, the translation solvability
    // is affine in m, so it holds for no m, one m, or all m
    const Isometry z0 = z, z1 = step.inverse() * z;
    const Matrix d = displacement_matrix(z0);
    if (rank(d) != 1) return false;
    auto r0 = row_reduce(d, -z0.translation_part());
    auto r1 = row_reduce(d, z0.translation_part() - z1.translation_part());
    std::optional<Scalar> special;
    bool always = true;
    for (std::size_t i = r0.pivots.size(); i < d.rows(); ++i) {
        if (r1.rhs[i] == 0) {
            if (r0.rhs[i] != 0) return false;
            continue;
        }
        always = false;
        special = -r0.rhs[i] / r1.rhs[i];
        break;
    }
    if (always) return true;
    if (!special || !is_integer(*special) || *special == 0) return false;
    return is_refl(power(special->get_num().get_si()).inverse() * z);
}

}  // namespace detail

// Exact minimality for affine W. Certified z: in-window minimality. Atom
// pairs: rank-2 z is minimal outright; rank-3 z is minimal iff no rank-2
// common upper bound lies below it.
inline MinimalityOracle affine_oracle(const CoxeterSystem& sys, const IntervalPoset& p, const EuclideanGroup& g) {
    auto certified = certified_oracle(p);
    return [&sys, &p, &g, certified](int u, int v, int z) -> std::optional<bool> {
        if (auto r = certified(u, v, z)) return r;
        const auto ru = p.rank[static_cast<std::size_t>(u)], rv = p.rank[static_cast<std::size_t>(v)];
        const auto rz = p.rank[static_cast<std::size_t>(z)];
        if (ru != 1 || rv != 1) return std::nullopt;
        if (rz == 2) return true;
        if (rz != 3) return std::nullopt;
        return !detail::has_rank2_bound_below(sys, g.iso(p.element[static_cast<std::size_t>(u)]),
                                              g.iso(p.element[static_cast<std::size_t>(v)]),
                                              g.iso(p.element[static_cast<std::size_t>(z)]));
    };
}

struct BalanceReport {
    std::size_t checked = 0;
    std::vector<int> violations;
};

// h ∈ [1,w] iff w·h⁻¹ ∈ [1,w], on certified nodes.
inline BalanceReport balance_check(const IntervalPoset& p, MarkedGroup& g) {
    BalanceReport rep;
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (!p.certified[v]) continue;
        ++rep.checked;
        const int h = p.element[v];
        const int c = g.mul(g.top(), g.inv(h));
        if (!p.node(c)) rep.violations.push_back(static_cast<int>(v));
    }
    return rep;
}

}  // namespace affdual
