#pragma once

#include <affdual/morse.hpp>

namespace affdual {

enum class Variant { W, D, F, C };

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::W: return "W";
        case Variant::D: return "D";
        case Variant::F: return "F";
        case Variant::C: return "C";
    }
    return "?";
}

inline Variant parse_variant(const std::string& s) {
    if (s == "W") return Variant::W;
    if (s == "D") return Variant::D;
    if (s == "F") return Variant::F;
    if (s == "C") return Variant::C;
    throw std::invalid_argument("unknown variant '" + s + "' (expected W, D, F or C)");
}

// Translations of the windowed [1,w]^W.
inline std::vector<Isometry> translations_in_interval(const EuclideanInterval& e) {
    std::vector<Isometry> out;
    for (std::size_t v = 0; v < e.poset.size(); ++v) {
        const Isometry& u = e.iso(static_cast<int>(v));
        if (u.is_translation() && !u.is_identity()) out.push_back(u);
    }
    std::sort(out.begin(), out.end(), [](const Isometry& a, const Isometry& b) { return a.translation_part() < b.translation_part(); });
    return out;
}

struct FactorTranslation {
    Isometry t;
    std::vector<Isometry> factors;  // one per horizontal component
};

// t_i: axial part divided by k, V_i part kept, other V_j parts dropped.
inline std::vector<FactorTranslation> factor_translations(const std::vector<Isometry>& ts, const AffineInstance& inst) {
    const auto& dec = inst.decomposition();
    const Vector& mu = inst.axis().mu();
    const auto k = dec.components.size();
    std::vector<FactorTranslation> out;
    for (const auto& t : ts) {
        const Vector& b = t.translation_part();
        const Vector axial = project_onto_span(b, {mu});
        FactorTranslation ft{t, {}};
        Isometry prod = Isometry::identity(t.dim());
        for (const auto& c : dec.components) {
            Vector v = make_scalar(1, static_cast<long>(k)) * axial + project_onto_span(b, c.basis);
            ft.factors.push_back(Isometry::translation(v));
            prod = prod * ft.factors.back();
        }
        if (prod != t) throw std::logic_error("factor_translations: factors do not multiply back to t");
        out.push_back(std::move(ft));
    }
    return out;
}

// Horizontal reflections with offsets within m of the axis value.
inline std::vector<Isometry> horizontal_reflections(const AffineInstance& inst, int m) {
    std::vector<Isometry> out;
    for (const auto& a : inst.axis().horizontal_roots()) {
        const Scalar c = dot(a, inst.axis().a());
        const BigInt base = c.get_num() / c.get_den();
        for (long d = -m; d <= m + 1; ++d) out.push_back(reflection_in({a, Scalar(base + d)}));
    }
    return out;
}

struct VariantInterval {
    Variant variant = Variant::W;
    int k = 1;  // weight scale: reflections k, T 2k, T_F 2
    std::unique_ptr<EuclideanGroup> group;
    IntervalPoset poset;
    std::unordered_set<Isometry, IsometryHash> elements;

    bool contains(const Isometry& u) const { return elements.count(u) > 0; }
    const Isometry& iso(int node) const { return group->iso(poset.element[static_cast<std::size_t>(node)]); }
};

struct CrystallographicData {
    const EuclideanInterval* e = nullptr;
    std::vector<Isometry> T;
    std::vector<FactorTranslation> TF;
    std::vector<Isometry> horizontal;  // R_hor near the axis
    int k = 1;
};

inline CrystallographicData crystallographic_data(const EuclideanInterval& e) {
    CrystallographicData d;
    d.e = &e;
    d.k = static_cast<int>(e.inst->decomposition().components.size());
    d.T = translations_in_interval(e);
    d.TF = factor_translations(d.T, *e.inst);
    d.horizontal = horizontal_reflections(*e.inst, e.m);
    return d;
}

// Elliptic elements of C use reflections only in their geodesics, so their
// down-set is the W one; certified when it lies in the poset.
inline void certify_variant(VariantInterval& vi, const CoxeterSystem& sys) {
    vi.poset.certified.assign(vi.poset.size(), false);
    for (std::size_t v = 0; v < vi.poset.size(); ++v) {
        const Isometry& u = vi.iso(static_cast<int>(v));
        if (!is_elliptic(u)) continue;
        auto down = exact_down_set(sys, u);
        if (!down) continue;
        vi.poset.certified[v] = std::all_of(down->begin(), down->end(), [&](const Isometry& x) { return vi.contains(x); });
    }
}

inline VariantInterval weighted_interval(const CrystallographicData& d, Variant variant, EnumerationLimits limits = {}) {
    const auto& e = *d.e;
    const auto& sys = e.system();
    EuclideanGroup::Spec spec;
    spec.ambient = sys.ambient();
    spec.ess = sys.ess();
    spec.top = e.w();
    spec.scale = d.k;
    spec.mode = LengthMode::weighted;
    std::unordered_set<Isometry, IsometryHash> seen;
    auto add = [&](const Isometry& u, int weight, GeneratorKind kind, const std::string& name) {
        if (!seen.insert(u).second) return;
        Generator g;
        g.weight = weight;
        g.kind = kind;
        g.name = name;
        spec.generators.emplace_back(u, g);
    };
    const bool all_reflections = variant == Variant::W || variant == Variant::C;
    if (all_reflections)
        for (const auto& r : e.reflections) add(r.iso, d.k, GeneratorKind::reflection, r.name);
    if (variant != Variant::W)
        for (std::size_t i = 0; i < d.horizontal.size(); ++i)
            add(d.horizontal[i], d.k, GeneratorKind::reflection, "h" + std::to_string(i));
    if (variant == Variant::D)
        for (std::size_t i = 0; i < d.T.size(); ++i) add(d.T[i], 2 * d.k, GeneratorKind::translation, "t" + std::to_string(i));
    if (variant == Variant::F || variant == Variant::C)
        for (std::size_t i = 0; i < d.TF.size(); ++i)
            for (std::size_t j = 0; j < d.TF[i].factors.size(); ++j)
                add(d.TF[i].factors[j], 2, GeneratorKind::factor_translation, "t" + std::to_string(i) + "_" + std::to_string(j + 1));
    VariantInterval vi;
    vi.variant = variant;
    vi.k = d.k;
    vi.group = std::make_unique<EuclideanGroup>(std::move(spec));
    vi.poset = enumerate_interval(*vi.group, limits);
    vi.poset.window = e.m;
    for (int id : vi.poset.element) vi.elements.insert(vi.group->iso(id));
    certify_variant(vi, sys);
    return vi;
}

enum class Membership { member, non_member, undecided };

// Exact membership in [1,w]^W where decidable: window nodes are members;
// l_L additivity failing rules membership out; with both sides elliptic
// l_W = l_L decides it.
inline Membership w_membership(const EuclideanInterval& e, const Isometry& u) {
    if (auto id = e.group->find(u); id && e.poset.node(*id)) return Membership::member;
    const auto& ess = e.system().ess();
    const Isometry rest = u.inverse() * e.w();
    const int total = reflection_length(e.w(), ess);
    if (reflection_length(u, ess) + reflection_length(rest, ess) != total) return Membership::non_member;
    if (is_elliptic(u) && is_elliptic(rest)) {
        // both factors are products of reflections of W fixing their fixed sets
        auto a = exact_down_set(e.system(), u);
        auto b = exact_down_set(e.system(), rest);
        if (!a || !b) return Membership::non_member;
        return Membership::member;
    }
    return Membership::undecided;
}

struct IdentityReport {
    int k = 1;
    std::size_t w_size = 0, d_size = 0, f_size = 0, c_size = 0;
    std::array<int, 4> top_weight{};  // unscaled weight of w times k
    bool intersection_holds = true;   // [1,w]^D = [1,w]^W ∩ [1,w]^F
    bool union_holds = true;          // [1,w]^C = [1,w]^W ∪ [1,w]^F
    bool w_in_c = true, f_in_c = true;
    std::size_t checked = 0;
    std::size_t undecided = 0;
    std::vector<std::string> violations;
    bool c_strictly_larger = false;   // some element of F outside W
    std::optional<Isometry> f_not_w;
    bool collapse = false;            // k = 1: D = F and W = C elementwise
};

inline IdentityReport verify_union_intersection(const EuclideanInterval& e, const VariantInterval& W, const VariantInterval& D,
                                                const VariantInterval& F, const VariantInterval& C) {
    IdentityReport rep;
    rep.k = W.k;
    rep.w_size = W.poset.size();
    rep.d_size = D.poset.size();
    rep.f_size = F.poset.size();
    rep.c_size = C.poset.size();
    rep.top_weight = {W.poset.total, D.poset.total, F.poset.total, C.poset.total};
    auto inW = [&](const Isometry& u) { return w_membership(e, u); };
    // D = W ∩ F on the finite F
    for (const auto& u : F.elements) {
        ++rep.checked;
        const auto m = inW(u);
        if (m == Membership::undecided) {
            ++rep.undecided;
            continue;
        }
        if ((m == Membership::member) != D.contains(u)) {
            rep.intersection_holds = false;
            rep.violations.push_back("D vs W∩F at " + u.str());
        }
        if (m == Membership::non_member && !rep.f_not_w) {
            rep.c_strictly_larger = true;
            rep.f_not_w = u;
        }
    }
    for (const auto& u : D.elements)
        if (!F.contains(u)) {
            rep.intersection_holds = false;
            rep.violations.push_back("D element outside F: " + u.str());
        }
    // C = W ∪ F, on elements of C
    for (std::size_t v = 0; v < C.poset.size(); ++v) {
        const Isometry& u = C.iso(static_cast<int>(v));
        ++rep.checked;
        if (F.contains(u)) continue;
        const auto m = inW(u);
        if (m == Membership::undecided) {
            ++rep.undecided;
            continue;
        }
        if (m == Membership::non_member) {
            rep.union_holds = false;
            rep.violations.push_back("C element outside W∪F: " + u.str());
        }
    }
    for (const auto& u : W.elements)
        if (!C.contains(u)) rep.w_in_c = false;
    for (const auto& u : F.elements)
        if (!C.contains(u)) rep.f_in_c = false;
    if (!rep.w_in_c || !rep.f_in_c) rep.union_holds = false;
    rep.collapse = D.elements == F.elements && W.elements == C.elements;
    return rep;
}

// A finite variant whose element set does not change from window m to m+1
// is complete: every element is certified.
inline bool certify_if_stable(VariantInterval& vi, const VariantInterval& next) {
    if (vi.elements != next.elements) return false;
    certify_all(vi.poset);
    return true;
}

// Unscaled weight of a generator: 1, 2 or 2/k.
inline Scalar unscaled_weight(const Generator& g, int k) { return make_scalar(g.weight, k); }

// p_mu(t_i) = p_mu(t)/k, p_Vi(t_i) = p_Vi(t), p_Vj(t_i) = 0.
inline bool factor_identities_hold(const FactorTranslation& ft, const AffineInstance& inst) {
    const auto& dec = inst.decomposition();
    const Vector& mu = inst.axis().mu();
    const Scalar k(static_cast<long>(dec.components.size()));
    const Vector& b = ft.t.translation_part();
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
        const Vector& bi = ft.factors[i].translation_part();
        if (project_onto_span(bi, {mu}) != Scalar(1) / k * project_onto_span(b, {mu})) return false;
        for (std::size_t j = 0; j < dec.components.size(); ++j) {
            const Vector pj = project_onto_span(bi, dec.components[j].basis);
            if (i == j ? pj != project_onto_span(b, dec.components[j].basis) : !is_zero(pj)) return false;
        }
    }
    return true;
}

// Conjugation by w permutes T.
inline bool translations_phi_invariant(const std::vector<Isometry>& ts, const Isometry& w) {
    std::unordered_set<Isometry, IsometryHash> set(ts.begin(), ts.end());
    const Isometry wi = w.inverse();
    return std::all_of(ts.begin(), ts.end(), [&](const Isometry& t) { return set.count(wi * t * w) && set.count(w * t * wi); });
}

struct DCensus {
    std::size_t horizontal_elliptic = 0, translation_product = 0, other = 0;
};

// Elements of [1,w]^D: horizontal elliptic, or a translation times a
// horizontal elliptic element.
inline DCensus d_census(const VariantInterval& D, const Vector& mu) {
    DCensus c;
    for (const auto& u : D.elements) {
        if (is_elliptic(u) && is_horizontal(u, mu)) ++c.horizontal_elliptic;
        else if (!is_elliptic(u) && u.linear() * mu == mu) ++c.translation_product;
        else ++c.other;
    }
    return c;
}

struct CrystallographicLatticeReport {
    Variant variant = Variant::C;
    BowtieReport bowtie;
    std::size_t certified = 0;
};

// Bowtie search on certified minimal upper bounds.
inline CrystallographicLatticeReport lattice_check_crystallographic(const VariantInterval& vi) {
    CrystallographicLatticeReport rep;
    rep.variant = vi.variant;
    rep.certified = static_cast<std::size_t>(std::count(vi.poset.certified.begin(), vi.poset.certified.end(), true));
    rep.bowtie = bowtie_search(vi.poset, certified_oracle(vi.poset));
    return rep;
}

}  // namespace affdual
