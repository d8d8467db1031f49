#pragma once

#include <affdual/homology.hpp>

namespace affdual {

struct Matching {
    std::vector<std::pair<Simplex, Simplex>> pairs;  // (τ, σ), τ a facet of σ
};

struct MatchingCertificate {
    bool involution = true;        // μμ = id, no fixed point, μ stays in K' ∖ X'
    bool dimension_consistent = true;
    bool regular_facets = true;
    std::optional<std::pair<Simplex, Simplex>> irregular;
    bool critical_is_xprime = true;
    bool acyclic = true;
    std::vector<Simplex> cycle;    // witness when not acyclic
    bool proper = true;            // finite
    bool xi_fact1 = true;
    bool xi_fact2 = true;
    bool xi_acyclic = true;        // both facts hold, so ξ rules out cycles
    bool depth_finite = true;      // finite depth on cases (3)/(4)
    std::size_t depth_vacuous = 0;  // cells where δ = d was reached through the empty clause
    std::size_t window_decisions = 0;  // minimal-reflection choices on uncertified elements
    std::array<std::size_t, 4> cases{};  // how often each case of μ fired

    bool ok() const {
        return involution && dimension_consistent && regular_facets && critical_is_xprime && acyclic && proper &&
               xi_fact1 && xi_fact2 && depth_finite;
    }
};

namespace detail {

// Oriented Hasse diagram with matched edges reversed; returns a directed cycle.
inline std::optional<std::vector<Simplex>> find_cycle(const DeltaComplex& k, const std::set<std::pair<Simplex, Simplex>>& matched) {
    const auto cells = k.all_cells();
    std::map<Simplex, std::size_t> idx;
    for (std::size_t i = 0; i < cells.size(); ++i) idx[cells[i]] = i;
    std::vector<std::vector<std::size_t>> out(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j)
        for (const auto& f : k.faces(cells[j])) {
            auto it = idx.find(f);
            if (it == idx.end()) continue;
            if (matched.count({f, cells[j]})) out[it->second].push_back(j);
            else out[j].push_back(it->second);
        }
    std::vector<int> color(cells.size(), 0);
    std::vector<std::size_t> parent(cells.size(), 0);
    for (std::size_t s = 0; s < cells.size(); ++s) {
        if (color[s]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
        color[s] = 1;
        while (!stack.empty()) {
            auto& [v, e] = stack.back();
            if (e == out[v].size()) {
                color[v] = 2;
                stack.pop_back();
                continue;
            }
            const std::size_t u = out[v][e++];
            if (color[u] == 1) {
                std::vector<Simplex> cyc{cells[u]};
                for (auto it = stack.rbegin(); it != stack.rend() && it->first != u; ++it) cyc.push_back(cells[it->first]);
                std::reverse(cyc.begin(), cyc.end());
                return cyc;
            }
            if (color[u] == 0) {
                color[u] = 1;
                stack.emplace_back(u, 0);
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

// The matching μ on K'_W ∖ X'_W for an axial order on R_0.
class MorseMatching {
public:
    MorseMatching(const AffineComplex& k, const ReflectionOrder& order) : k_(&k), order_(&order) {
        auto& g = k.group();
        for (std::size_t i = 0; i < order.size(); ++i) rank_[g.intern(order.items[i])] = static_cast<int>(i);
    }

    int rank(int reflection) const {
        auto it = rank_.find(reflection);
        if (it == rank_.end()) throw std::invalid_argument("MorseMatching: reflection outside the order");
        return it->second;
    }

    bool precedes(int a, int b) const { return rank(a) < rank(b); }

    // ≺-minimal reflection below x among window nodes.
    int min_reflection_below(int x) const {
        const auto& e = k_->interval();
        auto node = e.poset.node(x);
        if (!node) throw std::runtime_error("min_reflection_below: element outside the window");
        if (!e.poset.certified[static_cast<std::size_t>(*node)]) ++window_decisions_;
        std::optional<int> best;
        for (int v : e.poset.below[static_cast<std::size_t>(*node)].members())
            if (e.poset.rank[static_cast<std::size_t>(v)] == 1) {
                const int r = e.poset.element[static_cast<std::size_t>(v)];
                if (!best || precedes(r, *best)) best = r;
            }
        if (!best) throw std::logic_error("min_reflection_below: no reflection below");
        return *best;
    }

    // Reflections below x, exact on certified elements.
    std::vector<int> reflections_below(int x) const {
        const auto& e = k_->interval();
        auto node = e.poset.node(x);
        if (!node) throw std::runtime_error("reflections_below: element outside the window");
        if (!e.poset.certified[static_cast<std::size_t>(*node)]) ++window_decisions_;
        std::vector<int> out;
        for (int v : e.poset.below[static_cast<std::size_t>(*node)].members())
            if (e.poset.rank[static_cast<std::size_t>(v)] == 1) out.push_back(e.poset.element[static_cast<std::size_t>(v)]);
        return out;
    }

    struct Depth {
        std::optional<std::size_t> value;  // 1-based; nullopt is ∞
        bool vacuous = false;              // reached δ = d through the empty clause
    };

    Depth depth(const Simplex& s) const {
        if (!k_->superior(s)) throw std::invalid_argument("depth: simplex is inferior");
        Depth out;
        const auto d = s.size();
        for (std::size_t delta = 1; delta <= d; ++delta) {
            const int x = s[delta - 1];
            if (k_->length(x) >= 2) {
                out.value = delta;
                return out;
            }
            // ℓ(x_1) = … = ℓ(x_δ) = 1 holds here
            if (delta == d) {
                out.value = delta;
                out.vacuous = true;
                return out;
            }
            bool below_all = true;
            for (int r : reflections_below(s[delta]))
                if (!precedes(x, r)) below_all = false;
            if (below_all) {
                out.value = delta;
                return out;
            }
        }
        return out;
    }

    int which_case(const Simplex& s) const {
        if (!k_->superior(s)) return 1;
        if (!k_->in_xprime(k_->rho(s))) return 2;
        auto dp = depth(s);
        if (!dp.value) return 0;
        return k_->length(s[*dp.value - 1]) >= 2 ? 3 : 4;
    }

    Simplex mu(const Simplex& s) const {
        if (k_->in_xprime(s)) throw std::invalid_argument("mu: simplex lies in X'_W");
        if (!k_->superior(s)) return k_->lambda(s);
        if (!k_->in_xprime(k_->rho(s))) return k_->rho(s);
        auto dp = depth(s);
        if (!dp.value) throw std::logic_error("mu: infinite depth on a superior simplex next to X'_W");
        const std::size_t i = *dp.value - 1;
        auto& g = k_->group();
        Simplex out(s.begin(), s.begin() + static_cast<long>(i));
        if (k_->length(s[i]) >= 2) {
            const int y = min_reflection_below(s[i]);
            out.push_back(y);
            out.push_back(g.mul(g.inv(y), s[i]));
            out.insert(out.end(), s.begin() + static_cast<long>(i) + 1, s.end());
        } else {
            out.push_back(g.mul(s[i], s[i + 1]));
            out.insert(out.end(), s.begin() + static_cast<long>(i) + 2, s.end());
        }
        return out;
    }

    // Increasing factorization of x: the lexicographically first chain of [1,x].
    std::vector<int> increasing_factorization(int x) const {
        const auto& e = k_->interval();
        auto node = e.poset.node(x);
        if (!node) throw std::runtime_error("increasing_factorization: element outside the window");
        auto& g = k_->group();
        std::vector<int> out;
        for (int v = 0; v != *node;) {
            const Cover* best = nullptr;
            for (const auto& c : e.poset.up[static_cast<std::size_t>(v)])
                if (e.poset.leq(c.to, *node) &&
                    (!best || precedes(g.generators()[static_cast<std::size_t>(c.gen)].element,
                                       g.generators()[static_cast<std::size_t>(best->gen)].element)))
                    best = &c;
            out.push_back(g.generators()[static_cast<std::size_t>(best->gen)].element);
            v = best->to;
        }
        return out;
    }

    std::vector<int> xi(const Simplex& s) const {
        const Simplex sup = k_->superior(s) ? s : k_->lambda(s);
        std::vector<int> out;
        for (int x : sup) {
            auto f = increasing_factorization(x);
            out.insert(out.end(), f.begin(), f.end());
        }
        return out;
    }

    // ⊴ as a sort key: larger maximal reflection first, then later position,
    // then lexicographic by ≺.
    std::vector<int> xi_key(const std::vector<int>& a) const {
        std::size_t k = 0;
        for (std::size_t i = 1; i < a.size(); ++i)
            if (precedes(a[k], a[i])) k = i;
        std::vector<int> key{-rank(a[k]), -static_cast<int>(k)};
        for (int x : a) key.push_back(rank(x));
        return key;
    }

    std::pair<Matching, MatchingCertificate> build_and_verify(const DeltaComplex& kprime) const {
        Matching m;
        MatchingCertificate cert;
        window_decisions_ = 0;
        std::set<std::pair<Simplex, Simplex>> matched;
        const auto cells = kprime.all_cells();
        for (const auto& s : cells) {
            if (k_->in_xprime(s)) continue;
            const int c = which_case(s);
            if (c == 0) {
                cert.depth_finite = false;
                continue;
            }
            ++cert.cases[static_cast<std::size_t>(c - 1)];
            if (c >= 3 && depth(s).vacuous) ++cert.depth_vacuous;
            const Simplex t = mu(s);
            if (t == s || !kprime.contains(t) || k_->in_xprime(t) || mu(t) != s) cert.involution = false;
            const bool up = c == 1 || c == 3;
            const Simplex& lo = up ? s : t;
            const Simplex& hi = up ? t : s;
            if (hi.size() != lo.size() + 1) {
                cert.dimension_consistent = false;
                continue;
            }
            const auto fs = kprime.faces(hi);
            const auto mult = std::count(fs.begin(), fs.end(), lo);
            if (mult == 0) cert.dimension_consistent = false;
            if (mult > 1 && cert.regular_facets) {
                cert.regular_facets = false;
                cert.irregular = std::make_pair(lo, hi);
            }
            if (up) {
                matched.insert({lo, hi});
                m.pairs.emplace_back(lo, hi);
            }
        }
        // critical cells: unmatched ones
        std::set<Simplex> touched;
        for (const auto& [a, b] : matched) {
            touched.insert(a);
            touched.insert(b);
        }
        for (const auto& s : cells)
            if (!touched.count(s) != k_->in_xprime(s)) cert.critical_is_xprime = false;
        if (auto cyc = detail::find_cycle(kprime, matched)) {
            cert.acyclic = false;
            cert.cycle = *cyc;
        }
        for (const auto& s : cells) {
            if (k_->in_xprime(s)) continue;
            const auto key = xi_key(xi(s));
            if (xi_key(xi(mu(s))) != key) cert.xi_fact1 = false;
            if (!k_->superior(s)) continue;
            const Simplex lam = k_->lambda(s);
            for (const auto& f : kprime.faces(s)) {
                if (!kprime.contains(f) || k_->in_xprime(f)) continue;
                const auto fk = xi_key(xi(f));
                if (key < fk) cert.xi_fact2 = false;
                if (f == lam && !(fk < key)) cert.xi_fact2 = false;
            }
        }
        cert.xi_acyclic = cert.xi_fact1 && cert.xi_fact2;
        cert.window_decisions = window_decisions_;
        return {m, cert};
    }

private:
    const AffineComplex* k_;
    const ReflectionOrder* order_;
    std::unordered_map<int, int> rank_;
    mutable std::size_t window_decisions_ = 0;
};

struct ComponentMatchingReport {
    std::size_t pairs = 0;
    std::size_t unmatched_at_window = 0;  // cells at a truncated end left without partner
    bool segment_critical = true;         // only the K'-segment stays critical
    bool eta_monotone = true;             // η(τ) ≤ η(σ) for facets on traversed cells
    bool acyclic = true;
    Matching matching;
};

// On each infinite component: superior cells left of the K'-segment pair
// with their λ, right of it with their ρ.
inline ComponentMatchingReport component_matching(const AffineComplex& k, const std::vector<FiberedComponent>& comps) {
    ComponentMatchingReport rep;
    DeltaComplex traversed(k.group());
    std::set<std::pair<Simplex, Simplex>> matched;
    for (const auto& c : comps) {
        if (c.kind == ComponentKind::finite || c.cells.empty()) continue;
        for (const auto& s : c.cells) traversed.insert(s);
        std::vector<bool> used(c.cells.size(), false);
        // left side: cells[f-1] superior with cells[f-2] = λ
        for (std::size_t i = c.kprime_first; i >= 2; i -= 2) {
            const auto& sup = c.cells[i - 1];
            const auto& inf = c.cells[i - 2];
            if (!k.superior(sup) || k.lambda(sup) != inf) rep.segment_critical = false;
            matched.insert({inf, sup});
            rep.matching.pairs.emplace_back(inf, sup);
            used[i - 1] = used[i - 2] = true;
        }
        for (std::size_t i = c.kprime_last + 2; i < c.cells.size(); i += 2) {
            const auto& sup = c.cells[i - 1];
            const auto& inf = c.cells[i];
            if (!k.superior(sup) || k.rho(sup) != inf) rep.segment_critical = false;
            matched.insert({inf, sup});
            rep.matching.pairs.emplace_back(inf, sup);
            used[i - 1] = used[i] = true;
        }
        for (std::size_t i = 0; i < c.cells.size(); ++i) {
            const bool in_segment = i >= c.kprime_first && i <= c.kprime_last;
            if (in_segment && used[i]) rep.segment_critical = false;
            if (!in_segment && !used[i]) ++rep.unmatched_at_window;
        }
    }
    rep.pairs = rep.matching.pairs.size();
    for (const auto& s : traversed.all_cells())
        for (const auto& f : traversed.faces(s))
            if (k.eta(f) > k.eta(s)) rep.eta_monotone = false;
    rep.acyclic = !detail::find_cycle(traversed, matched).has_value();
    return rep;
}

}  // namespace affdual
