#pragma once

#include <affdual/root_system.hpp>

#include <optional>
#include <sstream>

namespace affdual {

// Hyperplane {x : ⟨root, x⟩ = offset}, root positive.
struct Mirror {
    Vector root;
    Scalar offset;

    friend bool operator==(const Mirror&, const Mirror&) = default;
    friend bool operator<(const Mirror& a, const Mirror& b) {
        if (a.root != b.root) return a.root < b.root;
        return a.offset < b.offset;
    }
};

inline Isometry reflection_in(const Mirror& m) { return reflection_through(m.root, m.offset); }

class CoxeterSystem {
public:
    explicit CoxeterSystem(CoxeterType type) : type_(type), roots_(root_data(type)) {
        for (const auto& a : roots_.simple_roots) simple_mirrors_.push_back({a, Scalar(0)});
        if (type_.affine) simple_mirrors_.push_back({roots_.highest_root, Scalar(1)});
        for (const auto& m : simple_mirrors_) simple_.push_back(reflection_in(m));
    }

    const CoxeterType& type() const { return type_; }
    std::size_t ambient() const { return roots_.ambient; }
    const EssentialSpace& ess() const { return roots_.ess; }
    int rank() const { return type_.rank; }
    bool affine() const { return type_.affine; }
    const RootData& roots() const { return roots_; }
    const std::vector<Vector>& positive_roots() const { return roots_.positive_roots; }

    std::size_t size() const { return simple_.size(); }
    const std::vector<std::string>& names() const { return roots_.names; }
    const std::vector<Isometry>& simple() const { return simple_; }
    const std::vector<Mirror>& simple_mirrors() const { return simple_mirrors_; }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names().size(); ++i)
            if (names()[i] == name) return i;
        return std::nullopt;
    }

    // Group elements act trivially off the essential space, so rank(A − I)
    // already measures codimension inside it.
    int length(const Isometry& u) const { return fast_reflection_length(u); }

    // Inward normal of the wall of C_0 carried by simple mirror i.
    Vector inward_normal(std::size_t i) const {
        return type_.affine && i + 1 == size() ? -roots_.highest_root : roots_.simple_roots[i];
    }

    // Positive value on the open base chamber.
    Scalar wall_value(std::size_t i, const Vector& x) const {
        const auto& m = simple_mirrors_[i];
        Scalar v = dot(m.root, x) - m.offset;
        return type_.affine && i + 1 == size() ? -v : v;
    }

    std::size_t root_index(const Vector& alpha) const {
        for (std::size_t i = 0; i < positive_roots().size(); ++i)
            if (positive_roots()[i] == alpha) return i;
        throw std::invalid_argument("root_index: not a positive root");
    }

    // The mirror of a reflection of W, or nullopt if r is not one.
    std::optional<Mirror> mirror_of(const Isometry& r) const {
        if (r.dim() != ambient() || length(r) != 1 || !is_elliptic(r)) return std::nullopt;
        const Matrix m = displacement_matrix(r);
        Vector normal;
        for (std::size_t j = 0; j < m.cols() && normal.empty(); ++j)
            if (!is_zero(m.column(j))) normal = m.column(j);
        for (const auto& alpha : positive_roots()) {
            if (!in_span(alpha, {normal})) continue;
            Scalar k = dot(alpha, r.translation_part()) / 2;
            if (!is_integer(k) || !type_.affine && k != 0) return std::nullopt;
            Mirror mirror{alpha, k};
            if (reflection_in(mirror) == r) return mirror;
            return std::nullopt;
        }
        return std::nullopt;
    }

    // Vertices of the closure of C_0 (affine), indexed by the omitted wall.
    std::vector<Vector> base_vertices() const {
        if (!type_.affine) return {zero_vector(ambient())};
        auto complement = orthogonal_complement(ess().basis, {}, ambient());
        if (ess().basis.empty()) complement.clear();
        std::vector<Vector> out;
        for (std::size_t skip = 0; skip < size(); ++skip) {
            std::vector<Vector> rows;
            Vector rhs;
            for (std::size_t i = 0; i < size(); ++i) {
                if (i == skip) continue;
                rows.push_back(simple_mirrors_[i].root);
                rhs.push_back(simple_mirrors_[i].offset);
            }
            for (const auto& c : complement) {
                rows.push_back(c);
                rhs.push_back(0);
            }
            auto x = solve(Matrix::from_rows(rows), rhs);
            if (!x) throw std::logic_error("base_vertices: degenerate chamber");
            out.push_back(*x);
        }
        return out;
    }

    // Coxeter matrix entry read off the angle between inward wall normals;
    // 0 stands for ∞.
    int coxeter_exponent(std::size_t i, std::size_t j) const {
        if (i == j) return 1;
        Vector a = inward_normal(i), b = inward_normal(j);
        Scalar c = dot(a, b);
        Scalar q = c * c / (dot(a, a) * dot(b, b));
        if (q == 0) return 2;
        if (q == make_scalar(1, 4)) return 3;
        if (q == make_scalar(1, 2)) return 4;
        if (q == make_scalar(3, 4)) return 6;
        return 0;
    }

    // (st)^{m_st} = 1 with m_st the exact order, for all simple pairs.
    bool verify_relations() const {
        const auto id = Isometry::identity(ambient());
        for (std::size_t i = 0; i < size(); ++i) {
            if (!(simple_[i] * simple_[i] == id)) return false;
            for (std::size_t j = i + 1; j < size(); ++j) {
                const int m = coxeter_exponent(i, j);
                if (m == 0) return false;
                const Isometry st = simple_[i] * simple_[j];
                Isometry p = st;
                for (int k = 1; k < m; ++k) {
                    if (p == id) return false;
                    p = p * st;
                }
                if (!(p == id)) return false;
            }
        }
        return true;
    }

private:
    CoxeterType type_;
    RootData roots_;
    std::vector<Mirror> simple_mirrors_;
    std::vector<Isometry> simple_;
};

inline std::vector<std::size_t> parse_order(const CoxeterSystem& sys, const std::string& csv) {
    std::vector<std::size_t> order;
    std::stringstream ss(csv);
    std::string tok;
    std::vector<bool> seen(sys.size(), false);
    while (std::getline(ss, tok, ',')) {
        auto idx = sys.index_of(tok);
        if (!idx) throw std::invalid_argument("unknown generator '" + tok + "'");
        if (seen[*idx]) throw std::invalid_argument("generator '" + tok + "' repeated");
        seen[*idx] = true;
        order.push_back(*idx);
    }
    if (order.size() != sys.size()) throw std::invalid_argument("order must list every generator once");
    return order;
}

inline std::vector<std::size_t> natural_order(const CoxeterSystem& sys) {
    std::vector<std::size_t> order(sys.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    return order;
}

// Intersection of an affine subspace with a linear subspace given by a basis
// (empty basis = whole space).
inline AffineSubspace restrict_to(const AffineSubspace& s, const std::vector<Vector>& linear) {
    if (linear.empty() || s.is_empty()) return s;
    const auto n = s.ambient();
    auto normals = orthogonal_complement(linear, {}, n);
    const auto& dirs = s.directions();
    Matrix m(normals.size(), dirs.size());
    Vector rhs(normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i) {
        for (std::size_t j = 0; j < dirs.size(); ++j) m(i, j) = dot(normals[i], dirs[j]);
        rhs[i] = -dot(normals[i], s.base_point());
    }
    auto c = normals.empty() ? std::optional<Vector>(zero_vector(dirs.size())) : solve(m, rhs);
    if (!c) return AffineSubspace::empty(n);
    Vector p = s.base_point();
    for (std::size_t j = 0; j < dirs.size(); ++j) p = p + (*c)[j] * dirs[j];
    std::vector<Vector> kept;
    for (const auto& k : null_space(m)) {
        Vector v = zero_vector(n);
        for (std::size_t j = 0; j < dirs.size(); ++j) v = v + k[j] * dirs[j];
        kept.push_back(v);
    }
    if (normals.empty()) kept = dirs;
    return {p, kept};
}

class NotALine : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct CoxeterElement {
    std::vector<std::size_t> order;
    Isometry w;
    Vector axis_point;  // point of the axis closest to the origin
    Vector direction;   // μ, with w(a) = a + μ on the axis
    int length = 0;
};

inline CoxeterElement coxeter_element(const CoxeterSystem& sys, std::vector<std::size_t> order) {
    if (order.size() != sys.size()) throw std::invalid_argument("coxeter_element: order is not a permutation of S");
    CoxeterElement c;
    c.w = Isometry::identity(sys.ambient());
    for (auto i : order) c.w = c.w * sys.simple()[i];
    c.order = std::move(order);
    c.length = reflection_length(c.w, sys.ess());
    if (!sys.affine()) return c;
    if (c.length != sys.rank() + 1) throw std::logic_error("coxeter_element: length is not n+1");
    auto inv = invariants(c.w);
    auto axis = restrict_to(inv.min_set, sys.ess().basis);
    if (axis.dim() != 1) throw NotALine("coxeter_element: Min(w) is not a line");
    c.axis_point = axis.closest_to_origin();
    c.direction = inv.min_vector;
    return c;
}

}  // namespace affdual
