#pragma once

#include <affdual/affine_subspace.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

namespace affdual {

// x ↦ A x + b with A orthogonal.
class Isometry {
public:
    Isometry() = default;
    Isometry(Matrix linear, Vector translation) : a_(std::move(linear)), b_(std::move(translation)) {
        assert(a_.rows() == b_.size() && a_.cols() == b_.size());
    }

    static Isometry identity(std::size_t n) { return {Matrix::identity(n), zero_vector(n)}; }
    static Isometry translation(Vector v) {
        const auto n = v.size();
        return {Matrix::identity(n), std::move(v)};
    }

    std::size_t dim() const { return b_.size(); }
    const Matrix& linear() const { return a_; }
    const Vector& translation_part() const { return b_; }

    Vector operator()(const Vector& x) const { return a_ * x + b_; }

    // (u v)(x) = u(v(x))
    friend Isometry operator*(const Isometry& u, const Isometry& v) { return {u.a_ * v.a_, u.a_ * v.b_ + u.b_}; }

    Isometry inverse() const {
        Matrix at = a_.transpose();
        Vector nb = at * b_;
        for (auto& c : nb) c = -c;
        return {std::move(at), std::move(nb)};
    }

    bool is_orthogonal() const { return a_.transpose() * a_ == Matrix::identity(dim()); }
    bool is_identity() const { return a_ == Matrix::identity(dim()) && is_zero(b_); }
    bool is_translation() const { return a_ == Matrix::identity(dim()); }

    friend bool operator==(const Isometry& u, const Isometry& v) { return u.b_ == v.b_ && u.a_ == v.a_; }

    std::size_t hash() const { return hash_combine(hash_value(a_), hash_value(b_)); }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < dim(); ++i) {
            if (i) os << "; ";
            for (std::size_t j = 0; j < dim(); ++j) os << (j ? " " : "") << a_(i, j).get_str();
            os << " | " << b_[i].get_str();
        }
        os << ')';
        return os.str();
    }

private:
    Matrix a_;
    Vector b_;
};

struct IsometryHash {
    std::size_t operator()(const Isometry& u) const { return u.hash(); }
};

// x ↦ x − 2(⟨α,x⟩ − c)/⟨α,α⟩ · α
inline Isometry reflection_through(const Vector& normal, const Scalar& offset) {
    if (is_zero(normal)) throw std::invalid_argument("reflection_through: zero normal");
    const auto n = normal.size();
    const Scalar scale = Scalar(2) / dot(normal, normal);
    Matrix a = Matrix::identity(n);
    Vector b(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) -= scale * normal[i] * normal[j];
        b[i] = scale * offset * normal[i];
    }
    return {std::move(a), std::move(b)};
}

// Linear subspace on which a group acts essentially; empty basis = whole space.
struct EssentialSpace {
    std::vector<Vector> basis;

    std::size_t dim(std::size_t ambient) const { return basis.empty() ? ambient : basis.size(); }
};

enum class IsometryKind { elliptic, hyperbolic };

struct IsometryInvariants {
    IsometryKind kind = IsometryKind::elliptic;
    AffineSubspace fix;
    AffineSubspace dep;
    Vector min_vector;
    AffineSubspace min_set;
};

inline Matrix displacement_matrix(const Isometry& u) { return u.linear() - Matrix::identity(u.dim()); }

inline IsometryInvariants invariants(const Isometry& u) {
    const auto n = u.dim();
    const Matrix m = displacement_matrix(u);
    IsometryInvariants inv;
    auto image = column_space(m);
    auto kernel = null_space(m);

    if (auto p = solve(m, -u.translation_part()))
        inv.fix = AffineSubspace(*p, kernel);
    else
        inv.fix = AffineSubspace::empty(n);
    inv.kind = inv.fix.is_empty() ? IsometryKind::hyperbolic : IsometryKind::elliptic;

    inv.dep = AffineSubspace(u.translation_part(), image);
    inv.min_vector = inv.dep.closest_to_origin();
    auto a = solve(m, inv.min_vector - u.translation_part());
    if (!a) throw std::logic_error("invariants: Min(u) empty");
    inv.min_set = AffineSubspace(*a, kernel);
    return inv;
}

// Reflection length: codim of Fix inside the essential space for elliptic
// isometries, dim Dep + 2 otherwise.
inline int reflection_length(const Isometry& u, const EssentialSpace& ess = {}) {
    const Matrix m = displacement_matrix(u);
    auto rr = row_reduce(m, -u.translation_part());
    const int r = static_cast<int>(rr.pivots.size());
    if (!rr.consistent) return r + 2;
    if (ess.basis.empty()) return r;
    auto kernel = null_space(m);
    return static_cast<int>(ess.basis.size() - intersection_dim(kernel, ess.basis));
}

// rank(A − I), plus 2 when there is no fixed point; agrees with
// reflection_length when the isometry is trivial off the essential space.
inline int fast_reflection_length(const Isometry& u) {
    auto rr = row_reduce(displacement_matrix(u), -u.translation_part());
    const int r = static_cast<int>(rr.pivots.size());
    return rr.consistent ? r : r + 2;
}

inline bool is_elliptic(const Isometry& u) {
    return row_reduce(displacement_matrix(u), -u.translation_part()).consistent;
}

inline bool leq_L(const Isometry& u, const Isometry& v, const EssentialSpace& ess = {}) {
    return reflection_length(u, ess) + reflection_length(u.inverse() * v, ess) == reflection_length(v, ess);
}

// Elements e^F and h^D of the model poset.
struct ModelElement {
    enum class Variant { e, h } variant;
    AffineSubspace space;
};

inline ModelElement invariant_map(const Isometry& u) {
    auto inv = invariants(u);
    if (inv.kind == IsometryKind::elliptic) return {ModelElement::Variant::e, inv.fix};
    return {ModelElement::Variant::h, inv.dep};
}

inline bool model_leq(const ModelElement& p, const ModelElement& q, const EssentialSpace& ess = {}) {
    using V = ModelElement::Variant;
    if (p.variant == V::e && q.variant == V::e) return p.space.contains(q.space);
    if (p.variant == V::h && q.variant == V::h) return q.space.contains(p.space);
    if (p.variant == V::h) return false;
    // e^F ≤ h^D iff D⊥ lies in F's direction, D⊥ taken against the linear span of D
    auto span = q.space.directions();
    span.push_back(q.space.base_point());
    for (const auto& v : orthogonal_complement(span, ess.basis, q.space.ambient()))
        if (!p.space.direction_contains(v)) return false;
    return true;
}

}  // namespace affdual
