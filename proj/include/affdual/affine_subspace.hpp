#pragma once

#include <affdual/linalg.hpp>

#include <optional>
#include <string>

namespace affdual {

// Dimension of span(a) ∩ span(b) for independent families a, b.
inline std::size_t intersection_dim(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<Vector> all(a);
    all.insert(all.end(), b.begin(), b.end());
    return a.size() + b.size() - rank(Matrix::from_rows(all));
}

inline bool in_span(const Vector& v, const std::vector<Vector>& basis) {
    if (is_zero(v)) return true;
    if (basis.empty()) return false;
    std::vector<Vector> all(basis);
    all.push_back(v);
    return rank(Matrix::from_rows(all)) == basis.size();
}

// Orthogonal complement of span(basis) inside span(within); `within` empty
// means the whole ambient space.
inline std::vector<Vector> orthogonal_complement(const std::vector<Vector>& basis, const std::vector<Vector>& within,
                                                 std::size_t ambient) {
    std::vector<Vector> space = within;
    if (space.empty())
        for (std::size_t i = 0; i < ambient; ++i) space.push_back(unit_vector(ambient, i));
    if (basis.empty()) return space;
    // coefficients c with sum c_j space_j orthogonal to every basis vector
    Matrix m(basis.size(), space.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j) m(i, j) = dot(basis[i], space[j]);
    std::vector<Vector> out;
    for (const auto& c : null_space(m)) {
        Vector v = zero_vector(ambient);
        for (std::size_t j = 0; j < space.size(); ++j)
            if (c[j] != 0) v = v + c[j] * space[j];
        out.push_back(std::move(v));
    }
    return out;
}

// Affine subspace given by a point and an independent direction basis. The
// empty subspace has no point.
class AffineSubspace {
public:
    AffineSubspace() = default;
    AffineSubspace(Vector point, std::vector<Vector> directions)
        : ambient_(point.size()), point_(std::move(point)),
          basis_(independent_subset(directions, point_->size())) {}

    static AffineSubspace empty(std::size_t ambient) {
        AffineSubspace s;
        s.ambient_ = ambient;
        return s;
    }
    static AffineSubspace whole(std::size_t ambient) {
        std::vector<Vector> b;
        for (std::size_t i = 0; i < ambient; ++i) b.push_back(unit_vector(ambient, i));
        return {zero_vector(ambient), b};
    }
    static AffineSubspace point(Vector p) { return {std::move(p), {}}; }

    bool is_empty() const { return !point_.has_value(); }
    std::size_t ambient() const { return ambient_; }
    // -1 for the empty subspace
    int dim() const { return is_empty() ? -1 : static_cast<int>(basis_.size()); }
    const Vector& base_point() const { return *point_; }
    const std::vector<Vector>& directions() const { return basis_; }

    bool contains(const Vector& x) const { return !is_empty() && in_span(x - *point_, basis_); }

    bool direction_contains(const Vector& v) const { return in_span(v, basis_); }

    bool contains(const AffineSubspace& other) const {
        if (other.is_empty()) return true;
        if (is_empty() || !contains(other.base_point())) return false;
        for (const auto& v : other.directions())
            if (!direction_contains(v)) return false;
        return true;
    }

    friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
        return a.contains(b) && b.contains(a);
    }

    // Point of the subspace closest to the origin.
    Vector closest_to_origin() const { return *point_ - project_onto_span(*point_, basis_); }

private:
    std::size_t ambient_ = 0;
    std::optional<Vector> point_;
    std::vector<Vector> basis_;
};

}  // namespace affdual
