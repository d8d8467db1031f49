#include <affdual/isometry.hpp>

#include <gtest/gtest.h>

#include <map>
#include <queue>
#include <unordered_map>

using namespace affdual;

namespace {

Vector vec(std::initializer_list<long> xs) {
    Vector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

// Test-side reflection: x - 2(<a,x> - c)/<a,a> a, applied pointwise.
Vector reflect_point(const Vector& a, const Scalar& c, const Vector& x) {
    const Scalar s = Scalar(2) * (dot(a, x) - c) / dot(a, a);
    Vector out = x;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] -= s * a[i];
    return out;
}

Isometry rotation90() {
    Matrix a(2, 2);
    a(0, 1) = -1;
    a(1, 0) = 1;
    return {a, vec({0, 0})};
}

}  // namespace

TEST(Scalar, CanonicalForm) {
    EXPECT_EQ(make_scalar(2, 4), Scalar(1, 2));
    EXPECT_EQ(parse_scalar("3/6"), Scalar(1, 2));
    EXPECT_EQ(parse_scalar("-4"), Scalar(-4));
    EXPECT_EQ(hash_value(make_scalar(6, 8)), hash_value(Scalar(3, 4)));
    EXPECT_TRUE(is_integer(make_scalar(8, 4)));
    EXPECT_THROW(make_scalar(1, 0), std::invalid_argument);
}

TEST(Linalg, RowReduceAndSolve) {
    Matrix m(2, 3);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
    m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
    EXPECT_EQ(rank(m), 1u);
    auto ker = null_space(m);
    ASSERT_EQ(ker.size(), 2u);
    for (const auto& k : ker) EXPECT_TRUE(is_zero(m * k));
    EXPECT_FALSE(solve(m, vec({1, 3})).has_value());
    auto x = solve(m, vec({1, 2}));
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m * *x, vec({1, 2}));
}

TEST(Linalg, ProjectionOntoSpan) {
    const Vector x = vec({3, 4, 5});
    const Vector p = project_onto_span(x, {vec({1, 1, 0})});
    EXPECT_EQ(p, (Vector{Scalar(7, 2), Scalar(7, 2), Scalar(0)}));
    EXPECT_EQ(dot(x - p, vec({1, 1, 0})), 0);
}

TEST(AffineSubspace, Containment) {
    auto line = AffineSubspace(vec({1, 0}), {vec({0, 1})});
    EXPECT_TRUE(line.contains(vec({1, 7})));
    EXPECT_FALSE(line.contains(vec({0, 0})));
    EXPECT_TRUE(AffineSubspace::whole(2).contains(line));
    EXPECT_TRUE(line.contains(AffineSubspace::point(vec({1, -2}))));
    EXPECT_TRUE(line.contains(AffineSubspace::empty(2)));
    EXPECT_EQ(AffineSubspace::empty(2).dim(), -1);
    EXPECT_EQ(line, AffineSubspace(vec({1, 5}), {vec({0, 3})}));
}

TEST(Isometry, CompositionConvention) {
    const Isometry u = reflection_through(vec({1, 0}), 1);
    const Isometry v = Isometry::translation(vec({2, 1}));
    const Vector x = vec({5, 3});
    EXPECT_EQ((u * v)(x), u(v(x)));
    EXPECT_NE((u * v)(x), v(u(x)));
    EXPECT_EQ((u * u).is_identity(), true);
    const Isometry r = rotation90();
    EXPECT_TRUE(r.is_orthogonal());
    EXPECT_TRUE((r * r.inverse()).is_identity());
    EXPECT_EQ((r * v).inverse(), v.inverse() * r.inverse());
}

TEST(Isometry, ReflectionMatchesPointFormula) {
    const std::vector<std::pair<Vector, Scalar>> mirrors = {
        {vec({1, -1, 0}), 0}, {vec({1, 0, -1}), 1}, {vec({2, 1, 1}), Scalar(3, 2)}};
    const std::vector<Vector> points = {vec({0, 0, 0}), vec({1, 2, 3}), vec({-4, 5, 7})};
    for (const auto& [a, c] : mirrors) {
        const Isometry r = reflection_through(a, c);
        EXPECT_TRUE(r.is_orthogonal());
        EXPECT_TRUE((r * r).is_identity());
        for (const auto& x : points) EXPECT_EQ(r(x), reflect_point(a, c, x));
    }
    EXPECT_THROW(reflection_through(vec({0, 0}), 1), std::invalid_argument);
}

TEST(Invariants, FixAndMinSets) {
    const Isometry rot = Isometry(rotation90().linear(), vec({2, 0}));
    auto ri = invariants(rot);
    EXPECT_EQ(ri.kind, IsometryKind::elliptic);
    EXPECT_EQ(ri.fix.dim(), 0);
    EXPECT_EQ(rot(ri.fix.base_point()), ri.fix.base_point());

    // glide reflection: mirror y = 1, glide 3 along x
    const Isometry glide = Isometry::translation(vec({3, 0})) * reflection_through(vec({0, 1}), 1);
    auto gi = invariants(glide);
    EXPECT_EQ(gi.kind, IsometryKind::hyperbolic);
    EXPECT_TRUE(gi.fix.is_empty());
    EXPECT_EQ(gi.min_vector, vec({3, 0}));
    EXPECT_EQ(gi.min_set.dim(), 1);
    for (const auto& p : {gi.min_set.base_point(), gi.min_set.base_point() + gi.min_set.directions()[0]})
        EXPECT_EQ(glide(p) - p, gi.min_vector);
    EXPECT_FALSE(gi.dep.contains(vec({0, 0})));
}

TEST(ReflectionLength, ClosedForms) {
    const auto n2 = std::size_t{2};
    EXPECT_EQ(reflection_length(Isometry::identity(n2)), 0);
    EXPECT_EQ(reflection_length(reflection_through(vec({1, 2}), 5)), 1);
    EXPECT_EQ(reflection_length(rotation90()), 2);
    EXPECT_EQ(reflection_length(Isometry::translation(vec({1, 1}))), 2);
    const Isometry glide = Isometry::translation(vec({3, 0})) * reflection_through(vec({0, 1}), 1);
    EXPECT_EQ(reflection_length(glide), 3);
    // screw motion in R^3: quarter turn about the z-axis and a shift along it
    Matrix a = Matrix::identity(3);
    a(0, 0) = 0; a(0, 1) = -1; a(1, 0) = 1; a(1, 1) = 0;
    EXPECT_EQ(reflection_length(Isometry(a, vec({0, 0, 1}))), 4);
    // translation inside an essential plane of R^3
    EssentialSpace ess{{vec({1, -1, 0}), vec({0, 1, -1})}};
    EXPECT_EQ(reflection_length(reflection_through(vec({1, -1, 0}), 0) * reflection_through(vec({0, 1, -1}), 0), ess), 2);
}

// Products of reflections from a finite set, by breadth-first depth: the
// formula is a lower bound with the same parity.
TEST(ReflectionLength, LowerBoundAgainstProducts) {
    std::vector<Isometry> refl;
    for (const auto& a : {vec({1, 0}), vec({0, 1}), vec({1, 1}), vec({1, -1})})
        for (long c = -1; c <= 1; ++c) refl.push_back(reflection_through(a, c));
    std::unordered_map<Isometry, int, IsometryHash> depth{{Isometry::identity(2), 0}};
    std::queue<Isometry> q;
    q.push(Isometry::identity(2));
    while (!q.empty()) {
        auto u = q.front();
        q.pop();
        const int d = depth[u];
        if (d == 3) continue;
        for (const auto& r : refl) {
            auto v = u * r;
            if (depth.emplace(v, d + 1).second) q.push(v);
        }
    }
    EXPECT_GT(depth.size(), 200u);
    for (const auto& [u, d] : depth) {
        const int l = reflection_length(u);
        EXPECT_LE(l, d);
        EXPECT_EQ((d - l) % 2, 0);
        if (d <= 2) EXPECT_EQ(l, d);
    }
}

TEST(LOrder, ModelOrderAgreesOnPrefixes) {
    // u ≤_L v implies the invariant images compare in the model poset
    std::vector<Isometry> refl;
    for (const auto& a : {vec({1, 0}), vec({0, 1}), vec({1, 1})})
        for (long c = 0; c <= 1; ++c) refl.push_back(reflection_through(a, c));
    for (const auto& r : refl)
        for (const auto& s : refl)
            for (const auto& t : refl) {
                const Isometry v = r * s * t;
                if (reflection_length(v) != 3) continue;
                for (const Isometry& u : {Isometry::identity(2), r, r * s}) {
                    ASSERT_TRUE(leq_L(u, v));
                    EXPECT_TRUE(model_leq(invariant_map(u), invariant_map(v)));
                }
            }
}

// Below a glide reflection, ≤_L and the model order coincide.
TEST(LOrder, InvariantMapIsOrderIsomorphism) {
    std::vector<Isometry> refl;
    for (const auto& a : {vec({1, 0}), vec({0, 1}), vec({1, 1}), vec({1, -1})})
        for (long c = -1; c <= 1; ++c) refl.push_back(reflection_through(a, c));
    const Isometry v = Isometry::translation(vec({2, 0})) * reflection_through(vec({0, 1}), 0);
    std::unordered_map<Isometry, int, IsometryHash> below;
    below.emplace(Isometry::identity(2), 0);
    for (const auto& r : refl)
        for (const auto& s : refl) {
            for (const Isometry& u : {r, r * s})
                if (leq_L(u, v)) below.emplace(u, 0);
        }
    below.emplace(v, 0);
    std::vector<Isometry> xs;
    for (const auto& [u, _] : below) xs.push_back(u);
    ASSERT_GT(xs.size(), 20u);
    for (const auto& a : xs)
        for (const auto& b : xs) {
            EXPECT_EQ(leq_L(a, b), model_leq(invariant_map(a), invariant_map(b))) << a.str() << " vs " << b.str();
            if (!(a == b)) {
                auto ia = invariant_map(a), ib = invariant_map(b);
                EXPECT_FALSE(ia.variant == ib.variant && ia.space == ib.space);
            }
        }
}
