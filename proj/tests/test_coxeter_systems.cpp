#include <affdual/euclidean_interval.hpp>

#include <gtest/gtest.h>

using namespace affdual;

namespace {

Vector scaled(Scalar s, std::vector<long> xs) {
    Vector v;
    s.canonicalize();
    for (long x : xs) v.push_back(s * x);
    return v;
}

bool on_axis(const CoxeterElement& c, const Vector& a) { return c.w(a) == a + c.direction; }

// Vertices of the axial chambers lying on a mirror.
int axial_vertices_on(const AxisData& d, const Mirror& m) {
    int n = 0;
    for (const auto& v : d.vertices)
        if (dot(m.root, v) == m.offset) ++n;
    return n;
}

}  // namespace

TEST(CoxeterType, Parsing) {
    EXPECT_EQ(parse_type("C~3").str(), "C~3");
    EXPECT_EQ(parse_type("A3").affine, false);
    EXPECT_THROW(parse_type("B~2"), UnsupportedType);
    EXPECT_THROW(parse_type("Q~2"), UnsupportedType);
    EXPECT_THROW(parse_type("A~"), UnsupportedType);
    EXPECT_THROW(parse_type(""), UnsupportedType);
}

TEST(CoxeterSystem, RelationsHold) {
    for (const char* t : {"A~2", "A~3", "B~3", "B~4", "C~2", "C~3", "D~4", "G~2", "F~4", "A3"}) {
        CoxeterSystem sys(parse_type(t));
        EXPECT_TRUE(sys.verify_relations()) << t;
        for (const auto& s : sys.simple()) {
            EXPECT_TRUE((s * s).is_identity());
            EXPECT_EQ(sys.length(s), 1);
        }
    }
}

TEST(CoxeterSystem, OrderParsing) {
    CoxeterSystem sys(parse_type("A~2"));
    EXPECT_EQ(parse_order(sys, "s1,s2,s0"), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_THROW(parse_order(sys, "s1,s1,s0"), std::invalid_argument);
    EXPECT_THROW(parse_order(sys, "s1,s2"), std::invalid_argument);
    EXPECT_THROW(parse_order(sys, "s1,s2,s9"), std::invalid_argument);
}

// w·x = (x_n − 2, x_1, …, x_{n−1}); a = (2/n)(1, …, n), μ = −(2/n)(1, …, 1).
TEST(CoxeterElement, TypeCRealization) {
    for (int n : {2, 3}) {
        CoxeterSystem sys(parse_type("C~" + std::to_string(n)));
        auto c = coxeter_element(sys, natural_order(sys));
        for (const auto& x : {scaled(1, std::vector<long>(n, 0)), scaled(Scalar(1, 3), [&] {
                                  std::vector<long> v;
                                  for (int i = 0; i < n; ++i) v.push_back(i * i + 1);
                                  return v;
                              }())}) {
            Vector expected(x.size());
            expected[0] = x[static_cast<std::size_t>(n - 1)] - 2;
            for (int i = 1; i < n; ++i) expected[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i - 1)];
            EXPECT_EQ(c.w(x), expected);
        }
        std::vector<long> idx, ones(static_cast<std::size_t>(n), 1);
        for (int i = 1; i <= n; ++i) idx.push_back(i);
        const Vector a = scaled(Scalar(2, n), idx);
        const Vector mu = scaled(Scalar(-2, n), ones);
        EXPECT_EQ(c.direction, mu);
        EXPECT_TRUE(on_axis(c, a));
        EXPECT_EQ(c.length, n + 1);
    }
}

// w·x = (x_{n−1} − 1, x_1, …, x_{n−2}, 1 − x_n) and a = (1/(n−1), …,
// (n−1)/(n−1), 1/2). The displacement w(a) − a is −(1/(n−1))(1, …, 1, 0).
TEST(CoxeterElement, TypeBRealization) {
    const int n = 3;
    CoxeterSystem sys(parse_type("B~3"));
    auto c = coxeter_element(sys, natural_order(sys));
    for (const auto& x : {Vector{0, 0, 0}, Vector{Scalar(1, 5), 2, Scalar(-7, 3)}}) {
        const Vector expected{x[1] - 1, x[0], 1 - x[2]};
        EXPECT_EQ(c.w(x), expected);
    }
    const Vector a{make_scalar(1, n - 1), make_scalar(2, n - 1), make_scalar(1, 2)};
    const Vector mu{make_scalar(-1, n - 1), make_scalar(-1, n - 1), 0};
    EXPECT_EQ(c.w(a) - a, mu);
    EXPECT_EQ(c.direction, mu);
    EXPECT_TRUE(on_axis(c, a));
}

TEST(CoxeterElement, LengthIsRankPlusOneForEveryOrdering) {
    for (const char* t : {"A~2", "A~3", "A~4", "B~3", "B~4", "C~2", "C~3", "C~4", "D~4", "G~2", "F~4"}) {
        CoxeterSystem sys(parse_type(t));
        auto order = natural_order(sys);
        int count = 0;
        do {
            auto c = coxeter_element(sys, order);
            EXPECT_EQ(c.length, sys.rank() + 1) << t;
            EXPECT_EQ(reflection_length(c.w, sys.ess()), sys.rank() + 1);
            EXPECT_FALSE(is_elliptic(c.w));
            ++count;
        } while (std::next_permutation(order.begin(), order.end()));
        EXPECT_GT(count, 1);
    }
}

TEST(AffineInstance, RejectsFiniteTypes) { EXPECT_THROW(AffineInstance(parse_type("A2")), std::invalid_argument); }

TEST(HorizontalDecomposition, MatchesTable) {
    struct Case {
        const char* type;
        std::size_t k;
    };
    struct Ordered {
        Case c;
        const char* order;
    };
    for (const Ordered o : {Ordered{{"C~2", 1}, ""}, Ordered{{"C~3", 1}, ""}, Ordered{{"B~3", 2}, ""}, Ordered{{"B~4", 2}, ""},
                            Ordered{{"G~2", 1}, ""}, Ordered{{"A~3", 1}, "s1,s2,s3,s0"}, Ordered{{"A~3", 2}, "s1,s3,s2,s0"}}) {
        const Case c = o.c;
        CoxeterSystem sys(parse_type(c.type));
        std::optional<std::vector<std::size_t>> order;
        if (*o.order) order = parse_order(sys, o.order);
        AffineInstance inst(parse_type(c.type), order);
        const auto& d = inst.decomposition();
        EXPECT_TRUE(d.matches_table) << c.type;
        EXPECT_TRUE(d.orthogonal_sum) << c.type;
        EXPECT_EQ(d.components.size(), c.k) << c.type;
        for (const auto& comp : d.components)
            for (const auto& r : comp.roots) EXPECT_EQ(dot(r, inst.axis().mu()), 0);
    }
}

// B~3: horizontal roots are e_1 − e_2 (type Ã_1 in R^2) and e_3 (type Ã_1).
TEST(HorizontalDecomposition, TypeBSplitsOffLastCoordinate) {
    AffineInstance inst(parse_type("B~3"));
    const auto& d = inst.decomposition();
    ASSERT_EQ(d.components.size(), 2u);
    bool saw_last = false;
    for (const auto& comp : d.components)
        for (const auto& r : comp.roots)
            if (r[0] == 0 && r[1] == 0) saw_last = true;
    EXPECT_TRUE(saw_last);
}

TEST(Reflections, HorizontalCountsInR0) {
    struct Case {
        const char* type;
        std::size_t horizontal;
    };
    for (const Case c : {Case{"A~2", 2}, Case{"C~3", 6}}) {
        AffineInstance inst(parse_type(c.type));
        for (int m : {2, 3, 4}) {
            std::size_t h = 0;
            for (const auto& r : inst.reflections(m))
                if (r.kind == ReflectionClass::horizontal) ++h;
            EXPECT_EQ(h, c.horizontal) << c.type << " m=" << m;
        }
    }
}

// Every reflection of window 2 lies in the window-3 poset at rank 1; vertical
// ones fix at least two axial vertices, horizontal ones at least one.
TEST(Reflections, WindowedReflectionsBelowW) {
    for (const char* t : {"A~2", "C~2", "C~3", "G~2", "B~3"}) {
        AffineInstance inst(parse_type(t));
        auto e = make_interval(inst, 3);
        const auto data = inst.axis().data(6);
        for (const auto& r : inst.reflections(2)) {
            auto gid = e.group->find(r.iso);
            ASSERT_TRUE(gid);
            auto node = e.poset.node(*gid);
            ASSERT_TRUE(node) << t << " " << r.name;
            EXPECT_EQ(e.poset.rank[static_cast<std::size_t>(*node)], 1);
            const int fixed = axial_vertices_on(data, r.mirror);
            if (r.kind == ReflectionClass::vertical)
                EXPECT_GE(fixed, 2) << t << " " << r.name;
            else
                EXPECT_GE(fixed, 1) << t << " " << r.name;
        }
    }
}

TEST(Axis, PeriodAndPoints) {
    AffineInstance inst(parse_type("A~2"), parse_order(CoxeterSystem(parse_type("A~2")), "s1,s2,s0"));
    const auto& ax = inst.axis();
    EXPECT_TRUE(ax.base_is_axial());
    auto pts = ax.points(3);
    ASSERT_EQ(pts.size(), 7u);
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts[i - 1].theta, pts[i].theta);
    EXPECT_GT(ax.period(), 0);
    // w shifts the axis by μ
    const Vector p = ax.at(Scalar(1, 3));
    EXPECT_EQ(inst.cox().w(p), ax.at(Scalar(4, 3)));
}
