#include <affdual/morse.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace affdual;

namespace {

AffineInstance instance(const char* type, const char* order = "") {
    CoxeterSystem sys(parse_type(type));
    std::optional<std::vector<std::size_t>> o;
    if (*order) o = parse_order(sys, order);
    return AffineInstance(parse_type(type), o);
}

std::function<std::string(int)> namer(const EuclideanInterval& e, const ReflectionOrder& ax) {
    auto ranks = std::make_shared<std::vector<int>>(generator_ranks(*e.group, ax));
    return [&e, ranks](int id) -> std::string {
        auto node = e.poset.node(id);
        if (!node) return "?";
        std::string s;
        for (int x = 0; x != *node;) {
            const Cover* best = nullptr;
            for (const auto& c : e.poset.up[static_cast<std::size_t>(x)])
                if (e.poset.leq(c.to, *node) &&
                    (!best || (*ranks)[static_cast<std::size_t>(c.gen)] < (*ranks)[static_cast<std::size_t>(best->gen)]))
                    best = &c;
            s += (s.empty() ? "" : "*") + e.group->generators()[static_cast<std::size_t>(best->gen)].name;
            x = best->to;
        }
        return s;
    };
}

// Bareiss determinant, exact over the integers.
BigInt determinant(IntMatrix a) {
    const std::size_t n = a.size();
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return n ? sign * a[n - 1][n - 1] : BigInt(1);
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Invariant factors d_k/d_{k−1} from gcds of k×k minors.
std::vector<BigInt> invariant_factors_by_minors(const IntMatrix& a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<BigInt> out;
    BigInt prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        BigInt g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                IntMatrix m(k, std::vector<BigInt>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m[i][j] = a[r[i]][c[j]];
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), BigInt(determinant(m)).get_mpz_t());
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

std::vector<BigInt> absolute(std::vector<BigInt> v) {
    for (auto& x : v) x = abs(x);
    return v;
}

}  // namespace

TEST(SmithNormalForm, AgreesWithDeterminantalDivisors) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> entry(-4, 4), dim(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
        IntMatrix a(r, std::vector<BigInt>(c));
        for (auto& row : a)
            for (auto& x : row) x = entry(rng);
        auto snf = smith_normal_form(a);
        auto oracle = invariant_factors_by_minors(a);
        EXPECT_EQ(snf.rank, oracle.size());
        EXPECT_EQ(absolute(snf.invariants), oracle);
    }
}

TEST(SmithNormalForm, InvariantUnderRowAndColumnPermutation) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix a(4, std::vector<BigInt>(5));
        for (auto& row : a)
            for (auto& x : row) x = entry(rng);
        auto base = smith_normal_form(a);
        std::vector<std::size_t> rp{0, 1, 2, 3}, cp{0, 1, 2, 3, 4};
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        IntMatrix b(4, std::vector<BigInt>(5));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) b[i][j] = a[rp[i]][cp[j]];
        auto perm = smith_normal_form(b);
        EXPECT_EQ(perm.rank, base.rank);
        EXPECT_EQ(absolute(perm.invariants), absolute(base.invariants));
    }
}

// One cell per dimension for the projective plane; torus with trivial boundaries.
TEST(Homology, SmallChainComplexes) {
    ChainComplex rp2;
    rp2.cells = {1, 1, 1};
    rp2.boundary = {{}, {{0}}, {{2}}};
    auto h = homology(rp2);
    EXPECT_EQ(h.betti, (std::vector<std::size_t>{1, 0}));
    ASSERT_EQ(h.torsion.size(), 2u);
    EXPECT_TRUE(h.torsion[0].empty());
    EXPECT_EQ(h.torsion[1], (std::vector<BigInt>{2}));
    EXPECT_EQ(h.euler, 1);

    ChainComplex torus;
    torus.cells = {1, 2, 1};
    torus.boundary = {{}, {{0, 0}}, {{0}, {0}}};
    EXPECT_EQ(homology(torus).betti, (std::vector<std::size_t>{1, 2, 1}));
    EXPECT_EQ(homology(torus).euler, 0);
    EXPECT_TRUE(boundary_squares_to_zero(torus));
}

TEST(Homology, DualSymmetricGroups) {
    PermutationGroup s3(3, true);
    auto p3 = enumerate_interval(s3);
    auto k3 = interval_complex(p3, s3);
    auto h3 = homology(k3);
    EXPECT_EQ(h3.betti, (std::vector<std::size_t>{1, 1}));
    EXPECT_TRUE(boundary_squares_to_zero(chain_complex(k3)));

    PermutationGroup s4(4, true);
    auto p4 = enumerate_interval(s4);
    auto k4 = interval_complex(p4, s4);
    EXPECT_TRUE(boundary_squares_to_zero(chain_complex(k4)));
    const auto h4 = homology(k4);
    EXPECT_EQ(h4.betti[0], 1u);
    long chi = 0;
    for (std::size_t d = 0; d < h4.betti.size(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<long>(h4.betti[d]);
    EXPECT_EQ(chi, h4.euler);
}

TEST(MorseMatching, TypeA2Table) {
    auto inst = instance("A~2", "s1,s2,s0");
    auto e = make_interval(inst, 3);
    AffineComplex k(e);
    auto ax = axial_order(e);
    auto an = k.analyze();
    MorseMatching mm(k, ax);
    auto [mat, cert] = mm.build_and_verify(an.kprime);
    EXPECT_TRUE(cert.ok());
    EXPECT_EQ(cert.depth_vacuous, 0u);
    EXPECT_EQ(cert.cases, (std::array<std::size_t, 4>{4, 4, 6, 6}));
    auto name = namer(e, ax);
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& [a, b] : mat.pairs) got.insert({simplex_name(a, name), simplex_name(b, name)});
    const std::set<std::pair<std::string, std::string>> expected{
        {"[s1@1*s2*s0@0]", "[s1@1|s2*s0@0]"},
        {"[s0@2*s0@0]", "[s2|s0@2*s0@0]"},
        {"[s1@1*s1@-1]", "[s2~1|s1@1*s1@-1]"},
        {"[s1@1|s1@-1]", "[s2~1|s1@1|s1@-1]"},
        {"[s0@2|s0@0]", "[s2|s0@2|s0@0]"},
        {"[s0@2|s1@1*s0@0]", "[s0@2|s1@1|s0@0]"},
        {"[s0@2*s0@0|s2~1]", "[s0@2|s0@0|s2~1]"},
        {"[s1@1*s2|s0@0]", "[s1@1|s2|s0@0]"},
        {"[s1@1*s0@0|s1@-1]", "[s1@1|s0@0|s1@-1]"},
        {"[s1@1*s1@-1|s2]", "[s1@1|s1@-1|s2]"},
    };
    EXPECT_EQ(got, expected);

    // unmatched cells of K′ are exactly X′
    std::set<Simplex> matched;
    for (const auto& [a, b] : mat.pairs) {
        matched.insert(a);
        matched.insert(b);
        EXPECT_EQ(b.size(), a.size() + 1);
        auto faces = an.kprime.faces(b);
        EXPECT_NE(std::find(faces.begin(), faces.end(), a), faces.end());
    }
    for (const auto& s : an.kprime.all_cells()) EXPECT_EQ(matched.count(s) == 0, k.in_xprime(s));
}

TEST(MorseMatching, CertifiedInSmallTypes) {
    for (const char* t : {"A~2", "C~2", "G~2"}) {
        auto inst = instance(t);
        auto e = make_interval(inst, 3);
        AffineComplex k(e);
        auto ax = axial_order(e);
        auto an = k.analyze();
        MorseMatching mm(k, ax);
        auto [mat, cert] = mm.build_and_verify(an.kprime);
        EXPECT_TRUE(cert.ok()) << t;
        EXPECT_EQ(2 * mat.pairs.size() + an.xprime.size(), an.kprime.size()) << t;
        auto cm = component_matching(k, an.components);
        EXPECT_TRUE(cm.segment_critical) << t;
        EXPECT_TRUE(cm.eta_monotone) << t;
        EXPECT_TRUE(cm.acyclic) << t;
    }
}

// H(K′) = H(X′), computed independently over the integers.
TEST(MorseMatching, HomologyAgrees) {
    struct Case {
        const char* type;
        std::vector<std::size_t> betti;
    };
    for (const Case& c : {Case{"A~2", {1, 1, 1}}, Case{"C~2", {1, 3, 3}}, Case{"G~2", {1, 2, 2}}}) {
        auto inst = instance(c.type);
        auto e = make_interval(inst, 3);
        AffineComplex k(e);
        auto an = k.analyze();
        auto hc = compare_homology(an.kprime, an.xprime);
        EXPECT_TRUE(hc.boundary_ok) << c.type;
        EXPECT_TRUE(hc.equal) << c.type;
        EXPECT_TRUE(hc.euler_equal) << c.type;
        EXPECT_EQ(hc.kprime.betti, c.betti) << c.type;
        EXPECT_EQ(hc.kprime.betti[0], 1u);
        for (const auto& t : hc.kprime.torsion) EXPECT_TRUE(t.empty());
    }
}
