#pragma once

#include <affdual/coxeter_type.hpp>
#include <affdual/isometry.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace affdual {

// Finite crystallographic root system in rational coordinates. Mirrors of the
// associated affine group are {x : ⟨α,x⟩ = k}, α positive, k ∈ Z.
struct RootData {
    std::size_t ambient = 0;
    EssentialSpace ess;
    std::vector<Vector> simple_roots;
    std::vector<Vector> positive_roots;
    Vector highest_root;
    std::vector<std::string> names;  // simple reflections, then the affine one
};

namespace detail {

inline Vector reflect_vector(const Vector& x, const Vector& alpha) {
    return x - (Scalar(2) * dot(x, alpha) / dot(alpha, alpha)) * alpha;
}

inline Vector half_vector(std::initializer_list<int> signs) {
    Vector v;
    for (int s : signs) v.push_back(make_scalar(s, 2));
    return v;
}

inline RootData complete(std::size_t ambient, std::vector<Vector> simple, std::vector<std::string> names) {
    RootData d;
    d.ambient = ambient;
    d.simple_roots = simple;
    d.names = std::move(names);
    if (simple.size() < ambient) d.ess.basis = independent_subset(simple, ambient);

    std::set<Vector> roots(simple.begin(), simple.end());
    std::vector<Vector> frontier(simple.begin(), simple.end());
    while (!frontier.empty()) {
        std::vector<Vector> next;
        for (const auto& r : frontier)
            for (const auto& s : simple) {
                Vector img = reflect_vector(r, s);
                if (roots.insert(img).second) next.push_back(img);
            }
        frontier = std::move(next);
    }
    // positive iff positive against the dual vector of the simple roots
    Matrix gram(simple.size(), simple.size());
    Vector ones(simple.size(), Scalar(1));
    for (std::size_t i = 0; i < simple.size(); ++i)
        for (std::size_t j = 0; j < simple.size(); ++j) gram(i, j) = dot(simple[i], simple[j]);
    auto c = solve(gram, ones);
    Vector rho = zero_vector(ambient);
    for (std::size_t i = 0; i < simple.size(); ++i) rho = rho + (*c)[i] * simple[i];
    Scalar best = -1;
    for (const auto& r : roots) {
        Scalar h = dot(r, rho);
        if (h > 0) {
            d.positive_roots.push_back(r);
            if (h > best) {
                best = h;
                d.highest_root = r;
            }
        }
    }
    return d;
}

inline std::vector<std::string> chain_names(int n) {
    std::vector<std::string> names{"s1"};
    for (int i = 1; i < n; ++i) names.push_back("s" + std::to_string(i) + "_" + std::to_string(i + 1));
    return names;
}

}  // namespace detail

inline RootData root_data(const CoxeterType& type) {
    validate(type);
    const int n = type.rank;
    auto e = [](std::size_t dim, std::size_t i) { return unit_vector(dim, i); };
    std::vector<Vector> simple;
    std::vector<std::string> names;
    std::size_t ambient = static_cast<std::size_t>(n);

    if (!type.affine || type.family == Family::A) {
        // sum-zero hyperplane of R^{n+1}; roots e_i − e_j
        ambient = static_cast<std::size_t>(n) + 1;
        for (int i = 0; i < n; ++i) {
            simple.push_back(e(ambient, i) - e(ambient, i + 1));
            names.push_back("s" + std::to_string(i + 1));
        }
        if (type.affine) names.push_back("s0");
        return detail::complete(ambient, simple, names);
    }
    switch (type.family) {
    case Family::B:
        // chamber 0 < x_1 < ... < x_n, x_{n-1} + x_n < 1
        simple.push_back(e(ambient, 0));
        for (int i = 0; i + 1 < n; ++i) simple.push_back(e(ambient, i + 1) - e(ambient, i));
        names = detail::chain_names(n);
        break;
    case Family::C: {
        // half of C_n, so that the chamber is 0 < x_1 < ... < x_n < 1
        simple.push_back(e(ambient, 0));
        for (int i = 0; i + 1 < n; ++i) simple.push_back(make_scalar(1, 2) * (e(ambient, i + 1) - e(ambient, i)));
        names = detail::chain_names(n);
        break;
    }
    case Family::D:
        simple.push_back(e(ambient, 0) + e(ambient, 1));
        for (int i = 0; i + 1 < n; ++i) simple.push_back(e(ambient, i + 1) - e(ambient, i));
        names = {"s1p2"};
        for (int i = 1; i < n; ++i) names.push_back("s" + std::to_string(i) + "_" + std::to_string(i + 1));
        break;
    case Family::G:
        ambient = 3;
        simple = {Vector{1, -1, 0}, Vector{-2, 1, 1}};
        names = {"s1", "s2"};
        break;
    case Family::F:
        simple = {Vector{0, 1, -1, 0}, Vector{0, 0, 1, -1}, Vector{0, 0, 0, 1}, detail::half_vector({1, -1, -1, -1})};
        names = {"s1", "s2", "s3", "s4"};
        break;
    case Family::E: {
        ambient = 8;
        std::vector<Vector> e8 = {detail::half_vector({1, -1, -1, -1, -1, -1, -1, 1}),
                                  e(8, 0) + e(8, 1),
                                  e(8, 1) - e(8, 0),
                                  e(8, 2) - e(8, 1),
                                  e(8, 3) - e(8, 2),
                                  e(8, 4) - e(8, 3),
                                  e(8, 5) - e(8, 4),
                                  e(8, 6) - e(8, 5)};
        simple.assign(e8.begin(), e8.begin() + n);
        for (int i = 0; i < n; ++i) names.push_back("s" + std::to_string(i + 1));
        break;
    }
    case Family::A: break;
    }
    names.push_back("s0");
    return detail::complete(ambient, simple, names);
}

}  // namespace affdual
