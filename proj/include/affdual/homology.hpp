#pragma once

#include <affdual/dual_complex.hpp>

namespace affdual {

using IntMatrix = std::vector<std::vector<BigInt>>;  // row-major

struct SmithForm {
    std::size_t rank = 0;
    std::vector<BigInt> invariants;  // nonzero diagonal, each dividing the next
};

// Smith normal form by elimination on a pivot of least absolute value.
inline SmithForm smith_normal_form(IntMatrix a) {
    SmithForm out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // least nonzero entry in the remaining block
        std::optional<std::pair<std::size_t, std::size_t>> piv;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (!piv || abs(a[i][j]) < abs(a[piv->first][piv->second]))) piv = std::make_pair(i, j);
        if (!piv) break;
        std::swap(a[t], a[piv->first]);
        for (auto& row : a) std::swap(row[t], row[piv->second]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                const BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                const BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto& row : a) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // the pivot must divide the rest of the block
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols && clean; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                        clean = false;
                    }
        }
        out.invariants.push_back(abs(a[t][t]));
        ++t;
    }
    out.rank = t;
    std::sort(out.invariants.begin(), out.invariants.end());
    return out;
}

struct ChainComplex {
    std::vector<std::size_t> cells;        // per dimension
    std::vector<IntMatrix> boundary;       // boundary[d]: C_d → C_{d-1}, d ≥ 1; boundary[0] empty
};

// ∂σ = Σ (−1)^i d_i(σ).
inline ChainComplex chain_complex(const DeltaComplex& k) {
    ChainComplex c;
    const int top = k.dimension();
    std::vector<std::map<Simplex, std::size_t>> index(static_cast<std::size_t>(top + 1));
    for (int d = 0; d <= top; ++d) {
        auto cells = k.cells(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < cells.size(); ++i) index[static_cast<std::size_t>(d)][cells[i]] = i;
        c.cells.push_back(cells.size());
    }
    c.boundary.emplace_back();
    for (int d = 1; d <= top; ++d) {
        const auto ud = static_cast<std::size_t>(d);
        IntMatrix m(c.cells[ud - 1], std::vector<BigInt>(c.cells[ud], 0));
        for (const auto& [s, j] : index[ud])
            for (std::size_t i = 0; i <= s.size(); ++i) {
                auto it = index[ud - 1].find(k.face(s, i));
                if (it == index[ud - 1].end()) throw std::invalid_argument("chain_complex: complex not closed under faces");
                m[it->second][j] += (i % 2 ? -1 : 1);
            }
        c.boundary.push_back(std::move(m));
    }
    return c;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    IntMatrix out(n, std::vector<BigInt>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    return out;
}

inline bool boundary_squares_to_zero(const ChainComplex& c) {
    for (std::size_t d = 2; d < c.boundary.size(); ++d)
        for (const auto& row : multiply(c.boundary[d - 1], c.boundary[d]))
            for (const auto& x : row)
                if (x != 0) return false;
    return true;
}

struct HomologyResult {
    std::vector<std::size_t> betti;
    std::vector<std::vector<BigInt>> torsion;  // per dimension, coefficients > 1
    long euler = 0;

    bool operator==(const HomologyResult& o) const { return betti == o.betti && torsion == o.torsion; }
};

inline HomologyResult homology(const ChainComplex& c) {
    HomologyResult h;
    const std::size_t top = c.cells.size();
    std::vector<SmithForm> snf(top + 1);
    for (std::size_t d = 1; d < top; ++d) snf[d] = smith_normal_form(c.boundary[d]);
    for (std::size_t d = 0; d < top; ++d) {
        const std::size_t out_rank = d >= 1 ? snf[d].rank : 0;
        const std::size_t in_rank = d + 1 < top ? snf[d + 1].rank : 0;
        h.betti.push_back(c.cells[d] - out_rank - in_rank);
        std::vector<BigInt> tor;
        if (d + 1 < top)
            for (const auto& x : snf[d + 1].invariants)
                if (x > 1) tor.push_back(x);
        h.torsion.push_back(std::move(tor));
        h.euler += (d % 2 ? -1 : 1) * static_cast<long>(c.cells[d]);
    }
    while (h.betti.size() > 1 && h.betti.back() == 0 && h.torsion.back().empty()) {
        h.betti.pop_back();
        h.torsion.pop_back();
    }
    return h;
}

inline HomologyResult homology(const DeltaComplex& k) { return homology(chain_complex(k)); }

struct HomologyComparison {
    HomologyResult kprime, xprime;
    bool equal = false;
    bool euler_equal = false;
    bool boundary_ok = false;
};

inline HomologyComparison compare_homology(const DeltaComplex& kprime, const DeltaComplex& xprime) {
    HomologyComparison c;
    const auto ck = chain_complex(kprime), cx = chain_complex(xprime);
    c.boundary_ok = boundary_squares_to_zero(ck) && boundary_squares_to_zero(cx);
    c.kprime = homology(ck);
    c.xprime = homology(cx);
    c.equal = c.kprime == c.xprime;
    c.euler_equal = c.kprime.euler == c.xprime.euler;
    return c;
}

}  // namespace affdual
