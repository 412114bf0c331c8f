#include "gel/ktheory.hpp"

#include <algorithm>
#include <sstream>

namespace gel {

namespace {

IntMatrix identity(std::size_t n) {
    IntMatrix m(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

// Row and column operations applied to d together with their record in u or v.
struct Reducer {
    IntMatrix d, u, v;
    std::size_t rows, cols;

    void swap_rows(std::size_t a, std::size_t b) {
        std::swap(d[a], d[b]);
        std::swap(u[a], u[b]);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (auto &r : d)
            std::swap(r[a], r[b]);
        for (auto &r : v)
            std::swap(r[a], r[b]);
    }
    // row a -= q * row b
    void sub_row(std::size_t a, std::size_t b, const mpz_class &q) {
        for (std::size_t j = 0; j < cols; ++j)
            d[a][j] -= q * d[b][j];
        for (std::size_t j = 0; j < rows; ++j)
            u[a][j] -= q * u[b][j];
    }
    // col a -= q * col b
    void sub_col(std::size_t a, std::size_t b, const mpz_class &q) {
        for (std::size_t i = 0; i < rows; ++i)
            d[i][a] -= q * d[i][b];
        for (std::size_t i = 0; i < cols; ++i)
            v[i][a] -= q * v[i][b];
    }

    // Moves the smallest nonzero |entry| of the trailing block to (t, t).
    bool pivot(std::size_t t) {
        std::size_t bi = rows, bj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (d[i][j] != 0 && (bi == rows || abs(d[i][j]) < abs(d[bi][bj]))) {
                    bi = i;
                    bj = j;
                }
        if (bi == rows)
            return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    void run() {
        for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
            if (!pivot(t))
                break;
            for (;;) {
                bool clean = true;
                for (std::size_t i = t + 1; i < rows; ++i) {
                    if (d[i][t] == 0)
                        continue;
                    mpz_class q;
                    mpz_tdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
                    sub_row(i, t, q);
                    clean = clean && d[i][t] == 0;
                }
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (d[t][j] == 0)
                        continue;
                    mpz_class q;
                    mpz_tdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
                    sub_col(j, t, q);
                    clean = clean && d[t][j] == 0;
                }
                if (!clean) {
                    pivot(t);
                    continue;
                }
                // the pivot must divide the trailing block
                std::size_t bad = rows;
                for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                    for (std::size_t j = t + 1; j < cols; ++j)
                        if (d[i][j] % d[t][t] != 0) {
                            bad = i;
                            break;
                        }
                if (bad == rows)
                    break;
                sub_row(t, bad, -1);
            }
            if (d[t][t] < 0) {
                for (auto &x : d[t])
                    x = -x;
                for (auto &x : u[t])
                    x = -x;
            }
        }
    }
};

} // namespace

std::size_t SNFResult::rank() const {
    return static_cast<std::size_t>(
        std::count_if(factors.begin(), factors.end(), [](const mpz_class &x) { return x != 0; }));
}

IntMatrix multiply(const IntMatrix &a, const IntMatrix &b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    IntMatrix c(n, std::vector<mpz_class>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j)
                    c[i][j] += a[i][l] * b[l][j];
    return c;
}

mpz_class determinant(IntMatrix m) {
    const std::size_t n = m.size();
    mpz_class sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                // exact by Sylvester's identity
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return n ? sign * m[n - 1][n - 1] : mpz_class(1);
}

SNFResult smith_normal_form(const IntMatrix &m) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (const auto &r : m)
        if (r.size() != cols)
            throw std::invalid_argument("ragged matrix");
    Reducer r{m, identity(rows), identity(cols), rows, cols};
    r.run();
    SNFResult s{std::move(r.u), std::move(r.v), std::move(r.d), {}};
    for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        s.factors.push_back(s.d[i][i]);
    if (multiply(multiply(s.u, m), s.v) != s.d)
        throw std::logic_error("Smith normal form failed re-multiplication");
    return s;
}

std::string AbelianGroup::str() const {
    std::vector<std::string> parts;
    if (free_rank == 1)
        parts.push_back("Z");
    else if (free_rank > 1)
        parts.push_back("Z^" + std::to_string(free_rank));
    for (const auto &t : torsion)
        parts.push_back("Z/" + t.get_str());
    if (parts.empty())
        return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
        out += " ⊕ " + parts[i];
    return out;
}

AbelianGroup cokernel(const SNFResult &s, std::size_t rows) {
    AbelianGroup g;
    g.free_rank = rows - s.rank();
    for (const auto &d : s.factors)
        if (d > 1)
            g.torsion.push_back(d);
    return g;
}

KGroups k_groups(const Graph &g) {
    require_no_sinks(g);
    const auto a = adjacency(g);
    const std::size_t n = a.size();
    IntMatrix m(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = (i == j ? 1 : 0) - a[j][i];
    KGroups k;
    k.snf = smith_normal_form(m);
    k.k0 = cokernel(k.snf, n);
    k.k1.free_rank = n - k.snf.rank();
    return k;
}

} // namespace gel
