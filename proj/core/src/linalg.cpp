#include "addcomb/linalg.hpp"

#include <numeric>

#include "addcomb/errors.hpp"

namespace addcomb {

int integer_rank(std::vector<std::vector<Coord>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    Coord prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        const Coord pivot = m[rank][col];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                // Sylvester's identity keeps this division exact
                Coord t = checked_sub(checked_mul(m[i][j], pivot), checked_mul(m[i][col], m[rank][j]));
                m[i][j] = t / prev;
            }
            m[i][col] = 0;
        }
        prev = pivot;
        ++rank;
    }
    return static_cast<int>(rank);
}

RatMat rat_inverse(RatMat m) {
    const std::size_t n = m.size();
    for (const RatVec& row : m)
        if (row.size() != n) throw Error("rat_inverse: matrix not square");
    RatMat inv(n, RatVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rat(1);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw Error("rat_inverse: singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rat p = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            Rat f = m[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

RatVec rat_mat_vec(const RatMat& m, const RatVec& x) {
    RatVec y(m.size(), Rat(0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != x.size()) throw Error("rat_mat_vec: size mismatch");
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
    }
    return y;
}

RatVec RatRowSpace::reduce(RatVec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const int pc = pivot_col_[r];
        if (v[static_cast<std::size_t>(pc)].is_zero()) continue;
        Rat f = v[static_cast<std::size_t>(pc)] / rows_[r][static_cast<std::size_t>(pc)];
        for (int j = 0; j < cols_; ++j)
            v[static_cast<std::size_t>(j)] -= f * rows_[r][static_cast<std::size_t>(j)];
    }
    return v;
}

bool RatRowSpace::contains(RatVec v) const {
    v = reduce(std::move(v));
    for (const Rat& c : v)
        if (!c.is_zero()) return false;
    return true;
}

bool RatRowSpace::add(RatVec v) {
    v = reduce(std::move(v));
    for (int j = 0; j < cols_; ++j) {
        if (!v[static_cast<std::size_t>(j)].is_zero()) {
            rows_.push_back(std::move(v));
            pivot_col_.push_back(j);
            return true;
        }
    }
    return false;
}

std::optional<Point> integer_kernel_vector(const std::vector<Point>& rows, int dim) {
    RatRowSpace space(dim);
    for (const Point& r : rows) {
        RatVec v(r.begin(), r.end());
        space.add(std::move(v));
    }
    if (space.rank() != dim - 1) return std::nullopt;

    // one free coordinate; find it by testing which unit vector is dependent
    // on the row space complement, then solve by elimination over Q
    RatMat m;
    for (const Point& r : rows) m.emplace_back(r.begin(), r.end());

    // reduced row echelon of m
    std::vector<int> pivots;
    std::size_t rank = 0;
    for (int col = 0; col < dim && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][static_cast<std::size_t>(col)].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        Rat p = m[rank][static_cast<std::size_t>(col)];
        for (int j = 0; j < dim; ++j) m[rank][static_cast<std::size_t>(j)] /= p;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank) continue;
            Rat f = m[i][static_cast<std::size_t>(col)];
            if (f.is_zero()) continue;
            for (int j = 0; j < dim; ++j)
                m[i][static_cast<std::size_t>(j)] -= f * m[rank][static_cast<std::size_t>(j)];
        }
        pivots.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(static_cast<std::size_t>(dim), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    int free_col = -1;
    for (int c = 0; c < dim; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) {
            free_col = c;
            break;
        }

    RatVec sol(static_cast<std::size_t>(dim), Rat(0));
    sol[static_cast<std::size_t>(free_col)] = Rat(1);
    for (std::size_t r = 0; r < rank; ++r)
        sol[static_cast<std::size_t>(pivots[r])] = -m[r][static_cast<std::size_t>(free_col)];

    Coord lcm = 1;
    for (const Rat& c : sol) lcm = checked_mul(lcm / std::gcd(lcm, c.den()), c.den());
    Point k(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) {
        const Rat& c = sol[static_cast<std::size_t>(j)];
        k[static_cast<std::size_t>(j)] = checked_mul(c.num(), lcm / c.den());
    }
    return Direction(k).vec();  // primitive form
}

} // namespace addcomb
