#pragma once

#include <cstddef>
#include <vector>

#include "bellscope/errors.hpp"
#include "bellscope/rational.hpp"

namespace bellscope {

// Exact phase-1 simplex for the equality-form feasibility problem
//
//     find x >= 0 with A x = b,
//
// minimizing the sum of one artificial variable per row. Bland's smallest-
// index rule is used for both the entering and leaving choice, which rules
// out cycling. Everything is cpp_rational, so verdicts carry no tolerance.
//
// On success the basic feasible solution is returned. On failure the Farkas
// dual y is returned, satisfying  y.A <= 0 (componentwise over columns) and
// y.b > 0 — an independently checkable proof that no solution exists.
struct Phase1Result {
    bool feasible = false;
    std::vector<Rational> solution; // size n when feasible
    std::vector<Rational> farkas;   // size m when infeasible
};

class EqualityFeasibility {
public:
    // A is row-major, m rows of n columns.
    EqualityFeasibility(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs)
        : a_(std::move(rows)), b_(std::move(rhs)) {
        m_ = a_.size();
        n_ = m_ ? a_[0].size() : 0;
        for (const auto& row : a_)
            if (row.size() != n_) throw DomainError("simplex: ragged constraint matrix");
        if (b_.size() != m_) throw DomainError("simplex: rhs size mismatch");
    }

    Phase1Result solve() const {
        // Tableau columns: n structural, then m artificial, then rhs.
        std::size_t cols = n_ + m_;
        std::vector<std::vector<Rational>> tab(m_, std::vector<Rational>(cols + 1, Rational(0)));
        for (std::size_t i = 0; i < m_; ++i) {
            bool flip = b_[i] < 0;
            for (std::size_t j = 0; j < n_; ++j) tab[i][j] = flip ? Rational(-a_[i][j]) : a_[i][j];
            tab[i][n_ + i] = Rational(1);
            tab[i][cols] = flip ? Rational(-b_[i]) : b_[i];
        }
        std::vector<std::size_t> basis(m_);
        for (std::size_t i = 0; i < m_; ++i) basis[i] = n_ + i;

        // Reduced-cost row q_j = z_j - c_j for the phase-1 objective
        // (c = 0 on structural, 1 on artificial columns). Entering while any
        // q_j > 0; at the start q_j is the column sum for structural columns.
        std::vector<Rational> q(cols + 1, Rational(0));
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t i = 0; i < m_; ++i) q[j] += tab[i][j];
        for (std::size_t i = 0; i < m_; ++i) q[cols] += tab[i][cols];

        while (true) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j)
                if (q[j] > 0) { enter = j; break; }
            if (enter == cols) break;

            std::size_t leave = m_;
            Rational best_ratio(0);
            for (std::size_t i = 0; i < m_; ++i) {
                if (tab[i][enter] <= 0) continue;
                Rational ratio = tab[i][cols] / tab[i][enter];
                if (leave == m_ || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m_)
                throw DomainError("simplex: phase-1 unbounded (cannot happen)");

            pivot(tab, q, basis, leave, enter, cols);
        }

        Phase1Result out;
        if (q[cols] == 0) {
            out.feasible = true;
            out.solution.assign(n_, Rational(0));
            for (std::size_t i = 0; i < m_; ++i)
                if (basis[i] < n_) out.solution[basis[i]] = tab[i][cols];
        } else {
            out.feasible = false;
            out.farkas.assign(m_, Rational(0));
            // Dual values from the artificial reduced costs: q_{n+i} = y_i - 1.
            for (std::size_t i = 0; i < m_; ++i) {
                Rational y = q[n_ + i] + 1;
                out.farkas[i] = b_[i] < 0 ? Rational(-y) : y;
            }
        }
        return out;
    }

private:
    static void pivot(std::vector<std::vector<Rational>>& tab, std::vector<Rational>& q,
                      std::vector<std::size_t>& basis, std::size_t leave, std::size_t enter,
                      std::size_t cols) {
        Rational inv = Rational(1) / tab[leave][enter];
        for (std::size_t j = 0; j <= cols; ++j) tab[leave][j] *= inv;
        for (std::size_t i = 0; i < tab.size(); ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            Rational factor = tab[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= factor * tab[leave][j];
        }
        if (q[enter] != 0) {
            Rational factor = q[enter];
            for (std::size_t j = 0; j <= cols; ++j) q[j] -= factor * tab[leave][j];
        }
        basis[leave] = enter;
    }

    std::vector<std::vector<Rational>> a_;
    std::vector<Rational> b_;
    std::size_t m_ = 0, n_ = 0;
};

} // namespace bellscope
