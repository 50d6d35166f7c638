#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "bellscope/causal_model.hpp"

namespace bellscope {

namespace detail {

inline std::size_t set_states(const JointDistribution& jd, const std::vector<std::size_t>& set) {
    std::size_t n = 1;
    for (std::size_t v : set) n *= jd.arity[v];
    return n;
}

inline std::size_t set_key(const JointDistribution& jd, const std::vector<std::size_t>& set,
                           std::size_t flat) {
    std::size_t key = 0;
    for (std::size_t v : set) key = key * jd.arity[v] + jd.value_of(flat, v);
    return key;
}

} // namespace detail

// max over assignments (with P(z) > 0) of |P(x,y|z) - P(x|z) P(y|z)|.
// Z empty gives the unconditional dependence gap.
inline double dependence_gap(const JointDistribution& jd, const std::vector<std::size_t>& X,
                             const std::vector<std::size_t>& Y,
                             const std::vector<std::size_t>& Z = {}) {
    std::size_t nx = detail::set_states(jd, X), ny = detail::set_states(jd, Y),
                nz = detail::set_states(jd, Z);
    std::vector<double> pxyz(nx * ny * nz, 0.0), pxz(nx * nz, 0.0), pyz(ny * nz, 0.0),
        pz(nz, 0.0);
    for (std::size_t flat = 0; flat < jd.states(); ++flat) {
        double p = jd.p[flat];
        if (p == 0.0) continue;
        std::size_t kx = detail::set_key(jd, X, flat);
        std::size_t ky = detail::set_key(jd, Y, flat);
        std::size_t kz = detail::set_key(jd, Z, flat);
        pxyz[(kx * ny + ky) * nz + kz] += p;
        pxz[kx * nz + kz] += p;
        pyz[ky * nz + kz] += p;
        pz[kz] += p;
    }
    double gap = 0.0;
    for (std::size_t kz = 0; kz < nz; ++kz) {
        if (pz[kz] <= 0.0) continue;
        for (std::size_t kx = 0; kx < nx; ++kx)
            for (std::size_t ky = 0; ky < ny; ++ky) {
                double lhs = pxyz[(kx * ny + ky) * nz + kz] / pz[kz];
                double rhs = (pxz[kx * nz + kz] / pz[kz]) * (pyz[ky * nz + kz] / pz[kz]);
                gap = std::max(gap, std::fabs(lhs - rhs));
            }
    }
    return gap;
}

inline bool conditionally_independent(const JointDistribution& jd,
                                      const std::vector<std::size_t>& X,
                                      const std::vector<std::size_t>& Y,
                                      const std::vector<std::size_t>& Z, double tol = 1e-9) {
    return dependence_gap(jd, X, Y, Z) <= tol;
}

inline bool correlated(const JointDistribution& jd, const std::vector<std::size_t>& X,
                       const std::vector<std::size_t>& Y, double tol = 1e-9) {
    return dependence_gap(jd, X, Y, {}) > tol;
}

// Convenience overloads working from the model directly.
inline bool conditionally_independent(const CausalModel& m, const std::vector<std::size_t>& X,
                                      const std::vector<std::size_t>& Y,
                                      const std::vector<std::size_t>& Z, double tol = 1e-9,
                                      std::size_t cap = 10000000) {
    return conditionally_independent(joint_distribution(m, cap), X, Y, Z, tol);
}

// All subsets of `pool` with size <= max_size, smallest first, each sorted;
// deterministic enumeration order shared by every screening search.
inline std::vector<std::vector<std::size_t>> subsets_up_to(const std::vector<std::size_t>& pool,
                                                           std::size_t max_size) {
    std::vector<std::vector<std::size_t>> out;
    std::size_t n = pool.size();
    for (std::size_t size = 0; size <= std::min(max_size, n); ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            std::vector<std::size_t> subset;
            for (std::size_t i : idx) subset.push_back(pool[i]);
            out.push_back(std::move(subset));
            std::size_t i = size;
            while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t k = i; k < size; ++k) idx[k] = idx[k - 1] + 1;
        }
    }
    return out;
}

} // namespace bellscope
