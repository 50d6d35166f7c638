#pragma once

#include "bellscope/quantum.hpp"
#include "bellscope/rng.hpp"

namespace bellscope::testing {

inline Vector4c random_state_vector(Rng& rng) {
    Vector4c v;
    for (int i = 0; i < 4; ++i) v(i) = Complex(rng.normal(), rng.normal());
    v.normalize();
    return v;
}

// Mixture of up to four random pure states: a generic valid density operator.
inline TwoQubitState random_two_qubit_state(Rng& rng) {
    std::size_t k = 1 + rng.below(4);
    std::vector<double> w = rng.dirichlet(k);
    Matrix4c rho = Matrix4c::Zero();
    for (std::size_t i = 0; i < k; ++i) {
        Vector4c v = random_state_vector(rng);
        rho += w[i] * (v * v.adjoint());
    }
    return TwoQubitState(rho);
}

inline BlochSetting random_direction(Rng& rng) {
    double x = rng.normal(), y = rng.normal(), z = rng.normal();
    double n = std::sqrt(x * x + y * y + z * z);
    while (n < 1e-6) {
        x = rng.normal(); y = rng.normal(); z = rng.normal();
        n = std::sqrt(x * x + y * y + z * z);
    }
    return BlochSetting(x / n, y / n, z / n);
}

} // namespace bellscope::testing
