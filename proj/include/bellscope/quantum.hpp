#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "bellscope/hv_model.hpp"
#include "bellscope/phenomenon.hpp"

namespace bellscope {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

// Projective spin measurement direction on the Bloch sphere.
struct BlochSetting {
    double x = 0, y = 0, z = 1;

    BlochSetting() = default;
    BlochSetting(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
        double n = std::sqrt(x * x + y * y + z * z);
        if (std::fabs(n - 1.0) > 1e-12)
            throw DomainError("bloch setting: direction must be a unit vector");
    }

    // Polar angle in the z-x plane; the file format speaks in these.
    static BlochSetting from_polar(double theta) {
        return BlochSetting(std::sin(theta), 0.0, std::cos(theta));
    }
};

// n.sigma for the stored direction.
inline Matrix2c pauli_dot(const BlochSetting& n) {
    Matrix2c m;
    m << Complex(n.z, 0), Complex(n.x, -n.y), Complex(n.x, n.y), Complex(-n.z, 0);
    return m;
}

// Projector onto the +1 or -1 eigenspace of n.sigma, per the outcome-index
// convention (index 0 <-> +1).
inline Matrix2c outcome_projector(std::size_t outcome_index, const BlochSetting& n) {
    double sign = outcome_index == 0 ? 1.0 : -1.0;
    return 0.5 * (Matrix2c::Identity() + sign * pauli_dot(n));
}

inline Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

// Two-qubit density operator, basis order |00>, |01>, |10>, |11>.
class TwoQubitState {
public:
    explicit TwoQubitState(Matrix4c rho) : rho_(std::move(rho)) { validate(); }

    const Matrix4c& rho() const { return rho_; }

    double purity() const { return (rho_ * rho_).trace().real(); }

private:
    void validate() const {
        if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw InvalidState("density matrix is not Hermitian");
        if (std::fabs(rho_.trace().real() - 1.0) > 1e-12 || std::fabs(rho_.trace().imag()) > 1e-12)
            throw InvalidState("density matrix trace is not 1");
        Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (rho_ + rho_.adjoint()),
                                                   Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw InvalidState("density matrix has a negative eigenvalue");
    }

    Matrix4c rho_;
};

inline Vector4c singlet_vector() {
    Vector4c v;
    v << Complex(0), Complex(M_SQRT1_2), Complex(-M_SQRT1_2), Complex(0);
    return v;
}

// (|01> - |10>)/sqrt(2) as a density operator.
inline TwoQubitState singlet() {
    Vector4c v = singlet_vector();
    return TwoQubitState(v * v.adjoint());
}

// v * singlet + (1-v) * I/4.
inline TwoQubitState werner(double visibility) {
    if (visibility < 0.0 || visibility > 1.0)
        throw DomainError("werner: visibility must lie in [0,1]");
    Matrix4c rho = visibility * singlet().rho() +
                   (1.0 - visibility) * 0.25 * Matrix4c::Identity();
    return TwoQubitState(rho);
}

// Born rule: f(A,B|a,b) = tr[rho (Pi_A^a (x) Pi_B^b)].
inline Phenomenon<double> born_phenomenon(const TwoQubitState& state,
                                          const std::vector<BlochSetting>& alice_dirs,
                                          const std::vector<BlochSetting>& bob_dirs) {
    if (alice_dirs.empty() || bob_dirs.empty())
        throw DomainError("born_phenomenon: direction lists must be nonempty");
    Scenario sc(alice_dirs.size(), bob_dirs.size(), 2, 2);
    std::vector<double> t(sc.cells(), 0.0);
    for (std::size_t a = 0; a < alice_dirs.size(); ++a)
        for (std::size_t b = 0; b < bob_dirs.size(); ++b)
            for (std::size_t A = 0; A < 2; ++A)
                for (std::size_t B = 0; B < 2; ++B) {
                    Matrix4c op = kron2(outcome_projector(A, alice_dirs[a]),
                                        outcome_projector(B, bob_dirs[b]));
                    t[sc.cell(a, b, A, B)] = (state.rho() * op).trace().real();
                }
    return Phenomenon<double>(sc, std::move(t), 1e-10);
}

// Pure-state decomposition of a mixed state: lambda indexes the members.
struct PureEnsemble {
    TwoQubitState mixture;
    std::vector<std::pair<double, Vector4c>> members; // (weight, state vector)

    PureEnsemble(TwoQubitState mix, std::vector<std::pair<double, Vector4c>> mem)
        : mixture(std::move(mix)), members(std::move(mem)) {
        double wsum = 0.0;
        Matrix4c recon = Matrix4c::Zero();
        for (const auto& [w, v] : members) {
            if (w < -1e-12) throw EnsembleMismatch("ensemble: negative weight");
            if (std::fabs(v.squaredNorm() - 1.0) > 1e-10)
                throw EnsembleMismatch("ensemble: member vector not normalized");
            wsum += w;
            recon += w * (v * v.adjoint());
        }
        if (std::fabs(wsum - 1.0) > 1e-10)
            throw EnsembleMismatch("ensemble: weights sum to " + num_to_string(wsum));
        if ((recon - mixture.rho()).cwiseAbs().maxCoeff() > 1e-10)
            throw EnsembleMismatch("ensemble: members do not reconstruct the mixture");
    }
};

// The stochastic hidden-variable model where lambda is a pure quantum state:
// prior = ensemble weights, response = the Born table of each member.
inline HVModel<double> pure_ensemble_model(const PureEnsemble& ensemble,
                                           const std::vector<BlochSetting>& alice_dirs,
                                           const std::vector<BlochSetting>& bob_dirs) {
    Scenario sc(alice_dirs.size(), bob_dirs.size(), 2, 2);
    std::vector<std::string> labels;
    std::vector<double> prior;
    std::vector<double> response;
    for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
        const auto& [w, v] = ensemble.members[i];
        labels.push_back("psi" + std::to_string(i));
        prior.push_back(w);
        TwoQubitState pure(v * v.adjoint());
        Phenomenon<double> table = born_phenomenon(pure, alice_dirs, bob_dirs);
        response.insert(response.end(), table.table().begin(), table.table().end());
    }
    return HVModel<double>(sc, std::move(labels), std::move(prior), std::move(response), 1e-9);
}

} // namespace bellscope
