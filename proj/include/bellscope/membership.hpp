#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bellscope/hv_model.hpp"
#include "bellscope/phenomenon.hpp"
#include "bellscope/properties.hpp"
#include "bellscope/simplex.hpp"
#include "bellscope/strategies.hpp"

namespace bellscope {

// Separating functional proving non-membership: its maximum over all
// deterministic strategies is vertex_bound (recomputed by enumeration, not
// trusted from the solver), and its value on the input table exceeds that.
// Certificates are canonicalized: per-(a,b)-block zero mean, then scaled so
// the vertex bound is exactly 2 when positive — the CHSH presentation.
struct Certificate {
    std::vector<Rational> cell_coeffs;
    Rational vertex_bound{0};
    Rational phenomenon_value{0};
};

struct MembershipResult {
    bool member = false;
    std::vector<Rational> weights; // per strategy, canonical order; empty if !member
    std::optional<Certificate> certificate;
};

// Maximum of a linear functional (coefficients per canonical cell) over all
// deterministic strategies.
inline Rational local_bound(const std::vector<Rational>& cell_coeffs, const Scenario& sc,
                            std::size_t cap = 1000000) {
    if (cell_coeffs.size() != sc.cells())
        throw DomainError("local_bound: coefficient vector has wrong size");
    bool first = true;
    Rational best(0);
    for (const DeterministicStrategy& s : enumerate_strategies(sc, cap)) {
        Rational v(0);
        for (std::size_t a = 0; a < sc.alice_settings; ++a)
            for (std::size_t b = 0; b < sc.bob_settings; ++b)
                v += cell_coeffs[sc.cell(a, b, s.alice_map[a], s.bob_map[b])];
        if (first || v > best) { best = v; first = false; }
    }
    return best;
}

inline Rational functional_value(const std::vector<Rational>& coeffs,
                                 const Phenomenon<Rational>& ph) {
    Rational v(0);
    for (std::size_t c = 0; c < coeffs.size(); ++c) v += coeffs[c] * ph.table()[c];
    return v;
}

namespace detail {

inline Certificate canonical_certificate(std::vector<Rational> g, const Phenomenon<Rational>& ph,
                                         std::size_t cap) {
    const Scenario& sc = ph.scenario();
    // Shifting all cells of one (a,b) block by a constant moves the value on
    // every normalized table and on every vertex by the same amount, so the
    // separation is invariant. Zero block means fix the presentation.
    std::size_t per = sc.outcomes_per_pair();
    for (std::size_t blk = 0; blk < sc.setting_pairs(); ++blk) {
        Rational mean(0);
        for (std::size_t k = 0; k < per; ++k) mean += g[blk * per + k];
        mean /= Rational(per);
        for (std::size_t k = 0; k < per; ++k) g[blk * per + k] -= mean;
    }
    Certificate cert;
    Rational bound = local_bound(g, sc, cap);
    if (bound > 0) {
        Rational scale = Rational(2) / bound;
        for (Rational& c : g) c *= scale;
        bound = Rational(2);
    }
    cert.cell_coeffs = std::move(g);
    cert.vertex_bound = bound;
    cert.phenomenon_value = functional_value(cert.cell_coeffs, ph);
    return cert;
}

} // namespace detail

// Decide Bell-locality exactly: is f a convex combination of deterministic
// strategies? Variables are strategy weights; equality rows are the table
// cells plus normalization. Returns exact weights, or a Farkas certificate
// pulled from the phase-1 duals. Both answers are re-verified by direct
// arithmetic before being returned.
inline MembershipResult membership(const Phenomenon<Rational>& ph, std::size_t cap = 1000000) {
    const Scenario& sc = ph.scenario();
    std::vector<DeterministicStrategy> strategies = enumerate_strategies(sc, cap);
    std::size_t ncells = sc.cells(), nstrat = strategies.size();

    std::vector<std::vector<Rational>> rows(ncells + 1, std::vector<Rational>(nstrat, Rational(0)));
    for (std::size_t s = 0; s < nstrat; ++s) {
        for (std::size_t a = 0; a < sc.alice_settings; ++a)
            for (std::size_t b = 0; b < sc.bob_settings; ++b)
                rows[sc.cell(a, b, strategies[s].alice_map[a], strategies[s].bob_map[b])][s] =
                    Rational(1);
        rows[ncells][s] = Rational(1);
    }
    std::vector<Rational> rhs(ph.table());
    rhs.push_back(Rational(1));

    Phase1Result r = EqualityFeasibility(rows, rhs).solve();
    MembershipResult out;
    if (r.feasible) {
        out.member = true;
        out.weights = std::move(r.solution);
        Rational wsum(0);
        std::vector<Rational> recon(ncells, Rational(0));
        for (std::size_t s = 0; s < nstrat; ++s) {
            if (out.weights[s] < 0)
                throw DomainError("membership: solver returned a negative weight");
            wsum += out.weights[s];
            if (out.weights[s] == 0) continue;
            for (std::size_t a = 0; a < sc.alice_settings; ++a)
                for (std::size_t b = 0; b < sc.bob_settings; ++b)
                    recon[sc.cell(a, b, strategies[s].alice_map[a], strategies[s].bob_map[b])] +=
                        out.weights[s];
        }
        if (wsum != 1) throw DomainError("membership: weights do not sum to 1");
        for (std::size_t c = 0; c < ncells; ++c)
            if (recon[c] != ph.table()[c])
                throw DomainError("membership: weights fail to reproduce the table");
    } else {
        out.member = false;
        std::vector<Rational> g(r.farkas.begin(), r.farkas.begin() + ncells);
        Certificate cert = detail::canonical_certificate(std::move(g), ph, cap);
        if (cert.phenomenon_value <= cert.vertex_bound)
            throw DomainError("membership: certificate does not separate");
        out.certificate = std::move(cert);
    }
    return out;
}

// Fine's theorem, constructive forward direction: a member phenomenon's
// weights become a predetermined local model with one lambda per strategy.
inline HVModel<Rational> model_from_weights(const MembershipResult& result,
                                            const Scenario& sc, std::size_t cap = 1000000) {
    if (!result.member) throw NotMember("model_from_weights: phenomenon is not Bell-local");
    std::vector<DeterministicStrategy> strategies = enumerate_strategies(sc, cap);
    std::vector<std::string> labels;
    std::vector<Rational> prior;
    std::vector<Rational> response;
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        if (result.weights[s] == 0) continue;
        labels.push_back(strategies[s].label());
        prior.push_back(result.weights[s]);
        const Phenomenon<Rational> vertex = strategy_phenomenon(strategies[s], sc);
        response.insert(response.end(), vertex.table().begin(), vertex.table().end());
    }
    return HVModel<Rational>(sc, std::move(labels), std::move(prior), std::move(response));
}

// Fine's theorem, constructive converse: split every stochastic locally causal
// model into deterministic response functions. lambda' = (lambda, rA, rB) with
//   P(lambda') = P(lambda) * prod_a P(rA(a)|a,lambda) * prod_b P(rB(b)|b,lambda),
// responses the corresponding indicators. Zero-weight lambda' are dropped.
template <class S>
HVModel<S> determinize(const HVModel<S>& m, S tol = scalar_traits<S>::default_tol(),
                       std::size_t cap = 1000000) {
    PropertyVerdict<S> lc = is_locally_causal(m, tol);
    if (!lc.holds)
        throw NotLocallyCausal("determinize: model is not locally causal (" +
                               lc.witness->description + ")");
    const Scenario& sc = m.scenario();
    std::size_t per_lambda = strategy_count(sc);
    if (per_lambda > cap || m.support_size() > cap / per_lambda)
        throw CapExceeded("determinize: lambda' support would exceed cap");
    auto amaps = response_maps(sc.alice_settings, sc.alice_outcomes);
    auto bmaps = response_maps(sc.bob_settings, sc.bob_outcomes);

    std::vector<std::string> labels;
    std::vector<S> prior;
    std::vector<S> response;
    for (std::size_t lam = 0; lam < m.support_size(); ++lam)
        for (const auto& ra : amaps)
            for (const auto& rb : bmaps) {
                S w = m.prior_of(lam);
                // Locality holds, so the marginal at b=0 (resp. a=0) is the
                // setting-independent conditional.
                for (std::size_t a = 0; a < sc.alice_settings; ++a)
                    w *= m.alice_response_marginal(lam, a, 0, ra[a]);
                for (std::size_t b = 0; b < sc.bob_settings; ++b)
                    w *= m.bob_response_marginal(lam, 0, b, rb[b]);
                if (w == S(0)) continue;
                DeterministicStrategy s{ra, rb};
                labels.push_back(m.lambda_labels()[lam] + "|" + s.label());
                prior.push_back(w);
                const Phenomenon<S> vertex = strategy_phenomenon<S>(s, sc);
                response.insert(response.end(), vertex.table().begin(), vertex.table().end());
            }
    S vtol = scalar_traits<S>::exact ? S(0) : S(1e-7);
    return HVModel<S>(sc, std::move(labels), std::move(prior), std::move(response), vtol);
}

} // namespace bellscope
