#pragma once

#include <cstddef>
#include <vector>

#include "bellscope/rational.hpp"
#include "bellscope/scenario.hpp"

namespace bellscope {

// Observable conditional frequency table f(A,B|a,b,c). The scalar type S is
// either Rational (exact) or double (floating); the two never mix inside one
// table. Immutable after construction.
template <class S>
class Phenomenon {
public:
    Phenomenon(Scenario scenario, std::vector<S> table,
               S tol = scalar_traits<S>::default_tol())
        : scenario_(std::move(scenario)), table_(std::move(table)) {
        validate(tol);
    }

    const Scenario& scenario() const { return scenario_; }
    const std::vector<S>& table() const { return table_; }

    const S& at(std::size_t a, std::size_t b, std::size_t A, std::size_t B) const {
        return table_[scenario_.cell(a, b, A, B)];
    }

private:
    void validate(const S& tol) const {
        if (table_.size() != scenario_.cells())
            throw NonNormalized("phenomenon: table has " + std::to_string(table_.size()) +
                                " cells, scenario needs " + std::to_string(scenario_.cells()));
        for (const S& p : table_)
            if (!scalar_traits<S>::finite(p) || p < -tol || p > S(1) + tol)
                throw NonNormalized("phenomenon: cell outside [0,1]: " + num_to_string(p));
        for (std::size_t a = 0; a < scenario_.alice_settings; ++a)
            for (std::size_t b = 0; b < scenario_.bob_settings; ++b) {
                S sum(0);
                for (std::size_t A = 0; A < scenario_.alice_outcomes; ++A)
                    for (std::size_t B = 0; B < scenario_.bob_outcomes; ++B)
                        sum += at(a, b, A, B);
                if (sabs(sum - S(1)) > tol)
                    throw NonNormalized("phenomenon: block a=" + std::to_string(a) +
                                        " b=" + std::to_string(b) + " sums to " +
                                        num_to_string(sum));
            }
    }

    Scenario scenario_;
    std::vector<S> table_;
};

// One party's marginal, indexed (outcome, local setting, remote setting).
// Keeping the remote-setting axis is the point: signal-locality asks whether
// the table is constant along it.
template <class S>
class MarginalTable {
public:
    MarginalTable(Side side, std::size_t outcomes, std::size_t local_settings,
                  std::size_t remote_settings)
        : side_(side), outcomes_(outcomes), local_(local_settings), remote_(remote_settings),
          values_(outcomes * local_settings * remote_settings, S(0)) {}

    Side side() const { return side_; }
    std::size_t outcomes() const { return outcomes_; }
    std::size_t local_settings() const { return local_; }
    std::size_t remote_settings() const { return remote_; }

    S& at(std::size_t outcome, std::size_t local_setting, std::size_t remote_setting) {
        return values_[(outcome * local_ + local_setting) * remote_ + remote_setting];
    }
    const S& at(std::size_t outcome, std::size_t local_setting,
                std::size_t remote_setting) const {
        return values_[(outcome * local_ + local_setting) * remote_ + remote_setting];
    }

private:
    Side side_;
    std::size_t outcomes_, local_, remote_;
    std::vector<S> values_;
};

// f(B|a,b,c) = sum_A f(A,B|a,b,c), and mirrored for Alice.
template <class S>
MarginalTable<S> marginal(const Phenomenon<S>& ph, Side side) {
    const Scenario& sc = ph.scenario();
    if (side == Side::bob) {
        MarginalTable<S> m(side, sc.bob_outcomes, sc.bob_settings, sc.alice_settings);
        for (std::size_t B = 0; B < sc.bob_outcomes; ++B)
            for (std::size_t b = 0; b < sc.bob_settings; ++b)
                for (std::size_t a = 0; a < sc.alice_settings; ++a) {
                    S sum(0);
                    for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                        sum += ph.at(a, b, A, B);
                    m.at(B, b, a) = sum;
                }
        return m;
    }
    MarginalTable<S> m(side, sc.alice_outcomes, sc.alice_settings, sc.bob_settings);
    for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
        for (std::size_t a = 0; a < sc.alice_settings; ++a)
            for (std::size_t b = 0; b < sc.bob_settings; ++b) {
                S sum(0);
                for (std::size_t B = 0; B < sc.bob_outcomes; ++B)
                    sum += ph.at(a, b, A, B);
                m.at(A, a, b) = sum;
            }
    return m;
}

// Explicit representation changes. No implicit conversions exist anywhere.
inline Phenomenon<double> to_floating(const Phenomenon<Rational>& ph) {
    std::vector<double> t(ph.table().size());
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = scalar_traits<Rational>::to_double(ph.table()[i]);
    return Phenomenon<double>(ph.scenario(), std::move(t), 1e-12);
}

// Continued-fraction approximation per cell, then exact renormalization per
// (a,b) block so membership sees a genuine probability table.
inline Phenomenon<Rational> rationalized(const Phenomenon<double>& ph,
                                         std::int64_t max_den = 1000000) {
    const Scenario& sc = ph.scenario();
    std::vector<Rational> t(sc.cells(), Rational(0));
    for (std::size_t a = 0; a < sc.alice_settings; ++a)
        for (std::size_t b = 0; b < sc.bob_settings; ++b) {
            Rational sum(0);
            for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                for (std::size_t B = 0; B < sc.bob_outcomes; ++B) {
                    Rational r = rationalize_probability(ph.at(a, b, A, B), max_den);
                    t[sc.cell(a, b, A, B)] = r;
                    sum += r;
                }
            if (sum == 0)
                throw NonNormalized("rationalized: block a=" + std::to_string(a) +
                                    " b=" + std::to_string(b) + " vanished");
            for (std::size_t A = 0; A < sc.alice_outcomes; ++A)
                for (std::size_t B = 0; B < sc.bob_outcomes; ++B)
                    t[sc.cell(a, b, A, B)] /= sum;
        }
    return Phenomenon<Rational>(sc, std::move(t));
}

} // namespace bellscope
