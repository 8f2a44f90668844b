#pragma once

// Exchangeable (symmetric) distributions over the 2^n atoms generated by n
// events, encoded by level weights x_0..x_n: every atom in which exactly m
// events occur carries the same probability x_m. Includes the two-level
// extremal construction that attains the pairwise-independent lower bound
// on P(exactly one occurs).

#include "exactlyone/bounds.hpp"
#include "exactlyone/rational.hpp"

#include <algorithm>
#include <vector>

namespace exactlyone {

struct SymmetricDistribution {
    int n = 0;                     // number of events
    std::vector<Rational> levels;  // x_0..x_n, per-atom weight at each level
};

// Total mass sum_m C(n,m) x_m; equals 1 for a valid distribution.
inline Rational level_mass(const SymmetricDistribution& d) {
    Rational total = 0;
    for (int m = 0; m <= d.n; ++m) total += Rational(binomial(d.n, m)) * d.levels[m];
    return total;
}

inline bool levels_nonnegative(const SymmetricDistribution& d) {
    return std::all_of(d.levels.begin(), d.levels.end(),
                       [](const Rational& x) { return x >= 0; });
}

inline void validate(const SymmetricDistribution& d) {
    if (d.n < 1) throw std::domain_error("distribution needs n >= 1");
    if (d.levels.size() != static_cast<size_t>(d.n) + 1)
        throw std::domain_error("levels must have n+1 entries");
    if (!levels_nonnegative(d)) throw std::domain_error("negative level weight");
    if (level_mass(d) != 1) throw std::domain_error("level mass must equal 1");
}

// P(N = m) = C(n,m) x_m.
inline Rational occupancy_probability(const SymmetricDistribution& d, int m) {
    if (m < 0 || m > d.n) throw std::out_of_range("occupancy level out of range");
    return Rational(binomial(d.n, m)) * d.levels[m];
}

// Probability that t specified events all occur: sum_{m>=t} C(n-t, m-t) x_m.
// By exchangeability the choice of the t events does not matter.
inline Rational intersection_probability(const SymmetricDistribution& d, int t) {
    if (t < 0 || t > d.n) throw std::out_of_range("intersection order out of range");
    Rational total = 0;
    for (int m = t; m <= d.n; ++m)
        total += Rational(binomial(d.n - t, m - t)) * d.levels[m];
    return total;
}

// True iff every sub-family of r events is independent, i.e. the t-wise
// intersection probability equals p^t exactly for every t in {1..r}.
inline bool verify_r_independence(const SymmetricDistribution& d, int r, const Rational& p) {
    if (r < 1 || r > d.n) throw std::domain_error("independence order out of range");
    for (int t = 1; t <= r; ++t)
        if (intersection_probability(d, t) != rational_pow(p, static_cast<unsigned>(t)))
            return false;
    return true;
}

// Swap successes and failures: x'_m = x_{n-m}.
inline SymmetricDistribution reflect(const SymmetricDistribution& d) {
    SymmetricDistribution out{d.n, std::vector<Rational>(d.levels.rbegin(), d.levels.rend())};
    return out;
}

// Fully independent levels x_m = p^m q^{n-m}; the binomial occupancy law.
inline SymmetricDistribution binomial_levels(int n, const Rational& p) {
    validate(BoundInput{n, p});
    const Rational q = 1 - p;
    std::vector<Rational> levels(static_cast<size_t>(n) + 1);
    for (int m = 0; m <= n; ++m)
        levels[m] = rational_pow(p, static_cast<unsigned>(m)) *
                    rational_pow(q, static_cast<unsigned>(n - m));
    return {n, std::move(levels)};
}

// The smallest k in [1, n-1] with (k-1)/(n-1) <= p <= k/(n-1). At interior
// boundary values both adjacent k are admissible and yield the same
// construction; the smaller one is returned for determinism.
inline int select_level(int n, const Rational& p) {
    if (n < 2) throw std::domain_error("level selection needs n >= 2");
    if (p < 0 || p > 1) throw std::domain_error("p must lie in [0,1]");
    Integer k = ceil_rational(p * (n - 1));
    if (k < 1) k = 1;
    return static_cast<int>(k);
}

// Positive-level mass s = n p (2k - (n-1) p) / (k (k+1)) of the extremal
// construction; always <= 1, which leaves x_0 = 1 - s >= 0.
inline Rational extremal_positive_mass(int n, const Rational& p) {
    const int k = select_level(n, p);
    return Rational(n) * p * (2 * k - (n - 1) * p) / (Rational(k) * (k + 1));
}

// The extremal exchangeable distribution attaining the lower bound: all
// positive mass above level 0 sits on the two adjacent levels k and k+1,
//   x_k     = (np/k)     (k - (n-1)p)       / C(n,k)
//   x_{k+1} = (np/(k+1)) ((n-1)p - (k-1))   / C(n,k+1)
// which meets the marginal and pairwise product constraints exactly and
// makes P(N = 1) = n p (1 - (n-1) p)_+.
inline SymmetricDistribution construct_extremal(int n, const Rational& p) {
    const int k = select_level(n, p);
    std::vector<Rational> levels(static_cast<size_t>(n) + 1, Rational(0));
    const Rational np = Rational(n) * p;
    levels[k] = np / k * (k - (n - 1) * p) / Rational(binomial(n, k));
    levels[k + 1] = np / (k + 1) * ((n - 1) * p - (k - 1)) / Rational(binomial(n, k + 1));
    SymmetricDistribution d{n, std::move(levels)};
    d.levels[0] = 1 - level_mass(d);
    return d;
}

}  // namespace exactlyone
