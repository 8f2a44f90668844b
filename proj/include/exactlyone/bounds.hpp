#pragma once

// Closed forms for the probability that exactly one of n events of common
// probability p occurs: the sharp pairwise-independent lower bound
// n p (1 - (n-1) p)_+, the fully independent value n p q^{n-1}, and the
// count of product equations that separate full from pairwise independence.

#include "exactlyone/rational.hpp"

namespace exactlyone {

struct BoundInput {
    int n = 1;    // number of events, n >= 1
    Rational p;   // common event probability, 0 <= p <= 1
};

inline void validate(const BoundInput& in) {
    if (in.n < 1) throw std::domain_error("n must be >= 1");
    if (in.p < 0 || in.p > 1) throw std::domain_error("p must lie in [0,1]");
}

// Sharp lower bound on P(exactly one occurs) under pairwise independence:
// n p (1 - (n-1) p)_+.
inline Rational lower_bound_exactly_one(const BoundInput& in) {
    validate(in);
    Rational inner = 1 - (in.n - 1) * in.p;
    if (inner < 0) inner = 0;
    return in.n * in.p * inner;
}

// P(exactly one occurs) for fully independent events: n p q^{n-1}.
inline Rational independent_exactly_one(const BoundInput& in) {
    validate(in);
    return in.n * in.p * rational_pow(1 - in.p, static_cast<unsigned>(in.n - 1));
}

struct IndependentMax {
    Rational argmax_p;
    Rational value;
};

// The independent value is maximized at p = 1/n with value (1 - 1/n)^{n-1}.
inline IndependentMax independent_max(int n) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    Rational p(1, n);
    return {p, independent_exactly_one({n, p})};
}

// Best lower bound on P(N = n-1): the roles of successes and failures swap,
// so it equals the exactly-one bound at 1 - p.
inline Rational corollary_bound(const BoundInput& in) {
    validate(in);
    return lower_bound_exactly_one({in.n, 1 - in.p});
}

struct ConstraintCounts {
    Integer total;     // 2^n product equations, one per subset of [n]
    Integer trivial;   // 1 + n, for subsets of size 0 and 1
    Integer pairwise;  // n(n-1)/2, the pairwise independence equations
    Integer extra;     // the rest: 2^n - 1 - n - n(n-1)/2
};

inline ConstraintCounts independence_constraint_counts(int n) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    Integer total = pow(Integer(2), static_cast<unsigned>(n));
    Integer trivial = 1 + n;
    Integer pairwise = Integer(n) * (n - 1) / 2;
    return {total, trivial, pairwise, total - trivial - pairwise};
}

}  // namespace exactlyone
