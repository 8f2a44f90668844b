#pragma once

// Exact rational linear programming over event probabilities. The solver is
// a dense two-phase primal simplex on arbitrary-precision rationals with
// Bland's least-index pivot rule, so every run terminates, every comparison
// is exact, and every answer comes with a checkable certificate: dual
// multipliers proving optimality, a Farkas row proving infeasibility, or an
// improving ray proving unboundedness.
//
// Two problem builders sit on top of the solver. The moment form works in
// the n+1 level weights of an exchangeable distribution; the atom form works
// in all 2^n atom probabilities and accepts arbitrary event constraints.
// Constraints and occupancy objectives are permutation invariant, so
// averaging any feasible atom distribution over coordinate permutations
// preserves feasibility and the objective; the two forms therefore share
// their optima, which the test suite checks rather than assumes.

#include "exactlyone/events.hpp"
#include "exactlyone/rational.hpp"
#include "exactlyone/symmetric.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace exactlyone {

enum class Sense { Minimize, Maximize };

enum class LpStatus { Optimal, Infeasible, Unbounded };

// min/max objective . x  subject to  rows . x = rhs,  x >= 0.
struct LinearProgram {
    Sense sense = Sense::Minimize;
    std::vector<Rational> objective;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
};

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    Rational value;                // optimal objective, in the program's sense
    std::vector<Rational> primal;  // optimal point (Optimal)
    std::vector<Rational> dual;    // Optimal: multipliers y with dual feasibility
                                   //   and y.rhs = value; Infeasible: Farkas row
                                   //   with y.rows <= 0 and y.rhs > 0
    std::vector<Rational> ray;     // Unbounded: feasible improving direction
};

namespace detail {

// Dense tableau over columns [x_0..x_{nvars-1} | a_0..a_{nrows-1} | rhs],
// where a_i is the phase-1 artificial of original row i. Rows are flipped up
// front so rhs >= 0. The artificial block is kept through phase 2 (never
// eligible to enter) because it carries the basis inverse, which is where
// the dual multipliers are read from.
class SimplexEngine {
  public:
    SimplexEngine(const LinearProgram& lp, const std::vector<Rational>& cost)
        : nvars_(lp.objective.size()), nrows_(lp.rows.size()), cost_(cost) {
        sign_.assign(nrows_, 1);
        tab_.reserve(nrows_);
        for (size_t i = 0; i < nrows_; ++i) {
            std::vector<Rational> row(width(), Rational(0));
            const bool flip = lp.rhs[i] < 0;
            sign_[i] = flip ? -1 : 1;
            for (size_t j = 0; j < nvars_; ++j) row[j] = flip ? -lp.rows[i][j] : lp.rows[i][j];
            row[nvars_ + i] = 1;
            row[rhs_col()] = flip ? -lp.rhs[i] : lp.rhs[i];
            tab_.push_back(std::move(row));
            basis_.push_back(nvars_ + i);
            origin_.push_back(i);
        }
        alive_.assign(nrows_, true);
    }

    // Runs both phases. Returns the result for the internal minimization;
    // the caller undoes any sense flip.
    LpResult solve() {
        // Phase 1: minimize the sum of artificials from the all-artificial
        // basis. Reduced costs: 0 - column sum for x columns, 0 for
        // artificials; the rhs cell holds minus the objective value.
        z_.assign(width(), Rational(0));
        for (size_t j = 0; j < width(); ++j) {
            if (j >= nvars_ && j < nvars_ + nrows_) continue;
            Rational colsum = 0;
            for (size_t r = 0; r < tab_.size(); ++r) colsum += tab_[r][j];
            z_[j] = -colsum;
        }
        if (!run(/*entering_limit=*/nvars_ + nrows_))
            throw std::logic_error("phase-1 objective is bounded by construction");

        if (z_[rhs_col()] != 0) return infeasible_result();

        drive_out_artificials();

        // Phase 2: original costs; artificial columns stay frozen.
        z_.assign(width(), Rational(0));
        for (size_t j = 0; j < nvars_; ++j) z_[j] = cost_[j];
        for (size_t r = 0; r < tab_.size(); ++r) {
            const Rational f = z_[basis_[r]];
            if (f != 0) subtract_scaled(z_, tab_[r], f);
        }
        if (!run(/*entering_limit=*/nvars_)) return unbounded_result();
        return optimal_result();
    }

  private:
    size_t nvars_, nrows_;
    std::vector<Rational> cost_;
    std::vector<std::vector<Rational>> tab_;
    std::vector<Rational> z_;
    std::vector<size_t> basis_;   // per surviving row: its basic column
    std::vector<size_t> origin_;  // surviving row -> original row index
    std::vector<int> sign_;       // original row flip signs
    std::vector<bool> alive_;     // original row survived redundancy removal
    size_t unbounded_col_ = 0;

    size_t width() const { return nvars_ + nrows_ + 1; }
    size_t rhs_col() const { return nvars_ + nrows_; }

    static void subtract_scaled(std::vector<Rational>& target,
                                const std::vector<Rational>& source, const Rational& factor) {
        for (size_t j = 0; j < target.size(); ++j)
            if (source[j] != 0) target[j] -= factor * source[j];
    }

    void pivot(size_t row, size_t col) {
        std::vector<Rational>& prow = tab_[row];
        const Rational inv = 1 / prow[col];
        if (inv != 1)
            for (Rational& v : prow) v *= inv;
        for (size_t r = 0; r < tab_.size(); ++r) {
            if (r == row) continue;
            const Rational f = tab_[r][col];
            if (f != 0) subtract_scaled(tab_[r], prow, f);
        }
        const Rational zf = z_[col];
        if (zf != 0) subtract_scaled(z_, prow, zf);
        basis_[row] = col;
    }

    // Bland's rule: enter the lowest-index column with a negative reduced
    // cost, leave on the lowest-index basic variable among the tied minimum
    // ratios. Returns false if the entering column has no positive entry.
    bool run(size_t entering_limit) {
        for (;;) {
            size_t enter = width();
            for (size_t j = 0; j < entering_limit; ++j) {
                if (z_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == width()) return true;

            size_t leave = tab_.size();
            Rational best_ratio;
            for (size_t r = 0; r < tab_.size(); ++r) {
                if (tab_[r][enter] <= 0) continue;
                Rational ratio = tab_[r][rhs_col()] / tab_[r][enter];
                if (leave == tab_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == tab_.size()) {
                unbounded_col_ = enter;
                return false;
            }
            pivot(leave, enter);
        }
    }

    // With the phase-1 optimum at zero, every basic artificial sits at
    // value 0. Pivot each one onto any x column with a nonzero entry in its
    // row (a degenerate pivot, feasibility is unaffected); rows with none
    // are redundant restatements of other rows and are removed.
    void drive_out_artificials() {
        for (size_t r = 0; r < tab_.size();) {
            if (basis_[r] < nvars_) {
                ++r;
                continue;
            }
            size_t col = nvars_;
            for (size_t j = 0; j < nvars_; ++j) {
                if (tab_[r][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col < nvars_) {
                pivot(r, col);
                ++r;
            } else {
                alive_[origin_[r]] = false;
                tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(r));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
                origin_.erase(origin_.begin() + static_cast<std::ptrdiff_t>(r));
            }
        }
    }

    // Phase-1 duals: the artificial's reduced cost is 1 - y_i, so
    // y_i = 1 - z[a_i]. At a positive phase-1 optimum w, y satisfies
    // y.rows <= 0 (x reduced costs are nonnegative) and y.rhs = w > 0:
    // a Farkas refutation, mapped back through the row flips.
    LpResult infeasible_result() const {
        LpResult res;
        res.status = LpStatus::Infeasible;
        res.dual.assign(nrows_, Rational(0));
        for (size_t i = 0; i < nrows_; ++i)
            res.dual[i] = sign_[i] * (1 - z_[nvars_ + i]);
        return res;
    }

    LpResult unbounded_result() const {
        LpResult res;
        res.status = LpStatus::Unbounded;
        res.ray.assign(nvars_, Rational(0));
        res.ray[unbounded_col_] = 1;
        for (size_t r = 0; r < tab_.size(); ++r)
            res.ray[basis_[r]] = -tab_[r][unbounded_col_];
        return res;
    }

    // Phase-2 duals: artificials cost 0 here, so z[a_i] = -y_i for the
    // flipped system; removed rows carry multiplier 0.
    LpResult optimal_result() const {
        LpResult res;
        res.status = LpStatus::Optimal;
        res.value = -z_[rhs_col()];
        res.primal.assign(nvars_, Rational(0));
        for (size_t r = 0; r < tab_.size(); ++r) res.primal[basis_[r]] = tab_[r][rhs_col()];
        res.dual.assign(nrows_, Rational(0));
        for (size_t i = 0; i < nrows_; ++i)
            if (alive_[i]) res.dual[i] = sign_[i] * -z_[nvars_ + i];
        return res;
    }
};

}  // namespace detail

inline LpResult simplex_solve(const LinearProgram& lp) {
    const size_t nvars = lp.objective.size();
    if (lp.rhs.size() != lp.rows.size())
        throw std::invalid_argument("rhs length must match row count");
    for (const auto& row : lp.rows)
        if (row.size() != nvars)
            throw std::invalid_argument("row width must match objective length");

    const bool maximize = lp.sense == Sense::Maximize;
    std::vector<Rational> cost = lp.objective;
    if (maximize)
        for (Rational& c : cost) c = -c;

    LpResult res = detail::SimplexEngine(lp, cost).solve();
    if (maximize && res.status == LpStatus::Optimal) {
        res.value = -res.value;
        for (Rational& y : res.dual) y = -y;
    }
    return res;
}

inline bool primal_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (x.size() != lp.objective.size()) return false;
    for (const Rational& v : x)
        if (v < 0) return false;
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        Rational lhs = 0;
        for (size_t j = 0; j < x.size(); ++j) lhs += lp.rows[i][j] * x[j];
        if (lhs != lp.rhs[i]) return false;
    }
    return true;
}

// Weak-duality check of an Optimal result: the primal is feasible, the
// multipliers are dual feasible (y.col <= c_j when minimizing, >= when
// maximizing), and both objectives equal the reported value exactly.
inline bool optimal_certificate_valid(const LinearProgram& lp, const LpResult& res) {
    if (res.status != LpStatus::Optimal) return false;
    if (!primal_feasible(lp, res.primal)) return false;
    if (res.dual.size() != lp.rows.size()) return false;
    Rational primal_value = 0;
    for (size_t j = 0; j < res.primal.size(); ++j)
        primal_value += lp.objective[j] * res.primal[j];
    if (primal_value != res.value) return false;
    Rational dual_value = 0;
    for (size_t i = 0; i < lp.rows.size(); ++i) dual_value += res.dual[i] * lp.rhs[i];
    if (dual_value != res.value) return false;
    for (size_t j = 0; j < lp.objective.size(); ++j) {
        Rational col = 0;
        for (size_t i = 0; i < lp.rows.size(); ++i) col += res.dual[i] * lp.rows[i][j];
        if (lp.sense == Sense::Minimize ? col > lp.objective[j] : col < lp.objective[j])
            return false;
    }
    return true;
}

// Farkas check: y.rows <= 0 componentwise while y.rhs > 0, so no x >= 0 can
// satisfy rows.x = rhs.
inline bool infeasibility_certificate_valid(const LinearProgram& lp,
                                            const std::vector<Rational>& farkas) {
    if (farkas.size() != lp.rows.size()) return false;
    for (size_t j = 0; j < lp.objective.size(); ++j) {
        Rational col = 0;
        for (size_t i = 0; i < lp.rows.size(); ++i) col += farkas[i] * lp.rows[i][j];
        if (col > 0) return false;
    }
    Rational value = 0;
    for (size_t i = 0; i < lp.rows.size(); ++i) value += farkas[i] * lp.rhs[i];
    return value > 0;
}

// Ray check: a nonnegative direction in the constraint nullspace that
// improves the objective without bound.
inline bool unbounded_certificate_valid(const LinearProgram& lp,
                                        const std::vector<Rational>& ray) {
    if (ray.size() != lp.objective.size()) return false;
    bool nonzero = false;
    for (const Rational& v : ray) {
        if (v < 0) return false;
        if (v != 0) nonzero = true;
    }
    if (!nonzero) return false;
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        Rational lhs = 0;
        for (size_t j = 0; j < ray.size(); ++j) lhs += lp.rows[i][j] * ray[j];
        if (lhs != 0) return false;
    }
    Rational gain = 0;
    for (size_t j = 0; j < ray.size(); ++j) gain += lp.objective[j] * ray[j];
    return lp.sense == Sense::Minimize ? gain < 0 : gain > 0;
}

// Optimize P(N = target) over exchangeable distributions of n events with
// common probability p whose sub-families of size <= r are independent.
struct MomentProblem {
    int n = 1;
    int r = 1;       // independence order, 1 <= r <= n
    int target = 0;  // the occupancy count whose probability is optimized
    Rational p;
    Sense sense = Sense::Minimize;
};

inline void validate(const MomentProblem& mp) {
    if (mp.n < 1) throw std::domain_error("n must be >= 1");
    if (mp.r < 1 || mp.r > mp.n) throw std::domain_error("independence order must lie in [1,n]");
    if (mp.target < 0 || mp.target > mp.n)
        throw std::domain_error("target count must lie in [0,n]");
    if (mp.p < 0 || mp.p > 1) throw std::domain_error("p must lie in [0,1]");
}

// Variables x_0..x_n. Equalities: sum_m C(n,m) x_m = 1, and for each
// t in {1..r}: sum_m C(n-t, m-t) x_m = p^t (the t-wise intersection
// probability). Objective: C(n, target) x_target = P(N = target).
inline LinearProgram build_symmetric_lp(const MomentProblem& mp) {
    validate(mp);
    const size_t vars = static_cast<size_t>(mp.n) + 1;
    LinearProgram lp;
    lp.sense = mp.sense;
    lp.objective.assign(vars, Rational(0));
    lp.objective[mp.target] = Rational(binomial(mp.n, mp.target));
    for (int t = 0; t <= mp.r; ++t) {
        std::vector<Rational> row(vars);
        for (int m = 0; m <= mp.n; ++m) row[m] = Rational(binomial(mp.n - t, m - t));
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(t == 0 ? Rational(1) : rational_pow(mp.p, static_cast<unsigned>(t)));
    }
    return lp;
}

inline LpResult solve_moment_problem(const MomentProblem& mp) {
    return simplex_solve(build_symmetric_lp(mp));
}

// Optimize P(target) over all distributions on the atoms of n events,
// subject to prescribed probabilities for arbitrary events.
struct GeneralProblem {
    int n = 1;
    std::vector<std::pair<EventPtr, Rational>> constraints;
    EventPtr target;
    Sense sense = Sense::Minimize;
};

// One variable per atom. Row 0 is the normalization sum = 1; each constraint
// contributes the indicator row of its event's atom set.
inline LinearProgram build_atom_lp(const GeneralProblem& gp) {
    check_atom_arity(gp.n);
    const size_t atom_count = size_t{1} << gp.n;
    LinearProgram lp;
    lp.sense = gp.sense;
    lp.objective.assign(atom_count, Rational(0));
    const AtomSet target = compile_to_atoms(gp.target, gp.n);
    for (Atom a = 0; a < atom_count; ++a)
        if (target.member[a]) lp.objective[a] = 1;
    lp.rows.emplace_back(atom_count, Rational(1));
    lp.rhs.emplace_back(1);
    for (const auto& [event, probability] : gp.constraints) {
        if (probability < 0 || probability > 1)
            throw std::domain_error("constraint probability must lie in [0,1]");
        const AtomSet atoms = compile_to_atoms(event, gp.n);
        std::vector<Rational> row(atom_count, Rational(0));
        for (Atom a = 0; a < atom_count; ++a)
            if (atoms.member[a]) row[a] = 1;
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(probability);
    }
    return lp;
}

inline LpResult solve_general(const GeneralProblem& gp) {
    return simplex_solve(build_atom_lp(gp));
}

// The r-independence constraint set at common probability p: for every
// nonempty subset J of [n] with |J| <= r, P(intersection of A_j, j in J)
// = p^|J|. r = 2 is pairwise independence.
inline std::vector<std::pair<EventPtr, Rational>> independence_constraints(int n, int r,
                                                                           const Rational& p) {
    check_atom_arity(n);
    if (r < 1 || r > n) throw std::domain_error("independence order must lie in [1,n]");
    std::vector<std::pair<EventPtr, Rational>> out;
    const Atom limit = Atom{1} << n;
    for (Atom mask = 1; mask < limit; ++mask) {
        const int size = std::popcount(mask);
        if (size > r) continue;
        EventPtr e;
        for (int j = 0; j < n; ++j) {
            if (!((mask >> j) & 1u)) continue;
            EventPtr named = event_named(j + 1);
            e = e ? event_and(std::move(e), std::move(named)) : std::move(named);
        }
        out.emplace_back(std::move(e), rational_pow(p, static_cast<unsigned>(size)));
    }
    return out;
}

// Average over coordinate permutations, collapsed to level weights:
// x_m = (sum of atom probabilities with popcount m) / C(n,m).
inline SymmetricDistribution symmetrize(const AtomDistribution& a) {
    check_atom_arity(a.n);
    if (a.probabilities.size() != size_t{1} << a.n)
        throw std::domain_error("atom distribution needs 2^n entries");
    std::vector<Rational> sums(static_cast<size_t>(a.n) + 1, Rational(0));
    for (Atom atom = 0; atom < a.probabilities.size(); ++atom)
        sums[std::popcount(atom)] += a.probabilities[atom];
    for (int m = 0; m <= a.n; ++m) sums[m] /= Rational(binomial(a.n, m));
    return {a.n, std::move(sums)};
}

}  // namespace exactlyone
