#ifndef CTP_LP_HPP_
#define CTP_LP_HPP_

#include <optional>
#include <vector>

#include "ctp/number.hpp"

namespace ctp {

using Matrix = std::vector<std::vector<Number>>;

struct LpSolution {
  Number objective;
  std::vector<Number> primal;  // one per column of A
  std::vector<Number> dual;    // one per row of A
};

/// max c.y  s.t.  A y <= b,  y >= 0, for b >= 0 (the origin is feasible).
/// Exact tableau simplex with Bland's rule, so it terminates on degenerate
/// problems. Throws InfeasibleError when the objective is unbounded.
LpSolution maximize(const Matrix& a, const std::vector<Number>& b, const std::vector<Number>& c);

// Extra linear restriction  sum_r x_r * weight[r] <= limit  on the row mix.
struct SideConstraint {
  std::vector<Number> weight;
  Number limit;
};

struct MatrixGameSolution {
  Number value;
  std::vector<Number> row_mix;     // minimizer, sums to 1
  std::vector<Number> column_mix;  // maximizer, sums to 1
  Number side_multiplier{0};       // scaled dual of the side constraint
};

/// min over row mixes x of max over columns of x.payoff[., col], for a
/// strictly positive payoff matrix. With a side constraint the row mix must
/// also satisfy it; InfeasibleError if no mix does.
MatrixGameSolution solve_min_max(const Matrix& payoff,
                                 const std::optional<SideConstraint>& side = {});

/// Exact check of both halves of the duality certificate: every column pays
/// at most `value` against row_mix, and every row pays at least `value`
/// against column_mix plus the side penalty.
bool certificate_holds(const Matrix& payoff, const MatrixGameSolution& sol,
                       const std::optional<SideConstraint>& side = {});

}  // namespace ctp

#endif  // CTP_LP_HPP_
