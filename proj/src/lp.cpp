#include "ctp/lp.hpp"

#include "ctp/errors.hpp"

namespace ctp {

LpSolution maximize(const Matrix& a, const std::vector<Number>& b, const std::vector<Number>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("LP row width differs from objective");
  }
  if (b.size() != m) throw std::invalid_argument("LP right-hand side has wrong length");
  for (const auto& v : b) {
    if (v.sign() < 0) throw std::invalid_argument("LP needs a non-negative right-hand side");
  }

  // Tableau columns: n structural, m slack, then the right-hand side.
  const std::size_t width = n + m + 1;
  Matrix t(m, std::vector<Number>(width, Number(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = Number(1);
    t[i][width - 1] = b[i];
  }
  std::vector<Number> reduced(width, Number(0));
  for (std::size_t j = 0; j < n; ++j) reduced[j] = c[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (reduced[j].sign() > 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    Number best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      Number ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw InfeasibleError("LP objective is unbounded");

    Number pivot = t[leave][enter];
    for (auto& v : t[leave]) {
      if (!v.is_zero()) v /= pivot;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      Number factor = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (!t[leave][j].is_zero()) t[i][j] -= factor * t[leave][j];
      }
    }
    if (!reduced[enter].is_zero()) {
      Number factor = reduced[enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (!t[leave][j].is_zero()) reduced[j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  LpSolution sol;
  sol.primal.assign(n, Number(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) sol.primal[basis[i]] = t[i][width - 1];
  }
  sol.objective = Number(0);
  for (std::size_t j = 0; j < n; ++j) sol.objective += c[j] * sol.primal[j];
  sol.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.dual[i] = -reduced[n + i];
  return sol;
}

MatrixGameSolution solve_min_max(const Matrix& payoff, const std::optional<SideConstraint>& side) {
  const std::size_t rows = payoff.size();
  if (rows == 0) throw std::invalid_argument("game has no rows");
  const std::size_t cols = payoff.front().size();
  if (cols == 0) throw std::invalid_argument("game has no columns");
  for (const auto& r : payoff) {
    if (r.size() != cols) throw std::invalid_argument("ragged payoff matrix");
    for (const auto& v : r) {
      if (v.sign() <= 0) throw std::invalid_argument("payoffs must be positive");
    }
  }

  // With y = x / value: max sum(y) s.t. payoff^T y <= 1 (and the side row
  // rescaled to right-hand side 0); then value = 1 / sum(y).
  Matrix a(cols, std::vector<Number>(rows));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) a[c][r] = payoff[r][c];
  }
  std::vector<Number> b(cols, Number(1));
  if (side) {
    if (side->weight.size() != rows) throw std::invalid_argument("side constraint has wrong length");
    std::vector<Number> row(rows);
    for (std::size_t r = 0; r < rows; ++r) row[r] = side->weight[r] - side->limit;
    a.push_back(std::move(row));
    b.push_back(Number(0));
  }
  LpSolution lp = maximize(a, b, std::vector<Number>(rows, Number(1)));
  if (lp.objective.sign() <= 0) throw InfeasibleError("no row mix satisfies the side constraint");

  MatrixGameSolution sol;
  sol.value = Number(1) / lp.objective;
  for (const auto& y : lp.primal) sol.row_mix.push_back(y * sol.value);
  for (std::size_t c = 0; c < cols; ++c) sol.column_mix.push_back(lp.dual[c] * sol.value);
  if (side) sol.side_multiplier = lp.dual[cols] * sol.value;
  return sol;
}

bool certificate_holds(const Matrix& payoff, const MatrixGameSolution& sol,
                       const std::optional<SideConstraint>& side) {
  const std::size_t rows = payoff.size();
  const std::size_t cols = payoff.front().size();
  Number row_sum(0);
  Number col_sum(0);
  for (const auto& x : sol.row_mix) {
    if (x.sign() < 0) return false;
    row_sum += x;
  }
  for (const auto& q : sol.column_mix) {
    if (q.sign() < 0) return false;
    col_sum += q;
  }
  if (row_sum != Number(1) || col_sum != Number(1) || sol.side_multiplier.sign() < 0) return false;

  for (std::size_t c = 0; c < cols; ++c) {
    Number v(0);
    for (std::size_t r = 0; r < rows; ++r) v += sol.row_mix[r] * payoff[r][c];
    if (sol.value < v) return false;
  }
  if (side) {
    Number v(0);
    for (std::size_t r = 0; r < rows; ++r) v += sol.row_mix[r] * side->weight[r];
    if (side->limit < v) return false;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    Number v(0);
    for (std::size_t c = 0; c < cols; ++c) v += sol.column_mix[c] * payoff[r][c];
    if (side) v += sol.side_multiplier * (side->weight[r] - side->limit);
    if (v < sol.value) return false;
  }
  return true;
}

}  // namespace ctp
