#include <gtest/gtest.h>

#include <random>

#include "ctp/errors.hpp"
#include "ctp/lp.hpp"

namespace ctp {
namespace {

TEST(Lp, SmallMaximization) {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3 -> (3, 1), value 11.
  Matrix a{{Number(1), Number(1)}, {Number(1), Number(3)}, {Number(1), Number(0)}};
  LpSolution s = maximize(a, {Number(4), Number(6), Number(3)}, {Number(3), Number(2)});
  EXPECT_EQ(s.objective, Number(11));
  EXPECT_EQ(s.primal, (std::vector<Number>{Number(3), Number(1)}));
  // Strong duality: b.y* equals the objective.
  EXPECT_EQ(Number(4) * s.dual[0] + Number(6) * s.dual[1] + Number(3) * s.dual[2], Number(11));
}

TEST(Lp, UnboundedIsReported) {
  Matrix a{{Number(1), Number(-1)}};
  EXPECT_THROW(maximize(a, {Number(1)}, {Number(1), Number(1)}), InfeasibleError);
}

TEST(Lp, DegenerateProblemTerminates) {
  Matrix a{{Number(1), Number(1)}, {Number(1), Number(1)}, {Number(2), Number(2)}};
  LpSolution s = maximize(a, {Number(0), Number(0), Number(0)}, {Number(1), Number(1)});
  EXPECT_EQ(s.objective, Number(0));
}

TEST(Lp, MatchingPenniesStyleGame) {
  // Costs: row 0 pays (1, 3), row 1 pays (3, 1); value 2 with uniform mixes.
  Matrix p{{Number(1), Number(3)}, {Number(3), Number(1)}};
  MatrixGameSolution g = solve_min_max(p);
  EXPECT_EQ(g.value, Number(2));
  EXPECT_EQ(g.row_mix, (std::vector<Number>{Number::fraction(1, 2), Number::fraction(1, 2)}));
  EXPECT_EQ(g.column_mix, (std::vector<Number>{Number::fraction(1, 2), Number::fraction(1, 2)}));
  EXPECT_TRUE(certificate_holds(p, g));
}

TEST(Lp, DominatedRowGetsNoWeight) {
  Matrix p{{Number(2), Number(2)}, {Number(3), Number(4)}};
  MatrixGameSolution g = solve_min_max(p);
  EXPECT_EQ(g.value, Number(2));
  EXPECT_EQ(g.row_mix[1], Number(0));
}

// Brute-force value of a 2-row game: minimize over x in [0,1] the max of the
// column lines; the optimum sits at an endpoint or a pairwise crossing.
Number two_row_value(const Matrix& p) {
  std::vector<Number> candidates{Number(0), Number(1)};
  const std::size_t cols = p[0].size();
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = i + 1; j < cols; ++j) {
      // x p0i + (1-x) p1i = x p0j + (1-x) p1j
      Number den = (p[0][i] - p[1][i]) - (p[0][j] - p[1][j]);
      if (den.is_zero()) continue;
      Number x = (p[1][j] - p[1][i]) / den;
      if (x.sign() >= 0 && x <= Number(1)) candidates.push_back(x);
    }
  }
  std::optional<Number> best;
  for (const auto& x : candidates) {
    Number worst(0);
    for (std::size_t c = 0; c < cols; ++c) worst = max(worst, x * p[0][c] + (Number(1) - x) * p[1][c]);
    if (!best || worst < *best) best = worst;
  }
  return *best;
}

TEST(Lp, RandomTwoRowGamesMatchBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int cols = 2 + static_cast<int>(rng() % 4);
    Matrix p(2, std::vector<Number>(cols));
    for (auto& row : p) {
      for (auto& v : row) v = Number::fraction(1 + static_cast<long>(rng() % 20), 1 + static_cast<long>(rng() % 3));
    }
    MatrixGameSolution g = solve_min_max(p);
    EXPECT_EQ(g.value, two_row_value(p)) << trial;
    EXPECT_TRUE(certificate_holds(p, g)) << trial;
  }
}

TEST(Lp, RandomGamesCarryCertificates) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 2 + static_cast<int>(rng() % 5);
    const int cols = 2 + static_cast<int>(rng() % 5);
    Matrix p(rows, std::vector<Number>(cols));
    for (auto& row : p) {
      for (auto& v : row) v = Number(1 + static_cast<long>(rng() % 9));
    }
    MatrixGameSolution g = solve_min_max(p);
    EXPECT_TRUE(certificate_holds(p, g)) << trial;
    Number rows_total(0);
    for (const auto& x : g.row_mix) rows_total += x;
    EXPECT_EQ(rows_total, Number(1));
    // Tampering with the value breaks the certificate.
    MatrixGameSolution off = g;
    off.value = g.value - Number::fraction(1, 1000);
    EXPECT_FALSE(certificate_holds(p, off)) << trial;
  }
}

TEST(Lp, SideConstraintShiftsTheMix) {
  Matrix p{{Number(1), Number(3)}, {Number(3), Number(1)}};
  // Require the first row with probability at most 1/4.
  SideConstraint side{{Number(1), Number(0)}, Number::fraction(1, 4)};
  MatrixGameSolution g = solve_min_max(p, side);
  EXPECT_EQ(g.row_mix[0], Number::fraction(1, 4));
  EXPECT_EQ(g.value, Number::fraction(5, 2));
  EXPECT_TRUE(certificate_holds(p, g, side));
  SideConstraint impossible{{Number(1), Number(1)}, Number::fraction(1, 2)};
  EXPECT_THROW(solve_min_max(p, impossible), InfeasibleError);
}

}  // namespace
}  // namespace ctp
