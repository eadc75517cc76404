#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "eckart/oracle.hpp"
#include "reference_tables.hpp"

namespace eckart {
namespace {

using oracle::CentrifugalMode;
using oracle::ExactCentrifugal;
using oracle::RadialSolverConfig;
using reference::table_model;

// Independent check: -R''/2 + [V + L(L+1)/(2 r^2)] R = E R discretized with
// second differences on a uniform r grid; eigenvalues located by Sturm
// sequence bisection on the symmetric tridiagonal matrix.
double finite_difference_level(const EckartModel& model, const QuantumNumbers& q, int n,
                               double r_max) {
  const double h = r_max / (n + 1);
  const double cent = centrifugal_strength(q);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) {
    const double r = (i + 1) * h;
    diag[i] = 1.0 / (h * h) + eval_potential(model, r) + 0.5 * cent / (r * r);
  }
  const double off2 = 0.25 / (h * h * h * h);
  auto count_below = [&](double e) {
    int count = 0;
    double d = diag[0] - e;
    if (d < 0) ++count;
    for (int i = 1; i < n; ++i) {
      if (d == 0.0) d = 1e-300;
      d = diag[i] - e - off2 / d;
      if (d < 0) ++count;
    }
    return count;
  };
  double lo = potential_minimum(model).value;
  double hi = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (count_below(mid) > q.n_r ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(SolveState, MatchesHighAccuracyReferenceColumn) {
  const std::vector<std::pair<int, int>> samples{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  for (std::size_t b = 0; b < 2; ++b) {
    const auto model = table_model(reference::kTableOneBetas[b]);
    for (const auto& row : reference::table_one()[b]) {
      bool wanted = false;
      for (const auto& [n, l] : samples) wanted |= (n == row.n_r && l == row.ell);
      if (!wanted) continue;
      const double e = oracle::solve_state(model, {row.n_r, row.ell, 3}, ExactCentrifugal{});
      EXPECT_NEAR(-e, row.high_accuracy, 2e-7) << "beta=" << model.beta() << " " << row.n_r << row.ell;
    }
  }
}

TEST(SolveState, ApproximateModeReproducesClosedForm) {
  const auto model = table_model(5e-4);
  for (const auto& scheme : reference::table_one_schemes(model)) {
    for (const QuantumNumbers q : {QuantumNumbers{0, 1, 3}, QuantumNumbers{2, 3, 3},
                                   QuantumNumbers{1, 2, 4}}) {
      const double e = oracle::solve_state(model, q, scheme);
      EXPECT_NEAR(e, energy(model, scheme, q).energy, 1e-9) << to_string(scheme.kind);
    }
  }
}

TEST(SolveState, SWaveExactMatchesAnyScheme) {
  // with no centrifugal term every scheme solves the same equation
  const auto model = table_model(1e-4);
  const QuantumNumbers q{1, 0, 3};
  const double exact = oracle::solve_state(model, q, ExactCentrifugal{});
  EXPECT_NEAR(exact, energy(model, make_f1(), q).energy, 1e-9);
  EXPECT_NEAR(exact, energy(model, make_f4(model), q).energy, 1e-9);
}

TEST(SolveState, AgreesWithFiniteDifferenceSolver) {
  const auto model = table_model(1e-4);
  for (const QuantumNumbers q : {QuantumNumbers{0, 1, 3}, QuantumNumbers{1, 2, 3}}) {
    const double coarse = finite_difference_level(model, q, 40000, 30.0 * model.a());
    const double fine = finite_difference_level(model, q, 80000, 30.0 * model.a());
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    const double numerov = oracle::solve_state(model, q, ExactCentrifugal{});
    EXPECT_NEAR(numerov, extrapolated, 1e-7 * std::abs(numerov)) << to_string(q);
  }
}

TEST(NodeCount, MonotoneInEnergy) {
  const auto model = table_model(1e-4);
  const QuantumNumbers q{0, 1, 3};
  const RadialSolverConfig cfg;
  const double bottom = potential_minimum(model).value;
  int previous = 0;
  for (int i = 0; i < 50; ++i) {
    const double e = bottom * (1.0 - (i + 0.5) / 50.0);
    const int nodes = oracle::node_count(model, q, ExactCentrifugal{}, cfg, e);
    EXPECT_GE(nodes, previous) << "E=" << e;
    previous = nodes;
  }
  EXPECT_GT(previous, 2);
}

TEST(NodeCount, BracketsLevels) {
  const auto model = table_model(1e-4);
  const RadialSolverConfig cfg;
  const QuantumNumbers q{0, 2, 3};
  const QuantumNumbers q2{2, 2, 3};
  const double bottom = potential_minimum(model).value;
  EXPECT_EQ(oracle::node_count(model, q, ExactCentrifugal{}, cfg, 0.999 * bottom), 0);
  const double e2 = oracle::solve_state(model, q2, ExactCentrifugal{});
  EXPECT_EQ(oracle::node_count(model, q, ExactCentrifugal{}, cfg, e2 * (1.0 - 1e-6)), 3);
  EXPECT_EQ(oracle::node_count(model, q, ExactCentrifugal{}, cfg, e2 * (1.0 + 1e-6)), 2);
}

TEST(SolveState, ConvergedInGridParameters) {
  const auto model = table_model(5e-4);
  const QuantumNumbers q{1, 2, 3};
  const double base = oracle::solve_state(model, q, ExactCentrifugal{});
  RadialSolverConfig coarse;
  coarse.n_points = 10000;
  EXPECT_LT(std::abs(oracle::solve_state(model, q, ExactCentrifugal{}, coarse) - base), 1e-9);
  RadialSolverConfig wide;
  wide.r_max_in_a = 120.0;
  wide.n_points = 40000;
  EXPECT_LT(std::abs(oracle::solve_state(model, q, ExactCentrifugal{}, wide) - base), 1e-10);
}

TEST(SolveState, HigherDimensionMatchesShiftedAngularMomentum) {
  const auto model = table_model(1e-4);
  const double d5 = oracle::solve_state(model, {1, 1, 5}, ExactCentrifugal{});
  const double d3 = oracle::solve_state(model, {1, 2, 3}, ExactCentrifugal{});
  EXPECT_NEAR(d5, d3, 1e-12);
}

TEST(SolveState, ThrowsWhenStateAbsent) {
  const EckartModel shallow(0.0021, 0.002, 1.0);
  EXPECT_THROW(oracle::solve_state(shallow, {5, 4, 3}, ExactCentrifugal{}), NoStateFound);
  RadialSolverConfig bad;
  bad.n_points = 10;
  EXPECT_THROW(oracle::solve_state(table_model(1e-4), {0, 1, 3}, ExactCentrifugal{}, bad),
               DomainError);
}

TEST(SpectrumTable, ShapeAndMissingStates) {
  const auto model = table_model(1e-4);
  const std::vector<CentrifugalMode> modes{ExactCentrifugal{}, make_f1(), make_f3()};
  const std::vector<QuantumNumbers> states{{0, 1, 3}, {40, 1, 3}};
  const auto table = oracle::spectrum_table(model, modes, states);
  ASSERT_EQ(table.size(), 2u);
  for (const auto& row : table) ASSERT_EQ(row.cells.size(), 3u);
  EXPECT_EQ(table[0].cells[0].mode, "exact");
  EXPECT_EQ(table[0].cells[1].mode, "f1");
  EXPECT_FALSE(table[0].cells[0].closed_form.has_value());
  ASSERT_TRUE(table[0].cells[2].difference().has_value());
  EXPECT_LT(std::abs(*table[0].cells[2].difference()), 1e-9);
  for (const auto& cell : table[1].cells) {
    EXPECT_FALSE(cell.oracle.has_value());
    EXPECT_FALSE(cell.closed_form.has_value());
    EXPECT_FALSE(cell.error.empty());
  }
}

TEST(SpectrumTable, EmptyInputs) {
  const auto model = table_model(1e-4);
  EXPECT_TRUE(oracle::spectrum_table(model, {ExactCentrifugal{}}, {}).empty());
  const auto rows = oracle::spectrum_table(model, {}, {{0, 1, 3}});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].cells.empty());
}

}  // namespace
}  // namespace eckart
