#include <doctest.h>

#include <cmath>
#include <sstream>

#include "test_support.hpp"
#include "tlps/dense_oracle.hpp"
#include "tlps/errors.hpp"
#include "tlps/kernels.hpp"
#include "tlps/latent_space.hpp"
#include "tlps/schedule.hpp"

using namespace tlps;

TEST_CASE("lipschitz constant") {
  CHECK(lipschitz_constant(2, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(lipschitz_constant(3, 2) == doctest::Approx(4.4721359549995793).epsilon(1e-15));
  // 2*sqrt(410^2 - 820 + 20), frozen from a 30-digit evaluation
  CHECK(lipschitz_constant(410, 20) == doctest::Approx(818.04645344870239).epsilon(1e-14));
  CHECK_THROWS_AS(lipschitz_constant(1, 4), ContractViolation);
  CHECK_THROWS_AS(lipschitz_constant(5, 0), ContractViolation);
}

TEST_CASE("nesterov a-sequence") {
  CHECK(nesterov_a(0) == 1.0);
  CHECK(nesterov_a(1) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  // frozen from a 30-digit evaluation of the recurrence
  CHECK(nesterov_a(2) == doctest::Approx(2.1935270853310539).epsilon(1e-14));

  StepSchedule sched(2.0);
  for (std::size_t r = 0; r <= 100; ++r) {
    const double ar = sched.a(r);
    const double an = sched.a(r + 1);
    CHECK(std::abs(ar * ar - (an * an - an)) < 1e-9);  // a_r^2 = a_{r+1}^2 - a_{r+1}
    CHECK(ar >= 1.0 + static_cast<double>(r) / 2.0);
    CHECK(an > ar);
  }
}

TEST_CASE("step coefficient") {
  CHECK(step_coefficient(0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));  // collapses to 1/L
  // frozen from a 30-digit evaluation of (a_2 + a_1 - 1) / (2 a_2)
  CHECK(step_coefficient(1, 2.0) == doctest::Approx(0.64087676256266041).epsilon(1e-14));
  StepSchedule sched(2.0);
  for (std::size_t r = 0; r <= 1000; ++r) CHECK(sched.alpha(r) < 2.0 / sched.lipschitz());
}

TEST_CASE("row normalization") {
  SUBCASE("3-4-5 triangle") {
    std::vector<double> row{3.0, 4.0};
    row_normalize(row);
    CHECK(row[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(row[1] == doctest::Approx(0.8).epsilon(1e-15));
  }
  SUBCASE("degenerate rows fall back to the uniform row") {
    std::vector<double> row(4, 0.0);
    row_normalize(row);
    for (double x : row) CHECK(x == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("idempotent with unit output norm") {
    CounterRng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> row(5);
      for (auto& x : row) x = rng.next_double();
      row_normalize(row);
      double nrm = 0.0;
      for (double x : row) nrm += x * x;
      CHECK(std::abs(std::sqrt(nrm) - 1.0) < 1e-12);
      auto again = row;
      row_normalize(again);
      for (std::size_t c = 0; c < row.size(); ++c) CHECK(std::abs(again[c] - row[c]) < 1e-15);
    }
  }
}

TEST_CASE("gram cache") {
  SUBCASE("orthonormal rows give the identity") {
    LatentSpace z(2, 2);
    z.row(0)[0] = 1.0;
    z.row(1)[1] = 1.0;
    auto g = gram(z);
    CHECK(g == std::vector<double>{1.0, 0.0, 0.0, 1.0});
  }
  SUBCASE("trace equals n for unit rows") {
    CounterRng rng(5);
    auto z = LatentSpace::random_unit(17, 6, rng);
    auto g = gram(z);
    double tr = 0.0;
    for (std::size_t i = 0; i < 6; ++i) tr += g[i * 6 + i];
    CHECK(tr == doctest::Approx(17.0).epsilon(1e-12));
  }
  SUBCASE("row swap agrees with recomputation") {
    CounterRng rng(6);
    auto z = LatentSpace::random_unit(12, 4, rng);
    auto g = gram(z);
    for (int trial = 0; trial < 20; ++trial) {
      const NodeId u = static_cast<NodeId>(rng.next_below(12));
      std::vector<double> fresh(4);
      for (auto& x : fresh) x = rng.next_double();
      row_normalize(fresh);
      gram_row_swap(g, z.row(u), fresh);
      std::copy(fresh.begin(), fresh.end(), z.row(u).begin());
      auto exact = gram(z);
      for (std::size_t i = 0; i < exact.size(); ++i) CHECK(std::abs(g[i] - exact[i]) < 1e-9);
    }
  }
  SUBCASE("n swaps built from zero equal the full gram") {
    CounterRng rng(8);
    auto z = LatentSpace::random_unit(30, 5, rng);
    std::vector<double> g(25, 0.0);
    const std::vector<double> zero(5, 0.0);
    for (NodeId u = 0; u < 30; ++u) gram_row_swap(g, zero, z.row(u));
    auto exact = gram(z);
    for (std::size_t i = 0; i < exact.size(); ++i) CHECK(std::abs(g[i] - exact[i]) < 1e-8);
  }
}

TEST_CASE("objective against worked examples") {
  // one edge (0,1), both rows e_1: perfect reconstruction
  auto g1 = GraphSnapshot::from_edges(2, {{0, 1, 1.0}});
  Trajectory traj;
  traj.spaces.emplace_back(2, 2);
  traj.spaces[0].row(0)[0] = 1.0;
  traj.spaces[0].row(1)[0] = 1.0;
  DynamicGraph dg({g1});
  CHECK(objective(dg, traj, 0.0) == doctest::Approx(0.0).epsilon(1e-15));

  // orthogonal rows: both ordered off-diagonal entries contribute 1
  traj.spaces[0].row(1)[0] = 0.0;
  traj.spaces[0].row(1)[1] = 1.0;
  CHECK(objective(dg, traj, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("sparse evaluations match the dense oracle") {
  CounterRng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng.next_below(14);
    const std::size_t T = 1 + rng.next_below(4);
    const std::size_t k = 1 + rng.next_below(4);
    const double lambda = trial % 3 == 0 ? 0.0 : rng.next_double();
    auto g = test::random_dynamic(n, T, 0.3, rng, trial % 2 == 1);
    auto traj = test::random_trajectory(n, k, T, rng);
    CHECK(std::abs(objective(g, traj, lambda) - dense_objective_oracle(g, traj, lambda)) < 1e-9);
    const LatentSpace* prev = T >= 2 ? &traj.spaces[0] : nullptr;
    CHECK(std::abs(local_objective(g.snapshot(T), traj.spaces[T - 1], prev, lambda) -
                   dense_local_objective_oracle(g.snapshot(T), traj.spaces[T - 1], prev,
                                                lambda)) < 1e-9);
  }
}

TEST_CASE("local objective temporal term") {
  CounterRng rng(13);
  auto g = test::random_snapshot(6, 0.4, rng);
  auto z = LatentSpace::random_unit(6, 3, rng);
  // identical spaces: smoothness contributes exactly zero
  CHECK(local_objective(g, z, &z, 5.0) ==
        doctest::Approx(local_objective(g, z, nullptr, 0.0)).epsilon(1e-12));
  // orthogonal rows contribute lambda per node on top of the reconstruction
  LatentSpace a(2, 2), b(2, 2);
  a.row(0)[0] = 1.0;
  a.row(1)[0] = 1.0;
  b.row(0)[1] = 1.0;
  b.row(1)[1] = 1.0;
  auto empty = GraphSnapshot::from_edges(2, {});
  const double base = local_objective(empty, a, nullptr, 0.0);
  CHECK(local_objective(empty, a, &b, 0.5) == doctest::Approx(base + 0.5 * 2.0).epsilon(1e-12));
}

TEST_CASE("dense oracle refuses large instances") {
  CounterRng rng(1);
  auto g = test::random_dynamic(65, 1, 0.01, rng);
  auto traj = test::random_trajectory(65, 2, 1, rng);
  CHECK_THROWS_AS(dense_objective_oracle(g, traj, 0.0), ContractViolation);
}

TEST_CASE("gradient matches finite differences and is stationary on isolates") {
  SUBCASE("orthonormal isolate is stationary") {
    LatentSpace z(2, 2);
    z.row(0)[0] = 1.0;
    z.row(1)[1] = 1.0;
    auto g = GraphSnapshot::from_edges(2, {});
    auto gm = gram(z);
    std::vector<double> out(2);
    gradient_node(g, z, 0, nullptr, nullptr, 0.0, gm, out);
    CHECK(std::abs(out[0]) < 1e-15);
    CHECK(std::abs(out[1]) < 1e-15);
  }
  SUBCASE("finite differences over random instances") {
    CounterRng rng(77);
    const double lambdas[3] = {0.0, 0.01, 1.0};
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 4 + rng.next_below(12);
      const std::size_t k = 1 + rng.next_below(5);
      const double lambda = lambdas[trial % 3];
      auto g = test::random_snapshot(n, 0.35, rng, trial % 2 == 1);
      auto z = LatentSpace::random_unit(n, k, rng);
      auto prev_space = LatentSpace::random_unit(n, k, rng);
      auto next_space = LatentSpace::random_unit(n, k, rng);
      auto gm = gram(z);
      const NodeId u = static_cast<NodeId>(rng.next_below(n));
      const double* prev = trial % 4 < 2 ? prev_space.row(u).data() : nullptr;
      const double* next = trial % 4 == 0 ? next_space.row(u).data() : nullptr;
      std::vector<double> analytic(k);
      gradient_node(g, z, u, prev, next, lambda, gm, analytic);
      auto fd = test::fd_gradient(g, z, u, prev, next, lambda);
      double diff = 0.0, norm = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        diff += (analytic[c] - fd[c]) * (analytic[c] - fd[c]);
        norm += fd[c] * fd[c];
      }
      CHECK(std::sqrt(diff) / std::max(std::sqrt(norm), 1e-9) < 1e-5);
    }
  }
  SUBCASE("gradient differences satisfy the Lipschitz bound") {
    CounterRng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 5 + rng.next_below(20);
      const std::size_t k = 1 + rng.next_below(5);
      auto g = test::random_snapshot(n, 0.3, rng);
      auto z = LatentSpace::random_unit(n, k, rng);
      auto gm = gram(z);
      const NodeId u = static_cast<NodeId>(rng.next_below(n));
      const double L = lipschitz_constant(n, k);
      std::vector<double> g1(k), g2(k), r1(k), r2(k);
      for (std::size_t c = 0; c < k; ++c) {
        r1[c] = 2.0 * rng.next_double() - 1.0;
        r2[c] = 2.0 * rng.next_double() - 1.0;
      }
      std::copy(r1.begin(), r1.end(), z.row(u).begin());
      gradient_node(g, z, u, nullptr, nullptr, 0.0, gm, g1);
      std::copy(r2.begin(), r2.end(), z.row(u).begin());
      gradient_node(g, z, u, nullptr, nullptr, 0.0, gm, g2);
      double dg = 0.0, dz = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        dg += (g1[c] - g2[c]) * (g1[c] - g2[c]);
        dz += (r1[c] - r2[c]) * (r1[c] - r2[c]);
      }
      CHECK(std::sqrt(dg) <= L * std::sqrt(dz) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("latent persistence round trip is exact") {
  CounterRng rng(31);
  auto z = LatentSpace::random_unit(9, 4, rng);
  std::stringstream io;
  save_latent(io, z, 5);
  auto [back, tau] = load_latent(io);
  CHECK(tau == 5);
  CHECK(back == z);  // 17 significant digits round-trip doubles exactly
}
