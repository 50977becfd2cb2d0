#include <doctest.h>

#include <cmath>
#include <vector>

#include "randmeas/group.hpp"
#include "randmeas/irreps.hpp"
#include "test_helpers.hpp"

using namespace randmeas;

namespace {

ComplexMatrix coset_state_matrix(const FiniteGroup& g, const Subgroup& h) {
  const std::size_t n = g.order();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (h.contains(g.mul(g.inverse(u), v))) {
        m(u, v) = 1.0 / static_cast<double>(n);
      }
  return m;
}

}  // namespace

TEST_SUITE("group-rep") {

TEST_CASE("irreps_of: cyclic characters, Z_2 exactly") {
  const FiniteGroup z2 = FiniteGroup::make(GroupFamily::parse("cyclic:2"));
  const auto irreps = irreps_of(z2);
  REQUIRE(irreps.size() == 2);
  CHECK(irreps[0].at(0)(0, 0).real() == doctest::Approx(1.0));
  CHECK(irreps[0].at(1)(0, 0).real() == doctest::Approx(1.0));
  CHECK(irreps[1].at(0)(0, 0).real() == doctest::Approx(1.0));
  CHECK(irreps[1].at(1)(0, 0).real() == doctest::Approx(-1.0));
}

TEST_CASE("irreps_of: dimension patterns for the example groups") {
  const auto d4 = irreps_of(FiniteGroup::make(GroupFamily::parse("dihedral:4")));
  std::vector<Eigen::Index> dims;
  for (const auto& rho : d4) dims.push_back(rho.dim);
  CHECK(dims == std::vector<Eigen::Index>{1, 1, 1, 1, 2});

  const auto aff5 = irreps_of(FiniteGroup::make(GroupFamily::parse("affine:5")));
  dims.clear();
  for (const auto& rho : aff5) dims.push_back(rho.dim);
  CHECK(dims == std::vector<Eigen::Index>{1, 1, 1, 1, 4});

  const auto h3 = irreps_of(FiniteGroup::make(GroupFamily::parse("heisenberg:3")));
  std::size_t ones = 0, threes = 0;
  for (const auto& rho : h3) {
    if (rho.dim == 1) ++ones;
    if (rho.dim == 3) ++threes;
  }
  CHECK(ones == 9);
  CHECK(threes == 2);
}

TEST_CASE("irreps_of: sum of squared dims is the order for every supported group") {
  std::vector<std::string> descriptors;
  for (int n = 1; n <= 27; ++n) descriptors.push_back("cyclic:" + std::to_string(n));
  for (int n = 1; n <= 13; ++n) descriptors.push_back("dihedral:" + std::to_string(n));
  for (int p : {2, 3, 5}) descriptors.push_back("affine:" + std::to_string(p));
  for (int p : {2, 3}) descriptors.push_back("heisenberg:" + std::to_string(p));
  for (const auto& d : descriptors) {
    const FiniteGroup g = FiniteGroup::make(GroupFamily::parse(d));
    const auto irreps = irreps_of(g);  // construction re-validates invariants
    std::size_t sum = 0;
    for (const auto& rho : irreps) {
      sum += static_cast<std::size_t>(rho.dim * rho.dim);
    }
    CHECK(sum == g.order());
  }
}

TEST_CASE("qft_matrix: Hadamard, DFT, and unitarity") {
  const FiniteGroup z2 = FiniteGroup::make(GroupFamily::parse("cyclic:2"));
  const ComplexMatrix h = qft_matrix(z2);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(h(0, 0) - Complex(s, 0)) <= 1e-12);
  CHECK(std::abs(h(0, 1) - Complex(s, 0)) <= 1e-12);
  CHECK(std::abs(h(1, 0) - Complex(s, 0)) <= 1e-12);
  CHECK(std::abs(h(1, 1) - Complex(-s, 0)) <= 1e-12);

  const FiniteGroup z5 = FiniteGroup::make(GroupFamily::parse("cyclic:5"));
  const ComplexMatrix dft = qft_matrix(z5);
  for (std::size_t j = 0; j < 5; ++j) {
    for (std::size_t g = 0; g < 5; ++g) {
      const double angle = 2.0 * M_PI * static_cast<double>(j * g) / 5.0;
      const Complex expected(std::cos(angle) / std::sqrt(5.0),
                             std::sin(angle) / std::sqrt(5.0));
      CHECK(std::abs(dft(j, g) - expected) <= 1e-12);
    }
  }

  for (const char* d : {"dihedral:4", "dihedral:6", "affine:5", "heisenberg:3",
                        "heisenberg:5", "cyclic:27"}) {
    const FiniteGroup g = FiniteGroup::make(GroupFamily::parse(d));
    const ComplexMatrix qft = qft_matrix(g);
    const ComplexMatrix defect =
        qft.adjoint() * qft - ComplexMatrix::Identity(g.order(), g.order());
    CHECK(defect.cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("rho_projector: trivial subgroup, full group, averaging oracle") {
  const FiniteGroup d4 = FiniteGroup::make(GroupFamily::parse("dihedral:4"));
  const auto irreps = irreps_of(d4);
  const Irrep& two_dim = irreps.back();
  REQUIRE(two_dim.dim == 2);

  const Subgroup trivial(d4, {0});
  const ComplexMatrix p_triv = rho_projector(two_dim, d4, trivial);
  CHECK((p_triv - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(projector_rank(p_triv) == 2);

  std::vector<std::size_t> all;
  for (std::size_t g = 0; g < 8; ++g) all.push_back(g);
  const Subgroup full(d4, all);
  const ComplexMatrix p_full = rho_projector(two_dim, d4, full);
  CHECK(p_full.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(projector_rank(p_full) == 0);

  // Reflection pair {e, s}: compare against a direct element-loop average.
  const Subgroup reflection(d4, {0, 4});
  const ComplexMatrix p = rho_projector(two_dim, d4, reflection);
  ComplexMatrix oracle = ComplexMatrix::Zero(2, 2);
  for (std::size_t g : reflection.elements()) oracle += two_dim.at(g);
  oracle /= 2.0;
  CHECK((p - oracle).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(projector_rank(p) == 1);

  // Idempotence across every subgroup and irrep.
  for (const auto& h : enumerate_subgroups(d4)) {
    for (const auto& rho : irreps) {
      const ComplexMatrix proj = rho_projector(rho, d4, h);
      CHECK((proj * proj - proj).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("irrep_distribution: endpoints and the Fourier-conjugation oracle") {
  const FiniteGroup d4 = FiniteGroup::make(GroupFamily::parse("dihedral:4"));
  const auto irreps = irreps_of(d4);

  const Subgroup trivial(d4, {0});
  const auto p_triv = irrep_distribution(d4, irreps, trivial);
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    const double expected = static_cast<double>(irreps[i].dim * irreps[i].dim) / 8.0;
    CHECK(p_triv.probs()[i] == doctest::Approx(expected));
  }

  std::vector<std::size_t> all;
  for (std::size_t g = 0; g < 8; ++g) all.push_back(g);
  const auto p_full = irrep_distribution(d4, irreps, Subgroup(d4, all));
  CHECK(p_full.probs()[0] == doctest::Approx(1.0));  // point mass on trivial irrep
  for (std::size_t i = 1; i < irreps.size(); ++i) {
    CHECK(p_full.probs()[i] == doctest::Approx(0.0));
  }

  // Cross-check P_H against block sums of QFT sigma_H QFT^dag for the center.
  const Subgroup center(d4, {0, 2});
  const auto p_center = irrep_distribution(d4, irreps, center);
  const ComplexMatrix qft = qft_matrix(d4, irreps);
  const ComplexMatrix conj =
      qft * coset_state_matrix(d4, center) * qft.adjoint();
  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    const Eigen::Index block = irreps[i].dim * irreps[i].dim;
    double mass = 0.0;
    for (Eigen::Index j = 0; j < block; ++j) {
      mass += conj(offset + j, offset + j).real();
    }
    CHECK(p_center.probs()[i] == doctest::Approx(mass).epsilon(1e-9));
    offset += block;
  }
}

TEST_CASE("w_distance: cores, conjugates, and the direct-formula value") {
  const FiniteGroup d4 = FiniteGroup::make(GroupFamily::parse("dihedral:4"));
  const auto irreps = irreps_of(d4);
  const auto subgroups = enumerate_subgroups(d4);

  for (const auto& h : subgroups) CHECK(w_distance(d4, irreps, h, h) == 0.0);

  // Distinct normal cores force w >= 1/2 (checked over D_4 and Z_12).
  for (const char* d : {"dihedral:4", "cyclic:12"}) {
    const FiniteGroup g = FiniteGroup::make(GroupFamily::parse(d));
    const auto g_irreps = irreps_of(g);
    const auto g_subs = enumerate_subgroups(g);
    for (std::size_t i = 0; i < g_subs.size(); ++i) {
      for (std::size_t j = i + 1; j < g_subs.size(); ++j) {
        if (normal_core(g, g_subs[i]) == normal_core(g, g_subs[j])) continue;
        CHECK(w_distance(g, g_irreps, g_subs[i], g_subs[j]) >= 0.5 - 1e-12);
      }
    }
  }

  // Conjugate reflection pairs share the trivial core and have w = 0;
  // reflections from the two conjugacy classes give exactly 1/2.
  const Subgroup s_pair(d4, {0, 4});      // {e, s}
  const Subgroup r2s_pair(d4, {0, 6});    // {e, r^2 s}, conjugate to {e, s}
  const Subgroup rs_pair(d4, {0, 5});     // {e, r s}
  CHECK(w_distance(d4, irreps, s_pair, r2s_pair) == doctest::Approx(0.0));
  CHECK(w_distance(d4, irreps, s_pair, rs_pair) == doctest::Approx(0.5));
}

TEST_CASE("r_distance: positivity, domination of w, trace-distance chain on D_4") {
  const FiniteGroup d4 = FiniteGroup::make(GroupFamily::parse("dihedral:4"));
  const auto irreps = irreps_of(d4);
  const auto subgroups = enumerate_subgroups(d4);

  const double log2n = std::log2(8.0);
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    for (std::size_t j = 0; j < subgroups.size(); ++j) {
      const double r = r_distance(d4, irreps, subgroups[i], subgroups[j]);
      const double w = w_distance(d4, irreps, subgroups[i], subgroups[j]);
      if (i == j) {
        CHECK(r == 0.0);
        continue;
      }
      CHECK(r >= w);
      CHECK(r > 0.0);

      // Chain: 1 <= trnorm(sigma_1 - sigma_2)
      //          <= sum_rho (d/|G|) frob_rho (r_rho(H1) + r_rho(H2))
      //          <= max_rho(r1 + r2) * log2|G| * r(H1, H2).
      const ComplexMatrix diff = coset_state_matrix(d4, subgroups[i]) -
                                 coset_state_matrix(d4, subgroups[j]);
      const double trace_dist = trace_norm(diff);
      CHECK(trace_dist >= 1.0 - 1e-10);

      double weighted_sum = 0.0;
      double max_rank_sum = 0.0;
      for (const auto& rho : irreps) {
        const ComplexMatrix p1 = rho_projector(rho, d4, subgroups[i]);
        const ComplexMatrix p2 = rho_projector(rho, d4, subgroups[j]);
        const double frob = frobenius_norm(
            ComplexMatrix(static_cast<double>(subgroups[i].order()) * p1 -
                          static_cast<double>(subgroups[j].order()) * p2));
        const double rank_sum = static_cast<double>(projector_rank(p1)) +
                                static_cast<double>(projector_rank(p2));
        weighted_sum += static_cast<double>(rho.dim) / 8.0 * frob * rank_sum;
        max_rank_sum = std::max(max_rank_sum, rank_sum);
      }
      CHECK(trace_dist <= weighted_sum + 1e-9);
      CHECK(weighted_sum <= max_rank_sum * log2n * r + 1e-9);
    }
  }

  CHECK_THROWS_AS(
      [&] {
        const FiniteGroup z1 = FiniteGroup::make(GroupFamily::parse("cyclic:1"));
        const auto z1_irreps = irreps_of(z1);
        const Subgroup t(z1, {0});
        return r_distance(z1, z1_irreps, t, t);
      }(),
      std::invalid_argument);
}

TEST_CASE("conjugate representation has the same projector ranks") {
  for (const char* d : {"dihedral:4", "heisenberg:3"}) {
    const FiniteGroup g = FiniteGroup::make(GroupFamily::parse(d));
    const auto irreps = irreps_of(g);
    for (const auto& h : enumerate_subgroups(g)) {
      for (const auto& rho : irreps) {
        Irrep conj_rep;
        conj_rep.label = rho.label + "_conj";
        conj_rep.dim = rho.dim;
        for (const auto& m : rho.matrices) {
          conj_rep.matrices.push_back(m.conjugate());
        }
        CHECK(projector_rank(rho_projector(rho, g, h)) ==
              projector_rank(rho_projector(conj_rep, g, h)));
      }
    }
  }
}

TEST_CASE("w and r are symmetric and vanish only at equal subgroups") {
  for (const char* d : {"cyclic:12", "dihedral:4", "heisenberg:3"}) {
    const FiniteGroup g = FiniteGroup::make(GroupFamily::parse(d));
    const auto irreps = irreps_of(g);
    const auto subs = enumerate_subgroups(g);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      for (std::size_t j = i; j < subs.size(); ++j) {
        const double w_ij = w_distance(g, irreps, subs[i], subs[j]);
        const double w_ji = w_distance(g, irreps, subs[j], subs[i]);
        const double r_ij = r_distance(g, irreps, subs[i], subs[j]);
        const double r_ji = r_distance(g, irreps, subs[j], subs[i]);
        CHECK(w_ij == doctest::Approx(w_ji).epsilon(1e-12));
        CHECK(r_ij == doctest::Approx(r_ji).epsilon(1e-12));
        if (i == j) {
          CHECK(r_ij == 0.0);
        } else {
          CHECK(r_ij > 0.0);
        }
      }
    }
  }
}

}  // TEST_SUITE
