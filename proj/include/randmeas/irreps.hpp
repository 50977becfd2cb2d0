#pragma once

#include <string>
#include <vector>

#include "randmeas/group.hpp"
#include "randmeas/matrix.hpp"
#include "randmeas/state.hpp"

namespace randmeas {

/// Irreducible unitary representation: one d x d unitary per group element.
/// Labels carry a zero-padded construction index so that lexicographic label
/// order equals construction order; that ordering is frozen and shared with
/// the Fourier transform.
struct Irrep {
  std::string label;
  Eigen::Index dim = 1;
  std::vector<ComplexMatrix> matrices;

  const ComplexMatrix& at(std::size_t g) const { return matrices[g]; }
};

/// Complete set of inequivalent irreps in closed form for the supported
/// families. Construction validates sum d^2 = |G|, unitarity and the
/// homomorphism property (all pairs up to order 512, sampled above), and
/// Schur orthogonality of matrix coefficients (up to order 512).
std::vector<Irrep> irreps_of(const FiniteGroup& group);

/// Row (rho, i, j) of the Fourier transform holds sqrt(d_rho/|G|) rho_ij(g);
/// rows ordered lexicographically by (irrep label, i, j).
ComplexMatrix qft_matrix(const FiniteGroup& group, const std::vector<Irrep>& irreps);
ComplexMatrix qft_matrix(const FiniteGroup& group);

/// rho(H) = (1/|H|) sum_{h in H} rho(h): the orthogonal projector onto the
/// H-invariant subspace (Hermitian idempotent, checked within 1e-9).
ComplexMatrix rho_projector(const Irrep& rho, const FiniteGroup& group,
                            const Subgroup& h);

/// rank of rho(H).
Eigen::Index projector_rank(const ComplexMatrix& projector);

/// Weak-sampling distribution P_H(rho) = d_rho |H| r_rho(H) / |G|,
/// labeled by irrep.
OutcomeDistribution irrep_distribution(const FiniteGroup& group,
                                       const std::vector<Irrep>& irreps,
                                       const Subgroup& h);

/// l1 distance between the weak-sampling distributions of two subgroups.
double w_distance(const FiniteGroup& group, const std::vector<Irrep>& irreps,
                  const Subgroup& h1, const Subgroup& h2);

/// w(H1,H2) plus the Fourier-block Frobenius term
/// (1/(|G| log2 |G|)) sum_rho d_rho ||H1| rho(H1) - |H2| rho(H2)||_F.
/// Requires |G| > 1.
double r_distance(const FiniteGroup& group, const std::vector<Irrep>& irreps,
                  const Subgroup& h1, const Subgroup& h2);

}  // namespace randmeas
