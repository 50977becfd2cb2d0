#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randmeas/group.hpp"
#include "randmeas/identify.hpp"
#include "randmeas/irreps.hpp"
#include "randmeas/random_measure.hpp"
#include "randmeas/report.hpp"
#include "randmeas/rng.hpp"
#include "randmeas/state.hpp"

namespace randmeas {

/// sigma_H: the uniform mixture of uniform superpositions over the left
/// cosets of H, i.e. sigma_H[u, v] = [u^-1 v in H] / |G|. Rank |G|/|H|.
DensityMatrix coset_state(const FiniteGroup& group, const Subgroup& h);

struct FourierBlock {
  std::string irrep_label;
  Eigen::Index dim = 1;
  ComplexMatrix block;  // (|H|/|G|) * conj(rho(H)), appears d_rho times
};

/// Block-diagonal form of QFT sigma_H QFT^dag: for each irrep rho and each
/// row index i, the same d x d block (|H|/|G|) rho^*(H) on the column space.
struct FourierBlockForm {
  double scale = 0.0;  // |H|/|G|
  std::vector<FourierBlock> blocks;  // one per irrep, in Fourier row order

  ComplexMatrix reassemble() const;
};

FourierBlockForm fourier_block_form(const FiniteGroup& group,
                                    const std::vector<Irrep>& irreps,
                                    const Subgroup& h);

/// rank of rho(H) per irrep, in irrep order.
std::vector<Eigen::Index> block_ranks(const FiniteGroup& group,
                                      const std::vector<Irrep>& irreps,
                                      const Subgroup& h);

struct CosetPairDistance {
  std::size_t first = 0;
  std::size_t second = 0;
  double trace_distance = 0.0;
};

struct CosetDistanceReport {
  std::vector<CosetPairDistance> pairs;
  double min_trace_distance = 2.0;
  /// max |trace_norm(sigma_H1 - sigma_{H1 cap H2}) - 2(|H1|-|H1 cap H2|)/|H1||
  /// over ordered pairs with H1 not contained in H2 (the proof's exact value).
  double max_exact_defect = 0.0;
  bool pass = false;  // min_trace_distance >= 1 - 1e-8
};

/// Trace distances between all distinct coset-state pairs of the group.
CosetDistanceReport coset_trace_distance_check(const FiniteGroup& group);

/// Everything a hidden-subgroup experiment needs, precomputed once.
struct HspInstance {
  FiniteGroup group;
  std::vector<Irrep> irreps;
  ComplexMatrix qft;
  std::vector<Subgroup> subgroups;
  std::vector<DensityMatrix> coset_states;

  static HspInstance make(const FiniteGroup& group);
};

/// Random Fourier sampling POVM: conjugates an independently drawn ancilla
/// POVM on each irrep block (K_rho = ceil(C log2^2|G| / d_rho), one draw per
/// irrep, shared across its rows) back through the Fourier transform.
Povm random_fourier_povm(const HspInstance& instance, double C, RngStream& rng);

/// One identification run: draws a random Fourier POVM, measures `copies`
/// samples of sigma_hidden, and runs the champion tournament over the exact
/// outcome distributions of every candidate subgroup. Returns the index of
/// the guessed subgroup in instance.subgroups.
std::size_t hsp_identify(const HspInstance& instance, std::size_t hidden_index,
                         std::size_t copies, double C, RngStream& rng);

/// Convenience form matching the one-shot signature.
Subgroup hsp_identify(const FiniteGroup& group, const Subgroup& hidden,
                      std::size_t copies, double C, RngStream& rng);

/// Success frequencies over `runs` independent POVM draws, testing every
/// subgroup as the hidden one against the same draw. copies == 0 selects
/// the copy count per run via copies_for(#subgroups, measured delta, c_cal);
/// the report records the median as t*.
ExperimentReport hsp_success_experiment(const HspInstance& instance,
                                        std::size_t runs, std::size_t copies,
                                        double C, double c_cal, RngStream rng,
                                        unsigned threads = 1);

/// TV(M(sigma_H1), M(sigma_H2)) / r(H1, H2) for every subgroup pair and
/// every POVM draw.
ExperimentReport hsp_tv_spectrum(const HspInstance& instance, double C,
                                 RngStream rng, std::size_t draws,
                                 unsigned threads = 1);

}  // namespace randmeas
