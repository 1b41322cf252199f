#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rispace/orlicz.hpp"
#include "rispace/rademacher.hpp"
#include "rispace/report.hpp"
#include "rispace/spaces.hpp"
#include "rispace/step_function.hpp"

namespace rispace {

inline constexpr std::uint64_t kDefaultSeed = 42;
/// Largest n accepted by the sign searches.
inline constexpr int kMaxSignSearch = 20;

/// Absolute slack on norm inequalities.
inline constexpr double kInequalitySlack = 1e-9;
/// Relative tolerance on norm equalities.
inline constexpr double kEqualityTol = 1e-8;

// Theorem-level verification procedures. Each returns a report whose pass
// flag is computed from its rows and the tolerances it records.

/// ||sum_{i<=n} r_i||_E / sqrt(n) for n = 1..n_max (binomial path), plus
/// `trials` random unit coefficient vectors per n <= random_n_max with
/// ratio ||sum a_i r_i||_E / ||a||_2. Passes when the equal-coefficient
/// window satisfies max/min <= 3, the ratios over n in [12,16] (when
/// n_max >= 16) vary by less than 5%, and the random window has
/// max/min <= 4. random_n_max < 0 means n_max.
ExperimentReport theorem1_report(const SpaceSpec& E, int n_max, int trials,
                                 std::uint64_t seed = kDefaultSeed, int random_n_max = -1);

struct SignSearchResult {
  SignVector signs = SignVector::all_plus(1);
  double best = 0.0;
};

/// Exact maximizer of ||sum eps_i x_i||_E over all sign vectors; ties go to
/// the lexicographically first pattern with +1 before -1. n <= 20.
SignSearchResult sign_bruteforce(std::span<const StepFunction> xs, const SpaceSpec& E);

struct SignInequality {
  double lhs = 0.0;  // sup over eps of ||sum eps_i x_i||_Phi
  double rhs = 0.0;  // ||sum r_i ||x_i||_1||_Phi
  SignVector maximizer = SignVector::all_plus(1);
  double rademacher_modular = 0.0;  // Ave_eta Phi(sum eta_i ||x_i||_1 / lhs)
  double average_modular = 0.0;     // Ave_eps modular(sum eps_i x_i, Phi, lhs)
  double max_modular = 0.0;         // max_eps modular(sum eps_i x_i, Phi, lhs)
  double l1_best = 0.0;             // sup over eps of ||sum eps_i x_i||_1
  bool pass = false;                // lhs >= rhs - 1e-9 and the modular chain holds
};

SignInequality evaluate_sign_inequality(std::span<const StepFunction> xs, const OrliczFunction& phi);

/// Report form of `evaluate_sign_inequality` for a single instance.
ExperimentReport orlicz_sign_inequality(std::span<const StepFunction> xs, const OrliczFunction& phi);

/// Method of conditional expectations: fixes eps_1, eps_2, ... in turn,
/// each time taking the sign whose exact average of modular(sum eps_j x_j,
/// Phi, lambda) over all completions is larger (+1 on ties). n <= 20.
SignVector derandomized_signs(std::span<const StepFunction> xs, const OrliczFunction& phi,
                              double lambda);

/// Average of modular(sum eps_i x_i, Phi, lambda) over all 2^n sign vectors.
double average_modular(std::span<const StepFunction> xs, const OrliczFunction& phi, double lambda);

/// Domination ||x||_E >= ||x||_{M(phi_E)} on `trials` random functions and
/// equality on `indicator_trials` random 0/1-valued functions.
ExperimentReport envelope_lemma_check(const SpaceSpec& E, int trials,
                                      std::uint64_t seed = kDefaultSeed,
                                      int indicator_trials = -1);

/// (a) smallest c with ||I_(0,t]||_G <= c psi(t) on a log grid over
/// [1e-6, 1]; (b) the layer-cake bound for every catalog space on random
/// non-increasing functions; (c) measured c' in ||f||_G <= c' ||f||_{G1},
/// with its drift when the sample doubles.
ExperimentReport g1_chain_check(int trials, std::uint64_t seed = kDefaultSeed, int grid_size = 200);

/// Indicator norms in G (exact Orlicz), G1 and MG over a log grid
/// t in [1e-6, 1] with their pairwise ratios.
ExperimentReport g_g1_indicator_comparison(int grid_size = 200);

// Suites that back the command-line `verify` entries.

ExperimentReport rearrangement_suite(int trials, std::uint64_t seed = kDefaultSeed);
ExperimentReport luxemburg_suite(int trials, std::uint64_t seed = kDefaultSeed, int grid_size = 100);
ExperimentReport fundamental_suite(int grid_size = 20);
ExperimentReport sign_suite(int n_max, int trials, std::uint64_t seed = kDefaultSeed);
ExperimentReport derandomization_suite(int n_max, int trials, std::uint64_t seed = kDefaultSeed);
ExperimentReport envelope_suite(int trials, std::uint64_t seed = kDefaultSeed, int indicator_trials = -1);
ExperimentReport hinge_suite(int trials, std::uint64_t seed = kDefaultSeed, int oracle_instances = 20);

}  // namespace rispace
