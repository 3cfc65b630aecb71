#pragma once

#include "bcft/classify.hpp"
#include "bcft/modular_data.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <utility>
#include <vector>

namespace bcft {

using BigInt = boost::multiprecision::cpp_int;

/// chi(beta) = exp(-beta (h - c/24)) sum_{n <= order} a_n exp(-beta n).
struct CharacterSeries {
  double c = 0;
  double h = 0;
  std::vector<BigInt> levels;
  int order() const { return static_cast<int>(levels.size()) - 1; }
};

/// Virasoro minimal model (p, p') characters for all Kac labels
/// 1 <= r < p, 1 <= s < p', truncated at `order`. InputError unless
/// 2 <= p < p' are coprime and order <= 10^4.
std::map<std::pair<int, int>, CharacterSeries> minimal_model_characters(int p, int p_prime,
                                                                       int order);

struct CharacterValue {
  double value = 0;
  /// Upper bound on the omitted terms, from a_n <= p(n) < exp(pi sqrt(2n/3)).
  double tail_bound = 0;
};

/// InputError for beta <= 0.
CharacterValue evaluate_character(const CharacterSeries& chi, double beta);

struct MinimalModelMatch {
  int p = 0;
  int p_prime = 0;
  /// One series per sector label of the category.
  std::vector<CharacterSeries> characters;
};

/// Identifies the minimal model with central charge c and the rank of md
/// (p' <= 64), then assigns each sector the character whose weight matches
/// its T eigenvalue. InputError when no unique match exists.
MinimalModelMatch sector_characters(const ModularData& md, double central_charge, int order);

/// Z_ab(beta) = sum_s n^s_ab chi_s(beta), with the tail bounds summed alike.
CharacterValue annulus_partition(const Nimrep& nimrep, const std::vector<CharacterSeries>& chars,
                                 int a, int b, double beta);

struct TransformWindow {
  double lo = 2.0;
  double hi = 19.739208802178716;  // 2 pi^2, the image of lo under beta -> 4 pi^2 / beta
};

struct AnnulusReport {
  int a = 0;
  int b = 0;
  double beta = 0;
  double beta_hat = 0;
  /// sum_s n^s_ab chi_s(beta)
  double direct = 0;
  /// sum_t psi_at conj(psi_bt) chi_{dual t}(beta_hat) / S_0t
  double transformed = 0;
  double residual = 0;
  double tail_bound = 0;
  bool passed = false;
};

/// Compares both sides at beta and beta_hat = 4 pi^2 / beta. InputError when
/// beta leaves the window, NumericError ("increase truncation order") when
/// the combined tail bound exceeds 1e-6.
AnnulusReport cardy_transform_check(const Nimrep& nimrep, const CardySolution& cardy,
                                    const ModularData& md,
                                    const std::vector<CharacterSeries>& chars, int a, int b,
                                    double beta, TransformWindow window = {});

}  // namespace bcft
