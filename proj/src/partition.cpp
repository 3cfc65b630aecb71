#include "bcft/partition.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace bcft {

namespace {

/// Coefficients of sum_k (q^{N k^2 + k m} - q^{N k^2 + k m2 + r s}) up to q^order.
std::vector<BigInt> rocha_caridi_numerator(int p, int pp, int r, int s, int order) {
  const long long N = static_cast<long long>(p) * pp;
  const long long m = static_cast<long long>(pp) * r - static_cast<long long>(p) * s;
  const long long m2 = static_cast<long long>(pp) * r + static_cast<long long>(p) * s;
  std::vector<BigInt> num(order + 1, 0);
  const long long kmax = static_cast<long long>(std::sqrt(static_cast<double>(order) / N)) + 2;
  for (long long k = -kmax - 1; k <= kmax + 1; ++k) {
    const long long plus = N * k * k + k * m;
    const long long minus = N * k * k + k * m2 + static_cast<long long>(r) * s;
    if (plus >= 0 && plus <= order) num[plus] += 1;
    if (minus >= 0 && minus <= order) num[minus] -= 1;
  }
  return num;
}

/// Multiplies by 1 / prod_{n >= 1} (1 - q^n), truncated.
void divide_by_euler(std::vector<BigInt>& a) {
  const int order = static_cast<int>(a.size()) - 1;
  for (int n = 1; n <= order; ++n)
    for (int k = n; k <= order; ++k) a[k] += a[k - n];
}

}  // namespace

std::map<std::pair<int, int>, CharacterSeries> minimal_model_characters(int p, int p_prime,
                                                                       int order) {
  if (p < 2 || p_prime <= p || std::gcd(p, p_prime) != 1) {
    throw InputError("minimal model needs coprime 2 <= p < p'");
  }
  if (order < 0 || order > 10000) throw InputError("truncation order must lie in [0, 10000]");
  const double c = 1.0 - 6.0 * (p - p_prime) * (p - p_prime) / (static_cast<double>(p) * p_prime);
  std::map<std::pair<int, int>, CharacterSeries> out;
  for (int r = 1; r < p; ++r)
    for (int s = 1; s < p_prime; ++s) {
      CharacterSeries chi;
      chi.c = c;
      const long long m = static_cast<long long>(p_prime) * r - static_cast<long long>(p) * s;
      chi.h = static_cast<double>(m * m - (p - p_prime) * (p - p_prime)) /
              (4.0 * p * p_prime);
      chi.levels = rocha_caridi_numerator(p, p_prime, r, s, order);
      divide_by_euler(chi.levels);
      for (const BigInt& a : chi.levels) {
        if (a < 0) throw InconsistencyError("negative character coefficient");
      }
      out.emplace(std::make_pair(r, s), std::move(chi));
    }
  return out;
}

CharacterValue evaluate_character(const CharacterSeries& chi, double beta) {
  if (!(beta > 0)) throw InputError("beta must be positive");
  const double prefactor = std::exp(-beta * (chi.h - chi.c / 24.0));
  CharacterValue v;
  for (int n = chi.order(); n >= 0; --n) {
    v.value += chi.levels[n].convert_to<double>() * std::exp(-beta * n);
  }
  v.value *= prefactor;

  const int L = chi.order();
  const double next = L + 1.0;
  const double log_ratio = std::numbers::pi / std::sqrt(6.0 * next) - beta;
  if (log_ratio >= 0) {
    v.tail_bound = std::numeric_limits<double>::infinity();
  } else {
    const double first = std::numbers::pi * std::sqrt(2.0 * next / 3.0) - beta * next;
    v.tail_bound = prefactor * std::exp(first) / (1.0 - std::exp(log_ratio));
  }
  return v;
}

MinimalModelMatch sector_characters(const ModularData& md, double central_charge, int order) {
  std::vector<std::pair<int, int>> candidates;
  for (int pp = 3; pp <= 64; ++pp)
    for (int p = 2; p < pp; ++p) {
      if (std::gcd(p, pp) != 1) continue;
      const double c = 1.0 - 6.0 * (p - pp) * (p - pp) / (static_cast<double>(p) * pp);
      if (std::abs(c - central_charge) < 1e-9 && (p - 1) * (pp - 1) / 2 == md.rank()) {
        candidates.emplace_back(p, pp);
      }
    }
  if (candidates.size() != 1) {
    throw InputError("no unique minimal model with central charge " +
                     std::to_string(central_charge) + " and " + std::to_string(md.rank()) +
                     " sectors");
  }
  MinimalModelMatch match;
  match.p = candidates[0].first;
  match.p_prime = candidates[0].second;
  const auto all = minimal_model_characters(match.p, match.p_prime, order);
  for (int s = 0; s < md.rank(); ++s) {
    const CharacterSeries* hit = nullptr;
    for (const auto& [kac, chi] : all) {
      const cplx t = std::polar(1.0, 2 * std::numbers::pi * (chi.h - chi.c / 24.0));
      if (std::abs(t - md.T()(s)) > 1e-8) continue;
      if (hit && std::abs(hit->h - chi.h) > 1e-12) {
        throw InputError("sector " + md.ring().label(s) + " matches several conformal weights");
      }
      hit = &chi;
    }
    if (!hit) throw InputError("sector " + md.ring().label(s) + " matches no conformal weight");
    match.characters.push_back(*hit);
  }
  return match;
}

CharacterValue annulus_partition(const Nimrep& nimrep, const std::vector<CharacterSeries>& chars,
                                 int a, int b, double beta) {
  if (a < 0 || b < 0 || a >= nimrep.size || b >= nimrep.size) {
    throw StructuralError("boundary label out of range");
  }
  if (chars.size() != nimrep.n.size()) throw StructuralError("one character per sector needed");
  CharacterValue out;
  for (size_t s = 0; s < chars.size(); ++s) {
    const long long mult = nimrep.n[s](a, b);
    if (mult == 0) continue;
    const CharacterValue v = evaluate_character(chars[s], beta);
    out.value += static_cast<double>(mult) * v.value;
    out.tail_bound += static_cast<double>(mult) * v.tail_bound;
  }
  return out;
}

AnnulusReport cardy_transform_check(const Nimrep& nimrep, const CardySolution& cardy,
                                    const ModularData& md,
                                    const std::vector<CharacterSeries>& chars, int a, int b,
                                    double beta, TransformWindow window) {
  if (!(beta >= window.lo && beta <= window.hi)) {
    throw InputError("beta outside the transform window [" + std::to_string(window.lo) + ", " +
                     std::to_string(window.hi) + "]");
  }
  AnnulusReport rep;
  rep.a = a;
  rep.b = b;
  rep.beta = beta;
  rep.beta_hat = 4 * std::numbers::pi * std::numbers::pi / beta;

  const CharacterValue direct = annulus_partition(nimrep, chars, a, b, beta);
  rep.direct = direct.value;
  rep.tail_bound = direct.tail_bound;

  cplx transformed = 0;
  for (int k = 0; k < nimrep.size; ++k) {
    const Label t = cardy.exponents[k];
    const CharacterValue v = evaluate_character(chars[md.ring().dual(t)], rep.beta_hat);
    const cplx weight = cardy.psi(a, k) * std::conj(cardy.psi(b, k)) / md.S()(0, t);
    transformed += weight * v.value;
    rep.tail_bound += std::abs(weight) * v.tail_bound;
  }
  rep.transformed = transformed.real();
  rep.residual = std::abs(transformed - rep.direct);
  if (rep.tail_bound > 1e-6) {
    throw NumericError("truncation tail bound " + std::to_string(rep.tail_bound) +
                       " exceeds 1e-6; increase truncation order");
  }
  rep.passed = rep.residual < 1e-6;
  return rep;
}

}  // namespace bcft
