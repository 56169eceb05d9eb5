#pragma once

// Hyperoctahedral group B_k acting on {0,1}^k, on saturated supports, on the
// regression function and (by transport) on the parameters mu.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "kwfeas/matrix.hpp"
#include "kwfeas/model.hpp"

namespace kwfeas {

// Flip, then permute: (g.x)_{perm[i]} = x_i XOR flips[i]. Indices 0-based.
struct SignedPermutation {
  std::vector<int> perm;
  std::vector<std::uint8_t> flips;

  static SignedPermutation identity(int k);
  static SignedPermutation random(int k, std::mt19937_64& rng);

  [[nodiscard]] int k() const { return static_cast<int>(perm.size()); }
  [[nodiscard]] bool is_valid() const;
  [[nodiscard]] SignedPermutation inverse() const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

// (g * h).x == g.(h.x)
SignedPermutation compose(const SignedPermutation& g, const SignedPermutation& h);

// All 2^k k! elements.
std::vector<SignedPermutation> hyperoctahedral_group(int k);

std::uint64_t group_order(int k);

RuleSetting act_point(const SignedPermutation& g, const RuleSetting& x);
std::uint32_t act_code(const SignedPermutation& g, std::uint32_t code);
SupportSet act_support(const SignedPermutation& g, const SupportSet& support);

// Integer p x p matrix A_g with f(g.x) = A_g f(x) for every x.
RationalMatrix model_automorphism(const SignedPermutation& g, const RegressionSpec& spec);

// Substitution of the non-intercept parameters by Laurent monomials:
// new_mu_l = prod_j mu_j^{exponents[l][j]} (0-based over mu_1..mu_{p-1}).
struct ParameterMap {
  std::vector<std::vector<int>> exponents;

  [[nodiscard]] std::size_t nvars() const { return exponents.size(); }
  [[nodiscard]] std::vector<Rational> apply(const std::vector<Rational>& mu) const;
  [[nodiscard]] ParameterMap inverse() const;
  [[nodiscard]] bool is_identity() const;
};

// The map mu -> mu' with lambda(g.x, mu) = lambda(x, mu'); Laurent exponent
// matrix is the transpose of A_g restricted to non-intercept coordinates.
// Substituting it into the system of X gives the system of g.X, and
// inverse().apply carries witnesses of X to witnesses of g.X.
ParameterMap parameter_transport(const SignedPermutation& g, const RegressionSpec& spec);

struct Orbit {
  SupportSet representative;
  std::size_t members = 0;
  std::size_t stabilizer_order = 0;
};

// Lexicographically smallest image of the support under the group.
SupportSet canonical_representative(const SupportSet& support, const std::vector<SignedPermutation>& group);

// Partition a group-closed list of supports into orbits, sorted by
// representative. Throws std::invalid_argument if an image falls outside the
// input.
std::vector<Orbit> orbit_decompose(const std::vector<SupportSet>& supports);

}  // namespace kwfeas
