#pragma once

// Rasch Poisson counts model with binary rule settings: regression
// functions of interaction order d, intensities as monomials in the
// parameters mu_j = exp(beta_j), design matrices and saturated supports.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kwfeas/matrix.hpp"
#include "kwfeas/polynomial.hpp"

namespace kwfeas {

// Largest supported cube: 2^k <= 2^20.
inline constexpr int kMaxRules = 20;

// A point of {0,1}^k. bits[0] is x_1. The binary value reads the string
// x_1 x_2 ... x_k with x_1 as the most significant bit.
struct RuleSetting {
  std::vector<std::uint8_t> bits;

  static RuleSetting from_code(int k, std::uint32_t code);
  static RuleSetting parse(std::string_view text);

  [[nodiscard]] int k() const { return static_cast<int>(bits.size()); }
  [[nodiscard]] std::uint32_t code() const;
  [[nodiscard]] int weight() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const RuleSetting&, const RuleSetting&) = default;
};

class RegressionSpec {
 public:
  RegressionSpec(int k, int d);

  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int d() const { return d_; }
  // Number of parameters p.
  [[nodiscard]] std::size_t dimension() const { return monomials_.size(); }
  // Square-free monomials as sorted 0-based variable subsets, ordered by
  // degree then lexicographically; entry 0 is the intercept.
  [[nodiscard]] const std::vector<std::vector<int>>& monomial_index() const { return monomials_; }
  [[nodiscard]] std::optional<std::size_t> index_of(const std::vector<int>& subset) const;

 private:
  int k_;
  int d_;
  std::vector<std::vector<int>> monomials_;
};

std::size_t dimension(const RegressionSpec& spec);

// Saturated-design support: p distinct points, stored as codes sorted
// ascending.
class SupportSet {
 public:
  SupportSet() = default;
  SupportSet(int k, std::vector<std::uint32_t> codes);
  static SupportSet from_points(const std::vector<RuleSetting>& points);
  // "0000,1000,0100,0010,0001" in any order.
  static SupportSet parse(std::string_view text);

  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] std::size_t size() const { return codes_.size(); }
  [[nodiscard]] const std::vector<std::uint32_t>& codes() const { return codes_; }
  [[nodiscard]] std::vector<RuleSetting> points() const;
  [[nodiscard]] bool contains(std::uint32_t code) const;
  [[nodiscard]] std::string to_string() const;

  friend auto operator<=>(const SupportSet&, const SupportSet&) = default;
  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  int k_ = 0;
  std::vector<std::uint32_t> codes_;
};

std::vector<int> regression_function(const RuleSetting& x, const RegressionSpec& spec);

// Monomial in mu_0..mu_{p-1}; exponent j is f_j(x).
Monomial intensity_monomial(const RuleSetting& x, const RegressionSpec& spec);

// Rows f(x) for x in the support (in stored order).
RationalMatrix design_matrix(const SupportSet& support, const RegressionSpec& spec);

// det F != 0. Points lying in a common lower-dimensional face are one way
// this fails.
bool is_nondegenerate(const SupportSet& support, const RegressionSpec& spec);

SupportSet corner_design(const RegressionSpec& spec);

// Lexicographic enumeration of p-subsets of {0,1}^k (as sorted code
// vectors). Restartable via reset().
class SupportEnumerator {
 public:
  SupportEnumerator(const RegressionSpec& spec, bool nondegenerate_only);

  std::optional<SupportSet> next();
  void reset();
  // Total number of p-subsets (ignores the degeneracy filter).
  [[nodiscard]] std::uint64_t total() const { return total_; }

 private:
  bool advance();

  RegressionSpec spec_;
  bool nondegenerate_only_;
  std::uint32_t n_;
  std::size_t p_;
  std::vector<std::uint32_t> current_;
  bool started_ = false;
  bool done_ = false;
  std::uint64_t total_ = 0;
};

std::vector<SupportSet> enumerate_supports(const RegressionSpec& spec, bool nondegenerate_only);

std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

}  // namespace kwfeas
