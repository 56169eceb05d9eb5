#include "kwfeas/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

namespace kwfeas {

SignedPermutation SignedPermutation::identity(int k) {
  SignedPermutation g;
  g.perm.resize(static_cast<std::size_t>(k));
  std::iota(g.perm.begin(), g.perm.end(), 0);
  g.flips.assign(static_cast<std::size_t>(k), 0);
  return g;
}

SignedPermutation SignedPermutation::random(int k, std::mt19937_64& rng) {
  SignedPermutation g = identity(k);
  std::shuffle(g.perm.begin(), g.perm.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (auto& f : g.flips) f = coin(rng) ? 1 : 0;
  return g;
}

bool SignedPermutation::is_valid() const {
  if (perm.size() != flips.size()) return false;
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i)) return false;
  return std::all_of(flips.begin(), flips.end(), [](auto f) { return f <= 1; });
}

SignedPermutation SignedPermutation::inverse() const {
  // x_i = y_{perm[i]} XOR flips[i], so (g^-1.y)_{i} = y_{perm[i]} XOR flips[i].
  const std::size_t k = perm.size();
  SignedPermutation inv;
  inv.perm.resize(k);
  inv.flips.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(perm[i]);
    inv.perm[j] = static_cast<int>(i);
    inv.flips[j] = flips[i];
  }
  return inv;
}

SignedPermutation compose(const SignedPermutation& g, const SignedPermutation& h) {
  if (g.k() != h.k()) throw std::invalid_argument("composing group elements of different k");
  const std::size_t k = g.perm.size();
  SignedPermutation r;
  r.perm.resize(k);
  r.flips.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto hi = static_cast<std::size_t>(h.perm[i]);
    r.perm[i] = g.perm[hi];
    r.flips[i] = h.flips[i] ^ g.flips[hi];
  }
  return r;
}

std::vector<SignedPermutation> hyperoctahedral_group(int k) {
  if (k < 1 || k > 8) throw std::invalid_argument("group enumeration supports 1 <= k <= 8");
  std::vector<SignedPermutation> out;
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
      SignedPermutation g;
      g.perm = perm;
      g.flips.resize(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) g.flips[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
      out.push_back(std::move(g));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::uint64_t group_order(int k) {
  std::uint64_t order = 1ULL << k;
  for (int i = 2; i <= k; ++i) order *= static_cast<std::uint64_t>(i);
  return order;
}

RuleSetting act_point(const SignedPermutation& g, const RuleSetting& x) {
  if (x.k() != g.k()) throw std::invalid_argument("group element and point have different k");
  RuleSetting y;
  y.bits.resize(x.bits.size());
  for (std::size_t i = 0; i < x.bits.size(); ++i) y.bits[static_cast<std::size_t>(g.perm[i])] = x.bits[i] ^ g.flips[i];
  return y;
}

std::uint32_t act_code(const SignedPermutation& g, std::uint32_t code) {
  const int k = g.k();
  std::uint32_t out = 0;
  for (int i = 0; i < k; ++i) {
    const std::uint32_t bit = ((code >> (k - 1 - i)) & 1U) ^ g.flips[static_cast<std::size_t>(i)];
    out |= bit << (k - 1 - g.perm[static_cast<std::size_t>(i)]);
  }
  return out;
}

SupportSet act_support(const SignedPermutation& g, const SupportSet& support) {
  if (support.k() != g.k()) throw std::invalid_argument("group element and support have different k");
  std::vector<std::uint32_t> codes;
  codes.reserve(support.size());
  for (auto c : support.codes()) codes.push_back(act_code(g, c));
  return {support.k(), std::move(codes)};
}

RationalMatrix model_automorphism(const SignedPermutation& g, const RegressionSpec& spec) {
  if (g.k() != spec.k()) throw std::invalid_argument("group element and model have different k");
  const std::size_t p = spec.dimension();
  const auto inv = g.inverse();
  RationalMatrix A(p, p);
  // Component S of f(g.x) is prod_{j in S} y_j with y_j = x_{s(j)} or
  // 1 - x_{s(j)}, s = perm^-1; expand the flipped factors.
  for (std::size_t row = 0; row < p; ++row) {
    std::vector<int> fixed;
    std::vector<int> flipped;
    for (int j : spec.monomial_index()[row]) {
      const auto src = static_cast<std::size_t>(inv.perm[static_cast<std::size_t>(j)]);
      (g.flips[src] ? flipped : fixed).push_back(static_cast<int>(src));
    }
    const std::uint32_t nsub = 1U << flipped.size();
    for (std::uint32_t mask = 0; mask < nsub; ++mask) {
      std::vector<int> subset = fixed;
      for (std::size_t b = 0; b < flipped.size(); ++b)
        if ((mask >> b) & 1U) subset.push_back(flipped[b]);
      std::sort(subset.begin(), subset.end());
      const auto col = spec.index_of(subset);
      if (!col) throw std::logic_error("model automorphism left the regression span");
      A(row, *col) += (std::popcount(mask) % 2 == 0) ? 1 : -1;
    }
  }
  return A;
}

std::vector<Rational> ParameterMap::apply(const std::vector<Rational>& mu) const {
  if (mu.size() != nvars()) throw std::invalid_argument("parameter vector has wrong length");
  std::vector<Rational> out(nvars());
  for (std::size_t l = 0; l < nvars(); ++l) {
    Rational v = 1;
    for (std::size_t j = 0; j < nvars(); ++j) {
      const int e = exponents[l][j];
      if (e == 0) continue;
      if (mu[j] == 0) throw std::domain_error("Laurent monomial evaluated at zero");
      Rational base = e > 0 ? mu[j] : Rational(1) / mu[j];
      for (int t = 0; t < std::abs(e); ++t) v *= base;
    }
    out[l] = v;
  }
  return out;
}

ParameterMap ParameterMap::inverse() const {
  const std::size_t n = nvars();
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = exponents[i][j];
  const RationalMatrix inv = mat_inverse(m);
  ParameterMap r;
  r.exponents.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (inv(i, j).get_den() != 1) throw std::domain_error("parameter map is not unimodular");
      r.exponents[i][j] = static_cast<int>(inv(i, j).get_num().get_si());
    }
  return r;
}

bool ParameterMap::is_identity() const {
  for (std::size_t i = 0; i < nvars(); ++i)
    for (std::size_t j = 0; j < nvars(); ++j)
      if (exponents[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

ParameterMap parameter_transport(const SignedPermutation& g, const RegressionSpec& spec) {
  const RationalMatrix A = model_automorphism(g, spec);
  const std::size_t n = spec.dimension() - 1;
  ParameterMap map;
  map.exponents.assign(n, std::vector<int>(n, 0));
  // mu'_l = prod_j mu_j^{A(j, l)}; row 0 of A is e_0, so mu_0 never enters.
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t j = 0; j < n; ++j) map.exponents[l][j] = static_cast<int>(A(j + 1, l + 1).get_num().get_si());
  return map;
}

SupportSet canonical_representative(const SupportSet& support, const std::vector<SignedPermutation>& group) {
  SupportSet best = support;
  for (const auto& g : group) {
    SupportSet image = act_support(g, support);
    if (image < best) best = std::move(image);
  }
  return best;
}

std::vector<Orbit> orbit_decompose(const std::vector<SupportSet>& supports) {
  if (supports.empty()) return {};
  const int k = supports.front().k();
  const auto group = hyperoctahedral_group(k);
  std::set<SupportSet> input(supports.begin(), supports.end());
  std::set<SupportSet> assigned;
  std::vector<Orbit> orbits;
  for (const auto& s : input) {
    if (s.k() != k) throw std::invalid_argument("supports with different k");
    if (assigned.contains(s)) continue;
    std::set<SupportSet> orbit;
    for (const auto& g : group) {
      SupportSet image = act_support(g, s);
      if (!input.contains(image))
        throw std::invalid_argument("input is not closed under the group action: " + image.to_string() +
                                    " is missing");
      orbit.insert(std::move(image));
    }
    Orbit o;
    o.representative = *orbit.begin();
    o.members = orbit.size();
    o.stabilizer_order = static_cast<std::size_t>(group.size() / orbit.size());
    assigned.insert(orbit.begin(), orbit.end());
    orbits.push_back(std::move(o));
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const Orbit& a, const Orbit& b) { return a.representative < b.representative; });
  return orbits;
}

}  // namespace kwfeas
