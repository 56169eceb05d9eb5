#include "kwfeas/model.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace kwfeas {

RuleSetting RuleSetting::from_code(int k, std::uint32_t code) {
  RuleSetting x;
  x.bits.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) x.bits[static_cast<std::size_t>(i)] = (code >> (k - 1 - i)) & 1U;
  return x;
}

RuleSetting RuleSetting::parse(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxRules))
    throw std::invalid_argument("rule setting must have 1.." + std::to_string(kMaxRules) + " bits");
  RuleSetting x;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("rule setting must be a 0/1 string: '" + std::string(text) + "'");
    x.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return x;
}

std::uint32_t RuleSetting::code() const {
  std::uint32_t c = 0;
  for (auto b : bits) c = (c << 1) | b;
  return c;
}

int RuleSetting::weight() const { return static_cast<int>(std::count(bits.begin(), bits.end(), 1)); }

std::string RuleSetting::to_string() const {
  std::string s;
  for (auto b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

RegressionSpec::RegressionSpec(int k, int d) : k_(k), d_(d) {
  if (k < 1 || k > kMaxRules) throw std::invalid_argument("number of rules k must be in 1.." + std::to_string(kMaxRules));
  if (d < 1 || d > k) throw std::invalid_argument("interaction order d must satisfy 1 <= d <= k");
  // Subsets of {0..k-1} of size s in lexicographic order, for s = 0..d.
  for (int s = 0; s <= d; ++s) {
    std::vector<int> subset(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) subset[static_cast<std::size_t>(i)] = i;
    while (true) {
      monomials_.push_back(subset);
      int i = s - 1;
      while (i >= 0 && subset[static_cast<std::size_t>(i)] == k - s + i) --i;
      if (i < 0) break;
      ++subset[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < s; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

std::optional<std::size_t> RegressionSpec::index_of(const std::vector<int>& subset) const {
  auto it = std::find(monomials_.begin(), monomials_.end(), subset);
  if (it == monomials_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - monomials_.begin());
}

std::size_t dimension(const RegressionSpec& spec) { return spec.dimension(); }

SupportSet::SupportSet(int k, std::vector<std::uint32_t> codes) : k_(k), codes_(std::move(codes)) {
  if (k < 1 || k > kMaxRules) throw std::invalid_argument("support: bad k");
  for (auto c : codes_)
    if (c >> k) throw std::invalid_argument("support point outside the cube");
  std::sort(codes_.begin(), codes_.end());
  if (std::adjacent_find(codes_.begin(), codes_.end()) != codes_.end())
    throw std::invalid_argument("support points must be distinct");
}

SupportSet SupportSet::from_points(const std::vector<RuleSetting>& points) {
  if (points.empty()) throw std::invalid_argument("empty support");
  const int k = points.front().k();
  std::vector<std::uint32_t> codes;
  for (const auto& x : points) {
    if (x.k() != k) throw std::invalid_argument("support points of different lengths");
    codes.push_back(x.code());
  }
  return {k, std::move(codes)};
}

SupportSet SupportSet::parse(std::string_view text) {
  std::vector<RuleSetting> points;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    points.push_back(RuleSetting::parse(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return from_points(points);
}

std::vector<RuleSetting> SupportSet::points() const {
  std::vector<RuleSetting> out;
  out.reserve(codes_.size());
  for (auto c : codes_) out.push_back(RuleSetting::from_code(k_, c));
  return out;
}

bool SupportSet::contains(std::uint32_t code) const { return std::binary_search(codes_.begin(), codes_.end(), code); }

std::string SupportSet::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (i) s.push_back(',');
    s += RuleSetting::from_code(k_, codes_[i]).to_string();
  }
  return s;
}

std::vector<int> regression_function(const RuleSetting& x, const RegressionSpec& spec) {
  if (x.k() != spec.k()) throw std::invalid_argument("rule setting length does not match k");
  std::vector<int> f;
  f.reserve(spec.dimension());
  for (const auto& subset : spec.monomial_index()) {
    int v = 1;
    for (int i : subset) v &= x.bits[static_cast<std::size_t>(i)];
    f.push_back(v);
  }
  return f;
}

Monomial intensity_monomial(const RuleSetting& x, const RegressionSpec& spec) {
  return Monomial(regression_function(x, spec));
}

RationalMatrix design_matrix(const SupportSet& support, const RegressionSpec& spec) {
  if (support.k() != spec.k()) throw std::invalid_argument("support k does not match model");
  const std::size_t p = spec.dimension();
  RationalMatrix F(support.size(), p);
  auto pts = support.points();
  for (std::size_t r = 0; r < pts.size(); ++r) {
    auto f = regression_function(pts[r], spec);
    for (std::size_t c = 0; c < p; ++c) F(r, c) = f[c];
  }
  return F;
}

bool is_nondegenerate(const SupportSet& support, const RegressionSpec& spec) {
  if (support.size() != spec.dimension()) throw std::invalid_argument("support size differs from p");
  return mat_det(design_matrix(support, spec)) != 0;
}

SupportSet corner_design(const RegressionSpec& spec) {
  std::vector<std::uint32_t> codes;
  const std::uint32_t n = 1U << spec.k();
  for (std::uint32_t c = 0; c < n; ++c)
    if (std::popcount(c) <= spec.d()) codes.push_back(c);
  return {spec.k(), std::move(codes)};
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > UINT64_MAX) throw std::overflow_error("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

SupportEnumerator::SupportEnumerator(const RegressionSpec& spec, bool nondegenerate_only)
    : spec_(spec), nondegenerate_only_(nondegenerate_only), n_(1U << spec.k()), p_(spec.dimension()) {
  if (p_ > n_) throw std::invalid_argument("cube has fewer than p points");
  total_ = binomial(n_, p_);
}

void SupportEnumerator::reset() {
  started_ = false;
  done_ = false;
}

bool SupportEnumerator::advance() {
  if (!started_) {
    current_.resize(p_);
    for (std::size_t i = 0; i < p_; ++i) current_[i] = static_cast<std::uint32_t>(i);
    started_ = true;
    return true;
  }
  std::size_t i = p_;
  while (i > 0 && current_[i - 1] == n_ - p_ + (i - 1)) --i;
  if (i == 0) return false;
  ++current_[i - 1];
  for (std::size_t j = i; j < p_; ++j) current_[j] = current_[j - 1] + 1;
  return true;
}

std::optional<SupportSet> SupportEnumerator::next() {
  while (!done_) {
    if (!advance()) {
      done_ = true;
      break;
    }
    SupportSet s(spec_.k(), current_);
    if (!nondegenerate_only_ || is_nondegenerate(s, spec_)) return s;
  }
  return std::nullopt;
}

std::vector<SupportSet> enumerate_supports(const RegressionSpec& spec, bool nondegenerate_only) {
  SupportEnumerator e(spec, nondegenerate_only);
  std::vector<SupportSet> out;
  while (auto s = e.next()) out.push_back(std::move(*s));
  return out;
}

}  // namespace kwfeas
