#include "bracelet/qseries.hpp"

#include <algorithm>
#include <cstdlib>
#include <regex>
#include <stdexcept>
#include <string>

namespace bracelet {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_sign(int s, const char* what) {
  if (s != 1 && s != -1) throw std::invalid_argument(std::string(what) + " must be +1 or -1");
}

std::string power_of_q(std::int64_t e) { return e == 1 ? "q" : "q^" + std::to_string(e); }

// Exponents a, a + b, a + 2b, ... not exceeding `order`.
std::vector<std::size_t> factor_exponents(const PochhammerFactor& f, std::size_t order) {
  std::vector<std::size_t> out;
  for (auto m = static_cast<std::size_t>(f.offset); m <= order;
       m += static_cast<std::size_t>(f.step)) {
    out.push_back(m);
  }
  return out;
}

TruncatedSeries apply_binomials(TruncatedSeries acc, const PochhammerFactor& f,
                                const std::vector<std::size_t>& exponents, std::int64_t times) {
  for (std::int64_t rep = 0; rep < times; ++rep) {
    for (const std::size_t m : exponents) {
      acc = f.exponent > 0 ? multiply_binomial(std::move(acc), f.sign, m)
                           : divide_binomial(std::move(acc), f.sign, m);
    }
  }
  return acc;
}

TruncatedSeries apply_factor(TruncatedSeries acc, const PochhammerFactor& f) {
  const std::size_t order = acc.order();
  const auto exponents = factor_exponents(f, order);
  if (exponents.empty()) return acc;
  const std::int64_t times = std::llabs(f.exponent);
  if (acc.ring().is_mod2() || times == 1) {
    return apply_binomials(std::move(acc), f, exponents, times);
  }
  // For |e| > 1, expand the base product once and reuse it when it is sparse
  // enough ((q;q) has O(sqrt N) terms) to beat repeated binomial passes.
  TruncatedSeries base = TruncatedSeries::one(acc.ring(), order);
  for (const std::size_t m : exponents) base = multiply_binomial(std::move(base), f.sign, m);
  double direct_cost = 0;
  for (const std::size_t m : exponents) direct_cost += static_cast<double>(order - m + 1);
  const double base_cost = static_cast<double>(base.nonzero_count()) * static_cast<double>(order + 1);
  if (base_cost >= direct_cost) return apply_binomials(std::move(acc), f, exponents, times);
  for (std::int64_t rep = 0; rep < times; ++rep) {
    acc = f.exponent > 0 ? multiply(acc, base) : divide(acc, base);
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProductSpec

void PochhammerFactor::validate() const {
  require_sign(sign, "Pochhammer sign");
  if (offset < 1) throw std::invalid_argument("Pochhammer offset must be at least 1");
  if (step < 1) throw std::invalid_argument("Pochhammer step must be at least 1");
}

std::string PochhammerFactor::to_string() const {
  std::string s = "(";
  if (sign > 0) s += '-';
  s += power_of_q(offset) + ";" + power_of_q(step) + ")";
  if (exponent != 1) s += "^" + std::to_string(exponent);
  return s;
}

std::string ProductSpec::to_string() const {
  if (factors.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i != 0) s += '*';
    s += factors[i].to_string();
  }
  return s;
}

ProductSpec ProductSpec::parse(std::string_view text) {
  std::string compact;
  for (const char c : text) {
    if (c != ' ' && c != '\t') compact += c;
  }
  ProductSpec spec;
  if (compact == "1") return spec;
  if (compact.empty()) throw std::invalid_argument("empty product specification");
  static const std::regex factor_re(R"(\((-?)q(?:\^(\d+))?;q(?:\^(\d+))?\)(?:\^(-?\d+))?)");
  std::size_t start = 0;
  while (start <= compact.size()) {
    const std::size_t end = std::min(compact.find('*', start), compact.size());
    const std::string token = compact.substr(start, end - start);
    std::smatch m;
    if (!std::regex_match(token, m, factor_re)) {
      throw std::invalid_argument("cannot parse Pochhammer factor '" + token + "'");
    }
    PochhammerFactor f;
    f.sign = m[1].length() > 0 ? 1 : -1;
    f.offset = m[2].matched ? std::stoll(m[2].str()) : 1;
    f.step = m[3].matched ? std::stoll(m[3].str()) : 1;
    f.exponent = m[4].matched ? std::stoll(m[4].str()) : 1;
    f.validate();
    spec.factors.push_back(f);
    start = end + 1;
  }
  return spec;
}

// ---------------------------------------------------------------------------
// PrimeContext

PrimeContext PrimeContext::make(std::int64_t p) {
  if (p < 5 || !is_prime(p)) {
    throw std::invalid_argument("PrimeContext requires a prime p >= 5, got " + std::to_string(p));
  }
  const std::int64_t delta = (p * p - 1) / 24;
  const std::int64_t t = (p % 6 == 1) ? (p - 1) / 6 : (-p - 1) / 6;
  const int epsilon = (t % 2 == 0) ? 1 : -1;
  return PrimeContext(p, delta, t, epsilon);
}

// ---------------------------------------------------------------------------
// Products and generating functions

TruncatedSeries pochhammer_series(const PochhammerFactor& factor, std::size_t order,
                                  CoefficientRing ring) {
  ProductSpec spec;
  spec.factors.push_back(factor);
  return product_series(spec, order, ring);
}

TruncatedSeries product_series(const ProductSpec& spec, std::size_t order, CoefficientRing ring) {
  for (const auto& f : spec.factors) f.validate();
  TruncatedSeries acc = TruncatedSeries::one(ring, order);
  // Positive exponents first keeps intermediate ZZ coefficients small.
  std::vector<PochhammerFactor> ordered = spec.factors;
  std::stable_partition(ordered.begin(), ordered.end(),
                        [](const PochhammerFactor& f) { return f.exponent > 0; });
  for (const auto& f : ordered) {
    if (f.exponent == 0) continue;
    acc = apply_factor(std::move(acc), f);
  }
  return acc;
}

ProductSpec partition_spec() { return ProductSpec{}.times(-1, 1, 1, -1); }

ProductSpec l_regular_spec(std::int64_t ell) {
  if (ell < 2) throw std::invalid_argument("l-regular partitions need ell >= 2");
  return ProductSpec{}.times(-1, ell, ell, 1).times(-1, 1, 1, -1);
}

ProductSpec broken_diamond_spec(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("broken k-diamond partitions need k >= 1");
  return ProductSpec{}.times(1, 1, 1, 1).times(-1, 1, 1, -2).times(1, 2 * k + 1, 2 * k + 1, -1);
}

ProductSpec bracelet_spec(std::int64_t k) {
  if (k < 3) throw std::invalid_argument("k dots bracelet partitions need k >= 3");
  return ProductSpec{}.times(1, 1, 1, 1).times(-1, 1, 1, -(k - 1)).times(1, k, k, -1);
}

ProductSpec bracelet_rewritten_spec(std::int64_t k) {
  if (k < 3) throw std::invalid_argument("k dots bracelet partitions need k >= 3");
  return ProductSpec{}.times(-1, 2, 2, 1).times(-1, 1, 1, -k).times(1, k, k, -1);
}

TruncatedSeries gen_partition(std::size_t order, CoefficientRing ring) {
  return product_series(partition_spec(), order, ring);
}

TruncatedSeries gen_l_regular(std::int64_t ell, std::size_t order, CoefficientRing ring) {
  return product_series(l_regular_spec(ell), order, ring);
}

TruncatedSeries gen_broken_diamond(std::int64_t k, std::size_t order, CoefficientRing ring) {
  return product_series(broken_diamond_spec(k), order, ring);
}

TruncatedSeries gen_bracelet(std::int64_t k, std::size_t order, CoefficientRing ring) {
  return product_series(bracelet_spec(k), order, ring);
}

// ---------------------------------------------------------------------------
// Theta functions

TruncatedSeries theta_f(std::int64_t x, std::int64_t y, int sx, int sy, std::size_t order,
                        CoefficientRing ring) {
  require_sign(sx, "theta sign");
  require_sign(sy, "theta sign");
  if (x < 0 || y < 0) throw std::invalid_argument("theta_f exponents must be non-negative");
  if (x + y < 1) throw std::invalid_argument("theta_f needs x + y >= 1 to converge");
  std::vector<std::int64_t> coeffs(order + 1, 0);
  const auto limit = static_cast<std::int64_t>(order);
  auto add_term = [&](std::int64_t n) {
    const std::int64_t tri_plus = n * (n + 1) / 2;
    const std::int64_t tri_minus = n * (n - 1) / 2;
    const std::int64_t e = x * tri_plus + y * tri_minus;
    if (e > limit) return false;
    int s = 1;
    if (sx < 0 && tri_plus % 2 != 0) s = -s;
    if (sy < 0 && tri_minus % 2 != 0) s = -s;
    coeffs[static_cast<std::size_t>(e)] += s;
    return true;
  };
  // Exponents increase strictly in |n| beyond n = 0, 1 (resp. n = -1).
  for (std::int64_t n = 0;; ++n) {
    if (!add_term(n) && n >= 1) break;
  }
  for (std::int64_t n = -1;; --n) {
    if (!add_term(n)) break;
  }
  return TruncatedSeries::from_integers(ring, coeffs);
}

TruncatedSeries jacobi_sum_side(std::int64_t t, int sz, std::size_t order) {
  require_sign(sz, "z sign");
  if (t != 0 && t != 1) throw std::invalid_argument("unsupported specialization z = +-q^t");
  std::vector<std::int64_t> coeffs(order + 1, 0);
  const auto limit = static_cast<std::int64_t>(order);
  for (std::int64_t n = 0; n * n + t * n <= limit; ++n) {
    coeffs[static_cast<std::size_t>(n * n + t * n)] += (sz < 0 && n % 2 != 0) ? -1 : 1;
  }
  for (std::int64_t n = -1; n * n + t * n <= limit; --n) {
    coeffs[static_cast<std::size_t>(n * n + t * n)] += (sz < 0 && n % 2 != 0) ? -1 : 1;
  }
  return TruncatedSeries::from_integers(CoefficientRing::exact(), coeffs);
}

TruncatedSeries jacobi_product_side(std::int64_t t, int sz, std::size_t order) {
  require_sign(sz, "z sign");
  if (t != 0 && t != 1) throw std::invalid_argument("unsupported specialization z = +-q^t");
  // (-zq; q^2)(-q/z; q^2)(q^2; q^2) with z = sz q^t; 1/z = sz q^{-t}.
  ProductSpec spec;
  spec.times(sz, 1 + t, 2).times(-1, 2, 2);
  if (t == 0) {
    spec.times(sz, 1, 2);
    return product_series(spec, order);
  }
  // At t = 1 the second product starts with the constant factor (1 + sz).
  spec.times(sz, 2, 2);
  return scale(product_series(spec, order), 1 + sz);
}

bool jacobi_triple_check(std::int64_t t, int sz, std::size_t order) {
  return equal_upto(jacobi_sum_side(t, sz, order), jacobi_product_side(t, sz, order), order).equal;
}

// ---------------------------------------------------------------------------
// Ramanujan's quintic pieces

ProductSpec ramanujan_a_spec() {
  return ProductSpec{}.times(-1, 10, 25).times(-1, 15, 25).times(-1, 5, 25, -1).times(-1, 20, 25, -1);
}

ProductSpec ramanujan_b_spec() {
  return ProductSpec{}.times(-1, 5, 25).times(-1, 20, 25).times(-1, 10, 25, -1).times(-1, 15, 25, -1);
}

TruncatedSeries ramanujan_a(std::size_t order) { return product_series(ramanujan_a_spec(), order); }

TruncatedSeries ramanujan_b(std::size_t order) { return product_series(ramanujan_b_spec(), order); }

TruncatedSeries quintic_dissection_rhs(std::size_t order, CoefficientRing ring) {
  const auto a = product_series(ramanujan_a_spec(), order, ring);
  const auto b = product_series(ramanujan_b_spec(), order, ring);
  const auto q = TruncatedSeries::monomial(ring, order, 1);
  const auto inner = a - q - shift(b, 2);
  return product_series(ProductSpec{}.times(-1, 25, 25), order, ring) * inner;
}

// ---------------------------------------------------------------------------
// p-dissection of f(-q)

std::vector<std::int64_t> pentagonal_classes(const PrimeContext& ctx) {
  const std::int64_t p = ctx.p();
  const std::int64_t half = (p - 1) / 2;
  std::vector<std::int64_t> classes;
  for (std::int64_t j = -half; j <= half; ++j) {
    if (j == ctx.t()) continue;
    classes.push_back(((3 * j * j + j) / 2) % p);
  }
  return classes;
}

bool delta_class_is_isolated(const PrimeContext& ctx) {
  const auto classes = pentagonal_classes(ctx);
  return std::find(classes.begin(), classes.end(), ctx.delta() % ctx.p()) == classes.end();
}

std::vector<DissectionComponent> p_dissection_f(const PrimeContext& ctx, std::size_t order,
                                                CoefficientRing ring) {
  const std::int64_t p = ctx.p();
  std::vector<DissectionComponent> parts;
  parts.reserve(static_cast<std::size_t>(p));
  for (std::int64_t r = 0; r < p; ++r) parts.push_back({r, TruncatedSeries(ring, order)});

  const std::int64_t half = (p - 1) / 2;
  for (std::int64_t j = -half; j <= half; ++j) {
    if (j == ctx.t()) continue;
    const std::int64_t lead = (3 * j * j + j) / 2;
    const std::int64_t x = (3 * p * p + (6 * j + 1) * p) / 2;
    const std::int64_t y = (3 * p * p - (6 * j + 1) * p) / 2;
    auto term = shift(theta_f(x, y, -1, -1, order, ring), static_cast<std::size_t>(lead));
    if (j % 2 != 0) term = negate(term);
    auto& slot = parts[static_cast<std::size_t>(lead % p)].series;
    slot = slot + term;
  }
  auto last = shift(theta_f(p * p, 2 * p * p, -1, -1, order, ring),
                    static_cast<std::size_t>(ctx.delta()));
  if (ctx.epsilon() < 0) last = negate(last);
  auto& slot = parts[static_cast<std::size_t>(ctx.delta() % p)].series;
  slot = slot + last;
  return parts;
}

}  // namespace bracelet
