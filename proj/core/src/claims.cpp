#include "bracelet/claims.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "bracelet/oracles.hpp"

namespace bracelet {

// ---------------------------------------------------------------------------
// SeriesSource

namespace {

std::int64_t parse_int(std::string_view text, std::string_view context) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw std::invalid_argument("expected an integer in '" + std::string(context) + "', got '" +
                                std::string(text) + "'");
  }
  return value;
}

bool is_counting(SeriesSource::Kind kind) {
  using K = SeriesSource::Kind;
  return kind == K::Partition || kind == K::LRegular || kind == K::BrokenDiamond ||
         kind == K::Bracelet;
}

std::string progression_text(const Progression& p) {
  std::string s = p.step == 1 ? "n" : std::to_string(p.step) + "n";
  if (p.offset != 0) s += "+" + std::to_string(p.offset);
  return s;
}

std::string series_text(const SeriesSource& source, const Progression& p) {
  if (is_counting(source.kind)) return "Σ " + source.symbol() + "(" + progression_text(p) + ")q^n";
  if (p == Progression{}) return source.symbol();
  return "[" + source.symbol() + "](" + progression_text(p) + ")";
}

}  // namespace

SeriesSource SeriesSource::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view tail = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;
  SeriesSource s;
  if (head == "partition" && !has_arg) {
    s = partition();
  } else if (head == "euler" && !has_arg) {
    s = explicit_product(ProductSpec{}.times(-1, 1, 1));
  } else if (head == "ramanujan-a" && !has_arg) {
    s = explicit_product(ramanujan_a_spec());
  } else if (head == "ramanujan-b" && !has_arg) {
    s = explicit_product(ramanujan_b_spec());
  } else if (head == "quintic-rhs" && !has_arg) {
    s = quintic_rhs();
  } else if (head == "lregular" && has_arg) {
    s = l_regular(parse_int(tail, text));
  } else if (head == "diamond" && has_arg) {
    s = broken_diamond(parse_int(tail, text));
  } else if (head == "bracelet" && has_arg) {
    s = bracelet(parse_int(tail, text));
  } else if (head == "eta-partition" && has_arg) {
    s = eta_times_partition(parse_int(tail, text));
  } else if (head == "product" && has_arg) {
    s = explicit_product(ProductSpec::parse(tail));
  } else {
    throw std::invalid_argument("unknown series source '" + std::string(text) + "'");
  }
  s.validate();
  return s;
}

std::string SeriesSource::key() const {
  switch (kind) {
    case Kind::Partition:
      return "partition";
    case Kind::LRegular:
      return "lregular:" + std::to_string(parameter);
    case Kind::BrokenDiamond:
      return "diamond:" + std::to_string(parameter);
    case Kind::Bracelet:
      return "bracelet:" + std::to_string(parameter);
    case Kind::Product:
      return "product:" + product.to_string();
    case Kind::EtaTimesPartition:
      return "eta-partition:" + std::to_string(parameter);
    case Kind::QuinticRhs:
      break;
  }
  return "quintic-rhs";
}

std::string SeriesSource::symbol() const {
  switch (kind) {
    case Kind::Partition:
      return "p";
    case Kind::LRegular:
      return "b_" + std::to_string(parameter);
    case Kind::BrokenDiamond:
      return "Δ_" + std::to_string(parameter);
    case Kind::Bracelet:
      return "B_" + std::to_string(parameter);
    case Kind::Product:
      return product.to_string();
    case Kind::EtaTimesPartition: {
      const std::string qm = parameter == 1 ? "q" : "q^" + std::to_string(parameter);
      return "(" + qm + ";" + qm + ")·Σ p(n)q^n";
    }
    case Kind::QuinticRhs:
      break;
  }
  return "(q^25;q^25)(a(q)-q-q^2b(q))";
}

void SeriesSource::validate() const {
  switch (kind) {
    case Kind::LRegular:
      (void)l_regular_spec(parameter);
      break;
    case Kind::BrokenDiamond:
      (void)broken_diamond_spec(parameter);
      break;
    case Kind::Bracelet:
      (void)bracelet_spec(parameter);
      break;
    case Kind::Product:
      for (const auto& f : product.factors) f.validate();
      break;
    case Kind::EtaTimesPartition:
      if (parameter < 1) throw std::invalid_argument("eta-partition needs m >= 1");
      break;
    case Kind::Partition:
    case Kind::QuinticRhs:
      break;
  }
}

TruncatedSeries SeriesSource::expand(std::size_t order, CoefficientRing ring) const {
  validate();
  switch (kind) {
    case Kind::Partition:
      return gen_partition(order, ring);
    case Kind::LRegular:
      return gen_l_regular(parameter, order, ring);
    case Kind::BrokenDiamond:
      return gen_broken_diamond(parameter, order, ring);
    case Kind::Bracelet:
      return gen_bracelet(parameter, order, ring);
    case Kind::Product:
      return product_series(product, order, ring);
    case Kind::EtaTimesPartition:
      return multiply(product_series(ProductSpec{}.times(-1, parameter, parameter), order, ring),
                      gen_partition(order, ring));
    case Kind::QuinticRhs:
      break;
  }
  return quintic_dissection_rhs(order, ring);
}

// ---------------------------------------------------------------------------
// CongruenceClaim

std::string CongruenceClaim::statement() const {
  const std::string mod = " (mod " + std::to_string(modulus) + ")";
  switch (kind) {
    case ClaimKind::Vanishing: {
      std::string s = source.symbol() + "(" + progression_text(progression) + ") ≡ 0" + mod;
      if (first_n > 0) s += " for n ≥ " + std::to_string(first_n);
      return s;
    }
    case ClaimKind::SeriesCongruence:
      return series_text(source, progression) + " ≡ " + (rhs_sign < 0 ? "-" : "") +
             series_text(rhs, rhs_progression) + mod;
    case ClaimKind::ExactIdentity:
      break;
  }
  return series_text(source, progression) + " = " + series_text(rhs, rhs_progression);
}

std::int64_t required_truncation(const CongruenceClaim& claim, std::int64_t n_max) {
  return claim.progression.at(n_max);
}

std::int64_t rhs_truncation(const CongruenceClaim& claim, std::int64_t n_max) {
  return claim.rhs_progression.at(n_max);
}

// ---------------------------------------------------------------------------
// Family definitions

namespace {

constexpr std::int64_t kMaxIndex = std::int64_t{1} << 62;
// B_k for k beyond this is out of reach of any realistic expansion.
constexpr std::int64_t kMaxBraceletK = 1'000'000;

[[noreturn]] void fail(const std::string& message) { throw InstantiationError(message); }

void require(bool condition, const std::string& message) {
  if (!condition) fail(message);
}

std::int64_t ipow(std::int64_t base, std::int64_t exponent) {
  require(exponent >= 0, "negative exponent");
  std::int64_t result = 1;
  for (std::int64_t i = 0; i < exponent; ++i) {
    require(base == 0 || result <= kMaxIndex / std::max<std::int64_t>(base, 1),
            "progression parameters overflow");
    result *= base;
  }
  return result;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  require(a == 0 || std::llabs(b) <= kMaxIndex / std::llabs(a), "progression parameters overflow");
  return a * b;
}

std::int64_t exact_quotient(std::int64_t numerator, std::int64_t denominator) {
  require(numerator % denominator == 0,
          "progression offset " + std::to_string(numerator) + "/" + std::to_string(denominator) +
              " is not an integer");
  return numerator / denominator;
}

void require_prime(std::int64_t p, std::int64_t at_least) {
  require(p >= at_least && oracles::is_prime(p),
          "p must be a prime >= " + std::to_string(at_least) + ", got " + std::to_string(p));
}

void require_bracelet_k(std::int64_t k) {
  require(k >= 3, "k = " + std::to_string(k) + " must be at least 3");
  require(k <= kMaxBraceletK, "k = " + std::to_string(k) + " is too large to expand");
}

void require_qnr(std::int64_t value, std::int64_t p, const std::string& what) {
  require(oracles::legendre_symbol(value, p) == -1,
          what + " = " + std::to_string(value) + " is not a quadratic nonresidue mod " +
              std::to_string(p));
}

// Ramanujan's residues: p(pn + r_p) = 0 mod p for p = 5, 7, 11.
std::int64_t ramanujan_residue(std::int64_t p) {
  switch (p) {
    case 5:
      return 4;
    case 7:
      return 5;
    case 11:
      return 6;
    default:
      fail("p must be one of 5, 7, 11, got " + std::to_string(p));
  }
}

CongruenceClaim vanishing(SeriesSource source, std::int64_t step, std::int64_t offset,
                          std::int64_t modulus) {
  CongruenceClaim c;
  c.kind = ClaimKind::Vanishing;
  c.source = std::move(source);
  c.progression = {step, offset};
  c.modulus = static_cast<std::uint64_t>(modulus);
  return c;
}

CongruenceClaim series_congruence(SeriesSource lhs, Progression lhs_prog, SeriesSource rhs,
                                  Progression rhs_prog, int sign, std::int64_t modulus) {
  CongruenceClaim c;
  c.kind = ClaimKind::SeriesCongruence;
  c.source = std::move(lhs);
  c.progression = lhs_prog;
  c.rhs = std::move(rhs);
  c.rhs_progression = rhs_prog;
  c.rhs_sign = sign;
  c.modulus = static_cast<std::uint64_t>(modulus);
  return c;
}

std::vector<ParamMap> grid_of(std::initializer_list<ParamMap> points) { return points; }

std::vector<FamilyInstantiator> make_catalog() {
  std::vector<FamilyInstantiator> out;
  auto add = [&out](std::string id, std::string summary, std::vector<std::string> params,
                    bool imported, std::vector<ParamMap> grid,
                    std::function<Instantiation(const ParamMap&)> emit) {
    out.push_back({std::move(id), std::move(summary), std::move(params), imported,
                   std::move(grid), std::move(emit)});
  };

  add("C1", "Delta_1(2n+1) = 0 mod 3", {}, true, grid_of({{}}), [](const ParamMap&) {
    return vanishing(SeriesSource::broken_diamond(1), 2, 1, 3);
  });

  add("C2", "B_{p^r}(2n+1) = 0 mod p", {"p", "r"}, true,
      grid_of({{{"p", 5}, {"r", 1}}, {{"p", 7}, {"r", 1}}, {{"p", 3}, {"r", 2}}}),
      [](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p"), r = v.at("r");
        require_prime(p, 2);
        require(r >= 1, "r must be at least 1");
        const auto k = ipow(p, r);
        require_bracelet_k(k);
        return vanishing(SeriesSource::bracelet(k), 2, 1, p);
      });

  add("C3", "B_{pm}(pn+s) = 0 mod p when 12s+1 is a nonresidue mod p", {"p", "m", "s"}, true,
      grid_of({{{"p", 5}, {"m", 2}, {"s", 1}}, {{"p", 5}, {"m", 2}, {"s", 3}}}),
      [](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p"), m = v.at("m"), s = v.at("s");
        require_prime(p, 5);
        require(m >= 1, "m must be at least 1");
        require(s >= 1 && s <= p - 1, "s must lie in 1..p-1");
        require_qnr(12 * s + 1, p, "12s+1");
        const auto k = mul(p, m);
        require_bracelet_k(k);
        return vanishing(SeriesSource::bracelet(k), p, s, p);
      });

  add("C4", "B_{2^m l}(2n+1) = 0 mod 2^m, l odd", {"m", "l"}, true,
      grid_of({{{"m", 2}, {"l", 3}}}), [](const ParamMap& v) -> Instantiation {
        const auto m = v.at("m"), l = v.at("l");
        require(m >= 1, "m must be at least 1");
        require(l >= 1 && l % 2 == 1, "l must be a positive odd integer");
        const auto k = mul(ipow(2, m), l);
        require_bracelet_k(k);
        return vanishing(SeriesSource::bracelet(k), 2, 1, ipow(2, m));
      });

  add("C5", "B_p(2pn + c_p) = 0 mod p^2 for p = 5, 7, 11", {"p"}, true,
      grid_of({{{"p", 5}}, {{"p", 7}}, {{"p", 11}}}), [](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p");
        std::int64_t offset = 0;
        switch (p) {
          case 5:
            offset = 7;
            break;
          case 7:
            offset = 11;
            break;
          case 11:
            offset = 21;
            break;
          default:
            fail("p must be one of 5, 7, 11");
        }
        return vanishing(SeriesSource::bracelet(p), 2 * p, offset, p * p);
      });

  add("C6", "B_5(10n+6) and B_5(10n+8) = 0 mod 2", {"B"}, false,
      grid_of({{{"B", 6}}, {{"B", 8}}}), [](const ParamMap& v) -> Instantiation {
        const auto b = v.at("B");
        require(b == 6 || b == 8, "B must be 6 or 8");
        return vanishing(SeriesSource::bracelet(5), 10, b, 2);
      });

  add("C7", "sum B_5(10n+2) q^n = sum b_5(n) q^n mod 2", {}, false, grid_of({{}}),
      [](const ParamMap&) -> Instantiation {
        return series_congruence(SeriesSource::bracelet(5), {10, 2}, SeriesSource::l_regular(5),
                                 {1, 0}, 1, 2);
      });

  add("C8", "sum b_5(2n) q^n = (q^2;q^2) mod 2", {}, false, grid_of({{}}),
      [](const ParamMap&) -> Instantiation {
        return series_congruence(SeriesSource::l_regular(5), {2, 0},
                                 SeriesSource::explicit_product(ProductSpec{}.times(-1, 2, 2)),
                                 {1, 0}, 1, 2);
      });

  add("C9", "(q;q) = (q^25;q^25)(a(q) - q - q^2 b(q))", {}, false, grid_of({{}}),
      [](const ParamMap&) -> Instantiation {
        CongruenceClaim c;
        c.kind = ClaimKind::ExactIdentity;
        c.source = SeriesSource::explicit_product(ProductSpec{}.times(-1, 1, 1));
        c.rhs = SeriesSource::quintic_rhs();
        return c;
      });

  auto cg1_conditions = [](std::int64_t p, std::int64_t a, std::int64_t i) {
    require_prime(p, 5);
    require(oracles::legendre_symbol(-10, p) == -1,
            "(-10/p) must be -1 for p = " + std::to_string(p));
    require(a >= 1, "alpha must be at least 1");
    require(i >= 1 && i <= p - 1, "i must lie in 1..p-1");
  };

  add("C10", "b_5(4p^{2a}n + ((24i+7p)p^{2a-1}-1)/6) = 0 mod 2", {"p", "a", "i"}, true,
      grid_of({{{"p", 17}, {"a", 1}, {"i", 1}}, {{"p", 17}, {"a", 1}, {"i", 6}}}),
      [cg1_conditions](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p"), a = v.at("a"), i = v.at("i");
        cg1_conditions(p, a, i);
        const auto step = mul(4, ipow(p, 2 * a));
        const auto offset = exact_quotient(mul(24 * i + 7 * p, ipow(p, 2 * a - 1)) - 1, 6);
        auto c = vanishing(SeriesSource::l_regular(5), step, offset, 2);
        c.default_n_max = 3;
        return c;
      });

  add("C11", "four b_5 families mod 2 at powers of 5", {"f", "a"}, true,
      grid_of({{{"f", 1}, {"a", 0}}, {{"f", 2}, {"a", 0}}, {{"f", 3}, {"a", 0}}, {{"f", 4}, {"a", 0}},
               {{"f", 1}, {"a", 1}}, {{"f", 2}, {"a", 1}}, {{"f", 3}, {"a", 1}}, {{"f", 4}, {"a", 1}}}),
      [](const ParamMap& v) -> Instantiation {
        const auto f = v.at("f"), a = v.at("a");
        require(f >= 1 && f <= 4, "form f must lie in 1..4");
        require(a >= 0, "alpha must be non-negative");
        static constexpr std::int64_t kLead[] = {31, 79, 83, 107};
        const bool upper = f >= 3;
        const auto step = mul(4, ipow(5, 2 * a + (upper ? 2 : 1)));
        const auto offset = exact_quotient(mul(kLead[f - 1], ipow(5, 2 * a + (upper ? 1 : 0))) - 1, 6);
        auto c = vanishing(SeriesSource::l_regular(5), step, offset, 2);
        // Stay inside the default Z/2 order cap.
        c.default_n_max = step * 100 + offset <= 50'000 ? 100 : 10;
        return c;
      });

  add("C12", "B_5(40p^{2a}n + (5(24i+7p)p^{2a-1}+1)/3) = 0 mod 2", {"p", "a", "i"}, false,
      grid_of({{{"p", 17}, {"a", 1}, {"i", 6}}}),
      [cg1_conditions](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p"), a = v.at("a"), i = v.at("i");
        cg1_conditions(p, a, i);
        const auto step = mul(40, ipow(p, 2 * a));
        const auto offset = exact_quotient(mul(5 * (24 * i + 7 * p), ipow(p, 2 * a - 1)) + 1, 3);
        auto c = vanishing(SeriesSource::bracelet(5), step, offset, 2);
        c.default_n_max = 2;
        return c;
      });

  add("C13", "four B_5 families mod 2 at powers of 5", {"f", "a"}, false,
      grid_of({{{"f", 1}, {"a", 1}}, {{"f", 2}, {"a", 1}}, {{"f", 3}, {"a", 1}}, {{"f", 4}, {"a", 1}}}),
      [](const ParamMap& v) -> Instantiation {
        const auto f = v.at("f"), a = v.at("a");
        require(f >= 1 && f <= 4, "form f must lie in 1..4");
        require(a >= 1, "alpha must be at least 1");
        static constexpr std::int64_t kLead[] = {31, 79, 83, 107};
        const bool upper = f >= 3;
        const auto step = mul(8, ipow(5, 2 * a + (upper ? 1 : 0)));
        const auto offset = exact_quotient(mul(kLead[f - 1], ipow(5, 2 * a - (upper ? 0 : 1))) + 1, 3);
        auto c = vanishing(SeriesSource::bracelet(5), step, offset, 2);
        c.default_n_max = 20;
        return c;
      });

  add("C14", "sum B_{p^r}(p^{2a-1}n + (p^{2a}-1)/12) q^n = eps^a (q^{2p};q^{2p})/(q^{2p^{r-2a+1}};...) mod p",
      {"p", "r", "a"}, false,
      grid_of({{{"p", 5}, {"r", 1}, {"a", 1}}, {{"p", 5}, {"r", 3}, {"a", 1}},
               {{"p", 5}, {"r", 3}, {"a", 2}}}),
      [](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p"), r = v.at("r"), a = v.at("a");
        require_prime(p, 5);
        require(r >= 1, "r must be at least 1");
        require(a >= 1 && 2 * a <= r + 1, "alpha must satisfy 1 <= alpha <= (r+1)/2");
        const auto ctx = PrimeContext::make(p);
        const auto k = ipow(p, r);
        require_bracelet_k(k);
        const auto inner = mul(2, ipow(p, r - 2 * a + 1));
        const auto rhs = ProductSpec{}.times(-1, 2 * p, 2 * p).times(-1, inner, inner, -1);
        return series_congruence(SeriesSource::bracelet(k),
                                 {ipow(p, 2 * a - 1), exact_quotient(ipow(p, 2 * a) - 1, 12)},
                                 SeriesSource::explicit_product(rhs), {1, 0},
                                 ctx.epsilon_power(a), p);
      });

  add("C15", "B_{p^r}(p^{2a}n + ((12i+p)p^{2a-1}-1)/12) = 0 mod p, 1 <= a <= r/2",
      {"p", "r", "a", "i"}, false,
      grid_of({{{"p", 5}, {"r", 2}, {"a", 1}, {"i", 1}}, {{"p", 5}, {"r", 2}, {"a", 1}, {"i", 2}},
               {{"p", 5}, {"r", 2}, {"a", 1}, {"i", 3}}, {{"p", 5}, {"r", 2}, {"a", 1}, {"i", 4}}}),
      [](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p"), r = v.at("r"), a = v.at("a"), i = v.at("i");
        require_prime(p, 5);
        require(r >= 1, "r must be at least 1");
        if (r < 2) return VacuousClaim{{}, {}, {}, "alpha-range 1 <= alpha <= r/2 is empty for r = 1"};
        require(a >= 1 && 2 * a <= r, "alpha must satisfy 1 <= alpha <= r/2");
        require(i >= 1 && i <= p - 1, "i must lie in 1..p-1");
        const auto k = ipow(p, r);
        require_bracelet_k(k);
        return vanishing(SeriesSource::bracelet(k), ipow(p, 2 * a),
                         exact_quotient(mul(12 * i + p, ipow(p, 2 * a - 1)) - 1, 12), p);
      });

  add("C16", "B_{p^r}(p^{2a+1}n + ((12j+1)p^{2a}-1)/12) = 0 mod p, 12j+1 a nonresidue",
      {"p", "r", "a", "j"}, false,
      grid_of({{{"p", 5}, {"r", 3}, {"a", 1}, {"j", 1}}, {{"p", 5}, {"r", 3}, {"a", 1}, {"j", 3}}}),
      [](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p"), r = v.at("r"), a = v.at("a"), j = v.at("j");
        require_prime(p, 5);
        require(r >= 1, "r must be at least 1");
        if (r <= 2) {
          return VacuousClaim{{}, {}, {}, "alpha-range 1 <= alpha <= (r-1)/2 is empty for r <= 2"};
        }
        require(a >= 1 && 2 * a <= r - 1, "alpha must satisfy 1 <= alpha <= (r-1)/2");
        require(j >= 1 && j <= p - 1, "j must lie in 1..p-1");
        require_qnr(12 * j + 1, p, "12j+1");
        const auto k = ipow(p, r);
        require_bracelet_k(k);
        auto c = vanishing(SeriesSource::bracelet(k), ipow(p, 2 * a + 1),
                           exact_quotient(mul(12 * j + 1, ipow(p, 2 * a)) - 1, 12), p);
        c.default_n_max = 40;
        return c;
      });

  add("C17", "sum B_{p^{2a-1}}(2p^{2a-1}n + (p^{2a}-1)/12) q^n = eps^a sum b_p(n) q^n mod p",
      {"p", "a", "f"}, false,
      grid_of({{{"p", 5}, {"a", 1}, {"f", 1}}, {{"p", 5}, {"a", 1}, {"f", 2}}}),
      [](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p"), a = v.at("a"), f = v.at("f");
        require_prime(p, 5);
        require(a >= 1, "alpha must be at least 1");
        require(f == 1 || f == 2, "form f must be 1 (b_p) or 2 ((q^p;q^p) p(n))");
        const auto ctx = PrimeContext::make(p);
        const auto k = ipow(p, 2 * a - 1);
        require_bracelet_k(k);
        auto rhs = f == 1 ? SeriesSource::l_regular(p) : SeriesSource::eta_times_partition(p);
        return series_congruence(SeriesSource::bracelet(k),
                                 {mul(2, k), exact_quotient(ipow(p, 2 * a) - 1, 12)},
                                 std::move(rhs), {1, 0}, ctx.epsilon_power(a), p);
      });

  add("C18", "B_{p^{2a-1}}(2p^{2a}n + ((24r_p+p)p^{2a-1}-1)/12) = 0 mod p for p = 5, 7, 11",
      {"p", "a"}, false,
      grid_of({{{"p", 5}, {"a", 1}}, {{"p", 7}, {"a", 1}}, {{"p", 11}, {"a", 1}}}),
      [](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p"), a = v.at("a");
        const auto r_p = ramanujan_residue(p);
        require(a >= 1, "alpha must be at least 1");
        const auto k = ipow(p, 2 * a - 1);
        require_bracelet_k(k);
        auto c = vanishing(SeriesSource::bracelet(k), mul(2, ipow(p, 2 * a)),
                           exact_quotient(mul(24 * r_p + p, k) - 1, 12), p);
        c.default_n_max = 40;
        return c;
      });

  add("C19", "B_{p^{2a}}(p^{2a-1}n + (p^{2a}-1)/12) = 0 mod p for n >= 1", {"p", "a"}, false,
      grid_of({{{"p", 5}, {"a", 1}}}), [](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p"), a = v.at("a");
        require_prime(p, 5);
        require(a >= 1, "alpha must be at least 1");
        const auto k = ipow(p, 2 * a);
        require_bracelet_k(k);
        auto c = vanishing(SeriesSource::bracelet(k), ipow(p, 2 * a - 1),
                           exact_quotient(k - 1, 12), p);
        c.first_n = 1;
        c.guard_first_coefficient = true;
        return c;
      });

  add("C20", "p(pn + r_p) = 0 mod p for p = 5, 7, 11", {"p"}, true,
      grid_of({{{"p", 5}}, {{"p", 7}}, {{"p", 11}}}), [](const ParamMap& v) -> Instantiation {
        const auto p = v.at("p");
        return vanishing(SeriesSource::partition(), p, ramanujan_residue(p), p);
      });

  return out;
}

ParamList ordered_params(const FamilyInstantiator& family, const ParamMap& params) {
  ParamList list;
  for (const auto& name : family.parameters) {
    if (const auto it = params.find(name); it != params.end()) list.emplace_back(name, it->second);
  }
  return list;
}

}  // namespace

const std::vector<FamilyInstantiator>& builtin_claims() {
  static const std::vector<FamilyInstantiator> catalog = make_catalog();
  return catalog;
}

const FamilyInstantiator& find_family(std::string_view id) {
  for (const auto& family : builtin_claims()) {
    if (family.id == id) return family;
  }
  throw std::invalid_argument("unknown claim family '" + std::string(id) + "'");
}

std::string claim_id(const FamilyInstantiator& family, const ParamMap& params) {
  const auto list = ordered_params(family, params);
  if (list.empty()) return family.id;
  std::string id = family.id + "[";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i != 0) id += ',';
    id += list[i].first + "=" + std::to_string(list[i].second);
  }
  return id + "]";
}

Instantiation instantiate(const FamilyInstantiator& family, const ParamMap& params) {
  for (const auto& name : family.parameters) {
    if (!params.contains(name)) fail(family.id + ": missing parameter '" + name + "'");
  }
  for (const auto& [name, value] : params) {
    if (std::find(family.parameters.begin(), family.parameters.end(), name) ==
        family.parameters.end()) {
      fail(family.id + ": unknown parameter '" + name + "'");
    }
  }
  Instantiation result = family.emit(params);
  const auto id = claim_id(family, params);
  const auto list = ordered_params(family, params);
  std::visit(
      [&](auto& claim) {
        claim.id = id;
        claim.family = family.id;
        claim.params = list;
      },
      result);
  if (auto* claim = std::get_if<CongruenceClaim>(&result)) {
    claim->imported = family.imported;
    require(claim->progression.step >= 1 && claim->progression.offset >= 0,
            id + ": malformed progression");
    require(claim->kind == ClaimKind::ExactIdentity || claim->modulus >= 2,
            id + ": modulus must be at least 2");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Selection

std::vector<std::string> split_selectors(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (const char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      if (!current.empty()) out.push_back(current);
      current.clear();
      continue;
    }
    if (c != ' ') current += c;
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

ClaimSelector parse_selector(std::string_view text) {
  ClaimSelector sel;
  const auto open = text.find('[');
  sel.family = std::string(text.substr(0, open));
  if (open == std::string_view::npos) return sel;
  if (text.back() != ']') throw std::invalid_argument("unterminated selector '" + std::string(text) + "'");
  sel.has_params = true;
  const std::string_view body = text.substr(open + 1, text.size() - open - 2);
  std::size_t start = 0;
  while (start < body.size()) {
    const std::size_t end = std::min(body.find(',', start), body.size());
    const std::string_view item = body.substr(start, end - start);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("expected name=value in '" + std::string(item) + "'");
    }
    const std::string name(item.substr(0, eq));
    const std::string_view value = item.substr(eq + 1);
    std::vector<std::int64_t> values;
    if (const auto dots = value.find(".."); dots != std::string_view::npos) {
      const auto lo = parse_int(value.substr(0, dots), item);
      const auto hi = parse_int(value.substr(dots + 2), item);
      if (hi < lo || hi - lo > 10'000) throw std::invalid_argument("bad range in '" + std::string(item) + "'");
      for (auto x = lo; x <= hi; ++x) values.push_back(x);
    } else {
      std::size_t vs = 0;
      while (vs <= value.size()) {
        const std::size_t ve = std::min(value.find('|', vs), value.size());
        values.push_back(parse_int(value.substr(vs, ve - vs), item));
        vs = ve + 1;
      }
    }
    sel.grid.emplace_back(name, std::move(values));
    start = end + 1;
  }
  return sel;
}

const std::string& selected_id(const SelectedClaim& claim) {
  return std::visit([](const auto& c) -> const std::string& { return c.id; }, claim);
}

namespace {

SelectedClaim to_selected(const FamilyInstantiator& family, const ParamMap& point) {
  try {
    Instantiation inst = instantiate(family, point);
    if (auto* c = std::get_if<CongruenceClaim>(&inst)) return std::move(*c);
    return std::get<VacuousClaim>(std::move(inst));
  } catch (const std::invalid_argument& e) {
    return InstantiationFailure{claim_id(family, point), family.id, ordered_params(family, point),
                                e.what()};
  }
}

}  // namespace

std::vector<SelectedClaim> expand_selector(const ClaimSelector& selector,
                                           std::vector<std::string>* skipped) {
  const auto& family = find_family(selector.family);
  std::vector<ParamMap> points;
  if (!selector.has_params) {
    points = family.default_grid;
  } else {
    points.emplace_back();
    for (const auto& [name, values] : selector.grid) {
      std::vector<ParamMap> next;
      for (const auto& base : points) {
        for (const auto value : values) {
          ParamMap p = base;
          p[name] = value;
          next.push_back(std::move(p));
        }
      }
      points = std::move(next);
    }
  }
  std::vector<SelectedClaim> out;
  const bool single = points.size() == 1;
  for (const auto& point : points) {
    SelectedClaim s = to_selected(family, point);
    if (!single && std::holds_alternative<InstantiationFailure>(s)) {
      if (skipped != nullptr) skipped->push_back(selected_id(s));
      continue;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SelectedClaim> default_selection() {
  std::vector<SelectedClaim> out;
  for (const auto& family : builtin_claims()) {
    for (const auto& point : family.default_grid) out.push_back(to_selected(family, point));
  }
  return out;
}

}  // namespace bracelet
