#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bracelet/qseries.hpp"

namespace bracelet {

/// The series a claim talks about.
struct SeriesSource {
  enum class Kind {
    Partition,          ///< p(n)
    LRegular,           ///< b_ell(n), parameter = ell
    BrokenDiamond,      ///< Delta_k(n), parameter = k
    Bracelet,           ///< B_k(n), parameter = k
    Product,            ///< an explicit eta-quotient
    EtaTimesPartition,  ///< (q^m;q^m) * sum p(n) q^n as a series product, parameter = m
    QuinticRhs,         ///< (q^25;q^25)(a(q) - q - q^2 b(q))
  };

  Kind kind = Kind::Partition;
  std::int64_t parameter = 0;
  ProductSpec product;

  static SeriesSource partition() { return {Kind::Partition, 0, {}}; }
  static SeriesSource l_regular(std::int64_t ell) { return {Kind::LRegular, ell, {}}; }
  static SeriesSource broken_diamond(std::int64_t k) { return {Kind::BrokenDiamond, k, {}}; }
  static SeriesSource bracelet(std::int64_t k) { return {Kind::Bracelet, k, {}}; }
  static SeriesSource explicit_product(ProductSpec spec) { return {Kind::Product, 0, std::move(spec)}; }
  static SeriesSource eta_times_partition(std::int64_t m) { return {Kind::EtaTimesPartition, m, {}}; }
  static SeriesSource quintic_rhs() { return {Kind::QuinticRhs, 0, {}}; }

  /// Accepts the CLI spellings: partition, euler, lregular:L, diamond:K,
  /// bracelet:K, eta-partition:M, ramanujan-a, ramanujan-b, quintic-rhs,
  /// product:<spec>. Throws std::invalid_argument.
  static SeriesSource parse(std::string_view text);

  /// Stable cache key, also a valid input to parse().
  std::string key() const;

  /// Name in congruence notation: "p", "b_5", "Δ_1", "B_5".
  std::string symbol() const;

  /// Throws std::invalid_argument when the parameter violates the generator bounds.
  void validate() const;

  TruncatedSeries expand(std::size_t order, CoefficientRing ring) const;

  friend bool operator==(const SeriesSource&, const SeriesSource&) = default;
};

/// Indices step * n + offset, n >= 0. The offset may exceed the step when a
/// family is written that way.
struct Progression {
  std::int64_t step = 1;
  std::int64_t offset = 0;

  std::int64_t at(std::int64_t n) const noexcept { return step * n + offset; }
  friend bool operator==(const Progression&, const Progression&) = default;
};

enum class ClaimKind { Vanishing, SeriesCongruence, ExactIdentity };

using ParamList = std::vector<std::pair<std::string, std::int64_t>>;
using ParamMap = std::map<std::string, std::int64_t>;

/// One concrete, checkable statement.
///
/// Vanishing:        c(step*n + offset) = 0 mod `modulus` for first_n <= n <= n_max.
/// SeriesCongruence: sum c(A n + B) q^n = rhs_sign * sum d(A' n + B') q^n mod `modulus`.
/// ExactIdentity:    source = rhs over ZZ (modulus is 0).
struct CongruenceClaim {
  std::string id;
  std::string family;
  ParamList params;
  bool imported = false;
  ClaimKind kind = ClaimKind::Vanishing;

  SeriesSource source;
  Progression progression;
  std::uint64_t modulus = 0;

  std::int64_t first_n = 0;
  /// Also require c(offset) to be a nonzero residue, so the claim cannot
  /// pass on an identically vanishing progression.
  bool guard_first_coefficient = false;

  SeriesSource rhs;
  Progression rhs_progression;
  int rhs_sign = 1;

  /// Overrides the run-wide n_max for progressions too long for the default.
  std::optional<std::int64_t> default_n_max;

  CoefficientRing ring() const {
    return kind == ClaimKind::ExactIdentity ? CoefficientRing::exact()
                                            : CoefficientRing::mod(modulus);
  }

  /// Human-readable statement, e.g. "B_5(10n+6) ≡ 0 (mod 2)".
  std::string statement() const;
};

/// A parameter choice for which the family asserts nothing.
struct VacuousClaim {
  std::string id;
  std::string family;
  ParamList params;
  std::string reason;
};

using Instantiation = std::variant<CongruenceClaim, VacuousClaim>;

class InstantiationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameterised family; `emit` builds the claim for one parameter point.
struct FamilyInstantiator {
  std::string id;
  std::string summary;
  std::vector<std::string> parameters;
  bool imported = false;
  std::vector<ParamMap> default_grid;
  std::function<Instantiation(const ParamMap&)> emit;
};

/// The full catalog C1..C20, in order.
const std::vector<FamilyInstantiator>& builtin_claims();

/// Throws std::invalid_argument for an unknown id.
const FamilyInstantiator& find_family(std::string_view id);

/// Checks that `params` names exactly the family's parameters, then emits.
/// Throws InstantiationError for out-of-range or non-integral parameters.
Instantiation instantiate(const FamilyInstantiator& family, const ParamMap& params);

/// "C15[p=5,r=2,a=1,i=1]"; parameter order follows the family.
std::string claim_id(const FamilyInstantiator& family, const ParamMap& params);

/// Series order needed to check the claim for n <= n_max (lhs side).
std::int64_t required_truncation(const CongruenceClaim& claim, std::int64_t n_max);

/// Order needed on the right-hand side of a SeriesCongruence or ExactIdentity.
std::int64_t rhs_truncation(const CongruenceClaim& claim, std::int64_t n_max);

// ---------------------------------------------------------------------------
// Selection

/// One parsed selector such as "C15[p=5,r=2,a=1,i=1..4]" or "C6".
struct ClaimSelector {
  std::string family;
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> grid;
  bool has_params = false;
};

struct InstantiationFailure {
  std::string id;
  std::string family;
  ParamList params;
  std::string message;
};

using SelectedClaim = std::variant<CongruenceClaim, VacuousClaim, InstantiationFailure>;

/// Splits "C6,C15[p=5,r=2,a=1,i=1..4]" on commas outside brackets.
std::vector<std::string> split_selectors(std::string_view text);

/// Values may be "x", "x..y" or "x|y|z".
ClaimSelector parse_selector(std::string_view text);

/// Expands a selector over its grid (or the family's default grid). A
/// single-point selector reports an instantiation failure; grid points that
/// fail instantiation are dropped and their ids appended to `skipped`.
std::vector<SelectedClaim> expand_selector(const ClaimSelector& selector,
                                           std::vector<std::string>* skipped = nullptr);

/// Every family over its default grid.
std::vector<SelectedClaim> default_selection();

const std::string& selected_id(const SelectedClaim& claim);

}  // namespace bracelet
