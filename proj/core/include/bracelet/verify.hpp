#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bracelet/claims.hpp"

namespace bracelet {

struct RunConfig {
  /// Used when nothing more specific applies.
  std::int64_t default_n_max = 200;
  /// Set by an explicit request (CLI --nmax); beats the per-claim defaults.
  std::optional<std::int64_t> n_max_override;
  /// Keyed by full claim id or by family id; the full id wins.
  std::map<std::string, std::int64_t> n_max_per_claim;

  std::size_t mod2_order_cap = 50'000;
  std::size_t mod_order_cap = 30'000;
  std::size_t exact_order_cap = 2'000;
  std::size_t identity_order = 1'000;

  unsigned parallelism = 1;

  /// Applies BRACELET_ORDER_CAP (every modular ring) and BRACELET_EXACT_ORDER_CAP.
  static RunConfig from_environment();
  static RunConfig from_environment(RunConfig base);

  std::size_t order_cap(const CoefficientRing& ring) const;
  std::int64_t n_max_for(const CongruenceClaim& claim) const;
};

enum class ReportStatus { Pass, Fail, Vacuous, Error };

std::string_view to_string(ReportStatus status);

struct Counterexample {
  std::int64_t n = 0;
  /// Canonical residue (or integer for exact identities) of the lhs at n.
  std::string value;
};

struct VerificationReport {
  std::string id;
  std::string family;
  ParamList params;
  std::string statement;
  ClaimKind kind = ClaimKind::Vanishing;
  ReportStatus status = ReportStatus::Error;
  /// Checked range is first_n..n_max (coefficient indices for identities).
  std::int64_t first_n = 0;
  std::int64_t n_max = 0;
  std::int64_t n_checked = 0;
  /// Highest series index consulted.
  std::int64_t truncation = 0;
  std::optional<Counterexample> counterexample;
  std::string message;
  double elapsed_ms = 0.0;
};

/// Expanded series keyed by (source, ring). Entries are built once at the
/// largest order asked for during planning and are read-only afterwards.
class SeriesCache {
 public:
  /// Records that `source` is needed to at least `order` over `ring`.
  void require(const SeriesSource& source, const CoefficientRing& ring, std::size_t order);
  /// Expands every required entry that is missing or too short.
  void materialize();
  /// Expands on demand if needed. Throws std::out_of_range if a planned
  /// entry is shorter than `order`.
  const TruncatedSeries& get(const SeriesSource& source, const CoefficientRing& ring,
                             std::size_t order);

  std::size_t expansions() const;

 private:
  using Key = std::tuple<std::string, bool, std::uint64_t>;
  struct Entry {
    SeriesSource source;
    CoefficientRing ring;
    std::size_t wanted = 0;
    std::optional<TruncatedSeries> series;
  };
  static Key key_of(const SeriesSource& source, const CoefficientRing& ring);

  mutable std::mutex mutex_;
  std::map<Key, Entry> entries_;
  std::size_t expansions_ = 0;
};

/// Checks one claim against already planned series.
VerificationReport verify_claim(const CongruenceClaim& claim, const RunConfig& config,
                                SeriesCache& cache);

/// One report per selected claim, sorted by claim id (numeric runs compared
/// as numbers). Errors are captured per claim.
std::vector<VerificationReport> verify(const std::vector<SelectedClaim>& claims,
                                       const RunConfig& config, SeriesCache* cache = nullptr);

/// "C2" < "C10", "i=2" < "i=10".
bool natural_less(std::string_view a, std::string_view b);

struct SearchHit {
  std::int64_t step;
  std::int64_t offset;
  std::uint64_t modulus;
  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

/// Every (A, B, M) with A <= a_max, B < A, M in `moduli` and
/// c(A n + B) = 0 mod M for all n <= n_max. Bounded evidence only.
/// Throws std::out_of_range when the needed order exceeds the cap.
std::vector<SearchHit> search(const SeriesSource& source, std::int64_t a_max,
                              const std::vector<std::uint64_t>& moduli, std::int64_t n_max,
                              const RunConfig& config);

}  // namespace bracelet
