#include "bracelet/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace bracelet {

namespace {

std::optional<std::size_t> env_size(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const auto value = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw std::invalid_argument(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(value);
}

class CapExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

void check_cap(std::int64_t truncation, const CoefficientRing& ring, const RunConfig& config) {
  const auto cap = config.order_cap(ring);
  if (truncation < 0 || static_cast<std::size_t>(truncation) > cap) {
    throw CapExceeded("truncation exceeds cap (" + std::to_string(truncation) + " > " +
                      std::to_string(cap) + " over " + ring.name() + ")");
  }
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

VerificationReport skeleton(const CongruenceClaim& claim) {
  VerificationReport r;
  r.id = claim.id;
  r.family = claim.family;
  r.params = claim.params;
  r.statement = claim.statement();
  r.kind = claim.kind;
  r.first_n = claim.first_n;
  return r;
}

// Order (per series) that checking `claim` will touch.
struct Plan {
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  std::int64_t n_max = 0;
};

Plan plan_for(const CongruenceClaim& claim, const RunConfig& config) {
  Plan plan;
  if (claim.kind == ClaimKind::ExactIdentity) {
    plan.lhs = plan.rhs = config.identity_order;
    plan.n_max = static_cast<std::int64_t>(config.identity_order);
    check_cap(plan.n_max, claim.ring(), config);
    return plan;
  }
  plan.n_max = config.n_max_for(claim);
  if (plan.n_max < claim.first_n) {
    throw std::invalid_argument("n_max " + std::to_string(plan.n_max) + " is below the first index " +
                                std::to_string(claim.first_n));
  }
  const auto lhs = required_truncation(claim, plan.n_max);
  check_cap(lhs, claim.ring(), config);
  plan.lhs = static_cast<std::size_t>(lhs);
  if (claim.kind == ClaimKind::SeriesCongruence) {
    const auto rhs = rhs_truncation(claim, plan.n_max);
    check_cap(rhs, claim.ring(), config);
    plan.rhs = static_cast<std::size_t>(rhs);
  }
  return plan;
}

VerificationReport run_claim(const CongruenceClaim& claim, const RunConfig& config,
                             SeriesCache& cache) {
  const auto start = Clock::now();
  auto report = skeleton(claim);
  try {
    const Plan plan = plan_for(claim, config);
    report.n_max = plan.n_max;
    const auto ring = claim.ring();
    const auto& lhs = cache.get(claim.source, ring, plan.lhs);
    report.truncation = static_cast<std::int64_t>(plan.lhs);

    switch (claim.kind) {
      case ClaimKind::Vanishing: {
        const auto& prog = claim.progression;
        if (claim.guard_first_coefficient && lhs.is_zero_at(prog.at(0))) {
          report.status = ReportStatus::Fail;
          report.counterexample = Counterexample{0, "0"};
          report.message = "coefficient at n=0 vanishes, expected a unit";
          break;
        }
        report.status = ReportStatus::Pass;
        for (std::int64_t n = claim.first_n; n <= plan.n_max; ++n) {
          const auto index = static_cast<std::size_t>(prog.at(n));
          if (!lhs.is_zero_at(index)) {
            report.status = ReportStatus::Fail;
            report.counterexample = Counterexample{n, lhs.coefficient_string(index)};
            report.message = "index " + std::to_string(index);
            break;
          }
        }
        report.n_checked = plan.n_max - claim.first_n + 1;
        break;
      }
      case ClaimKind::SeriesCongruence: {
        const auto& rhs = cache.get(claim.rhs, ring, plan.rhs);
        report.truncation = static_cast<std::int64_t>(std::max(plan.lhs, plan.rhs));
        const auto m = claim.modulus;
        report.status = ReportStatus::Pass;
        for (std::int64_t n = 0; n <= plan.n_max; ++n) {
          const auto l = lhs.residue(static_cast<std::size_t>(claim.progression.at(n)));
          auto r = rhs.residue(static_cast<std::size_t>(claim.rhs_progression.at(n)));
          if (claim.rhs_sign < 0) r = mod_neg(r, m);
          if (l != r) {
            report.status = ReportStatus::Fail;
            report.counterexample = Counterexample{n, std::to_string(l)};
            report.message = "expected " + std::to_string(r);
            break;
          }
        }
        report.n_checked = plan.n_max + 1;
        break;
      }
      case ClaimKind::ExactIdentity: {
        const auto& rhs = cache.get(claim.rhs, ring, plan.rhs);
        const auto eq = equal_upto(lhs, rhs, plan.lhs);
        report.n_checked = static_cast<std::int64_t>(plan.lhs) + 1;
        if (eq) {
          report.status = ReportStatus::Pass;
        } else {
          const auto n = *eq.first_mismatch;
          report.status = ReportStatus::Fail;
          report.counterexample = Counterexample{static_cast<std::int64_t>(n), lhs.coefficient_string(n)};
          report.message = "expected " + rhs.coefficient_string(n);
        }
        break;
      }
    }
  } catch (const std::exception& e) {
    report.status = ReportStatus::Error;
    report.n_checked = 0;
    report.counterexample.reset();
    report.message = e.what();
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

VerificationReport vacuous_report(const VacuousClaim& claim) {
  VerificationReport r;
  r.id = claim.id;
  r.family = claim.family;
  r.params = claim.params;
  r.statement = "vacuous";
  r.status = ReportStatus::Vacuous;
  r.message = claim.reason;
  return r;
}

VerificationReport failure_report(const InstantiationFailure& failure) {
  VerificationReport r;
  r.id = failure.id;
  r.family = failure.family;
  r.params = failure.params;
  r.status = ReportStatus::Error;
  r.message = failure.message;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

RunConfig RunConfig::from_environment() { return from_environment(RunConfig{}); }

RunConfig RunConfig::from_environment(RunConfig base) {
  if (const auto cap = env_size("BRACELET_ORDER_CAP")) {
    base.mod2_order_cap = *cap;
    base.mod_order_cap = *cap;
  }
  if (const auto cap = env_size("BRACELET_EXACT_ORDER_CAP")) base.exact_order_cap = *cap;
  return base;
}

std::size_t RunConfig::order_cap(const CoefficientRing& ring) const {
  if (ring.is_exact()) return exact_order_cap;
  return ring.is_mod2() ? mod2_order_cap : mod_order_cap;
}

std::int64_t RunConfig::n_max_for(const CongruenceClaim& claim) const {
  if (const auto it = n_max_per_claim.find(claim.id); it != n_max_per_claim.end()) return it->second;
  if (const auto it = n_max_per_claim.find(claim.family); it != n_max_per_claim.end()) {
    return it->second;
  }
  if (n_max_override) return *n_max_override;
  return claim.default_n_max.value_or(default_n_max);
}

std::string_view to_string(ReportStatus status) {
  switch (status) {
    case ReportStatus::Pass:
      return "pass";
    case ReportStatus::Fail:
      return "fail";
    case ReportStatus::Vacuous:
      return "vacuous";
    case ReportStatus::Error:
      break;
  }
  return "error";
}

// ---------------------------------------------------------------------------
// SeriesCache

SeriesCache::Key SeriesCache::key_of(const SeriesSource& source, const CoefficientRing& ring) {
  return {source.key(), ring.is_exact(), ring.modulus()};
}

void SeriesCache::require(const SeriesSource& source, const CoefficientRing& ring,
                          std::size_t order) {
  std::lock_guard lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(key_of(source, ring), Entry{source, ring, order, {}});
  if (!inserted) it->second.wanted = std::max(it->second.wanted, order);
}

void SeriesCache::materialize() {
  std::lock_guard lock(mutex_);
  for (auto& [key, entry] : entries_) {
    if (entry.series && entry.series->order() >= entry.wanted) continue;
    entry.series = entry.source.expand(entry.wanted, entry.ring);
    ++expansions_;
  }
}

const TruncatedSeries& SeriesCache::get(const SeriesSource& source, const CoefficientRing& ring,
                                        std::size_t order) {
  std::lock_guard lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(key_of(source, ring), Entry{source, ring, order, {}});
  auto& entry = it->second;
  entry.wanted = std::max(entry.wanted, order);
  if (!entry.series || entry.series->order() < order) {
    entry.series = entry.source.expand(entry.wanted, entry.ring);
    ++expansions_;
  }
  // Entries live in a node-based map and are never replaced once planning is
  // over, so the reference stays valid for concurrent readers.
  return *entry.series;
}

std::size_t SeriesCache::expansions() const {
  std::lock_guard lock(mutex_);
  return expansions_;
}

// ---------------------------------------------------------------------------

VerificationReport verify_claim(const CongruenceClaim& claim, const RunConfig& config,
                                SeriesCache& cache) {
  return run_claim(claim, config, cache);
}

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ei = i, ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      const auto na = a.substr(i, ei - i), nb = b.substr(j, ej - j);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ei;
      j = ej;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  return a.size() - i < b.size() - j;
}

std::vector<VerificationReport> verify(const std::vector<SelectedClaim>& claims,
                                       const RunConfig& config, SeriesCache* cache) {
  SeriesCache local;
  SeriesCache& shared = cache != nullptr ? *cache : local;

  std::vector<VerificationReport> reports(claims.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < claims.size(); ++i) {
    if (const auto* vac = std::get_if<VacuousClaim>(&claims[i])) {
      reports[i] = vacuous_report(*vac);
    } else if (const auto* bad = std::get_if<InstantiationFailure>(&claims[i])) {
      reports[i] = failure_report(*bad);
    } else {
      const auto& claim = std::get<CongruenceClaim>(claims[i]);
      try {
        const Plan plan = plan_for(claim, config);
        shared.require(claim.source, claim.ring(), plan.lhs);
        if (claim.kind != ClaimKind::Vanishing) shared.require(claim.rhs, claim.ring(), plan.rhs);
      } catch (const std::exception&) {
        // run_claim reproduces the error in the report.
      }
      pending.push_back(i);
    }
  }

  // An expansion that throws (say, out of memory) must not take down the run;
  // run_claim retries it lazily and records the error against the claim.
  try {
    shared.materialize();
  } catch (const std::exception&) {
  }

  const unsigned workers =
      std::max(1u, std::min<unsigned>(config.parallelism, static_cast<unsigned>(pending.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < pending.size(); k = next++) {
      const auto i = pending[k];
      reports[i] = run_claim(std::get<CongruenceClaim>(claims[i]), config, shared);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::stable_sort(reports.begin(), reports.end(), [](const auto& x, const auto& y) {
    return natural_less(x.id, y.id);
  });
  return reports;
}

// ---------------------------------------------------------------------------

std::vector<SearchHit> search(const SeriesSource& source, std::int64_t a_max,
                              const std::vector<std::uint64_t>& moduli, std::int64_t n_max,
                              const RunConfig& config) {
  if (a_max < 1) throw std::invalid_argument("A_max must be at least 1");
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  std::vector<SearchHit> hits;
  const std::int64_t order = a_max * n_max + a_max - 1;
  for (const auto m : moduli) {
    const auto ring = CoefficientRing::mod(m);
    check_cap(order, ring, config);
    const auto series = source.expand(static_cast<std::size_t>(order), ring);
    for (std::int64_t a = 1; a <= a_max; ++a) {
      for (std::int64_t b = 0; b < a; ++b) {
        bool vanishes = true;
        for (std::int64_t n = 0; n <= n_max && vanishes; ++n) {
          vanishes = series.is_zero_at(static_cast<std::size_t>(a * n + b));
        }
        if (vanishes) hits.push_back({a, b, m});
      }
    }
  }
  return hits;
}

}  // namespace bracelet
