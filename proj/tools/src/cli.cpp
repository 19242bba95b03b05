#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "bracelet/claims.hpp"
#include "bracelet/verify.hpp"

namespace bracelet::cli {

namespace {

using nlohmann::json;

constexpr int kUsageError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CoefficientRing ring_for(std::uint64_t modulus) {
  return modulus == 0 ? CoefficientRing::exact() : CoefficientRing::mod(modulus);
}

void check_order(std::size_t order, const CoefficientRing& ring, const RunConfig& config) {
  if (order > config.order_cap(ring)) {
    throw UsageError("order " + std::to_string(order) + " exceeds the cap " +
                     std::to_string(config.order_cap(ring)) + " over " + ring.name() +
                     " (raise it with BRACELET_ORDER_CAP or BRACELET_EXACT_ORDER_CAP)");
  }
}

json number_or_string(const std::string& digits) {
  const BigInt v(digits);
  if (v.fits_slong_p()) return v.get_si();
  return digits;
}

// Coefficient dumps -----------------------------------------------------------

void print_coefficients(const TruncatedSeries& s, std::size_t upto, const std::string& label,
                        const std::string& format, std::ostream& out) {
  if (format == "csv") {
    out << "n,coefficient\n";
    for (std::size_t n = 0; n <= upto; ++n) out << n << ',' << s.coefficient_string(n) << '\n';
  } else if (format == "json") {
    json values = json::array();
    for (std::size_t n = 0; n <= upto; ++n) values.push_back(number_or_string(s.coefficient_string(n)));
    out << json{{"series", label}, {"ring", s.ring().name()}, {"coefficients", values}}.dump()
        << '\n';
  } else {
    for (std::size_t n = 0; n <= upto; ++n) out << (n == 0 ? "" : " ") << s.coefficient_string(n);
    out << '\n';
  }
}

// Verification reports --------------------------------------------------------

std::string range_text(const VerificationReport& r) {
  if (r.kind == ClaimKind::ExactIdentity) return "to order " + std::to_string(r.n_max);
  if (r.first_n == 0) return "n≤" + std::to_string(r.n_max);
  return std::to_string(r.first_n) + "≤n≤" + std::to_string(r.n_max);
}

void print_text(const std::vector<VerificationReport>& reports, std::ostream& out) {
  std::size_t width = 0;
  for (const auto& r : reports) width = std::max(width, r.id.size());
  std::size_t counts[4] = {};
  for (const auto& r : reports) {
    ++counts[static_cast<int>(r.status)];
    out << std::left << std::setw(static_cast<int>(width) + 2) << r.id;
    switch (r.status) {
      case ReportStatus::Pass:
        out << r.statement << ": PASS " << range_text(r);
        break;
      case ReportStatus::Fail:
        out << r.statement << ": FAIL at n=" << r.counterexample->n << " (value "
            << r.counterexample->value << (r.message.empty() ? "" : ", " + r.message) << ")";
        break;
      case ReportStatus::Vacuous:
        out << "VACUOUS: " << r.message;
        break;
      case ReportStatus::Error:
        if (!r.statement.empty()) out << r.statement << ": ";
        out << "ERROR: " << r.message;
        break;
    }
    out << '\n';
  }
  out << reports.size() << " claims: " << counts[0] << " pass, " << counts[1] << " fail, "
      << counts[2] << " vacuous, " << counts[3] << " error\n";
}

json report_json(const VerificationReport& r) {
  json params = json::object();
  for (const auto& [name, value] : r.params) params[name] = value;
  json cex = nullptr;
  if (r.counterexample) cex = {{"n", r.counterexample->n}, {"value", number_or_string(r.counterexample->value)}};
  json j = {{"claim_id", r.id},
            {"params", params},
            {"status", std::string(to_string(r.status))},
            {"n_checked", r.n_checked},
            {"truncation", r.truncation},
            {"counterexample", cex},
            {"elapsed_ms", std::round(r.elapsed_ms * 1000.0) / 1000.0}};
  if (!r.statement.empty()) j["statement"] = r.statement;
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (const char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void print_csv(const std::vector<VerificationReport>& reports, std::ostream& out) {
  out << "claim_id,status,n_checked,truncation,counterexample_n,counterexample_value,elapsed_ms\n";
  for (const auto& r : reports) {
    out << csv_field(r.id) << ',' << to_string(r.status) << ',' << r.n_checked << ',' << r.truncation
        << ',';
    if (r.counterexample) out << r.counterexample->n << ',' << r.counterexample->value;
    else out << ',';
    out << ',' << std::fixed << std::setprecision(3) << r.elapsed_ms << std::defaultfloat << '\n';
  }
}

// Subcommands -----------------------------------------------------------------

struct CoeffsOptions {
  std::string source;
  std::optional<std::size_t> positional_n;
  std::optional<std::size_t> n;
  std::uint64_t modulus = 0;
  std::string format = "text";
};

struct DissectOptions {
  std::string source;
  std::size_t step = 1;
  std::size_t residue = 0;
  std::size_t n = 20;
  std::uint64_t modulus = 0;
  std::string format = "text";
};

struct VerifyOptions {
  std::vector<std::string> claims;
  bool all = false;
  std::optional<std::int64_t> n_max;
  std::string format = "text";
  unsigned jobs = 1;
};

struct SearchOptions {
  std::int64_t k = 5;
  std::int64_t a_max = 10;
  std::vector<std::uint64_t> moduli{2};
  std::int64_t n_max = 200;
  std::string source;
  std::string format = "text";
};

int do_coeffs(const CoeffsOptions& o, const RunConfig& config, std::ostream& out) {
  const auto source = SeriesSource::parse(o.source);
  const std::size_t n = o.n.value_or(o.positional_n.value_or(20));
  const auto ring = ring_for(o.modulus);
  check_order(n, ring, config);
  print_coefficients(source.expand(n, ring), n, source.key(), o.format, out);
  return 0;
}

int do_dissect(const DissectOptions& o, const RunConfig& config, std::ostream& out) {
  if (o.step == 0) throw UsageError("A must be at least 1");
  const auto source = SeriesSource::parse(o.source);
  const auto ring = ring_for(o.modulus);
  const std::size_t order = o.step * o.n + o.residue;
  check_order(order, ring, config);
  const auto part = dissect(source.expand(order, ring), o.step, o.residue);
  const std::string label = source.key() + "|" + std::to_string(o.step) + "n+" + std::to_string(o.residue);
  print_coefficients(part, std::min(o.n, part.order()), label, o.format, out);
  return 0;
}

int do_verify(const VerifyOptions& o, RunConfig config, std::ostream& out, std::ostream& err) {
  config.n_max_override = o.n_max;
  config.parallelism = o.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.jobs;

  std::vector<SelectedClaim> selected;
  if (o.all || o.claims.empty()) {
    selected = default_selection();
  } else {
    std::vector<std::string> skipped;
    for (const auto& item : o.claims) {
      for (const auto& text : split_selectors(item)) {
        auto more = expand_selector(parse_selector(text), &skipped);
        std::move(more.begin(), more.end(), std::back_inserter(selected));
      }
    }
    for (const auto& id : skipped) err << "skipping " << id << ": outside the family's range\n";
  }

  const auto reports = verify(selected, config);
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    out << arr.dump(2) << '\n';
  } else if (o.format == "csv") {
    print_csv(reports, out);
  } else {
    print_text(reports, out);
  }
  const bool bad = std::any_of(reports.begin(), reports.end(), [](const auto& r) {
    return r.status == ReportStatus::Fail || r.status == ReportStatus::Error;
  });
  return bad ? 1 : 0;
}

int do_search(const SearchOptions& o, const RunConfig& config, std::ostream& out) {
  const auto source = o.source.empty() ? SeriesSource::bracelet(o.k) : SeriesSource::parse(o.source);
  source.validate();
  std::vector<SearchHit> hits;
  try {
    hits = search(source, o.a_max, o.moduli, o.n_max, config);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& h : hits) arr.push_back({{"A", h.step}, {"B", h.offset}, {"M", h.modulus}});
    out << json{{"series", source.key()}, {"n_max", o.n_max}, {"candidates", arr}}.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "A,B,M\n";
    for (const auto& h : hits) out << h.step << ',' << h.offset << ',' << h.modulus << '\n';
  } else {
    for (const auto& h : hits) {
      const Progression p{h.step, h.offset};
      CongruenceClaim c;
      c.source = source;
      c.progression = p;
      c.modulus = h.modulus;
      out << c.statement() << "  candidate (bounded evidence only, n≤" << o.n_max << ")\n";
    }
    out << hits.size() << " candidates\n";
  }
  return 0;
}

int do_claims(std::ostream& out) {
  for (const auto& family : builtin_claims()) {
    out << std::left << std::setw(5) << family.id << (family.imported ? "[imported] " : "")
        << family.summary;
    if (!family.parameters.empty()) {
      out << "  (";
      for (std::size_t i = 0; i < family.parameters.size(); ++i) {
        out << (i ? "," : "") << family.parameters[i];
      }
      out << ")";
    }
    out << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated q-series toolkit for partition congruences", "bracelet"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  const std::vector<std::string> formats{"text", "csv", "json"};

  CoeffsOptions coeffs;
  auto* c = app.add_subcommand("coeffs", "Print coefficients 0..N of a series");
  c->add_option("source", coeffs.source, "partition, euler, lregular:L, diamond:K, bracelet:K, "
                                         "eta-partition:M, ramanujan-a, ramanujan-b, quintic-rhs, "
                                         "product:<spec>")
      ->required();
  c->add_option("upto", coeffs.positional_n, "Highest index (same as -N)");
  c->add_option("-N", coeffs.n, "Highest index");
  c->add_option("--mod", coeffs.modulus, "Reduce modulo M")->check(CLI::Range(2ull, 1ull << 62));
  c->add_option("--format", coeffs.format)->check(CLI::IsMember(formats));

  DissectOptions dis;
  auto* d = app.add_subcommand("dissect", "Print coefficients of sum c(An+B) q^n");
  d->add_option("source", dis.source)->required();
  d->add_option("A", dis.step)->required()->check(CLI::PositiveNumber);
  d->add_option("B", dis.residue)->required();
  d->add_option("-N", dis.n, "Highest n");
  d->add_option("--mod", dis.modulus, "Reduce modulo M")->check(CLI::Range(2ull, 1ull << 62));
  d->add_option("--format", dis.format)->check(CLI::IsMember(formats));

  VerifyOptions ver;
  auto* v = app.add_subcommand("verify", "Check catalog claims on bounded prefixes");
  v->add_option("--claims", ver.claims, "Selectors such as C6 or C15[p=5,r=2,a=1,i=1..4]")
      ->delimiter(';');
  v->add_flag("--all", ver.all, "Every family over its default grid");
  v->add_option("--nmax", ver.n_max, "Check n = 0..nmax for every selected claim")
      ->check(CLI::NonNegativeNumber);
  v->add_option("--format", ver.format)->check(CLI::IsMember(formats));
  v->add_option("--jobs", ver.jobs, "Worker threads (0 = all cores)");

  SearchOptions sea;
  auto* s = app.add_subcommand("search", "Find vanishing progressions of B_k mod M");
  s->add_option("k", sea.k)->required();
  s->add_option("A_max", sea.a_max)->required()->check(CLI::PositiveNumber);
  s->add_option("--mod", sea.moduli, "Comma-separated moduli")->delimiter(',')->check(
      CLI::Range(2ull, 1ull << 62));
  s->add_option("--nmax", sea.n_max)->check(CLI::NonNegativeNumber);
  s->add_option("--source", sea.source, "Search this series instead of B_k");
  s->add_option("--format", sea.format)->check(CLI::IsMember(formats));

  app.add_subcommand("claims", "List the claim families");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "error: " << e.what() << "\n\n" << sub->help();
    return kUsageError;
  }

  try {
    const auto config = RunConfig::from_environment();
    if (c->parsed()) return do_coeffs(coeffs, config, out);
    if (d->parsed()) return do_dissect(dis, config, out);
    if (v->parsed()) return do_verify(ver, config, out, err);
    if (s->parsed()) return do_search(sea, config, out);
    return do_claims(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace bracelet::cli
