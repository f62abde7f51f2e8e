// kdioph — command-line front end.
//
// Subcommands: seq, roots, norms, verify, gcd-scan, indep, search,
// expand, square-scan, report. Every run writes a manifest (JSON) with
// the full parameter set, precision, timestamps and per-check results;
// data outputs themselves carry no timestamps, so reruns are
// byte-identical.
//
// Exit codes: 0 all checks passed, 1 at least one failed check,
// 2 usage error (bad flags, bad parameter values, unreadable inputs),
// 3 precision cap exhausted before a comparison could be decided.

#include <kdioph/bounds.hpp>
#include <kdioph/charpoly.hpp>
#include <kdioph/expansion.hpp>
#include <kdioph/manifest.hpp>
#include <kdioph/multindep.hpp>
#include <kdioph/sequence.hpp>
#include <kdioph/squares.hpp>
#include <kdioph/triples.hpp>
#include <kdioph/version.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

// Output sink: "-" (or empty) means stdout, anything else a file.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) {
        throw std::invalid_argument("cannot open output file " + path);
      }
      out_ = &file_;
    } else {
      out_ = &std::cout;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

struct CommonOpts {
  long bits = 128;
  std::string out = "-";
  std::string manifest;  // empty -> "<subcommand>.manifest.json"
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--bits", c.bits, "working precision in bits")
      ->default_val(128)
      ->check(CLI::Range(32L, 8192L));
  cmd->add_option("--out", c.out, "output file ('-' = stdout)");
  cmd->add_option("--manifest", c.manifest,
                  "manifest path (default <subcommand>.manifest.json)");
}

std::string manifest_path(const CommonOpts& c, const std::string& sub) {
  return c.manifest.empty() ? sub + ".manifest.json" : c.manifest;
}

bool all_ok(const std::vector<kdioph::CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const kdioph::CheckResult& c) { return c.ok; });
}

// ---------------------------------------------------------------- seq

struct SeqArgs {
  CommonOpts common;
  int k = 2;
  long from = 1;
  long to = 0;
  bool has_to = false;
  std::string member;  // decimal value to test for membership
};

int run_seq(const SeqArgs& a, kdioph::RunManifest& m) {
  Sink sink(a.common.out);
  if (!a.member.empty()) {
    mpz_class value(a.member);
    std::optional<long> idx = kdioph::membership(a.k, value);
    json rec{{"k", a.k}, {"value", value.get_str()}};
    rec["index"] = idx ? json(*idx) : json(nullptr);
    sink.stream() << rec.dump() << '\n';
    m.summary = {{"member", idx.has_value()}};
    return 0;
  }
  long to = a.has_to ? a.to : a.from;
  if (to < a.from) {
    throw std::invalid_argument("--to must not be below --from");
  }
  kdioph::SequenceCache cache(a.k);
  for (long n = a.from; n <= to; ++n) {
    sink.stream() << cache.at(n).get_str() << '\n';
  }
  m.summary = {{"terms", to - a.from + 1}};
  return 0;
}

// -------------------------------------------------------------- roots

struct RootsArgs {
  CommonOpts common;
  int k = 2;
};

int run_roots(const RootsArgs& a, kdioph::RunManifest& m) {
  kdioph::RootSet roots = kdioph::all_roots(a.k, a.common.bits);
  Sink sink(a.common.out);
  json dom{{"k", a.k},
           {"index", 1},
           {"dominant", true},
           {"center_re", roots.dominant.midpoint_string()},
           {"center_im", "0"},
           {"radius", roots.dominant.radius_string()},
           {"modulus_lo", roots.dominant.lo_string()},
           {"modulus_hi", roots.dominant.hi_string()}};
  sink.stream() << dom.dump() << '\n';
  for (std::size_t i = 0; i < roots.others.size(); ++i) {
    const kdioph::ComplexBox& b = roots.others[i];
    kdioph::RealInterval mod = b.modulus();
    json rec{{"k", a.k},
             {"index", static_cast<long>(i) + 2},
             {"dominant", false},
             {"center_re", b.center_re_string()},
             {"center_im", b.center_im_string()},
             {"radius", b.radius_string()},
             {"modulus_lo", mod.lo_string()},
             {"modulus_hi", mod.hi_string()}};
    sink.stream() << rec.dump() << '\n';
  }
  m.precision_bits = roots.bits;
  m.checks.push_back({"root-certification", std::to_string(a.k), true});
  m.summary = {{"roots", a.k}, {"certified_bits", roots.bits}};
  return 0;
}

// -------------------------------------------------------------- norms

struct NormsArgs {
  CommonOpts common;
  int k = 2;
  long p = 0, q = 0;
  bool has_p = false, has_q = false;
};

int run_norms(const NormsArgs& a, kdioph::RunManifest& m) {
  Sink sink(a.common.out);
  if (a.has_p || a.has_q) {
    if (!a.has_p || !a.has_q) {
      throw std::invalid_argument("--p and --q must be given together");
    }
    mpq_class value =
        kdioph::norm_linear_form(a.k, mpz_class(a.p), mpz_class(a.q));
    json rec{{"k", a.k},
             {"form", "p*alpha-q"},
             {"p", a.p},
             {"q", a.q},
             {"norm", value.get_str()}};
    sink.stream() << rec.dump() << '\n';
    m.summary = {{"probe", true}};
    return 0;
  }
  kdioph::NormIdentityRecord rec = kdioph::verify_norm_identities(a.k);
  mpz_class d = kdioph::discriminant(a.k);
  mpq_class expected_form(d, mpz_class(a.k - 1));
  expected_form.canonicalize();
  json lines[3] = {
      json{{"k", a.k},
           {"form", "alpha"},
           {"norm", rec.norm_alpha.get_str()},
           {"expected", "1"},
           {"ok", rec.norm_alpha == 1}},
      json{{"k", a.k},
           {"form", "alpha-1"},
           {"norm", rec.norm_alpha_minus_1.get_str()},
           {"expected", mpz_class(a.k - 1).get_str()},
           {"ok", rec.norm_alpha_minus_1 == a.k - 1}},
      json{{"k", a.k},
           {"form", "(k+1)*alpha-2k"},
           {"norm", rec.norm_form.get_str()},
           {"expected", expected_form.get_str()},
           {"ok", rec.norm_form == expected_form}}};
  for (const json& l : lines) sink.stream() << l.dump() << '\n';
  m.checks.push_back({"norm-identities", std::to_string(a.k), rec.ok});
  m.summary = {{"identities", 3}};
  return rec.ok ? 0 : 1;
}

// ------------------------------------------------------------- verify

struct VerifyArgs {
  CommonOpts common;
  int k = 2;
  long n_max = 50;
};

int run_verify(const VerifyArgs& a, kdioph::RunManifest& m) {
  Sink sink(a.common.out);
  std::string scope = std::to_string(a.k);

  kdioph::RootWindowRecord window = kdioph::verify_root_window(a.k,
                                                               a.common.bits);
  sink.stream() << json{{"check", "root-window"},
                        {"k", a.k},
                        {"lo", window.dominant.lo_string()},
                        {"hi", window.dominant.hi_string()},
                        {"ok", window.ok}}
                       .dump()
                << '\n';
  m.checks.push_back({"root-window", scope, window.ok});

  bool size_ok = true;
  for (const kdioph::SizeBoundRecord& r :
       kdioph::verify_size_bounds(a.k, a.n_max, a.common.bits)) {
    sink.stream() << json{{"check", "size-bounds"},
                          {"k", a.k},
                          {"n", r.n},
                          {"lower_ok", r.lower_ok},
                          {"upper_ok", r.upper_ok},
                          {"informational", r.informational},
                          {"ok", r.ok}}
                         .dump()
                  << '\n';
    if (!r.informational && !r.ok) size_ok = false;
  }
  m.checks.push_back({"size-bounds", scope, size_ok});

  bool residual_ok = true;
  for (const kdioph::BinetResidualRecord& r :
       kdioph::verify_binet_residuals(a.k, a.n_max, a.common.bits)) {
    sink.stream() << json{{"check", "binet-residual"},
                          {"k", a.k},
                          {"n", r.n},
                          {"residual_mid", r.residual.midpoint_string()},
                          {"residual_radius", r.residual.radius_string()},
                          {"informational", r.informational},
                          {"ok", r.ok}}
                         .dump()
                  << '\n';
    if (!r.informational && !r.ok) residual_ok = false;
  }
  m.checks.push_back({"binet-residual", scope, residual_ok});

  m.summary = {{"n_max", a.n_max}};
  return all_ok(m.checks) ? 0 : 1;
}

// ----------------------------------------------------------- gcd-scan

struct GcdArgs {
  CommonOpts common;
  int k = 2;
  long x_max = 30;
};

int run_gcd_scan(const GcdArgs& a, kdioph::RunManifest& m) {
  Sink sink(a.common.out);
  bool ok = true;
  long pairs = 0;
  for (const kdioph::GcdScanRecord& r :
       kdioph::gcd_scan(a.k, a.x_max, a.common.bits)) {
    sink.stream() << json{{"k", a.k},
                          {"x", r.x},
                          {"y", r.y},
                          {"gcd", r.gcd_value.get_str()},
                          {"bound_lo", r.bound.lo_string()},
                          {"bound_hi", r.bound.hi_string()},
                          {"ok", r.ok}}
                         .dump()
                  << '\n';
    if (!r.ok) ok = false;
    ++pairs;
  }
  m.checks.push_back({"gcd-bound", std::to_string(a.k), ok});
  m.summary = {{"pairs", pairs}};
  return ok ? 0 : 1;
}

// -------------------------------------------------------------- indep

struct IndepArgs {
  CommonOpts common;
  int k = 2;
  int omit = 0;  // 0 = default subset (omit the last non-dominant root)
  long probe_bound = 0;
  bool has_probe = false;
};

int run_indep(const IndepArgs& a, kdioph::RunManifest& m) {
  kdioph::RootSet roots = kdioph::all_roots(a.k, a.common.bits);
  kdioph::IndependenceCertificate cert =
      kdioph::independence_certificate(roots, a.omit);
  std::string scope = std::to_string(a.k);

  json margins = json::array();
  for (const kdioph::RealInterval& g : cert.margins) {
    margins.push_back({{"lo", g.lo_string()}, {"hi", g.hi_string()}});
  }
  json doc{{"k", a.k},
           {"omitted_index", cert.omitted_index},
           {"log_dominant_mid", cert.log_dominant.midpoint_string()},
           {"margins", std::move(margins)},
           {"dominance_margin_lo", cert.dominance_margin.lo_string()},
           {"sum_matches", cert.sum_matches},
           {"ok", cert.ok}};
  m.checks.push_back({"independence-certificate", scope, cert.ok});

  if (a.has_probe) {
    json candidates = json::array();
    bool probe_ok = true;
    for (const kdioph::RelationCandidate& c :
         kdioph::relation_probe(roots, a.probe_bound)) {
      bool admissible = c.trivial || c.norm_relation;
      if (!admissible) probe_ok = false;
      candidates.push_back({{"exponents", c.exponents},
                            {"trivial", c.trivial},
                            {"norm_relation", c.norm_relation},
                            {"argument_consistent", c.argument_consistent},
                            {"log_residual", c.log_residual}});
    }
    doc["probe"] = {{"bound", a.probe_bound},
                    {"candidates", std::move(candidates)},
                    {"ok", probe_ok}};
    m.checks.push_back({"relation-probe", scope, probe_ok});
  }

  Sink sink(a.common.out);
  sink.stream() << doc.dump(2) << '\n';
  m.precision_bits = roots.bits;
  return all_ok(m.checks) ? 0 : 1;
}

// ------------------------------------------------------------- search

struct SearchArgs {
  CommonOpts common;
  int k = 2;
  long z_max = 30;
  bool no_prune = false;
  int jobs = 1;
  std::string checkpoint;
  std::string resume;
};

int run_search(const SearchArgs& a, kdioph::RunManifest& m) {
  kdioph::SearchOptions opts;
  opts.prune = !a.no_prune;
  opts.jobs = a.jobs;
  if (!a.resume.empty()) {
    std::ifstream in(a.resume);
    if (!in) {
      throw std::invalid_argument("cannot read checkpoint file " + a.resume);
    }
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw std::invalid_argument("checkpoint " + a.resume +
                                  " is not valid JSON: " + e.what());
    }
    opts.resume = kdioph::checkpoint_from_json(j);
  }
  if (!a.checkpoint.empty()) {
    std::string path = a.checkpoint;
    opts.on_checkpoint = [path](const kdioph::SearchCheckpoint& cp) {
      std::ofstream out(path);
      if (!out) {
        throw std::invalid_argument("cannot write checkpoint file " + path);
      }
      out << kdioph::checkpoint_to_json(cp).dump(2) << '\n';
    };
  }

  std::vector<kdioph::TripleSolution> solutions =
      kdioph::search(a.k, a.z_max, opts);

  Sink sink(a.common.out);
  for (const kdioph::TripleSolution& s : solutions) {
    sink.stream() << json{{"k", a.k},
                          {"a", s.a.get_str()},
                          {"b", s.b.get_str()},
                          {"c", s.c.get_str()},
                          {"x", std::to_string(s.x)},
                          {"y", std::to_string(s.y)},
                          {"z", std::to_string(s.z)}}
                         .dump()
                  << '\n';
  }
  m.checks.push_back({"search-complete", std::to_string(a.k), true});
  m.summary = {{"z_max", a.z_max},
               {"solutions", solutions.size()},
               {"pruned", opts.prune}};
  return 0;
}

// ------------------------------------------------------------- expand

struct ExpandArgs {
  CommonOpts common;
  int k = 2;
  int order = 1;
  std::string at;  // "X,Y,Z"
};

int run_expand(const ExpandArgs& a, kdioph::RunManifest& m) {
  long x = 0, y = 0, z = 0;
  char tail = '\0';
  if (std::sscanf(a.at.c_str(), "%ld,%ld,%ld%c", &x, &y, &z, &tail) != 3) {
    throw std::invalid_argument("--at expects X,Y,Z (three indices)");
  }

  kdioph::RootSet roots = kdioph::all_roots(a.k, a.common.bits);
  kdioph::BinetCoefficients coeffs = kdioph::binet_coefficients(roots);
  kdioph::ExpansionConfig cfg;
  cfg.order = a.order;
  cfg.epsilon = kdioph::parity_epsilon(x, y, z);

  std::vector<kdioph::ExpansionTerm> terms =
      kdioph::expand_c(roots, coeffs, cfg);
  kdioph::RealInterval approx =
      kdioph::eval_expansion(roots, coeffs, terms, cfg, x, y, z);
  kdioph::RealInterval reference =
      kdioph::reference_c(a.k, x, y, z, a.common.bits);
  kdioph::RealInterval rel_error = abs(approx - reference) / reference;

  bool decay_ok = true;
  long decayed = 0;
  for (const kdioph::MonomialDecayRecord& d :
       kdioph::monomial_decay_check(roots, terms, x, y, z)) {
    if (!d.ok) decay_ok = false;
    ++decayed;
  }

  json term_table = json::array();
  for (const kdioph::ExpansionTerm& t : terms) {
    json exps = json::array();
    for (const std::array<long, 3>& row : t.exponents) {
      exps.push_back({row[0], row[1], row[2]});
    }
    term_table.push_back({{"coefficient_re", t.coefficient.center_re_string()},
                          {"coefficient_im", t.coefficient.center_im_string()},
                          {"radius", t.coefficient.radius_string()},
                          {"exponents", std::move(exps)}});
  }
  json doc{{"k", a.k},
           {"order", a.order},
           {"epsilon", cfg.epsilon},
           {"x", x},
           {"y", y},
           {"z", z},
           {"terms", std::move(term_table)},
           {"evaluation",
            {{"approx_mid", approx.midpoint_string()},
             {"approx_radius", approx.radius_string()},
             {"reference_mid", reference.midpoint_string()},
             {"relative_error_hi", rel_error.hi_string(6)}}},
           {"decay", {{"records", decayed}, {"ok", decay_ok}}}};

  Sink sink(a.common.out);
  sink.stream() << doc.dump(2) << '\n';

  std::string scope = std::to_string(a.k);
  m.checks.push_back({"monomial-decay", scope, decay_ok});
  m.precision_bits = roots.bits;
  m.summary = {{"terms", terms.size()},
               {"relative_error_hi", rel_error.hi_string(6)}};
  return all_ok(m.checks) ? 0 : 1;
}

// -------------------------------------------------------- square-scan

struct SquareArgs {
  CommonOpts common;
  int k_min = 2;
  int k_max = 100;
};

int run_square_scan(const SquareArgs& a, kdioph::RunManifest& m) {
  Sink sink(a.common.out);
  bool none_square = true;
  bool witnesses_ok = true;
  long records = 0;
  for (const kdioph::SquareScanRecord& r :
       kdioph::square_scan(a.k_max, a.k_min)) {
    json rec{{"k", r.k},
             {"discriminant", r.discriminant_value.get_str()},
             {"floor_sqrt", r.floor_sqrt.get_str()},
             {"is_square", r.is_square},
             {"witness_kind", kdioph::witness_kind_name(r.witness.kind)},
             {"witness_ok", r.witness_ok}};
    if (r.witness.kind == kdioph::WitnessKind::kMod4) {
      rec["d_mod4"] = r.witness.d_mod4;
    } else if (r.witness.kind == kdioph::WitnessKind::kTwoSquares) {
      rec["blocking_prime"] = r.witness.p;
      rec["residual_is_square"] = r.witness.residual_is_square;
      rec["gcd_ok"] = r.witness.gcd_ok;
    }
    sink.stream() << rec.dump() << '\n';
    if (r.is_square) none_square = false;
    if (!r.witness_ok) witnesses_ok = false;
    ++records;
  }
  std::string scope =
      std::to_string(a.k_min) + ".." + std::to_string(a.k_max);
  m.checks.push_back({"discriminant-nonsquare", scope, none_square});
  m.checks.push_back({"square-witness", scope, witnesses_ok});
  m.summary = {{"records", records}};
  return all_ok(m.checks) ? 0 : 1;
}

// ------------------------------------------------------------- report

struct ReportArgs {
  std::vector<std::string> paths;
  std::string dir;
  std::string out = "-";
};

bool use_color() {
  return ::isatty(STDOUT_FILENO) && std::getenv("NO_COLOR") == nullptr;
}

int run_report(const ReportArgs& a) {
  std::vector<std::string> files = a.paths;
  if (!a.dir.empty()) {
    std::error_code ec;
    for (const std::filesystem::directory_entry& e :
         std::filesystem::directory_iterator(a.dir, ec)) {
      if (e.is_regular_file() && e.path().extension() == ".json") {
        files.push_back(e.path().string());
      }
    }
    if (ec) {
      throw std::invalid_argument("cannot read directory " + a.dir);
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw std::invalid_argument("report needs manifest files or --dir");
  }

  struct Row {
    std::string name, scope, file;
    bool ok;
  };
  std::vector<Row> rows;
  for (const std::string& f : files) {
    kdioph::RunManifest m;
    try {
      m = kdioph::read_manifest(f);
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string(e.what()));
    }
    std::string base = std::filesystem::path(f).filename().string();
    for (const kdioph::CheckResult& c : m.checks) {
      rows.push_back(Row{c.name, c.scope, base, c.ok});
    }
  }
  if (rows.empty()) {
    throw std::invalid_argument("no checks found in the given manifests");
  }
  std::sort(rows.begin(), rows.end(), [](const Row& l, const Row& r) {
    return std::tie(l.name, l.scope, l.file) <
           std::tie(r.name, r.scope, r.file);
  });

  bool color = a.out == "-" && use_color();
  const char* green = color ? "\033[32m" : "";
  const char* red = color ? "\033[31m" : "";
  const char* reset = color ? "\033[0m" : "";

  std::size_t name_w = 5, scope_w = 5;
  for (const Row& r : rows) {
    name_w = std::max(name_w, r.name.size());
    scope_w = std::max(scope_w, r.scope.size());
  }

  Sink sink(a.out);
  std::ostream& os = sink.stream();
  long failures = 0;
  os << std::left << std::setw(static_cast<int>(name_w) + 2) << "check"
     << std::setw(static_cast<int>(scope_w) + 2) << "k"
     << std::setw(8) << "result" << "source" << '\n';
  for (const Row& r : rows) {
    os << std::left << std::setw(static_cast<int>(name_w) + 2) << r.name
       << std::setw(static_cast<int>(scope_w) + 2) << r.scope
       << (r.ok ? green : red) << std::setw(8) << (r.ok ? "PASS" : "FAIL")
       << reset << r.file << '\n';
    if (!r.ok) ++failures;
  }
  os << rows.size() << " checks, " << failures << " failed\n";
  return failures == 0 ? 0 : 1;
}

// --------------------------------------------------------------- glue

template <typename Fn>
int run_with_manifest(const CommonOpts& common, const std::string& sub,
                      const json& params, Fn&& body) {
  kdioph::RunManifest m;
  m.subcommand = sub;
  m.parameters = params;
  m.precision_bits = common.bits;
  m.started = kdioph::utc_timestamp();
  int code = 0;
  try {
    code = body(m);
  } catch (const kdioph::precision_fault&) {
    code = 3;
  } catch (const kdioph::undecidable_comparison&) {
    code = 3;
  } catch (const std::invalid_argument&) {
    code = 2;
  } catch (const std::domain_error&) {
    code = 2;
  } catch (const std::exception&) {
    code = 1;
  }
  m.exit_code = code;
  m.finished = kdioph::utc_timestamp();
  try {
    kdioph::write_manifest(manifest_path(common, sub), m);
  } catch (const std::exception& e) {
    std::cerr << "kdioph: " << e.what() << '\n';
    if (code == 0) code = 2;
  }
  return code;
}

template <typename Fn>
int guarded(Fn&& body, kdioph::RunManifest& m) {
  try {
    return body(m);
  } catch (const kdioph::precision_fault& e) {
    std::cerr << "kdioph: precision fault: " << e.what() << '\n';
    throw;
  } catch (const kdioph::undecidable_comparison& e) {
    std::cerr << "kdioph: undecidable at precision cap: " << e.what() << '\n';
    throw;
  } catch (const std::invalid_argument& e) {
    std::cerr << "kdioph: " << e.what() << '\n';
    throw;
  } catch (const std::domain_error& e) {
    std::cerr << "kdioph: " << e.what() << '\n';
    throw;
  } catch (const std::exception& e) {
    std::cerr << "kdioph: error: " << e.what() << '\n';
    throw;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification and search toolkit for k-step Fibonacci "
               "sequences and products-plus-one membership problems"};
  app.set_version_flag("--version", kdioph::kVersion);
  app.set_config("--config", "", "read options from a TOML/INI file");
  app.require_subcommand(1);

  SeqArgs seq;
  CLI::App* c_seq =
      app.add_subcommand("seq", "evaluate sequence terms / membership");
  c_seq->add_option("--k", seq.k, "sequence order (>= 2)")->required();
  c_seq->add_option("--from", seq.from, "first index");
  CLI::Option* opt_to =
      c_seq->add_option("--to", seq.to, "last index (default: --from)");
  c_seq->add_option("--member", seq.member,
                    "test membership of a decimal value instead");
  add_common(c_seq, seq.common);

  RootsArgs roots;
  CLI::App* c_roots =
      app.add_subcommand("roots", "certified characteristic root enclosures");
  c_roots->add_option("--k", roots.k, "sequence order (>= 2)")->required();
  add_common(c_roots, roots.common);

  NormsArgs norms;
  CLI::App* c_norms =
      app.add_subcommand("norms", "exact algebraic norm identities");
  c_norms->add_option("--k", norms.k, "sequence order (>= 2)")->required();
  CLI::Option* opt_p =
      c_norms->add_option("--p", norms.p, "evaluate |N(p*alpha - q)|: p");
  CLI::Option* opt_q =
      c_norms->add_option("--q", norms.q, "evaluate |N(p*alpha - q)|: q");
  add_common(c_norms, norms.common);

  VerifyArgs verify;
  CLI::App* c_verify = app.add_subcommand(
      "verify", "root window, size bounds and dominant-term residuals");
  c_verify->add_option("--k", verify.k, "sequence order (>= 2)")->required();
  c_verify->add_option("--n-max", verify.n_max, "largest index to check")
      ->default_val(50L);
  add_common(c_verify, verify.common);

  GcdArgs gcd;
  CLI::App* c_gcd = app.add_subcommand(
      "gcd-scan", "pairwise gcd(F_x - 1, F_y - 1) against the growth bound");
  c_gcd->add_option("--k", gcd.k, "sequence order (>= 2)")->required();
  c_gcd->add_option("--x-max", gcd.x_max, "largest index to scan")
      ->default_val(30L);
  add_common(c_gcd, gcd.common);

  IndepArgs indep;
  CLI::App* c_indep = app.add_subcommand(
      "indep", "multiplicative-independence certificate for the roots");
  c_indep->add_option("--k", indep.k, "sequence order (>= 2)")->required();
  c_indep->add_option("--omit", indep.omit,
                      "root index (2..k+...) omitted from the subset; "
                      "0 = omit the last non-dominant root");
  CLI::Option* opt_probe =
      c_indep->add_option("--probe-bound", indep.probe_bound,
                          "exhaust integer relations with |exponent| <= B");
  add_common(c_indep, indep.common);

  SearchArgs search;
  CLI::App* c_search =
      app.add_subcommand("search", "exhaustive triple search up to z_max");
  c_search->add_option("--k", search.k, "sequence order (>= 2)")->required();
  c_search->add_option("--z-max", search.z_max, "largest index of bc + 1")
      ->required();
  c_search->add_flag("--no-prune", search.no_prune,
                     "disable index cuts (cross-check mode)");
  c_search->add_option("--jobs", search.jobs, "worker threads")
      ->default_val(1)
      ->check(CLI::Range(1, 256));
  c_search->add_option("--checkpoint", search.checkpoint,
                       "write a resumable checkpoint after each layer chunk");
  c_search->add_option("--resume", search.resume,
                       "resume from a checkpoint file");
  add_common(c_search, search.common);

  ExpandArgs expand;
  CLI::App* c_expand = app.add_subcommand(
      "expand", "series expansion of c = sqrt((F_y-1)(F_z-1)/(F_x-1))");
  c_expand->add_option("--k", expand.k, "sequence order (>= 2)")->required();
  c_expand->add_option("--T,--order", expand.order, "truncation order")
      ->default_val(1);
  c_expand->add_option("--at", expand.at, "evaluation point X,Y,Z")
      ->required();
  add_common(c_expand, expand.common);

  SquareArgs square;
  CLI::App* c_square = app.add_subcommand(
      "square-scan", "perfect-square scan of 2^(k+1) k^k - (k+1)^(k+1)");
  c_square->add_option("--k-max", square.k_max, "largest order to scan")
      ->required();
  c_square->add_option("--k-min", square.k_min, "smallest order to scan")
      ->default_val(2);
  add_common(c_square, square.common);

  ReportArgs report;
  CLI::App* c_report =
      app.add_subcommand("report", "merge manifests into a check matrix");
  c_report->add_option("paths", report.paths, "manifest files");
  c_report->add_option("--dir", report.dir,
                       "directory to scan for *.json manifests");
  c_report->add_option("--out", report.out, "output file ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "kdioph: " << e.what() << '\n';
    return 2;
  }
  seq.has_to = opt_to->count() > 0;
  norms.has_p = opt_p->count() > 0;
  norms.has_q = opt_q->count() > 0;
  indep.has_probe = opt_probe->count() > 0;

  auto dispatch = [&](const CommonOpts& common, const std::string& sub,
                      const json& params, auto&& body) {
    return run_with_manifest(common, sub, params, [&](kdioph::RunManifest& m) {
      return guarded(body, m);
    });
  };

  if (c_seq->parsed()) {
    json params{{"k", seq.k}, {"from", seq.from}, {"bits", seq.common.bits}};
    if (seq.has_to) params["to"] = seq.to;
    if (!seq.member.empty()) params["member"] = seq.member;
    return dispatch(seq.common, "seq", params,
                    [&](kdioph::RunManifest& m) { return run_seq(seq, m); });
  }
  if (c_roots->parsed()) {
    json params{{"k", roots.k}, {"bits", roots.common.bits}};
    return dispatch(roots.common, "roots", params, [&](kdioph::RunManifest& m) {
      return run_roots(roots, m);
    });
  }
  if (c_norms->parsed()) {
    json params{{"k", norms.k}, {"bits", norms.common.bits}};
    if (norms.has_p) params["p"] = norms.p;
    if (norms.has_q) params["q"] = norms.q;
    return dispatch(norms.common, "norms", params, [&](kdioph::RunManifest& m) {
      return run_norms(norms, m);
    });
  }
  if (c_verify->parsed()) {
    json params{{"k", verify.k},
                {"n_max", verify.n_max},
                {"bits", verify.common.bits}};
    return dispatch(verify.common, "verify", params,
                    [&](kdioph::RunManifest& m) {
                      return run_verify(verify, m);
                    });
  }
  if (c_gcd->parsed()) {
    json params{{"k", gcd.k}, {"x_max", gcd.x_max}, {"bits", gcd.common.bits}};
    return dispatch(gcd.common, "gcd-scan", params,
                    [&](kdioph::RunManifest& m) {
                      return run_gcd_scan(gcd, m);
                    });
  }
  if (c_indep->parsed()) {
    json params{{"k", indep.k},
                {"omit", indep.omit},
                {"bits", indep.common.bits}};
    if (indep.has_probe) params["probe_bound"] = indep.probe_bound;
    return dispatch(indep.common, "indep", params,
                    [&](kdioph::RunManifest& m) {
                      return run_indep(indep, m);
                    });
  }
  if (c_search->parsed()) {
    json params{{"k", search.k},
                {"z_max", search.z_max},
                {"no_prune", search.no_prune},
                {"jobs", search.jobs},
                {"bits", search.common.bits}};
    if (!search.checkpoint.empty()) params["checkpoint"] = search.checkpoint;
    if (!search.resume.empty()) params["resume"] = search.resume;
    return dispatch(search.common, "search", params,
                    [&](kdioph::RunManifest& m) {
                      return run_search(search, m);
                    });
  }
  if (c_expand->parsed()) {
    json params{{"k", expand.k},
                {"T", expand.order},
                {"at", expand.at},
                {"bits", expand.common.bits}};
    return dispatch(expand.common, "expand", params,
                    [&](kdioph::RunManifest& m) {
                      return run_expand(expand, m);
                    });
  }
  if (c_square->parsed()) {
    json params{{"k_min", square.k_min},
                {"k_max", square.k_max},
                {"bits", square.common.bits}};
    return dispatch(square.common, "square-scan", params,
                    [&](kdioph::RunManifest& m) {
                      return run_square_scan(square, m);
                    });
  }
  if (c_report->parsed()) {
    try {
      return run_report(report);
    } catch (const std::invalid_argument& e) {
      std::cerr << "kdioph: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "kdioph: error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}
