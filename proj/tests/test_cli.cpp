#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// Black-box tests of the installed binary: every command runs through
// std::system in a scratch directory; only exit codes and emitted files
// are inspected.

namespace {

using nlohmann::json;

std::string scratch_dir() {
  static std::string dir = [] {
    std::string tmpl = "/tmp/kdioph-cli-XXXXXX";
    char* made = mkdtemp(tmpl.data());
    REQUIRE(made != nullptr);
    return std::string(made);
  }();
  return dir;
}

int run(const std::string& args) {
  std::string cmd = "cd " + scratch_dir() + " && " + KDIOPH_CLI_PATH + " " +
                    args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& name) {
  std::ifstream in(scratch_dir() + "/" + name);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spit(const std::string& name, const std::string& content) {
  std::ofstream out(scratch_dir() + "/" + name);
  out << content;
}

json load_json(const std::string& name) {
  return json::parse(slurp(name));
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("roots") == 2);            // missing required --k
  CHECK(run("roots --k 0") == 2);      // order below 2
  CHECK(run("roots --k 3 --bogus") == 2);
  CHECK(run("seq --k 2 --from 5 --to 4") == 2);
  CHECK(run("norms --k 3 --p 2") == 2);  // --p without --q
  CHECK(run("expand --k 2 --T 1 --at 12,10,14") == 2);  // x > y
  CHECK(run("expand --k 2 --T 1 --at nonsense") == 2);
  CHECK(run("search --k 2 --z-max 30 --resume missing.json") == 2);
}

TEST_CASE("help and version exit cleanly") {
  CHECK(run("--help") == 0);
  CHECK(run("--version") == 0);
  CHECK(run("seq --help") == 0);
}

TEST_CASE("seq emits plain decimal terms") {
  CHECK(run("seq --k 2 --from 1 --to 10 --out seq.txt") == 0);
  CHECK(slurp("seq.txt") == "1\n1\n2\n3\n5\n8\n13\n21\n34\n55\n");
  CHECK(run("seq --k 3 --from 20 --out seq20.txt") == 0);
  CHECK(slurp("seq20.txt") == "66012\n");
  CHECK(run("seq --k 2 --member 832040 --out member.jsonl") == 0);
  json member = load_json("member.jsonl");
  CHECK(member["index"] == 30);
  CHECK(run("seq --k 2 --member 4 --out nonmember.jsonl") == 0);
  CHECK(load_json("nonmember.jsonl")["index"].is_null());
}

TEST_CASE("verify writes records, a manifest, and passes") {
  CHECK(run("verify --k 3 --n-max 30 --out verify.jsonl "
            "--manifest verify.manifest.json") == 0);
  json manifest = load_json("verify.manifest.json");
  CHECK(manifest["subcommand"] == "verify");
  CHECK(manifest["exit_code"] == 0);
  CHECK(manifest["parameters"]["k"] == 3);
  CHECK(manifest["parameters"]["n_max"] == 30);
  REQUIRE(manifest["checks"].size() == 3);
  for (const json& c : manifest["checks"]) {
    CHECK(c["ok"] == true);
    CHECK(c["scope"] == "3");
  }
  // Every emitted record is one JSON object per line.
  std::istringstream lines(slurp("verify.jsonl"));
  std::string line;
  long records = 0;
  while (std::getline(lines, line)) {
    json rec = json::parse(line);
    CHECK(rec.contains("check"));
    ++records;
  }
  CHECK(records == 1 + 29 + 31);  // window + size bounds + residuals
}

TEST_CASE("reruns are byte-identical") {
  CHECK(run("verify --k 2 --n-max 25 --out rerun_a.jsonl "
            "--manifest ma.json") == 0);
  CHECK(run("verify --k 2 --n-max 25 --out rerun_b.jsonl "
            "--manifest mb.json") == 0);
  CHECK(slurp("rerun_a.jsonl") == slurp("rerun_b.jsonl"));

  CHECK(run("expand --k 2 --T 2 --at 10,12,14 --out exp_a.json "
            "--manifest mea.json") == 0);
  CHECK(run("expand --k 2 --T 2 --at 10,12,14 --out exp_b.json "
            "--manifest meb.json") == 0);
  CHECK(slurp("exp_a.json") == slurp("exp_b.json"));
}

TEST_CASE("search on the classical sequence finds nothing") {
  CHECK(run("search --k 2 --z-max 40 --out sols.jsonl "
            "--manifest search.manifest.json") == 0);
  CHECK(slurp("sols.jsonl").empty());
  json manifest = load_json("search.manifest.json");
  CHECK(manifest["summary"]["solutions"] == 0);
}

TEST_CASE("search checkpoints support resume") {
  CHECK(run("search --k 3 --z-max 30 --jobs 2 --checkpoint cp.json "
            "--out run1.jsonl") == 0);
  json cp = load_json("cp.json");
  CHECK(cp["k"] == 3);
  CHECK(cp["cursor"] == 30);
  // Rewind to what a mid-run checkpoint would have held: cursor 15 and
  // only the solutions found at z <= 15. Resume must match the full run.
  json kept = json::array();
  for (const json& s : cp["solutions"]) {
    if (s["z"].get<long>() <= 15) kept.push_back(s);
  }
  cp["solutions"] = std::move(kept);
  cp["cursor"] = 15;
  spit("cp_rewound.json", cp.dump());
  CHECK(run("search --k 3 --z-max 30 --resume cp_rewound.json "
            "--out run2.jsonl") == 0);
  CHECK(slurp("run1.jsonl") == slurp("run2.jsonl"));
  // A checkpoint for different parameters is refused.
  CHECK(run("search --k 4 --z-max 30 --resume cp_rewound.json "
            "--out run3.jsonl") == 2);
}

TEST_CASE("gcd-scan, norms, roots, indep, square-scan all pass") {
  CHECK(run("gcd-scan --k 2 --x-max 20 --out gcd.jsonl "
            "--manifest gcd.manifest.json") == 0);
  CHECK(run("norms --k 5 --out norms.jsonl "
            "--manifest norms.manifest.json") == 0);
  CHECK(run("norms --k 2 --p 3 --q 4 --out probe.jsonl") == 0);
  CHECK(load_json("probe.jsonl")["norm"] == "5");
  CHECK(run("roots --k 6 --out roots.jsonl "
            "--manifest roots.manifest.json") == 0);
  CHECK(run("indep --k 4 --probe-bound 2 --out indep.json "
            "--manifest indep.manifest.json") == 0);
  json indep = load_json("indep.json");
  CHECK(indep["ok"] == true);
  CHECK(indep["probe"]["ok"] == true);
  CHECK(run("square-scan --k-max 50 --out squares.jsonl "
            "--manifest squares.manifest.json") == 0);

  // Aggregate everything scanned so far into one matrix.
  CHECK(run("report gcd.manifest.json norms.manifest.json "
            "roots.manifest.json indep.manifest.json "
            "squares.manifest.json --out report.txt") == 0);
  std::string report = slurp("report.txt");
  CHECK(report.find("gcd-bound") != std::string::npos);
  CHECK(report.find("PASS") != std::string::npos);
  CHECK(report.find("FAIL") == std::string::npos);
}

TEST_CASE("report flags failures and bad inputs") {
  json failing = {
      {"subcommand", "verify"},
      {"parameters", json::object()},
      {"precision_bits", 128},
      {"started", ""},
      {"finished", ""},
      {"exit_code", 1},
      {"checks", json::array({json{{"name", "size-bounds"},
                                   {"scope", "9"},
                                   {"ok", false}}})},
      {"summary", json::object()}};
  spit("failing.manifest.json", failing.dump());
  CHECK(run("report failing.manifest.json --out failing_report.txt") == 1);
  CHECK(slurp("failing_report.txt").find("FAIL") != std::string::npos);

  spit("garbage.json", "not json at all");
  CHECK(run("report garbage.json") == 2);
  CHECK(run("report") == 2);
  CHECK(std::system(("mkdir -p " + scratch_dir() + "/empty").c_str()) == 0);
  CHECK(run("report --dir empty") == 2);
}

TEST_CASE("options can come from a config file") {
  spit("run.toml", "[verify]\nk = 4\nn-max = 12\nout = \"from_config.jsonl\"\n"
                   "manifest = \"from_config.manifest.json\"\n");
  CHECK(run("--config run.toml verify") == 0);
  json manifest = load_json("from_config.manifest.json");
  CHECK(manifest["parameters"]["k"] == 4);
  CHECK(manifest["parameters"]["n_max"] == 12);
}

TEST_CASE("expand reports terms and certified error") {
  CHECK(run("expand --k 2 --T 0 --at 10,12,14 --out t0.json") == 0);
  json t0 = load_json("t0.json");
  CHECK(t0["terms"].size() == 1);
  CHECK(t0["decay"]["ok"] == true);
  // Parity: (10, 12, 15) needs epsilon 1 and is handled automatically.
  CHECK(run("expand --k 2 --T 1 --at 10,12,15 --out todd.json") == 0);
  CHECK(load_json("todd.json")["epsilon"] == 1);
}

TEST_CASE("failed checks surface as exit code 1") {
  // n-max high enough that interval arithmetic at default precision
  // cannot decide; instead use a synthetic failure: none of the real
  // suites fail, so force one through report (covered above) and keep
  // this as a regression guard on verify's happy path.
  CHECK(run("verify --k 2 --n-max 60 --out ok.jsonl") == 0);
}
