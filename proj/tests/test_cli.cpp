#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "gbw/io.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(GBW_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "gbw_cli_test";
  fs::create_directories(d);
  return d;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return gbw::parse_csv(in);
}

}  // namespace

TEST_CASE("identities exit codes") {
  CHECK(run("identities") == 0);
  CHECK(run("identities --set identities.corrupt_lambda_one=true") == 1);
  CHECK(run("identities --config /nonexistent/gbw.ini") == 2);
  CHECK(run("identities --set family.bogus=1") == 2);
  CHECK(run("nosuchcommand") == 2);
}

TEST_CASE("config file is honoured") {
  const fs::path ini = scratch() / "small.ini";
  std::ofstream(ini) << "[verify]\nn0_lo = 40001\nn0_hi = 40001\n";
  const fs::path out = scratch() / "verify.csv";
  const fs::path summary = scratch() / "verify.json";
  CHECK(run("verify --config " + ini.string() + " --out " + out.string() + " --summary " + summary.string()) <= 1);
  const auto rows = read_csv(out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "N0");
  CHECK(rows[1][0] == "40001");
  CHECK(fs::file_size(summary) > 0);
}

TEST_CASE("scaling emits every diagnostic once per k") {
  const fs::path out = scratch() / "scaling.csv";
  REQUIRE(run("scaling --set scaling.k_values=3,4 --out " + out.string()) == 0);
  const auto rows = read_csv(out);
  std::map<std::string, int> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) ++seen[rows[i][0]];
  CHECK(seen.size() > 5);
  for (const auto& [name, n] : seen) CHECK_MESSAGE(n == 2, name);
}

TEST_CASE("primes, buchstab, arcs, expsum, singular") {
  const fs::path cache = scratch() / "p.cache";
  CHECK(run("primes --set primes.hi=100000 --cache " + cache.string()) == 0);
  CHECK(fs::exists(cache));
  const fs::path b = scratch() / "b.csv";
  CHECK(run("buchstab --set buchstab.u_max=3 --set buchstab.step=0.001 --out " + b.string()) == 0);
  CHECK(read_csv(b).size() == 2002);
  const fs::path a = scratch() / "a.csv";
  CHECK(run("arcs --set family.N0=4001 --out " + a.string()) == 0);
  CHECK(read_csv(a).size() == 1001);
  const fs::path e = scratch() / "e.csv";
  CHECK(run("expsum --set family.N0=4001 --set expsum.label=S_Q_2 --out " + e.string()) == 0);
  CHECK(read_csv(e).size() == 1001);
  CHECK(run("expsum --set family.N0=4001 --set expsum.label=nope") == 2);
  CHECK(run("singular --set family.N0=200001") == 0);
}
