#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ndcode/channel.hpp"
#include "ndcode/nd_code.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  namespace fs = std::filesystem;
  fs::path out_path = fs::temp_directory_path() / "ndcode_cli_out.txt";
  std::string cmd = std::string(NDCODE_CLI_PATH) + " " + args + " > " +
                    out_path.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string temp_file(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("cli transform") {
  RunResult phi = run_cli("transform --q 3 --k 3 --op phi 1201210");
  CHECK(phi.exit_code == 0);
  CHECK(phi.out == "120|0012\n");

  RunResult root = run_cli("transform --q 3 --k 3 --op root 1201201210");
  CHECK(root.exit_code == 0);
  CHECK(root.out == "1201210\n");

  RunResult fixed = run_cli("transform --q 3 --k 3 --op mu 120102002120");
  CHECK(fixed.out == "120102002120\n");

  CHECK(run_cli("transform --q 3 --op phi 1201210").exit_code == 2);  // missing --k
  CHECK(run_cli("transform --q 3 --k 3 --op phi 129").exit_code == 2);  // bad symbol
  CHECK(run_cli("transform --q 3 --k 3 --op nope 120").exit_code == 2);
}

TEST_CASE("cli corrupt is seed-deterministic") {
  std::string log1 = temp_file("ndcode_ev1.log");
  std::string log2 = temp_file("ndcode_ev2.log");
  RunResult a = run_cli("corrupt --q 3 --k 2 --t 3 --noisy --seed 11 --out " + log1 + " 120121");
  RunResult b = run_cli("corrupt --q 3 --k 2 --t 3 --noisy --seed 11 --out " + log2 + " 120121");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  std::ifstream f1(log1), f2(log2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK_FALSE(s1.str().empty());

  RunResult ident = run_cli("corrupt --q 3 --k 2 --t 0 120121");
  CHECK(ident.out == "120121\n");

  // replaying the produced event log reproduces the sampled output
  RunResult replayed = run_cli("corrupt --q 3 --k 2 --replay " + log1 + " 120121");
  CHECK(replayed.exit_code == 0);
  CHECK(replayed.out == a.out);

  // the corrupted word lies in the bounded cone
  RunResult c = run_cli("corrupt --q 3 --k 2 --t 2 --seed 3 120121");
  auto cone = ndcode::descendants(ndcode::parse_word("120121", 3), 2, 2, 0);
  ndcode::Word got = ndcode::parse_word(c.out.substr(0, c.out.size() - 1), 3);
  CHECK(std::binary_search(cone.begin(), cone.end(), got));

  CHECK(run_cli("corrupt --q 3 --k 2 --t 0 --noisy 120121").exit_code == 2);
}

TEST_CASE("cli codebook, decode and verify work together") {
  std::string book_path = temp_file("ndcode_book.txt");
  RunResult built = run_cli("codebook --q 2 --k 3 --n 10 --out " + book_path);
  REQUIRE(built.exit_code == 0);
  long size = std::stol(built.out);
  CHECK(size >= 1);

  ndcode::Codebook book;
  {
    std::ifstream in(book_path);
    book = ndcode::read_codebook(in);
  }
  REQUIRE(static_cast<long>(book.words.size()) == size);
  std::string c = ndcode::to_string(book.words.front());

  std::string ev = temp_file("ndcode_ev3.log");
  RunResult corrupted =
      run_cli("corrupt --q 2 --k 3 --t 2 --noisy --seed 9 --out " + ev + " " + c);
  REQUIRE(corrupted.exit_code == 0);
  std::string received = corrupted.out.substr(0, corrupted.out.size() - 1);

  RunResult decoded = run_cli("decode --book " + book_path + " " + received);
  CHECK(decoded.exit_code == 0);
  CHECK(decoded.out == c + "\n");

  // a word that cannot be a descendant: exit 1
  RunResult bad = run_cli("decode --book " + book_path + " 1111111111");
  CHECK(bad.exit_code == 1);

  RunResult verify = run_cli("verify --scenario decode-exhaustive --book " + book_path + " --t 1");
  CHECK(verify.exit_code == 0);
  CHECK(verify.out.find("status: PASS") != std::string::npos);

  RunResult guard = run_cli("verify --scenario guard-exhaustive --n 6");
  CHECK(guard.exit_code == 0);
}

TEST_CASE("shipped data files match fresh generation") {
  namespace fs = std::filesystem;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  fs::path src(NDCODE_SOURCE_DIR);

  std::string book = temp_file("ndcode_regen_book.txt");
  REQUIRE(run_cli("codebook --q 3 --k 2 --n 8 --out " + book).exit_code == 0);
  CHECK(slurp(book) == slurp(src / "data" / "codebook_q3k2n8.txt"));

  std::string csv = temp_file("ndcode_regen_rates.csv");
  REQUIRE(run_cli("rates --k 3 --q 3,4,5 --n 100:400:20 --out " + csv).exit_code == 0);
  CHECK(slurp(csv) == slurp(src / "data" / "rates_k3_q345.csv"));
}

TEST_CASE("cli verify passes on the shipped sample codebook") {
  std::filesystem::path shipped =
      std::filesystem::path(NDCODE_SOURCE_DIR) / "data" / "codebook_q3k2n8.txt";
  REQUIRE(std::filesystem::exists(shipped));
  for (const char* scenario : {"cone-disjoint", "decode-exhaustive"}) {
    RunResult r = run_cli("verify --scenario " + std::string(scenario) + " --book " +
                          shipped.string() + " --t 2 --threads 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("status: PASS") != std::string::npos);
  }
}

TEST_CASE("cli rates") {
  RunResult r = run_cli("rates --k 3 --q 3,4 --n 100:140:20");
  REQUIRE(r.exit_code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "q,k,n,upper_rate,lower_rate");
  int rows = 0;
  while (std::getline(ss, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 6);  // |q_list| * |n_range|

  std::string csv = temp_file("ndcode_rates.csv");
  RunResult f = run_cli("rates --k 3 --q 3 --n 100:100:20 --out " + csv);
  CHECK(f.exit_code == 0);
  std::ifstream in(csv);
  std::stringstream fss;
  fss << in.rdbuf();
  CHECK(fss.str().starts_with("q,k,n,upper_rate,lower_rate\n"));

  CHECK(run_cli("rates --k 3 --q 3 --n 4:10:2").exit_code == 2);  // n <= 2k
}

TEST_CASE("cli usage errors exit 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("verify --scenario unknown").exit_code == 2);
  CHECK(run_cli("verify --scenario cone-disjoint").exit_code == 2);  // missing --book
}
