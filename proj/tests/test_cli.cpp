#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI through the shell, capturing stdout; stderr is dropped.
RunResult run(const std::string& args) {
  std::string cmd = std::string("\"") + ZSUM_CLI_PATH + "\" " + args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
    res.out.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

nlohmann::json as_json(const RunResult& res) {
  return nlohmann::json::parse(res.out);
}

}  // namespace

TEST_CASE("count subcommand") {
  auto res = run("count --k 2 --n 2 --seq 1,1,3");
  CHECK(res.exit_code == 0);
  auto j = as_json(res);
  CHECK(j["count"] == "3");
  CHECK(j["target"] == "idempotent");
  CHECK(j["lower_bound"] == "3");

  auto grp = run("count --k 1 --n 4 --seq 2,2,4");
  CHECK(as_json(grp)["count"] == "4");
  auto noe = run("count --k 1 --n 4 --seq 2,2,4 --no-empty");
  CHECK(as_json(noe)["count"] == "3");

  auto tgt = run("count --k 2 --n 2 --seq 1,1,3 --targets 1,2");
  CHECK(tgt.exit_code == 0);
  CHECK(as_json(tgt)["target"] == "1,2");

  auto chk = run("count --k 3 --n 4 --seq 1,2,3,6 --check");
  CHECK(chk.exit_code == 0);
  CHECK(as_json(chk)["check_match"] == true);
}

TEST_CASE("count usage errors") {
  CHECK(run("count --k 2 --seq 1").exit_code == 1);       // missing --n
  CHECK(run("count --k 0 --n 2").exit_code == 1);         // bad parameters
  CHECK(run("count --k 2 --n 2 --seq 9").exit_code == 1); // index out of range
  CHECK(run("count --k 2 --n 2 --seq 1,,2").exit_code == 1);
  CHECK(run("nonsense").exit_code == 1);
}

TEST_CASE("smooth subcommand") {
  auto res = run("smooth --n 8 --seq 2,2,2,3 --signed");
  CHECK(res.exit_code == 0);
  auto j = as_json(res);
  CHECK(j["certified"] == true);
  CHECK(j["certificate"]["generator"] == 3);

  auto plain = run("smooth --n 8 --seq 2,2,2,3");
  CHECK(as_json(plain)["certified"] == false);

  auto ints = run("smooth --int --seq 1,1,2,3");
  CHECK(as_json(ints)["certified"] == true);
  auto ints_alias = run("smooth --ints --seq 1,1,2,5");
  CHECK(as_json(ints_alias)["certified"] == true);

  auto one_gen = run("smooth --n 7 --seq 2,4 --generator 2");
  CHECK(as_json(one_gen)["certified"] == true);

  auto sub = run("smooth --n 8 --seq 1,1,4,5 --max-sub-length");
  CHECK(as_json(sub)["max_signed_sub_length"] == 3);
}

TEST_CASE("invariant subcommand") {
  auto res = run("invariant sgn --n 8 --exhaustive");
  CHECK(res.exit_code == 0);
  auto j = as_json(res);
  CHECK(j["closed_form"] == "5");
  CHECK(j["exhaustive"] == "5");
  CHECK(j["witness"] == "1,1,4,5");

  auto eb = run("invariant eb --k 5 --n 3 --exhaustive");
  CHECK(as_json(eb)["closed_form"] == "6");

  auto dav = run("invariant davenport --n 6");
  CHECK(as_json(dav)["closed_form"] == "6");
  CHECK_FALSE(as_json(dav).contains("exhaustive"));

  CHECK(run("invariant bogus --n 3").exit_code == 1);
}

TEST_CASE("verify subcommand exit codes") {
  auto ok = run("verify main-bound --k 2 --n 2 --max-len 5");
  CHECK(ok.exit_code == 0);
  CHECK(as_json(ok)["pass"] == true);

  // sharp margin needs the opt-in flag; with it, violations are expected
  CHECK(run("verify structure-ii --k 1 --n 6 --max-len 5 --delta 3").exit_code == 1);
  auto sharp = run("verify structure-ii --k 1 --n 6 --max-len 5 --delta 3 --expect-fail");
  CHECK(sharp.exit_code == 0);
  CHECK(as_json(sharp)["pass"] == false);

  // expecting failures from a law that holds is itself a failure
  CHECK(run("verify structure-ii --k 1 --n 5 --max-len 5 --delta 1 --expect-fail")
            .exit_code == 2);

  CHECK(run("verify theorem-a --n 4").exit_code == 0);
  CHECK(run("verify theorem-a").exit_code == 1);  // missing --n
  CHECK(run("verify example-sharpness --k 1 --n 6").exit_code == 0);
  CHECK(run("verify prop-structure --k 5 --n 3 --max-len 5 --delta 1").exit_code == 0);
  CHECK(run("verify prop-structure --k 9 --n 2 --max-len 5 --delta-sweep 1..2")
            .exit_code == 0);
}

TEST_CASE("verify output is byte-identical across job counts") {
  auto one = run("verify theorem-b --n 5 --delta 1 --max-len 5 --jobs 1");
  auto four = run("verify theorem-b --n 5 --delta 1 --max-len 5 --jobs 4");
  CHECK(one.exit_code == 0);
  CHECK(one.out == four.out);
  CHECK_FALSE(as_json(one).contains("elapsed_ms"));

  auto timed = run("verify theorem-a --n 4 --timing");
  CHECK(as_json(timed).contains("elapsed_ms"));
}

TEST_CASE("table subcommand") {
  auto res = run("table --n-range 2..4 --names sgn,smo --format csv");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("name,k,n,closed_form,exhaustive,witness") == 0);
  CHECK(res.out.find("sgn,1,4,2") != std::string::npos);
  CHECK(res.out.find("smo,1,3,1") != std::string::npos);

  auto tab = run("table --n-range 2..3 --format table");
  CHECK(tab.out.find("closed_form") != std::string::npos);

  CHECK(run("table --n-range 4..2").exit_code == 1);
  CHECK(run("table --n-range 2..3 --names bogus").exit_code == 1);
}

TEST_CASE("environment caps propagate to subprocesses") {
  RunResult res;
  {
    std::string cmd = std::string("ZSUM_MAX_ORDER=10 \"") + ZSUM_CLI_PATH +
                      "\" count --k 20 --n 20 --seq 1 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 256> buf;
    while (fread(buf.data(), 1, buf.size(), pipe) > 0) {
    }
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  CHECK(res.exit_code == 1);
}

TEST_CASE("help exits cleanly") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("count --help").exit_code == 0);
}
