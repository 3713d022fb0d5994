#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zsum/zsum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitOracleMismatch = 3;

struct RangePair {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

RangePair parse_range(const std::string& text) {
  auto pos = text.find("..");
  if (pos == std::string::npos)
    throw std::invalid_argument("range must look like 2..12");
  RangePair r;
  r.lo = std::stoll(text.substr(0, pos));
  r.hi = std::stoll(text.substr(pos + 2));
  if (r.hi < r.lo) throw std::invalid_argument("range upper end below lower end");
  return r;
}

void emit_invariants(const std::vector<zsum::InvariantResult>& rows,
                     const std::string& format) {
  if (format == "csv") {
    std::cout << zsum::invariants_to_csv(rows);
  } else if (format == "table") {
    std::cout << zsum::invariants_to_table(rows);
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back(zsum::to_json(r));
    std::cout << zsum::dump_json(arr.size() == 1 ? arr.front() : arr);
  }
}

int emit_report(const zsum::VerificationReport& rep, const std::string& format,
                bool timing, bool expect_fail) {
  if (format == "csv") {
    std::cout << zsum::report_to_csv(rep);
  } else if (format == "table") {
    std::cout << zsum::report_to_table(rep, timing);
  } else {
    std::cout << zsum::dump_json(zsum::to_json(rep, timing));
  }
  if (expect_fail) return rep.failure_count > 0 ? kExitOk : kExitVerifyFailed;
  return rep.pass() ? kExitOk : kExitVerifyFailed;
}

int run_count(std::int64_t k, std::int64_t n, const std::string& seq,
              const std::string& targets_text, bool no_empty, bool check,
              const std::string& format) {
  auto S = zsum::make_semigroup(k, n);
  auto T = zsum::SemigroupSequence::parse(S, seq);
  std::set<std::int64_t> targets;
  bool default_target = targets_text.empty();
  if (default_target) {
    targets.insert(S.idempotent_index());
  } else {
    for (auto v : zsum::detail::parse_terms(targets_text)) {
      if (v < 1 || v > S.order())
        throw std::invalid_argument("target index outside the element range");
      targets.insert(v);
    }
  }
  bool include_empty = !no_empty;
  zsum::Count cnt = zsum::count_with_sum_in(S, T, targets, include_empty);
  std::optional<zsum::Count> checked;
  if (check) checked = zsum::brute_force_count(S, T, targets, include_empty);

  nlohmann::json j;
  j["k"] = k;
  j["n"] = n;
  j["sequence"] = T.str();
  j["count"] = zsum::to_decimal(cnt);
  j["include_empty"] = include_empty;
  if (default_target) {
    j["target"] = "idempotent";
    j["lower_bound"] = zsum::to_decimal(
        zsum::main_lower_bound(S, static_cast<std::int64_t>(T.size())));
  } else {
    j["target"] = targets_text;
  }
  if (checked) {
    j["check"] = zsum::to_decimal(*checked);
    j["check_match"] = *checked == cnt;
  }
  if (format == "csv") {
    std::cout << zsum::csv_row({"k", "n", "sequence", "count"});
    std::cout << zsum::csv_row({std::to_string(k), std::to_string(n), T.str(),
                                zsum::to_decimal(cnt)});
  } else if (format == "table") {
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << ": " << it.value().dump() << "\n";
  } else {
    std::cout << zsum::dump_json(j);
  }
  if (checked && *checked != cnt) {
    std::cerr << "count mismatch between state walk and subset walk\n";
    return kExitOracleMismatch;
  }
  return kExitOk;
}

int run_smooth(std::int64_t n, bool ints, const std::string& seq, bool with_signs,
               std::int64_t generator, bool max_sub, const std::string& format) {
  nlohmann::json j;
  std::optional<zsum::SmoothCertificate> cert;
  if (ints) {
    auto T = zsum::IntSequence::parse(seq);
    j["sequence"] = T.str();
    cert = zsum::is_one_smooth(T);
  } else {
    if (n < 1) throw std::invalid_argument("smooth: --n is required");
    auto T = zsum::ResidueSequence::parse(n, seq);
    j["n"] = n;
    j["sequence"] = T.str();
    if (max_sub) {
      j["max_signed_sub_length"] = zsum::max_signed_smooth_sub_length(T);
    } else if (generator > 0) {
      cert = with_signs ? zsum::is_signed_g_smooth(T, generator)
                        : zsum::is_g_smooth(T, generator);
    } else {
      cert = with_signs ? zsum::find_signed_smooth_generator(T)
                        : zsum::find_smooth_generator(T);
    }
  }
  if (!max_sub) {
    j["certified"] = cert.has_value();
    if (cert) j["certificate"] = zsum::to_json(*cert);
  }
  if (format == "table") {
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << ": " << it.value().dump() << "\n";
  } else {
    std::cout << zsum::dump_json(j);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact subsequence-sum arithmetic in finite cyclic semigroups"};
  app.require_subcommand(1);
  std::string format = "json";
  bool timing = false;

  // count
  auto* count_cmd = app.add_subcommand("count", "count subsequences by their sum");
  std::int64_t c_k = 1, c_n = 0;
  std::string c_seq, c_targets;
  bool c_no_empty = false, c_check = false;
  count_cmd->add_option("--k", c_k, "index threshold");
  count_cmd->add_option("--n", c_n, "cycle length")->required();
  count_cmd->add_option("--seq", c_seq, "comma separated element indices");
  count_cmd->add_option("--targets", c_targets,
                        "comma separated target indices (default: idempotent)");
  count_cmd->add_flag("--no-empty", c_no_empty, "exclude the empty subsequence");
  count_cmd->add_flag("--check", c_check,
                      "cross-validate against the direct subset walk");
  count_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"json", "csv", "table"}));

  // smooth
  auto* smooth_cmd = app.add_subcommand("smooth", "smoothness certification");
  std::int64_t s_n = 0, s_gen = 0;
  std::string s_seq;
  bool s_ints = false, s_signed = false, s_max_sub = false;
  smooth_cmd->add_option("--n", s_n, "modulus for residue sequences");
  smooth_cmd->add_option("--seq", s_seq, "comma separated terms");
  smooth_cmd->add_flag("--int,--ints", s_ints, "treat the sequence as plain integers");
  smooth_cmd->add_flag("--signed", s_signed, "allow a sign choice per term");
  smooth_cmd->add_option("--generator", s_gen, "check this unit only");
  smooth_cmd->add_flag("--max-sub-length", s_max_sub,
                       "report the longest signed certified subsequence");
  smooth_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"json", "csv", "table"}));

  // invariant
  auto* inv_cmd = app.add_subcommand("invariant", "extremal sequence constants");
  std::string inv_name, i_range;
  std::int64_t i_k = 1, i_n = 0;
  bool i_exhaustive = false;
  inv_cmd->add_option("name", inv_name, "one of eb, davenport, sgn, smo")
      ->required()
      ->check(CLI::IsMember({"eb", "davenport", "sgn", "smo"}));
  inv_cmd->add_option("--k", i_k, "index threshold (eb only)");
  inv_cmd->add_option("--n", i_n, "cycle length");
  inv_cmd->add_option("--n-range", i_range, "cycle lengths to cover, e.g. 2..12");
  inv_cmd->add_flag("--exhaustive", i_exhaustive,
                    "recompute by bounded search and cross-check");
  inv_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"json", "csv", "table"}));

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "exhaustive desk-scale law checks");
  std::string suite;
  std::int64_t v_k = 0, v_n = 0, v_delta = 0, v_max_len = -1, v_max_term = 0,
               v_len = 0;
  int v_jobs = 1;
  bool v_expect_fail = false;
  std::string v_sweep;
  ver_cmd
      ->add_option("suite", suite,
                   "main-bound, structure-i, structure-ii, prop-structure, "
                   "theorem-a, theorem-b, theorem-c, doubling, instant, "
                   "example-sharpness")
      ->required()
      ->check(CLI::IsMember({"main-bound", "structure-i", "structure-ii",
                             "prop-structure", "theorem-a", "theorem-b",
                             "theorem-c", "doubling", "instant",
                             "example-sharpness"}));
  ver_cmd->add_option("--k", v_k, "index threshold");
  ver_cmd->add_option("--n", v_n, "cycle length");
  ver_cmd->add_option("--delta", v_delta, "margin below the doubling threshold");
  ver_cmd->add_option("--max-len", v_max_len, "longest sequence to enumerate");
  ver_cmd->add_option("--max-term", v_max_term, "largest integer term (instant)");
  ver_cmd->add_option("--len", v_len, "instance length (example-sharpness)");
  ver_cmd->add_option("--jobs", v_jobs, "worker threads; never changes output");
  ver_cmd->add_flag("--expect-fail", v_expect_fail,
                    "succeed only if violations are found");
  ver_cmd->add_option("--delta-sweep", v_sweep,
                      "margin range lo..hi (prop-structure tally mode)");
  ver_cmd->add_flag("--timing", timing, "attach elapsed time to the report");
  ver_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"json", "csv", "table"}));

  // table
  auto* table_cmd = app.add_subcommand("table", "invariant tables over a range");
  std::string t_range, t_names = "sgn,smo";
  bool t_exhaustive = false;
  table_cmd->add_option("--n-range", t_range, "orders to cover, e.g. 2..12")
      ->required();
  table_cmd->add_option("--names", t_names,
                        "comma separated subset of sgn, smo, davenport");
  table_cmd->add_flag("--exhaustive", t_exhaustive,
                      "recompute each entry by bounded search");
  table_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"json", "csv", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (count_cmd->parsed())
      return run_count(c_k, c_n, c_seq, c_targets, c_no_empty, c_check, format);

    if (smooth_cmd->parsed())
      return run_smooth(s_n, s_ints, s_seq, s_signed, s_gen, s_max_sub, format);

    if (inv_cmd->parsed()) {
      auto mode = i_exhaustive ? zsum::InvariantMode::exhaustive
                               : zsum::InvariantMode::formula;
      std::int64_t lo = i_n, hi = i_n;
      if (!i_range.empty()) {
        auto r = parse_range(i_range);
        lo = r.lo;
        hi = r.hi;
      } else if (i_n <= 0) {
        throw std::invalid_argument("invariant: pass --n or --n-range");
      }
      std::vector<zsum::InvariantResult> rows;
      for (std::int64_t n = lo; n <= hi; ++n) {
        if (inv_name == "eb")
          rows.push_back(zsum::erdos_burgess(i_k, n, mode));
        else if (inv_name == "davenport")
          rows.push_back(zsum::davenport(n, mode));
        else if (inv_name == "sgn")
          rows.push_back(zsum::sgn_constant(n, mode));
        else
          rows.push_back(zsum::smo_constant(n, mode));
      }
      emit_invariants(rows, format);
      return kExitOk;
    }

    if (ver_cmd->parsed()) {
      auto need = [&](std::int64_t value, const char* what) {
        if (value <= 0)
          throw std::invalid_argument(std::string("verify ") + suite +
                                      ": missing or bad --" + what);
      };
      zsum::VerificationReport rep;
      if (suite == "main-bound") {
        need(v_k, "k");
        need(v_n, "n");
        need(v_max_len + 1, "max-len");
        rep = zsum::verify_main_bound(v_k, v_n, v_max_len, v_jobs);
      } else if (suite == "structure-i") {
        need(v_k, "k");
        need(v_n, "n");
        need(v_delta, "delta");
        need(v_max_len + 1, "max-len");
        rep = zsum::verify_main_structure_i(v_k, v_n, v_delta, v_max_len, v_jobs);
      } else if (suite == "structure-ii") {
        need(v_k, "k");
        need(v_n, "n");
        need(v_delta, "delta");
        need(v_max_len + 1, "max-len");
        rep = zsum::verify_main_structure_ii(v_k, v_n, v_delta, v_max_len, v_jobs,
                                             v_expect_fail);
      } else if (suite == "prop-structure") {
        need(v_k, "k");
        need(v_n, "n");
        need(v_max_len + 1, "max-len");
        if (!v_sweep.empty()) {
          auto r = parse_range(v_sweep);
          rep = zsum::verify_prop_structure_sweep(v_k, v_n, r.lo, r.hi, v_max_len,
                                                  v_jobs);
        } else {
          need(v_delta, "delta");
          rep = zsum::verify_prop_structure(v_k, v_n, v_delta, v_max_len, v_jobs);
        }
      } else if (suite == "theorem-a") {
        need(v_n, "n");
        rep = zsum::verify_theorem_a(v_n, v_jobs);
      } else if (suite == "theorem-b") {
        need(v_n, "n");
        need(v_delta, "delta");
        need(v_max_len + 1, "max-len");
        rep = zsum::verify_theorem_b(v_n, v_delta, v_max_len, v_jobs);
      } else if (suite == "theorem-c") {
        need(v_k, "k");
        need(v_n, "n");
        rep = zsum::verify_theorem_c(v_k, v_n, v_jobs);
      } else if (suite == "doubling") {
        need(v_n, "n");
        need(v_max_len + 1, "max-len");
        rep = zsum::verify_doubling(v_n, v_max_len, v_jobs);
      } else if (suite == "instant") {
        need(v_n, "n");
        need(v_max_len + 1, "max-len");
        need(v_max_term, "max-term");
        rep = zsum::verify_instant_lemma(v_n, v_max_len, v_max_term, v_jobs);
      } else {  // example-sharpness
        need(v_k, "k");
        need(v_n, "n");
        if (v_len == 0) v_len = v_n / 2 + 2;
        rep = zsum::verify_example_sharpness(v_k, v_n, v_len);
      }
      return emit_report(rep, format, timing, v_expect_fail);
    }

    if (table_cmd->parsed()) {
      auto r = parse_range(t_range);
      auto mode = t_exhaustive ? zsum::InvariantMode::exhaustive
                               : zsum::InvariantMode::formula;
      std::vector<zsum::InvariantResult> rows;
      for (const auto& name : split_names(t_names)) {
        for (std::int64_t n = r.lo; n <= r.hi; ++n) {
          if (name == "sgn")
            rows.push_back(zsum::sgn_constant(n, mode));
          else if (name == "smo")
            rows.push_back(zsum::smo_constant(n, mode));
          else if (name == "davenport")
            rows.push_back(zsum::davenport(n, mode));
          else
            throw std::invalid_argument("table: unknown invariant " + name);
        }
      }
      emit_invariants(rows, format);
      return kExitOk;
    }
  } catch (const zsum::cap_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // a closed form contradicted by search is an oracle mismatch
    std::cerr << "oracle mismatch: " << e.what() << "\n";
    return kExitOracleMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
