// nlctc: command-line front end over the C API.
//
// Exit codes: 0 success, 1 verification failure or analysis error (table
// mismatch, signaling where none is allowed, paradox row, no convergence),
// 2 usage or I/O error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlctc/nlctc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct BoxDeleter {
  void operator()(nlctc_box* b) const { nlctc_box_free(b); }
};
struct CBoxDeleter {
  void operator()(nlctc_cbox* b) const { nlctc_cbox_free(b); }
};
using BoxPtr = std::unique_ptr<nlctc_box, BoxDeleter>;
using CBoxPtr = std::unique_ptr<nlctc_cbox, CBoxDeleter>;

// Carries the exit code a failed library call maps to.
struct CliError {
  int code;
  std::string message;
};

int exit_code_for(nlctc_status status) {
  switch (status) {
    case NLCTC_ERR_PARADOX:
    case NLCTC_ERR_NO_CONVERGENCE:
    case NLCTC_ERR_NOT_PARITY:
    case NLCTC_ERR_NOT_PERMUTATION:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

void check(nlctc_status status) {
  if (status != NLCTC_OK) {
    throw CliError{exit_code_for(status), std::string(nlctc_status_string(status)) + ": " + nlctc_last_error()};
  }
}

std::string take(char* s) {
  std::string out(s ? s : "");
  nlctc_string_free(s);
  return out;
}

BoxPtr open_box(const std::string& selector) {
  nlctc_box* raw = nullptr;
  check(nlctc_box_open(selector.c_str(), &raw));
  return BoxPtr(raw);
}

uint32_t parties_mask(const std::string& list) {
  uint32_t mask = 0;
  check(nlctc_parse_parties(list.c_str(), &mask));
  return mask;
}

CBoxPtr constrain(const nlctc_box* box, uint32_t mask) {
  nlctc_cbox* raw = nullptr;
  check(nlctc_apply_ctc(box, mask, &raw));
  return CBoxPtr(raw);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitUsage, "cannot open " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string unitary_text(const std::string& arg) {
  if (arg.rfind("builtin:", 0) == 0) {
    char* out = nullptr;
    check(nlctc_builtin_unitary(arg.c_str() + 8, &out));
    return take(out);
  }
  return read_file(arg);
}

int cmd_list() {
  std::cout << "boxes:";
  for (int i = 0; i < nlctc_named_box_count(); ++i) std::cout << " " << nlctc_named_box_name(i);
  std::cout << "\ntables:\n";
  for (int i = 0; i < nlctc_table_count(); ++i) {
    std::cout << "  " << nlctc_table_id(i) << "  " << nlctc_table_caption(i) << "\n";
  }
  return kExitOk;
}

int cmd_show(const std::string& box_sel, const std::string& ctc, bool json) {
  const auto box = open_box(box_sel);
  const auto mask = parties_mask(ctc);
  const auto cbox = constrain(box.get(), mask);
  char* out = nullptr;
  if (json) {
    check(nlctc_cbox_to_json(cbox.get(), box_sel.c_str(), &out));
    std::cout << take(out) << "\n";
    return kExitOk;
  }
  check(nlctc_cbox_format_table(cbox.get(), &out));
  std::cout << take(out);
  if (mask != 0) {
    char* relation = nullptr;
    int verified = 0;
    if (nlctc_box_closed_form(box.get(), mask, &relation, &verified) == NLCTC_OK) {
      std::cout << "law: " << take(relation) << (verified ? "" : "  (enumeration disagrees)") << "\n";
    }
  }
  return kExitOk;
}

int verify_tables(bool json) {
  bool all = true;
  std::string joined = "[";
  for (int i = 0; i < nlctc_table_count(); ++i) {
    char* out = nullptr;
    int matches = 0;
    check(nlctc_reproduce(nlctc_table_id(i), json ? 1 : 0, &out, &matches));
    const auto text = take(out);
    all = all && matches;
    if (json) {
      joined += (i ? "," : "") + text;
    } else {
      std::cout << "table " << nlctc_table_id(i) << ": " << (matches ? "PASS" : "FAIL") << "\n";
    }
  }
  if (json) std::cout << joined << "]\n";
  return all ? kExitOk : kExitFailure;
}

int cmd_verify(const std::string& target, const std::string& box_sel, const std::string& ctc, bool json) {
  if (target == "tables") return verify_tables(json);
  const auto box = open_box(box_sel);
  if (target == "no-signaling") {
    int ok = 0;
    char* witness = nullptr;
    check(nlctc_box_check_no_signaling(box.get(), &ok, &witness));
    const auto w = take(witness);
    if (json) {
      const nlohmann::json doc = {{"box", box_sel}, {"no_signaling", ok != 0}, {"witness", nlohmann::json::parse(w)}};
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << box_sel << ": " << (ok ? "no-signaling" : "SIGNALING, witness " + w) << "\n";
    }
    return ok ? kExitOk : kExitFailure;
  }
  if (target == "closed-form") {
    char* relation = nullptr;
    int verified = 0;
    check(nlctc_box_closed_form(box.get(), parties_mask(ctc), &relation, &verified));
    const auto r = take(relation);
    if (json) {
      std::cout << nlohmann::json{{"relation", r}, {"verified", verified != 0}}.dump() << "\n";
    } else {
      std::cout << r << (verified ? "  [verified]" : "  [MISMATCH]") << "\n";
    }
    return verified ? kExitOk : kExitFailure;
  }
  throw CliError{kExitUsage, "unknown verify target '" + target + "'"};
}

int cmd_analyze(const std::string& box_sel, const std::string& ctc, const std::string& sender,
                const std::string& coalition, bool json) {
  const auto box = open_box(box_sel);
  const auto cbox = constrain(box.get(), parties_mask(ctc));
  char* out = nullptr;
  if (sender.empty() != coalition.empty()) throw CliError{kExitUsage, "--sender and --coalition go together"};
  if (!sender.empty()) {
    const auto s = parties_mask(sender);
    if (__builtin_popcount(s) != 1) throw CliError{kExitUsage, "--sender names exactly one party"};
    check(nlctc_detect_signaling(cbox.get(), __builtin_ctz(s), parties_mask(coalition), box_sel.c_str(),
                                 json ? 1 : 0, &out));
  } else {
    check(nlctc_full_scan(cbox.get(), box_sel.c_str(), json ? 1 : 0, &out, nullptr));
  }
  std::cout << take(out) << (json ? "\n" : "");
  return kExitOk;
}

int cmd_deutsch(const std::string& unitary, const std::string& rho, double tol, long max_iter, bool crosscheck) {
  const auto u = unitary_text(unitary);
  const auto r = read_file(rho);
  char* out = nullptr;
  if (crosscheck) {
    int passed = 0;
    check(nlctc_deutsch_crosscheck(u.c_str(), r.c_str(), &out, &passed));
    std::cout << take(out) << "\n";
    return passed ? kExitOk : kExitFailure;
  }
  check(nlctc_deutsch_solve(u.c_str(), r.c_str(), tol, max_iter, &out));
  std::cout << take(out) << "\n";
  return kExitOk;
}

int cmd_reproduce(const std::string& table, bool json) {
  std::vector<std::string> ids;
  if (table == "all") {
    for (int i = 0; i < nlctc_table_count(); ++i) ids.emplace_back(nlctc_table_id(i));
  } else {
    ids.push_back(table);
  }
  bool all = true;
  if (json && ids.size() > 1) std::cout << "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    char* out = nullptr;
    int matches = 0;
    check(nlctc_reproduce(ids[i].c_str(), json ? 1 : 0, &out, &matches));
    all = all && matches;
    if (json) {
      std::cout << (i ? "," : "") << take(out);
    } else {
      std::cout << (i ? "\n" : "") << take(out);
    }
  }
  if (json) std::cout << (ids.size() > 1 ? "]\n" : "\n");
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlctc: nonlocal boxes with closed time-like curve constraints"};
  app.footer(
      "Environment: NONLOCAL_CTC_SEED is reserved for future randomized features and currently has no effect.");
  app.require_subcommand(1);

  std::string box = "pr";
  std::string ctc;
  bool json = false;

  auto* list = app.add_subcommand("list", "List named boxes and reproducible tables");

  auto* show = app.add_subcommand("show", "Print a box table, optionally under a CTC pattern");
  show->add_option("--box", box, "pr|svetlichny|mermin1|mermin2|spec:<path>");
  show->add_option("--ctc", ctc, "Comma list of CTC parties (alice,bob,charlie)");
  show->add_flag("--json", json, "Emit JSON");

  std::string target;
  auto* verify = app.add_subcommand("verify", "Run a verification: no-signaling, closed-form, tables");
  verify->add_option("target", target, "no-signaling|closed-form|tables")->required();
  verify->add_option("--box", box, "pr|svetlichny|mermin1|mermin2|spec:<path>");
  verify->add_option("--ctc", ctc, "Comma list of CTC parties (closed-form)");
  verify->add_flag("--json", json, "Emit JSON");

  std::string sender, coalition;
  auto* analyze = app.add_subcommand("analyze", "Signaling analysis under a CTC pattern");
  analyze->add_option("--box", box, "pr|svetlichny|mermin1|mermin2|spec:<path>");
  analyze->add_option("--ctc", ctc, "Comma list of CTC parties");
  analyze->add_option("--sender", sender, "Single sending party (default: scan all)");
  analyze->add_option("--coalition", coalition, "Receiving coalition");
  analyze->add_flag("--json", json, "Emit JSON");

  std::string unitary, rho;
  double tol = 1e-10;
  long max_iter = 100000;
  bool crosscheck = false;
  auto* deutsch = app.add_subcommand("deutsch", "Solve the Deutsch self-consistency condition (JSON output)");
  deutsch->add_option("--unitary", unitary, "Unitary JSON file, or builtin:swap|identity|cnot|grandfather")
      ->required();
  deutsch->add_option("--rho", rho, "CR state JSON file")->required();
  deutsch->add_option("--tol", tol, "Trace-norm residual tolerance")->check(CLI::PositiveNumber);
  deutsch->add_option("--max-iter", max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  deutsch->add_flag("--crosscheck", crosscheck, "Compare with the classical loop (permutation unitaries)");
  deutsch->add_flag("--json", json, "Accepted for symmetry; output is always JSON");

  std::string table = "all";
  bool all_tables = false;
  auto* repro = app.add_subcommand("reproduce", "Recompute the published CTC tables and compare");
  repro->add_option("--table", table, "I|II|III|IV|all");
  repro->add_flag("--all", all_tables, "Same as --table all");
  repro->add_flag("--json", json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*list) return cmd_list();
    if (*show) return cmd_show(box, ctc, json);
    if (*verify) return cmd_verify(target, box, ctc, json);
    if (*analyze) return cmd_analyze(box, ctc, sender, coalition, json);
    if (*deutsch) return cmd_deutsch(unitary, rho, tol, max_iter, crosscheck);
    if (*repro) return cmd_reproduce(all_tables ? "all" : table, json);
  } catch (const CliError& e) {
    std::cerr << "nlctc: " << e.message << "\n";
    return e.code;
  }
  return kExitUsage;
}
