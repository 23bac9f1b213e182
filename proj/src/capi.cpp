#include "nlctc/nlctc.h"

#include <cstring>
#include <string>

#include "nlctc/box.hpp"
#include "nlctc/ctc.hpp"
#include "nlctc/deutsch.hpp"
#include "nlctc/reproduce.hpp"
#include "nlctc/serialize.hpp"
#include "nlctc/signaling.hpp"

struct nlctc_box {
  nlctc::NoSignalBox value;
};

struct nlctc_cbox {
  nlctc::ConstrainedBox value;
};

namespace {

thread_local std::string g_last_error;

nlctc_status fail(nlctc_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
nlctc_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return NLCTC_OK;
  } catch (const nlctc::Error& e) {
    return fail(static_cast<nlctc_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(NLCTC_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(NLCTC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NLCTC_ERR_INTERNAL, "unknown error");
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw nlctc::Error(nlctc::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nlohmann::json parse_text(const char* text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw nlctc::Error(nlctc::ErrorCode::kParse, e.what());
  }
}

nlctc::PartySet mask_set(uint32_t mask) { return nlctc::PartySet(mask); }

}  // namespace

extern "C" {

const char* nlctc_version(void) { return "1.0.0"; }

const char* nlctc_last_error(void) { return g_last_error.c_str(); }

const char* nlctc_status_string(nlctc_status status) {
  switch (status) {
    case NLCTC_OK: return "ok";
    case NLCTC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NLCTC_ERR_ARITY: return "arity mismatch";
    case NLCTC_ERR_PARSE: return "parse error";
    case NLCTC_ERR_INVARIANT: return "invariant violation";
    case NLCTC_ERR_NOT_PARITY: return "box is not of parity form";
    case NLCTC_ERR_PARADOX: return "paradox row";
    case NLCTC_ERR_NO_CONVERGENCE: return "no convergence";
    case NLCTC_ERR_DIMENSION: return "dimension mismatch";
    case NLCTC_ERR_NOT_DENSITY: return "not a density matrix";
    case NLCTC_ERR_NOT_UNITARY: return "not unitary";
    case NLCTC_ERR_NOT_PERMUTATION: return "not a permutation";
    case NLCTC_ERR_IO: return "I/O error";
    case NLCTC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void nlctc_string_free(char* s) { std::free(s); }

nlctc_status nlctc_parse_parties(const char* list, uint32_t* mask) {
  return guarded([&] {
    require(list && mask, "null argument");
    *mask = nlctc::parse_party_list(list).mask();
  });
}

int nlctc_named_box_count(void) { return 4; }

const char* nlctc_named_box_name(int index) {
  static const char* kNames[] = {"pr", "svetlichny", "mermin1", "mermin2"};
  return index >= 0 && index < 4 ? kNames[index] : nullptr;
}

nlctc_status nlctc_box_named(const char* name, nlctc_box** out) {
  return guarded([&] {
    require(name && out, "null argument");
    const auto which = nlctc::parse_box_name(name);
    if (!which) throw nlctc::Error(nlctc::ErrorCode::kInvalidArgument, std::string("unknown box '") + name + "'");
    *out = new nlctc_box{nlctc::named_box(*which)};
  });
}

nlctc_status nlctc_box_open(const char* selector, nlctc_box** out) {
  if (selector && std::strncmp(selector, "spec:", 5) == 0) return nlctc_box_load(selector + 5, out);
  return nlctc_box_named(selector, out);
}

nlctc_status nlctc_box_parity(int parties, const uint32_t* monomials, size_t count, nlctc_box** out) {
  return guarded([&] {
    require(out && (monomials || count == 0), "null argument");
    std::vector<uint32_t> masks(monomials, monomials + count);
    *out = new nlctc_box{nlctc::parity_box(nlctc::BooleanForm::from_masks(parties, std::move(masks)))};
  });
}

nlctc_status nlctc_box_from_json(const char* text, nlctc_box** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new nlctc_box{nlctc::parse_box_spec(text)};
  });
}

nlctc_status nlctc_box_load(const char* path, nlctc_box** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new nlctc_box{nlctc::load_box_spec(path)};
  });
}

void nlctc_box_free(nlctc_box* box) { delete box; }

int nlctc_box_parties(const nlctc_box* box) { return box ? box->value.parties() : 0; }

nlctc_status nlctc_box_probability(const nlctc_box* box, const uint8_t* inputs, const uint8_t* outputs,
                                   int64_t* num, int64_t* den) {
  return guarded([&] {
    require(box && inputs && outputs && num && den, "null argument");
    const auto n = static_cast<std::size_t>(box->value.parties());
    const auto p = box->value.probability(std::span(inputs, n), std::span(outputs, n));
    *num = p.numerator();
    *den = p.denominator();
  });
}

nlctc_status nlctc_box_to_json(const nlctc_box* box, char** out) {
  return guarded([&] {
    require(box && out, "null argument");
    *out = dup_string(nlctc::box_to_json(box->value).dump());
  });
}

nlctc_status nlctc_box_check_no_signaling(const nlctc_box* box, int* no_signaling, char** witness_json) {
  return guarded([&] {
    require(box && no_signaling, "null argument");
    const auto verdict = nlctc::check_no_signaling(box->value);
    *no_signaling = verdict.no_signaling ? 1 : 0;
    if (!witness_json) return;
    nlohmann::json w = nullptr;
    if (verdict.witness) {
      const int n = box->value.parties();
      const auto& wit = *verdict.witness;
      auto strings = [](const std::vector<nlctc::Rational>& v) {
        std::vector<std::string> s;
        for (const auto& r : v) s.push_back(nlctc::to_fraction_string(r));
        return s;
      };
      w = {{"coalition", wit.coalition.members()},
           {"first_inputs", nlctc::tuple_bits(wit.first_inputs, n)},
           {"second_inputs", nlctc::tuple_bits(wit.second_inputs, n)},
           {"first_marginal", strings(wit.first_marginal)},
           {"second_marginal", strings(wit.second_marginal)}};
    }
    *witness_json = dup_string(w.dump());
  });
}

nlctc_status nlctc_box_chsh(const nlctc_box* box, int64_t* num, int64_t* den) {
  return guarded([&] {
    require(box && num && den, "null argument");
    const auto v = nlctc::chsh_value(box->value);
    *num = v.numerator();
    *den = v.denominator();
  });
}

nlctc_status nlctc_box_closed_form(const nlctc_box* box, uint32_t ctc_mask, char** relation, int* verified) {
  return guarded([&] {
    require(box && relation, "null argument");
    const auto form = nlctc::closed_form_check(box->value, mask_set(ctc_mask));
    if (verified) *verified = form.verified ? 1 : 0;
    *relation = dup_string(form.to_string());
  });
}

nlctc_status nlctc_apply_ctc(const nlctc_box* box, uint32_t ctc_mask, nlctc_cbox** out) {
  return guarded([&] {
    require(box && out, "null argument");
    *out = new nlctc_cbox{nlctc::apply_ctc(box->value, mask_set(ctc_mask))};
  });
}

void nlctc_cbox_free(nlctc_cbox* cbox) { delete cbox; }

int nlctc_cbox_has_paradox(const nlctc_cbox* cbox) { return cbox && cbox->value.has_paradox() ? 1 : 0; }

nlctc_status nlctc_cbox_format_table(const nlctc_cbox* cbox, char** out) {
  return guarded([&] {
    require(cbox && out, "null argument");
    *out = dup_string(nlctc::format_table(cbox->value));
  });
}

nlctc_status nlctc_cbox_to_json(const nlctc_cbox* cbox, const char* name, char** out) {
  return guarded([&] {
    require(cbox && out, "null argument");
    *out = dup_string(nlctc::constrained_box_to_json(cbox->value, name ? name : "").dump());
  });
}

nlctc_status nlctc_detect_signaling(const nlctc_cbox* cbox, int sender, uint32_t coalition_mask,
                                    const char* name, int as_json, char** out) {
  return guarded([&] {
    require(cbox && out, "null argument");
    const auto& box = cbox->value;
    const auto report = nlctc::detect_signaling(box, {sender, mask_set(coalition_mask)});
    if (!as_json) {
      *out = dup_string(nlctc::format_report(report, box.parties()));
      return;
    }
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries) entries.push_back(nlctc::entry_to_json(report, e));
    const nlohmann::json doc = {{"box", name ? name : ""},
                                {"ctc", box.pattern().members()},
                                {"entries", std::move(entries)},
                                {"summary",
                                 {{"dependent_pairs", report.dependent_settings()},
                                  {"total_pairs", report.total_settings()},
                                  {"recovered_cases", report.recovered_cases()},
                                  {"total_cases", report.total_cases()}}}};
    *out = dup_string(doc.dump(2));
  });
}

nlctc_status nlctc_full_scan(const nlctc_cbox* cbox, const char* name, int as_json, char** out,
                             int* dependent_pairs) {
  return guarded([&] {
    require(cbox && out, "null argument");
    const auto& box = cbox->value;
    const auto scan = nlctc::full_scan(box);
    if (dependent_pairs) *dependent_pairs = scan.dependent_pairs;
    *out = dup_string(as_json ? nlctc::scan_to_json(scan, name ? name : "", box.pattern()).dump(2)
                              : nlctc::format_scan(scan, box.parties()));
  });
}

nlctc_status nlctc_deutsch_solve(const char* unitary_json, const char* rho_json, double tol, long max_iter,
                                 char** result_json) {
  return guarded([&] {
    require(unitary_json && rho_json && result_json, "null argument");
    const auto u = nlctc::unitary_from_json(parse_text(unitary_json));
    const auto rho = nlctc::density_from_json(parse_text(rho_json));
    const auto result = nlctc::deutsch::find_fixed_point(u, rho, tol, max_iter);
    *result_json = dup_string(nlctc::fixed_point_to_json(result).dump(2));
  });
}

nlctc_status nlctc_deutsch_crosscheck(const char* unitary_json, const char* rho_json, char** result_json,
                                      int* passed) {
  return guarded([&] {
    require(unitary_json && rho_json && result_json, "null argument");
    const auto u = nlctc::unitary_from_json(parse_text(unitary_json));
    const auto rho = nlctc::density_from_json(parse_text(rho_json));
    const auto check = nlctc::deutsch::classical_consistency_crosscheck(u, rho);
    if (passed) *passed = check.passed ? 1 : 0;
    nlohmann::json j = {{"classical_paradox", check.classical_paradox},
                        {"classical_distribution", check.classical_distribution},
                        {"deutsch_diagonal", check.deutsch_diagonal},
                        {"classical_residual", check.classical_residual},
                        {"passed", check.passed}};
    *result_json = dup_string(j.dump(2));
  });
}

nlctc_status nlctc_builtin_unitary(const char* name, char** unitary_json) {
  return guarded([&] {
    require(name && unitary_json, "null argument");
    namespace d = nlctc::deutsch;
    const std::string which(name);
    const auto u = which == "swap"        ? d::swap_gate(2)
                   : which == "identity"  ? d::identity_gate(2, 2)
                   : which == "cnot"      ? d::cnot_gate()
                   : which == "grandfather"
                       ? d::product_gate(d::ComplexMatrix::Identity(2, 2), d::pauli_x())
                       : throw nlctc::Error(nlctc::ErrorCode::kInvalidArgument, "unknown unitary '" + which + "'");
    auto j = nlctc::matrix_to_json(u.matrix());
    j["cr_dim"] = u.cr_dim();
    j["ctc_dim"] = u.ctc_dim();
    *unitary_json = dup_string(j.dump());
  });
}

int nlctc_table_count(void) { return static_cast<int>(nlctc::reproduction_manifest().size()); }

const char* nlctc_table_id(int index) {
  const auto& m = nlctc::reproduction_manifest();
  return index >= 0 && index < static_cast<int>(m.size()) ? m[static_cast<std::size_t>(index)].id.c_str() : nullptr;
}

const char* nlctc_table_caption(int index) {
  const auto& m = nlctc::reproduction_manifest();
  return index >= 0 && index < static_cast<int>(m.size()) ? m[static_cast<std::size_t>(index)].caption.c_str()
                                                           : nullptr;
}

nlctc_status nlctc_reproduce(const char* table_id, int as_json, char** out, int* matches) {
  return guarded([&] {
    require(table_id && out, "null argument");
    const auto* target = nlctc::find_target(table_id);
    if (!target) throw nlctc::Error(nlctc::ErrorCode::kInvalidArgument, std::string("unknown table '") + table_id + "'");
    const auto r = nlctc::reproduce(*target);
    if (matches) *matches = r.matches ? 1 : 0;
    *out = dup_string(as_json ? nlctc::reproduction_to_json(r).dump() : nlctc::format_reproduction(r));
  });
}

}  // extern "C"
