// Exercises the exported C surface exactly as a foreign caller would.
#include "nlctc/nlctc.h"

#include <gtest/gtest.h>

#include <json.hpp>
#include <string>

namespace {

std::string take(char* s) {
  std::string out(s ? s : "");
  nlctc_string_free(s);
  return out;
}

}  // namespace

TEST(capi, named_box_probability_and_chsh) {
  nlctc_box* box = nullptr;
  ASSERT_EQ(nlctc_box_named("pr", &box), NLCTC_OK);
  EXPECT_EQ(nlctc_box_parties(box), 2);
  const uint8_t in[] = {1, 1}, out[] = {0, 1};
  int64_t num = 0, den = 0;
  ASSERT_EQ(nlctc_box_probability(box, in, out, &num, &den), NLCTC_OK);
  EXPECT_EQ(num, 1);
  EXPECT_EQ(den, 2);
  ASSERT_EQ(nlctc_box_chsh(box, &num, &den), NLCTC_OK);
  EXPECT_EQ(num, 4);
  EXPECT_EQ(den, 1);
  nlctc_box_free(box);
}

TEST(capi, errors_carry_status_and_message) {
  nlctc_box* box = nullptr;
  EXPECT_EQ(nlctc_box_named("nope", &box), NLCTC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(box, nullptr);
  EXPECT_NE(std::string(nlctc_last_error()).find("nope"), std::string::npos);
  EXPECT_EQ(nlctc_box_from_json("{", &box), NLCTC_ERR_PARSE);
  EXPECT_EQ(nlctc_box_from_json(R"({"parties":2,"table":[]})", &box), NLCTC_ERR_INVARIANT);
  EXPECT_EQ(nlctc_box_load("/nonexistent/box.json", &box), NLCTC_ERR_IO);
  EXPECT_EQ(nlctc_box_named(nullptr, &box), NLCTC_ERR_INVALID_ARGUMENT);
  EXPECT_STREQ(nlctc_status_string(NLCTC_ERR_PARADOX), "paradox row");

  ASSERT_EQ(nlctc_box_named("svetlichny", &box), NLCTC_OK);
  int64_t num = 0, den = 0;
  EXPECT_EQ(nlctc_box_chsh(box, &num, &den), NLCTC_ERR_ARITY);
  nlctc_box_free(box);
}

TEST(capi, parity_constructor_matches_named) {
  const uint32_t monomials[] = {0b011, 0b101};  // x.y ^ x.z
  nlctc_box* built = nullptr;
  nlctc_box* named = nullptr;
  ASSERT_EQ(nlctc_box_parity(3, monomials, 2, &built), NLCTC_OK);
  ASSERT_EQ(nlctc_box_named("mermin1", &named), NLCTC_OK);
  char* a = nullptr;
  char* b = nullptr;
  ASSERT_EQ(nlctc_box_to_json(built, &a), NLCTC_OK);
  ASSERT_EQ(nlctc_box_to_json(named, &b), NLCTC_OK);
  EXPECT_EQ(take(a), take(b));
  nlctc_box_free(built);
  nlctc_box_free(named);
}

TEST(capi, no_signaling_witness) {
  // b copies Alice's input.
  const char* spec = R"({"parties":2,"table":[
    {"in":[0,0],"out":[0,0],"p":"1"},{"in":[0,1],"out":[0,0],"p":"1"},
    {"in":[1,0],"out":[0,1],"p":"1"},{"in":[1,1],"out":[0,1],"p":"1"}]})";
  nlctc_box* box = nullptr;
  ASSERT_EQ(nlctc_box_from_json(spec, &box), NLCTC_OK);
  int ok = 1;
  char* witness = nullptr;
  ASSERT_EQ(nlctc_box_check_no_signaling(box, &ok, &witness), NLCTC_OK);
  EXPECT_EQ(ok, 0);
  const auto w = nlohmann::json::parse(take(witness));
  EXPECT_EQ(w["coalition"], nlohmann::json::array({1}));
  nlctc_box_free(box);
}

TEST(capi, ctc_table_closed_form_and_scan) {
  nlctc_box* box = nullptr;
  ASSERT_EQ(nlctc_box_open("pr", &box), NLCTC_OK);
  uint32_t mask = 0;
  ASSERT_EQ(nlctc_parse_parties("bob", &mask), NLCTC_OK);
  EXPECT_EQ(mask, 2u);

  nlctc_cbox* cbox = nullptr;
  ASSERT_EQ(nlctc_apply_ctc(box, mask, &cbox), NLCTC_OK);
  EXPECT_EQ(nlctc_cbox_has_paradox(cbox), 0);
  char* text = nullptr;
  ASSERT_EQ(nlctc_cbox_format_table(cbox, &text), NLCTC_OK);
  EXPECT_NE(take(text).find("1 1 | 0 1 | 1"), std::string::npos);

  char* json = nullptr;
  ASSERT_EQ(nlctc_cbox_to_json(cbox, "pr", &json), NLCTC_OK);
  EXPECT_EQ(nlohmann::json::parse(take(json))["rows"].size(), 4u);

  char* relation = nullptr;
  int verified = 0;
  ASSERT_EQ(nlctc_box_closed_form(box, mask, &relation, &verified), NLCTC_OK);
  EXPECT_EQ(take(relation), "a = y ^ x.y");
  EXPECT_EQ(verified, 1);

  char* report = nullptr;
  ASSERT_EQ(nlctc_detect_signaling(cbox, 1, 1u, "pr", 1, &report), NLCTC_OK);
  const auto r = nlohmann::json::parse(take(report));
  EXPECT_EQ(r["entries"][0]["success"], "1/1");
  EXPECT_EQ(r["entries"][1]["success"], "1/2");

  int pairs = -1;
  ASSERT_EQ(nlctc_full_scan(cbox, "pr", 0, &report, &pairs), NLCTC_OK);
  nlctc_string_free(report);
  EXPECT_EQ(pairs, 1);

  EXPECT_EQ(nlctc_detect_signaling(cbox, 1, 2u, "pr", 1, &report), NLCTC_ERR_INVALID_ARGUMENT);
  nlctc_cbox_free(cbox);

  ASSERT_EQ(nlctc_apply_ctc(box, 3u, &cbox), NLCTC_OK);
  EXPECT_EQ(nlctc_cbox_has_paradox(cbox), 1);
  EXPECT_EQ(nlctc_detect_signaling(cbox, 1, 1u, "pr", 1, &report), NLCTC_ERR_PARADOX);
  nlctc_cbox_free(cbox);
  nlctc_box_free(box);
}

TEST(capi, deutsch_solve_and_crosscheck) {
  char* swap = nullptr;
  ASSERT_EQ(nlctc_builtin_unitary("swap", &swap), NLCTC_OK);
  const auto u = take(swap);
  const char* rho = R"({"dim":2,"entries":[[0.25,0],[0,0.25],[0,-0.25],[0.75,0]]})";
  char* out = nullptr;
  ASSERT_EQ(nlctc_deutsch_solve(u.c_str(), rho, 1e-10, 1000, &out), NLCTC_OK);
  const auto result = nlohmann::json::parse(take(out));
  EXPECT_LT(result["residual"].get<double>(), 1e-10);
  EXPECT_NEAR(result["sigma"]["entries"][3][0].get<double>(), 0.75, 1e-12);
  EXPECT_NEAR(result["sigma"]["entries"][1][1].get<double>(), 0.25, 1e-12);

  EXPECT_EQ(nlctc_deutsch_solve(u.c_str(), R"({"entries":[[1,0],[0,0],[0,0],[1,0]]})", 1e-10, 10, &out),
            NLCTC_ERR_NOT_DENSITY);
  EXPECT_EQ(nlctc_deutsch_solve("[1", rho, 1e-10, 10, &out), NLCTC_ERR_PARSE);

  char* gf = nullptr;
  ASSERT_EQ(nlctc_builtin_unitary("grandfather", &gf), NLCTC_OK);
  const auto g = take(gf);
  int passed = 0;
  ASSERT_EQ(nlctc_deutsch_crosscheck(g.c_str(), R"({"entries":[[1,0],[0,0],[0,0],[0,0]]})", &out, &passed),
            NLCTC_OK);
  EXPECT_EQ(passed, 1);
  EXPECT_EQ(nlohmann::json::parse(take(out))["classical_paradox"], true);
  EXPECT_EQ(nlctc_builtin_unitary("toffoli", &out), NLCTC_ERR_INVALID_ARGUMENT);
}

TEST(capi, reproduction_catalog) {
  ASSERT_EQ(nlctc_table_count(), 4);
  EXPECT_STREQ(nlctc_table_id(0), "I");
  EXPECT_STREQ(nlctc_table_caption(0), "CTC-assisted PR-box");
  EXPECT_EQ(nlctc_table_id(4), nullptr);
  for (int i = 0; i < nlctc_table_count(); ++i) {
    char* out = nullptr;
    int matches = 0;
    ASSERT_EQ(nlctc_reproduce(nlctc_table_id(i), 1, &out, &matches), NLCTC_OK);
    EXPECT_EQ(matches, 1) << nlctc_table_id(i);
    EXPECT_EQ(nlohmann::json::parse(take(out))["matches"], true);
  }
  char* out = nullptr;
  EXPECT_EQ(nlctc_reproduce("V", 0, &out, nullptr), NLCTC_ERR_INVALID_ARGUMENT);
}
