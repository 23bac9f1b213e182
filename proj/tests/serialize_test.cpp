#include "nlctc/serialize.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "nlctc/error.hpp"
#include "test_util.hpp"

using namespace nlctc;
using nlctc::fixtures::R;

namespace {

ErrorCode code_of(std::string_view text) {
  try {
    (void)parse_box_spec(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

std::string message_of(std::string_view text) {
  try {
    (void)parse_box_spec(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(box_spec, constraint_form) {
  EXPECT_EQ(parse_box_spec(R"({"parties":2,"constraint":[[0,1]]})"), named_box(NamedBox::kPr));
  EXPECT_EQ(parse_box_spec(R"({"parties":3,"constraint":[[0,1],[0,2]]})"), named_box(NamedBox::kMermin1));
  EXPECT_EQ(parse_box_spec(R"({"parties":3,"constraint":[]})"), parity_box(BooleanForm(3, {})));
}

TEST(box_spec, table_form_with_row_short_of_one_is_rejected) {
  // Every row complete except in=[1,1], which only reaches 3/4.
  std::string spec = R"({"parties":2,"table":[)";
  for (int in = 0; in < 4; ++in) {
    const int x = in >> 1, y = in & 1;
    spec += "{\"in\":[" + std::to_string(x) + "," + std::to_string(y) + "],\"out\":[0,0],\"p\":\"" +
            (in == 3 ? "3/4" : "1") + "\"}";
    spec += in == 3 ? "" : ",";
  }
  spec += "]}";
  EXPECT_EQ(code_of(spec), ErrorCode::kInvariant);
  EXPECT_NE(message_of(spec).find("row in=[1,1] sums to 3/4"), std::string::npos);
}

TEST(box_spec, field_diagnostics) {
  EXPECT_EQ(code_of("{not json"), ErrorCode::kParse);
  EXPECT_EQ(code_of(R"({"parties":2})"), ErrorCode::kParse);
  EXPECT_EQ(code_of(R"({"parties":2,"constraint":[[0,5]]})"), ErrorCode::kParse);
  EXPECT_NE(message_of(R"({"parties":2,"table":[{"in":[0,2],"out":[0,0],"p":"1"}]})").find("table[0].in[1]"),
            std::string::npos);
  EXPECT_NE(message_of(R"({"parties":2,"table":[{"in":[0,0],"out":[0,0],"p":"1/0"}]})").find("table[0].p"),
            std::string::npos);
  EXPECT_EQ(code_of(R"({"parties":2,"table":[{"in":[0,0],"out":[0,0],"p":"-1/2"}]})"), ErrorCode::kInvariant);
  EXPECT_EQ(code_of(R"({"parties":2,"table":[{"in":[0,0],"out":[0,0],"p":"1/2"},{"in":[0,0],"out":[0,0],"p":"1/2"}]})"),
            ErrorCode::kInvariant);
}

TEST(box_spec, load_from_file) {
  const auto path = std::filesystem::temp_directory_path() / "nlctc_box_spec_test.json";
  {
    std::ofstream out(path);
    out << R"({"parties": 3, "constraint": [[0, 1, 2]]})";
  }
  EXPECT_EQ(load_box_spec(path), named_box(NamedBox::kMermin2));
  std::filesystem::remove(path);
  try {
    (void)load_box_spec(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

// Emitted tables reload to the identical box: every parity box, plus random
// dyadic tables that are not parity boxes.
TEST(box_spec, json_round_trip) {
  for (int n = 2; n <= 3; ++n) {
    for (const auto& f : fixtures::all_forms(n)) {
      const auto box = parity_box(f);
      EXPECT_EQ(parse_box_spec(box_to_json(box).dump()), box);
    }
  }
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    const std::uint32_t size = 1u << n;
    std::vector<Rational> table(std::size_t{size} * size, R(0));
    for (std::uint32_t in = 0; in < size; ++in) {
      // Split 16 sixteenths among random outputs.
      for (int unit = 0; unit < 16; ++unit) table[in * size + rng() % size] += R(1, 16);
    }
    const NoSignalBox box(n, table);
    EXPECT_EQ(parse_box_spec(box_to_json(box).dump()), box);
  }
}

TEST(constrained_json, pr_bob_schema) {
  const auto j = constrained_box_to_json(apply_ctc(named_box(NamedBox::kPr), PartySet{kBob}), "pr");
  EXPECT_EQ(j["box"], "pr");
  EXPECT_EQ(j["ctc"], nlohmann::json::array({1}));
  ASSERT_EQ(j["rows"].size(), 4u);
  EXPECT_EQ(j["rows"][3], nlohmann::json::parse(R"({"inputs":[1,1],"outcomes":[{"out":[0,1],"p":"1/1"}],"paradox":false})"));
}

TEST(constrained_json, paradox_rows) {
  const auto j = constrained_box_to_json(apply_ctc(named_box(NamedBox::kPr), PartySet{kAlice, kBob}), "pr");
  EXPECT_EQ(j["rows"][1]["paradox"], true);
  EXPECT_TRUE(j["rows"][1]["outcomes"].empty());
}

TEST(scan_json, entries_follow_report_schema) {
  const auto cbox = apply_ctc(named_box(NamedBox::kPr), PartySet{kBob});
  const auto j = scan_to_json(full_scan(cbox), "pr", cbox.pattern());
  ASSERT_EQ(j["entries"].size(), 4u);
  const auto& e = j["entries"][2];  // sender bob, coalition {alice}, x = 0
  EXPECT_EQ(e["sender"], 1);
  EXPECT_EQ(e["coalition"], nlohmann::json::array({0}));
  EXPECT_EQ(e["setting"], nlohmann::json::array({0}));
  EXPECT_EQ(e["dependent"], true);
  EXPECT_EQ(e["rule"], nlohmann::json::parse(R"({"0":0,"1":1})"));
  EXPECT_EQ(e["success"], "1/1");
  EXPECT_EQ(e["mi_bits"], 1.0);
  EXPECT_EQ(e["impractical"], false);
  EXPECT_EQ(j["summary"]["dependent_pairs"], 1);  // only bob -> alice at x = 0
}

TEST(matrix_json, round_trip_and_layouts) {
  std::mt19937 rng(5);
  const auto u = fixtures::random_unitary(4, rng);
  EXPECT_LT((matrix_from_json(matrix_to_json(u)) - u).cwiseAbs().maxCoeff(), 1e-15);
  const auto nested = nlohmann::json::parse(R"([[[0,0],[1,0]],[[1,0],[0,0]]])");
  EXPECT_EQ(matrix_from_json(nested), deutsch::pauli_x());
  EXPECT_THROW((void)matrix_from_json(nlohmann::json::parse(R"({"entries":[[1,0],[0,0],[0,0]]})")), Error);
  EXPECT_THROW((void)matrix_from_json(nlohmann::json::parse(R"({"entries":[[1,0,3]]})")), Error);
}

TEST(matrix_json, unitary_dims) {
  auto j = matrix_to_json(deutsch::swap_gate(2).matrix());
  EXPECT_EQ(unitary_from_json(j).cr_dim(), 2);
  j = matrix_to_json(deutsch::identity_gate(2, 3).matrix());
  EXPECT_THROW((void)unitary_from_json(j), Error);
  j["cr_dim"] = 2;
  j["ctc_dim"] = 3;
  EXPECT_EQ(unitary_from_json(j).ctc_dim(), 3);
}

TEST(rational_text, parse_and_print) {
  EXPECT_EQ(parse_rational("3/12"), R(1, 4));
  EXPECT_EQ(parse_rational("1"), R(1));
  EXPECT_EQ(to_fraction_string(R(1)), "1/1");
  EXPECT_EQ(to_display_string(R(1, 2)), "1/2");
  EXPECT_THROW((void)parse_rational("1/2/3"), Error);
  EXPECT_THROW((void)parse_rational(""), Error);
  EXPECT_THROW((void)parse_rational("x"), Error);
}
