#include "nlctc/boolean_form.hpp"

#include <gtest/gtest.h>

#include "nlctc/error.hpp"
#include "test_util.hpp"

using namespace nlctc;

namespace {

const BooleanForm kPr(2, {{0, 1}});
const BooleanForm kSvetlichny(3, {{0, 1}, {1, 2}, {2, 0}});
const BooleanForm kMermin2(3, {{0, 1, 2}});

std::uint8_t eval(const BooleanForm& f, std::vector<std::uint8_t> in) { return f.evaluate(std::span(in)); }

}  // namespace

TEST(boolean_form, evaluates_single_monomial) { EXPECT_EQ(eval(kPr, {1, 1}), 1); }

TEST(boolean_form, evaluates_xor_of_monomials) {
  EXPECT_EQ(eval(kSvetlichny, {1, 1, 0}), 1);
  EXPECT_EQ(eval(kSvetlichny, {1, 1, 1}), 1);
  EXPECT_EQ(eval(kSvetlichny, {0, 1, 1}), 1);
  EXPECT_EQ(eval(kSvetlichny, {1, 0, 0}), 0);
}

TEST(boolean_form, evaluates_triple_product) {
  EXPECT_EQ(eval(kMermin2, {1, 1, 1}), 1);
  EXPECT_EQ(eval(kMermin2, {1, 1, 0}), 0);
}

TEST(boolean_form, arity_mismatch_throws) {
  std::vector<std::uint8_t> in{1, 1, 1};
  try {
    (void)kPr.evaluate(std::span(in));
    FAIL() << "expected arity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArity);
  }
}

TEST(boolean_form, rejects_non_bits_and_bad_indices) {
  std::vector<std::uint8_t> in{2, 0};
  EXPECT_THROW((void)kPr.evaluate(std::span(in)), Error);
  EXPECT_THROW(BooleanForm(2, {{0, 2}}), Error);
  EXPECT_THROW(BooleanForm(0, {}), Error);
}

TEST(boolean_form, empty_monomial_set_is_zero) {
  const BooleanForm zero(2, {});
  EXPECT_TRUE(zero.is_zero());
  for (TupleIndex t = 0; t < 4; ++t) EXPECT_EQ(zero.evaluate(t), 0);
  EXPECT_EQ(zero.to_string(), "0");
}

TEST(boolean_form, repeated_monomials_cancel) {
  const BooleanForm f(2, {{0, 1}, {1, 0}, {1}});
  EXPECT_EQ(f, BooleanForm(2, {{1}}));
  EXPECT_EQ(kPr ^ kPr, BooleanForm(2, {}));
}

TEST(boolean_form, prints_with_party_letters) {
  EXPECT_EQ(kSvetlichny.to_string(), "x.y ^ x.z ^ y.z");
  EXPECT_EQ(BooleanForm(2, {{0, 1}, {}}).to_string(), "1 ^ x.y");
}

// ANF is canonical: the Moebius transform of any form's truth table gives
// the form back, for every function of up to three inputs.
TEST(boolean_form, truth_table_round_trip_is_exhaustive) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& f : fixtures::all_forms(n)) {
      std::vector<std::uint8_t> truth;
      for (TupleIndex t = 0; t < (1u << n); ++t) {
        // Oracle: evaluate monomial by monomial from the index lists.
        std::uint8_t v = 0;
        const auto bits = tuple_bits(t, n);
        for (const auto& mono : f.monomial_lists()) {
          std::uint8_t term = 1;
          for (const int i : mono) term &= bits[static_cast<std::size_t>(i)];
          v ^= term;
        }
        EXPECT_EQ(v, f.evaluate(t));
        truth.push_back(v);
      }
      EXPECT_EQ(BooleanForm::from_truth_table(n, truth), f);
    }
  }
}

TEST(boolean_form, tuple_index_is_lexicographic) {
  std::vector<std::uint8_t> t{1, 0, 1};
  EXPECT_EQ(tuple_index(std::span(t)), 5u);
  EXPECT_EQ(tuple_bits(5, 3), t);
  EXPECT_EQ(bit_of(5, 0, 3), 1);
  EXPECT_EQ(bit_of(5, 1, 3), 0);
}
