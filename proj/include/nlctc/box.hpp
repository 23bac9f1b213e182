#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlctc/boolean_form.hpp"
#include "nlctc/rational.hpp"

namespace nlctc {

inline constexpr int kAlice = 0;
inline constexpr int kBob = 1;
inline constexpr int kCharlie = 2;

/// A subset of party indices. Members are always iterated in ascending order,
/// which is also the order of the coalition's sub-tuples.
class PartySet {
 public:
  constexpr PartySet() = default;
  constexpr explicit PartySet(std::uint32_t mask) : mask_(mask) {}
  PartySet(std::initializer_list<int> parties);
  static PartySet from_members(std::span<const int> parties);
  static constexpr PartySet single(int party) { return PartySet(1u << party); }
  static constexpr PartySet all(int parties) { return PartySet((1u << parties) - 1u); }

  constexpr std::uint32_t mask() const noexcept { return mask_; }
  constexpr bool contains(int party) const noexcept { return (mask_ >> party & 1u) != 0; }
  int size() const noexcept { return __builtin_popcount(mask_); }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  std::vector<int> members() const;
  /// True when every member is below `parties`.
  constexpr bool within(int parties) const noexcept { return (mask_ >> parties) == 0; }

  constexpr PartySet with(int party) const noexcept { return PartySet(mask_ | 1u << party); }
  constexpr PartySet complement(int parties) const noexcept {
    return PartySet(~mask_ & all(parties).mask_);
  }
  constexpr bool operator==(const PartySet&) const = default;

 private:
  std::uint32_t mask_ = 0;
};

/// "alice", "bob", "charlie"; "p<i>" beyond three parties.
std::string party_name(int party);
/// Accepts party names (case-insensitive) or decimal indices.
std::optional<int> parse_party(std::string_view text);
/// Comma-separated list of parties; empty text is the empty set.
PartySet parse_party_list(std::string_view text);
std::string format_party_list(PartySet parties);

/// Sub-tuple of `full` restricted to `coalition`, packed in member order.
TupleIndex project(TupleIndex full, PartySet coalition, int parties);
/// Writes `sub` (packed in member order) into the coalition positions of `base`.
TupleIndex embed(TupleIndex base, TupleIndex sub, PartySet coalition, int parties);

/// Conditional table p(outputs | inputs) for n binary parties. Immutable;
/// construction validates nonnegativity and that every row sums to exactly 1.
class NoSignalBox {
 public:
  /// `table[input * 2^n + output]`.
  NoSignalBox(int parties, std::vector<Rational> table);

  int parties() const noexcept { return parties_; }
  std::uint32_t settings() const noexcept { return 1u << parties_; }
  const Rational& probability(TupleIndex inputs, TupleIndex outputs) const {
    return table_[inputs * settings() + outputs];
  }
  Rational probability(std::span<const std::uint8_t> inputs,
                       std::span<const std::uint8_t> outputs) const;
  std::span<const Rational> row(TupleIndex inputs) const {
    return {table_.data() + inputs * settings(), settings()};
  }
  const std::vector<Rational>& table() const noexcept { return table_; }

  bool operator==(const NoSignalBox&) const = default;

 private:
  int parties_;
  std::vector<Rational> table_;
};

struct MarginalDistribution {
  PartySet coalition;
  TupleIndex inputs = 0;        // full input tuple
  std::vector<Rational> probs;  // indexed by coalition output sub-tuple
};

/// p = 1/2^(n-1) when XOR(outputs) == f(inputs), else 0.
NoSignalBox parity_box(const BooleanForm& form);

enum class NamedBox { kPr, kSvetlichny, kMermin1, kMermin2 };

BooleanForm named_form(NamedBox name);
NoSignalBox named_box(NamedBox name);
std::string_view box_name(NamedBox name);
std::optional<NamedBox> parse_box_name(std::string_view text);

/// If the box is exactly parity_box(f) for some f, returns f.
std::optional<BooleanForm> parity_form_of(const NoSignalBox& box);

MarginalDistribution marginal(const NoSignalBox& box, PartySet coalition, TupleIndex inputs);

struct SignalingWitness {
  PartySet coalition;
  TupleIndex first_inputs = 0;
  TupleIndex second_inputs = 0;
  std::vector<Rational> first_marginal;
  std::vector<Rational> second_marginal;
};

struct NoSignalingVerdict {
  bool no_signaling = true;
  std::optional<SignalingWitness> witness;
};

/// Exhaustive check over every proper nonempty coalition R: R's marginal may
/// depend only on R's inputs. The returned witness is the lexicographically
/// smallest (coalition members, first input, second input) that differs.
NoSignalingVerdict check_no_signaling(const NoSignalBox& box);

inline constexpr double kClassicalChshBound = 2.0;
inline constexpr double kTsirelsonBound = 2.8284271247461903;  // 2*sqrt(2)

/// E(0,0) + E(0,1) + E(1,0) - E(1,1), E(x,y) = sum (-1)^(a^b) p(a,b|x,y).
Rational chsh_value(const NoSignalBox& box);

/// Party i of `box` becomes party permutation[i] of the result.
NoSignalBox relabel_parties(const NoSignalBox& box, std::span<const int> permutation);
/// Swaps the roles of output 0 and 1 for one party.
NoSignalBox flip_output(const NoSignalBox& box, int party);

}  // namespace nlctc
