#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nlctc/ctc.hpp"

namespace nlctc {

/// A published deterministic row: inputs and the single outcome with p = 1.
struct GoldenRow {
  std::vector<std::uint8_t> inputs;
  std::vector<std::uint8_t> outputs;
};

struct ReproductionTarget {
  std::string id;  // "I" .. "IV"
  std::string caption;
  NamedBox box;
  PartySet ctc;
  std::vector<GoldenRow> golden;  // in published order
};

/// I: (PR, {Bob}), II: (Svetlichny, {Bob, Charlie}),
/// III: (Mermin1, {Bob, Charlie}), IV: (Mermin1, {Alice, Bob}).
const std::vector<ReproductionTarget>& reproduction_manifest();
const ReproductionTarget* find_target(std::string_view id);

struct Reproduction {
  const ReproductionTarget* target;
  ConstrainedBox table;
  bool matches;
  std::vector<std::string> mismatches;
};

/// Computes the table and compares it with the golden rows as a set.
Reproduction reproduce(const ReproductionTarget& target);

std::string format_reproduction(const Reproduction& r);
nlohmann::json reproduction_to_json(const Reproduction& r);

}  // namespace nlctc
