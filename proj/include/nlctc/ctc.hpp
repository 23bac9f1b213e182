#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlctc/box.hpp"

namespace nlctc {

/// One input setting of a constrained box. A paradox row is one where the
/// pinning event output_i = input_i (i in pattern) has probability zero under
/// the original box; it carries no distribution.
struct ConstrainedRow {
  TupleIndex inputs = 0;
  bool paradox = false;
  std::vector<Rational> probs;  // over full output tuples; empty when paradox
};

class ConstrainedBox {
 public:
  ConstrainedBox(int parties, PartySet pattern, std::vector<ConstrainedRow> rows);

  int parties() const noexcept { return parties_; }
  PartySet pattern() const noexcept { return pattern_; }
  const std::vector<ConstrainedRow>& rows() const noexcept { return rows_; }
  const ConstrainedRow& row(TupleIndex inputs) const { return rows_.at(inputs); }
  bool has_paradox() const noexcept;

  bool operator==(const ConstrainedBox&) const = default;

 private:
  int parties_;
  PartySet pattern_;
  std::vector<ConstrainedRow> rows_;
};

/// Conditions every row on {output_i = input_i for i in pattern} and
/// renormalizes. An empty pattern returns the original conditionals.
ConstrainedBox apply_ctc(const NoSignalBox& box, PartySet pattern);

/// The GF(2) law left on the causality-respecting (CR) parties of a parity
/// box f once the pattern parties are pinned:
///   XOR(CR outputs) = f(inputs) ^ XOR(pattern inputs).
/// With every party pinned the left side is empty and the law reads 0 = g(x):
/// rows with g(x) = 1 are the paradox rows.
struct ClosedForm {
  PartySet pattern;
  PartySet cr_parties;
  BooleanForm relation;
  /// Enumeration of apply_ctc agrees with the relation on every input.
  bool verified = false;

  /// e.g. "b ^ c = x.y ^ x.z ^ x".
  std::string to_string() const;
};

ClosedForm closed_form_check(const NoSignalBox& box, PartySet pattern);

struct Outcome {
  std::vector<std::uint8_t> outputs;
  Rational p;
};

struct TableRow {
  std::vector<std::uint8_t> inputs;
  bool paradox = false;
  std::vector<Outcome> outcomes;  // positive-probability outcomes, lexicographic
};

/// Rows sorted by input tuple.
std::vector<TableRow> emit_table(const ConstrainedBox& cbox);

/// Fixed-width ASCII: "x y z | a b c | p", one line per positive outcome.
std::string format_table(const ConstrainedBox& cbox);

}  // namespace nlctc
