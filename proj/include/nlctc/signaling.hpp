#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlctc/ctc.hpp"

namespace nlctc {

/// Who tries to learn whose input. Parties outside coalition and sender have
/// their inputs averaged uniformly and their outputs marginalized.
struct Scenario {
  int sender = 0;
  PartySet coalition;
  std::array<Rational, 2> prior{Rational(1, 2), Rational(1, 2)};
};

void validate(const Scenario& scenario, const ConstrainedBox& box);

/// Distribution of the coalition's outputs (indexed by coalition sub-tuple)
/// with the coalition's inputs fixed to `setting` and the sender's to
/// `sender_input`. Throws Error(kParadox) naming the first paradox row touched.
std::vector<Rational> observation_distribution(const ConstrainedBox& box, const Scenario& scenario,
                                               TupleIndex setting, std::uint8_t sender_input);

struct SignalingEntry {
  TupleIndex setting = 0;  // coalition input sub-tuple
  bool dependent = false;
  /// MAP guess of the sender's input for each coalition outcome that occurs;
  /// ties guess 0.
  std::map<TupleIndex, std::uint8_t> rule;
  Rational success;
  double mi_bits = 0.0;
  /// The coalition includes a CTC party.
  bool impractical = false;
  /// Sender inputs (0..2) that the rule recovers with certainty.
  int recovered_inputs = 0;
};

struct SignalingReport {
  int sender = 0;
  PartySet coalition;
  PartySet ctc;
  std::vector<SignalingEntry> entries;
  /// Set when a paradox row makes the scenario undefined (full_scan only).
  std::optional<std::string> error;

  int dependent_settings() const;
  int total_settings() const { return static_cast<int>(entries.size()); }
  /// (setting, sender input) pairs decoded with certainty.
  int recovered_cases() const;
  int total_cases() const { return 2 * total_settings(); }
};

SignalingReport detect_signaling(const ConstrainedBox& box, const Scenario& scenario);

/// Success probability of an arbitrary decoding rule at one coalition setting.
Rational rule_success(const ConstrainedBox& box, const Scenario& scenario, TupleIndex setting,
                      const std::function<std::uint8_t(TupleIndex outputs)>& rule);

struct ScanResult {
  std::vector<SignalingReport> reports;
  /// Dependent (setting, sender -> coalition) pairs over all reports.
  int dependent_pairs = 0;
};

/// Every sender against every nonempty coalition of the remaining parties,
/// ordered by sender, then coalition members.
ScanResult full_scan(const ConstrainedBox& box);

/// One line per coalition setting plus a per-direction count line.
std::string format_report(const SignalingReport& report, int parties);
std::string format_scan(const ScanResult& scan, int parties);

/// I(S; O) in bits for the family p(o | s) under `prior`.
double mutual_information(std::span<const std::vector<Rational>> distributions,
                          std::span<const Rational> prior);

}  // namespace nlctc
