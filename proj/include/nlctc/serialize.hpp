#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nlctc/box.hpp"
#include "nlctc/ctc.hpp"
#include "nlctc/deutsch.hpp"
#include "nlctc/signaling.hpp"

namespace nlctc {

/// Box spec documents, either
///   {"parties": n, "constraint": [[0, 1], ...]}   (parity box)
///   {"parties": n, "table": [{"in": [..], "out": [..], "p": "num/den"}, ...]}
/// Table entries not listed are 0. Throws Error(kParse) for malformed JSON and
/// Error(kInvariant) for tables that are not conditional distributions; the
/// message names the offending field (e.g. "table[3].p").
NoSignalBox parse_box_spec(std::string_view text);
NoSignalBox load_box_spec(const std::filesystem::path& path);

/// Table form, positive entries only, lexicographic input-then-output order.
nlohmann::json box_to_json(const NoSignalBox& box);

nlohmann::json row_to_json(const TableRow& row);
nlohmann::json constrained_box_to_json(const ConstrainedBox& cbox, std::string_view name);

nlohmann::json entry_to_json(const SignalingReport& report, const SignalingEntry& entry);
nlohmann::json scan_to_json(const ScanResult& scan, std::string_view name, PartySet ctc);

/// Matrices as {"dim": d, "entries": [[re, im], ...]} row-major; a bare array
/// of d*d [re, im] pairs or an array of d rows of pairs is accepted on input.
nlohmann::json matrix_to_json(const deutsch::ComplexMatrix& m);
deutsch::ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// {"cr_dim": .., "ctc_dim": .., "entries": ...}; missing dims split d*d
/// evenly (d must then be a perfect square).
deutsch::UnitaryMatrix unitary_from_json(const nlohmann::json& j);
deutsch::DensityMatrix density_from_json(const nlohmann::json& j);
nlohmann::json fixed_point_to_json(const deutsch::FixedPointResult& result);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace nlctc
