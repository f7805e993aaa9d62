#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "contactlab/bounds.hpp"
#include "contactlab/cluster_search.hpp"
#include "contactlab/digital.hpp"
#include "contactlab/geometry.hpp"
#include "contactlab/separability.hpp"

/// JSON serialization. Parsers throw MalformedInput with a message naming
/// the offending field.
namespace contactlab::io {

/// Optional provenance block stored next to a packing.
struct ConstructionInfo {
  std::string name;
  std::map<std::string, std::int64_t> params;
};

[[nodiscard]] std::string to_json(const Packing& p);
[[nodiscard]] std::string to_json(const Packing& p, const ConstructionInfo& info);
[[nodiscard]] Packing packing_from_json(std::string_view text);

[[nodiscard]] std::string to_json(const ContactGraph& g);
[[nodiscard]] ContactGraph contact_graph_from_json(std::string_view text);

[[nodiscard]] std::string to_json(const digital::Polyomino& poly);
[[nodiscard]] digital::Polyomino polyomino_from_json(std::string_view text);

[[nodiscard]] std::string to_json(const bounds::BoundReport& r);
[[nodiscard]] std::string csv_header_bound_report();
[[nodiscard]] std::string to_csv_row(const bounds::BoundReport& r);

[[nodiscard]] std::string to_json(const separability::SeparabilityReport& r);

[[nodiscard]] std::string to_json(const cluster::SolverConfig& cfg);
[[nodiscard]] cluster::SolverConfig solver_config_from_json(std::string_view text);

[[nodiscard]] std::string to_json(const cluster::SearchReport& r);
[[nodiscard]] std::string to_json(const VolumeEstimate& v);

/// Integers print without a decimal point, other values round-trip.
[[nodiscard]] std::string format_number(double v);

}  // namespace contactlab::io
