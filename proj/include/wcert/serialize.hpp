#pragma once

// JSON forms of partitions, bound records and dataset manifests.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "wcert/bounds.hpp"
#include "wcert/partition.hpp"

namespace wcert {

nlohmann::json to_json(const SupportBox& box);
SupportBox support_box_from_json(const nlohmann::json& j);

/// {centers, radii, remainder_center, remainder_radius, box, norm_order}
nlohmann::json to_json(const Partition& part);
Partition partition_from_json(const nlohmann::json& j);

struct RecordContext {
  double rho = 1.0;
  double beta = 1e-6;
  std::size_t M = 0;
  std::int64_t N = 0;
};

/// {method, value, rho, beta, M, N, components, nodes, runtime_ms, status}
nlohmann::json bound_record(const BoundResult& result, const RecordContext& ctx);
/// Record for a solve that did not finish: value is null.
nlohmann::json failed_record(BoundMethod method, const RecordContext& ctx, const std::string& status,
                             const SolveReport& report);

/// {n, d, generator, params, seed}
nlohmann::json dataset_manifest(std::size_t n, std::size_t d, const std::string& generator,
                                const nlohmann::json& params, std::uint64_t seed);

}  // namespace wcert
