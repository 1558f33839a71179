#include "wcert/serialize.hpp"

namespace wcert {

nlohmann::json to_json(const SupportBox& box) {
  return {{"center", box.center()}, {"half_width", box.half_width()}};
}

SupportBox support_box_from_json(const nlohmann::json& j) {
  return SupportBox(j.at("center").get<std::vector<double>>(), j.at("half_width").get<double>());
}

nlohmann::json to_json(const Partition& part) {
  nlohmann::json centers = nlohmann::json::array();
  for (std::size_t i = 0; i < part.centers().rows(); ++i) {
    const auto row = part.centers().row(i);
    centers.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"centers", centers},
          {"radii", part.radii()},
          {"remainder_center", part.remainder_center()},
          {"remainder_radius", part.remainder_radius()},
          {"box", to_json(part.box())},
          {"norm_order", to_string(part.norm_order())}};
}

Partition partition_from_json(const nlohmann::json& j) {
  SupportBox box = support_box_from_json(j.at("box"));
  Matrix centers(0, box.dimension());
  for (const auto& row : j.at("centers")) centers.append_row(row.get<std::vector<double>>());
  return Partition(std::move(centers), j.at("radii").get<std::vector<double>>(), std::move(box),
                   parse_norm_order(j.value("norm_order", std::string("2"))));
}

nlohmann::json bound_record(const BoundResult& result, const RecordContext& ctx) {
  nlohmann::json components = nlohmann::json::object();
  for (const auto& [name, value] : result.components) components[name] = value;
  return {{"method", to_string(result.method)},
          {"value", result.value},
          {"rho", ctx.rho},
          {"beta", ctx.beta},
          {"M", ctx.M},
          {"N", ctx.N},
          {"components", components},
          {"nodes", result.report.nodes},
          {"runtime_ms", result.report.wall_ms},
          {"status", to_string(result.report.status)}};
}

nlohmann::json failed_record(BoundMethod method, const RecordContext& ctx, const std::string& status,
                             const SolveReport& report) {
  return {{"method", to_string(method)},
          {"value", nullptr},
          {"rho", ctx.rho},
          {"beta", ctx.beta},
          {"M", ctx.M},
          {"N", ctx.N},
          {"components", nlohmann::json::object()},
          {"nodes", report.nodes},
          {"runtime_ms", report.wall_ms},
          {"status", status}};
}

nlohmann::json dataset_manifest(std::size_t n, std::size_t d, const std::string& generator,
                                const nlohmann::json& params, std::uint64_t seed) {
  return {{"n", n}, {"d", d}, {"generator", generator}, {"params", params}, {"seed", seed}};
}

}  // namespace wcert
