#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace unisign {

// One benchmark run: inputs, iteration count, the six backward-error fields,
// timing and any warnings. Serializes losslessly to JSON and back; CSV uses
// the same column order with 17-significant-digit numbers.
struct RunReport {
  std::string matrix_name;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  int n = 0;
  double delta = 0.0;
  int iterations = 0;
  double factorization = 0.0;
  double involution = 0.0;
  double hermitian_defect = 0.0;
  double unitarity = 0.0;
  double square = 0.0;
  double half_plane = 0.0;
  double wall_time_ms = 0.0;
  std::vector<std::string> warnings;
  std::string error;

  bool operator==(const RunReport&) const = default;
};

inline void to_json(nlohmann::json& j, const RunReport& r) {
  j = nlohmann::json{{"matrix_name", r.matrix_name},
                     {"m", r.m},
                     {"seed", r.seed},
                     {"algorithm", r.algorithm},
                     {"n", r.n},
                     {"delta", r.delta},
                     {"iterations", r.iterations},
                     {"factorization", r.factorization},
                     {"involution", r.involution},
                     {"hermitian_defect", r.hermitian_defect},
                     {"unitarity", r.unitarity},
                     {"square", r.square},
                     {"half_plane", r.half_plane},
                     {"wall_time_ms", r.wall_time_ms},
                     {"warnings", r.warnings},
                     {"error", r.error}};
}

inline void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("matrix_name").get_to(r.matrix_name);
  j.at("m").get_to(r.m);
  j.at("seed").get_to(r.seed);
  j.at("algorithm").get_to(r.algorithm);
  j.at("n").get_to(r.n);
  j.at("delta").get_to(r.delta);
  j.at("iterations").get_to(r.iterations);
  j.at("factorization").get_to(r.factorization);
  j.at("involution").get_to(r.involution);
  j.at("hermitian_defect").get_to(r.hermitian_defect);
  j.at("unitarity").get_to(r.unitarity);
  j.at("square").get_to(r.square);
  j.at("half_plane").get_to(r.half_plane);
  j.at("wall_time_ms").get_to(r.wall_time_ms);
  j.at("warnings").get_to(r.warnings);
  j.at("error").get_to(r.error);
}

namespace detail {
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace detail

inline std::string run_report_csv_header() {
  return "matrix_name,m,seed,algorithm,n,delta,iterations,factorization,"
         "involution,hermitian_defect,unitarity,square,half_plane,"
         "wall_time_ms,warnings,error";
}

inline std::string to_csv_row(const RunReport& r) {
  std::string warn;
  for (std::size_t i = 0; i < r.warnings.size(); ++i) {
    if (i) warn += ';';
    warn += r.warnings[i];
  }
  std::string row = r.matrix_name;
  row += ',' + std::to_string(r.m);
  row += ',' + std::to_string(r.seed);
  row += ',' + r.algorithm;
  row += ',' + std::to_string(r.n);
  row += ',' + detail::fmt17(r.delta);
  row += ',' + std::to_string(r.iterations);
  row += ',' + detail::fmt17(r.factorization);
  row += ',' + detail::fmt17(r.involution);
  row += ',' + detail::fmt17(r.hermitian_defect);
  row += ',' + detail::fmt17(r.unitarity);
  row += ',' + detail::fmt17(r.square);
  row += ',' + detail::fmt17(r.half_plane);
  row += ',' + detail::fmt17(r.wall_time_ms);
  row += ",\"" + warn + "\"";
  row += ",\"" + r.error + "\"";
  return row;
}

}  // namespace unisign
