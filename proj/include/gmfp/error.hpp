#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gmfp {

// Stable error identifiers shared by the C++ core, the C API and the CLI.
namespace errid {
inline constexpr const char* empty_set_diameter = "empty-set-diameter";
inline constexpr const char* not_a_metric = "not-a-metric";
inline constexpr const char* not_a_gmetric = "not-a-gmetric";
inline constexpr const char* carrier_too_large = "carrier-too-large";
inline constexpr const char* prefix_too_short = "prefix-too-short";
inline constexpr const char* empty_grid = "empty-grid";
inline constexpr const char* nonpositive_argument = "nonpositive-argument";
inline constexpr const char* nonpositive_alpha = "nonpositive-alpha";
inline constexpr const char* parameter_out_of_range = "parameter-out-of-range";
inline constexpr const char* coercivity_evidence_failed = "coercivity-evidence-failed";
inline constexpr const char* missing_entry = "missing-entry";
inline constexpr const char* index_out_of_range = "index-out-of-range";
inline constexpr const char* negative_value = "negative-value";
inline constexpr const char* duplicate_key = "duplicate-key";
inline constexpr const char* parse_error = "parse-error";
inline constexpr const char* invalid_argument = "invalid-argument";
}  // namespace errid

class Error : public std::runtime_error {
 public:
  Error(std::string id, const std::string& detail)
      : std::runtime_error(detail.empty() ? id : id + ": " + detail),
        id_(std::move(id)) {}
  explicit Error(std::string id) : Error(std::move(id), "") {}

  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

}  // namespace gmfp
