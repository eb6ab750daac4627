#pragma once

// Command implementations producing JSON result objects. Field names are
// part of the report schema (docs/report-schema.md).

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "contact/contact.hpp"
#include "grid/grid.hpp"
#include "io/formats.hpp"

namespace knotfilt::io {

struct Report {
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> warnings;
  // A theorem-level invariant failed on the computed data.
  bool theorem_violated = false;
  // The input was read fine but does not satisfy its format's invariants.
  bool input_invalid = false;
};

Report validate_grid_report(const grid::GridDiagram& g);
Report validate_complex_report(const ComplexData& data);

Report hfk_report(const grid::GridDiagram& g, const grid::GridOptions& options);
Report hfk_report(const ComplexData& data);

// Only the class selector "top" exists.
Report tau_report(const grid::GridDiagram& g, const grid::GridOptions& options);
Report tau_report(const ComplexData& data);

Report mirror_check_report(const grid::GridDiagram& g, const grid::GridOptions& options);
Report connect_sum_report(const ComplexData& a, const ComplexData& b);
// Sweeps the whole window when `m` is empty.
Report surgery_check_report(const ComplexData& data, std::optional<int> m);

Report bennequin_report(const contact::LegendrianData& l, int tau);
Report cable_bound_report(long long p, long long q, long long genus);
Report cable_min_report(long long n, long long p, long long genus);
// One entry per contact structure on the same manifold.
Report fibered_report(const std::vector<contact::LegendrianData>& structures, int genus);

}  // namespace knotfilt::io
