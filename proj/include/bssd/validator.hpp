#pragma once

#include "bssd/behavior_graph.hpp"
#include "bssd/findings.hpp"
#include "bssd/fingerprint.hpp"
#include "bssd/scenery_map.hpp"

#include <string>
#include <vector>

namespace bssd {

/// Runs every rule and returns the findings in `finding_order`. Load
/// diagnostics of the map are part of the result.
std::vector<Finding> validate(const SceneryMap& map, const BehaviorGraph& graph);

struct CoverageReport {
  std::size_t regular_lanelets = 0;
  /// Regular lanelets referenced by exactly one space that passed all checks.
  std::size_t annotated_lanelets = 0;

  double fraction() const {
    return regular_lanelets == 0 ? 1.0 : static_cast<double>(annotated_lanelets) / static_cast<double>(regular_lanelets);
  }
};

CoverageReport coverage_report(const SceneryMap& map);

struct EquivalenceClass {
  Fingerprint fingerprint;
  std::vector<OsmId> spaces;
};

/// Valid spaces grouped by demand fingerprint, classes ordered by their
/// smallest member.
std::vector<EquivalenceClass> equivalence_classes(const SceneryMap& map);

/// "<rule> <severity> <subjects> <code>: <message>" per line.
std::string findings_text(const std::vector<Finding>& findings);
/// JSON array of {rule, severity, subjects, message}.
std::string findings_json(const std::vector<Finding>& findings);

}  // namespace bssd
