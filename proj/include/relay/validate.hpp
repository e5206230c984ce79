#pragma once

#include <string>
#include <vector>

#include "relay/model.hpp"

namespace relay {

struct Violation {
  std::string family;   // mirrors the constraint family tags
  std::string indices;  // offending (s,i,j,e,...) rendered as text
  std::string message;
  bool operator==(const Violation&) const = default;
};

/// One extracted route: the selected link ids, leg order.
struct RoutePath {
  int sensor = 0;  // pole id
  int route = 0;   // i, 1-based
  std::vector<int> links;
};

struct ValidationReport {
  bool ok = false;  // ok <=> violations.empty()
  std::vector<RoutePath> paths;
  std::vector<Violation> violations;
  double recomputed_cost = 0;
};

/// Re-check an assignment against the problem semantics, reconstructed from
/// the visibility graph alone (the model's constraint objects are not
/// consulted, only its column layout): route structure, disjointness, reuse
/// and capacity limits, activation chain, and the recomputed deployment
/// cost, which must match both the model objective at `a` and any objective
/// value claimed by `a` within 1e-6.
ValidationReport check_solution(const VisibilityGraph& g, const Model01LP& m,
                                const Assignment& a);

/// Exhaustive fault injection. Requires check_solution ok. True iff after
/// removing every subset of at most F relay poles that carry traffic, each
/// sensor still reaches some gateway within H hops over links whose two
/// antennas are installed (Z=1) and whose endpoints survive.
bool fault_injection(const VisibilityGraph& g, const Params& params,
                     const Assignment& a);

std::string report_text(const ValidationReport& r);
std::string violations_csv(const ValidationReport& r);

}  // namespace relay
