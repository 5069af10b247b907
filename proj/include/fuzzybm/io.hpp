#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "fuzzybm/fuzzy.hpp"
#include "fuzzybm/geometry.hpp"
#include "fuzzybm/processes.hpp"
#include "fuzzybm/random_sets.hpp"
#include "fuzzybm/verify.hpp"

namespace fuzzybm {

using Json = nlohmann::json;

// Grids are referenced by id; the full object is only written for inspection.
Json grid_to_json(const DirectionGrid& grid);

// {dim, grid_id, support, vertices?}. Reading a body with vertices re-derives
// the support and rejects files whose stored support disagrees.
Json body_to_json(const ConvexBody& body);
ConvexBody body_from_json(const Json& j);

// {alpha_levels, cuts}
Json fuzzy_to_json(const FuzzySet& nu);
FuzzySet fuzzy_from_json(const Json& j);

// {atoms: [{id, weight, fuzzy_set}], total_mass, allow_null_atoms}
Json random_set_to_json(const DiscreteRandomFuzzySet& x);
DiscreteRandomFuzzySet random_set_from_json(const Json& j);

Json pettis_to_json(const PettisReport& report);

Json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const Json& j);

// direction_index,alpha,value
void write_surface_csv(std::ostream& out, const SupportSurface& surface);
// time,x1..xd
void write_path_csv(std::ostream& out, const WienerPath& path);
// {times, fuzzy_sets: [...], values: [index into fuzzy_sets per time]}; equal
// values share one entry.
Json fuzzy_path_to_json(const FuzzyProcessPath& path);
FuzzyProcessPath fuzzy_path_from_json(const Json& j);
// test,functional,t,s,estimate,se,target,pass
void write_report_csv(std::ostream& out, const VerificationReport& report);

// Fixed formatting used by every text artifact.
std::string format_double(double x);

}  // namespace fuzzybm
