#pragma once

#include <string>
#include <vector>

#include "agrisim/field.hpp"
#include "agrisim/json_types.hpp"
#include "agrisim/mission.hpp"
#include "agrisim/netsim.hpp"
#include "agrisim/route.hpp"
#include "agrisim/sprayer.hpp"

namespace agrisim {

Json to_json(const LocalPoint& p);
Json to_json(const GeoPoint& p);
Json to_json(const Track& t);
Json to_json(const CaptureEvent& c);
Json to_json(const SurveyEstimate& e);
Json to_json(const GroundTruth& g);
Json to_json(const BBox& b);
Json to_json(const TargetList& t);
Json to_json(const Tour& t, const std::vector<LocalPoint>& targets);
Json to_json(const ValveEvent& e);
Json to_json(const SprayReport& r);
Json to_json(const TimelineSegment& s);
Json to_json(const LinkPreset& p);
Json to_json(const LinkSummary& s);

GroundTruth ground_truth_from_json(const Json& j);
TargetList targets_from_json(const Json& j);

// CSV bodies. Lines starting with '#' are comments and carry provenance.
std::string targets_csv(const TargetList& t);
std::string valve_schedule_csv(const ValveSchedule& s);
std::string link_trace_csv(const LinkTrace& t);
// Reads east,north[,support_count] rows; a header row and '#' lines are skipped.
TargetList targets_from_csv(const std::string& text);

// Single-line "# {...}" comment embedding a JSON document in a CSV file.
std::string csv_comment(const Json& j);

}  // namespace agrisim
