#pragma once

// JSON and CSV forms of the library's values. Rationals are always strings
// "p/q"; emitted objects keep a fixed key order so that equal values give
// byte-identical text. Every parse_* function accepts what the matching
// to_json emits and throws MalformedInput on anything else.

#include <string>
#include <vector>

#include "json.hpp"
#include "nonrn/apxhom.hpp"
#include "nonrn/group.hpp"
#include "nonrn/ideal.hpp"
#include "nonrn/index.hpp"
#include "nonrn/linsolve.hpp"

namespace nonrn {

using Json = nlohmann::ordered_json;

// Version tag carried by report objects.
inline constexpr const char* kFormatVersion = "nonrn/1";

Json to_json(const Q1& x);
Json to_json(const std::vector<Q1>& xs);
Json to_json(const Ball& b);  // {"c", "r"}
Json to_json(const IndexElement& a);  // {"n", "balls", "points"}
Json to_json(const std::vector<IndexElement>& xs);
Json to_json(const LinearSystem& sys);  // {"B", "r", "balls"}
Json to_json(const Validation& v);
// {"size", "witness"}, plus "certificate": "heuristic" when not exact.
Json to_json(const PierceResult& p);
Json to_json(const TrendReport& t);
Json to_json(const AdditivityReport& r);
Json to_json(const RefutationReport& r);

Q1 parse_q1(const Json& j);
std::vector<Q1> parse_q1s(const Json& j);
// Open balls for index elements, closed ones for linear systems.
Ball parse_ball(const Json& j, bool open);
IndexElement parse_index_element(const Json& j);
// A single element or an array of them.
std::vector<IndexElement> parse_index_elements(const Json& j);
LinearSystem parse_linear_system(const Json& j);
PierceResult parse_pierce_result(const Json& j);
TrendReport parse_trend_report(const Json& j);
RefutationReport parse_refutation_report(const Json& j);

// Parses text, turning syntax errors into MalformedInput.
Json parse_json_text(const std::string& text);
// Compact single-line form followed by a newline.
std::string dump(const Json& j);

// Comma-separated rationals, e.g. "0/1,1/2". Empty fields are rejected with
// their position.
std::vector<Q1> parse_q1_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);

// "m,p_m" header, one row per checkpoint, then "verdict,<verdict>".
std::string trend_csv(const TrendReport& t);
// "x,m,p_m" header and one row per sample and checkpoint.
std::string refutation_csv(const RefutationReport& r);

std::string verdict_name(const TrendReport& t);

}  // namespace nonrn
