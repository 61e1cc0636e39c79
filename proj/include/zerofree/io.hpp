#pragma once

#include <string>

#include "json.hpp"
#include "zerofree/certifier.hpp"
#include "zerofree/model.hpp"
#include "zerofree/spectra.hpp"
#include "zerofree/thresholds.hpp"

namespace zf::io {

using json = nlohmann::json;

// Non-finite doubles are written as the strings "inf", "-inf" and "nan".
json number(double v);
double as_number(const json& j);

// {"n": 3, "edges": [[0, 1], [1, 2]], "pins": {"0": 1}}; pins optional.
json graph_to_json(const Graph& g, const Pins& pins = {});
Graph graph_from_json(const json& j);
json hypergraph_to_json(const Hypergraph& h, const Pins& pins = {});
Hypergraph hypergraph_from_json(const json& j);
Pins pins_from_json(const json& j, int n);  // object {"v": s} or list [[v, s], ...]

json to_json(const ThresholdReport& r);
json to_json(const SetCoverThresholdReport& r);
json to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);
json to_json(const RootSet& r);
json to_json(const ScanReport& r);
json to_json(const TaylorApprox& t);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace zf::io
