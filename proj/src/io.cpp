#include "zerofree/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace zf::io {

json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double as_number(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return HUGE_VAL;
        if (s == "-inf") return -HUGE_VAL;
        if (s == "nan") return std::nan("");
    }
    throw Error(Errc::invalid_input, "expected a number, got " + j.dump());
}

namespace {

json number_map(const std::map<std::string, double>& m) {
    json o = json::object();
    for (auto& [k, v] : m) o[k] = number(v);
    return o;
}

std::map<std::string, double> number_map_from(const json& j) {
    std::map<std::string, double> m;
    for (auto it = j.begin(); it != j.end(); ++it) m[it.key()] = as_number(it.value());
    return m;
}

json int_map(const std::map<int, double>& m) {
    json o = json::object();
    for (auto& [k, v] : m) o[std::to_string(k)] = number(v);
    return o;
}

json pins_json(const Pins& pins) {
    json o = json::object();
    for (auto [v, s] : pins) o[std::to_string(v)] = s;
    return o;
}

json cplx_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

template <typename T>
json opt(const std::optional<T>& v) {
    if (!v) return nullptr;
    return number(*v);
}

}  // namespace

json graph_to_json(const Graph& g, const Pins& pins) {
    json j;
    j["n"] = g.n;
    j["edges"] = json::array();
    for (auto [u, v] : g.edges) j["edges"].push_back({u, v});
    if (!pins.empty()) j["pins"] = pins_json(pins);
    return j;
}

Graph graph_from_json(const json& j) {
    try {
        std::vector<std::pair<int, int>> edges;
        for (auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw Error(Errc::invalid_input, "edge must be a pair");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return Graph(j.at("n").get<int>(), std::move(edges));
    } catch (const json::exception& e) {
        throw Error(Errc::invalid_input, std::string("graph JSON: ") + e.what());
    }
}

json hypergraph_to_json(const Hypergraph& h, const Pins& pins) {
    json j;
    j["n"] = h.n;
    j["edges"] = h.edges;
    if (!pins.empty()) j["pins"] = pins_json(pins);
    return j;
}

Hypergraph hypergraph_from_json(const json& j) {
    try {
        return Hypergraph(j.at("n").get<int>(), j.at("edges").get<std::vector<std::vector<int>>>());
    } catch (const json::exception& e) {
        throw Error(Errc::invalid_input, std::string("hypergraph JSON: ") + e.what());
    }
}

Pins pins_from_json(const json& j, int n) {
    Pins pins;
    try {
        if (j.is_object()) {
            for (auto it = j.begin(); it != j.end(); ++it) pins[std::stoi(it.key())] = it.value().get<int>();
        } else if (j.is_array()) {
            for (auto& e : j) pins[e.at(0).get<int>()] = e.at(1).get<int>();
        } else if (!j.is_null()) {
            throw Error(Errc::invalid_input, "pins must be an object or a list of pairs");
        }
    } catch (const json::exception& e) {
        throw Error(Errc::invalid_input, std::string("pins JSON: ") + e.what());
    } catch (const std::logic_error&) {
        throw Error(Errc::invalid_input, "pin keys must be vertex indices");
    }
    validate_pins(pins, n);
    return pins;
}

json to_json(const ThresholdReport& r) {
    json j;
    j["beta"] = number(r.beta);
    j["gamma"] = number(r.gamma);
    j["delta"] = r.delta;
    j["sign"] = r.sign == Sign::positive ? "pos" : "neg";
    j["bar_d"] = opt(r.bar_d);
    j["hat_x"] = int_map(r.hat_x);
    j["lambda_c"] = int_map(r.lambda_c);
    j["x_c"] = opt(r.x_c);
    j["d_c"] = opt(r.d_c);
    j["check_x"] = int_map(r.check_x);
    j["case_id"] = r.case_id;
    j["bound"] = opt(r.lambda_bound);
    j["note"] = r.note;
    return j;
}

json to_json(const SetCoverThresholdReport& r) {
    json j;
    j["delta"] = r.delta;
    j["mu"] = number(r.mu);
    j["mu1"] = number(r.mu1);
    j["mu2"] = number(r.mu2);
    j["condition"] = r.condition;
    j["eta1"] = opt(r.eta1);
    j["eta2"] = opt(r.eta2);
    j["xStar1"] = opt(r.xStar1);
    j["xStar2"] = opt(r.xStar2);
    std::optional<double> bound;
    if (r.condition == 2) bound = r.eta1;
    if (r.condition == 3) bound = r.eta2;
    j["bound"] = opt(bound);
    return j;
}

json to_json(const Certificate& c) {
    json j;
    j["schema"] = c.schema;
    j["regime"] = regime_name(c.regime);
    j["inputs"] = number_map(c.inputs);
    j["case_id"] = c.case_id;
    j["case_bound"] = opt(c.case_bound);
    j["region"] = {{"kind", c.region_kind}, {"params", number_map(c.region)}};
    j["choices"] = number_map(c.choices);
    j["k"] = opt(c.k);
    j["delta_hat"] = opt(c.delta_hat);
    j["grids"] = number_map(c.grids);
    j["margin"] = number(c.margin);
    j["min_H"] = number(c.min_H);
    j["min_margin"] = number(c.min_margin);
    j["structural"] = json::array();
    for (auto& s : c.structural) j["structural"].push_back({{"name", s.name}, {"passed", s.passed}});
    j["verdict"] = c.pass ? "pass" : "fail";
    j["failure_witnesses"] = json::array();
    for (auto& w : c.failure_witnesses)
        j["failure_witnesses"].push_back({{"check", w.check}, {"point", number_map(w.point)}, {"value", number(w.value)}});
    j["notes"] = c.notes;
    return j;
}

Certificate certificate_from_json(const json& j) {
    try {
        Certificate c;
        c.schema = j.at("schema").get<std::string>();
        if (c.schema != "zerocert/1") throw Error(Errc::invalid_input, "unsupported certificate schema " + c.schema);
        c.regime = regime_from_name(j.at("regime").get<std::string>());
        c.inputs = number_map_from(j.at("inputs"));
        c.case_id = j.at("case_id").get<std::string>();
        if (!j.at("case_bound").is_null()) c.case_bound = as_number(j["case_bound"]);
        c.region_kind = j.at("region").at("kind").get<std::string>();
        c.region = number_map_from(j["region"].at("params"));
        c.choices = number_map_from(j.at("choices"));
        if (!j.at("k").is_null()) c.k = as_number(j["k"]);
        if (!j.at("delta_hat").is_null()) c.delta_hat = as_number(j["delta_hat"]);
        c.grids = number_map_from(j.at("grids"));
        c.margin = as_number(j.at("margin"));
        c.min_H = as_number(j.at("min_H"));
        c.min_margin = as_number(j.at("min_margin"));
        for (auto& s : j.at("structural")) c.structural.push_back({s.at("name").get<std::string>(), s.at("passed").get<bool>()});
        const auto verdict = j.at("verdict").get<std::string>();
        if (verdict != "pass" && verdict != "fail") throw Error(Errc::invalid_input, "verdict must be pass or fail");
        c.pass = verdict == "pass";
        for (auto& w : j.at("failure_witnesses"))
            c.failure_witnesses.push_back(
                {w.at("check").get<std::string>(), number_map_from(w.at("point")), as_number(w.at("value"))});
        c.notes = j.at("notes").get<std::vector<std::string>>();
        if (!c.consistent()) throw Error(Errc::invalid_input, "certificate verdict contradicts its recorded checks");
        return c;
    } catch (const json::exception& e) {
        throw Error(Errc::invalid_input, std::string("certificate JSON: ") + e.what());
    }
}

json to_json(const RootSet& r) {
    json j;
    j["roots"] = json::array();
    for (auto z : r.roots) j["roots"].push_back(cplx_json(z));
    j["residual_max"] = number(r.residual_max);
    j["iterations"] = r.iterations;
    return j;
}

json to_json(const ScanReport& r) {
    auto sample = [](const ScanSample& s) {
        return json{{"index", s.index},
                    {"n", s.n},
                    {"edges", s.edges},
                    {"pins", s.pins},
                    {"degree", s.degree},
                    {"min_distance", number(s.min_distance)},
                    {"nearest_root", cplx_json(s.nearest_root)}};
    };
    json j;
    j["verdict"] = scan_verdict_name(r.verdict);
    j["expected_zero_free"] = r.expected_zero_free;
    j["lambda0"] = number(r.lambda0);
    j["delta"] = number(r.delta);
    j["samples"] = r.samples;
    j["violations"] = r.violations;
    j["min_distance"] = number(r.min_distance);
    j["worst"] = r.worst ? sample(*r.worst) : json(nullptr);
    j["violating"] = json::array();
    for (auto& s : r.violating) j["violating"].push_back(sample(s));
    return j;
}

json to_json(const TaylorApprox& t) {
    json j;
    j["terms"] = t.terms;
    j["log_coeffs"] = json::array();
    for (auto z : t.log_coeffs) j["log_coeffs"].push_back(cplx_json(z));
    j["value"] = cplx_json(t.value);
    j["relative_error"] = number(t.relative_error);
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::invalid_input, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(Errc::invalid_input, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::invalid_input, "cannot write " + path);
    out << text;
}

}  // namespace zf::io
