#include "qmimo/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qmimo {

json channel_to_json(const ChannelModel& c) {
    json rows = json::array();
    for (int i = 0; i < c.n_r; ++i) {
        json row = json::array();
        for (int j = 0; j < c.n_t; ++j) row.push_back(c.h(i, j));
        rows.push_back(row);
    }
    return {{"n_t", c.n_t}, {"n_r", c.n_r}, {"h", rows}, {"power", c.power}, {"noise_var", c.noise_var}};
}

ChannelModel channel_from_json(const json& j) {
    int n_t = j.at("n_t").get<int>();
    int n_r = j.at("n_r").get<int>();
    Matrix h(n_r, n_t);
    const json& rows = j.at("h");
    require(static_cast<int>(rows.size()) == n_r, "channel JSON: h must have n_r rows");
    for (int i = 0; i < n_r; ++i) {
        require(static_cast<int>(rows[i].size()) == n_t, "channel JSON: h rows must have n_t entries");
        for (int c = 0; c < n_t; ++c) h(i, c) = rows[i][c].get<double>();
    }
    return ChannelModel::make(n_t, n_r, std::move(h), j.at("power").get<double>(),
                              j.value("noise_var", 1.0));
}

namespace {

json poly_to_json(const MultivariatePolynomial& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms) terms.push_back({{"exps", e}, {"coef", c}});
    return {{"terms", terms}};
}

MultivariatePolynomial poly_from_json(const json& j, int dim) {
    MultivariatePolynomial p(dim);
    for (const auto& term : j.at("terms"))
        p.add_term(term.at("exps").get<std::vector<int>>(), term.at("coef").get<double>());
    return p;
}

}  // namespace

json frontend_to_json(const FrontendSpec& spec) {
    json fs = json::array();
    for (const auto& f : spec.functions) fs.push_back(poly_to_json(f));
    json j = {{"scenario", scenario_name(spec.scenario)},
              {"n_q", spec.n_q},
              {"dim", spec.dim},
              {"functions", fs},
              {"thresholds", spec.thresholds}};
    if (spec.scenario == Scenario::IV) j["degree_bound"] = spec.degree_bound;
    return j;
}

FrontendSpec frontend_from_json(const json& j) {
    FrontendSpec spec;
    spec.scenario = scenario_from_name(j.at("scenario").get<std::string>());
    spec.n_q = j.at("n_q").get<int>();
    spec.thresholds = j.at("thresholds").get<Vec>();
    const json& fs = j.at("functions");
    int dim = j.value("dim", 0);
    if (dim == 0) {
        require(!fs.empty() && !fs[0].at("terms").empty(),
                "frontend JSON: need dim or a non-empty first function");
        dim = static_cast<int>(fs[0].at("terms")[0].at("exps").size());
    }
    spec.dim = dim;
    for (const auto& f : fs) spec.functions.push_back(poly_from_json(f, dim));
    spec.degree_bound = j.value("degree_bound", 0);
    spec.validate();
    return spec;
}

std::string bits_to_string(const Bits& b) {
    std::string s;
    for (auto v : b) s.push_back(v ? '1' : '0');
    return s;
}

Bits bits_from_string(const std::string& s) {
    Bits b;
    for (char c : s) {
        require(c == '0' || c == '1', "pattern string must be 0/1");
        b.push_back(c == '1');
    }
    return b;
}

json region_code_to_json(const RegionCode& code) {
    json constellation = json::array();
    for (const auto& x : code.constellation) constellation.push_back(x);
    json pm = json::object();
    for (const auto& [bits, msg] : code.pattern_map) pm[bits_to_string(bits)] = msg;
    return {{"constellation", constellation},
            {"frontend", frontend_to_json(code.frontend)},
            {"pattern_map", pm}};
}

RegionCode region_code_from_json(const json& j) {
    RegionCode code;
    for (const auto& x : j.at("constellation")) code.constellation.push_back(x.get<Vec>());
    code.frontend = frontend_from_json(j.at("frontend"));
    for (const auto& [key, msg] : j.at("pattern_map").items())
        code.pattern_map[bits_from_string(key)] = msg.get<int>();
    return code;
}

json trial_report_to_json(const TrialReport& r) {
    return {{"label", r.label},
            {"P", r.power},
            {"trials", r.trials},
            {"ser", r.ser},
            {"ci95_ser", r.ci95_ser},
            {"empirical_mi_bits", r.empirical_mi_bits},
            {"avg_input_power", r.avg_input_power},
            {"seed", r.seed},
            {"wall_ms", r.wall_ms}};
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("atomic rename failed for " + path);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace qmimo
