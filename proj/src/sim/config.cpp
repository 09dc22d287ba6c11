#include "ltsim/sim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ltsim::sim {

namespace {

using nlohmann::json;

EtmConfig parse_etm(const json& j, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
    EtmConfig e;
    e.kind = j.value("kind", std::string("fixed"));
    e.name = j.value("name", std::string());
    e.gamma_lc = j.value("gamma_lc", e.kind == "csr" ? 5 : 1);
    if (j.contains("gamma_csr")) e.gamma_csr = j.at("gamma_csr").get<double>();
    e.b_percent = j.value("b_percent", 5.0);
    if (j.contains("dc_lrm")) e.dc_lrm = j.at("dc_lrm").get<int>();
    if (j.contains("dc_lrm_table")) {
        for (const auto& row : j.at("dc_lrm_table"))
            e.dc_lrm_table.push_back({row.at("ebno_db").get<double>(), row.at("value").get<int>()});
    }
    return e;
}

}  // namespace

SimConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + err.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

    SimConfig c;
    c.k = j.value("k", c.k);
    c.rate = j.value("rate", c.rate);
    c.max_iter = j.value("max_iter", c.max_iter);
    if (j.contains("ebno_db")) {
        const auto& e = j.at("ebno_db");
        if (e.is_number())
            c.ebno_points = {e.get<double>()};
        else
            c.ebno_points = e.get<std::vector<double>>();
    }
    c.num_blocks = j.value("blocks", c.num_blocks);
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    c.graph_mode = j.value("graph_mode", c.graph_mode);
    c.probe_convergence = j.value("probe_convergence", c.probe_convergence);
    c.time_etm = j.value("time_etm", c.time_etm);

    if (j.contains("etm")) {
        const auto& e = j.at("etm");
        if (e.is_array()) {
            for (std::size_t i = 0; i < e.size(); ++i)
                c.etms.push_back(parse_etm(e[i], "config.etm[" + std::to_string(i) + "]"));
        } else {
            c.etms.push_back(parse_etm(e, "config.etm"));
        }
    }
    if (c.etms.empty()) c.etms.push_back(EtmConfig{});

    if (j.contains("degree_distribution")) {
        for (const auto& row : j.at("degree_distribution"))
            c.degree_pairs.emplace_back(row.at("degree").get<int>(),
                                        row.at("weight").get<double>());
    }

    validate_config(c);
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

void validate_config(const SimConfig& c) {
    if (c.k < 1) throw std::invalid_argument("config.k: must be >= 1");
    if (!(c.rate > 0.0) || c.rate > 1.0)
        throw std::invalid_argument("config.rate: must be in (0,1]");
    if (c.max_iter < 1) throw std::invalid_argument("config.max_iter: must be >= 1");
    if (c.ebno_points.empty()) throw std::invalid_argument("config.ebno_db: must be nonempty");
    if (c.num_blocks < 1) throw std::invalid_argument("config.blocks: must be >= 1");
    if (c.workers < 1) throw std::invalid_argument("config.workers: must be >= 1");
    if (c.graph_mode != "fresh" && c.graph_mode != "pinned")
        throw std::invalid_argument("config.graph_mode: must be \"fresh\" or \"pinned\"");
    if (c.etms.empty()) throw std::invalid_argument("config.etm: must be nonempty");

    std::set<std::string> labels;
    for (std::size_t i = 0; i < c.etms.size(); ++i) {
        const auto& e = c.etms[i];
        const std::string where = "config.etm[" + std::to_string(i) + "]";
        if (e.kind != "fixed" && e.kind != "csr" && e.kind != "lrm")
            throw std::invalid_argument(where + ".kind: must be fixed, csr or lrm");
        if (e.gamma_lc < 1) throw std::invalid_argument(where + ".gamma_lc: must be >= 1");
        if (e.gamma_csr && (!(*e.gamma_csr > 0.0) || *e.gamma_csr > 1.0))
            throw std::invalid_argument(where + ".gamma_csr: must be in (0,1]");
        if (e.kind == "lrm") {
            if (!(e.b_percent > 0.0) || e.b_percent > 100.0)
                throw std::invalid_argument(where + ".b_percent: must be in (0,100]");
            if (e.dc_lrm && *e.dc_lrm < 0)
                throw std::invalid_argument(where + ".dc_lrm: must be >= 0");
        }
        if (!labels.insert(e.label()).second)
            throw std::invalid_argument(where + ".name: duplicate strategy label '" + e.label() +
                                        "'");
    }
}

int resolve_dc_lrm(const EtmConfig& e, double ebno_db) {
    if (e.dc_lrm) return *e.dc_lrm;
    return dc_lrm_lookup(ebno_db, e.dc_lrm_table.empty() ? default_dc_lrm_table() : e.dc_lrm_table);
}

}  // namespace ltsim::sim
