#include "ltsim/sim/results.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "ltsim/degree_distribution.hpp"

namespace ltsim::sim {

namespace {

using nlohmann::json;

double parse_double_field(const std::string& s, const char* field) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw std::invalid_argument(std::string("csv: bad ") + field + " value '" + s + "'");
    return v;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

json ops_json(const OpCounters& ops) {
    return json{{"additions", ops.additions},
                {"sign_ops", ops.sign_ops},
                {"compares", ops.compares},
                {"quickselect_compares", ops.quickselect_compares}};
}

json reconcile_json(const char* category, double measured, double model) {
    const double rel = model == 0.0
                           ? (measured == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                           : std::fabs(measured - model) / std::fabs(model);
    return json{{"category", category}, {"measured", measured}, {"model", model},
                {"rel_diff", rel}};
}

// Measured-vs-analytic per-iteration comparison from the aggregate's integer
// sums (realized graph composition, not the nominal distribution).
json complexity_json(const SimConfig& config, const AggregateResult& a) {
    json out;
    const double blocks = a.blocks;
    const double n = std::llround(config.k / config.rate);
    const double avg_edges = static_cast<double>(a.total_edges) / blocks;

    if (a.kind == "csr" && a.total_iterations > 0) {
        const double iters = static_cast<double>(a.total_iterations);
        const double model_adds = n + config.k - static_cast<double>(a.total_deg1_vns) / blocks;
        const double model_signs = avg_edges;
        const double model_compares = config.k;
        out["per_iteration"] = json::array(
            {reconcile_json("additions", a.total_etm_ops.additions / iters, model_adds),
             reconcile_json("sign_domain_ops", a.total_etm_ops.sign_ops / iters, model_signs),
             reconcile_json("compares", a.total_etm_ops.compares / iters, model_compares)});
    } else if (a.kind == "lrm" && a.total_active_lrm_iterations > 0) {
        const double active = static_cast<double>(a.total_active_lrm_iterations);
        const double model_nb = static_cast<double>(a.total_nb) / blocks;
        const double tracked_compares =
            static_cast<double>(a.total_etm_ops.compares - a.total_etm_ops.quickselect_compares);
        out["per_active_iteration"] = json::array(
            {reconcile_json("additions", a.total_etm_ops.additions / active, model_nb),
             reconcile_json("sign_domain_ops", a.total_etm_ops.sign_ops / active, model_nb),
             reconcile_json("compares", tracked_compares / active, model_nb)});
        out["quickselect"] = reconcile_json(
            "quickselect_compares",
            static_cast<double>(a.total_etm_ops.quickselect_compares) / blocks, 2.0 * avg_edges);
        out["active_iterations_per_block"] = active / blocks;
    }
    return out;
}

json config_json(const SimConfig& c) {
    json etms = json::array();
    for (const auto& e : c.etms) {
        json je{{"kind", e.kind}, {"name", e.label()}, {"gamma_lc", e.gamma_lc}};
        if (e.gamma_csr) je["gamma_csr"] = *e.gamma_csr;
        if (e.kind == "lrm") {
            je["b_percent"] = e.b_percent;
            if (e.dc_lrm) je["dc_lrm"] = *e.dc_lrm;
            json table = json::array();
            for (const auto& row : e.dc_lrm_table.empty() ? default_dc_lrm_table()
                                                          : e.dc_lrm_table)
                table.push_back({{"ebno_db", row.ebno_db}, {"value", row.value}});
            je["dc_lrm_table"] = table;
        }
        etms.push_back(je);
    }

    json degrees = json::array();
    for (const auto& [d, w] : c.degree_pairs.empty() ? default_degree_pairs() : c.degree_pairs)
        degrees.push_back({{"degree", d}, {"weight", w}});

    return json{{"k", c.k},
                {"rate", c.rate},
                {"max_iter", c.max_iter},
                {"ebno_db", c.ebno_points},
                {"blocks", c.num_blocks},
                {"seed", c.seed},
                {"workers", c.workers},
                {"graph_mode", c.graph_mode},
                {"probe_convergence", c.probe_convergence},
                {"time_etm", c.time_etm},
                {"etm", etms},
                {"degree_distribution", degrees}};
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: buffer too small");
    return std::string(buf, p);
}

void write_csv(const std::vector<AggregateResult>& rows, std::ostream& os) {
    os << kCsvHeader << '\n';
    for (const auto& a : rows) {
        os << format_double(a.ebno_db) << ',' << a.strategy << ',' << a.blocks << ','
           << format_double(a.ber) << ',' << format_double(a.avg_iterations) << ','
           << format_double(a.convergence_avg) << ',' << format_double(a.avg_etm_time_ms) << ','
           << format_double(a.avg_etm_ops.additions) << ','
           << format_double(a.avg_etm_ops.sign_domain_ops) << ','
           << format_double(a.avg_etm_ops.compares) << '\n';
    }
}

std::string csv_string(const std::vector<AggregateResult>& rows) {
    std::ostringstream ss;
    write_csv(rows, ss);
    return ss.str();
}

std::vector<CsvRow> parse_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("csv: empty input");
    if (line != kCsvHeader) throw std::invalid_argument("csv: unexpected header '" + line + "'");

    std::vector<CsvRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 10) throw std::invalid_argument("csv: expected 10 fields, got line '" + line + "'");
        CsvRow r;
        r.ebno_db = parse_double_field(f[0], "ebno_db");
        r.strategy = f[1];
        r.blocks = std::stol(f[2]);
        r.ber = parse_double_field(f[3], "ber");
        r.avg_iterations = parse_double_field(f[4], "avg_iterations");
        r.convergence_avg = parse_double_field(f[5], "convergence_avg");
        r.etm_time_ms = parse_double_field(f[6], "etm_time_ms");
        r.etm_add = parse_double_field(f[7], "etm_add");
        r.etm_signops = parse_double_field(f[8], "etm_signops");
        r.etm_compares = parse_double_field(f[9], "etm_compares");
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_json_summary(const SimConfig& config, const std::vector<AggregateResult>& rows,
                        std::ostream& os) {
    json results = json::array();
    for (const auto& a : rows) {
        json row{{"ebno_db", a.ebno_db},
                 {"strategy", a.strategy},
                 {"kind", a.kind},
                 {"blocks", a.blocks},
                 {"bit_errors", a.bit_errors},
                 {"ber", a.ber},
                 {"avg_iterations", a.avg_iterations},
                 {"early_blocks", a.early_blocks},
                 {"degree0_blocks", a.degree0_blocks},
                 {"etm_time_ms_avg", a.avg_etm_time_ms},
                 {"etm_ops_total", ops_json(a.total_etm_ops)},
                 {"avg_edges", static_cast<double>(a.total_edges) / a.blocks}};
        if (a.dc_lrm >= 0) row["dc_lrm"] = a.dc_lrm;
        if (a.has_convergence || a.nonconvergent_blocks > 0) {
            row["convergence"] = json{{"avg", a.has_convergence ? json(a.convergence_avg) : json()},
                                      {"converged_blocks", a.converged_blocks},
                                      {"nonconvergent_blocks", a.nonconvergent_blocks}};
        }
        const auto model = complexity_json(config, a);
        if (!model.empty()) row["complexity_model"] = model;
        results.push_back(row);
    }

    const json doc{{"config", config_json(config)}, {"results", results}};
    os << doc.dump(2) << '\n';
}

void write_gnuplot_ber(const std::vector<AggregateResult>& rows, std::ostream& os) {
    os << "# BER vs Eb/N0 (dB), one block per strategy\n";
    std::vector<std::string> seen;
    for (const auto& a : rows) {
        if (std::find(seen.begin(), seen.end(), a.strategy) != seen.end()) continue;
        seen.push_back(a.strategy);
        os << "# strategy: " << a.strategy << '\n';
        for (const auto& b : rows) {
            if (b.strategy != a.strategy) continue;
            os << format_double(b.ebno_db) << ' ' << format_double(b.ber) << '\n';
        }
        os << '\n';
    }
}

}  // namespace ltsim::sim
