#include <json.hpp>

#include "padiclab/render.hpp"

namespace padiclab {

using nlohmann::ordered_json;

namespace {

std::string rat(const mpq_class& q) { return q.get_str(); }

}  // namespace

std::string points_json(const std::vector<EmbeddedPoint>& points) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : points) {
        arr.push_back({{"r", p.parameter.to_string()},
                       {"q_of_r", p.q_of_parameter.to_string()},
                       {"x", rat(p.x)},
                       {"y", rat(p.y)}});
    }
    return arr.dump(2) + "\n";
}

std::string grid_points_json(int k) {
    ordered_json arr = ordered_json::array();
    for_each_grid_point(k, [&](const GridPoint& p) {
        arr.push_back({{"n", p.n},
                       {"x_num", p.x.num.get_str()},
                       {"x_exp", p.x.exp},
                       {"y_num", p.y.num.get_str()},
                       {"y_exp", p.y.exp}});
    });
    return arr.dump(2) + "\n";
}

std::string ergodic_json(const ErgodicEnumeration& e) {
    ordered_json j;
    j["max_k"] = e.max_k;
    j["level_cap"] = e.level_cap;
    j["complete_up_to_cap"] = e.indeterminate == 0;
    ordered_json counts = ordered_json::array();
    for (std::size_t k = 1; k < e.counts.size(); ++k)
        counts.push_back({{"k", k}, {"count", e.counts[k]}});
    j["counts"] = counts;
    MeasureSummary ms = measure_summary(e);
    j["odd_measure_total"] = rat(ms.odd_total);
    j["odd_measure_total_approx"] = ms.odd_total.get_d();
    j["full_measure_total"] = rat(ms.full_total);
    j["full_measure_total_approx"] = ms.full_total.get_d();
    ordered_json records = ordered_json::array();
    for (const auto& r : e.records) {
        ordered_json rec;
        rec["k"] = r.measure_exponent;
        rec["m0"] = r.base.level;
        rec["length"] = r.base.length;
        rec["elements"] = r.base.elements;
        rec["measure"] = "1/2^" + std::to_string(r.measure_exponent);
        records.push_back(std::move(rec));
    }
    j["records"] = records;
    return j.dump(2) + "\n";
}

std::string search_json(const SearchReport& r) {
    ordered_json j;
    j["config"] = {{"bound", r.config.bound},
                   {"max_period", r.config.max_period},
                   {"modulus_bits", r.config.modulus_bits},
                   {"threads", r.config.threads}};
    j["candidates_tested"] = r.candidates_tested;
    ordered_json survivors = ordered_json::array();
    for (const auto& c : r.survivors) {
        ordered_json s;
        s["seed"] = c.seed.to_string();
        s["period"] = c.period;
        s["verified_exact"] = c.verified_exact;
        ordered_json elems = ordered_json::array();
        for (const auto& e : c.cycle_elements) elems.push_back(e.to_string());
        s["cycle"] = elems;
        survivors.push_back(std::move(s));
    }
    j["survivors"] = survivors;
    j["wall_clock_ms"] = r.wall_clock_ms;
    return j.dump(2) + "\n";
}

std::string fixed_points_json(const FixedPointReport& r) {
    ordered_json j;
    j["level"] = r.level;
    ordered_json entries = ordered_json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"residue", e.residue},
                           {"dist_to_minus_one", "2^-" + std::to_string(e.dist_exp_minus_one)},
                           {"dist_to_one_third", "2^-" + std::to_string(e.dist_exp_third)}});
    j["fixed_odd_residues"] = entries;
    return j.dump(2) + "\n";
}

const char* feq_status_name(FeqStatus s) {
    switch (s) {
        case FeqStatus::pass: return "pass";
        case FeqStatus::fail: return "fail";
        case FeqStatus::skipped: return "skipped";
        case FeqStatus::indeterminate: return "indeterminate";
    }
    return "?";
}

std::string feq_json(const FeqReport& r) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : r.entries) {
        ordered_json item;
        item["equation"] = e.name;
        item["status"] = feq_status_name(e.status);
        if (!e.note.empty()) item["note"] = e.note;
        arr.push_back(std::move(item));
    }
    return arr.dump(2) + "\n";
}

}  // namespace padiclab
