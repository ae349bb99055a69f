#include "gct/app_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>

#include "gct/errors.hpp"
#include "gct/textio.hpp"

namespace gct {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("config key '" + key + "': cannot parse number '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("config key '" + key + "': cannot parse integer '" + value + "'");
    return v;
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    return static_cast<std::size_t>(parse_u64(key, value));
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config key '" + key + "': expected true/false, got '" + value + "'");
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& tok : split_on(value, ',')) out.push_back(parse_double(key, trim(tok)));
    return out;
}

// Operating points are written `pressure:solids` pairs, comma separated,
// e.g. `6:10,6:20,9:10`.
std::vector<std::pair<double, double>> parse_points(const std::string& key,
                                                    const std::string& value) {
    std::vector<std::pair<double, double>> out;
    for (const auto& tok : split_on(value, ',')) {
        const auto parts = split_on(trim(tok), ':');
        if (parts.size() != 2)
            throw ConfigError("config key '" + key + "': expected pressure:solids pairs");
        out.emplace_back(parse_double(key, trim(parts[0])), parse_double(key, trim(parts[1])));
    }
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += compact(v[i]);
    }
    return out;
}

std::string join_points(const std::vector<std::pair<double, double>>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += compact(v[i].first);
        out += ':';
        out += compact(v[i].second);
    }
    return out;
}

}  // namespace

void AppConfig::finalize() {
    sonfis.som_train = som;
    sonfis.nfis_train = nfis;
    sorst.som_train = som;
}

AppConfig default_app_config() {
    AppConfig cfg;
    cfg.finalize();
    return cfg;
}

namespace {

using Setter = std::function<void(AppConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& key_table() {
    static const std::map<std::string, Setter> table = {
        {"sim.feed_d63", [](AppConfig& c, const std::string& k, const std::string& v) { c.sim.feed_d63 = parse_double(k, v); }},
        {"sim.feed_n", [](AppConfig& c, const std::string& k, const std::string& v) { c.sim.feed_n = parse_double(k, v); }},
        {"sim.d50_base", [](AppConfig& c, const std::string& k, const std::string& v) { c.sim.d50_base = parse_double(k, v); }},
        {"sim.pressure_exp", [](AppConfig& c, const std::string& k, const std::string& v) { c.sim.pressure_exp = parse_double(k, v); }},
        {"sim.solids_coef", [](AppConfig& c, const std::string& k, const std::string& v) { c.sim.solids_coef = parse_double(k, v); }},
        {"sim.sharpness_m", [](AppConfig& c, const std::string& k, const std::string& v) { c.sim.sharpness_m = parse_double(k, v); }},
        {"sim.bypass_rf", [](AppConfig& c, const std::string& k, const std::string& v) { c.sim.bypass_rf = parse_double(k, v); }},
        {"sim.size_fractions", [](AppConfig& c, const std::string& k, const std::string& v) { c.sim.size_fractions = parse_double_list(k, v); }},
        {"sim.operating_points", [](AppConfig& c, const std::string& k, const std::string& v) { c.sim.operating_points = parse_points(k, v); }},
        {"sim.noise_sd", [](AppConfig& c, const std::string& k, const std::string& v) { c.sim.noise_sd = parse_double(k, v); }},
        {"sim.seed", [](AppConfig& c, const std::string& k, const std::string& v) { c.sim.seed = parse_u64(k, v); }},
        {"split.n_train", [](AppConfig& c, const std::string& k, const std::string& v) { c.split.n_train = parse_size(k, v); }},
        {"split.n_test", [](AppConfig& c, const std::string& k, const std::string& v) { c.split.n_test = parse_size(k, v); }},
        {"split.seed", [](AppConfig& c, const std::string& k, const std::string& v) { c.split.seed = parse_u64(k, v); }},
        {"split.stratify", [](AppConfig& c, const std::string& k, const std::string& v) { c.split.stratify = parse_bool(k, v); }},
        {"som.epochs", [](AppConfig& c, const std::string& k, const std::string& v) { c.som.epochs = parse_size(k, v); }},
        {"som.lr_initial", [](AppConfig& c, const std::string& k, const std::string& v) { c.som.lr_initial = parse_double(k, v); }},
        {"som.lr_final", [](AppConfig& c, const std::string& k, const std::string& v) { c.som.lr_final = parse_double(k, v); }},
        {"som.sigma_initial", [](AppConfig& c, const std::string& k, const std::string& v) { c.som.sigma_initial = parse_double(k, v); }},
        {"som.sigma_final", [](AppConfig& c, const std::string& k, const std::string& v) { c.som.sigma_final = parse_double(k, v); }},
        {"som.seed", [](AppConfig& c, const std::string& k, const std::string& v) { c.som.seed = parse_u64(k, v); }},
        {"nfis.epochs", [](AppConfig& c, const std::string& k, const std::string& v) { c.nfis.epochs = parse_size(k, v); }},
        {"nfis.learn_rate", [](AppConfig& c, const std::string& k, const std::string& v) { c.nfis.learn_rate = parse_double(k, v); }},
        {"nfis.seed", [](AppConfig& c, const std::string& k, const std::string& v) { c.nfis.seed = parse_u64(k, v); }},
        {"sonfis.iterations_per_rule_count", [](AppConfig& c, const std::string& k, const std::string& v) { c.sonfis.iterations_per_rule_count = parse_size(k, v); }},
        {"sonfis.max_rules", [](AppConfig& c, const std::string& k, const std::string& v) { c.sonfis.max_rules = parse_size(k, v); }},
        {"sonfis.min_rules", [](AppConfig& c, const std::string& k, const std::string& v) { c.sonfis.min_rules = parse_size(k, v); }},
        {"sonfis.neuron_min", [](AppConfig& c, const std::string& k, const std::string& v) { c.sonfis.neuron_range.first = parse_size(k, v); }},
        {"sonfis.neuron_max", [](AppConfig& c, const std::string& k, const std::string& v) { c.sonfis.neuron_range.second = parse_size(k, v); }},
        {"sonfis.growth_mode",
         [](AppConfig& c, const std::string& k, const std::string& v) {
             if (v == "random") c.sonfis.growth_mode = GrowthMode::Random;
             else if (v == "regular") c.sonfis.growth_mode = GrowthMode::Regular;
             else throw ConfigError("config key '" + k + "': expected random or regular");
         }},
        {"sonfis.error_level", [](AppConfig& c, const std::string& k, const std::string& v) { c.sonfis.error_level = parse_double(k, v); }},
        {"sonfis.seed", [](AppConfig& c, const std::string& k, const std::string& v) { c.sonfis.seed = parse_u64(k, v); }},
        {"sorst.n_structures", [](AppConfig& c, const std::string& k, const std::string& v) { c.sorst.n_structures = parse_size(k, v); }},
        {"sorst.neuron_min", [](AppConfig& c, const std::string& k, const std::string& v) { c.sorst.neuron_range.first = parse_size(k, v); }},
        {"sorst.neuron_max", [](AppConfig& c, const std::string& k, const std::string& v) { c.sorst.neuron_range.second = parse_size(k, v); }},
        {"sorst.bins_per_attribute", [](AppConfig& c, const std::string& k, const std::string& v) { c.sorst.bins_per_attribute = parse_size(k, v); }},
        {"sorst.decision_bins", [](AppConfig& c, const std::string& k, const std::string& v) { c.sorst.decision_bins = parse_size(k, v); }},
        {"sorst.strength_init", [](AppConfig& c, const std::string& k, const std::string& v) { c.sorst.strength_init = parse_double(k, v); }},
        {"sorst.gain", [](AppConfig& c, const std::string& k, const std::string& v) { c.sorst.gain = parse_double(k, v); }},
        {"sorst.target_em", [](AppConfig& c, const std::string& k, const std::string& v) { c.sorst.target_em = parse_double(k, v); }},
        {"sorst.max_adapt_steps", [](AppConfig& c, const std::string& k, const std::string& v) { c.sorst.max_adapt_steps = parse_size(k, v); }},
        {"sorst.seed", [](AppConfig& c, const std::string& k, const std::string& v) { c.sorst.seed = parse_u64(k, v); }},
        {"sorst.granulate_objects",
         [](AppConfig& c, const std::string& k, const std::string& v) {
             if (v == "bmu_map") c.sorst.granulate_objects = GranulateObjects::BmuMap;
             else if (v == "codebook_only") c.sorst.granulate_objects = GranulateObjects::CodebookOnly;
             else throw ConfigError("config key '" + k + "': expected bmu_map or codebook_only");
         }},
    };
    return table;
}

}  // namespace

AppConfig load_app_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    AppConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& table = key_table();
        const auto it = table.find(key);
        if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
        it->second(cfg, key, value);
    }
    cfg.finalize();
    return cfg;
}

std::vector<std::string> AppConfig::resolved_lines() const {
    std::vector<std::string> out;
    auto add = [&](const std::string& key, const std::string& value) {
        out.push_back(key + "=" + value);
    };
    add("sim.feed_d63", compact(sim.feed_d63));
    add("sim.feed_n", compact(sim.feed_n));
    add("sim.d50_base", compact(sim.d50_base));
    add("sim.pressure_exp", compact(sim.pressure_exp));
    add("sim.solids_coef", compact(sim.solids_coef));
    add("sim.sharpness_m", compact(sim.sharpness_m));
    add("sim.bypass_rf", compact(sim.bypass_rf));
    add("sim.size_fractions", join_doubles(sim.size_fractions));
    add("sim.operating_points", join_points(sim.operating_points));
    add("sim.noise_sd", compact(sim.noise_sd));
    add("sim.seed", std::to_string(sim.seed));
    add("split.n_train", std::to_string(split.n_train));
    add("split.n_test", std::to_string(split.n_test));
    add("split.seed", std::to_string(split.seed));
    add("split.stratify", split.stratify ? "true" : "false");
    add("som.epochs", std::to_string(som.epochs));
    add("som.lr_initial", compact(som.lr_initial));
    add("som.lr_final", compact(som.lr_final));
    add("som.sigma_initial", compact(som.sigma_initial));
    add("som.sigma_final", compact(som.sigma_final));
    add("som.seed", std::to_string(som.seed));
    add("nfis.epochs", std::to_string(nfis.epochs));
    add("nfis.learn_rate", compact(nfis.learn_rate));
    add("nfis.seed", std::to_string(nfis.seed));
    add("sonfis.iterations_per_rule_count", std::to_string(sonfis.iterations_per_rule_count));
    add("sonfis.max_rules", std::to_string(sonfis.max_rules));
    add("sonfis.min_rules", std::to_string(sonfis.min_rules));
    add("sonfis.neuron_min", std::to_string(sonfis.neuron_range.first));
    add("sonfis.neuron_max", std::to_string(sonfis.neuron_range.second));
    add("sonfis.growth_mode", sonfis.growth_mode == GrowthMode::Random ? "random" : "regular");
    add("sonfis.error_level", compact(sonfis.error_level));
    add("sonfis.seed", std::to_string(sonfis.seed));
    add("sorst.n_structures", std::to_string(sorst.n_structures));
    add("sorst.neuron_min", std::to_string(sorst.neuron_range.first));
    add("sorst.neuron_max", std::to_string(sorst.neuron_range.second));
    add("sorst.bins_per_attribute", std::to_string(sorst.bins_per_attribute));
    add("sorst.decision_bins", std::to_string(sorst.decision_bins));
    add("sorst.strength_init", compact(sorst.strength_init));
    add("sorst.gain", compact(sorst.gain));
    add("sorst.target_em", compact(sorst.target_em));
    add("sorst.max_adapt_steps", std::to_string(sorst.max_adapt_steps));
    add("sorst.seed", std::to_string(sorst.seed));
    add("sorst.granulate_objects",
        sorst.granulate_objects == GranulateObjects::BmuMap ? "bmu_map" : "codebook_only");
    return out;
}

}  // namespace gct
