#include "rsm/scenario_file.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "rsm/error.hpp"

namespace rsm::config {

namespace {

json stage_json(std::string name, int start, int end, double commission, double discount,
                double marketing_cost) {
    return json{{"name", std::move(name)},
                {"start_day", start},
                {"end_day", end},
                {"commission", commission},
                {"discount_rate", discount},
                {"marketing", marketing_cost > 0.0},
                {"marketing_cost_per_agent", marketing_cost}};
}

// Keys a stage object may carry, with defaults for the optional ones.
// Required keys map to null.
const json& stage_template() {
    static const json t = {{"name", nullptr},
                           {"start_day", nullptr},
                           {"end_day", nullptr},
                           {"commission", 0.0},
                           {"discount_rate", 0.0},
                           {"marketing", false},
                           {"marketing_cost_per_agent", 0.0},
                           {"per_km_fare", nullptr},
                           {"min_fare", nullptr}};
    return t;
}

const char* kind_name(const json& j) {
    if (j.is_boolean()) return "boolean";
    if (j.is_number()) return "number";
    if (j.is_string()) return "string";
    if (j.is_array()) return "array";
    if (j.is_object()) return "object";
    return "null";
}

bool compatible(const json& def, const json& value) {
    if (def.is_null()) return value.is_null() || value.is_string() || value.is_number();
    if (def.is_number()) return value.is_number();
    return std::string(kind_name(def)) == kind_name(value);
}

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void merge_object(json& target, const json& user, const std::string& path,
                  std::vector<std::string>& problems);

json merge_stage(const json& user, const std::string& path, std::vector<std::string>& problems) {
    json out = stage_template();
    if (!user.is_object()) {
        problems.push_back(path + ": expected an object");
        return out;
    }
    for (auto it = user.begin(); it != user.end(); ++it) {
        const auto key_path = join(path, it.key());
        if (!out.contains(it.key())) {
            problems.push_back(key_path + ": unknown key");
            continue;
        }
        out[it.key()] = it.value();
    }
    for (const char* required : {"name", "start_day", "end_day"}) {
        if (!user.contains(required)) problems.push_back(join(path, required) + ": missing required key");
    }
    return out;
}

void merge_value(json& target, const json& value, const std::string& path,
                 std::vector<std::string>& problems) {
    if (path == "platform.stages") {
        if (!value.is_array()) {
            problems.push_back(path + ": expected an array of stages");
            return;
        }
        json stages = json::array();
        for (std::size_t i = 0; i < value.size(); ++i) {
            stages.push_back(merge_stage(value[i], path + "." + std::to_string(i), problems));
        }
        target = std::move(stages);
        return;
    }
    if (target.is_object()) {
        if (!value.is_object()) {
            problems.push_back(path + ": expected an object, got " + kind_name(value));
            return;
        }
        merge_object(target, value, path, problems);
        return;
    }
    if (!compatible(target, value)) {
        problems.push_back(path + ": expected " + (target.is_null() ? "a path" : kind_name(target)) +
                           ", got " + kind_name(value));
        return;
    }
    target = value;
}

void merge_object(json& target, const json& user, const std::string& path,
                  std::vector<std::string>& problems) {
    for (auto it = user.begin(); it != user.end(); ++it) {
        const auto key_path = join(path, it.key());
        if (!target.contains(it.key())) {
            problems.push_back(key_path + ": unknown key");
            continue;
        }
        merge_value(target[it.key()], it.value(), key_path, problems);
    }
}

json parse_override_value(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        return json(text);
    }
}

void apply_override(json& config, const std::string& assignment,
                    std::vector<std::string>& problems) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        problems.push_back("override '" + assignment + "': expected key=value");
        return;
    }
    const auto key = assignment.substr(0, eq);
    const auto value = parse_override_value(assignment.substr(eq + 1));

    json* node = &config;
    std::string path;
    std::stringstream parts(key);
    std::string part;
    std::vector<std::string> segments;
    while (std::getline(parts, part, '.')) segments.push_back(part);
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& seg = segments[i];
        path = join(path, seg);
        if (node->is_array()) {
            std::size_t index = 0;
            try {
                index = std::stoul(seg);
            } catch (...) {
                problems.push_back("override '" + key + "': " + path + " is not an index");
                return;
            }
            if (index >= node->size()) {
                problems.push_back("override '" + key + "': " + path + " out of range");
                return;
            }
            node = &(*node)[index];
        } else if (node->is_object() && node->contains(seg)) {
            node = &(*node)[seg];
        } else {
            problems.push_back("override '" + key + "': " + path + ": unknown key");
            return;
        }
    }
    if (!compatible(*node, value) && !(node->is_null() && value.is_null())) {
        problems.push_back("override '" + key + "': expected " + kind_name(*node) + ", got " +
                           kind_name(value));
        return;
    }
    *node = value;
}

void absolutize(json& node, const std::filesystem::path& base_dir) {
    if (node.is_string()) {
        std::filesystem::path p = node.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        node = p.lexically_normal().string();
    }
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ValidationError("cannot read input file " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <typename T>
T get(const json& j, const char* key) {
    return j.at(key).get<T>();
}

PerComponent<double> components(const json& j) {
    return {j.at("experience").get<double>(), j.at("wom").get<double>(),
            j.at("marketing").get<double>()};
}

}  // namespace

const json& defaults() {
    static const json d = [] {
        json stages = json::array({
            stage_json("Kick-off", 0, 25, 0.10, 0.0, 0.0),
            stage_json("Discount", 25, 50, 0.10, 0.40, 0.0),
            stage_json("Launch", 50, 100, 0.10, 0.40, 5.0),
            stage_json("Growth", 100, 200, 0.10, 0.40, 0.0),
            stage_json("Maturity", 200, 300, 0.10, 0.0, 0.0),
            stage_json("Greed", 300, 400, 0.50, 0.0, 0.0),
        });
        for (auto& s : stages) {
            s["per_km_fare"] = nullptr;
            s["min_fare"] = nullptr;
        }
        json components = {{"experience", 1.0}, {"wom", 1.0}, {"marketing", 1.0}};
        return json{
            {"network",
             {{"grid", {{"n", 12}, {"spacing_m", 900.0}}},
              {"nodes_file", nullptr},
              {"edges_file", nullptr},
              {"speed_kmh", 36.0}}},
            {"population",
             {{"seed", nullptr},
              {"travelers_file", nullptr},
              {"drivers_file", nullptr},
              {"demand",
               {{"n", 200},
                {"pt_factor", 1.8},
                {"pt_overhead_s", 600.0},
                {"min_trip_distance_m", 2000.0}}},
              {"supply", {{"n", 20}, {"reservation_wage", 10.63}, {"operating_cost_km", 0.25}}}}},
            {"adaptation",
             {{"alpha", components},
              {"beta", components},
              {"cu_max_scale", 8.0},
              {"u_e_init", 0.02},
              {"mu", 5.0},
              {"asc", 0.0},
              {"alternative_utility", 0.5},
              {"weights", {{"experience", 0.80}, {"wom", 0.18}, {"marketing", 0.02}}},
              {"p_marketing", 0.1},
              {"p_wom", 0.1},
              {"marketing_every_day", false},
              {"wait_weight", 1.5},
              {"time_value_scale", 1.0},
              {"value_of_time", 10.63}}},
            {"platform", {{"per_km_fare", 1.2}, {"min_fare", 2.0}, {"stages", stages}}},
            {"run",
             {{"horizon", 400},
              {"day_length_s", 14400.0},
              {"patience_s", 600.0},
              {"seed", 42},
              {"replications", 1},
              {"output_dir", nullptr},
              {"trajectories", false}}},
        };
    }();
    return d;
}

json resolve(const json& document, const std::vector<std::string>& overrides,
             const std::filesystem::path& base_dir) {
    std::vector<std::string> problems;
    json config = defaults();
    const json* user = &document;
    if (document.is_object() && document.contains("scenario") && document.contains("input_hash")) {
        user = &document.at("scenario");  // a run manifest
    }
    if (!user->is_object()) {
        throw ValidationError("scenario document must be a JSON object");
    }
    merge_object(config, *user, "", problems);
    for (const auto& o : overrides) apply_override(config, o, problems);
    if (!problems.empty()) throw ValidationError(std::move(problems));

    absolutize(config["network"]["nodes_file"], base_dir);
    absolutize(config["network"]["edges_file"], base_dir);
    absolutize(config["population"]["travelers_file"], base_dir);
    absolutize(config["population"]["drivers_file"], base_dir);
    return config;
}

json load(const std::filesystem::path& scenario_file, const std::vector<std::string>& overrides) {
    std::ifstream in(scenario_file);
    if (!in) throw ValidationError("cannot open scenario file " + scenario_file.string());
    json document;
    try {
        document = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(scenario_file.string() + ": " + e.what());
    }
    auto base = std::filesystem::absolute(scenario_file).parent_path();
    return resolve(document, overrides, base);
}

StageSchedule schedule(const json& resolved) {
    const auto& platform = resolved.at("platform");
    std::vector<Stage> stages;
    for (const auto& s : platform.at("stages")) {
        Stage stage;
        stage.name = get<std::string>(s, "name");
        stage.start_day = get<int>(s, "start_day");
        stage.end_day = get<int>(s, "end_day");
        stage.levers.commission = get<double>(s, "commission");
        stage.levers.discount_rate = get<double>(s, "discount_rate");
        stage.levers.marketing_active = get<bool>(s, "marketing");
        stage.levers.marketing_cost_per_agent = get<double>(s, "marketing_cost_per_agent");
        stage.levers.per_km_fare =
            s.at("per_km_fare").is_null() ? get<double>(platform, "per_km_fare") : get<double>(s, "per_km_fare");
        stage.levers.min_fare =
            s.at("min_fare").is_null() ? get<double>(platform, "min_fare") : get<double>(s, "min_fare");
        stages.push_back(std::move(stage));
    }
    return StageSchedule(std::move(stages));
}

Scenario build(const json& resolved) {
    std::vector<std::string> problems;
    auto section = [&](const std::string& name, auto&& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            for (const auto& p : e.problems()) problems.push_back(name + ": " + p);
        } catch (const nlohmann::json::exception& e) {
            problems.push_back(name + ": " + e.what());
        } catch (const Error& e) {
            problems.push_back(name + ": " + e.what());
        }
    };

    Scenario sc;
    const auto& run = resolved.at("run");
    const auto& ad = resolved.at("adaptation");

    section("run", [&] {
        sc.horizon = get<int>(run, "horizon");
        sc.day.day_length_s = get<double>(run, "day_length_s");
        sc.day.patience_s = get<double>(run, "patience_s");
        sc.seed = get<std::uint64_t>(run, "seed");
        sc.replications = get<int>(run, "replications");
        sc.record_trajectories = get<bool>(run, "trajectories");
    });
    section("adaptation", [&] {
        auto& l = sc.adaptation.learning;
        l.alpha = components(ad.at("alpha"));
        l.beta = components(ad.at("beta"));
        l.cu_max_scale = get<double>(ad, "cu_max_scale");
        l.u_e_init = get<double>(ad, "u_e_init");
        auto& c = sc.adaptation.choice;
        c.mu = get<double>(ad, "mu");
        c.asc = get<double>(ad, "asc");
        c.alternative_utility = get<double>(ad, "alternative_utility");
        c.weights = components(ad.at("weights"));
        auto& d = sc.adaptation.diffusion;
        d.p_marketing = get<double>(ad, "p_marketing");
        d.p_wom = get<double>(ad, "p_wom");
        d.marketing_every_day = get<bool>(ad, "marketing_every_day");
        auto& cost = sc.adaptation.cost;
        cost.wait_weight = get<double>(ad, "wait_weight");
        cost.time_value_scale = get<double>(ad, "time_value_scale");
        cost.value_of_time = get<double>(ad, "value_of_time");
        l.validate();
    });
    section("platform", [&] { sc.schedule = schedule(resolved); });

    const auto& net = resolved.at("network");
    section("network", [&] {
        const double speed = get<double>(net, "speed_kmh");
        const bool nodes_given = !net.at("nodes_file").is_null();
        const bool edges_given = !net.at("edges_file").is_null();
        if (nodes_given != edges_given) {
            throw ValidationError("nodes_file and edges_file must be given together");
        }
        if (nodes_given) {
            sc.graph = std::make_shared<NetworkGraph>(
                load_graph(get<std::string>(net, "nodes_file"), get<std::string>(net, "edges_file"), speed));
        } else {
            const auto& grid = net.at("grid");
            sc.graph = std::make_shared<NetworkGraph>(
                make_grid(get<int>(grid, "n"), get<double>(grid, "spacing_m"), speed));
        }
    });

    const auto& pop = resolved.at("population");
    if (sc.graph && problems.empty()) {
        const std::uint64_t pop_seed =
            pop.at("seed").is_null() ? sc.seed : pop.at("seed").get<std::uint64_t>();
        section("population", [&] {
            if (!pop.at("travelers_file").is_null()) {
                sc.travelers = load_travelers(get<std::string>(pop, "travelers_file"), sc.adaptation.learning);
            } else {
                const auto& d = pop.at("demand");
                DemandParams dp;
                dp.n = get<int>(d, "n");
                dp.day_length_s = sc.day.day_length_s;
                dp.pt_factor = get<double>(d, "pt_factor");
                dp.pt_overhead_s = get<double>(d, "pt_overhead_s");
                dp.min_trip_distance_m = get<double>(d, "min_trip_distance_m");
                sc.travelers = generate_demand(*sc.graph, dp, sc.adaptation.learning, pop_seed);
            }
        });
        section("population", [&] {
            if (!pop.at("drivers_file").is_null()) {
                sc.drivers = load_drivers(get<std::string>(pop, "drivers_file"), sc.adaptation.learning);
            } else {
                const auto& s = pop.at("supply");
                SupplyParams sp;
                sp.n = get<int>(s, "n");
                sp.reservation_wage = get<double>(s, "reservation_wage");
                sp.operating_cost_km = get<double>(s, "operating_cost_km");
                sc.drivers = generate_supply(*sc.graph, sp, sc.adaptation.learning, pop_seed);
            }
        });
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
    sc.validate();
    return sc;
}

std::string input_hash(const json& resolved) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a(h, resolved.dump());
    for (const auto* section : {"network", "population"}) {
        for (const auto& [key, value] : resolved.at(section).items()) {
            if (key.size() > 5 && key.ends_with("_file") && value.is_string()) {
                h = fnv1a(h, read_file(value.get<std::string>()));
            }
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json manifest(const json& resolved) {
    return json{{"tool", "rsmarket"},
                {"seed", resolved.at("run").at("seed")},
                {"replications", resolved.at("run").at("replications")},
                {"input_hash", input_hash(resolved)},
                {"scenario", resolved}};
}

std::string stage_table(const StageSchedule& schedule) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%-11s %-6s %-14s %-22s %-11s %-9s\n", "Day", "Stage",
                  "Name", "Marketing", "Commission", "Discount");
    os << line;
    static const char* roman[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"};
    for (std::size_t i = 0; i < schedule.stages().size(); ++i) {
        const auto& s = schedule.stages()[i];
        char days[32], marketing[40], commission[16], discount[16];
        std::snprintf(days, sizeof days, "%d - %d", s.start_day, s.end_day);
        if (s.levers.marketing_active) {
            std::snprintf(marketing, sizeof marketing, "%g [EUR/agent/day]",
                          s.levers.marketing_cost_per_agent);
        } else {
            std::snprintf(marketing, sizeof marketing, "-");
        }
        std::snprintf(commission, sizeof commission, "%g%%", s.levers.commission * 100.0);
        if (s.levers.discount_rate > 0.0) {
            std::snprintf(discount, sizeof discount, "%g%%", s.levers.discount_rate * 100.0);
        } else {
            std::snprintf(discount, sizeof discount, "-");
        }
        std::snprintf(line, sizeof line, "%-11s %-6s %-14s %-22s %-11s %-9s\n", days,
                      i < 10 ? roman[i] : "?", s.name.c_str(), marketing, commission, discount);
        os << line;
    }
    return os.str();
}

}  // namespace rsm::config
