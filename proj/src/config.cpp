#include "gradcontact/config.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gradcontact/errors.hpp"

namespace gradcontact {

namespace pt = boost::property_tree;

namespace {

pt::ptree::path_type key_path(const std::string& key) {
    const auto dot = key.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == key.size())
        throw ConfigError(key, "expected section.key");
    return pt::ptree::path_type(key.substr(0, dot) + '/' + key.substr(dot + 1), '/');
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (trim(text.substr(used)).empty() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(key, "not a finite number: '" + text + "'");
}

long parse_integer(const std::string& key, const std::string& text) {
    const double v = parse_double(key, text);
    if (v != std::floor(v)) throw ConfigError(key, "not an integer: '" + text + "'");
    return static_cast<long>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(key, "not a boolean: '" + text + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError(key, "empty sweep value list");
    return out;
}

std::string get(const pt::ptree& tree, const std::string& key) {
    const auto v = tree.get_optional<std::string>(key_path(key));
    if (!v) throw ConfigError(key, "missing");
    return trim(*v);
}

double get_double(const pt::ptree& tree, const std::string& key) { return parse_double(key, get(tree, key)); }

void require(bool ok, const std::string& key, const std::string& message) {
    if (!ok) throw ConfigError(key, message);
}

struct PresetDef {
    PresetInfo info;
    std::vector<std::pair<std::string, std::string>> settings;
};

const std::vector<PresetDef>& preset_defs() {
    static const std::vector<PresetDef> defs = [] {
        std::vector<PresetDef> d;
        auto hertz_pair = [&](const std::string& name, const std::string& a1, const std::string& a2,
                              const std::string& what) {
            d.push_back({{name, what},
                         {{"body1.alpha", a1}, {"body2.alpha", a2}, {"output.fields", "true"}, {"output.tag", name}}});
        };
        d.push_back({{"fig2a", "Hertz, f = x^2: b versus alpha2 for alpha1 = 0.5, 0.7, 0.9"},
                     {{"sweep.body1.alpha", "0.5, 0.7, 0.9"},
                      {"sweep.body2.alpha", "0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45"},
                      {"output.tag", "fig2a"}}});
        d.push_back({{"fig2b", "Hertz, f = x^4: b versus alpha2 for alpha1 = 0.5, 0.7, 0.9"},
                     {{"profile.Q0", "0"},
                      {"profile.Q1", "1"},
                      {"sweep.body1.alpha", "0.5, 0.7, 0.9"},
                      {"sweep.body2.alpha", "0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45"},
                      {"output.tag", "fig2b"}}});
        d.push_back({{"fig5", "Hertz pressure traces, alpha2 = 0.1, alpha1 = 0.3, 0.7, 0.9"},
                     {{"body2.alpha", "0.1"},
                      {"sweep.body1.alpha", "0.3, 0.7, 0.9"},
                      {"output.fields", "true"},
                      {"output.tag", "fig5"}}});
        for (const char* a1 : {"0.3", "0.7", "0.9"})
            hertz_pair(std::string("fig5-a1-") + a1, a1, "0.1",
                       std::string("Hertz single solve, alpha1 = ") + a1 + ", alpha2 = 0.1");
        for (const char* a1 : {"0.5", "0.7", "0.9"}) {
            const std::string a2 = a1 == std::string("0.5") ? "0.25" : a1 == std::string("0.7") ? "0.35" : "0.45";
            hertz_pair(std::string("fig7-a1-") + a1, a1, a2,
                       std::string("Hertz with displacements, alpha1 = ") + a1 + ", alpha2 = alpha1/2");
        }
        d.push_back({{"fig8", "Equal exponents, f = x^2: b and delta versus alpha"},
                     {{"body2.alpha_ratio", "1"},
                      {"sweep.body1.alpha", "0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9"},
                      {"output.tag", "fig8"}}});
        hertz_pair("fig8-alpha-0.3", "0.3", "0.3", "Equal exponents alpha = 0.3 with pressure and displacement");
        d.push_back({{"fig9a", "JKR, equal exponents alpha = 0.5: b versus gamma_s"},
                     {{"body1.alpha", "0.5"},
                      {"body2.alpha", "0.5"},
                      {"model.type", "jkr"},
                      {"sweep.model.gamma_s", "0, 0.5, 1, 2, 5"},
                      {"output.tag", "fig9a"}}});
        d.push_back({{"fig11a", "JKR, alpha2 = alpha1/2: b versus gamma_s for alpha1 = 0.5, 0.7, 0.9"},
                     {{"model.type", "jkr"},
                      {"body2.alpha_ratio", "0.5"},
                      {"sweep.body1.alpha", "0.5, 0.7, 0.9"},
                      {"sweep.model.gamma_s", "0, 0.5, 1, 2, 5"},
                      {"output.tag", "fig11a"}}});
        const std::vector<std::pair<std::string, std::string>> jkr_ref = {{"body1.alpha", "0.5"},
                                                                          {"body2.alpha", "0.25"},
                                                                          {"model.type", "jkr"},
                                                                          {"model.gamma_s", "1"},
                                                                          {"numerics.fd_epsilon", "1e-4"},
                                                                          {"output.fields", "true"}};
        auto with_tag = [](auto s, const std::string& tag) {
            s.emplace_back("output.tag", tag);
            return s;
        };
        d.push_back({{"jkr-ref", "JKR reference point alpha1 = 0.5, alpha2 = 0.25, gamma_s = 1"},
                     with_tag(jkr_ref, "jkr-ref")});
        d.push_back({{"jkr-0.5-0.25", "Same as jkr-ref"}, with_tag(jkr_ref, "jkr-0.5-0.25")});
        return d;
    }();
    return defs;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "body1.e",          "body1.alpha",           "body1.nu",           "body2.e",
        "body2.alpha",      "body2.nu",              "body2.alpha_ratio",  "profile.Q0",
        "profile.Q1",       "load.P",                "model.type",         "model.gamma_s",
        "numerics.N",       "numerics.tail_tol",     "numerics.term_cap",  "numerics.equal_threshold",
        "numerics.root_tol", "numerics.fd_epsilon",  "numerics.rcond_min", "numerics.truncation_warn",
        "output.fields",    "output.pressure_samples", "output.displacement_samples",
        "output.displacement_xmax", "output.tag"};
    return keys;
}

pt::ptree default_tree() {
    pt::ptree t;
    const SolverControls ctl;
    auto put = [&](const std::string& k, const std::string& v) { t.put(key_path(k), v); };
    auto num = [](double v) {
        std::ostringstream os;
        os.precision(12);
        os << v;
        return os.str();
    };
    put("body1.e", "1");
    put("body1.alpha", "0.7");
    put("body1.nu", "0.3");
    put("body2.e", "1");
    put("body2.alpha", "0.1");
    put("body2.nu", "0.3");
    put("body2.alpha_ratio", "-");
    put("profile.Q0", "1");
    put("profile.Q1", "0");
    put("load.P", "1");
    put("model.type", "hertz");
    put("model.gamma_s", "0");
    put("numerics.N", std::to_string(ctl.N));
    put("numerics.tail_tol", num(ctl.kernel.tail_tol));
    put("numerics.term_cap", std::to_string(ctl.kernel.term_cap));
    put("numerics.equal_threshold", num(ctl.kernel.equal_threshold));
    put("numerics.root_tol", num(ctl.root_tol));
    put("numerics.fd_epsilon", num(ctl.fd_epsilon));
    put("numerics.rcond_min", num(ctl.rcond_min));
    put("numerics.truncation_warn", num(ctl.truncation_warn));
    const OutputControls out;
    put("output.fields", out.fields ? "true" : "false");
    put("output.pressure_samples", std::to_string(out.pressure_samples));
    put("output.displacement_samples", std::to_string(out.displacement_samples));
    put("output.displacement_xmax", num(out.displacement_xmax));
    put("output.tag", "run");
    return t;
}

void set_key(pt::ptree& tree, const std::string& key, const std::string& value) {
    const bool sweep = key.rfind("sweep.", 0) == 0;
    const std::string target = sweep ? key.substr(6) : key;
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), target) == keys.end())
        throw ConfigError(key, sweep ? "unknown sweep parameter" : "unknown key");
    if (sweep) {
        tree.put(pt::ptree::path_type("sweep/" + target, '/'), trim(value));
        return;
    }
    tree.put(key_path(key), trim(value));
}

pt::ptree read_config_file(const std::string& path) {
    pt::ptree file;
    try {
        pt::read_ini(path, file);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("config", e.what());
    }
    pt::ptree tree = default_tree();
    for (const auto& [section, body] : file) {
        if (body.empty()) throw ConfigError(section, "keys must live inside a [section]");
        for (const auto& [key, value] : body) set_key(tree, section + "." + key, value.data());
    }
    return tree;
}

void apply_override(pt::ptree& tree, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError(assignment, "expected key=value");
    set_key(tree, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

RunConfig load_config(const pt::ptree& tree) {
    RunConfig cfg;
    cfg.tree = tree;
    auto& p = cfg.problem;
    p.body1 = {get_double(tree, "body1.e"), get_double(tree, "body1.alpha"), get_double(tree, "body1.nu")};
    p.body2 = {get_double(tree, "body2.e"), get_double(tree, "body2.alpha"), get_double(tree, "body2.nu")};
    const std::string ratio = get(tree, "body2.alpha_ratio");
    if (ratio != "-" && !ratio.empty()) {
        const double r = parse_double("body2.alpha_ratio", ratio);
        require(r > 0 && r <= 1, "body2.alpha_ratio", "must be in (0, 1]");
        p.body2.alpha = r * p.body1.alpha;
    }
    p.profile = {get_double(tree, "profile.Q0"), get_double(tree, "profile.Q1")};
    p.load = get_double(tree, "load.P");
    const std::string model = get(tree, "model.type");
    require(model == "hertz" || model == "jkr", "model.type", "must be 'hertz' or 'jkr'");
    p.model = model == "hertz" ? ContactModel::hertz : ContactModel::jkr;
    p.gamma_s = get_double(tree, "model.gamma_s");

    auto& c = p.controls;
    c.N = static_cast<int>(parse_integer("numerics.N", get(tree, "numerics.N")));
    c.kernel.tail_tol = get_double(tree, "numerics.tail_tol");
    c.kernel.term_cap = parse_integer("numerics.term_cap", get(tree, "numerics.term_cap"));
    c.kernel.equal_threshold = get_double(tree, "numerics.equal_threshold");
    c.root_tol = get_double(tree, "numerics.root_tol");
    c.fd_epsilon = get_double(tree, "numerics.fd_epsilon");
    c.rcond_min = get_double(tree, "numerics.rcond_min");
    c.truncation_warn = get_double(tree, "numerics.truncation_warn");

    // Range checks with field-level messages.
    for (const auto& [name, m] : {std::pair{"body1", p.body1}, std::pair{"body2", p.body2}}) {
        const std::string s(name);
        require(m.e > 0, s + ".e", "must be > 0");
        require(m.alpha > 0 && m.alpha < 1, s + ".alpha", "must be in (0, 1)");
        require(m.nu > 0 && m.nu <= 0.5, s + ".nu", "must be in (0, 0.5]");
        require(m.q_squared() > 0, s + ".nu", "gives q^2 <= 0 for this alpha");
    }
    require(p.profile.Q0 >= 0, "profile.Q0", "must be >= 0");
    require(p.profile.Q1 >= 0, "profile.Q1", "must be >= 0");
    require(p.profile.Q0 + p.profile.Q1 > 0, "profile.Q0", "Q0 + Q1 must be > 0");
    require(p.load > 0, "load.P", "must be > 0");
    require(p.gamma_s >= 0, "model.gamma_s", "must be >= 0");
    require(c.N >= 1 && c.N <= 512, "numerics.N", "must be in [1, 512]");
    require(c.kernel.tail_tol > 0, "numerics.tail_tol", "must be > 0");
    require(c.kernel.term_cap >= 64, "numerics.term_cap", "must be >= 64");
    require(c.kernel.equal_threshold >= 0, "numerics.equal_threshold", "must be >= 0");
    require(c.root_tol > 0 && c.root_tol < 1e-2, "numerics.root_tol", "must be in (0, 1e-2)");
    require(c.fd_epsilon > 0, "numerics.fd_epsilon", "must be > 0");
    require(c.rcond_min >= 0, "numerics.rcond_min", "must be >= 0");
    require(c.truncation_warn > 0, "numerics.truncation_warn", "must be > 0");

    auto& o = cfg.output;
    o.fields = parse_bool("output.fields", get(tree, "output.fields"));
    o.pressure_samples = static_cast<int>(parse_integer("output.pressure_samples", get(tree, "output.pressure_samples")));
    o.displacement_samples =
        static_cast<int>(parse_integer("output.displacement_samples", get(tree, "output.displacement_samples")));
    o.displacement_xmax = get_double(tree, "output.displacement_xmax");
    o.tag = get(tree, "output.tag");
    require(o.pressure_samples >= 3, "output.pressure_samples", "must be >= 3");
    require(o.displacement_samples >= 2, "output.displacement_samples", "must be >= 2");
    require(o.displacement_xmax > 0, "output.displacement_xmax", "must be > 0");
    require(!o.tag.empty() && o.tag.find_first_of("/\\ ") == std::string::npos, "output.tag",
            "must be a non-empty name without spaces or slashes");

    if (const auto sweep = tree.get_child_optional("sweep")) {
        for (const auto& [key, value] : *sweep) {
            const std::string v = trim(value.data());
            if (v == "-" || v.empty()) continue;  // axis disabled
            cfg.axes.push_back({key, parse_list("sweep." + key, v)});
        }
    }
    return cfg;
}

std::string describe_config(const pt::ptree& tree) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [section, body] : tree)
        for (const auto& [key, value] : body) {
            os << (first ? "" : "; ") << section << '.' << key << '=' << value.data();
            first = false;
        }
    return os.str();
}

const std::vector<PresetInfo>& list_presets() {
    static const std::vector<PresetInfo> infos = [] {
        std::vector<PresetInfo> v;
        for (const auto& d : preset_defs()) v.push_back(d.info);
        return v;
    }();
    return infos;
}

pt::ptree preset_tree(const std::string& name) {
    for (const auto& d : preset_defs()) {
        if (d.info.name != name) continue;
        pt::ptree t = default_tree();
        for (const auto& [k, v] : d.settings) set_key(t, k, v);
        return t;
    }
    throw ConfigError("preset", "unknown preset '" + name + "'");
}

}  // namespace gradcontact
