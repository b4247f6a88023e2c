#pragma once

// Run configuration: INI-style `key = value` files with sections, presets,
// and `section.key=value` overrides.

#include <boost/property_tree/ptree.hpp>

#include <string>
#include <vector>

#include "gradcontact/assembly.hpp"

namespace gradcontact {

struct OutputControls {
    bool fields = false;             // write pressure/displacement traces
    int pressure_samples = 201;      // points on [-b, b]
    int displacement_samples = 200;  // points on [-x_max, -b)
    double displacement_xmax = 10;   // |x| of the outermost displacement sample
    std::string tag;                 // file-name tag; defaults to the preset or "run"
};

struct SweepAxis {
    std::string key;  // a configuration key such as body2.alpha
    std::vector<double> values;
};

struct RunConfig {
    ContactProblem<double> problem;  // as given (not yet normalized)
    OutputControls output;
    std::vector<SweepAxis> axes;
    boost::property_tree::ptree tree;  // effective configuration
};

/// Every accepted `section.key` (sweep axes excluded).
const std::vector<std::string>& config_keys();

/// Defaults shared by every configuration.
boost::property_tree::ptree default_tree();

/// Parse a config file and merge it over the defaults.
boost::property_tree::ptree read_config_file(const std::string& path);

/// Apply `section.key=value`; throws ConfigError for malformed input.
void apply_override(boost::property_tree::ptree& tree, const std::string& assignment);

/// Set a single `section.key` to a value.
void set_key(boost::property_tree::ptree& tree, const std::string& key, const std::string& value);

/// Validate the tree and build the typed configuration.
RunConfig load_config(const boost::property_tree::ptree& tree);

/// Single-line `section.key=value; ...` rendering of the effective config.
std::string describe_config(const boost::property_tree::ptree& tree);

struct PresetInfo {
    std::string name;
    std::string description;
};

const std::vector<PresetInfo>& list_presets();

/// Tree for a named preset (defaults plus the preset's settings).
boost::property_tree::ptree preset_tree(const std::string& name);

}  // namespace gradcontact
