#include "dform/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dform/csv.hpp"
#include "dform/error.hpp"

namespace dform {

namespace {

using Setter = std::function<void(RunConfig&, const std::string&)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Key {
    std::string section;
    std::string name;
    Setter set;
    Getter get;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

template <typename Int>
Int parse_int(const std::string& text) {
    Int value{};
    const std::string t = trim(text);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
        throw std::invalid_argument("not an integer: '" + text + "'");
    return value;
}

bool parse_bool(const std::string& text) {
    const std::string t = trim(text);
    if (t == "true") return true;
    if (t == "false") return false;
    throw std::invalid_argument("expected true or false, got '" + text + "'");
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
    std::vector<T> out;
    const std::string t = trim(text);
    if (t.empty()) return out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse(trim(item)));
    return out;
}

template <typename T, typename Format>
std::string format_list(const std::vector<T>& values, Format format) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += format(values[i]);
    }
    return out;
}

template <typename M>
Key real(const char* section, const char* name, M member) {
    return {section, name, [member](RunConfig& c, const std::string& v) { member(c) = parse_double(trim(v)); },
            [member](const RunConfig& c) { return format_double(member(const_cast<RunConfig&>(c))); }};
}

template <typename Int, typename M>
Key integer(const char* section, const char* name, M member) {
    return {section, name, [member](RunConfig& c, const std::string& v) { member(c) = parse_int<Int>(v); },
            [member](const RunConfig& c) { return std::to_string(member(const_cast<RunConfig&>(c))); }};
}

template <typename M>
Key boolean(const char* section, const char* name, M member) {
    return {section, name, [member](RunConfig& c, const std::string& v) { member(c) = parse_bool(v); },
            [member](const RunConfig& c) { return std::string(member(const_cast<RunConfig&>(c)) ? "true" : "false"); }};
}

const std::vector<Key>& keys() {
    static const std::vector<Key> table = [] {
        std::vector<Key> k;
        k.push_back(real("physics", "nu", [](RunConfig& c) -> double& { return c.physics.nu; }));
        k.push_back(real("physics", "length", [](RunConfig& c) -> double& { return c.physics.length; }));
        k.push_back(integer<int>("physics", "forcing_mode", [](RunConfig& c) -> int& { return c.physics.forcing_mode; }));
        k.push_back(real("physics", "grashof", [](RunConfig& c) -> double& { return c.physics.grashof; }));

        k.push_back(integer<int>("solver", "resolution", [](RunConfig& c) -> int& { return c.solver.resolution; }));
        k.push_back(real("solver", "dt", [](RunConfig& c) -> double& { return c.solver.dt; }));
        k.push_back({"solver", "integrator",
                     [](RunConfig& c, const std::string& v) { c.solver.integrator = parse_integrator(trim(v)); },
                     [](const RunConfig& c) { return std::string(integrator_name(c.solver.integrator)); }});
        k.push_back(real("solver", "spin_up_time", [](RunConfig& c) -> double& { return c.solver.spin_up_time; }));
        k.push_back(boolean("solver", "implicit_modal_feedback",
                            [](RunConfig& c) -> bool& { return c.solver.implicit_modal_feedback; }));
        k.push_back(real("solver", "t_end", [](RunConfig& c) -> double& { return c.solver.t_end; }));

        k.push_back({"interpolant", "kind",
                     [](RunConfig& c, const std::string& v) { c.interpolant.kind = parse_kind(trim(v)); },
                     [](const RunConfig& c) { return std::string(kind_name(c.interpolant.kind)); }});
        k.push_back(integer<int>("interpolant", "resolution", [](RunConfig& c) -> int& { return c.interpolant.resolution; }));
        k.push_back(real("interpolant", "stencil", [](RunConfig& c) -> double& { return c.interpolant.stencil; }));

        k.push_back(real("nudging", "mu", [](RunConfig& c) -> double& { return c.nudging.mu; }));
        k.push_back(real("nudging", "t_sync", [](RunConfig& c) -> double& { return c.nudging.t_sync; }));
        k.push_back(real("nudging", "record_every", [](RunConfig& c) -> double& { return c.nudging.record_every; }));
        k.push_back(real("nudging", "threshold", [](RunConfig& c) -> double& { return c.nudging.threshold; }));
        k.push_back({"nudging", "start",
                     [](RunConfig& c, const std::string& v) {
                         const std::string t = trim(v);
                         if (t == "zero") c.nudging.start = NudgeStart::zero;
                         else if (t == "random") c.nudging.start = NudgeStart::random;
                         else throw std::invalid_argument("start must be zero or random");
                     },
                     [](const RunConfig& c) { return std::string(c.nudging.start == NudgeStart::zero ? "zero" : "random"); }});

        k.push_back(boolean("nudging", "auto_mu", [](RunConfig& c) -> bool& { return c.nudging.auto_mu; }));

        const auto dlist = [](const char* name, std::vector<double> RunConfig::Sweep::*m) {
            return Key{"sweep", name,
                       [m](RunConfig& c, const std::string& v) { c.sweep.*m = parse_list<double>(v, parse_double); },
                       [m](const RunConfig& c) { return format_list(c.sweep.*m, format_double); }};
        };
        const auto ilist = [](const char* name, std::vector<int> RunConfig::Sweep::*m) {
            return Key{"sweep", name,
                       [m](RunConfig& c, const std::string& v) {
                           c.sweep.*m = parse_list<int>(v, [](const std::string& s) { return parse_int<int>(s); });
                       },
                       [m](const RunConfig& c) { return format_list(c.sweep.*m, [](int x) { return std::to_string(x); }); }};
        };
        k.push_back(dlist("mu", &RunConfig::Sweep::mu));
        k.push_back(dlist("mu_factors", &RunConfig::Sweep::mu_factors));
        k.push_back(ilist("modal", &RunConfig::Sweep::modal));
        k.push_back(ilist("volume", &RunConfig::Sweep::volume));
        k.push_back(ilist("nodal", &RunConfig::Sweep::nodal));
        k.push_back(real("sweep", "t_max", [](RunConfig& c) -> double& { return c.sweep.t_max; }));

        k.push_back(real("dform", "mu", [](RunConfig& c) -> double& { return c.dform.mu; }));
        k.push_back(integer<int>("dform", "resolution", [](RunConfig& c) -> int& { return c.dform.resolution; }));
        k.push_back(real("dform", "dt", [](RunConfig& c) -> double& { return c.dform.dt; }));
        k.push_back(real("dform", "spin_up_time", [](RunConfig& c) -> double& { return c.dform.spin_up_time; }));
        k.push_back({"dform", "interpolant", [](RunConfig& c, const std::string& v) { c.dform.interpolant = trim(v); },
                     [](const RunConfig& c) { return c.dform.interpolant; }});
        k.push_back(real("dform", "t_pre", [](RunConfig& c) -> double& { return c.dform.t_pre; }));
        k.push_back(real("dform", "window", [](RunConfig& c) -> double& { return c.dform.window; }));
        k.push_back(real("dform", "ds", [](RunConfig& c) -> double& { return c.dform.ds; }));
        k.push_back(real("dform", "t_end", [](RunConfig& c) -> double& { return c.dform.t_end; }));
        k.push_back(real("dform", "rtol", [](RunConfig& c) -> double& { return c.dform.rtol; }));
        k.push_back(boolean("dform", "calibrate", [](RunConfig& c) -> bool& { return c.dform.calibrate; }));

        k.push_back(integer<std::size_t>("ensemble", "size", [](RunConfig& c) -> std::size_t& { return c.ensemble.size; }));
        k.push_back(integer<std::uint64_t>("ensemble", "seed", [](RunConfig& c) -> std::uint64_t& { return c.ensemble.seed; }));
        k.push_back(integer<int>("ensemble", "band", [](RunConfig& c) -> int& { return c.ensemble.band; }));
        k.push_back(integer<int>("ensemble", "resolution", [](RunConfig& c) -> int& { return c.ensemble.resolution; }));

        k.push_back(integer<std::size_t>("ensemble", "linf_size", [](RunConfig& c) -> std::size_t& { return c.ensemble.linf_size; }));
        k.push_back(integer<int>("ensemble", "linf_resolution", [](RunConfig& c) -> int& { return c.ensemble.linf_resolution; }));

        k.push_back(integer<std::uint64_t>("run", "seed", [](RunConfig& c) -> std::uint64_t& { return c.run.seed; }));
        k.push_back({"run", "out", [](RunConfig& c, const std::string& v) { c.run.out = trim(v); },
                     [](const RunConfig& c) { return c.run.out; }});
        k.push_back(real("run", "snapshot_every", [](RunConfig& c) -> double& { return c.run.snapshot_every; }));
        k.push_back({"run", "initial", [](RunConfig& c, const std::string& v) { c.run.initial = trim(v); },
                     [](const RunConfig& c) { return c.run.initial; }});
        return k;
    }();
    return table;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    std::map<std::string, std::map<std::string, const Key*>> index;
    for (const auto& k : keys()) index[k.section][k.name] = &k;
    RunConfig config;
    for (const auto& [section, body] : tree) {
        auto sec = index.find(section);
        if (sec == index.end()) {
            if (body.empty()) throw ConfigError("key '" + section + "' outside a section");
            throw ConfigError("unknown config section [" + section + "]");
        }
        for (const auto& [name, value] : body) {
            auto key = sec->second.find(name);
            if (key == sec->second.end()) throw ConfigError("unknown config key '" + name + "' in [" + section + "]");
            try {
                key->second->set(config, value.data());
            } catch (const std::invalid_argument& e) {
                throw ConfigError("[" + section + "] " + name + ": " + e.what());
            }
        }
    }
    validate(config);
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string to_ini(const RunConfig& config) {
    std::string out;
    std::string current;
    for (const auto& k : keys()) {
        if (k.section != current) {
            if (!current.empty()) out += "\n";
            out += "[" + k.section + "]\n";
            current = k.section;
        }
        out += k.name + " = " + k.get(config) + "\n";
    }
    return out;
}

void validate(const RunConfig& c) {
    require(c.physics.nu > 0.0, "physics.nu must be positive");
    require(c.physics.length > 0.0, "physics.length must be positive");
    require(c.physics.forcing_mode >= 1, "physics.forcing_mode must be >= 1");
    require(c.physics.grashof >= 0.0, "physics.grashof must be >= 0");
    require(c.solver.resolution >= 16 && c.solver.resolution % 2 == 0, "solver.resolution must be even and >= 16");
    require(c.solver.dt > 0.0, "solver.dt must be positive");
    require(c.solver.spin_up_time >= 0.0, "solver.spin_up_time must be >= 0");
    require(c.solver.t_end >= 0.0, "solver.t_end must be >= 0");
    try {
        validate(interpolant_spec(c));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("interpolant: ") + e.what());
    }
    require(c.nudging.mu >= 0.0, "nudging.mu must be >= 0");
    require(c.nudging.t_sync > 0.0, "nudging.t_sync must be positive");
    require(c.nudging.record_every >= 0.0, "nudging.record_every must be >= 0");
    require(c.nudging.threshold > 0.0, "nudging.threshold must be positive");
    for (double m : c.sweep.mu) require(m >= 0.0, "sweep.mu values must be >= 0");
    for (double m : c.sweep.mu_factors) require(m > 0.0, "sweep.mu_factors must be positive");
    require(c.sweep.t_max > 0.0, "sweep.t_max must be positive");
    require(c.dform.mu >= 0.0, "dform.mu must be >= 0");
    require(c.dform.resolution >= 16 && c.dform.resolution % 2 == 0, "dform.resolution must be even and >= 16");
    require(c.dform.dt > 0.0 && c.dform.ds > 0.0, "dform.dt and dform.ds must be positive");
    try {
        validate(InterpolantSpec::parse(c.dform.interpolant));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("dform.interpolant: ") + e.what());
    }
    require(c.dform.spin_up_time >= 0.0, "dform.spin_up_time must be >= 0");
    require(c.dform.t_pre >= 0.0 && c.dform.window >= 0.0, "dform.t_pre and dform.window must be >= 0");
    require(c.dform.t_end > 0.0 && c.dform.rtol > 0.0, "dform.t_end and dform.rtol must be positive");
    require(c.ensemble.size > 0, "ensemble.size must be positive");
    require(c.ensemble.band >= 0, "ensemble.band must be >= 0");
    require(c.ensemble.resolution >= 16 && c.ensemble.resolution % 2 == 0, "ensemble.resolution must be even and >= 16");
    require(c.ensemble.linf_resolution >= 16 && c.ensemble.linf_resolution % 2 == 0,
            "ensemble.linf_resolution must be even and >= 16");
    require(!c.run.initial.empty(), "run.initial must not be empty");
    require(c.run.snapshot_every >= 0.0, "run.snapshot_every must be >= 0");
    require(!c.run.out.empty(), "run.out must not be empty");
}

PhysicalParams physical_params(const RunConfig& c) {
    PhysicalParams p = kolmogorov_params(c.physics.nu, c.physics.length, c.physics.forcing_mode, c.physics.grashof);
    p.mu = c.nudging.mu;
    return p;
}

SolverConfig solver_config(const RunConfig& c) {
    SolverConfig s;
    s.resolution = c.solver.resolution;
    s.dt = c.solver.dt;
    s.integrator = c.solver.integrator;
    s.spin_up_time = c.solver.spin_up_time;
    s.implicit_modal_feedback = c.solver.implicit_modal_feedback;
    s.seed = c.run.seed;
    return s;
}

InterpolantSpec interpolant_spec(const RunConfig& c) {
    InterpolantSpec j;
    j.kind = c.interpolant.kind;
    j.resolution = c.interpolant.resolution;
    j.stencil = c.interpolant.stencil;
    return j;
}

}  // namespace dform
