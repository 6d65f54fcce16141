#pragma once

// Named scenario presets, embedded so the CLI works from any directory.
// The same texts are shipped as files under presets/.

#include <map>
#include <stdexcept>
#include <string>

namespace lightphase::presets {

inline const std::map<std::string, std::string>& all() {
    static const std::map<std::string, std::string> table{
        {"pioneer",
         "# Pioneer tracking scenario: published drift rate, 40 AU reflector\n"
         "name = pioneer\n"
         "chi_kind = linear\n"
         "chi_rate = 2.92e-18\n"
         "R = \"40 AU\"\n"
         "omega = 1.438849e10   # ~2.29 GHz S-band downlink\n"
         "T = auto              # round trip, 2 R / c\n"
         "theta = 0\n"
         "steps = 100000\n"
         "outputs = phases, anomaly, appendix\n"},
        {"static",
         "# Null test: no expansion, every phase and anomaly must vanish\n"
         "name = static\n"
         "chi_kind = linear\n"
         "chi_rate = 0\n"
         "R = \"40 AU\"\n"
         "omega = 1.438849e10\n"
         "T = auto\n"
         "theta = 0.5235987755982988   # pi/6\n"
         "steps = 2000\n"
         "outputs = trajectory, phases, anomaly, sweep\n"},
        {"octant-oracle",
         "# Discrete Pancharatnam product vs Girard solid angle on the octant\n"
         "name = octant-oracle\n"
         "chi_kind = linear\n"
         "chi_rate = 1e-18\n"
         "R = \"1 AU\"\n"
         "omega = 1e10\n"
         "T = auto\n"
         "theta = 1.0471975511965976   # pi/3\n"
         "steps = 10000\n"
         "oracle_samples = 20000\n"
         "outputs = phases\n"},
        {"theta-sweep",
         "# Polarization independence of the frequency anomaly\n"
         "name = theta-sweep\n"
         "chi_kind = linear\n"
         "chi_rate = 2.92e-18\n"
         "R = \"40 AU\"\n"
         "omega = 1.438849e10\n"
         "T = 100000 s\n"
         "theta = 0.7853981633974483   # pi/4\n"
         "steps = 2000\n"
         "sweep_points = 9\n"
         "outputs = anomaly, sweep\n"}};
    return table;
}

inline const std::string& text(const std::string& name) {
    const auto& table = all();
    auto it = table.find(name);
    if (it == table.end()) {
        std::string known;
        for (const auto& [k, v] : table) {
            if (!known.empty()) known += ", ";
            known += k;
        }
        throw std::out_of_range("unknown preset '" + name + "' (known: " + known + ")");
    }
    return it->second;
}

}  // namespace lightphase::presets
