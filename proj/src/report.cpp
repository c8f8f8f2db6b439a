#include "thermdec/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "thermdec/constants.hpp"
#include "thermdec/errors.hpp"

namespace thermdec::report {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_row(const std::vector<double>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += fmt17(cells[i]);
    }
    row += '\n';
    return row;
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + path);
    out << text;
}

}  // namespace thermdec::report

namespace thermdec::constants {

std::string constants_table_text() {
    std::string text;
    text += "pinned physical constants (CODATA 2018)\n";
    auto line = [&text](const char* name, double v, const char* unit) {
        text += "  ";
        text += name;
        text += " = ";
        text += report::fmt17(v);
        text += " ";
        text += unit;
        text += "\n";
    };
    line("hbar_c", hbar_c_ev_m, "eV m");
    line("k_boltzmann", k_boltzmann_ev_k, "eV/K");
    line("fine_structure", fine_structure, "1");
    line("electron_mass", electron_mass_ev, "eV");
    line("speed_of_light", speed_of_light, "m/s");
    line("hbar", hbar_ev_s, "eV s");
    text += "decay-law constants\n";
    for (const auto& c : decay_law_constants) {
        text += "  ";
        text += c.name;
        text += " = ";
        text += report::fmt17(c.value);
        text += "  # ";
        text += c.role;
        text += "\n";
    }
    return text;
}

std::uint64_t constants_table_hash() {
    return report::fnv1a64(constants_table_text());
}

}  // namespace thermdec::constants
