#pragma once

#include "mvsde/grid.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvsde {

inline std::string csv_num(double x) {
    char buf[40];
    snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::ofstream csv_open(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    return out;
}

// two-column `x,value` with a one-line header
inline void write_grid_function(const std::string& path, const GridFunction& f,
                                const std::string& value_name = "value") {
    auto out = csv_open(path);
    out << "x," << value_name << "\n";
    for (int i = 0; i < f.grid.n; ++i)
        out << csv_num(f.grid.node(i)) << "," << csv_num(f.values[i]) << "\n";
}

// long-format `t,x,value`
inline void write_field(const std::string& path, const SpaceTimeField& field,
                        const std::string& value_name = "value") {
    auto out = csv_open(path);
    out << "t,x," << value_name << "\n";
    for (std::size_t k = 0; k < field.times.size(); ++k)
        for (int i = 0; i < field.grid.n; ++i)
            out << csv_num(field.times[k]) << "," << csv_num(field.grid.node(i)) << ","
                << csv_num(field.values[k][i]) << "\n";
}

inline void write_column(const std::string& path, const std::vector<double>& v,
                         const std::string& name) {
    auto out = csv_open(path);
    out << name << "\n";
    for (double x : v) out << csv_num(x) << "\n";
}

}  // namespace mvsde
