#pragma once

// Trajectory CSV format: header row of channel labels, one data row per time
// step. Values are written with "%.17g" so a write/read round trip is exact.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ogbm/signal.hpp"

namespace ogbm {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& w) {
    for (std::size_t i = 0; i < w.labels.size(); ++i) {
        if (i) os << ',';
        os << w.labels[i];
    }
    os << '\n';
    for (Eigen::Index t = 0; t < w.length(); ++t) {
        for (Eigen::Index c = 0; c < w.channels(); ++c) {
            if (c) os << ',';
            os << format_double(w.values(c, t));
        }
        os << '\n';
    }
}

inline void write_trajectory_csv(const std::string& path, const Trajectory& w) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
    write_trajectory_csv(os, w);
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace detail

inline Trajectory read_trajectory_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("read_trajectory_csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> labels = detail::split_csv_line(line);
    const auto q = static_cast<Eigen::Index>(labels.size());

    std::vector<double> data;
    Eigen::Index rows = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (static_cast<Eigen::Index>(fields.size()) != q) {
            throw std::runtime_error("read_trajectory_csv: row " + std::to_string(rows + 1) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " + std::to_string(q));
        }
        for (const auto& f : fields) {
            std::size_t pos = 0;
            const double v = std::stod(f, &pos);
            if (pos != f.size()) throw std::runtime_error("read_trajectory_csv: bad number '" + f + "'");
            data.push_back(v);
        }
        ++rows;
    }
    Eigen::MatrixXd m(q, rows);
    for (Eigen::Index t = 0; t < rows; ++t) {
        for (Eigen::Index c = 0; c < q; ++c) m(c, t) = data[static_cast<std::size_t>(t * q + c)];
    }
    return make_trajectory(std::move(m), labels);
}

inline Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_trajectory_csv: cannot open " + path);
    return read_trajectory_csv(is);
}

}  // namespace ogbm
