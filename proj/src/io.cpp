#include "optproj/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "optproj/errors.hpp"

namespace optproj {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    out << content;
    if (!out) throw ParseError(path + ": write failed");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool parse_number(std::string_view token, double& out) {
    token = trim(token);
    if (token.empty()) return false;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
        const size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw NumericError("format_double: conversion failed");
    return std::string(buf, ptr);
}

std::string direction_set_to_json(const DirectionSet& ds) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["p"] = ds.p();
    doc["n"] = ds.n();
    doc["kind"] = kind_to_string(ds.kind);
    doc["scale"] = ds.scale;
    ordered_json dirs = ordered_json::array();
    for (int i = 0; i < ds.n(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < ds.p(); ++j) row.push_back(ds.directions(i, j));
        dirs.push_back(std::move(row));
    }
    doc["directions"] = std::move(dirs);
    return doc.dump(2) + "\n";
}

void save_direction_set(const std::string& path, const DirectionSet& ds) {
    write_file(path, direction_set_to_json(ds));
}

DirectionSet load_direction_set(const std::string& path) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        if (!doc.is_object()) throw ParseError(path + ": expected a JSON object");
        if (!doc.contains("schema_version") ||
            doc["schema_version"].get<int>() != 1)
            throw ParseError(path + ": unsupported or missing schema_version");
        const int p = doc.at("p").get<int>();
        const int n = doc.at("n").get<int>();
        if (p < 1 || n < 1) throw ParseError(path + ": p and n must be >= 1");
        const Kind kind = kind_from_string(doc.at("kind").get<std::string>());
        const double scale = doc.at("scale").get<double>();
        const auto& dirs = doc.at("directions");
        if (!dirs.is_array() || static_cast<int>(dirs.size()) != n)
            throw ParseError(path + ": directions must be an array of n rows");
        Matrix rows(n, p);
        for (int i = 0; i < n; ++i) {
            const auto& row = dirs[static_cast<size_t>(i)];
            if (!row.is_array() || static_cast<int>(row.size()) != p)
                throw ParseError(path + ": direction row " + std::to_string(i) +
                                 " must have " + std::to_string(p) + " entries");
            for (int j = 0; j < p; ++j)
                rows(i, j) = row[static_cast<size_t>(j)].get<double>();
        }
        DirectionSet ds{rows, scale, kind};
        ds.validate(1e-9);  // loaded directions must still be unit norm
        return ds;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Sample load_sample(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");

    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    int cols = -1;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);

        std::vector<double> row(fields.size());
        bool ok = true;
        for (size_t j = 0; j < fields.size(); ++j) {
            if (!parse_number(fields[j], row[j])) {
                ok = false;
                if (!first_content_line)
                    throw ParseError(path + ":" + std::to_string(line_no) +
                                     ": cannot parse '" +
                                     std::string(trim(fields[j])) +
                                     "' as a number");
                break;
            }
        }
        if (first_content_line) {
            first_content_line = false;
            if (!ok) continue;  // header row
        }
        if (cols == -1) {
            cols = static_cast<int>(row.size());
        } else if (static_cast<int>(row.size()) != cols) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected " + std::to_string(cols) +
                             " columns, got " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path + ": no data rows");

    Sample s;
    s.data.resize(static_cast<Eigen::Index>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j)
            s.data(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<size_t>(j)];
    for (Eigen::Index i = 0; i < s.data.rows(); ++i)
        for (Eigen::Index j = 0; j < s.data.cols(); ++j)
            if (!std::isfinite(s.data(i, j)))
                throw ParseError(path + ": non-finite entry at row " +
                                 std::to_string(i + 1));
    return s;
}

void save_sample(const std::string& path, const Sample& s) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < s.data.rows(); ++i) {
        for (Eigen::Index j = 0; j < s.data.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_double(s.data(i, j));
        }
        out << '\n';
    }
    write_file(path, out.str());
}

std::string mse_csv(const std::vector<MSEReport>& rows) {
    std::ostringstream out;
    out << "scheme,p,n,trials,test_vectors,mse,seed\n";
    for (const auto& r : rows) {
        out << r.scheme << ',' << r.p << ',' << r.n << ',' << r.trials << ','
            << r.test_vectors << ',' << format_double(r.mse) << ',' << r.seed
            << '\n';
    }
    return out.str();
}

void write_mse_csv(const std::string& path,
                   const std::vector<MSEReport>& rows) {
    write_file(path, mse_csv(rows));
}

}  // namespace optproj
